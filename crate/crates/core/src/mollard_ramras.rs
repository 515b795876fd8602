//! Decomposition of `Q_n` (n even) into the `2n`-cycles `C(A, S)` with
//! `S = (1, ..., n, 1, ..., n)` and `A` ranging over the even subsets of
//! `[n-1]`, and the grouping of those cycles by coset into spanning families.

use crate::error::{Error, Result};
use crate::group::{even_subsets, Subgroup, SubsetGroupParams};
use crate::hypercube::{CycleSpec, Dim, Direction};

/// Largest `n` for which the `2^(n-2)` cycles are materialized.
pub const ENUMERATION_CAP: u32 = 24;

/// Cycles that are pairwise vertex-disjoint and together cover `V(Q_n)`.
#[derive(Clone, Debug)]
pub struct TwoRegularFamily {
    pub n: Dim,
    pub cycles: Vec<CycleSpec>,
}

/// `(1, 2, ..., n, 1, 2, ..., n)`.
pub fn doubled_sequence(n: Dim) -> Vec<Direction> {
    n.directions().chain(n.directions()).collect()
}

/// `{C(A, S) : A ∈ G}`, ordered by the mask of `A`.
pub fn two_n_cycle_decomposition(n: Dim) -> Result<Vec<CycleSpec>> {
    if n.get() % 2 == 1 {
        return Err(Error::OddDimension(n.get()));
    }
    if n.get() > ENUMERATION_CAP {
        return Err(Error::ResourceCap {
            n: n.get(),
            cap: ENUMERATION_CAP,
        });
    }
    let s = doubled_sequence(n);
    Ok(even_subsets(n.get() - 1)
        .map(|a| CycleSpec::new(a, s.clone()))
        .collect())
}

/// `W_1, ..., W_{n/2}` with `W_i = {C(A, S) : A ∈ H_i}`, for `n` a power of two.
pub fn coset_spanning_families(n: Dim) -> Result<Vec<TwoRegularFamily>> {
    let params = SubsetGroupParams::new(n.get())?;
    if n.get() > ENUMERATION_CAP {
        return Err(Error::ResourceCap {
            n: n.get(),
            cap: ENUMERATION_CAP,
        });
    }
    let h = Subgroup::standard(params)?;
    let cosets = h.cosets()?;
    let s = doubled_sequence(n);
    (1..=cosets.len())
        .map(|i| {
            let cycles = cosets
                .coset(i)?
                .map(|a| CycleSpec::new(a, s.clone()))
                .collect();
            Ok(TwoRegularFamily { n, cycles })
        })
        .collect()
}
