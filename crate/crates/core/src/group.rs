//! The group `G` of even subsets of `[h-1]` under symmetric difference, the
//! subgroup `H` spanned by the pairs `{j, 2^(i-1) + j}`, and its cosets.
//!
//! Subgroups are stored as a reduced GF(2) basis over bitmasks. Nothing here
//! materializes `G`; elements are enumerated lazily when a caller iterates.

use crate::error::{Error, Result};
use crate::hypercube::Vertex;

/// Bound `h` (a power of two) and `mu = log2(h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubsetGroupParams {
    h: u32,
    mu: u32,
}

impl SubsetGroupParams {
    pub fn new(h: u32) -> Result<Self> {
        if h < 2 || !h.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(h));
        }
        if h > 64 {
            return Err(Error::OutOfRange {
                what: "group bound h",
                value: h.into(),
                min: 2,
                max: 64,
            });
        }
        Ok(SubsetGroupParams {
            h,
            mu: h.trailing_zeros(),
        })
    }

    pub fn h(self) -> u32 {
        self.h
    }

    pub fn mu(self) -> u32 {
        self.mu
    }

    /// Mask of `[h-1]`.
    pub fn ground_mask(self) -> u64 {
        (1u64 << (self.h - 1)) - 1
    }

    /// `log2 |G| = h - 2`.
    pub fn group_rank(self) -> u32 {
        self.h - 2
    }

    /// The rank `span(K)` is expected to have.
    pub fn expected_rank(self) -> u32 {
        self.h - self.mu - 1
    }
}

/// The pairs `{j, 2^(i-1) + j}` for `i = 2..=mu`, `j = 1..2^(i-1)`.
pub fn generator_set_k(params: SubsetGroupParams) -> Vec<Vertex> {
    let mut out = Vec::new();
    for i in 2..=params.mu() {
        let half = 1u32 << (i - 1);
        for j in 1..half {
            out.push(Vertex::from_elements([j, half + j]));
        }
    }
    out
}

/// A subgroup of `G` given by a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subgroup {
    params: SubsetGroupParams,
    generators: Vec<Vertex>,
    // sorted by descending pivot; each pivot bit is set in exactly one row
    basis: Vec<u64>,
}

/// The subgroup spanned by `generators`.
pub fn span_subgroup(generators: &[Vertex], params: SubsetGroupParams) -> Result<Subgroup> {
    let ground = params.ground_mask();
    let mut basis: Vec<u64> = Vec::new();
    for &g in generators {
        if g.mask() & !ground != 0 || g.len() % 2 == 1 {
            return Err(Error::GeneratorOutOfRange {
                generator: g,
                bound: params.h() - 1,
            });
        }
        let mut v = g.mask();
        for &b in &basis {
            if v & pivot_bit(b) != 0 {
                v ^= b;
            }
        }
        if v == 0 {
            continue;
        }
        let p = pivot_bit(v);
        for b in basis.iter_mut() {
            if *b & p != 0 {
                *b ^= v;
            }
        }
        basis.push(v);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    Ok(Subgroup {
        params,
        generators: generators.to_vec(),
        basis,
    })
}

fn pivot_bit(v: u64) -> u64 {
    1u64 << (63 - v.leading_zeros())
}

impl Subgroup {
    /// `span(K)`, checked to have rank `h - mu - 1`.
    pub fn standard(params: SubsetGroupParams) -> Result<Self> {
        let sub = span_subgroup(&generator_set_k(params), params)?;
        if sub.rank() != params.expected_rank() {
            return Err(Error::RankMismatch {
                expected: params.expected_rank(),
                actual: sub.rank(),
            });
        }
        Ok(sub)
    }

    pub fn params(&self) -> SubsetGroupParams {
        self.params
    }

    pub fn generators(&self) -> &[Vertex] {
        &self.generators
    }

    pub fn basis(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.basis.iter().map(|&b| Vertex::from_mask(b))
    }

    pub fn rank(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn order(&self) -> u64 {
        1u64 << self.rank()
    }

    /// Canonical representative of `a`'s coset: `a` with every pivot cleared.
    pub fn reduce(&self, a: Vertex) -> Vertex {
        let mut v = a.mask();
        for &b in &self.basis {
            if v & pivot_bit(b) != 0 {
                v ^= b;
            }
        }
        Vertex::from_mask(v)
    }

    pub fn contains(&self, a: Vertex) -> bool {
        self.reduce(a).is_empty()
    }

    /// All elements, in Gray-code order over the basis, starting with `∅`.
    pub fn elements(&self) -> impl Iterator<Item = Vertex> + '_ {
        let total = self.order();
        let mut cur = 0u64;
        (0..total).map(move |k| {
            if k > 0 {
                cur ^= self.basis[k.trailing_zeros() as usize];
            }
            Vertex::from_mask(cur)
        })
    }

    /// The coset `rep Δ H`, enumerated in the same order as [`Self::elements`].
    pub fn coset(&self, rep: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.elements().map(move |a| a ^ rep)
    }

    /// The cosets `⟨2i-2⟩ Δ H` for `i = 1..=h/2`, checked to be distinct and
    /// to exhaust `G` by counting.
    pub fn cosets(&self) -> Result<CosetFamily> {
        let h = self.params.h();
        let reps: Vec<Vertex> = (1..=h / 2)
            .map(|i| Vertex::interval(1, 2 * i - 2))
            .collect();
        let mut canon: Vec<(Vertex, Vertex)> = reps.iter().map(|&r| (self.reduce(r), r)).collect();
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::CosetCollision {
                first: w[0].1,
                second: w[1].1,
            });
        }
        let covered = reps.len() as u128 * u128::from(self.order());
        if covered != 1u128 << self.params.group_rank() {
            return Err(Error::CosetsIncomplete {
                cosets: reps.len(),
                rank: self.rank(),
                group_rank: self.params.group_rank(),
            });
        }
        Ok(CosetFamily {
            subgroup: self.clone(),
            reps,
        })
    }
}

/// The `h/2` cosets of a subgroup, with representatives `⟨0⟩, ⟨2⟩, ...`.
#[derive(Clone, Debug)]
pub struct CosetFamily {
    subgroup: Subgroup,
    reps: Vec<Vertex>,
}

impl CosetFamily {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn reps(&self) -> &[Vertex] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Members of coset `i` (1-based).
    pub fn coset(&self, i: usize) -> Result<impl Iterator<Item = Vertex> + '_> {
        if i == 0 || i > self.reps.len() {
            return Err(Error::RangeViolation(format!(
                "coset index {i} not in 1..={}",
                self.reps.len()
            )));
        }
        Ok(self.subgroup.coset(self.reps[i - 1]))
    }

    /// 1-based index of the coset containing `a`, if any.
    pub fn index_of(&self, a: Vertex) -> Option<usize> {
        let key = self.subgroup.reduce(a);
        self.reps
            .iter()
            .position(|&r| self.subgroup.reduce(r) == key)
            .map(|p| p + 1)
    }
}

/// True iff `a = {x, x+1, ..., y}` for some `x <= y`. The empty set is not a
/// string.
pub fn is_consecutive_string(a: Vertex) -> bool {
    let m = a.mask();
    if m == 0 {
        return false;
    }
    let shifted = m >> m.trailing_zeros();
    shifted & (shifted.wrapping_add(1)) == 0
}

/// Even-cardinality subsets of `[bound]`, in increasing mask order.
pub fn even_subsets(bound: u32) -> impl Iterator<Item = Vertex> {
    assert!(bound < 64, "even_subsets bound {bound} too large");
    (0..1u64 << bound)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(Vertex::from_mask)
}
