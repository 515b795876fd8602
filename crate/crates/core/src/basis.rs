//! Decomposition of `Q_n`, `n = 2^m`, into `n²`-cycles with an equally spaced
//! matching on every cycle.
//!
//! With `h = n/2`, the `2h`-cycles of `Q_h` are grouped by the cosets `H_i` of
//! `H`. Each product `C(X, S) □ C(Y, S)` with `X, Y ∈ H_i` splits into
//! `Φ^i_{XY} ∈ F_i` and `Γ^i_{XY} ∈ F_i'`. The matching takes every `n`-th
//! edge of a cycle starting from a fixed offset per family.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Subgroup, SubsetGroupParams};
use crate::hypercube::{
    bracket, complement_in_half, dirs, theta_set, CycleSpec, Dim, HalfDim, OrientedEdge, Vertex,
};
use crate::kotzig::{kotzig_pair_with, product_sequence};
use crate::mollard_ramras::doubled_sequence;

/// Largest `n = 2^m` built without an explicit override.
pub const DEFAULT_BASIS_CAP: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Phi,
    Gamma,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Phi => "phi",
            Family::Gamma => "gamma",
        })
    }
}

/// Which half of a cycle's selected edges a closed-form expression covers:
/// the first `n/2` (`Low`) or the last `n/2` (`High`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wing {
    Low,
    High,
}

/// A basis cycle together with the data it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledCycle {
    /// 1-based coset index `i`.
    pub coset: u32,
    pub family: Family,
    /// Left factor start, an element of `H_i`.
    pub x: Vertex,
    /// Right factor start, an element of `H_i`.
    pub y: Vertex,
    pub spec: CycleSpec,
}

#[derive(Clone, Debug)]
pub struct BasisDecomposition {
    pub n: Dim,
    pub m: u32,
    /// `F_1, ..., F_{h/2}` followed by `F_1', ..., F_{h/2}'`; inside a family,
    /// ordered by `(x, y)` masks.
    pub cycles: Vec<LabelledCycle>,
}

impl BasisDecomposition {
    pub fn family(&self, coset: u32, family: Family) -> impl Iterator<Item = &LabelledCycle> {
        self.cycles
            .iter()
            .filter(move |c| c.coset == coset && c.family == family)
    }

    pub fn coset_count(&self) -> u32 {
        (self.n.get() / 4).max(1)
    }

    /// 1-based position of the first selected edge on `cycle`.
    pub fn matching_offset(&self, cycle: &LabelledCycle) -> u32 {
        family_offset(self.n.get(), cycle.coset, cycle.family)
    }
}

fn family_offset(n: u32, coset: u32, family: Family) -> u32 {
    match family {
        Family::Phi => 2 * coset - 1,
        Family::Gamma => n / 2 + 2 * coset - 1,
    }
}

/// Per-cycle selected positions (1-based, ascending), aligned with
/// [`BasisDecomposition::cycles`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingSelection {
    pub positions: Vec<Vec<u32>>,
}

/// Builds the basis decomposition for `n = 2^m`, refusing `n` above
/// [`DEFAULT_BASIS_CAP`].
pub fn basis_decomposition(m: u32) -> Result<BasisDecomposition> {
    basis_decomposition_capped(m, DEFAULT_BASIS_CAP)
}

pub fn basis_decomposition_capped(m: u32, cap: u32) -> Result<BasisDecomposition> {
    if m == 0 {
        return Err(Error::BadParameters("m must be at least 1".into()));
    }
    if m > 5 || (1u32 << m) > cap {
        return Err(Error::ResourceCap {
            n: 1u32.checked_shl(m).unwrap_or(u32::MAX),
            cap,
        });
    }
    let n = Dim::new(1 << m)?;
    if m == 1 {
        let spec = CycleSpec::new(Vertex::EMPTY, dirs(&[1, 2, 1, 2]));
        return Ok(BasisDecomposition {
            n,
            m,
            cycles: vec![LabelledCycle {
                coset: 1,
                family: Family::Phi,
                x: Vertex::EMPTY,
                y: Vertex::EMPTY,
                spec,
            }],
        });
    }

    let half = HalfDim::new(n.get() / 2)?;
    let params = SubsetGroupParams::new(half.get())?;
    let cosets = Subgroup::standard(params)?.cosets()?;
    let s = doubled_sequence(Dim::new(half.get())?);
    let seq = product_sequence(&s, half)?;

    let mut phis = Vec::new();
    let mut gammas = Vec::new();
    for i in 1..=cosets.len() {
        let mut members: Vec<Vertex> = cosets.coset(i)?.collect();
        members.sort_unstable();
        for &x in &members {
            for &y in &members {
                let split = kotzig_pair_with(x, y, &s, &seq, half)?;
                let coset = i as u32;
                phis.push(LabelledCycle {
                    coset,
                    family: Family::Phi,
                    x,
                    y,
                    spec: split.phi,
                });
                gammas.push(LabelledCycle {
                    coset,
                    family: Family::Gamma,
                    x,
                    y,
                    spec: split.gamma,
                });
            }
        }
    }
    phis.append(&mut gammas);
    Ok(BasisDecomposition { n, m, cycles: phis })
}

/// Offset rule: cycles of `F_i` take positions `2i-1 + t·n`, cycles of `F_i'`
/// take `n/2 + 2i-1 + t·n`, for `t = 0..n`.
pub fn select_matching(dec: &BasisDecomposition) -> MatchingSelection {
    let n = dec.n.get();
    let positions = dec
        .cycles
        .iter()
        .map(|c| {
            let off = dec.matching_offset(c);
            (0..n).map(|t| off + t * n).collect()
        })
        .collect();
    MatchingSelection { positions }
}

fn check_formula_range(i: u32, r: u32, m: u32) -> Result<HalfDim> {
    if !(2..=4).contains(&m) {
        return Err(Error::RangeViolation(format!(
            "closed forms need 2 <= m <= 4, got m = {m}"
        )));
    }
    let h = 1u32 << (m - 1);
    if i == 0 || i > h / 2 {
        return Err(Error::RangeViolation(format!(
            "coset index {i} not in 1..={}",
            h / 2
        )));
    }
    if r < 2 * i - 1 || r > h + 2 * i - 2 {
        return Err(Error::RangeViolation(format!(
            "r = {r} not in {}..={} for coset {i}",
            2 * i - 1,
            h + 2 * i - 2
        )));
    }
    HalfDim::new(h)
}

/// The selected edge of `Φ^i` / `Γ^i` with factor starts
/// `a Δ ⟨2i-2⟩` and `b Δ ⟨2i-2⟩` (`a, b ∈ H`), computed from bracket
/// expressions alone. Index `r` runs over `2i-1..=h+2i-2`; `wing` picks the
/// first or second half of the cycle's selected edges.
pub fn matching_edge_formula(
    i: u32,
    r: u32,
    a: Vertex,
    b: Vertex,
    family: Family,
    wing: Wing,
    m: u32,
) -> Result<OrientedEdge> {
    let half = check_formula_range(i, r, m)?;
    let h = half.get();
    let br = |j: u32| bracket(j, half);
    let ov = |x: Vertex| complement_in_half(x, half);
    let th = |x: Vertex| theta_set(x, half);
    // reject factor starts outside [h] before mixing them into the brackets
    th(a)?;
    th(b)?;
    let c = br(2 * i - 2)?;
    let lo = br(h + 2 * i - 1 - r)?;
    let hi = br(h + 2 * i - r)?;
    let prefix = br(r - 1)?;
    let (tail, head) = match (family, wing) {
        (Family::Phi, Wing::Low) => {
            let right = th(prefix ^ c ^ b)?;
            (a ^ c ^ ov(lo)? ^ right, a ^ c ^ ov(hi)? ^ right)
        }
        (Family::Phi, Wing::High) => {
            let right = th(ov(prefix)? ^ c ^ b)?;
            (a ^ c ^ lo ^ right, a ^ c ^ hi ^ right)
        }
        (Family::Gamma, Wing::Low) => {
            let left = a ^ c ^ prefix;
            (left ^ th(c ^ lo ^ b)?, left ^ th(c ^ hi ^ b)?)
        }
        (Family::Gamma, Wing::High) => {
            let left = a ^ c ^ ov(prefix)?;
            (left ^ th(c ^ ov(lo)? ^ b)?, left ^ th(c ^ ov(hi)? ^ b)?)
        }
    };
    Ok(OrientedEdge::new(tail, head))
}

/// 1-based cycle position of the edge [`matching_edge_formula`] describes.
pub fn formula_position(i: u32, r: u32, family: Family, wing: Wing, m: u32) -> Result<u32> {
    let half = check_formula_range(i, r, m)?;
    let h = half.get();
    let n = 2 * h;
    let lap = match wing {
        Wing::Low => r - 1,
        Wing::High => r - 1 + h,
    };
    let raw = family_offset(n, i, family) + n * lap;
    Ok((raw - 1) % (n * n) + 1)
}
