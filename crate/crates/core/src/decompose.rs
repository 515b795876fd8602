//! Top-level construction: decompositions of `Q_n` into `2^m·n`-cycles with a
//! perfect matching spread evenly over every cycle, and the path
//! decompositions obtained by cutting those cycles.

use crate::basis::{basis_decomposition_capped, select_matching};
use crate::error::{Error, Result};
use crate::hypercube::{CycleSpec, Dim, Vertex};
use crate::induction::lift_decomposition;

/// A decomposition of `Q_n` into cycles, each carrying the 1-based positions
/// of its matching edges in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub n: Dim,
    pub m: u32,
    pub cycles: Vec<CycleSpec>,
    pub matching: Vec<Vec<u32>>,
}

impl Decomposition {
    /// `2^m · n`.
    pub fn cycle_len(&self) -> u32 {
        (1u32 << self.m) * self.n.get()
    }

    /// `2^(n-1-m)`.
    pub fn expected_cycle_count(&self) -> u64 {
        1u64 << (self.n.get() - 1 - self.m)
    }
}

/// Size envelope for construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_n: u32,
}

impl Limits {
    pub const DEFAULT_MAX_N: u32 = 16;
    pub const EXTENDED_MAX_N: u32 = 24;

    pub fn standard() -> Self {
        Limits {
            max_n: Self::DEFAULT_MAX_N,
        }
    }

    pub fn extended() -> Self {
        Limits {
            max_n: Self::EXTENDED_MAX_N,
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self::standard()
    }
}

pub fn check_parameters(n: u32, m: u32) -> Result<()> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::BadParameters(format!(
            "n = {n} must be even and positive"
        )));
    }
    if m == 0 {
        return Err(Error::BadParameters("m must be at least 1".into()));
    }
    if m >= 32 || (1u64 << m) > u64::from(n) {
        return Err(Error::BadParameters(format!(
            "n = {n} is smaller than 2^m with m = {m}"
        )));
    }
    Ok(())
}

/// Decomposes `Q_n` into `2^m·n`-cycles within the default envelope.
pub fn decompose(n: u32, m: u32) -> Result<Decomposition> {
    decompose_with(n, m, Limits::standard())
}

pub fn decompose_with(n: u32, m: u32, limits: Limits) -> Result<Decomposition> {
    check_parameters(n, m)?;
    let cap = limits.max_n.min(Limits::EXTENDED_MAX_N);
    if n > cap {
        return Err(Error::ResourceCap { n, cap });
    }
    let basis = basis_decomposition_capped(m, cap)?;
    let sel = select_matching(&basis);
    let mut dec = Decomposition {
        n: basis.n,
        m,
        cycles: basis.cycles.into_iter().map(|c| c.spec).collect(),
        matching: sel.positions,
    };
    while dec.n.get() < n {
        dec = lift_decomposition(&dec)?;
    }
    Ok(dec)
}

/// Paths of equal length `r` that together use every edge of `Q_n` once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    pub n: Dim,
    pub r: u32,
    /// Each path as its `r + 1` vertices.
    pub paths: Vec<Vec<Vertex>>,
}

/// `n, 2n, ..., 2^(m-1)·n`.
pub fn default_path_lengths(dec: &Decomposition) -> Vec<u32> {
    (0..dec.m).map(|j| dec.n.get() << j).collect()
}

/// Cuts every cycle into consecutive `r`-edge paths, starting at the cycle's
/// first matching position.
pub fn path_decomposition(dec: &Decomposition, r: u32) -> Result<PathDecomposition> {
    let mut paths = Vec::new();
    for (spec, positions) in dec.cycles.iter().zip(&dec.matching) {
        let len = spec.len() as u32;
        if r == 0 || r >= len || !len.is_multiple_of(r) {
            return Err(Error::NotADivisor { r, len });
        }
        let first = positions.first().copied().unwrap_or(1);
        if first == 0 || first > len {
            return Err(Error::RangeViolation(format!(
                "matching position {first} outside 1..={len}"
            )));
        }
        let skip = (first - 1) as usize;
        let mut cur = spec.dirs[..skip]
            .iter()
            .fold(spec.start, |v, &d| v.toggle(d));
        let rotated = spec.dirs[skip..].iter().chain(&spec.dirs[..skip]);
        let mut path = vec![cur];
        for &d in rotated {
            cur = cur.toggle(d);
            path.push(cur);
            if path.len() as u32 == r + 1 {
                let last = cur;
                paths.push(std::mem::replace(&mut path, vec![last]));
            }
        }
    }
    Ok(PathDecomposition { n: dec.n, r, paths })
}
