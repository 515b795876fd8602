//! Lifting a decomposition of `Q_{n-2}` to one of `Q_n`.
//!
//! `Q_n` is four copies of `Q_{n-2}` tagged by their bits on elements
//! `n-1, n`. Copy `p` meets copy `p+1 (mod 4)` in a perfect matching of cross
//! edges. For every source cycle and every copy `p`, the lifted cycle walks
//! the source cycle inside copy `p`, but at each matching edge it crosses to
//! copy `p+1`, traverses that copy's matching edge, and crosses back.

use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::hypercube::{CycleSpec, Dim, Direction, Vertex};
use crate::verify::verify_matching;

/// One of the four copies of `Q_{n-2}` inside `Q_n`, numbered 1 to 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CopyIndex(u8);

impl CopyIndex {
    pub const ALL: [CopyIndex; 4] = [CopyIndex(1), CopyIndex(2), CopyIndex(3), CopyIndex(4)];

    pub fn new(p: u8) -> Result<Self> {
        if !(1..=4).contains(&p) {
            return Err(Error::OutOfRange {
                what: "copy index",
                value: p.into(),
                min: 1,
                max: 4,
            });
        }
        Ok(CopyIndex(p))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn next(self) -> CopyIndex {
        CopyIndex(self.0 % 4 + 1)
    }

    /// Bits on `(n-1, n)` in the order 00, 10, 11, 01.
    pub fn code(self, n: Dim) -> Vertex {
        let a = n.get() - 1;
        let b = n.get();
        match self.0 {
            1 => Vertex::EMPTY,
            2 => Vertex::from_elements([a]),
            3 => Vertex::from_elements([a, b]),
            _ => Vertex::from_elements([b]),
        }
    }

    /// The direction of the cross edges from this copy to the next.
    pub fn cross_direction(self, n: Dim) -> Direction {
        let d = if self.0 % 2 == 1 {
            n.get() - 1
        } else {
            n.get()
        };
        Direction::within(d, n).expect("n >= 4 when lifting")
    }
}

/// `v ∪ code(p)` for `v ⊆ [n-2]`.
pub fn embed_copy(v: Vertex, p: CopyIndex, n: Dim) -> Result<Vertex> {
    if n.get() < 4 {
        return Err(Error::InvalidDimension(n.get()));
    }
    let inner = Dim::new(n.get() - 2)?;
    if !inner.contains(v) {
        return Err(Error::ElementOutOfRange {
            set: v,
            bound: inner.get(),
        });
    }
    Ok(v ^ p.code(n))
}

fn check_spacing(dec: &Decomposition) -> Result<()> {
    let n = dec.n.get();
    if dec.cycles.len() != dec.matching.len() {
        return Err(Error::PreconditionViolation(format!(
            "{} cycles but {} matching records",
            dec.cycles.len(),
            dec.matching.len()
        )));
    }
    for (idx, (c, pos)) in dec.cycles.iter().zip(&dec.matching).enumerate() {
        let len = c.len() as u32;
        let r = pos.len() as u32;
        if r == 0 || len != r * n {
            return Err(Error::PreconditionViolation(format!(
                "cycle {}: length {len} is not {r} matching edges times n = {n}",
                idx + 1
            )));
        }
        let spaced = pos.windows(2).all(|w| w[1] == w[0] + n);
        if !spaced || pos[0] == 0 || pos[0] > n {
            return Err(Error::PreconditionViolation(format!(
                "cycle {}: matching positions are not spaced {n} apart",
                idx + 1
            )));
        }
    }
    Ok(())
}

/// Lifts `dec` from `Q_{n-2}` to `Q_n`.
///
/// The input must have equally spaced matching positions whose edges form a
/// perfect matching. Output cycle `(i, p)` is listed at index `4i + p - 1`.
pub fn lift_decomposition(dec: &Decomposition) -> Result<Decomposition> {
    check_spacing(dec)?;
    let report = verify_matching(dec);
    if !report.is_ok() {
        return Err(Error::PreconditionViolation(report.to_string()));
    }
    let n = Dim::new(dec.n.get() + 2)?;
    let mut cycles = Vec::with_capacity(dec.cycles.len() * 4);
    let mut matching = Vec::with_capacity(dec.cycles.len() * 4);
    for (src, pos) in dec.cycles.iter().zip(&dec.matching) {
        let new_pos: Vec<u32> = pos
            .iter()
            .enumerate()
            .map(|(t, &p)| p + 2 * t as u32 + 1)
            .collect();
        for p in CopyIndex::ALL {
            let cross = p.cross_direction(n);
            let mut dirs = Vec::with_capacity(src.len() + 2 * pos.len());
            let mut next = pos.iter().peekable();
            for (j, &d) in src.dirs.iter().enumerate() {
                if next.peek().is_some_and(|&&q| q as usize == j + 1) {
                    next.next();
                    dirs.extend([cross, d, cross]);
                } else {
                    dirs.push(d);
                }
            }
            cycles.push(CycleSpec::new(embed_copy(src.start, p, n)?, dirs));
            matching.push(new_pos.clone());
        }
    }
    Ok(Decomposition {
        n,
        m: dec.m,
        cycles,
        matching,
    })
}
