//! Vertices, directions and edges of the n-cube, and cycles given as a start
//! vertex plus an edge-direction sequence.
//!
//! A vertex of `Q_n` is a subset of `[n] = {1, ..., n}`; element `j` is stored
//! as bit `j - 1` of a `u64`. Every public function speaks 1-based elements.

use std::fmt;
use std::ops::BitXor;

use crate::error::{Error, Result};

pub const MAX_DIM: u32 = 64;

/// Ambient dimension `n` of `Q_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dim(u32);

impl Dim {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidDimension(n));
        }
        Ok(Dim(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Mask with bits `0..n` set.
    pub fn full_mask(self) -> u64 {
        if self.0 == 64 {
            u64::MAX
        } else {
            (1u64 << self.0) - 1
        }
    }

    /// `2^n`. Only meaningful for `n < 64`.
    pub fn vertex_count(self) -> u64 {
        1u64 << self.0
    }

    /// `n * 2^(n-1)`.
    pub fn edge_count(self) -> u64 {
        u64::from(self.0) << (self.0 - 1)
    }

    pub fn contains(self, v: Vertex) -> bool {
        v.0 & !self.full_mask() == 0
    }

    pub fn directions(self) -> impl Iterator<Item = Direction> {
        (1..=self.0).map(|d| Direction(d as u8))
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset of `[n]`, i.e. a vertex of the n-cube.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(u64);

impl Vertex {
    pub const EMPTY: Vertex = Vertex(0);

    pub const fn from_mask(mask: u64) -> Self {
        Vertex(mask)
    }

    /// Builds the set from 1-based elements.
    ///
    /// Panics if an element is 0 or above 64; callers pass literal sets.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        let mut mask = 0u64;
        for e in elements {
            assert!((1..=MAX_DIM).contains(&e), "element {e} out of 1..=64");
            mask |= 1u64 << (e - 1);
        }
        Vertex(mask)
    }

    /// `{lo, lo + 1, ..., hi}`; empty when `hi < lo`.
    pub fn interval(lo: u32, hi: u32) -> Self {
        if hi < lo {
            return Vertex::EMPTY;
        }
        Vertex::from_elements(lo..=hi)
    }

    pub fn singleton(d: Direction) -> Self {
        Vertex(d.bit())
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, element: u32) -> bool {
        (1..=MAX_DIM).contains(&element) && self.0 >> (element - 1) & 1 == 1
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let e = rest.trailing_zeros();
            rest &= rest - 1;
            Some(e + 1)
        })
    }

    /// Largest element, or 0 for the empty set.
    pub fn max_element(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    pub fn min_element(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn sym_diff(self, other: Vertex) -> Vertex {
        Vertex(self.0 ^ other.0)
    }

    pub fn toggle(self, d: Direction) -> Vertex {
        Vertex(self.0 ^ d.bit())
    }

    pub fn is_subset_of(self, other: Vertex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Vertex) -> bool {
        self.0 & other.0 == 0
    }
}

impl BitXor for Vertex {
    type Output = Vertex;

    fn bitxor(self, rhs: Vertex) -> Vertex {
        self.sym_diff(rhs)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Edge direction `d` in `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct Direction(u8);

impl Direction {
    pub fn new(d: u32) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&d) {
            return Err(Error::OutOfRange {
                what: "direction",
                value: d.into(),
                min: 1,
                max: MAX_DIM.into(),
            });
        }
        Ok(Direction(d as u8))
    }

    /// Direction checked against the ambient dimension.
    pub fn within(d: u32, n: Dim) -> Result<Self> {
        if !(1..=n.get()).contains(&d) {
            return Err(Error::OutOfRange {
                what: "direction",
                value: d.into(),
                min: 1,
                max: n.get().into(),
            });
        }
        Ok(Direction(d as u8))
    }

    pub fn get(self) -> u32 {
        u32::from(self.0)
    }

    pub fn bit(self) -> u64 {
        1u64 << (self.0 - 1)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Builds a direction sequence from literal integers.
///
/// Panics on values outside `1..=64`.
pub fn dirs(seq: &[u32]) -> Vec<Direction> {
    seq.iter()
        .map(|&d| Direction::new(d).expect("literal direction"))
        .collect()
}

/// Undirected edge in canonical form: `lo` does not contain `dir`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub lo: Vertex,
    pub dir: Direction,
}

impl Edge {
    pub fn between(u: Vertex, v: Vertex) -> Result<Self> {
        let dir = edge_direction(u, v)?;
        let lo = if u.mask() & dir.bit() == 0 { u } else { v };
        Ok(Edge { lo, dir })
    }

    /// Edge leaving `v` in direction `dir`.
    pub fn at(v: Vertex, dir: Direction) -> Self {
        Edge {
            lo: Vertex(v.0 & !dir.bit()),
            dir,
        }
    }

    pub fn hi(self) -> Vertex {
        self.lo.toggle(self.dir)
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.lo, self.hi())
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi())
    }
}

/// An edge together with the order in which a walk traverses it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedEdge {
    pub tail: Vertex,
    pub head: Vertex,
}

impl OrientedEdge {
    pub fn new(tail: Vertex, head: Vertex) -> Self {
        OrientedEdge { tail, head }
    }

    pub fn edge(self) -> Result<Edge> {
        Edge::between(self.tail, self.head)
    }
}

impl fmt::Display for OrientedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tail, self.head)
    }
}

/// Half dimension `h`, used by the relabeling between the two factors of
/// `Q_{2h} = Q_h x Q_h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfDim(u32);

impl HalfDim {
    pub fn new(h: u32) -> Result<Self> {
        if h == 0 || 2 * h > MAX_DIM {
            return Err(Error::OutOfRange {
                what: "half dimension",
                value: h.into(),
                min: 1,
                max: (MAX_DIM / 2).into(),
            });
        }
        Ok(HalfDim(h))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `[h]` as a vertex.
    pub fn lower(self) -> Vertex {
        Vertex((1u64 << self.0) - 1)
    }

    pub fn full_dim(self) -> Dim {
        Dim(2 * self.0)
    }
}

/// A cycle `C(U, S)`: start vertex `U` and edge-direction sequence `S`.
///
/// Construction does not validate; use [`walk_cycle`] for that.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleSpec {
    pub start: Vertex,
    pub dirs: Vec<Direction>,
}

impl CycleSpec {
    pub fn new(start: Vertex, dirs: Vec<Direction>) -> Self {
        CycleSpec { start, dirs }
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    /// The vertices `U_1, ..., U_k` visited before each step, unchecked.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.dirs.iter().scan(self.start, |cur, &d| {
            let v = *cur;
            *cur = cur.toggle(d);
            Some(v)
        })
    }

    /// Traversed edges in order; the `j`-th item is edge position `j + 1`.
    pub fn oriented_edges(&self) -> impl Iterator<Item = OrientedEdge> + '_ {
        self.dirs.iter().scan(self.start, |cur, &d| {
            let tail = *cur;
            *cur = cur.toggle(d);
            Some(OrientedEdge::new(tail, *cur))
        })
    }

    /// Edge at 1-based position `pos`, unchecked beyond bounds.
    pub fn edge_at(&self, pos: usize) -> Option<OrientedEdge> {
        if pos == 0 || pos > self.dirs.len() {
            return None;
        }
        let tail = self.dirs[..pos - 1]
            .iter()
            .fold(self.start, |v, &d| v.toggle(d));
        Some(OrientedEdge::new(tail, tail.toggle(self.dirs[pos - 1])))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.dirs.iter().scan(self.start, |cur, &d| {
            let e = Edge::at(*cur, d);
            *cur = cur.toggle(d);
            Some(e)
        })
    }

    /// Vertex list rotated to start at the smallest mask, oriented so the
    /// second vertex is the smaller neighbour. Two specs describe the same
    /// subgraph iff their canonical forms agree.
    pub fn canonical_vertices(&self) -> Vec<Vertex> {
        let verts: Vec<Vertex> = self.vertices().collect();
        let k = verts.len();
        if k == 0 {
            return verts;
        }
        let (min_idx, _) = verts
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .expect("non-empty");
        let next = verts[(min_idx + 1) % k];
        let prev = verts[(min_idx + k - 1) % k];
        if next <= prev {
            (0..k).map(|j| verts[(min_idx + j) % k]).collect()
        } else {
            (0..k).map(|j| verts[(min_idx + k - j) % k]).collect()
        }
    }
}

/// The unique `i` with `u Δ v = {i}`.
pub fn edge_direction(u: Vertex, v: Vertex) -> Result<Direction> {
    let diff = u.mask() ^ v.mask();
    if diff.count_ones() != 1 {
        return Err(Error::NotAdjacent { u, v });
    }
    Ok(Direction(diff.trailing_zeros() as u8 + 1))
}

/// Image of `C(U, S)` under `B ↦ A Δ B`, which is `C(A Δ U, S)`.
pub fn apply_sigma(a: Vertex, spec: &CycleSpec) -> CycleSpec {
    CycleSpec::new(a ^ spec.start, spec.dirs.clone())
}

/// Half-shift relabeling of `[2h]`: `i ↦ i + h` on the lower half and
/// `i ↦ i - h` on the upper half. An involution.
pub fn theta(i: Direction, half: HalfDim) -> Result<Direction> {
    let h = half.get();
    let d = i.get();
    if d > 2 * h {
        return Err(Error::OutOfRange {
            what: "theta argument",
            value: d.into(),
            min: 1,
            max: (2 * h).into(),
        });
    }
    let image = if d <= h { d + h } else { d - h };
    Ok(Direction(image as u8))
}

/// Elementwise [`theta`] on a subset of `[h]`.
pub fn theta_set(a: Vertex, half: HalfDim) -> Result<Vertex> {
    if !a.is_subset_of(half.lower()) {
        return Err(Error::NotInLowerHalf {
            set: a,
            half: half.get(),
        });
    }
    Ok(Vertex(a.mask() << half.get()))
}

/// `⟨i⟩`: `∅` for 0, `{1..i}` for `i <= h`, `{i-h+1..h}` for `h < i <= 2h`.
pub fn bracket(i: u32, half: HalfDim) -> Result<Vertex> {
    let h = half.get();
    if i > 2 * h {
        return Err(Error::OutOfRange {
            what: "bracket index",
            value: i.into(),
            min: 0,
            max: (2 * h).into(),
        });
    }
    Ok(if i <= h {
        Vertex::interval(1, i)
    } else {
        Vertex::interval(i - h + 1, h)
    })
}

/// `[h] Δ X` for `X ⊆ [h]`.
pub fn complement_in_half(x: Vertex, half: HalfDim) -> Result<Vertex> {
    if !x.is_subset_of(half.lower()) {
        return Err(Error::NotInLowerHalf {
            set: x,
            half: half.get(),
        });
    }
    Ok(x ^ half.lower())
}

/// Walks `spec` in `Q_n` and returns its `k` vertices in order.
///
/// Fails unless every direction lies in `[n]`, the start lies in `Q_n`, the
/// walk returns to its start, no vertex repeats, and `k >= 4`.
pub fn walk_cycle(spec: &CycleSpec, n: Dim) -> Result<Vec<Vertex>> {
    if !n.contains(spec.start) {
        return Err(Error::ElementOutOfRange {
            set: spec.start,
            bound: n.get(),
        });
    }
    let mut verts = Vec::with_capacity(spec.len());
    let mut cur = spec.start;
    for &d in &spec.dirs {
        if d.get() > n.get() {
            return Err(Error::OutOfRange {
                what: "direction",
                value: d.get().into(),
                min: 1,
                max: n.get().into(),
            });
        }
        verts.push(cur);
        cur = cur.toggle(d);
    }
    if cur != spec.start {
        return Err(Error::NotClosed {
            start: spec.start,
            end: cur,
        });
    }
    // a closed walk of length 2 traverses the same edge twice
    if verts.len() < 4 {
        return Err(Error::NotSimple {
            vertex: spec.start,
            step: verts.len(),
        });
    }
    let mut seen: Vec<(Vertex, usize)> = verts.iter().copied().zip(0..).collect();
    seen.sort_unstable();
    if let Some(w) = seen.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::NotSimple {
            vertex: w[1].0,
            step: w[0].1.max(w[1].1),
        });
    }
    Ok(verts)
}
