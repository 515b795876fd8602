//! Splitting the product `C(U1, S) □ C(U2, S)` of two `k`-cycles of `Q_h` into
//! two `k²`-cycles `Φ` and `Γ` of `Q_{2h}`.
//!
//! A product vertex `(X, Y)` is written `X ∪ θ(Y)`. `Φ` follows the sequence
//! built by [`product_sequence`]; `Γ` follows its image under `θ`.

use crate::error::{Error, Result};
use crate::hypercube::{theta, theta_set, walk_cycle, CycleSpec, Dim, Direction, HalfDim, Vertex};

/// The two cycles of a product split, sharing their start vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSplit {
    pub phi: CycleSpec,
    pub gamma: CycleSpec,
}

/// The `k²`-term sequence `𝒮` for a factor sequence `s` of length `k`.
///
/// Block `b` (0-based) lists `s[-b], s[1-b], ..., s[k-2-b]` (indices mod `k`)
/// and ends with `θ(s[b])`.
pub fn product_sequence(s: &[Direction], half: HalfDim) -> Result<Vec<Direction>> {
    check_in_half(s, half)?;
    let k = s.len();
    let mut out = Vec::with_capacity(k * k);
    for b in 0..k {
        out.extend((0..k.saturating_sub(1)).map(|j| s[(j + k - b) % k]));
        if k > 0 {
            out.push(theta(s[b], half)?);
        }
    }
    Ok(out)
}

/// Applies `θ` termwise.
pub fn theta_sequence(seq: &[Direction], half: HalfDim) -> Result<Vec<Direction>> {
    seq.iter().map(|&d| theta(d, half)).collect()
}

fn check_in_half(s: &[Direction], half: HalfDim) -> Result<()> {
    match s.iter().find(|d| d.get() > half.get()) {
        Some(d) => Err(Error::DirectionOutOfHalf {
            dir: d.get(),
            half: half.get(),
        }),
        None => Ok(()),
    }
}

/// Splits `C(u1, s) □ C(u2, s)` into `Φ = C(u1 ∪ θ(u2), 𝒮)` and
/// `Γ = C(u1 ∪ θ(u2), θ(𝒮))`. Both factors and both outputs are walked and
/// rejected if they are not cycles.
pub fn kotzig_pair(u1: Vertex, u2: Vertex, s: &[Direction], half: HalfDim) -> Result<ProductSplit> {
    let seq = product_sequence(s, half)?;
    kotzig_pair_with(u1, u2, s, &seq, half)
}

/// [`kotzig_pair`] with `𝒮` precomputed by the caller.
pub(crate) fn kotzig_pair_with(
    u1: Vertex,
    u2: Vertex,
    s: &[Direction],
    seq: &[Direction],
    half: HalfDim,
) -> Result<ProductSplit> {
    let factor_dim = Dim::new(half.get())?;
    let full = half.full_dim();
    walk_cycle(&CycleSpec::new(u1, s.to_vec()), factor_dim)?;
    walk_cycle(&CycleSpec::new(u2, s.to_vec()), factor_dim)?;
    let start = u1 ^ theta_set(u2, half)?;
    let phi = CycleSpec::new(start, seq.to_vec());
    let gamma = CycleSpec::new(start, theta_sequence(seq, half)?);
    walk_cycle(&phi, full)?;
    walk_cycle(&gamma, full)?;
    Ok(ProductSplit { phi, gamma })
}
