//! Brute-force helpers that work on raw bitmasks and share no code with the
//! library beyond reading `CycleSpec` fields.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use cubecycles::CycleSpec;

/// Vertices visited by `spec`, starting vertex first, without the return.
pub fn walk(spec: &CycleSpec) -> Vec<u64> {
    let mut cur = spec.start.mask();
    let mut out = Vec::with_capacity(spec.dirs.len());
    for d in &spec.dirs {
        out.push(cur);
        cur ^= 1u64 << (d.get() - 1);
    }
    assert_eq!(cur, spec.start.mask(), "walk does not close");
    out
}

/// Unordered edge key `(min, max)`.
pub fn key(a: u64, b: u64) -> (u64, u64) {
    assert_eq!(
        (a ^ b).count_ones(),
        1,
        "{a:#x} and {b:#x} are not adjacent"
    );
    (a.min(b), a.max(b))
}

pub fn cycle_edges(spec: &CycleSpec) -> Vec<(u64, u64)> {
    let vs = walk(spec);
    (0..vs.len())
        .map(|k| key(vs[k], vs[(k + 1) % vs.len()]))
        .collect()
}

/// Asserts that `cycles` are simple and use every edge of `Q_n` exactly once.
pub fn assert_edge_partition(cycles: &[CycleSpec], n: u32) {
    let mut seen = HashSet::new();
    for c in cycles {
        let vs = walk(c);
        let distinct: HashSet<_> = vs.iter().collect();
        assert_eq!(distinct.len(), vs.len(), "cycle repeats a vertex");
        assert!(vs.iter().all(|&v| v >> n == 0), "vertex outside Q_{n}");
        for e in cycle_edges(c) {
            assert!(seen.insert(e), "edge {e:?} used twice");
        }
    }
    assert_eq!(seen.len() as u64, u64::from(n) << (n - 1), "edges missing");
}

/// Asserts that `cycles` are pairwise vertex-disjoint and cover `Q_n`.
pub fn assert_spanning(cycles: &[CycleSpec], n: u32) {
    let mut seen = HashSet::new();
    for c in cycles {
        for v in walk(c) {
            assert!(seen.insert(v), "vertex {v:#x} covered twice");
        }
    }
    assert_eq!(seen.len() as u64, 1u64 << n);
}

/// `K = {{j, 2^(i-1) + j}}` as masks, for `h` a power of two.
pub fn k_generators(h: u32) -> Vec<u64> {
    let mu = h.trailing_zeros();
    let mut out = Vec::new();
    for i in 2..=mu {
        let step = 1u32 << (i - 1);
        for j in 1..step {
            out.push((1u64 << (j - 1)) | (1u64 << (step + j - 1)));
        }
    }
    out
}

/// Closure of `gens` under symmetric difference, by breadth-first search.
pub fn span_bfs(gens: &[u64]) -> HashSet<u64> {
    let mut set = HashSet::from([0u64]);
    let mut frontier = vec![0u64];
    while let Some(x) = frontier.pop() {
        for g in gens {
            if set.insert(x ^ g) {
                frontier.push(x ^ g);
            }
        }
    }
    set
}

/// GF(2) rank by elimination on leading bits.
pub fn rank(vectors: &[u64]) -> u32 {
    let mut pivots: HashMap<u32, u64> = HashMap::new();
    let mut r = 0;
    for &v in vectors {
        let mut x = v;
        while x != 0 {
            let top = 63 - x.leading_zeros();
            match pivots.get(&top) {
                Some(&p) => x ^= p,
                None => {
                    pivots.insert(top, x);
                    r += 1;
                    break;
                }
            }
        }
    }
    r
}

/// `{1, ..., i}` as a mask.
pub fn prefix(i: u32) -> u64 {
    if i == 0 {
        0
    } else {
        u64::MAX >> (64 - i)
    }
}

/// `{a, ..., b}` as a mask (empty when `a > b`).
pub fn string(a: u32, b: u32) -> u64 {
    if a > b {
        0
    } else {
        prefix(b) & !prefix(a - 1)
    }
}
