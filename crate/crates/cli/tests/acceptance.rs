//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::{assert_edge_partition, assert_spanning, cycle_edges, k_generators, key, prefix};
use common::{rank, span_bfs, string, walk};
use cubecycles::appendix::check_q8;
use cubecycles::basis::{basis_decomposition, Family};
use cubecycles::group::{Subgroup, SubsetGroupParams};
use cubecycles::hypercube::dirs;
use cubecycles::io::{from_str, to_string};
use cubecycles::kotzig::product_sequence;
use cubecycles::mollard_ramras::{coset_spanning_families, two_n_cycle_decomposition};
use cubecycles::verify::{verify_condition_i, verify_edge_partition, verify_matching, Finding};
use cubecycles::{
    decompose, path_decomposition, verify_decomposition, Decomposition, Dim, HalfDim, Vertex,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const SCALE_PAIRS: [(u32, u32); 8] = [
    (4, 1),
    (4, 2),
    (6, 1),
    (6, 2),
    (8, 3),
    (10, 3),
    (12, 3),
    (16, 4),
];

fn v(e: &[u32]) -> Vertex {
    Vertex::from_elements(e.iter().copied())
}

fn edge_at(dec: &Decomposition, cycle: usize, pos: u32) -> (u64, u64) {
    let vs = walk(&dec.cycles[cycle]);
    let p = pos as usize;
    (vs[p - 1], vs[p % vs.len()])
}

fn table_edge(dec: &Decomposition, cycle: usize, pos: u32) -> (Vertex, Vertex) {
    let (a, b) = edge_at(dec, cycle, pos);
    (Vertex::from_mask(a), Vertex::from_mask(b))
}

fn c1_appendix_phi() -> Outcome {
    let t = Instant::now();
    let dec = decompose(8, 3).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure!(
        elapsed < Duration::from_secs(1),
        "construction took {elapsed:?}"
    );
    ensure!(dec.cycles.len() == 16, "{} cycles", dec.cycles.len());
    ensure!(dec.cycles.iter().all(|c| c.len() == 64), "cycle length");
    let starts: Vec<Vertex> = dec.cycles.iter().map(|c| c.start).collect();
    let f1 = [v(&[]), v(&[5, 7]), v(&[1, 3]), v(&[1, 3, 5, 7])];
    let f2 = [
        v(&[1, 2, 5, 6]),
        v(&[1, 2, 6, 7]),
        v(&[2, 3, 5, 6]),
        v(&[2, 3, 6, 7]),
    ];
    let want: Vec<Vertex> = f1
        .iter()
        .chain(&f2)
        .chain(&f1)
        .chain(&f2)
        .copied()
        .collect();
    ensure!(starts == want, "family starts {starts:?}");
    ensure!(
        dec.cycles[..8].iter().all(|c| c.dirs == dec.cycles[0].dirs)
            && dec.cycles[8..].iter().all(|c| c.dirs == dec.cycles[8].dirs),
        "families do not share their sequences"
    );
    ensure!(
        table_edge(&dec, 0, 1) == (v(&[]), v(&[1])),
        "first edge of phi_00"
    );
    ensure!(
        table_edge(&dec, 4, 19) == (v(&[1, 2]), v(&[2])),
        "first table edge of phi_{{1,2}}{{1,2}}"
    );
    ensure!(
        table_edge(&dec, 7, 11) == (v(&[1, 2, 3, 5, 6, 7]), v(&[1, 3, 5, 6, 7])),
        "last table edge of phi_{{2,3}}{{2,3}}"
    );
    let report = check_q8().map_err(|e| e.to_string())?;
    ensure!(report.phi_rows_matched == 64, "{report}");
    ensure!(
        !report.mismatches.iter().any(|m| m.starts_with("phi")),
        "{report}"
    );
    Ok(format!("64/64 phi rows, construction {elapsed:.0?}"))
}

fn c2_appendix_gamma() -> Outcome {
    let report = check_q8().map_err(|e| e.to_string())?;
    ensure!(report.is_ok(), "{report}");
    ensure!(report.gamma_rows_matched == 64, "{report}");
    ensure!(
        report.typos_used.len() <= 5,
        "{} typos",
        report.typos_used.len()
    );
    let dec = decompose(8, 3).map_err(|e| e.to_string())?;
    let primed = Decomposition {
        n: dec.n,
        m: dec.m,
        cycles: dec.cycles[8..].to_vec(),
        matching: dec.matching[8..].to_vec(),
    };
    // M' alone covers half of Q_8: the only admissible findings are the
    // 128 vertices it leaves for M and the matching size 64 of 128
    let r = verify_matching(&primed);
    let expected = vec![
        Finding::UncoveredVertices {
            count: 128,
            first: r
                .findings
                .iter()
                .find_map(|f| match f {
                    Finding::UncoveredVertices { first, .. } => Some(*first),
                    _ => None,
                })
                .unwrap_or(Vertex::EMPTY),
        },
        Finding::MatchingSize {
            expected: 128,
            actual: 64,
        },
    ];
    ensure!(r.findings == expected, "M' findings: {r}");
    let mut seen = HashSet::new();
    for (c, pos) in primed.matching.iter().enumerate() {
        for &p in pos {
            let (a, b) = edge_at(&primed, c, p);
            ensure!(seen.insert(a) && seen.insert(b), "M' edges share a vertex");
        }
    }
    let full = verify_matching(&dec);
    ensure!(full.is_ok(), "M ∪ M': {full}");
    Ok(format!(
        "64/64 gamma rows, {} typos, M' is a matching",
        report.typos_used.len()
    ))
}

fn build_all() -> Result<Vec<(u32, u32, Decomposition)>, String> {
    SCALE_PAIRS
        .iter()
        .map(|&(n, m)| {
            decompose(n, m)
                .map(|d| (n, m, d))
                .map_err(|e| format!("({n},{m}): {e}"))
        })
        .collect()
}

fn c3_perfect_matching() -> Outcome {
    let mut timing = String::new();
    for &(n, m) in &SCALE_PAIRS {
        let t = Instant::now();
        let dec = decompose(n, m).map_err(|e| e.to_string())?;
        let full = verify_decomposition(&dec);
        let elapsed = t.elapsed();
        ensure!(full.is_ok(), "({n},{m}): {full}");
        if (n, m) == (16, 4) {
            ensure!(elapsed < Duration::from_secs(60), "(16,4) took {elapsed:?}");
            timing = format!("(16,4) built and verified in {elapsed:.1?}");
        }
        let mut covered = vec![false; 1 << n];
        let mut size = 0u64;
        for (c, pos) in dec.matching.iter().enumerate() {
            for &p in pos {
                let (a, b) = edge_at(&dec, c, p);
                for x in [a, b] {
                    ensure!(!covered[x as usize], "({n},{m}): {x:#x} matched twice");
                    covered[x as usize] = true;
                }
                size += 1;
            }
        }
        ensure!(size == 1u64 << (n - 1), "({n},{m}): matching size {size}");
        ensure!(covered.iter().all(|&c| c), "({n},{m}): uncovered vertex");
    }
    Ok(timing)
}

fn c4_cycle_count() -> Outcome {
    for (n, m, dec) in build_all()? {
        ensure!(
            dec.cycles.len() as u64 == 1u64 << (n - 1 - m),
            "({n},{m}): {} cycles",
            dec.cycles.len()
        );
        ensure!(
            dec.cycles.iter().all(|c| c.len() as u32 == (1 << m) * n),
            "({n},{m}): cycle length"
        );
        let mut edges = vec![false; (n as usize) << n];
        let mut total = 0u64;
        for c in &dec.cycles {
            for (lo, hi) in cycle_edges(c) {
                let slot = (lo as usize) * n as usize + (lo ^ hi).trailing_zeros() as usize;
                ensure!(!edges[slot], "({n},{m}): duplicate edge");
                edges[slot] = true;
                total += 1;
            }
        }
        ensure!(total == u64::from(n) << (n - 1), "({n},{m}): {total} edges");
        let r = verify_edge_partition(&dec.cycles, n);
        ensure!(r.is_ok(), "({n},{m}): {r}");
    }
    Ok("all pairs".into())
}

fn c5_condition_i() -> Outcome {
    for (n, m, dec) in build_all()? {
        let r = verify_condition_i(&dec);
        ensure!(r.is_ok(), "({n},{m}): {r}");
        for (c, pos) in dec.cycles.iter().zip(&dec.matching) {
            let len = c.len();
            let chosen: HashSet<usize> = pos.iter().map(|&p| p as usize - 1).collect();
            // rotate to just after a matching edge and read off the runs
            let base = pos[0] as usize;
            let mut runs = Vec::new();
            let mut run = 0u32;
            for k in 0..len {
                if chosen.contains(&((base + k) % len)) {
                    runs.push(run);
                    run = 0;
                } else {
                    run += 1;
                }
            }
            ensure!(runs.len() == 1 << m, "({n},{m}): {} components", runs.len());
            ensure!(
                runs.iter().all(|&r| r == n - 1),
                "({n},{m}): path lengths {runs:?}"
            );
        }
    }
    Ok("all cycles".into())
}

fn c6_mollard_ramras() -> Outcome {
    for n in [2u32, 4, 6, 8, 10] {
        let cycles = two_n_cycle_decomposition(Dim::new(n).unwrap()).map_err(|e| e.to_string())?;
        ensure!(cycles.len() as u64 == 1u64 << (n - 2), "n = {n}: count");
        ensure!(
            cycles.iter().all(|c| c.len() as u32 == 2 * n),
            "n = {n}: length"
        );
        assert_edge_partition(&cycles, n);
    }
    Ok("n = 2..10".into())
}

fn in_span(gens: &[u64], a: u64) -> bool {
    let mut with = gens.to_vec();
    with.push(a);
    rank(&with) == rank(gens)
}

fn c7_lemmas() -> Outcome {
    for h in [4u32, 8, 16, 32] {
        let gens = k_generators(h);
        let lib =
            Subgroup::standard(SubsetGroupParams::new(h).unwrap()).map_err(|e| e.to_string())?;
        let log = h.trailing_zeros();
        ensure!(rank(&gens) == h - log - 1, "h = {h}: rank");
        ensure!(lib.order() == 1u64 << (h - log - 1), "h = {h}: |H|");
        let member = |a: u64| lib.contains(Vertex::from_mask(a));
        for a in 1..h {
            for b in a..h {
                let s = string(a, b);
                ensure!(
                    !in_span(&gens, s) && !member(s),
                    "h = {h}: string {s:#x} in H"
                );
            }
        }
        let union = gens.iter().fold(0, |acc, g| acc | g);
        ensure!(union & (1u64 << (h / 2 - 1)) == 0, "h = {h}: h/2 used");
        ensure!(union >> (h - 1) == 0, "h = {h}: h used");
        for k in 1..h / 2 {
            let a = 1 | (1u64 << (2 * k));
            ensure!(
                in_span(&gens, a) && member(a),
                "h = {h}: {{1,{}}}",
                2 * k + 1
            );
        }
        let cosets = lib.cosets().map_err(|e| e.to_string())?;
        ensure!(cosets.len() as u32 == h / 2, "h = {h}: coset count");
        let reps: Vec<u64> = (1..=h / 2).map(|i| prefix(2 * i - 2)).collect();
        if h <= 16 {
            let oracle = span_bfs(&gens);
            for g in (0..1u64 << (h - 1)).filter(|g| g.count_ones() % 2 == 0) {
                let owners = reps.iter().filter(|&&r| oracle.contains(&(g ^ r))).count();
                ensure!(owners == 1, "h = {h}: {g:#x} in {owners} cosets");
            }
        } else {
            for i in 0..reps.len() {
                for j in i + 1..reps.len() {
                    ensure!(
                        !in_span(&gens, reps[i] ^ reps[j]),
                        "h = {h}: cosets {i}, {j}"
                    );
                }
            }
            ensure!(
                (reps.len() as u64) << rank(&gens) == 1u64 << (h - 2),
                "h = {h}: cosets do not fill G"
            );
        }
    }
    for h in [8u32, 16] {
        let oracle = span_bfs(&k_generators(h));
        let mut sets = Vec::new();
        for r in 1..h {
            for t in r + 1..h {
                for s in r + 1..h - t {
                    sets.push(prefix(r) | string(t + 1, t + s));
                }
            }
        }
        for k in 0..h.trailing_zeros() {
            let p = 1u32 << k;
            for t in 2 * p + 1..h {
                for s in 1..p.min(h - t) {
                    sets.push(prefix(p) | string(t + 1, t + s));
                }
            }
        }
        for total in 1..h {
            let low = 1u32 << total.trailing_zeros();
            for r in 2..low {
                for s in 1..r.min(h - total) {
                    sets.push(prefix(r) | string(total + 1, total + s));
                }
            }
        }
        ensure!(!sets.is_empty(), "no two-string sets generated");
        for a in sets {
            ensure!(!oracle.contains(&a), "h = {h}: two-string set {a:#x} in H");
        }
    }
    for n in [4u32, 8, 16] {
        let fams = coset_spanning_families(Dim::new(n).unwrap()).map_err(|e| e.to_string())?;
        ensure!(fams.len() as u32 == n / 2, "n = {n}: family count");
        for f in &fams {
            assert_spanning(&f.cycles, n);
        }
    }
    Ok("h = 4, 8, 16, 32".into())
}

fn product_edges(x: Vertex, y: Vertex, h: u32) -> HashSet<(u64, u64)> {
    let seq: Vec<u32> = (1..=h).chain(1..=h).collect();
    let factor = |start: u64| -> Vec<u64> {
        let mut cur = start;
        seq.iter()
            .map(|&d| {
                let here = cur;
                cur ^= 1u64 << (d - 1);
                here
            })
            .collect()
    };
    let left = factor(x.mask());
    let right: Vec<u64> = factor(y.mask()).iter().map(|w| w << h).collect();
    let k = left.len();
    let mut out = HashSet::new();
    for a in 0..k {
        for b in 0..k {
            out.insert(key(left[a] | right[b], left[(a + 1) % k] | right[b]));
            out.insert(key(left[a] | right[b], left[a] | right[(b + 1) % k]));
        }
    }
    out
}

fn c8_kotzig() -> Outcome {
    let mut pairs = 0;
    for m in [3u32, 4] {
        let dec = basis_decomposition(m).map_err(|e| e.to_string())?;
        let h = dec.n.get() / 2;
        for phi in dec.cycles.iter().filter(|c| c.family == Family::Phi) {
            let gamma = dec
                .cycles
                .iter()
                .find(|c| c.family == Family::Gamma && (c.x, c.y) == (phi.x, phi.y))
                .ok_or("missing gamma partner")?;
            let pe: HashSet<_> = cycle_edges(&phi.spec).into_iter().collect();
            let ge: HashSet<_> = cycle_edges(&gamma.spec).into_iter().collect();
            ensure!(pe.is_disjoint(&ge), "phi and gamma share an edge");
            let union: HashSet<_> = pe.union(&ge).copied().collect();
            ensure!(
                union == product_edges(phi.x, phi.y, h),
                "m = {m}: ({}, {}) is not the product",
                phi.x,
                phi.y
            );
            let pv: HashSet<u64> = walk(&phi.spec).into_iter().collect();
            let gv: HashSet<u64> = walk(&gamma.spec).into_iter().collect();
            ensure!(pv == gv, "vertex sets differ");
            pairs += 1;
        }
    }
    let seq = product_sequence(&dirs(&[1, 2, 3, 4, 1, 2, 3, 4]), HalfDim::new(4).unwrap())
        .map_err(|e| e.to_string())?;
    let block = [
        1, 2, 3, 4, 1, 2, 3, 5, 4, 1, 2, 3, 4, 1, 2, 6, 3, 4, 1, 2, 3, 4, 1, 7, 2, 3, 4, 1, 2, 3,
        4, 8,
    ];
    let listed: Vec<u32> = block.iter().chain(&block).copied().collect();
    ensure!(seq == dirs(&listed), "64-term sequence differs");
    Ok(format!("{pairs} pairs"))
}

fn c9_paths() -> Outcome {
    let dec = decompose(8, 3).map_err(|e| e.to_string())?;
    for (r, count) in [(8u32, 128usize), (16, 64), (32, 32)] {
        let p = path_decomposition(&dec, r).map_err(|e| e.to_string())?;
        ensure!(p.paths.len() == count, "r = {r}: {} paths", p.paths.len());
        let mut edges = HashSet::new();
        for path in &p.paths {
            ensure!(path.len() as u32 == r + 1, "r = {r}: path length");
            for w in path.windows(2) {
                ensure!(
                    edges.insert(key(w[0].mask(), w[1].mask())),
                    "r = {r}: edge reused"
                );
            }
        }
        ensure!(edges.len() == 1024, "r = {r}: {} edges", edges.len());
    }
    Ok("r = 8, 16, 32".into())
}

fn c10_round_trip() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut pairs: Vec<(u32, u32)> = vec![(2, 1), (6, 2), (8, 1), (8, 2)];
    pairs.extend(SCALE_PAIRS);
    let (mut flips, mut rejected) = (0, 0);
    for (n, m) in pairs {
        let path = dir.path().join(format!("q{n}_{m}.qcyc"));
        let out = Command::new(env!("CARGO_BIN_EXE_cubecycles"))
            .args(["decompose", "--n", &n.to_string(), "--m", &m.to_string()])
            .args(["--out", path.to_str().unwrap()])
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(out.status.success(), "({n},{m}): decompose failed");
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let again =
            to_string(&from_str(&text).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure!(again == text, "({n},{m}): rewrite differs");

        // every single-bit flip of the first start mask; a flip only leaves
        // the file valid when it maps the cycle and its matched edges onto
        // themselves, so the oracle decides which flips must be rejected
        let dec = from_str(&text).map_err(|e| e.to_string())?;
        let original = &dec.cycles[0];
        let matched = |c: &cubecycles::CycleSpec| -> HashSet<(u64, u64)> {
            let vs = walk(c);
            dec.matching[0]
                .iter()
                .map(|&p| key(vs[p as usize - 1], vs[p as usize % vs.len()]))
                .collect()
        };
        let edge_set = |c: &cubecycles::CycleSpec| -> HashSet<(u64, u64)> {
            cycle_edges(c).into_iter().collect()
        };
        let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
        let (head, rest) = lines[2].split_once(" dirs=").ok_or("no c record")?;
        let (prefix_part, hex) = head.split_once("start=").ok_or("no start")?;
        let (prefix_part, rest) = (prefix_part.to_owned(), rest.to_owned());
        let mask = u64::from_str_radix(hex, 16).map_err(|e| e.to_string())?;
        let mut caught = 0;
        for bit in 0..n {
            let flipped = mask ^ (1u64 << bit);
            let mut moved = original.clone();
            moved.start = Vertex::from_mask(flipped);
            let same =
                edge_set(&moved) == edge_set(original) && matched(&moved) == matched(original);
            lines[2] = format!("{prefix_part}start={flipped:x} dirs={rest}");
            let bad = dir.path().join(format!("bad{n}_{m}_{bit}.qcyc"));
            std::fs::write(&bad, lines.join("\n") + "\n").map_err(|e| e.to_string())?;
            let status = Command::new(env!("CARGO_BIN_EXE_cubecycles"))
                .args(["verify", bad.to_str().unwrap()])
                .output()
                .map_err(|e| e.to_string())?
                .status;
            ensure!(
                status.success() == same,
                "({n},{m}) bit {bit}: verify exit {:?}, file {} the original",
                status.code(),
                if same {
                    "equivalent to"
                } else {
                    "differs from"
                }
            );
            if !same {
                caught += 1;
            }
        }
        if n > 2 {
            ensure!(caught > 0, "({n},{m}): no flip changes the decomposition");
        }
        flips += n;
        rejected += caught;
    }
    Ok(format!(
        "12 files round-trip, {rejected} of {flips} start flips rejected, the rest are no-ops"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "appendix phi tables and Q8 family structure",
            c1_appendix_phi,
        ),
        ("appendix gamma tables within typo list", c2_appendix_gamma),
        ("perfect matching at scale", c3_perfect_matching),
        ("cycle count and edge partition", c4_cycle_count),
        ("matching leaves 2^m paths of n-1 edges", c5_condition_i),
        ("2n-cycle decompositions for n <= 10", c6_mollard_ramras),
        ("subgroup lemma suite", c7_lemmas),
        ("product splitting", c8_kotzig),
        ("path decompositions of Q8", c9_paths),
        ("QCYC round trip and tamper detection", c10_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
