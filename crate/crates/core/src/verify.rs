//! Brute-force checks for cycle decompositions and matchings.
//!
//! Everything here works from first principles: cycles are re-walked bit by
//! bit, the edge set of `Q_n` is enumerated as all pairs `(v, v Δ {i})`, and
//! components are found with a union-find. None of the construction code is
//! consulted. Checks collect every finding instead of stopping at the first.

use std::collections::HashMap;
use std::fmt;

use crate::decompose::Decomposition;
use crate::hypercube::{CycleSpec, Vertex};

/// Largest `n` for which whole-graph bitsets are allocated.
pub const VERIFY_CAP: u32 = 24;

/// Cap on repeated findings of one kind; further ones are only counted.
const MAX_REPEATS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    /// `cycle` is 1-based throughout.
    DirectionOutOfRange {
        cycle: usize,
        step: usize,
        dir: u32,
    },
    StartOutOfRange {
        cycle: usize,
        start: Vertex,
    },
    NotClosed {
        cycle: usize,
        end: Vertex,
    },
    NotSimple {
        cycle: usize,
        vertex: Vertex,
        step: usize,
    },
    TooShort {
        cycle: usize,
        len: usize,
    },
    CycleCount {
        expected: u64,
        actual: u64,
    },
    CycleLength {
        cycle: usize,
        expected: u64,
        actual: u64,
    },
    DuplicateEdges {
        count: u64,
        first: (Vertex, Vertex),
    },
    MissingEdges {
        count: u64,
        first: (Vertex, Vertex),
    },
    BadPosition {
        cycle: usize,
        detail: String,
    },
    MatchingConflict {
        vertex: Vertex,
    },
    UncoveredVertices {
        count: u64,
        first: Vertex,
    },
    MatchingSize {
        expected: u64,
        actual: u64,
    },
    ConditionI {
        cycle: usize,
        detail: String,
    },
    Overlap {
        vertex: Vertex,
    },
    NotSpanning {
        missing: u64,
        first: Vertex,
    },
    TooLarge {
        n: u32,
        cap: u32,
    },
    /// Stands in for findings dropped after [`MAX_REPEATS`] of one kind.
    Suppressed {
        kind: &'static str,
        count: u64,
    },
}

impl Finding {
    pub fn kind(&self) -> &'static str {
        match self {
            Finding::DirectionOutOfRange { .. } => "DIRECTION_OUT_OF_RANGE",
            Finding::StartOutOfRange { .. } => "START_OUT_OF_RANGE",
            Finding::NotClosed { .. } => "NOT_CLOSED",
            Finding::NotSimple { .. } => "NOT_SIMPLE",
            Finding::TooShort { .. } => "TOO_SHORT",
            Finding::CycleCount { .. } => "CYCLE_COUNT",
            Finding::CycleLength { .. } => "CYCLE_LENGTH",
            Finding::DuplicateEdges { .. } => "DUPLICATE",
            Finding::MissingEdges { .. } => "MISSING",
            Finding::BadPosition { .. } => "BAD_POSITION",
            Finding::MatchingConflict { .. } => "CONFLICT",
            Finding::UncoveredVertices { .. } => "UNCOVERED",
            Finding::MatchingSize { .. } => "MATCHING_SIZE",
            Finding::ConditionI { .. } => "CONDITION_I",
            Finding::Overlap { .. } => "OVERLAP",
            Finding::NotSpanning { .. } => "NOT_SPANNING",
            Finding::TooLarge { .. } => "TOO_LARGE",
            Finding::Suppressed { .. } => "SUPPRESSED",
        }
    }

    pub fn detail(&self) -> String {
        match self {
            Finding::DirectionOutOfRange { cycle, step, dir } => {
                format!("cycle {cycle} step {step}: direction {dir}")
            }
            Finding::StartOutOfRange { cycle, start } => format!("cycle {cycle}: start {start}"),
            Finding::NotClosed { cycle, end } => format!("cycle {cycle}: walk ends at {end}"),
            Finding::NotSimple {
                cycle,
                vertex,
                step,
            } => {
                format!("cycle {cycle}: {vertex} revisited at step {step}")
            }
            Finding::TooShort { cycle, len } => format!("cycle {cycle}: length {len}"),
            Finding::CycleCount { expected, actual } => {
                format!("expected {expected} cycles, found {actual}")
            }
            Finding::CycleLength {
                cycle,
                expected,
                actual,
            } => format!("cycle {cycle}: length {actual}, expected {expected}"),
            Finding::DuplicateEdges { count, first } => {
                format!(
                    "{count} edges covered more than once, first ({},{})",
                    first.0, first.1
                )
            }
            Finding::MissingEdges { count, first } => {
                format!("{count} edges not covered, first ({},{})", first.0, first.1)
            }
            Finding::BadPosition { cycle, detail } => format!("cycle {cycle}: {detail}"),
            Finding::MatchingConflict { vertex } => {
                format!("{vertex} lies on two matching edges")
            }
            Finding::UncoveredVertices { count, first } => {
                format!("{count} vertices not matched, first {first}")
            }
            Finding::MatchingSize { expected, actual } => {
                format!("matching has {actual} edges, expected {expected}")
            }
            Finding::ConditionI { cycle, detail } => format!("cycle {cycle}: {detail}"),
            Finding::Overlap { vertex } => format!("{vertex} lies on two cycles"),
            Finding::NotSpanning { missing, first } => {
                format!("{missing} vertices on no cycle, first {first}")
            }
            Finding::TooLarge { n, cap } => format!("n = {n} exceeds the check limit {cap}"),
            Finding::Suppressed { kind, count } => format!("{count} further {kind} findings"),
        }
    }
}

/// Findings of one or more checks; empty means everything passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn is_ok(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn merge(&mut self, other: Report) {
        self.findings.extend(other.findings);
    }

    pub fn has_kind(&self, kind: &str) -> bool {
        self.findings.iter().any(|f| f.kind() == kind)
    }

    /// One `KIND<TAB>detail` line per finding.
    pub fn machine_lines(&self) -> String {
        self.findings
            .iter()
            .map(|f| format!("{}\t{}\n", f.kind(), f.detail()))
            .collect()
    }

    fn push_limited(&mut self, f: Finding, seen: &mut HashMap<&'static str, u64>) {
        let k = f.kind();
        let c = seen.entry(k).or_insert(0);
        *c += 1;
        if *c as usize <= MAX_REPEATS {
            self.findings.push(f);
        }
    }

    fn flush_suppressed(&mut self, seen: HashMap<&'static str, u64>) {
        let mut extra: Vec<(&'static str, u64)> = seen
            .into_iter()
            .filter(|&(_, c)| c as usize > MAX_REPEATS)
            .map(|(k, c)| (k, c - MAX_REPEATS as u64))
            .collect();
        extra.sort_unstable();
        for (kind, count) in extra {
            self.findings.push(Finding::Suppressed { kind, count });
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.findings.is_empty() {
            return f.write_str("all checks passed");
        }
        writeln!(f, "{} problem(s):", self.findings.len())?;
        for (i, x) in self.findings.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "  {}: {}",
                x.kind().to_lowercase().replace('_', " "),
                x.detail()
            )?;
        }
        Ok(())
    }
}

struct Bits(Vec<u64>);

impl Bits {
    fn new(len: u64) -> Self {
        Bits(vec![0; len.div_ceil(64) as usize])
    }

    /// Sets the bit and returns whether it was already set.
    fn set(&mut self, i: u64) -> bool {
        let w = &mut self.0[(i / 64) as usize];
        let b = 1u64 << (i % 64);
        let was = *w & b != 0;
        *w |= b;
        was
    }

    fn get(&self, i: u64) -> bool {
        self.0[(i / 64) as usize] >> (i % 64) & 1 == 1
    }
}

fn full_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Walks a cycle, returning its vertices and any findings.
fn walk(spec: &CycleSpec, n: u32, cycle: usize, report: &mut Report) -> Option<Vec<u64>> {
    let mut ok = true;
    if spec.start.mask() & !full_mask(n) != 0 {
        report.findings.push(Finding::StartOutOfRange {
            cycle,
            start: spec.start,
        });
        ok = false;
    }
    let mut verts = Vec::with_capacity(spec.len());
    let mut cur = spec.start.mask();
    for (step, d) in spec.dirs.iter().enumerate() {
        let d = d.get();
        if d == 0 || d > n {
            report.findings.push(Finding::DirectionOutOfRange {
                cycle,
                step: step + 1,
                dir: d,
            });
            return None;
        }
        verts.push(cur);
        cur ^= 1u64 << (d - 1);
    }
    if cur != spec.start.mask() {
        report.findings.push(Finding::NotClosed {
            cycle,
            end: Vertex::from_mask(cur),
        });
        return None;
    }
    if verts.len() < 4 {
        report.findings.push(Finding::TooShort {
            cycle,
            len: verts.len(),
        });
        return None;
    }
    let mut first_seen: HashMap<u64, usize> = HashMap::with_capacity(verts.len());
    for (step, &v) in verts.iter().enumerate() {
        if first_seen.insert(v, step).is_some() {
            report.findings.push(Finding::NotSimple {
                cycle,
                vertex: Vertex::from_mask(v),
                step,
            });
            return None;
        }
    }
    ok.then_some(verts)
}

/// Closure, simplicity, length at least 4, and all directions in `[n]`.
pub fn verify_cycle(spec: &CycleSpec, n: u32) -> Report {
    let mut r = Report::default();
    walk(spec, n, 1, &mut r);
    r
}

/// Every edge of `Q_n` must be traversed by exactly one cycle.
pub fn verify_edge_partition(cycles: &[CycleSpec], n: u32) -> Report {
    let mut report = Report::default();
    if n > VERIFY_CAP || n == 0 {
        report
            .findings
            .push(Finding::TooLarge { n, cap: VERIFY_CAP });
        return report;
    }
    let nn = u64::from(n);
    // slot of edge (v, v Δ {d}) with d ∉ v is v·n + (d-1)
    let mut bits = Bits::new(nn << n);
    let mut dup = 0u64;
    let mut first_dup = None;
    for spec in cycles {
        let mut cur = spec.start.mask() & full_mask(n);
        for d in &spec.dirs {
            let d = d.get();
            if d == 0 || d > n {
                break;
            }
            let bit = 1u64 << (d - 1);
            let lo = cur & !bit;
            if bits.set(lo * nn + u64::from(d - 1)) {
                dup += 1;
                first_dup.get_or_insert((lo, lo | bit));
            }
            cur ^= bit;
        }
    }
    if let Some((a, b)) = first_dup {
        report.findings.push(Finding::DuplicateEdges {
            count: dup,
            first: (Vertex::from_mask(a), Vertex::from_mask(b)),
        });
    }
    let mut missing = 0u64;
    let mut first_missing = None;
    for v in 0..1u64 << n {
        for d in 0..n {
            if v >> d & 1 == 0 && !bits.get(v * nn + u64::from(d)) {
                missing += 1;
                first_missing.get_or_insert((v, v | 1 << d));
            }
        }
    }
    if let Some((a, b)) = first_missing {
        report.findings.push(Finding::MissingEdges {
            count: missing,
            first: (Vertex::from_mask(a), Vertex::from_mask(b)),
        });
    }
    report
}

/// The endpoints of the edge at 1-based `pos`, from an already walked cycle.
fn edge_at(verts: &[u64], pos: u32) -> (u64, u64) {
    let j = (pos - 1) as usize;
    (verts[j], verts[(j + 1) % verts.len()])
}

fn check_positions(positions: &[u32], len: usize, cycle: usize, report: &mut Report) -> bool {
    if positions.is_empty() {
        report.findings.push(Finding::BadPosition {
            cycle,
            detail: "no matching positions".into(),
        });
        return false;
    }
    for w in positions.windows(2) {
        if w[1] <= w[0] {
            report.findings.push(Finding::BadPosition {
                cycle,
                detail: format!("positions {} and {} not strictly ascending", w[0], w[1]),
            });
            return false;
        }
    }
    if let Some(&p) = positions.iter().find(|&&p| p == 0 || p as usize > len) {
        report.findings.push(Finding::BadPosition {
            cycle,
            detail: format!("position {p} outside 1..={len}"),
        });
        return false;
    }
    true
}

/// The selected edges must cover every vertex of `Q_n` exactly once.
pub fn verify_matching(dec: &Decomposition) -> Report {
    let n = dec.n.get();
    let mut report = Report::default();
    if n > VERIFY_CAP {
        report
            .findings
            .push(Finding::TooLarge { n, cap: VERIFY_CAP });
        return report;
    }
    if dec.matching.len() != dec.cycles.len() {
        report.findings.push(Finding::CycleCount {
            expected: dec.cycles.len() as u64,
            actual: dec.matching.len() as u64,
        });
        return report;
    }
    let mut covered = Bits::new(1u64 << n);
    let mut seen = HashMap::new();
    let mut size = 0u64;
    for (idx, (spec, positions)) in dec.cycles.iter().zip(&dec.matching).enumerate() {
        let cycle = idx + 1;
        let mut local = Report::default();
        let Some(verts) = walk(spec, n, cycle, &mut local) else {
            report.merge(local);
            continue;
        };
        if !check_positions(positions, verts.len(), cycle, &mut report) {
            continue;
        }
        for &p in positions {
            let (a, b) = edge_at(&verts, p);
            size += 1;
            for v in [a, b] {
                if covered.set(v) {
                    report.push_limited(
                        Finding::MatchingConflict {
                            vertex: Vertex::from_mask(v),
                        },
                        &mut seen,
                    );
                }
            }
        }
    }
    report.flush_suppressed(seen);
    let mut uncovered = 0u64;
    let mut first = None;
    for v in 0..1u64 << n {
        if !covered.get(v) {
            uncovered += 1;
            first.get_or_insert(v);
        }
    }
    if let Some(v) = first {
        report.findings.push(Finding::UncoveredVertices {
            count: uncovered,
            first: Vertex::from_mask(v),
        });
    }
    let expected = 1u64 << (n - 1);
    if size != expected {
        report.findings.push(Finding::MatchingSize {
            expected,
            actual: size,
        });
    }
    report
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Deleting a cycle's matching edges must leave exactly `2^m` components,
/// each a path with `n - 1` edges.
pub fn verify_condition_i(dec: &Decomposition) -> Report {
    let n = dec.n.get();
    let mut report = Report::default();
    let expected_paths = 1usize << dec.m;
    let mut seen = HashMap::new();
    for (idx, (spec, positions)) in dec.cycles.iter().zip(&dec.matching).enumerate() {
        let cycle = idx + 1;
        let mut local = Report::default();
        let Some(verts) = walk(spec, n, cycle, &mut local) else {
            report.merge(local);
            continue;
        };
        if !check_positions(positions, verts.len(), cycle, &mut report) {
            continue;
        }
        let k = verts.len();
        let index: HashMap<u64, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut deleted = vec![false; k];
        for &p in positions {
            deleted[(p - 1) as usize] = true;
        }
        let mut parent: Vec<usize> = (0..k).collect();
        let mut degree = vec![0u32; k];
        let mut kept = Vec::new();
        for (j, _) in deleted.iter().enumerate().filter(|(_, &del)| !del) {
            let (a, b) = edge_at(&verts, j as u32 + 1);
            let (a, b) = (index[&a], index[&b]);
            degree[a] += 1;
            degree[b] += 1;
            kept.push((a, b));
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let mut comp_vertices: HashMap<usize, (u64, u32)> = HashMap::new();
        for (v, &deg) in degree.iter().enumerate() {
            let root = find(&mut parent, v);
            let e = comp_vertices.entry(root).or_insert((0, 0));
            e.0 += 1;
            e.1 = e.1.max(deg);
        }
        let mut comp_edges: HashMap<usize, u64> = HashMap::new();
        for &(a, _) in &kept {
            *comp_edges.entry(find(&mut parent, a)).or_insert(0) += 1;
        }
        if comp_vertices.len() != expected_paths {
            report.push_limited(
                Finding::ConditionI {
                    cycle,
                    detail: format!(
                        "{} components after deleting the matching, expected {expected_paths}",
                        comp_vertices.len()
                    ),
                },
                &mut seen,
            );
            continue;
        }
        let mut roots: Vec<usize> = comp_vertices.keys().copied().collect();
        roots.sort_unstable();
        for root in roots {
            let (nv, max_deg) = comp_vertices[&root];
            let ne = comp_edges.get(&root).copied().unwrap_or(0);
            let is_path = ne + 1 == nv && max_deg <= 2;
            if !is_path || ne != u64::from(n - 1) {
                report.push_limited(
                    Finding::ConditionI {
                        cycle,
                        detail: format!(
                            "component with {nv} vertices and {ne} edges, expected a path of {} edges",
                            n - 1
                        ),
                    },
                    &mut seen,
                );
                break;
            }
        }
    }
    report.flush_suppressed(seen);
    report
}

/// The cycles must be pairwise vertex-disjoint and cover `V(Q_n)`.
pub fn verify_spanning_two_regular(family: &[CycleSpec], n: u32) -> Report {
    let mut report = Report::default();
    if n > VERIFY_CAP {
        report
            .findings
            .push(Finding::TooLarge { n, cap: VERIFY_CAP });
        return report;
    }
    let mut covered = Bits::new(1u64 << n);
    let mut seen = HashMap::new();
    for (idx, spec) in family.iter().enumerate() {
        let mut local = Report::default();
        let Some(verts) = walk(spec, n, idx + 1, &mut local) else {
            report.merge(local);
            continue;
        };
        for v in verts {
            if covered.set(v) {
                report.push_limited(
                    Finding::Overlap {
                        vertex: Vertex::from_mask(v),
                    },
                    &mut seen,
                );
            }
        }
    }
    report.flush_suppressed(seen);
    let mut missing = 0u64;
    let mut first = None;
    for v in 0..1u64 << n {
        if !covered.get(v) {
            missing += 1;
            first.get_or_insert(v);
        }
    }
    if let Some(v) = first {
        report.findings.push(Finding::NotSpanning {
            missing,
            first: Vertex::from_mask(v),
        });
    }
    report
}

/// Every check at once: cycle count and lengths, each cycle, the edge
/// partition, the matching, and condition (I).
pub fn verify_decomposition(dec: &Decomposition) -> Report {
    let n = dec.n.get();
    let mut report = Report::default();
    if n > VERIFY_CAP {
        report
            .findings
            .push(Finding::TooLarge { n, cap: VERIFY_CAP });
        return report;
    }
    if dec.m == 0 || dec.m >= n || n % 2 == 1 || (1u64 << dec.m) > u64::from(n) {
        report.findings.push(Finding::CycleCount {
            expected: 0,
            actual: dec.cycles.len() as u64,
        });
        return report;
    }
    let expected_count = 1u64 << (n - 1 - dec.m);
    if dec.cycles.len() as u64 != expected_count {
        report.findings.push(Finding::CycleCount {
            expected: expected_count,
            actual: dec.cycles.len() as u64,
        });
    }
    let expected_len = (1u64 << dec.m) * u64::from(n);
    let mut seen = HashMap::new();
    for (idx, spec) in dec.cycles.iter().enumerate() {
        if spec.len() as u64 != expected_len {
            report.push_limited(
                Finding::CycleLength {
                    cycle: idx + 1,
                    expected: expected_len,
                    actual: spec.len() as u64,
                },
                &mut seen,
            );
        }
    }
    report.flush_suppressed(seen);
    report.merge(verify_edge_partition(&dec.cycles, n));
    // verify_matching and verify_condition_i both re-walk every cycle and
    // report walk failures; keep those from the first pass only
    report.merge(verify_matching(dec));
    let cond = verify_condition_i(dec);
    report
        .findings
        .extend(cond.findings.into_iter().filter(|f| {
            matches!(f, Finding::ConditionI { .. })
                || matches!(
                    f,
                    Finding::Suppressed {
                        kind: "CONDITION_I",
                        ..
                    }
                )
        }));
    report
}
