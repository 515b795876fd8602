//! Reference matching-edge tables for the `Q_8` decomposition into 64-cycles,
//! and their comparison with the construction.
//!
//! The reference text lists, for each of the 16 cycles, its eight selected
//! edges in table order: rows `1..=4` and `4+1..=4+4`. Row `t` (0-based) of
//! a cycle with first offset `off` in family coset `i` sits at cycle position
//! `off + n·(2i - 2 + t)`, taken cyclically. The text is kept as printed,
//! including a few malformed entries; [`known_typos`] lists every one of
//! them, and [`check_q8`] accepts a deviation only if it is listed there.

use std::fmt;

use crate::basis::{basis_decomposition, select_matching, BasisDecomposition, Family};
use crate::error::{Error, Result};
use crate::group::{Subgroup, SubsetGroupParams};
use crate::hypercube::{OrientedEdge, Vertex};

pub const Q8_TABLES: &str = include_str!("q8_tables.txt");

/// One reference table: the selected edges of one cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenTable {
    pub family: Family,
    pub x: Vertex,
    pub y: Vertex,
    /// Row-label letter as printed (`e` or `f`).
    pub letter: char,
    /// Row-label superscript as printed; it should equal the coset index.
    pub label_coset: u32,
    pub rows: Vec<OrientedEdge>,
}

/// A cell of the reference text that cannot be read strictly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Malformed {
    pub table: usize,
    pub row: usize,
    pub text: String,
}

/// A documented defect of the reference text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Typo {
    pub family: Family,
    pub x: Vertex,
    pub y: Vertex,
    /// 1-based row, or `None` for a table heading.
    pub row: Option<usize>,
    pub printed: &'static str,
    pub reading: &'static str,
}

impl fmt::Display for Typo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let place = match self.row {
            Some(r) => format!("row {r}"),
            None => "row labels".to_string(),
        };
        write!(
            f,
            "{}_{}{} {place}: printed `{}`, read as `{}`",
            self.family, self.x, self.y, self.printed, self.reading
        )
    }
}

/// Every accepted defect of [`Q8_TABLES`].
pub fn known_typos() -> Vec<Typo> {
    let v = |e: &[u32]| Vertex::from_elements(e.iter().copied());
    vec![
        Typo {
            family: Family::Gamma,
            x: v(&[]),
            y: v(&[]),
            row: Some(3),
            printed: "{,1,2,5,6,7}",
            reading: "{1,2,5,6,7}",
        },
        Typo {
            family: Family::Gamma,
            x: v(&[]),
            y: v(&[1, 3]),
            row: Some(2),
            printed: "{1,6,}",
            reading: "{1,6}",
        },
        Typo {
            family: Family::Gamma,
            x: v(&[1, 3]),
            y: v(&[]),
            row: None,
            printed: "f2",
            reading: "f1",
        },
        Typo {
            family: Family::Gamma,
            x: v(&[1, 3]),
            y: v(&[1, 3]),
            row: None,
            printed: "f2",
            reading: "f1",
        },
    ]
}

fn parse_set(text: &str, lenient: bool) -> std::result::Result<Vertex, ()> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or(())?;
    if inner.is_empty() {
        return Ok(Vertex::EMPTY);
    }
    let mut out = Vertex::EMPTY;
    for part in inner.split(',') {
        if part.is_empty() {
            if lenient {
                continue;
            }
            return Err(());
        }
        let e: u32 = part.parse().map_err(|_| ())?;
        if !(1..=64).contains(&e) {
            return Err(());
        }
        out = out ^ Vertex::from_elements([e]);
    }
    Ok(out)
}

/// Splits `({a},{b})` at the comma between the two braces.
fn parse_edge(cell: &str, lenient: bool) -> std::result::Result<OrientedEdge, ()> {
    let body = cell
        .strip_prefix('(')
        .and_then(|c| c.strip_suffix(')'))
        .ok_or(())?;
    let split = body.find("},{").ok_or(())?;
    let a = parse_set(&body[..=split], lenient)?;
    let b = parse_set(&body[split + 2..], lenient)?;
    Ok(OrientedEdge::new(a, b))
}

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

/// Reads the reference tables. In strict mode every cell must be well
/// formed; in lenient mode empty list items are skipped and each such cell
/// is returned in the second component.
pub fn parse_tables(text: &str, strict: bool) -> Result<(Vec<GoldenTable>, Vec<Malformed>)> {
    let mut tables: Vec<GoldenTable> = Vec::new();
    let mut malformed = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("table ") {
            let tok: Vec<&str> = rest.split(' ').collect();
            let [fam, x, y, label] = tok[..] else {
                return Err(parse_err(line_no, "table heading needs 4 fields"));
            };
            let family = match fam {
                "phi" => Family::Phi,
                "gamma" => Family::Gamma,
                other => return Err(parse_err(line_no, format!("unknown family `{other}`"))),
            };
            let set = |t: &str, key: &str| {
                t.strip_prefix(key)
                    .ok_or(())
                    .and_then(|s| parse_set(s, false))
                    .map_err(|_| parse_err(line_no, format!("bad `{t}`")))
            };
            let label = label
                .strip_prefix("label=")
                .ok_or_else(|| parse_err(line_no, "missing label"))?;
            let mut chars = label.chars();
            let letter = chars
                .next()
                .ok_or_else(|| parse_err(line_no, "empty label"))?;
            let label_coset = chars
                .as_str()
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad label `{label}`")))?;
            tables.push(GoldenTable {
                family,
                x: set(x, "x=")?,
                y: set(y, "y=")?,
                letter,
                label_coset,
                rows: Vec::new(),
            });
            continue;
        }
        let table = tables.len().wrapping_sub(1);
        let current = tables
            .last_mut()
            .ok_or_else(|| parse_err(line_no, "row before any table heading"))?;
        let (idx, cell) = line
            .split_once(' ')
            .ok_or_else(|| parse_err(line_no, "row needs an index and an edge"))?;
        let idx: usize = idx
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad row index `{idx}`")))?;
        if idx != current.rows.len() + 1 {
            return Err(parse_err(line_no, format!("row {idx} out of order")));
        }
        let edge = match parse_edge(cell, false) {
            Ok(e) => e,
            Err(()) if !strict => {
                let e = parse_edge(cell, true)
                    .map_err(|_| parse_err(line_no, format!("unreadable edge `{cell}`")))?;
                malformed.push(Malformed {
                    table,
                    row: idx,
                    text: cell.to_string(),
                });
                e
            }
            Err(()) => return Err(parse_err(line_no, format!("malformed edge `{cell}`"))),
        };
        current.rows.push(edge);
    }
    Ok((tables, malformed))
}

/// Outcome of comparing the construction with the reference tables.
#[derive(Clone, Debug, Default)]
pub struct AppendixReport {
    pub phi_rows_matched: usize,
    pub gamma_rows_matched: usize,
    /// Deviations not on the typo list; any entry fails the check.
    pub mismatches: Vec<String>,
    /// Typo-list entries that were actually needed.
    pub typos_used: Vec<Typo>,
}

impl AppendixReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty() && self.typos_used.len() <= 5
    }
}

impl fmt::Display for AppendixReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "phi rows matched: {}/64, gamma rows matched: {}/64",
            self.phi_rows_matched, self.gamma_rows_matched
        )?;
        for t in &self.typos_used {
            writeln!(f, "accepted typo: {t}")?;
        }
        for m in &self.mismatches {
            writeln!(f, "MISMATCH: {m}")?;
        }
        Ok(())
    }
}

fn row_position(n: u32, offset: u32, coset: u32, t: u32) -> u32 {
    (offset - 1 + n * (2 * coset - 2 + t)) % (n * n) + 1
}

/// Selected edges of one basis cycle in table order.
fn table_rows(dec: &BasisDecomposition, idx: usize) -> Vec<OrientedEdge> {
    let c = &dec.cycles[idx];
    let n = dec.n.get();
    let off = dec.matching_offset(c);
    (0..n)
        .map(|t| {
            c.spec
                .edge_at(row_position(n, off, c.coset, t) as usize)
                .expect("position within cycle")
        })
        .collect()
}

/// Compares the `m = 3` construction against [`Q8_TABLES`].
pub fn check_q8() -> Result<AppendixReport> {
    let dec = basis_decomposition(3)?;
    let (tables, malformed) = parse_tables(Q8_TABLES, false)?;
    let typos = known_typos();
    let cosets = Subgroup::standard(SubsetGroupParams::new(4)?)?.cosets()?;
    let mut report = AppendixReport::default();
    let mut used = vec![false; typos.len()];
    let mut accept =
        |family, x, y, row: Option<usize>, report: &mut AppendixReport, what: String| match typos
            .iter()
            .position(|t| t.family == family && t.x == x && t.y == y && t.row == row)
        {
            Some(k) => used[k] = true,
            None => report.mismatches.push(what),
        };

    if tables.len() != 16 {
        report
            .mismatches
            .push(format!("expected 16 tables, found {}", tables.len()));
    }
    for (ti, table) in tables.iter().enumerate() {
        let name = format!("{}_{}{}", table.family, table.x, table.y);
        let Some(idx) = dec
            .cycles
            .iter()
            .position(|c| c.family == table.family && c.x == table.x && c.y == table.y)
        else {
            report.mismatches.push(format!("{name}: no such cycle"));
            continue;
        };
        let coset = dec.cycles[idx].coset;
        if cosets.index_of(table.x) != Some(coset as usize) {
            report
                .mismatches
                .push(format!("{name}: factor start not in coset {coset}"));
        }
        let letter = match table.family {
            Family::Phi => 'e',
            Family::Gamma => 'f',
        };
        if table.letter != letter {
            report
                .mismatches
                .push(format!("{name}: row letter `{}`", table.letter));
        }
        if table.label_coset != coset {
            accept(
                table.family,
                table.x,
                table.y,
                None,
                &mut report,
                format!(
                    "{name}: rows labelled {}{}, cycle is in coset {coset}",
                    table.letter, table.label_coset
                ),
            );
        }
        for m in malformed.iter().filter(|m| m.table == ti) {
            accept(
                table.family,
                table.x,
                table.y,
                Some(m.row),
                &mut report,
                format!("{name} row {}: malformed `{}`", m.row, m.text),
            );
        }
        let expected = table_rows(&dec, idx);
        if table.rows.len() != expected.len() {
            report.mismatches.push(format!(
                "{name}: {} rows, expected {}",
                table.rows.len(),
                expected.len()
            ));
        }
        for (r, (got, want)) in table.rows.iter().zip(&expected).enumerate() {
            if got == want {
                match table.family {
                    Family::Phi => report.phi_rows_matched += 1,
                    Family::Gamma => report.gamma_rows_matched += 1,
                }
            } else {
                report.mismatches.push(format!(
                    "{name} row {}: table {got}, construction {want}",
                    r + 1
                ));
            }
        }
    }
    report.typos_used = typos
        .into_iter()
        .zip(used)
        .filter_map(|(t, u)| u.then_some(t))
        .collect();
    Ok(report)
}

/// The selected edges of all 16 `Q_8` cycles, in table order and in the
/// same text layout as [`Q8_TABLES`].
pub fn render_q8_tables() -> Result<String> {
    let dec = basis_decomposition(3)?;
    let sel = select_matching(&dec);
    debug_assert_eq!(sel.positions.len(), dec.cycles.len());
    let mut out = String::new();
    for (idx, c) in dec.cycles.iter().enumerate() {
        let letter = match c.family {
            Family::Phi => 'e',
            Family::Gamma => 'f',
        };
        out.push_str(&format!(
            "table {} x={} y={} label={letter}{}\n",
            c.family, c.x, c.y, c.coset
        ));
        for (t, e) in table_rows(&dec, idx).iter().enumerate() {
            out.push_str(&format!("  {} {e}\n", t + 1));
        }
    }
    Ok(out)
}
