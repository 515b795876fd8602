//! The QCYC text format.
//!
//! ```text
//! qcyc 1
//! n=<n> m=<m> cycles=<count> len=<2^m n>
//! c <index> start=<hex mask> dirs=<d1,d2,...>
//! m <index> pos=<p1,p2,...>
//! ...
//! ```
//!
//! Cycle indices are 1-based. Masks are lowercase hex without a prefix
//! (element `j` is bit `j - 1`). Lines starting with `#` are allowed only
//! before the header and are ignored by the reader.

use std::io::{BufRead, Write};

use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::hypercube::{CycleSpec, Dim, Direction, Vertex};

pub const MAGIC: &str = "qcyc";
pub const VERSION: &str = "1";
pub const UNVERIFIED_MARKER: &str = "# unverified";

pub fn write_decomposition<W: Write>(dec: &Decomposition, sink: &mut W) -> Result<()> {
    write_with_marker(dec, sink, false)
}

/// Writes `dec`, preceded by [`UNVERIFIED_MARKER`] when `unverified` is set.
pub fn write_with_marker<W: Write>(
    dec: &Decomposition,
    sink: &mut W,
    unverified: bool,
) -> Result<()> {
    if dec.cycles.is_empty() {
        return Err(Error::EmptyDecomposition);
    }
    if dec.matching.len() != dec.cycles.len() {
        return Err(Error::BadParameters(format!(
            "{} cycles but {} matching records",
            dec.cycles.len(),
            dec.matching.len()
        )));
    }
    let mut out = std::io::BufWriter::new(sink);
    if unverified {
        writeln!(out, "{UNVERIFIED_MARKER}")?;
    }
    writeln!(out, "{MAGIC} {VERSION}")?;
    writeln!(
        out,
        "n={} m={} cycles={} len={}",
        dec.n,
        dec.m,
        dec.cycles.len(),
        dec.cycle_len()
    )?;
    let mut line = String::new();
    for (i, (c, pos)) in dec.cycles.iter().zip(&dec.matching).enumerate() {
        use std::fmt::Write as _;
        line.clear();
        write!(line, "c {} start={:x} dirs=", i + 1, c.start.mask()).expect("string write");
        join_into(&mut line, c.dirs.iter().map(|d| d.get()));
        writeln!(out, "{line}")?;
        line.clear();
        write!(line, "m {} pos=", i + 1).expect("string write");
        join_into(&mut line, pos.iter().copied());
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(())
}

fn join_into(buf: &mut String, items: impl Iterator<Item = u32>) {
    use std::fmt::Write as _;
    for (k, x) in items.enumerate() {
        if k > 0 {
            buf.push(',');
        }
        write!(buf, "{x}").expect("string write");
    }
}

pub fn to_string(dec: &Decomposition) -> Result<String> {
    let mut buf = Vec::new();
    write_decomposition(dec, &mut buf)?;
    Ok(String::from_utf8(buf).expect("writer emits ASCII"))
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    line_no: usize,
}

impl<R: BufRead> Lines<R> {
    fn next_line(&mut self) -> Result<Option<String>> {
        match self.inner.next() {
            None => Ok(None),
            Some(l) => {
                self.line_no += 1;
                Ok(Some(l?))
            }
        }
    }

    fn expect_line(&mut self, what: &str) -> Result<String> {
        match self.next_line()? {
            Some(l) => Ok(l),
            None => Err(Error::Parse {
                line: self.line_no + 1,
                reason: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    fn err(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line_no,
            reason: reason.into(),
        }
    }
}

fn field<'a>(token: Option<&'a str>, key: &str) -> std::result::Result<&'a str, String> {
    let t = token.ok_or_else(|| format!("missing `{key}=`"))?;
    t.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| format!("expected `{key}=`, found `{t}`"))
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> std::result::Result<T, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{what} `{s}` is not a decimal number"));
    }
    s.parse().map_err(|_| format!("{what} `{s}` out of range"))
}

fn list(s: &str, what: &str) -> std::result::Result<Vec<u32>, String> {
    s.split(',').map(|x| number::<u32>(x, what)).collect()
}

/// Parses a QCYC document and checks its structure (header consistency,
/// record numbering, ranges, lengths). It does not verify the decomposition.
pub fn read_decomposition<R: BufRead>(source: R) -> Result<Decomposition> {
    let mut lines = Lines {
        inner: source.lines(),
        line_no: 0,
    };
    let magic = loop {
        let l = lines.expect_line("header")?;
        if !l.starts_with('#') {
            break l;
        }
    };
    match magic.split_once(' ') {
        Some((MAGIC, VERSION)) => {}
        Some((MAGIC, v)) => return Err(Error::VersionMismatch(v.to_string())),
        _ => return Err(lines.err(format!("expected `{MAGIC} {VERSION}`, found `{magic}`"))),
    }

    let header = lines.expect_line("size line")?;
    let mut tok = header.split(' ');
    let parsed = (|| {
        let n: u32 = number(field(tok.next(), "n")?, "n")?;
        let m: u32 = number(field(tok.next(), "m")?, "m")?;
        let count: usize = number(field(tok.next(), "cycles")?, "cycles")?;
        let len: u64 = number(field(tok.next(), "len")?, "len")?;
        if let Some(extra) = tok.next() {
            return Err(format!("unexpected `{extra}` in size line"));
        }
        Ok((n, m, count, len))
    })();
    let (n, m, count, len) = parsed.map_err(|r| lines.err(r))?;
    let dim = Dim::new(n).map_err(|e| lines.err(e.to_string()))?;
    if m == 0 || m > 16 || u64::from(n) << m != len {
        return Err(lines.err(format!("len={len} is not 2^m * n for n={n}, m={m}")));
    }
    if count == 0 {
        return Err(lines.err("a decomposition needs at least one cycle"));
    }

    let mut cycles = Vec::with_capacity(count.min(1 << 20));
    let mut matching = Vec::with_capacity(count.min(1 << 20));
    for idx in 1..=count {
        let l = lines.expect_line(&format!("cycle record {idx}"))?;
        let c = (|| {
            let mut tok = l.split(' ');
            if tok.next() != Some("c") {
                return Err("expected a `c` record".to_string());
            }
            let got: usize = number(tok.next().unwrap_or(""), "cycle index")?;
            if got != idx {
                return Err(format!("cycle index {got}, expected {idx}"));
            }
            let hex = field(tok.next(), "start")?;
            if hex.is_empty()
                || !hex
                    .bytes()
                    .all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
            {
                return Err(format!("start `{hex}` is not lowercase hex"));
            }
            let mask =
                u64::from_str_radix(hex, 16).map_err(|_| format!("start `{hex}` too large"))?;
            let start = Vertex::from_mask(mask);
            if !dim.contains(start) {
                return Err(format!("start {start} uses elements outside [{n}]"));
            }
            let ds = list(field(tok.next(), "dirs")?, "direction")?;
            if let Some(extra) = tok.next() {
                return Err(format!("unexpected `{extra}`"));
            }
            if ds.len() as u64 != len {
                return Err(format!("{} directions, expected {len}", ds.len()));
            }
            let dirs = ds
                .into_iter()
                .map(|d| Direction::within(d, dim).map_err(|e| e.to_string()))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            Ok(CycleSpec::new(start, dirs))
        })()
        .map_err(|r| lines.err(r))?;
        cycles.push(c);

        let l = lines.expect_line(&format!("matching record {idx}"))?;
        let p = (|| {
            let mut tok = l.split(' ');
            if tok.next() != Some("m") {
                return Err("expected an `m` record".to_string());
            }
            let got: usize = number(tok.next().unwrap_or(""), "matching index")?;
            if got != idx {
                return Err(format!("matching index {got}, expected {idx}"));
            }
            let pos = list(field(tok.next(), "pos")?, "position")?;
            if let Some(extra) = tok.next() {
                return Err(format!("unexpected `{extra}`"));
            }
            if pos.windows(2).any(|w| w[1] <= w[0]) {
                return Err("positions are not strictly ascending".into());
            }
            if pos.iter().any(|&p| p == 0 || u64::from(p) > len) {
                return Err(format!("position outside 1..={len}"));
            }
            Ok(pos)
        })()
        .map_err(|r| lines.err(r))?;
        matching.push(p);
    }
    while let Some(l) = lines.next_line()? {
        if !l.is_empty() {
            return Err(lines.err("trailing data after the last record"));
        }
    }
    Ok(Decomposition {
        n: dim,
        m,
        cycles,
        matching,
    })
}

pub fn from_str(text: &str) -> Result<Decomposition> {
    read_decomposition(text.as_bytes())
}
