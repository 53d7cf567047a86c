//! Text formats for matroids and bad-family certificates.
//!
//! A matroid file:
//!
//! ```text
//! matroid v1
//! label U2,4
//! elements 4
//! rank 2
//! ranks
//! 0 1 1 2 1 2 2 2 1 2 2 2 2 2 2 2
//! layout
//! left=0,1
//! ```
//!
//! Masks are little-endian by element index: bit `i` of a mask stands for
//! element `i`, and the `ranks` body lists `r(X)` for `X = 0, 1, .., 2^m - 1`.
//! Instead of `ranks` the body may be `circuits` (one non-spanning circuit
//! per line, the rank taken from the `rank` line), `matrix p=<prime>` (one
//! row of residues per line) or `transversal` (one set of the family per
//! line). Element lists are comma separated; `-` is the empty set. Lines
//! starting with `#` are comments.

use std::fmt::Write as _;

use crate::catalog::{from_matrix, transversal, MatrixGFp, SetSystem};
use crate::engine::{BadFamilyCertificate, Family};
use crate::error::{MatroidError, Result};
use crate::layout::PartLayout;
use crate::mask::{parse_element_list, SubsetMask};
use crate::matroid::{matroid_from_circuits, Matroid};

pub const MATROID_HEADER: &str = "matroid v1";
pub const CERTIFICATE_HEADER: &str = "kinser-certificate v1";

fn parse_err(line: usize, msg: impl Into<String>) -> MatroidError {
    MatroidError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn list_string(x: SubsetMask) -> String {
    if x.is_empty() {
        "-".to_string()
    } else {
        x.to_string()
    }
}

fn parse_list(line: usize, s: &str) -> Result<SubsetMask> {
    parse_element_list(s).map_err(|e| parse_err(line, e))
}

fn parse_num<T: std::str::FromStr>(line: usize, what: &str, s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{s}`")))
}

pub fn write_matroid(m: &Matroid) -> String {
    let mut out = String::new();
    out.push_str("# masks are little-endian: bit i is element i\n");
    out.push_str(MATROID_HEADER);
    out.push('\n');
    let _ = writeln!(out, "label {}", m.label());
    let _ = writeln!(out, "elements {}", m.ground_size());
    let _ = writeln!(out, "rank {}", m.rank());
    out.push_str("ranks\n");
    for chunk in m.table().chunks(32) {
        let row: Vec<String> = chunk.iter().map(u8::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(layout) = m.layout() {
        out.push_str("layout\n");
        for (name, mask) in layout.iter() {
            let _ = writeln!(out, "{name}={}", list_string(mask));
        }
    }
    out
}

enum Body {
    Ranks,
    Circuits,
    Matrix(u32),
    Transversal,
}

/// Parses and validates a matroid file.
pub fn parse_matroid(text: &str) -> Result<Matroid> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, MATROID_HEADER)) => {}
        Some((n, other)) => return Err(parse_err(n, format!("expected `{MATROID_HEADER}`, got `{other}`"))),
        None => return Err(parse_err(0, "empty matroid file")),
    }
    let mut label = None;
    let mut elements: Option<usize> = None;
    let mut rank: Option<usize> = None;
    let mut body: Option<(usize, Body)> = None;
    let mut body_lines: Vec<(usize, &str)> = Vec::new();
    let mut layout = PartLayout::new();
    let mut has_layout = false;
    let mut in_layout = false;

    for (n, line) in lines {
        if in_layout || (body.is_some() && line.contains('=') && !line.starts_with("matrix")) {
            if line == "layout" {
                continue;
            }
            let (name, list) = line
                .split_once('=')
                .ok_or_else(|| parse_err(n, "layout lines must read `name=list`"))?;
            layout.insert(name.trim(), parse_list(n, list)?);
            has_layout = true;
            in_layout = true;
            continue;
        }
        if body.is_some() {
            if line == "layout" {
                in_layout = true;
            } else {
                body_lines.push((n, line));
            }
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "label" => label = Some(rest.to_string()),
            "elements" => elements = Some(parse_num(n, "element count", rest)?),
            "rank" => rank = Some(parse_num(n, "rank", rest)?),
            "ranks" => body = Some((n, Body::Ranks)),
            "circuits" => body = Some((n, Body::Circuits)),
            "transversal" => body = Some((n, Body::Transversal)),
            "matrix" => {
                let p = rest
                    .strip_prefix("p=")
                    .ok_or_else(|| parse_err(n, "matrix body needs `p=<prime>`"))?;
                body = Some((n, Body::Matrix(parse_num(n, "modulus", p)?)));
            }
            other => return Err(parse_err(n, format!("unknown section `{other}`"))),
        }
    }

    let m = elements.ok_or_else(|| parse_err(0, "missing `elements` line"))?;
    let r = rank.ok_or_else(|| parse_err(0, "missing `rank` line"))?;
    let (body_line, body) = body.ok_or_else(|| parse_err(0, "missing body section"))?;
    let matroid = match body {
        Body::Ranks => {
            let mut table = Vec::new();
            for (n, line) in &body_lines {
                for tok in line.split_whitespace() {
                    table.push(parse_num::<u8>(*n, "rank value", tok)?);
                }
            }
            Matroid::from_table(m, table, "file")?
        }
        Body::Circuits => {
            let circuits = body_lines
                .iter()
                .map(|(n, l)| parse_list(*n, l))
                .collect::<Result<Vec<_>>>()?;
            matroid_from_circuits(m, r, &circuits, "file")?
        }
        Body::Matrix(p) => {
            let rows = body_lines
                .iter()
                .map(|(n, l)| {
                    l.split_whitespace()
                        .map(|t| parse_num::<u32>(*n, "matrix entry", t))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let a = MatrixGFp::from_rows(p, &rows)?;
            if a.cols() != m {
                return Err(parse_err(
                    body_line,
                    format!("matrix has {} columns but the file declares {m} elements", a.cols()),
                ));
            }
            from_matrix(&a)?
        }
        Body::Transversal => {
            let family = body_lines
                .iter()
                .map(|(n, l)| parse_list(*n, l))
                .collect::<Result<Vec<_>>>()?;
            transversal(&SetSystem::new(m, family)?)?
        }
    };
    if matroid.rank() != r {
        return Err(parse_err(
            body_line,
            format!("body has rank {} but the file declares rank {r}", matroid.rank()),
        ));
    }
    if has_layout {
        for (name, mask) in layout.iter() {
            matroid
                .check_mask(mask)
                .map_err(|e| parse_err(0, format!("layout part `{name}`: {e}")))?;
        }
    }
    let label = label.unwrap_or_else(|| "file".to_string());
    Ok(matroid
        .with_label(label)
        .with_layout(has_layout.then_some(layout)))
}

pub fn write_certificate(cert: &BadFamilyCertificate) -> String {
    let mut out = String::new();
    out.push_str(CERTIFICATE_HEADER);
    out.push('\n');
    let _ = writeln!(out, "matroid {} {}", cert.label, cert.fingerprint);
    let _ = writeln!(out, "n {}", cert.family.n());
    for (i, x) in cert.family.sets().iter().enumerate() {
        let _ = writeln!(out, "X{} {}", i + 1, list_string(*x));
    }
    let _ = writeln!(out, "lhs {}", cert.lhs);
    let _ = writeln!(out, "rhs {}", cert.rhs);
    out
}

/// Parses a certificate without checking it against any matroid.
pub fn parse_certificate(text: &str) -> Result<BadFamilyCertificate> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let mut it = lines.iter().copied();
    let mut next = |what: &str| {
        it.next()
            .ok_or_else(|| parse_err(0, format!("certificate ends before `{what}`")))
    };
    let (n0, header) = next("header")?;
    if header != CERTIFICATE_HEADER {
        return Err(parse_err(n0, format!("expected `{CERTIFICATE_HEADER}`")));
    }
    let field = |(n, line): (usize, &str), key: &str| -> Result<String> {
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(' '))
            .map(|rest| rest.trim().to_string())
            .ok_or_else(|| parse_err(n, format!("expected `{key} ...`")))
    };
    let matroid_line = next("matroid")?;
    let m = field(matroid_line, "matroid")?;
    let (label, fingerprint) = m
        .rsplit_once(' ')
        .ok_or_else(|| parse_err(matroid_line.0, "expected `matroid <label> <fingerprint>`"))?;
    let n_line = next("n")?;
    let n: usize = parse_num(n_line.0, "n", &field(n_line, "n")?)?;
    let mut sets = Vec::with_capacity(n);
    for i in 1..=n {
        let l = next("X")?;
        sets.push(parse_list(l.0, &field(l, &format!("X{i}"))?)?);
    }
    let l = next("lhs")?;
    let lhs = parse_num(l.0, "lhs", &field(l, "lhs")?)?;
    let l = next("rhs")?;
    let rhs = parse_num(l.0, "rhs", &field(l, "rhs")?)?;
    if let Some((n, extra)) = it.next() {
        return Err(parse_err(n, format!("unexpected trailing line `{extra}`")));
    }
    Ok(BadFamilyCertificate {
        label: label.trim().to_string(),
        fingerprint: fingerprint.to_string(),
        family: Family::new(sets)?,
        lhs,
        rhs,
    })
}

/// Parses a certificate and re-evaluates it against `m`.
pub fn load_certificate(text: &str, m: &Matroid) -> Result<BadFamilyCertificate> {
    let cert = parse_certificate(text)?;
    cert.verify(m)?;
    Ok(cert)
}
