//! The `.ctbl` text format for character tables.
//!
//! ```text
//! group an:5
//! order 60
//! exponent 30
//! classes 5
//! class 1A size 1 order 1 inv 1 pow 2:1 pow 3:1 pow 5:1
//! class 2A size 15 order 2 inv 2 pow 2:1 pow 3:2 pow 5:2
//! ...
//! irr 1@1;1@1;1@1;1@1;1@1
//! irr 3@1;-1@1;0@1;0,0,-1,-1@5;1,0,1,1@5
//! ...
//! ```
//!
//! Class indices (`inv`, `pow`) are 1-based. Each character value is written
//! as its coefficients `c_0,…,c_{φ(d)-1}` in the power basis of `Q(ζ_d)`
//! followed by `@d`, with `d` the least conductor; coefficients are integers
//! or fractions `a/b`. Lines that are empty or start with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::chartab::{CharacterTable, TableClass};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Writes the canonical text form. Classes are ordered by element order,
/// then size, then name; characters keep their order.
pub fn serialize(t: &CharacterTable) -> String {
    let k = t.len();
    let mut perm: Vec<usize> = (0..k).collect();
    perm.sort_by(|&a, &b| {
        let (ca, cb) = (t.class(a), t.class(b));
        (ca.element_order, &ca.size, &ca.name).cmp(&(cb.element_order, &cb.size, &cb.name))
    });
    let mut pos = vec![0; k];
    for (new, &old) in perm.iter().enumerate() {
        pos[old] = new;
    }

    let mut out = String::new();
    writeln!(out, "group {}", t.name()).unwrap();
    writeln!(out, "order {}", t.order()).unwrap();
    writeln!(out, "exponent {}", t.exponent()).unwrap();
    writeln!(out, "classes {k}").unwrap();
    for &old in &perm {
        let c = t.class(old);
        write!(out, "class {} size {} order {} inv {}", c.name, c.size, c.element_order, pos[c.inverse] + 1).unwrap();
        for (p, &j) in &c.powers {
            write!(out, " pow {p}:{}", pos[j] + 1).unwrap();
        }
        out.push('\n');
    }
    for row in t.characters() {
        let entries: Vec<String> = perm.iter().map(|&old| entry(&row[old])).collect();
        writeln!(out, "irr {}", entries.join(";")).unwrap();
    }
    out
}

fn entry(v: &Cyclotomic) -> String {
    let coeffs: Vec<String> = v.coeffs().iter().map(ToString::to_string).collect();
    format!("{}@{}", coeffs.join(","), v.conductor())
}

/// Parses and validates a table.
pub fn parse(text: &str) -> Result<CharacterTable> {
    let t = parse_unchecked(text)?;
    t.validate()?;
    Ok(t)
}

/// Parses without checking orthogonality or the class equation.
pub fn parse_unchecked(text: &str) -> Result<CharacterTable> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .peekable();
    let end_line = text.lines().count() + 1;

    let mut header = |key: &str| -> Result<(usize, String)> {
        let (n, line) = lines
            .next()
            .ok_or_else(|| syntax(end_line, 1, format!("expected `{key}`, found end of input")))?;
        let rest = line
            .strip_prefix(key)
            .filter(|r| r.starts_with(' '))
            .ok_or_else(|| syntax(n, 1, format!("expected `{key} <value>`")))?;
        Ok((n, rest.trim().to_string()))
    };
    let (_, name) = header("group")?;
    let (n, order) = header("order")?;
    let order: BigUint = order.parse().map_err(|_| syntax(n, 7, "order is not a nonnegative integer"))?;
    let (n, exponent) = header("exponent")?;
    let exponent: u64 = exponent.parse().map_err(|_| syntax(n, 10, "exponent is not an integer"))?;
    let (n, k) = header("classes")?;
    let k: usize = k.parse().map_err(|_| syntax(n, 9, "class count is not an integer"))?;

    let mut classes = Vec::with_capacity(k);
    for _ in 0..k {
        let (n, line) = lines
            .next()
            .ok_or_else(|| syntax(end_line, 1, "expected a `class` line, found end of input"))?;
        classes.push(parse_class(n, line, k)?);
    }
    let mut irr = Vec::with_capacity(k);
    for _ in 0..k {
        let (n, line) = lines
            .next()
            .ok_or_else(|| syntax(end_line, 1, "expected an `irr` line, found end of input"))?;
        irr.push(parse_irr(n, line, k)?);
    }
    if let Some((n, _)) = lines.next() {
        return Err(syntax(n, 1, "unexpected content after the last character"));
    }
    Ok(CharacterTable::new_unchecked(name, order, exponent, classes, irr))
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::TableSyntax { line, column, message: message.into() }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

fn parse_class(n: usize, line: &str, k: usize) -> Result<TableClass> {
    let toks = tokens(line);
    let at = |i: usize| toks.get(i).copied().ok_or_else(|| syntax(n, line.chars().count() + 1, "line ends early"));
    let expect = |i: usize, key: &str| -> Result<()> {
        let (c, t) = at(i)?;
        if t == key {
            Ok(())
        } else {
            Err(syntax(n, c, format!("expected `{key}`, found `{t}`")))
        }
    };
    let index = |c: usize, t: &str| -> Result<usize> {
        match t.parse::<usize>() {
            Ok(j) if (1..=k).contains(&j) => Ok(j - 1),
            _ => Err(syntax(n, c, format!("class index `{t}` is not in 1..={k}"))),
        }
    };
    expect(0, "class")?;
    let (_, name) = at(1)?;
    expect(2, "size")?;
    let (c, size) = at(3)?;
    let size: BigUint = size.parse().map_err(|_| syntax(n, c, "size is not a nonnegative integer"))?;
    expect(4, "order")?;
    let (c, ord) = at(5)?;
    let element_order: u64 = ord.parse().map_err(|_| syntax(n, c, "element order is not an integer"))?;
    expect(6, "inv")?;
    let (c, inv) = at(7)?;
    let inverse = index(c, inv)?;
    let mut powers = BTreeMap::new();
    let mut i = 8;
    while i < toks.len() {
        expect(i, "pow")?;
        let (c, spec) = at(i + 1)?;
        let (p, j) = spec
            .split_once(':')
            .ok_or_else(|| syntax(n, c, "expected `<prime>:<class index>`"))?;
        let p: u64 = p.parse().map_err(|_| syntax(n, c, "prime is not an integer"))?;
        let j = index(c + spec.find(':').unwrap() + 1, j)?;
        if powers.insert(p, j).is_some() {
            return Err(syntax(n, c, format!("duplicate power map for {p}")));
        }
        i += 2;
    }
    Ok(TableClass { name: name.to_string(), size, element_order, inverse, powers })
}

fn parse_irr(n: usize, line: &str, k: usize) -> Result<Vec<Cyclotomic>> {
    let rest = line
        .strip_prefix("irr ")
        .ok_or_else(|| syntax(n, 1, "expected `irr <entries>`"))?;
    let mut col = 5;
    let mut row = Vec::with_capacity(k);
    for part in rest.split(';') {
        row.push(parse_entry(n, col, part)?);
        col += part.chars().count() + 1;
    }
    if row.len() != k {
        return Err(syntax(n, 1, format!("expected {k} entries, found {}", row.len())));
    }
    Ok(row)
}

fn parse_entry(n: usize, col: usize, text: &str) -> Result<Cyclotomic> {
    let (coeffs, d) = text
        .trim()
        .rsplit_once('@')
        .ok_or_else(|| syntax(n, col, format!("entry `{text}` lacks `@<conductor>`")))?;
    let d: u64 = d.parse().map_err(|_| syntax(n, col, "conductor is not an integer"))?;
    let coeffs: Vec<BigRational> = coeffs
        .split(',')
        .map(|c| parse_rational(c.trim()).ok_or_else(|| syntax(n, col, format!("bad coefficient `{c}`"))))
        .collect::<Result<_>>()?;
    Cyclotomic::from_basis(d, coeffs)
        .ok_or_else(|| syntax(n, col, format!("entry `{text}` does not have φ({d}) coefficients")))
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((a, b)) => {
            let a: BigInt = a.parse().ok()?;
            let b: BigInt = b.parse().ok()?;
            (b != BigInt::from(0)).then(|| BigRational::new(a, b))
        }
    }
}

/// Reads and validates a `.ctbl` file.
pub fn read_table(path: &Path) -> Result<CharacterTable> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write_table(path: &Path, t: &CharacterTable) -> Result<()> {
    Ok(std::fs::write(path, serialize(t))?)
}
