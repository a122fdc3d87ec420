//! Text rendering of results. The JSON form is the `serde` serialisation of
//! the same values.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serializer;

use crate::alternating::{AsymptoticThresholds, ThreeFactorWitness};
use crate::matgrp::ArtinEntry;
use crate::verify::{Outcome, Status};
use crate::width::{ElementWidth, Table1Report, WidthCertificate};

pub(crate) fn serialize_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Pretty JSON with a trailing newline.
pub fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report values serialise");
    s.push('\n');
    s
}

pub fn width_text(c: &WidthCertificate) -> String {
    let mut out = String::new();
    writeln!(out, "group {} (order {}), p = {}, method {}", c.group, c.order, c.prime, c.method).unwrap();
    writeln!(out, "width {}", c.width).unwrap();
    let kind = if c.single_class { "single class" } else { "order-p classes" };
    writeln!(out, "{kind}: {}", c.generating_classes.join(", ")).unwrap();
    writeln!(out, "identity width {} by convention", c.identity_width).unwrap();

    let name_w = c.classes.iter().map(|k| k.name.len()).max().unwrap_or(5).max(5);
    let size_w = c.classes.iter().map(|k| k.size.to_string().len()).max().unwrap_or(4).max(4);
    writeln!(out, "{:<name_w$}  {:>size_w$}  {:>5}  {:>5}  chain", "class", "size", "order", "width").unwrap();
    for k in &c.classes {
        writeln!(
            out,
            "{:<name_w$}  {:>size_w$}  {:>5}  {:>5}  {}",
            k.name,
            k.size,
            k.element_order,
            k.width,
            k.chain.join("*")
        )
        .unwrap();
    }
    if c.outside_square.is_empty() {
        writeln!(out, "outside the square: none").unwrap();
    } else {
        writeln!(out, "outside the square: {}", c.outside_square.join(", ")).unwrap();
    }
    let critical: Vec<_> = c.classes.iter().filter(|k| k.width == c.width && c.width > 0).collect();
    if !critical.is_empty() {
        writeln!(out, "certificates:").unwrap();
        for k in critical {
            if let Some(e) = &k.upper {
                writeln!(out, "  {}", e).unwrap();
            }
            for e in &k.lower {
                writeln!(out, "  {}", e).unwrap();
            }
        }
    }
    out
}

pub fn element_text(e: &ElementWidth) -> String {
    let mut out = format!("class {}: width {}\n", e.class, e.width);
    if let Some(w) = &e.witness {
        for f in w {
            writeln!(out, "  {f}").unwrap();
        }
    }
    out
}

pub fn table1_text(r: &Table1Report) -> String {
    let mut out = String::new();
    let list = if r.classes.is_empty() { "none".to_string() } else { r.classes.join(", ") };
    writeln!(out, "{} p = {}: outside the square: {list}", r.group, r.prime).unwrap();
    for e in &r.evidence {
        writeln!(out, "  {e}").unwrap();
    }
    out
}

pub fn witness_text(w: &ThreeFactorWitness) -> String {
    let status = match w.verify() {
        Ok(()) => "verified".to_string(),
        Err(e) => format!("FAILED: {e}"),
    };
    format!("h = {}\nx = {}\ny = {}\nx*y = h: {status}\n", w.input, w.x, w.y)
}

pub fn thresholds_text(t: &AsymptoticThresholds) -> String {
    format!(
        "p = {}\nepsilon = {}\nN1 = {}\nN2 = {}\nboth hold from n = {}\n",
        t.p,
        t.epsilon,
        t.n1,
        t.n2,
        t.start()
    )
}

pub fn artin_text(l: u64, rows: &[ArtinEntry]) -> String {
    let mut out = String::new();
    let ps: Vec<String> = rows.iter().map(|r| r.p.to_string()).collect();
    writeln!(out, "l = {l} is a primitive root modulo: {}", ps.join(", ")).unwrap();
    for r in rows {
        let flag = |b: bool| if b { "enumerable" } else { "over bound" };
        writeln!(
            out,
            "  p = {:<4} {:<10} order {} ({})\n           {:<10} order {} ({})",
            r.p,
            r.sl.to_string(),
            r.sl_order,
            flag(r.sl_enumerable),
            r.sp.to_string(),
            r.sp_order,
            flag(r.sp_enumerable)
        )
        .unwrap();
    }
    out
}

pub fn outcomes_text(outcomes: &[Outcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        writeln!(out, "{o}").unwrap();
    }
    let count = |s| outcomes.iter().filter(|o| o.status == s).count();
    writeln!(
        out,
        "{} passed, {} failed, {} skipped",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped)
    )
    .unwrap();
    out
}
