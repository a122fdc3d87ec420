//! Regenerates `data/sz8.gens`: permutation generators of Sz(8) acting on the
//! 65 points of the Tits ovoid in PG(3, 8).
//!
//! The ovoid is `{(1, x, y, xy + x^(σ+2) + y^σ)} ∪ {(0, 0, 0, 1)}` with
//! `σ: x ↦ x^4`. Its stabilizer in PGL_4(8) is Sz(8). We collect the
//! unitriangular, diagonal and monomial matrices that preserve it, convert
//! them to permutations of the ovoid, keep a small generating subset and
//! check the order and class count before writing the file.
//!
//! Run with `cargo run --release --example suzuki_generators [output-path]`.

use std::collections::HashMap;

use pwidth::group::{conjugacy_classes, FiniteGroup, DEFAULT_ENUMERATION_BOUND};
use pwidth::matgrp::FiniteField;
use pwidth::perm::Permutation;

type Point = [u8; 4];

fn normalize(f: &FiniteField, v: Point) -> Option<Point> {
    let lead = v.iter().copied().find(|&x| x != 0)?;
    let inv = f.inv(lead);
    Some(v.map(|x| f.mul(x, inv)))
}

fn apply(f: &FiniteField, v: &Point, m: &[u8; 16]) -> Point {
    let mut out = [0u8; 4];
    for (j, o) in out.iter_mut().enumerate() {
        for i in 0..4 {
            *o = f.add(*o, f.mul(v[i], m[i * 4 + j]));
        }
    }
    out
}

fn main() {
    let out_path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/sz8.gens").to_string());
    let f = FiniteField::new(8).unwrap();
    let sigma = |x: u8| f.pow(x, 4);

    let mut points: Vec<Point> = Vec::new();
    for x in f.elements() {
        for y in f.elements() {
            let z = f.add(f.add(f.mul(x, y), f.pow(x, 6)), sigma(y));
            points.push([1, x, y, z]);
        }
    }
    points.push([0, 0, 0, 1]);
    let position: HashMap<Point, usize> = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();

    let as_perm = |m: &[u8; 16]| -> Option<Permutation> {
        let mut images = Vec::with_capacity(points.len());
        for p in &points {
            let img = normalize(&f, apply(&f, p, m))?;
            images.push(*position.get(&img)?);
        }
        Permutation::from_images(images).ok()
    };

    let mut found: Vec<Permutation> = Vec::new();
    let mut push = |p: Permutation| {
        if !p.is_identity() && !found.contains(&p) {
            found.push(p);
        }
    };

    // Unitriangular matrices, upper and lower.
    let upper = [1usize, 2, 3, 6, 7, 11];
    let lower = [4usize, 8, 9, 12, 13, 14];
    for slots in [upper, lower] {
        for code in 0..8u32.pow(6) {
            let mut m = [0u8; 16];
            for i in 0..4 {
                m[i * 4 + i] = 1;
            }
            for (k, &s) in slots.iter().enumerate() {
                m[s] = ((code >> (3 * k)) & 7) as u8;
            }
            if let Some(p) = as_perm(&m) {
                push(p);
            }
        }
    }

    // Monomial matrices (diagonal ones included), up to scalars.
    let perms4 = all_perms4();
    for sigma_pos in &perms4 {
        for code in 0..7u32.pow(3) {
            let mut m = [0u8; 16];
            let diag = [1u8, (code % 7 + 1) as u8, (code / 7 % 7 + 1) as u8, (code / 49 + 1) as u8];
            for i in 0..4 {
                m[i * 4 + sigma_pos[i]] = diag[i];
            }
            if let Some(p) = as_perm(&m) {
                push(p);
            }
        }
    }
    println!("{} ovoid-preserving permutations found", found.len());

    // Greedy generating subset.
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order = 1;
    for p in &found {
        let mut trial = gens.clone();
        trial.push(p.clone());
        let g = FiniteGroup::from_permutations("sz8", 65, &trial, DEFAULT_ENUMERATION_BOUND).unwrap();
        if g.order() > order {
            order = g.order();
            gens = trial;
        }
        if order == 29120 {
            break;
        }
    }
    assert_eq!(order, 29120, "the ovoid stabilizer should be Sz(8)");
    // Drop generators that are not needed.
    let mut k = 0;
    while k < gens.len() {
        let mut trial = gens.clone();
        trial.remove(k);
        let g = FiniteGroup::from_permutations("sz8", 65, &trial, DEFAULT_ENUMERATION_BOUND).unwrap();
        if g.order() == 29120 {
            gens = trial;
        } else {
            k += 1;
        }
    }
    let g = FiniteGroup::from_permutations("sz8", 65, &gens, DEFAULT_ENUMERATION_BOUND).unwrap();
    let classes = conjugacy_classes(&g);
    assert_eq!(classes.len(), 11);

    let mut text = String::from("# Suzuki group Sz(8) acting on the 65 points of the Tits ovoid in PG(3,8)\n");
    text.push_str("# generated by examples/suzuki_generators.rs\n");
    text.push_str("degree 65\n");
    for p in &gens {
        text.push_str(&p.to_string());
        text.push('\n');
    }
    std::fs::write(&out_path, text).unwrap();
    println!("order {}, {} classes, {} generators written to {out_path}", g.order(), classes.len(), gens.len());
}

fn all_perms4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}
