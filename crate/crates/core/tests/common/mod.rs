#![allow(dead_code)]

use pwidth::chartab::{dixon_table, CharacterTable};
use pwidth::group::{conjugacy_classes, ClassData, FiniteGroup, DEFAULT_ENUMERATION_BOUND};

pub fn group(spec: &str) -> (FiniteGroup, ClassData) {
    let g = FiniteGroup::from_spec(&spec.parse().unwrap(), DEFAULT_ENUMERATION_BOUND).unwrap();
    let c = conjugacy_classes(&g);
    (g, c)
}

pub fn full(spec: &str) -> (FiniteGroup, ClassData, CharacterTable) {
    let (g, c) = group(spec);
    let t = dixon_table(&g, &c).unwrap();
    (g, c, t)
}

/// All permutations of `0..n` as image vectors, by Heap's algorithm.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    let mut out = vec![a.clone()];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn perm_order(p: &[usize]) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut order = 1u64;
    for s in 0..p.len() {
        let mut len = 0u64;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            order = num_integer::lcm(order, len);
        }
    }
    order
}

pub fn is_even(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        let mut x = s;
        let mut len = 0;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}
