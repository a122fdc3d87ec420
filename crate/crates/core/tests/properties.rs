mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use pwidth::alternating::{even_pair_factors, odd_cycle_factors, w3_witness};
use pwidth::chartab::CharacterTable;
use pwidth::frobenius::KappaEngine;
use pwidth::group::{ClassData, FiniteGroup};
use pwidth::ingest;
use pwidth::matgrp::GroupSpec;
use pwidth::perm::Permutation;
use pwidth::width::{p_width, Method, Source, WidthOptions};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perm_pair(max: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max).prop_flat_map(|n| (perm(n), perm(n)))
}

fn even_perm(max: usize) -> impl Strategy<Value = Permutation> {
    (2..=max).prop_flat_map(perm).prop_map(|p| {
        if p.is_even() {
            p
        } else {
            let t = Permutation::cycle(p.degree(), &[1, 2]).unwrap();
            p.compose(&t).unwrap()
        }
    })
}

type Loaded = (FiniteGroup, ClassData, CharacterTable);

fn tables() -> &'static [Loaded] {
    static T: OnceLock<Vec<Loaded>> = OnceLock::new();
    T.get_or_init(|| ["an:5", "an:6", "psl:2:7", "psl:2:8", "psl:2:11"].iter().map(|s| common::full(s)).collect())
}

proptest! {
    #[test]
    fn stats_are_conjugation_invariant((g, h) in perm_pair(40)) {
        let c = g.conjugate_by(&h).unwrap();
        prop_assert_eq!(c.cycle_stats(), g.cycle_stats());
        prop_assert_eq!(c.cycle_type(), g.cycle_type());
    }

    #[test]
    fn r_value_identity(g in (1..=100usize).prop_flat_map(perm)) {
        let s = g.cycle_stats();
        let nontrivial = g.cycles().len();
        prop_assert_eq!(s.r_value, g.degree() - g.fix() - nontrivial);
    }

    #[test]
    fn parity_is_a_homomorphism((g, h) in perm_pair(30)) {
        let gh = g.compose(&h).unwrap();
        prop_assert_eq!(gh.is_even(), g.is_even() == h.is_even());
    }

    #[test]
    fn composition_is_left_to_right((g, h) in perm_pair(20)) {
        let gh = g.compose(&h).unwrap();
        for i in 1..=g.degree() {
            prop_assert_eq!(gh.apply(i), h.apply(g.apply(i)));
        }
    }

    #[test]
    fn notation_round_trip(g in (1..=30usize).prop_flat_map(perm), pad in "[ \t]{0,2}") {
        let text = g.to_string().replace(',', &format!(",{pad}")).replace(')', &format!("{pad})"));
        prop_assert_eq!(Permutation::parse(g.degree(), &text).unwrap(), g);
    }

    #[test]
    fn order_three_witnesses(h in even_perm(60)) {
        let w = w3_witness(&h).unwrap();
        prop_assert_eq!(&w.input, &h);
        prop_assert_eq!(w.x.compose(&w.y).unwrap(), h.clone());
        prop_assert!(w.x.pow(3).is_identity() && w.y.pow(3).is_identity());
        prop_assert!(w.x.is_even() && w.y.is_even());
        prop_assert!(w.width() <= 2);
        w.verify().unwrap();
    }

    #[test]
    fn even_pairs_any_placement(l1 in 1..=20usize, l2 in 1..=20usize, extra in 0..6usize, seed in any::<u64>()) {
        let (l1, l2) = (2 * l1, 2 * l2);
        let n = l1 + l2 + extra;
        let mut pts: Vec<usize> = (1..=n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            pts.swap(i, (s >> 33) as usize % (i + 1));
        }
        let w = even_pair_factors(n, &pts[..l1], &pts[l1..l1 + l2]).unwrap();
        w.verify().unwrap();
    }

    #[test]
    fn kappa_is_symmetric(which in 0..5usize, a in 0..64usize, b in 0..64usize, c in 0..64usize, x in 0..64usize) {
        let (_, _, t) = &tables()[which];
        let k = t.len();
        let (a, b, c, x) = (a % k, b % k, c % k, x % k);
        let e = KappaEngine::new(t).unwrap();
        let v = e.kappa(&[a, b, c], x).unwrap().value;
        for order in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            prop_assert_eq!(&e.kappa(&order, x).unwrap().value, &v);
        }
        let sc = e.kappa(&[a, b], x).unwrap();
        prop_assert!(pwidth::frobenius::check_integrality(&sc, t));
    }

    #[test]
    fn truncated_tables_never_panic(which in 0..5usize, cut in 0.0f64..1.0, junk in "[a-z0-9@;,/ ]{0,8}") {
        let text = ingest::serialize(&tables()[which].2);
        let at = (text.len() as f64 * cut) as usize;
        let mut broken = text[..at].to_string();
        broken.push_str(&junk);
        let _ = ingest::parse(&broken);
    }

    #[test]
    fn spec_round_trip(n in 2..8usize, q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9])) {
        for spec in [GroupSpec::sl(n, q), GroupSpec::psl(n, q)] {
            let s = spec.to_string();
            prop_assert_eq!(s.parse::<GroupSpec>().unwrap(), spec);
        }
    }
}

#[test]
fn odd_cycles_use_disjoint_three_cycles() {
    for l in (5..=99).step_by(2) {
        let w = odd_cycle_factors(l).unwrap();
        for f in [&w.x, &w.y] {
            let cycles = f.cycles();
            assert!(cycles.iter().all(|c| c.len() == 3), "l = {l}");
            let moved: usize = cycles.iter().map(Vec::len).sum();
            assert_eq!(moved, f.support().len(), "l = {l}");
        }
        let m = (l - 1) / 2;
        assert_eq!(w.x.support().len(), 3 * m.div_ceil(2));
    }
}

#[test]
fn ingest_round_trips() {
    for (_, _, t) in tables() {
        let text = ingest::serialize(t);
        let back = ingest::parse(&text).unwrap();
        assert_eq!(ingest::serialize(&back), text);
    }
}

/// `S_k ⊆ S_{k+2}`, layers reach every class, and both methods agree.
#[test]
fn layers_and_method_agreement() {
    let cases: &[(&str, &[u64])] = &[
        ("an:5", &[3, 5]),
        ("an:6", &[3, 5]),
        ("an:7", &[3, 5, 7]),
        ("psl:2:7", &[3, 7]),
        ("psl:2:8", &[3, 7]),
        ("psl:2:11", &[3, 5, 11]),
        ("psl:3:3", &[3, 13]),
        ("m11", &[3, 5, 11]),
        ("an:8", &[3, 5, 7]),
        ("sl:4:2", &[3, 5, 7]),
    ];
    for (spec, primes) in cases {
        let (g, data, t) = common::full(spec);
        for &p in *primes {
            let src = Source::both(&g, &data, &t);
            let chars = p_width(src, p, &WidthOptions::new(Method::Characters)).unwrap();
            let counts = p_width(src, p, &WidthOptions::new(Method::Counting)).unwrap();
            assert_eq!(chars.widths(), counts.widths(), "{spec} p = {p}");
            p_width(src, p, &WidthOptions::new(Method::Both)).unwrap();

            assert!(chars.width <= data.len());

            // S_1..S_4 by explicit iteration, past the point where the
            // engine stops.
            let e = KappaEngine::new(&t).unwrap();
            let first = chars.layers[0].clone();
            let mut l = vec![first.clone()];
            for k in 1..4 {
                let mut next: Vec<usize> = Vec::new();
                for &d in &l[k - 1] {
                    for &c in &first {
                        next.extend(e.product_support(d, c).unwrap());
                    }
                }
                next.sort_unstable();
                next.dedup();
                l.push(next);
            }
            for (k, layer) in chars.layers.iter().enumerate() {
                assert_eq!(layer, &l[k], "{spec} p = {p} layer {k}");
            }
            for k in 0..2 {
                assert!(l[k].iter().all(|c| l[k + 2].contains(c)), "{spec} p = {p} layer {k}");
            }
            let union: Vec<usize> = l[..chars.width].concat();
            assert!((1..data.len()).all(|c| union.contains(&c)), "{spec} p = {p}");
        }
    }
}
