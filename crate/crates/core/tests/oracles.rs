//! Library results against independent recomputations.

mod common;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_perms, full, group, is_even, perm_order};
use pwidth::cyclotomic::Cyclotomic;
use pwidth::frobenius::{count_oracle, kappa};
use pwidth::group::{order_p_classes, ClassData, FiniteGroup};
use pwidth::matgrp::{artin_scan, GroupSpec};
use pwidth::perm::CycleType;

fn order_distribution(data: &ClassData) -> BTreeMap<u64, u64> {
    let mut d = BTreeMap::new();
    for c in data.classes() {
        *d.entry(c.element_order).or_insert(0) += c.members.len() as u64;
    }
    d
}

#[test]
fn alternating_order_distributions() {
    for n in [5, 6, 7] {
        let mut brute = BTreeMap::new();
        for p in all_perms(n).iter().filter(|p| is_even(p)) {
            *brute.entry(perm_order(p)).or_insert(0) += 1;
        }
        let (_, data) = group(&format!("an:{n}"));
        assert_eq!(order_distribution(&data), brute, "A{n}");
    }
}

#[test]
fn psl27_order_distribution() {
    // Orders in PSL2(7) from 2x2 matrices mod 7 of determinant 1, up to sign.
    let q = 7i64;
    let mul = |a: [i64; 4], b: [i64; 4]| {
        [
            (a[0] * b[0] + a[1] * b[2]) % q,
            (a[0] * b[1] + a[1] * b[3]) % q,
            (a[2] * b[0] + a[3] * b[2]) % q,
            (a[2] * b[1] + a[3] * b[3]) % q,
        ]
    };
    let mut brute = BTreeMap::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if (a * d - b * c).rem_euclid(q) != 1 {
                        continue;
                    }
                    let m = [a, b, c, d];
                    let mut x = m;
                    let mut k = 1u64;
                    while x != [1, 0, 0, 1] && x != [q - 1, 0, 0, q - 1] {
                        x = mul(x, m);
                        k += 1;
                    }
                    *brute.entry(k).or_insert(0u64) += 1;
                }
            }
        }
    }
    for v in brute.values_mut() {
        *v /= 2;
    }
    let (_, data) = group("psl:2:7");
    assert_eq!(order_distribution(&data), brute);
}

#[test]
fn alternating_class_sizes_from_cycle_types() {
    for n in 5..=8usize {
        let fact: u64 = (1..=n as u64).product();
        let mut expected = Vec::new();
        for t in CycleType::all(n).into_iter().filter(CycleType::is_even) {
            let mut z = 1u64;
            let mut counts = BTreeMap::new();
            for &p in t.parts() {
                *counts.entry(p).or_insert(0u64) += 1;
            }
            counts.insert(1, t.fixed_points() as u64);
            for (&len, &m) in &counts {
                z *= (len as u64).pow(m as u32) * (1..=m).product::<u64>();
            }
            let size = fact / z;
            if t.splits_in_alternating() {
                expected.extend([size / 2, size / 2]);
            } else {
                expected.push(size);
            }
        }
        expected.sort_unstable();
        let (_, data) = group(&format!("an:{n}"));
        let mut sizes = data.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, expected, "A{n}");
    }
}

#[test]
fn class_data_examples() {
    let (_, a5) = group("an:5");
    let mut sizes = a5.sizes();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
    assert_eq!(order_p_classes(&a5, 5).len(), 2);
    assert!(order_p_classes(&a5, 5).iter().all(|&c| a5.size(c) == 12));
    assert_eq!(order_p_classes(&a5, 2).iter().map(|&c| a5.size(c)).collect::<Vec<_>>(), vec![15]);
    assert!(order_p_classes(&a5, 7).is_empty());

    let (_, l28) = group("psl:2:8");
    assert_eq!(l28.len(), 9);
    assert_eq!(order_p_classes(&l28, 3).len(), 1);

    let (_, sl42) = group("sl:4:2");
    assert_eq!(order_p_classes(&sl42, 5).len(), 1);
}

#[test]
fn class_equation_and_power_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in ["an:6", "psl:2:11", "psl:3:3", "m11", "sl:4:2", "sz8"] {
        let (g, data) = group(spec);
        let total: u64 = data.sizes().iter().sum();
        assert_eq!(total, g.order(), "{spec}");
        assert!(data.sizes().iter().all(|s| g.order() % s == 0), "{spec}");
        for (i, c) in data.classes().iter().enumerate() {
            assert_eq!(data.inverse_class(data.inverse_class(i)), i);
            for _ in 0..100 {
                let x = c.members[rng.random_range(0..c.members.len())];
                for (&p, map) in data.power_maps() {
                    assert_eq!(map[i], data.class_of(g.pow(x, p)), "{spec} class {} prime {p}", c.name);
                }
                assert_eq!(data.inverse_class(i), data.class_of(g.inverse(x)));
            }
        }
    }
}

fn biguint_product(range: impl Iterator<Item = BigUint>) -> BigUint {
    range.fold(BigUint::one(), |a, b| a * b)
}

#[test]
fn classical_orders_by_formula() {
    let big = BigUint::from;
    // |SL_n(q)| = q^{n(n-1)/2} prod_{i=2..n} (q^i - 1)
    let sl42 = big(2u32).pow(6) * biguint_product((2..=4u32).map(|i| big(2u32).pow(i) - 1u32));
    let (g, _) = group("sl:4:2");
    assert_eq!(BigUint::from(g.order()), sl42);
    assert_eq!(g.order(), 20160);

    let (g, _) = group("sp:2:3");
    assert_eq!(g.order(), 24);

    // |SU_3(q)| = q^3 (q^2 - 1)(q^3 + 1)
    let q = 5u64;
    let su = q.pow(3) * (q * q - 1) * (q.pow(3) + 1);
    let (g, _) = group("su:3:5");
    assert_eq!(g.order(), su);
    assert_eq!(su, 378000);
    let quotient = FiniteGroup::from_spec(&"psu:3:5".parse().unwrap(), 20_000_000).unwrap();
    assert_eq!(quotient.order() * 3, su);
    assert_eq!(g.center().len(), 3);

    let (g, _) = group("psl:2:5");
    assert_eq!(g.order(), 60);
    let (g, _) = group("psl:4:2");
    assert_eq!(g.order(), 20160);
}

/// `fix(g) - 1` is an irreducible character of `A_n` for `n >= 4`.
#[test]
fn standard_character_is_a_row() {
    for n in [5usize, 6, 7] {
        let (g, data, t) = full(&format!("an:{n}"));
        let standard: Vec<Cyclotomic> = (0..data.len())
            .map(|i| {
                let fix = g.permutation(data.class(i).representative).unwrap().fix();
                Cyclotomic::from_integer(fix as i64 - 1)
            })
            .collect();
        assert!(t.characters().contains(&standard), "A{n}");
        assert_eq!(t.len(), data.len());
        let sum: BigUint = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum, BigUint::from(g.order()));
    }
}

/// Multiplicities of the eigenvalues of `g` in each representation are
/// nonnegative integers summing to the degree.
#[test]
fn restrictions_to_cyclic_subgroups() {
    for spec in ["an:5", "psl:2:8", "psl:2:7"] {
        let (g, data, t) = full(spec);
        for c in 0..data.len() {
            let x = data.class(c).representative;
            let o = g.element_order(x);
            let powers: Vec<usize> = (0..o).map(|k| data.class_of(g.pow(x, k))).collect();
            for chi in 0..t.len() {
                let mut total = BigRational::zero();
                for j in 0..o {
                    let mut s = Cyclotomic::zero();
                    for (k, &cls) in powers.iter().enumerate() {
                        let root = Cyclotomic::zeta(o).pow(((o - j) * k as u64 % o) as u32);
                        s = &s + &(t.value(chi, cls) * &root);
                    }
                    let m = s.to_rational().expect("multiplicity is rational")
                        / BigRational::from_integer(BigInt::from(o));
                    assert!(m.is_integer() && m >= BigRational::zero(), "{spec} chi {chi} class {c}");
                    total += m;
                }
                assert_eq!(total, BigRational::from_integer(BigInt::from(t.degree(chi))));
            }
        }
    }
}

#[test]
fn orthogonality_and_integrality_of_small_tables() {
    for spec in ["an:5", "an:6", "psl:2:7", "psl:2:8", "psl:3:3"] {
        let (_, _, t) = full(spec);
        t.validate().unwrap();
    }
}

#[test]
fn psl28_square_of_order_three_class_misses_involutions() {
    let (g, data, t) = full("psl:2:8");
    let three = order_p_classes(&data, 3)[0];
    let two = order_p_classes(&data, 2)[0];
    assert!(kappa(&t, &[three, three], two).unwrap().is_zero());
    // Raw count over group elements, not classes.
    let z = data.class(two).representative;
    let raw = data.class(three)
        .members
        .iter()
        .filter(|&&x| g.element_order(g.mul(g.inverse(x), z)) == 3)
        .count();
    assert_eq!(raw, 0);
    assert_eq!(count_oracle(&g, &data, three, three, two, u64::MAX).unwrap(), 0);
}

#[test]
fn artin_scans() {
    let ps = |l, m| artin_scan(l, m, 20_000_000).unwrap().iter().map(|e| e.p).collect::<Vec<_>>();
    assert_eq!(ps(2, 20), vec![3, 5, 11, 13, 19]);
    assert_eq!(ps(3, 10), vec![5, 7]);
    assert!(artin_scan(4, 50, 1).is_err());
    let rows = artin_scan(2, 5, 20_000_000).unwrap();
    assert_eq!(rows[1].sl, GroupSpec::sl(4, 2));
    assert!(rows[1].sl_enumerable && rows[1].sp_enumerable);
}
