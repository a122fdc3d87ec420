//! Dixon's modular method.
//!
//! The central characters `ω_χ(C_m) = |C_m|·χ(g_m)/χ(1)` form a common right
//! eigenvector of all class matrices. We split `F_P^k` into the common
//! eigenlines modulo a prime `P ≡ 1 (mod e)`, read off `χ mod P`, and lift each
//! value `χ(g)` to `Σ_j m_j ζ_o^j` (o the order of g) by a discrete Fourier
//! sum over the powers of `g`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::class_matrix::class_matrices;
use super::modp::{char_poly, kernel, restrict, roots, Mat, Zp};
use super::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{ClassData, FiniteGroup};
use crate::numtheory::{integer_sqrt, is_prime, primitive_root};

const SEED: u64 = 0x5eed_d1c0;
const RANDOM_TRIES: usize = 8;

/// The least prime `P ≡ 1 (mod e)` with `P > 2·√|G|`.
pub fn dixon_prime(order: u64, exponent: u64) -> u64 {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&p) = cache.lock().unwrap().get(&(order, exponent)) {
        return p;
    }
    let mut p = exponent + 1;
    while !(is_prime(p) && (p as u128) * (p as u128) > 4 * order as u128) {
        p += exponent;
    }
    cache.lock().unwrap().insert((order, exponent), p);
    p
}

/// The irreducible characters of `g`, exact, sorted with the trivial
/// character first, then by degree, then by values.
pub fn dixon_table(g: &FiniteGroup, data: &ClassData) -> Result<CharacterTable> {
    let k = data.len();
    let order = g.order();
    let e = data.exponent();
    let p = dixon_prime(order, e);
    let f = Zp { p };

    let mats: Vec<Mat> = class_matrices(g, data)
        .into_iter()
        .map(|cm| Mat { rows: k, cols: k, data: cm.entries.iter().map(|&x| x % p).collect() })
        .collect();

    let lines = split_eigenspaces(&mats, k, f)?;
    if lines.len() != k {
        return Err(Error::CharacterTable(format!(
            "found {} common eigenvectors, expected {k}",
            lines.len()
        )));
    }

    let sizes: Vec<u64> = data.sizes();
    let inverse = data.inverse_map();
    let root = primitive_root(p);
    let z = f.pow(root, (p - 1) / e);

    // Powers of each class representative, as class indices.
    let power_classes: Vec<Vec<usize>> = data
        .classes()
        .iter()
        .map(|c| {
            let o = c.element_order as usize;
            let mut out = Vec::with_capacity(o);
            let mut x = g.identity();
            for _ in 0..o {
                out.push(data.class_of(x));
                x = g.mul(x, c.representative);
            }
            out
        })
        .collect();

    let mut irr: Vec<Vec<Cyclotomic>> = Vec::with_capacity(k);
    for v in lines {
        let inv0 = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, inv0)).collect();
        // |G| / χ(1)² = Σ_m ω_m ω_{m*} / |C_m|.
        let s = (0..k).fold(0, |acc, m| {
            f.add(acc, f.mul(f.mul(w[m], w[inverse[m]]), f.inv(sizes[m] % p)))
        });
        let d2 = f.mul(order % p, f.inv(s));
        let d = (1..=integer_sqrt(order))
            .find(|&d| order.is_multiple_of(d) && f.mul(d % p, d % p) == d2)
            .ok_or_else(|| Error::CharacterTable("no admissible degree".into()))?;
        let theta: Vec<u64> = (0..k)
            .map(|m| f.mul(f.mul(d % p, w[m]), f.inv(sizes[m] % p)))
            .collect();

        let mut row = Vec::with_capacity(k);
        for (m, cls) in power_classes.iter().enumerate() {
            let o = cls.len() as u64;
            let zo = f.pow(z, e / o);
            let zo_inv = f.inv(zo);
            let o_inv = f.inv(o % p);
            let mut terms = Vec::new();
            let mut total = 0u64;
            for j in 0..o {
                let step = f.pow(zo_inv, j);
                let mut acc = 0u64;
                let mut zl = 1u64;
                for &c in cls {
                    acc = f.add(acc, f.mul(theta[c], zl));
                    zl = f.mul(zl, step);
                }
                let mj = f.mul(acc, o_inv);
                if mj > d {
                    return Err(Error::CharacterTable(format!(
                        "eigenvalue multiplicity {mj} exceeds the degree {d} on class {}",
                        data.class(m).name
                    )));
                }
                total += mj;
                if mj != 0 {
                    terms.push((j, BigRational::from_integer(BigInt::from(mj))));
                }
            }
            if total != d {
                return Err(Error::CharacterTable(format!(
                    "multiplicities sum to {total}, expected the degree {d}"
                )));
            }
            row.push(Cyclotomic::from_powers(o, terms));
        }
        irr.push(row);
    }

    irr.sort_by(|a, b| {
        let trivial = |r: &Vec<Cyclotomic>| r.iter().all(|v| *v == Cyclotomic::one());
        trivial(b)
            .cmp(&trivial(a))
            .then_with(|| super::as_u64(&a[0]).cmp(&super::as_u64(&b[0])))
            .then_with(|| a.cmp(b))
    });
    Ok(CharacterTable::from_class_data(g.name(), data, irr))
}

/// Splits `F_P^k` into the one-dimensional common eigenspaces of `mats`.
fn split_eigenspaces(mats: &[Mat], k: usize, f: Zp) -> Result<Vec<Vec<u64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pending: Vec<Mat> = vec![Mat::identity(k)];
    let mut done: Vec<Vec<u64>> = Vec::new();
    while let Some(basis) = pending.pop() {
        if basis.cols == 1 {
            done.push(basis.columns().remove(0));
            continue;
        }
        let mut split = None;
        let attempts = RANDOM_TRIES + mats.len();
        for attempt in 0..attempts {
            let a = if attempt < RANDOM_TRIES {
                let mut a = Mat::zeros(k, k);
                for m in mats {
                    let c = rng.random_range(0..f.p);
                    for (x, &y) in a.data.iter_mut().zip(&m.data) {
                        *x = f.add(*x, f.mul(c, y));
                    }
                }
                a
            } else {
                mats[attempt - RANDOM_TRIES].clone()
            };
            let r = restrict(&a, &basis, f);
            let eigenvalues = roots(&char_poly(&r, f), f);
            if eigenvalues.len() < 2 {
                continue;
            }
            let full = basis.columns();
            let mut pieces = Vec::new();
            let mut dim = 0;
            for lambda in eigenvalues {
                let mut shifted = r.clone();
                for i in 0..r.rows {
                    let v = f.sub(shifted.get(i, i), lambda);
                    shifted.set(i, i, v);
                }
                let ker = kernel(&shifted, f);
                dim += ker.len();
                let cols: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| {
                        (0..k)
                            .map(|row| {
                                c.iter()
                                    .enumerate()
                                    .fold(0, |s, (t, &ct)| f.add(s, f.mul(full[t][row], ct)))
                            })
                            .collect()
                    })
                    .collect();
                pieces.push(Mat::from_columns(k, &cols));
            }
            if dim != basis.cols {
                return Err(Error::CharacterTable(
                    "class algebra is not split semisimple modulo the chosen prime".into(),
                ));
            }
            split = Some(pieces);
            break;
        }
        match split {
            Some(pieces) => {
                // Keep processing order deterministic: last piece popped first.
                pending.extend(pieces);
            }
            None => {
                return Err(Error::CharacterTable(format!(
                    "could not split a {}-dimensional eigenspace",
                    basis.cols
                )))
            }
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugacy_classes, DEFAULT_ENUMERATION_BOUND};

    fn table(spec: &str) -> CharacterTable {
        let g = FiniteGroup::from_spec(&spec.parse().unwrap(), DEFAULT_ENUMERATION_BOUND).unwrap();
        let c = conjugacy_classes(&g);
        dixon_table(&g, &c).unwrap()
    }

    #[test]
    fn primes() {
        assert_eq!(dixon_prime(126000, 840), 2521);
        assert_eq!(dixon_prime(95040, 1320), 1321);
        assert_eq!(dixon_prime(60, 30), 31);
    }

    #[test]
    fn a5_degrees() {
        let t = table("an:5");
        let d: Vec<u64> = t.degrees().iter().map(|d| d.try_into().unwrap()).collect();
        assert_eq!(d, [1, 3, 3, 4, 5]);
        t.validate().unwrap();
        // The two 3-dimensional characters take the golden-ratio values on 5A.
        let v = t.value(1, 3);
        assert_eq!(v.conductor(), 5);
    }

    #[test]
    fn cyclic_three() {
        let t = table("cyclic:3");
        assert_eq!(t.len(), 3);
        t.validate().unwrap();
        let z3 = Cyclotomic::zeta(3);
        let row = |i: usize| t.characters()[i].clone();
        assert_eq!(row(0), vec![Cyclotomic::one(); 3]);
        let others = [row(1), row(2)];
        assert!(others.iter().any(|r| r[1] == z3 || r[2] == z3));
    }

    #[test]
    fn psl28() {
        let t = table("psl:2:8");
        assert_eq!(t.len(), 9);
        t.validate().unwrap();
    }
}
