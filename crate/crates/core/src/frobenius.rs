//! Normalised class structure constants and class-product membership.
//!
//! For classes `C_1, …, C_k` and a target class containing `z`,
//!
//! ```text
//! κ(C_1, …, C_k → z^G) = Σ_χ χ(g_1)⋯χ(g_k)·χ(z⁻¹) / χ(1)^(k-1)
//! ```
//!
//! and `z ∈ C_1⋯C_k` iff `κ ≠ 0`. The number of tuples `(x_1, …, x_k)` with
//! `x_i ∈ C_i` and `x_1⋯x_k = z` is `κ·|C_1|⋯|C_k| / |G|`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::chartab::{CharacterTable, IntTable};
use crate::cyclotomic::ProductSum;
use crate::error::{Error, Result};
use crate::group::{ClassData, FiniteGroup};

/// An exact value of `κ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub classes: Vec<usize>,
    pub target: usize,
    pub value: BigRational,
}

impl StructureConstant {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `κ·|C_1|⋯|C_k| / |G|`, the number of factorisations of a fixed target
    /// element.
    pub fn solution_count(&self, table: &CharacterTable) -> BigRational {
        let mut num = BigInt::from(1);
        for &c in &self.classes {
            num *= BigInt::from(table.class(c).size.clone());
        }
        &self.value * BigRational::new(num, BigInt::from(table.order().clone()))
    }

    /// Certificate line, e.g. `kappa(3A,3A -> 2A) = 0`.
    pub fn display(&self, table: &CharacterTable) -> String {
        let names: Vec<&str> = self.classes.iter().map(|&c| table.class(c).name.as_str()).collect();
        format!(
            "kappa({} -> {}) = {}",
            names.join(","),
            table.class(self.target).name,
            self.value
        )
    }
}

/// Evaluates `κ` repeatedly against one table. Entries are converted to
/// sparse integer form once.
pub struct KappaEngine<'a> {
    table: &'a CharacterTable,
    ints: IntTable,
    degrees: Vec<BigInt>,
}

impl<'a> KappaEngine<'a> {
    pub fn new(table: &'a CharacterTable) -> Result<Self> {
        let ints = IntTable::new(table)?;
        let degrees = table.degrees().into_iter().map(BigInt::from).collect();
        Ok(KappaEngine { table, ints, degrees })
    }

    pub fn table(&self) -> &CharacterTable {
        self.table
    }

    pub fn kappa(&self, classes: &[usize], target: usize) -> Result<StructureConstant> {
        let k = self.table.len();
        if classes.is_empty() {
            return Err(Error::InvalidArgument("kappa needs at least one class".into()));
        }
        for &c in classes.iter().chain(std::iter::once(&target)) {
            if c >= k {
                return Err(Error::ClassOutOfRange(c + 1));
            }
        }
        let inv_target = self.table.class(target).inverse;
        let mut cols: Vec<usize> = classes.to_vec();
        cols.push(inv_target);

        let mut n = 1u64;
        for chi in 0..k {
            for &c in &cols {
                n = n.lcm(&self.ints.cond[chi][c]);
            }
        }
        let power = (classes.len() - 1) as u32;
        let denoms: Vec<BigInt> = self.degrees.iter().map(|d| num_traits::pow(d.clone(), power as usize)).collect();
        let l = denoms.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));

        let mut sum = ProductSum::new(n);
        for chi in 0..k {
            let factors: Vec<Vec<(u32, i128)>> =
                cols.iter().map(|&c| self.ints.scaled(chi, c, n, false)).collect();
            if factors.iter().any(Vec::is_empty) {
                continue;
            }
            let refs: Vec<&[(u32, i128)]> = factors.iter().map(Vec::as_slice).collect();
            sum.add_product(&(&l / &denoms[chi]), &refs);
        }
        let total = sum.finish();
        let c = total.to_rational().ok_or(Error::NonRational(total.conductor()))?;
        Ok(StructureConstant {
            classes: classes.to_vec(),
            target,
            value: c / BigRational::from_integer(l),
        })
    }

    /// `{X : κ(C_1, C_2 → X) ≠ 0}`.
    pub fn product_support(&self, c1: usize, c2: usize) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for x in 0..self.table.len() {
            if !self.kappa(&[c1, c2], x)?.is_zero() {
                out.push(x);
            }
        }
        Ok(out)
    }
}

/// `κ(C_1, …, C_k → target)`.
pub fn kappa(table: &CharacterTable, classes: &[usize], target: usize) -> Result<StructureConstant> {
    KappaEngine::new(table)?.kappa(classes, target)
}

/// Whether the target class lies in `C_1⋯C_k`.
pub fn membership(table: &CharacterTable, classes: &[usize], target: usize) -> Result<bool> {
    Ok(!kappa(table, classes, target)?.is_zero())
}

/// `{X : X ⊆ C_1·C_2}` from the character table.
pub fn product_support(table: &CharacterTable, c1: usize, c2: usize) -> Result<Vec<usize>> {
    KappaEngine::new(table)?.product_support(c1, c2)
}

/// `#{(x, y) ∈ C_1 × C_2 : x·y = z}` for the representative `z` of the target
/// class, by direct enumeration of `C_1`. Fails if `|C_1|` exceeds `budget`.
pub fn count_oracle(
    g: &FiniteGroup,
    data: &ClassData,
    c1: usize,
    c2: usize,
    target: usize,
    budget: u64,
) -> Result<u64> {
    for c in [c1, c2, target] {
        if c >= data.len() {
            return Err(Error::ClassOutOfRange(c + 1));
        }
    }
    let size = data.size(c1);
    if size > budget {
        return Err(Error::Budget { needed: size, budget });
    }
    let z = data.class(target).representative;
    Ok(data
        .class(c1)
        .members
        .iter()
        .filter(|&&x| data.class_of(g.mul(g.inverse(x), z)) == c2)
        .count() as u64)
}

/// `{X : X ⊆ C_1·C_2}` by searching the smaller class for a factor.
pub fn counting_support(g: &FiniteGroup, data: &ClassData, c1: usize, c2: usize) -> Vec<usize> {
    // C_1·C_2 = C_2·C_1 for normal subsets, so search the smaller one.
    let (small, other) = if data.size(c1) <= data.size(c2) { (c1, c2) } else { (c2, c1) };
    (0..data.len())
        .filter(|&x| {
            let z = data.class(x).representative;
            data.class(small)
                .members
                .iter()
                .any(|&y| data.class_of(g.mul(g.inverse(y), z)) == other)
        })
        .collect()
}

/// Serialises a rational as `a/b` (or `a`).
pub fn serialize_rational<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl Serialize for StructureConstant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.value.to_string())
    }
}

impl fmt::Display for StructureConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Checks that a `κ` value is a nonnegative rational whose scaled count is a
/// nonnegative integer.
pub fn check_integrality(sc: &StructureConstant, table: &CharacterTable) -> bool {
    let count = sc.solution_count(table);
    !sc.value.is_negative() && count.is_integer() && !count.is_negative()
}

/// `|G| / ∏|C_i|` as used when converting counts to `κ`.
pub fn count_to_kappa(count: u64, sizes: &[BigUint], order: &BigUint) -> BigRational {
    let denom: BigUint = sizes.iter().product();
    BigRational::new(BigInt::from(count) * BigInt::from(order.clone()), BigInt::from(denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::dixon_table;
    use crate::group::{conjugacy_classes, DEFAULT_ENUMERATION_BOUND};

    fn setup(spec: &str) -> (FiniteGroup, ClassData, CharacterTable) {
        let g = FiniteGroup::from_spec(&spec.parse().unwrap(), DEFAULT_ENUMERATION_BOUND).unwrap();
        let c = conjugacy_classes(&g);
        let t = dixon_table(&g, &c).unwrap();
        (g, c, t)
    }

    #[test]
    fn identity_target_gives_centralizer_order() {
        let (_, c, t) = setup("an:5");
        let e = KappaEngine::new(&t).unwrap();
        for i in 0..c.len() {
            let k = e.kappa(&[i, c.inverse_class(i)], 0).unwrap();
            assert_eq!(k.value, BigRational::from_integer(c.centralizer_order(i).into()));
        }
    }

    #[test]
    fn a5_matches_counting() {
        let (g, c, t) = setup("an:5");
        let e = KappaEngine::new(&t).unwrap();
        for a in 0..c.len() {
            for b in 0..c.len() {
                for x in 0..c.len() {
                    let sc = e.kappa(&[a, b], x).unwrap();
                    let n = count_oracle(&g, &c, a, b, x, u64::MAX).unwrap();
                    assert_eq!(sc.solution_count(&t), BigRational::from_integer(n.into()));
                }
                assert_eq!(e.product_support(a, b).unwrap(), counting_support(&g, &c, a, b));
            }
        }
    }

    #[test]
    fn psl28_order_three_square_misses_involutions() {
        let (_, c, t) = setup("psl:2:8");
        let three = crate::group::order_p_classes(&c, 3)[0];
        let two = crate::group::order_p_classes(&c, 2)[0];
        let sc = kappa(&t, &[three, three], two).unwrap();
        assert!(sc.is_zero());
        assert_eq!(sc.display(&t), "kappa(3A,3A -> 2A) = 0");
        assert!(!membership(&t, &[three, three], two).unwrap());
    }
}
