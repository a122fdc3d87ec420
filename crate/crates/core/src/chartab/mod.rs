//! Character tables: exact values, class metadata, and the checks every table
//! must pass (class equation, both orthogonality relations, consistency of
//! the inverse and power maps).

pub mod class_matrix;
pub mod dixon;
pub mod modp;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub use class_matrix::{class_matrices, ClassMatrix};
pub use dixon::{dixon_prime, dixon_table};

use crate::cyclotomic::{int_terms, Cyclotomic, ProductSum};
use crate::error::{Error, Result};
use crate::group::ClassData;
use crate::numtheory;

/// Metadata of one class column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableClass {
    pub name: String,
    pub size: BigUint,
    pub element_order: u64,
    /// Index of the class of inverses.
    pub inverse: usize,
    /// `p ↦` index of the class of `p`-th powers.
    pub powers: BTreeMap<u64, usize>,
}

/// An irreducible character table with exact cyclotomic values.
/// `value(χ, j)` is `χ(g_j)`; row 0 is the trivial character and column 0 the
/// identity class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    name: String,
    order: BigUint,
    exponent: u64,
    classes: Vec<TableClass>,
    irr: Vec<Vec<Cyclotomic>>,
}

fn invalid(relation: &str, detail: impl Into<String>) -> Error {
    Error::TableValidation {
        relation: relation.to_string(),
        detail: detail.into(),
    }
}

impl CharacterTable {
    /// Assembles a table without checking it; see [`CharacterTable::validate`].
    pub fn new_unchecked(
        name: impl Into<String>,
        order: BigUint,
        exponent: u64,
        classes: Vec<TableClass>,
        irr: Vec<Vec<Cyclotomic>>,
    ) -> Self {
        CharacterTable {
            name: name.into(),
            order,
            exponent,
            classes,
            irr,
        }
    }

    /// Assembles and validates a table.
    pub fn new(
        name: impl Into<String>,
        order: BigUint,
        exponent: u64,
        classes: Vec<TableClass>,
        irr: Vec<Vec<Cyclotomic>>,
    ) -> Result<Self> {
        let t = Self::new_unchecked(name, order, exponent, classes, irr);
        t.validate()?;
        Ok(t)
    }

    /// Table for an enumerated group with the given class data and values.
    pub fn from_class_data(name: impl Into<String>, data: &ClassData, irr: Vec<Vec<Cyclotomic>>) -> Self {
        let classes = data
            .classes()
            .iter()
            .enumerate()
            .map(|(i, c)| TableClass {
                name: c.name.clone(),
                size: BigUint::from(c.size()),
                element_order: c.element_order,
                inverse: data.inverse_class(i),
                powers: data
                    .power_maps()
                    .iter()
                    .map(|(&p, map)| (p, map[i]))
                    .collect(),
            })
            .collect();
        Self::new_unchecked(name, BigUint::from(data.group_order()), data.exponent(), classes, irr)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Number of classes (equivalently, of irreducible characters).
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[TableClass] {
        &self.classes
    }

    pub fn class(&self, j: usize) -> &TableClass {
        &self.classes[j]
    }

    pub fn characters(&self) -> &[Vec<Cyclotomic>] {
        &self.irr
    }

    pub fn value(&self, chi: usize, j: usize) -> &Cyclotomic {
        &self.irr[chi][j]
    }

    /// `χ(1)`.
    pub fn degree(&self, chi: usize) -> BigUint {
        self.irr[chi][0]
            .to_rational()
            .and_then(|r| r.to_integer().to_biguint())
            .expect("degrees are positive integers")
    }

    pub fn degrees(&self) -> Vec<BigUint> {
        (0..self.irr.len()).map(|i| self.degree(i)).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// Resolves a class given by name or by 1-based index.
    pub fn resolve_class(&self, key: &str) -> Result<usize> {
        if let Some(i) = self.index_of(key) {
            return Ok(i);
        }
        match key.parse::<usize>() {
            Ok(i) if i >= 1 && i <= self.len() => Ok(i - 1),
            Ok(i) => Err(Error::ClassOutOfRange(i)),
            Err(_) => Err(Error::UnknownClass(key.to_string())),
        }
    }

    pub fn centralizer_order(&self, j: usize) -> BigUint {
        &self.order / &self.classes[j].size
    }

    /// The `p`-power map, if every class records it.
    pub fn power_map(&self, p: u64) -> Option<Vec<usize>> {
        self.classes.iter().map(|c| c.powers.get(&p).copied()).collect()
    }

    /// Classes whose elements have order exactly `p`.
    pub fn order_p_classes(&self, p: u64) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| self.classes[j].element_order == p)
            .collect()
    }

    /// Fails unless power maps are present for every prime dividing the
    /// exponent.
    pub fn require_power_maps(&self) -> Result<()> {
        for p in numtheory::prime_divisors(self.exponent) {
            if self.power_map(p).is_none() {
                return Err(Error::MissingPowerMap(p));
            }
        }
        Ok(())
    }

    /// Runs every structural and orthogonality check, exactly.
    pub fn validate(&self) -> Result<()> {
        let k = self.classes.len();
        if k == 0 {
            return Err(invalid("shape", "no classes"));
        }
        if self.irr.len() != k || self.irr.iter().any(|row| row.len() != k) {
            return Err(invalid("shape", format!("expected a {k} x {k} table")));
        }
        let total: BigUint = self.classes.iter().map(|c| &c.size).sum();
        if total != self.order {
            return Err(invalid(
                "class equation",
                format!("class sizes sum to {total}, group order is {}", self.order),
            ));
        }
        for c in &self.classes {
            if c.size.is_zero() || !(&self.order % &c.size).is_zero() {
                return Err(invalid("class equation", format!("size of {} does not divide the order", c.name)));
            }
        }
        if self.classes[0].element_order != 1 || !self.classes[0].size.is_one() {
            return Err(invalid("identity class", "the first class must be the identity"));
        }
        let orders_lcm = self.classes.iter().fold(1u64, |acc, c| acc.lcm(&c.element_order));
        if orders_lcm != self.exponent {
            return Err(invalid(
                "exponent",
                format!("element orders have lcm {orders_lcm}, exponent is {}", self.exponent),
            ));
        }

        // Degrees.
        let mut sum_sq = BigUint::zero();
        for (i, row) in self.irr.iter().enumerate() {
            let d = row[0]
                .to_rational()
                .filter(|r| r.is_integer() && r.numer() > &BigInt::zero())
                .ok_or_else(|| invalid("degrees", format!("character {} has degree {}", i + 1, row[0])))?
                .to_integer()
                .to_biguint()
                .expect("positive");
            if !(&self.order % &d).is_zero() {
                return Err(invalid("degrees", format!("degree {d} does not divide the order")));
            }
            sum_sq += &d * &d;
        }
        if sum_sq != self.order {
            return Err(invalid("degrees", format!("squares of degrees sum to {sum_sq}")));
        }

        // Inverse map: an involution with χ(g⁻¹) = conj χ(g).
        for (j, c) in self.classes.iter().enumerate() {
            let inv = c.inverse;
            if inv >= k || self.classes[inv].inverse != j {
                return Err(invalid("inverse map", format!("class {} has inconsistent inverse", c.name)));
            }
            if self.classes[inv].element_order != c.element_order || self.classes[inv].size != c.size {
                return Err(invalid("inverse map", format!("class {} and its inverse differ", c.name)));
            }
            for row in &self.irr {
                if row[inv] != row[j].conj() {
                    return Err(invalid(
                        "inverse map",
                        format!("value on the inverse of {} is not the complex conjugate", c.name),
                    ));
                }
            }
        }

        // Power maps: orders must be consistent, and for p coprime to the
        // order the map must act on values as the Galois automorphism.
        for c in &self.classes {
            for (&p, &img) in &c.powers {
                if img >= k {
                    return Err(invalid("power maps", format!("{}: image out of range", c.name)));
                }
                let o = c.element_order;
                let expect = if o % p == 0 { o / p } else { o };
                if self.classes[img].element_order != expect {
                    return Err(invalid(
                        "power maps",
                        format!("{}^{p} lands in {} of order {}", c.name, self.classes[img].name, self.classes[img].element_order),
                    ));
                }
            }
        }
        for (j, c) in self.classes.iter().enumerate() {
            for (&p, &img) in &c.powers {
                if c.element_order % p == 0 {
                    continue;
                }
                for row in &self.irr {
                    if row[img] != row[j].galois(p as i64) {
                        return Err(invalid("power maps", format!("{}^{p} is not Galois-compatible", c.name)));
                    }
                }
            }
        }

        let ints = IntTable::new(self)?;
        self.check_columns(&ints)?;
        self.check_rows(&ints)?;
        Ok(())
    }

    fn check_columns(&self, t: &IntTable) -> Result<()> {
        let k = self.len();
        let col_cond: Vec<u64> = (0..k)
            .map(|j| (0..k).fold(1u64, |acc, i| acc.lcm(&t.cond[i][j])))
            .collect();
        let one = BigInt::one();
        for j in 0..k {
            for j2 in j..k {
                let n = col_cond[j].lcm(&col_cond[j2]);
                let mut sum = ProductSum::new(n);
                for i in 0..k {
                    let a = t.scaled(i, j, n, false);
                    let b = t.scaled(i, j2, n, true);
                    sum.add_product(&one, &[&a, &b]);
                }
                let value = sum.finish();
                let expect = if j == j2 {
                    Cyclotomic::from_rational(BigInt::from(self.centralizer_order(j)).into())
                } else {
                    Cyclotomic::zero()
                };
                if value != expect {
                    return Err(invalid(
                        "column orthogonality",
                        format!("columns {} and {} give {value}, expected {expect}", self.classes[j].name, self.classes[j2].name),
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_rows(&self, t: &IntTable) -> Result<()> {
        let k = self.len();
        let row_cond: Vec<u64> = (0..k)
            .map(|i| (0..k).fold(1u64, |acc, j| acc.lcm(&t.cond[i][j])))
            .collect();
        let sizes: Vec<BigInt> = self.classes.iter().map(|c| BigInt::from(c.size.clone())).collect();
        let order = BigInt::from(self.order.clone());
        for i in 0..k {
            for i2 in i..k {
                let n = row_cond[i].lcm(&row_cond[i2]);
                let mut sum = ProductSum::new(n);
                for j in 0..k {
                    let a = t.scaled(i, j, n, false);
                    let b = t.scaled(i2, j, n, true);
                    sum.add_product(&sizes[j], &[&a, &b]);
                }
                let value = sum.finish();
                let expect = if i == i2 {
                    Cyclotomic::from_rational(order.clone().into())
                } else {
                    Cyclotomic::zero()
                };
                if value != expect {
                    return Err(invalid(
                        "row orthogonality",
                        format!("characters {} and {} give {value}, expected {expect}", i + 1, i2 + 1),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Every table entry as sparse integer terms over its own conductor.
pub(crate) struct IntTable {
    pub cond: Vec<Vec<u64>>,
    pub terms: Vec<Vec<Vec<(u32, i128)>>>,
}

impl IntTable {
    pub fn new(t: &CharacterTable) -> Result<Self> {
        let mut cond = Vec::with_capacity(t.len());
        let mut terms = Vec::with_capacity(t.len());
        for (i, row) in t.irr.iter().enumerate() {
            let mut crow = Vec::with_capacity(row.len());
            let mut trow = Vec::with_capacity(row.len());
            for (j, v) in row.iter().enumerate() {
                let c = v.conductor();
                let tv = int_terms(v, c).ok_or_else(|| {
                    invalid(
                        "integrality",
                        format!("character {} on class {} is not an algebraic integer: {v}", i + 1, t.classes[j].name),
                    )
                })?;
                crow.push(c);
                trow.push(tv);
            }
            cond.push(crow);
            terms.push(trow);
        }
        Ok(IntTable { cond, terms })
    }

    /// Terms of entry `(i, j)` re-expressed over `ζ_n`, optionally conjugated.
    pub fn scaled(&self, i: usize, j: usize, n: u64, conj: bool) -> Vec<(u32, i128)> {
        let c = self.cond[i][j];
        let step = n / c;
        self.terms[i][j]
            .iter()
            .map(|&(e, v)| {
                let mut e = e as u64 * step;
                if conj {
                    e = (n - e) % n;
                }
                (e as u32, v)
            })
            .collect()
    }
}

/// Rounds a rational that must be an integer; used for degrees.
pub(crate) fn as_u64(c: &Cyclotomic) -> Option<u64> {
    c.to_rational()
        .filter(|r| r.is_integer())
        .and_then(|r| r.to_integer().to_u64())
}
