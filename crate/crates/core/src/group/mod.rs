//! Finite groups enumerated from generators.
//!
//! Every element gets a dense index in breadth-first discovery order starting
//! from the identity (index 0), so a group built twice from the same
//! generators is identical element for element.

pub mod classes;
pub mod repr;

use std::hash::BuildHasher;

use hashbrown::HashTable;
use num_bigint::BigUint;
use num_integer::Integer;
use rustc_hash::FxBuildHasher;

pub use classes::{conjugacy_classes, order_p_classes, ClassData, ConjugacyClass};
pub use repr::Representation;

use crate::error::{Error, Result};
use crate::matgrp::{self, Generators, GroupSpec, Matrix};
use crate::perm::Permutation;
use repr::MAX_WIDTH;

/// Default cap on the number of elements enumerated.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 20_000_000;

/// Environment variable overriding [`DEFAULT_ENUMERATION_BOUND`].
pub const BOUND_ENV: &str = "PWIDTH_ENUM_BOUND";

/// The enumeration bound in effect: [`BOUND_ENV`] if set to a number, else the
/// default.
pub fn enumeration_bound() -> u64 {
    std::env::var(BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_BOUND)
}

/// A fully enumerated finite group.
pub struct FiniteGroup {
    name: String,
    repr: Representation,
    width: usize,
    arena: Vec<u8>,
    index: HashTable<u32>,
    generators: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
}

fn hash_bytes(bytes: &[u8]) -> u64 {
    
    
    FxBuildHasher.hash_one(bytes)
}

impl FiniteGroup {
    /// Breadth-first closure of `generators` (encoded in `repr`) under right
    /// multiplication.
    pub fn enumerate(
        name: impl Into<String>,
        repr: Representation,
        generators: &[Vec<u8>],
        bound: u64,
    ) -> Result<Self> {
        let width = repr.width();
        assert!(width <= MAX_WIDTH, "element encoding wider than {MAX_WIDTH} bytes");
        let mut g = FiniteGroup {
            name: name.into(),
            width,
            arena: Vec::new(),
            index: HashTable::new(),
            generators: Vec::new(),
            inverses: Vec::new(),
            orders: Vec::new(),
            repr,
        };
        let mut id = g.repr.identity();
        g.repr.canonicalize(&mut id);
        g.insert(&id);

        let mut gens: Vec<Vec<u8>> = Vec::new();
        for s in generators {
            assert_eq!(s.len(), width, "generator has the wrong encoding width");
            let mut s = s.clone();
            g.repr.canonicalize(&mut s);
            if s != id && !gens.contains(&s) {
                gens.push(s);
            }
        }

        let mut buf = [0u8; MAX_WIDTH];
        let mut next = 0usize;
        while next < g.len() {
            for s in &gens {
                let start = next * width;
                g.repr
                    .multiply(&g.arena[start..start + width], s, &mut buf[..width]);
                if g.lookup(&buf[..width]).is_none() {
                    if g.len() as u64 >= bound {
                        return Err(Error::EnumerationBound {
                            bound,
                            partial: g.len() as u64,
                        });
                    }
                    g.insert(&buf[..width]);
                }
            }
            next += 1;
        }
        g.generators = gens
            .iter()
            .map(|s| g.lookup(s).expect("generators are elements"))
            .collect();
        g.compute_orders_and_inverses();
        Ok(g)
    }

    /// Enumerates the group described by `spec`, forming the central quotient
    /// for projective families, and checks the result against the order
    /// formula when one is known.
    pub fn from_spec(spec: &GroupSpec, bound: u64) -> Result<Self> {
        let gens = matgrp::build_group(spec, bound)?;
        let name = spec.to_string();
        let mut group = match gens {
            Generators::Permutations { degree, gens } => {
                let encoded: Vec<Vec<u8>> = gens.iter().map(encode_perm).collect();
                FiniteGroup::enumerate(&name, Representation::Perm { degree }, &encoded, bound)?
            }
            Generators::Matrices { n, gens } => {
                let field = match gens.first() {
                    Some(m) => std::sync::Arc::clone(m.field()),
                    None => return Err(Error::UnsupportedGroup(name)),
                };
                let encoded: Vec<Vec<u8>> = gens.iter().map(|m| m.entries().to_vec()).collect();
                FiniteGroup::enumerate(&name, Representation::Matrix { n, field }, &encoded, bound)?
            }
        };
        if spec.is_projective() {
            group = central_quotient(&group, bound)?;
            group.name = name;
        }
        if let Some(expected) = spec.order() {
            if BigUint::from(group.order()) != expected {
                return Err(Error::OrderMismatch {
                    expected: expected.to_string(),
                    found: group.order().to_string(),
                });
            }
        }
        Ok(group)
    }

    /// The group generated by some permutations of equal degree.
    pub fn from_permutations(name: &str, degree: usize, gens: &[Permutation], bound: u64) -> Result<Self> {
        if degree > MAX_WIDTH {
            return Err(Error::InvalidArgument(format!("degree {degree} exceeds {MAX_WIDTH}")));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let encoded: Vec<Vec<u8>> = gens.iter().map(encode_perm).collect();
        FiniteGroup::enumerate(name, Representation::Perm { degree }, &encoded, bound)
    }

    fn insert(&mut self, bytes: &[u8]) -> u32 {
        let idx = self.len() as u32;
        self.arena.extend_from_slice(bytes);
        let width = self.width;
        let arena = &self.arena;
        self.index.insert_unique(hash_bytes(bytes), idx, |&i| {
            let s = i as usize * width;
            hash_bytes(&arena[s..s + width])
        });
        idx
    }

    /// Index of an encoded element, if it belongs to the group.
    pub fn lookup(&self, bytes: &[u8]) -> Option<u32> {
        let w = self.width;
        self.index
            .find(hash_bytes(bytes), |&i| {
                let s = i as usize * w;
                &self.arena[s..s + w] == bytes
            })
            .copied()
    }

    fn compute_orders_and_inverses(&mut self) {
        let n = self.len();
        self.inverses = vec![u32::MAX; n];
        self.orders = vec![0; n];
        let mut powers: Vec<u32> = Vec::new();
        for x in 0..n as u32 {
            if self.orders[x as usize] != 0 {
                continue;
            }
            powers.clear();
            powers.push(0);
            let mut cur = x;
            while cur != 0 {
                powers.push(cur);
                cur = self.mul(cur, x);
            }
            let o = powers.len();
            for (j, &y) in powers.iter().enumerate() {
                self.orders[y as usize] = (o / j.gcd(&o).max(1)) as u32;
                self.inverses[y as usize] = powers[(o - j) % o];
            }
        }
        self.orders[0] = 1;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> u64 {
        self.len() as u64
    }

    pub fn len(&self) -> usize {
        self.arena.len() / self.width.max(1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    pub fn element(&self, i: u32) -> &[u8] {
        let s = i as usize * self.width;
        &self.arena[s..s + self.width]
    }

    /// Indices of the (deduplicated, nontrivial) generators.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.width == 0 {
            return 0;
        }
        let mut buf = [0u8; MAX_WIDTH];
        let w = self.width;
        self.repr
            .multiply(self.element(a), self.element(b), &mut buf[..w]);
        self.lookup(&buf[..w]).expect("the group is closed under multiplication")
    }

    #[inline]
    pub fn inverse(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// Order of an element.
    #[inline]
    pub fn element_order(&self, a: u32) -> u64 {
        self.orders[a as usize] as u64
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        e %= self.element_order(a);
        let mut acc = 0;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// `b⁻¹·a·b`.
    pub fn conjugate(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inverse(b), a), b)
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        let mut seen = std::collections::BTreeSet::new();
        for &o in &self.orders {
            seen.insert(o as u64);
        }
        seen.into_iter().fold(1, |acc, o| acc.lcm(&o))
    }

    /// The element as a permutation, for permutation groups.
    pub fn permutation(&self, i: u32) -> Option<Permutation> {
        match &self.repr {
            Representation::Perm { .. } => Some(
                Permutation::from_images(self.element(i).iter().map(|&x| x as usize).collect())
                    .expect("stored permutations are bijections"),
            ),
            _ => None,
        }
    }

    /// The element (or its canonical coset representative) as a matrix.
    pub fn matrix(&self, i: u32) -> Option<Matrix> {
        match self.repr.base() {
            Representation::Matrix { n, field } => {
                Some(Matrix::from_entries(*n, self.element(i).to_vec(), field))
            }
            _ => None,
        }
    }

    /// Human-readable form: cycle notation or a matrix.
    pub fn describe(&self, i: u32) -> String {
        if let Some(p) = self.permutation(i) {
            p.to_string()
        } else if let Some(m) = self.matrix(i) {
            m.to_string()
        } else {
            format!("{:?}", self.element(i))
        }
    }

    /// Elements commuting with every generator.
    pub fn center(&self) -> Vec<u32> {
        (0..self.len() as u32)
            .filter(|&z| self.generators.iter().all(|&s| self.mul(z, s) == self.mul(s, z)))
            .collect()
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

fn encode_perm(p: &Permutation) -> Vec<u8> {
    p.images0().map(|x| x as u8).collect()
}

/// The quotient `G / Z(G)`, with each coset stored as its least element.
pub fn central_quotient(g: &FiniteGroup, bound: u64) -> Result<FiniteGroup> {
    let center: Vec<Vec<u8>> = g.center().iter().map(|&z| g.element(z).to_vec()).collect();
    let repr = Representation::Quotient {
        base: Box::new(g.repr.clone()),
        center,
    };
    let gens: Vec<Vec<u8>> = g.generators.iter().map(|&s| g.element(s).to_vec()).collect();
    FiniteGroup::enumerate(format!("{}/Z", g.name), repr, &gens, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(spec: &str) -> FiniteGroup {
        FiniteGroup::from_spec(&spec.parse().unwrap(), DEFAULT_ENUMERATION_BOUND).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(group("an:5").order(), 60);
        assert_eq!(group("psl:2:8").order(), 504);
        assert_eq!(group("sp:2:3").order(), 24);
        assert_eq!(group("sl:2:5").order(), 120);
        assert_eq!(group("psl:2:5").order(), 60);
        assert_eq!(group("sl:3:2").order(), 168);
        assert_eq!(group("sp:4:2").order(), 720);
        assert_eq!(group("su:3:3").order(), 6048);
        assert_eq!(group("gu:3:2").order(), 648);
        assert_eq!(group("m11").order(), 7920);
        assert_eq!(group("an:4").order(), 12);
        assert_eq!(group("an:1").order(), 1);
        assert_eq!(group("cyclic:1").order(), 1);
    }

    #[test]
    fn empty_generators() {
        let g = FiniteGroup::from_permutations("1", 4, &[], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
    }

    #[test]
    fn bound_reports_partial_count() {
        let err = FiniteGroup::from_spec(&"an:6".parse().unwrap(), 100).unwrap_err();
        assert!(matches!(err, Error::OrderOverBound { .. }));
        let gens = [Permutation::parse(6, "(1,2,3)").unwrap(), Permutation::parse(6, "(2,3,4,5,6)").unwrap()];
        let err = FiniteGroup::from_permutations("a6", 6, &gens, 100).unwrap_err();
        assert_eq!(err, Error::EnumerationBound { bound: 100, partial: 100 });
    }

    #[test]
    fn inverses_and_orders() {
        let g = group("psl:2:7");
        for x in 0..g.len() as u32 {
            assert_eq!(g.mul(x, g.inverse(x)), 0);
            assert_eq!(g.pow(x, g.element_order(x)), 0);
        }
        assert_eq!(g.exponent(), 84);
    }

    #[test]
    fn quotient_sizes() {
        let g = group("sl:2:5");
        let z = g.center();
        assert_eq!(z.len(), 2);
        let q = central_quotient(&g, 1000).unwrap();
        assert_eq!(q.order() * z.len() as u64, g.order());
        let sl42 = group("sl:4:2");
        assert_eq!(sl42.center().len(), 1);
    }
}
