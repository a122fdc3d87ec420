//! Permutations of `{1, …, n}` and their cycle statistics.
//!
//! # Multiplication convention
//!
//! Products are read left to right: in `g.compose(&h)` the left factor acts
//! first, so `(g·h)(i) = h(g(i))`. With this convention the two cycle-breaking
//! identities used by the alternating-group constructions hold exactly as
//! written, for example `(1,2,3)·(4,5,1) = (1,2,3,4,5)`.
//!
//! Points are 1-based in every public function that takes or returns a point
//! and in cycle notation. The degree is always explicit.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An element of the symmetric group `S_n`, stored in image form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images: images[i] = g(i).
    images: Vec<u32>,
}

/// Cycle statistics of a permutation: support size, number of nontrivial
/// cycles, fixed points and `r = |support| - cycles`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CycleStats {
    pub support_size: usize,
    pub nontrivial_cycles: usize,
    pub fixed_points: usize,
    pub r_value: usize,
}

/// Multiset of cycle lengths `>= 2` (descending), padded by fixed points up to
/// the degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    degree: usize,
    parts: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "images {images:?} are not a bijection on 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles written
    /// with 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} outside 1..={degree}"
                    )));
                }
                if used[pt - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} appears twice"
                    )));
                }
                used[pt - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `"(1,2,3)(4,5)"`; `"()"` is the identity.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        Self::from_cycles(degree, &cycles)
    }

    /// A single cycle on the given 1-based points.
    pub fn cycle(degree: usize, points: &[usize]) -> Result<Self> {
        Self::from_cycles(degree, &[points.to_vec()])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// 0-based image table.
    pub fn images0(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x as usize == i)
    }

    /// Product with the left factor acting first: `(self·other)(i) = other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, exp: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Result<Permutation> {
        h.inverse().compose(self)?.compose(h)
    }

    /// Disjoint cycles of length `>= 2`, 1-based, each starting at its least
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start + 1];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x] as usize;
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Moved points, 1-based and increasing.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn cycle_type(&self) -> CycleType {
        let parts = self.cycles().iter().map(Vec::len).collect();
        CycleType::new(self.degree(), parts).expect("cycle lengths of a permutation are valid")
    }

    pub fn cycle_stats(&self) -> CycleStats {
        self.cycle_type().stats()
    }

    /// Least `m >= 1` with `g^m = 1` (the lcm of the cycle lengths).
    pub fn order(&self) -> u128 {
        self.cycle_type().element_order()
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type().is_even()
    }

    /// Number of fixed points.
    pub fn fix(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x as usize)
            .count()
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;

    /// Left-acts-first product. Panics on a degree mismatch; use
    /// [`Permutation::compose`] for a fallible version.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("permutation degrees differ")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in S{}", self, self.degree())
    }
}

/// Parses cycle notation into lists of 1-based points without checking
/// disjointness or range.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let err = |column: usize, message: &str| Error::CycleSyntax {
        column: column + 1,
        message: message.to_string(),
    };
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut cycles = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    while i < chars.len() {
        if chars[i] != '(' {
            return Err(err(i, "expected '('"));
        }
        i += 1;
        let mut cycle = Vec::new();
        skip_ws(&mut i);
        if i < chars.len() && chars[i] == ')' {
            // "()" denotes the identity.
            i += 1;
            skip_ws(&mut i);
            continue;
        }
        loop {
            skip_ws(&mut i);
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(i, "expected a point"));
            }
            let s: String = chars[start..i].iter().collect();
            let pt: usize = s.parse().map_err(|_| err(start, "point out of range"))?;
            cycle.push(pt);
            skip_ws(&mut i);
            match chars.get(i) {
                Some(',') => i += 1,
                Some(')') => {
                    i += 1;
                    break;
                }
                Some(_) => return Err(err(i, "expected ',' or ')'")),
                None => return Err(err(i, "unterminated cycle")),
            }
        }
        cycles.push(cycle);
        skip_ws(&mut i);
    }
    Ok(cycles)
}

impl CycleType {
    /// Validates `parts` (every part `>= 2`, sum `<= degree`) and sorts them
    /// in decreasing order.
    pub fn new(degree: usize, mut parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p < 2) {
            return Err(Error::InvalidArgument(
                "cycle type parts must be at least 2".into(),
            ));
        }
        let sum: usize = parts.iter().sum();
        if sum > degree {
            return Err(Error::InvalidArgument(format!(
                "cycle type {parts:?} does not fit in degree {degree}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { degree, parts })
    }

    /// Parses a comma separated list of parts, e.g. `"5,3"`. Parts equal to
    /// 1 are accepted and dropped.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad cycle length {tok:?}")))?;
            if v > 1 {
                parts.push(v);
            } else if v == 0 {
                return Err(Error::InvalidArgument("zero cycle length".into()));
            }
        }
        Self::new(degree, parts)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn fixed_points(&self) -> usize {
        self.degree - self.parts.iter().sum::<usize>()
    }

    pub fn stats(&self) -> CycleStats {
        let support_size: usize = self.parts.iter().sum();
        let nontrivial_cycles = self.parts.len();
        CycleStats {
            support_size,
            nontrivial_cycles,
            fixed_points: self.degree - support_size,
            r_value: support_size - nontrivial_cycles,
        }
    }

    pub fn is_even(&self) -> bool {
        self.parts.iter().filter(|&&p| p % 2 == 0).count() % 2 == 0
    }

    pub fn element_order(&self) -> u128 {
        use num_integer::Integer;
        self.parts.iter().fold(1u128, |acc, &p| acc.lcm(&(p as u128)))
    }

    /// The class of this type in `S_n` splits into two `A_n`-classes exactly
    /// when all cycle lengths (fixed points included) are odd and distinct.
    pub fn splits_in_alternating(&self) -> bool {
        let fix = self.fixed_points();
        if fix > 1 {
            return false;
        }
        let mut all: Vec<usize> = self.parts.clone();
        if fix == 1 {
            all.push(1);
        }
        all.iter().all(|p| p % 2 == 1) && {
            let mut d = all.clone();
            d.dedup();
            d.len() == all.len()
        }
    }

    /// Canonical representative: cycles on consecutive points, longest first.
    pub fn representative(&self) -> Permutation {
        let mut cycles = Vec::new();
        let mut next = 1;
        for &p in &self.parts {
            cycles.push((next..next + p).collect());
            next += p;
        }
        Permutation::from_cycles(self.degree, &cycles).expect("parts fit in the degree")
    }

    /// Every cycle type of `S_n` (identity included), in a fixed order.
    pub fn all(degree: usize) -> Vec<CycleType> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(cur.clone());
            for p in (2..=max.min(rem)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(degree, degree, &mut Vec::new(), &mut out);
        out.into_iter()
            .map(|parts| CycleType::new(degree, parts).unwrap())
            .collect()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        let mut first = true;
        let mut write_part = |f: &mut fmt::Formatter<'_>, p: usize, m: usize| -> fmt::Result {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{p}")
            } else {
                write!(f, "{p}^{m}")
            }
        };
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let m = self.parts[i..].iter().take_while(|&&q| q == p).count();
            write_part(f, p, m)?;
            i += m;
        }
        let fix = self.fixed_points();
        if fix > 0 {
            write_part(f, 1, fix)?;
        }
        f.write_str(")")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses cycle notation, taking the degree to be the largest point
    /// mentioned. Prefer [`Permutation::parse`], which takes the degree
    /// explicitly.
    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        let n = cycles.iter().flatten().copied().max().unwrap_or(0);
        Permutation::from_cycles(n, &cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    #[test]
    fn composition_convention_matches_cycle_breaking() {
        assert_eq!(&p(5, "(1,2,3)") * &p(5, "(4,5,1)"), p(5, "(1,2,3,4,5)"));
        assert_eq!(&p(5, "(3,1,2)") * &p(5, "(1,4,5)"), p(5, "(1,2,3,4,5)"));
        let g = p(6, "(1,4)(2,6,3)");
        assert_eq!(&g * &Permutation::identity(6), g);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        assert_eq!(
            p(3, "(1,2)").compose(&p(4, "(1,2)")),
            Err(Error::DegreeMismatch(3, 4))
        );
    }

    #[test]
    fn cycle_stats_examples() {
        let id = Permutation::identity(7).cycle_stats();
        assert_eq!(
            id,
            CycleStats {
                support_size: 0,
                nontrivial_cycles: 0,
                fixed_points: 7,
                r_value: 0
            }
        );
        let g = p(7, "(1,2,3)(4,5)").cycle_stats();
        assert_eq!(
            g,
            CycleStats {
                support_size: 5,
                nontrivial_cycles: 2,
                fixed_points: 2,
                r_value: 3
            }
        );
        // (p^k, 1^(n-kp)) has r = k(p-1).
        for (pp, k, n) in [(5, 2, 13), (3, 3, 9), (7, 1, 7)] {
            let t = CycleType::new(n, vec![pp; k]).unwrap();
            assert_eq!(t.representative().cycle_stats().r_value, k * (pp - 1));
        }
    }

    #[test]
    fn orders_and_parity() {
        assert_eq!(p(3, "(1,2,3)").order(), 3);
        assert_eq!(p(5, "(1,2)(3,4,5)").order(), 6);
        assert_eq!(Permutation::identity(4).order(), 1);
        assert!(p(3, "(1,2,3)").is_even());
        assert!(!p(2, "(1,2)").is_even());
        assert!(p(4, "(1,2)(3,4)").is_even());
    }

    #[test]
    fn notation_round_trip() {
        assert_eq!(Permutation::identity(4).to_string(), "()");
        let g = p(9, " ( 3 , 1, 2 )(5,9) ");
        assert_eq!(g.to_string(), "(1,2,3)(5,9)");
        assert_eq!(g.degree(), 9);
        assert_eq!(p(4, "").to_string(), "()");
        assert!(matches!(
            Permutation::parse(4, "(1,2"),
            Err(Error::CycleSyntax { .. })
        ));
        assert!(Permutation::parse(4, "(1,5)").is_err());
        assert!(Permutation::parse(4, "(1,2)(2,3)").is_err());
        assert!(Permutation::parse(4, "1,2)").is_err());
    }

    #[test]
    fn cycle_types() {
        let t = CycleType::parse(10, "5,3,1").unwrap();
        assert_eq!(t.to_string(), "(5,3,1^2)");
        assert!(!t.splits_in_alternating());
        assert!(CycleType::parse(9, "5,3").unwrap().splits_in_alternating());
        assert_eq!(CycleType::all(5).len(), 7);
        assert!(CycleType::new(4, vec![3, 3]).is_err());
        assert!(CycleType::new(4, vec![1]).is_err());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn stats_are_conjugation_invariant(
            (g, h) in (1usize..40).prop_flat_map(|n| (arb_perm(n), arb_perm(n)))
        ) {
            prop_assert_eq!(g.conjugate_by(&h).unwrap().cycle_stats(), g.cycle_stats());
        }

        #[test]
        fn r_value_identity(g in (1usize..100).prop_flat_map(arb_perm)) {
            let s = g.cycle_stats();
            prop_assert_eq!(s.r_value, g.degree() - s.fixed_points - s.nontrivial_cycles);
            prop_assert_eq!(s.support_size + s.fixed_points, g.degree());
            prop_assert_eq!(s.fixed_points, g.fix());
        }

        #[test]
        fn parity_is_a_homomorphism(
            (g, h) in (1usize..30).prop_flat_map(|n| (arb_perm(n), arb_perm(n)))
        ) {
            prop_assert_eq!((&g * &h).is_even(), g.is_even() == h.is_even());
            prop_assert!((&g * &g.inverse()).is_identity());
        }

        #[test]
        fn display_parse_round_trip(g in (1usize..30).prop_flat_map(arb_perm)) {
            prop_assert_eq!(Permutation::parse(g.degree(), &g.to_string()).unwrap(), g);
        }
    }
}
