//! `p`-width: the least `k` with every element a product of `k` elements of
//! order `p`.
//!
//! Works at the level of classes. Layer 1 is the set of order-`p` classes;
//! layer `k` is the union of the supports of `D·C` over `D` in layer `k-1`
//! and `C` in layer 1. A class's width is the first layer that contains it.
//! The identity has width 0.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::frobenius::{count_oracle, counting_support, KappaEngine};
use crate::group::{ClassData, FiniteGroup};
use crate::numtheory::is_prime;

/// Hard limit on the number of layers searched.
pub const WIDTH_CAP: usize = 6;

/// Default limit on group multiplications spent by the counting method.
pub const DEFAULT_COUNT_BUDGET: u64 = 20_000_000_000;

/// How class-product supports are decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Characters,
    Counting,
    Both,
}

impl Method {
    pub fn uses_characters(self) -> bool {
        matches!(self, Method::Characters | Method::Both)
    }

    pub fn uses_counting(self) -> bool {
        matches!(self, Method::Counting | Method::Both)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Characters => "characters",
            Method::Counting => "counting",
            Method::Both => "both",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "characters" => Ok(Method::Characters),
            "counting" => Ok(Method::Counting),
            "both" => Ok(Method::Both),
            _ => Err(Error::InvalidArgument(format!(
                "unknown method {s:?} (expected characters, counting or both)"
            ))),
        }
    }
}

/// What the width computation may use: an enumerated group, a character
/// table, or both. Class indices must agree when both are given.
#[derive(Clone, Copy)]
pub struct Source<'a> {
    pub group: Option<(&'a FiniteGroup, &'a ClassData)>,
    pub table: Option<&'a CharacterTable>,
}

impl<'a> Source<'a> {
    pub fn table(table: &'a CharacterTable) -> Self {
        Source { group: None, table: Some(table) }
    }

    pub fn group(g: &'a FiniteGroup, data: &'a ClassData) -> Self {
        Source { group: Some((g, data)), table: None }
    }

    pub fn both(g: &'a FiniteGroup, data: &'a ClassData, table: &'a CharacterTable) -> Self {
        Source { group: Some((g, data)), table: Some(table) }
    }

    fn len(&self) -> usize {
        match (self.table, self.group) {
            (Some(t), _) => t.len(),
            (None, Some((_, d))) => d.len(),
            (None, None) => 0,
        }
    }

    fn name(&self, i: usize) -> String {
        match (self.table, self.group) {
            (Some(t), _) => t.class(i).name.clone(),
            (None, Some((_, d))) => d.class(i).name.clone(),
            _ => unreachable!(),
        }
    }

    fn element_order(&self, i: usize) -> u64 {
        match (self.table, self.group) {
            (Some(t), _) => t.class(i).element_order,
            (None, Some((_, d))) => d.class(i).element_order,
            _ => unreachable!(),
        }
    }

    fn size(&self, i: usize) -> BigUint {
        match (self.table, self.group) {
            (Some(t), _) => t.class(i).size.clone(),
            (None, Some((_, d))) => BigUint::from(d.size(i)),
            _ => unreachable!(),
        }
    }

    fn order(&self) -> BigUint {
        match (self.table, self.group) {
            (Some(t), _) => t.order().clone(),
            (None, Some((g, _))) => BigUint::from(g.order()),
            _ => unreachable!(),
        }
    }

    fn group_name(&self) -> String {
        match (self.table, self.group) {
            (Some(t), _) => t.name().to_string(),
            (None, Some((g, _))) => g.name().to_string(),
            _ => unreachable!(),
        }
    }

    /// Resolves a class by name or 1-based index.
    pub fn resolve_class(&self, key: &str) -> Result<usize> {
        if let Some(t) = self.table {
            return t.resolve_class(key);
        }
        let (_, d) = self.group.ok_or_else(|| Error::InvalidArgument("no group or table".into()))?;
        if let Some(i) = d.index_of(key) {
            return Ok(i);
        }
        match key.parse::<usize>() {
            Ok(i) if i >= 1 && i <= d.len() => Ok(i - 1),
            Ok(i) => Err(Error::ClassOutOfRange(i)),
            Err(_) => Err(Error::UnknownClass(key.to_string())),
        }
    }

    fn check(&self, method: Method) -> Result<()> {
        if self.group.is_none() && self.table.is_none() {
            return Err(Error::InvalidArgument("a group or a character table is required".into()));
        }
        if method.uses_characters() && self.table.is_none() {
            return Err(Error::InvalidArgument(format!("method {method} needs a character table")));
        }
        if method.uses_counting() && self.group.is_none() {
            return Err(Error::InvalidArgument(format!("method {method} needs an enumerated group")));
        }
        if let (Some(t), Some((_, d))) = (self.table, self.group) {
            let same = t.len() == d.len() && (0..d.len()).all(|i| t.class(i).name == d.class(i).name);
            if !same {
                return Err(Error::InvalidArgument("table classes do not match the group's classes".into()));
            }
        }
        if let Some(t) = self.table {
            t.require_power_maps()?;
        }
        Ok(())
    }
}

/// Options for [`p_width`].
#[derive(Clone, Debug)]
pub struct WidthOptions {
    pub method: Method,
    /// Restrict layer 1 to this single order-`p` class.
    pub single_class: Option<usize>,
    pub cap: usize,
    pub budget: u64,
}

impl WidthOptions {
    pub fn new(method: Method) -> Self {
        WidthOptions { method, single_class: None, cap: WIDTH_CAP, budget: DEFAULT_COUNT_BUDGET }
    }
}

impl Default for WidthOptions {
    fn default() -> Self {
        WidthOptions::new(Method::Characters)
    }
}

/// One line of evidence about a class product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub factors: Vec<String>,
    pub target: String,
    /// Exact `κ`, printed as a fraction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<String>,
    /// Pairs `(x, y)` in the first two factor classes with `x·y` equal to
    /// the target representative.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
}

impl Evidence {
    pub fn holds(&self) -> bool {
        (self.kappa.as_deref() != Some("0")) && self.count.is_none_or(|c| c > 0)
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args = format!("{} -> {}", self.factors.join(","), self.target);
        let mut parts = Vec::new();
        if let Some(k) = &self.kappa {
            parts.push(format!("kappa({args}) = {k}"));
        }
        if let Some(c) = self.count {
            parts.push(format!("count({args}) = {c}"));
        }
        f.write_str(&parts.join("; "))
    }
}

/// Width data for one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassWidth {
    pub name: String,
    #[serde(serialize_with = "crate::report::serialize_biguint")]
    pub size: BigUint,
    pub element_order: u64,
    pub width: usize,
    /// Order-`p` classes whose product contains this class.
    pub chain: Vec<String>,
    /// Nonvanishing evidence for the upper bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<Evidence>,
    /// Vanishing evidence for the lower bound (only for width at least 3).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lower: Vec<Evidence>,
}

/// The result of [`p_width`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthCertificate {
    pub group: String,
    #[serde(serialize_with = "crate::report::serialize_biguint")]
    pub order: BigUint,
    pub prime: u64,
    pub method: Method,
    pub width: usize,
    pub identity_width: usize,
    /// Layer 1.
    pub generating_classes: Vec<String>,
    pub single_class: bool,
    pub classes: Vec<ClassWidth>,
    /// Nontrivial classes outside the square of layer 1.
    pub outside_square: Vec<String>,
    /// Class indices in each layer `S_1, S_2, …`.
    #[serde(skip)]
    pub layers: Vec<Vec<usize>>,
}

impl WidthCertificate {
    pub fn class(&self, name: &str) -> Option<&ClassWidth> {
        self.classes.iter().find(|c| c.name == name)
    }

    /// Per-class widths in class order.
    pub fn widths(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.width).collect()
    }
}

/// Memoised pairwise supports.
struct Supports<'a> {
    src: Source<'a>,
    method: Method,
    engine: Option<KappaEngine<'a>>,
    cache: HashMap<(usize, usize), Vec<usize>>,
    spent: u64,
    budget: u64,
}

impl<'a> Supports<'a> {
    fn new(src: Source<'a>, method: Method, budget: u64) -> Result<Self> {
        let engine = match (method.uses_characters(), src.table) {
            (true, Some(t)) => Some(KappaEngine::new(t)?),
            _ => None,
        };
        Ok(Supports { src, method, engine, cache: HashMap::new(), spent: 0, budget })
    }

    fn key(a: usize, b: usize) -> (usize, usize) {
        (a.min(b), a.max(b))
    }

    /// Fills the cache for all the given pairs, in parallel.
    fn prefetch(&mut self, pairs: &[(usize, usize)]) -> Result<()> {
        let todo: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(a, b)| Self::key(a, b))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|k| !self.cache.contains_key(k))
            .collect();
        if self.method.uses_counting() {
            let (_, d) = self.src.group.expect("checked");
            for &(a, b) in &todo {
                self.spent += d.size(a).min(d.size(b)) * d.len() as u64;
            }
            if self.spent > self.budget {
                return Err(Error::Budget { needed: self.spent, budget: self.budget });
            }
        }
        let results: Vec<Result<Vec<usize>>> = todo.par_iter().map(|&(a, b)| self.compute(a, b)).collect();
        for (k, r) in todo.into_iter().zip(results) {
            self.cache.insert(k, r?);
        }
        Ok(())
    }

    fn compute(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        let by_chars = match &self.engine {
            Some(e) => Some(e.product_support(a, b)?),
            None => None,
        };
        let by_count = match (self.method.uses_counting(), self.src.group) {
            (true, Some((g, d))) => Some(counting_support(g, d, a, b)),
            _ => None,
        };
        match (by_chars, by_count) {
            (Some(x), Some(y)) if x != y => Err(Error::CharacterTable(format!(
                "character and counting supports of {}·{} disagree",
                self.src.name(a),
                self.src.name(b)
            ))),
            (Some(x), _) | (None, Some(x)) => Ok(x),
            (None, None) => unreachable!(),
        }
    }

    fn get(&self, a: usize, b: usize) -> &[usize] {
        &self.cache[&Self::key(a, b)]
    }
}

/// Layer structure: widths and the class pair each class was first reached
/// through.
struct Layers {
    gens: Vec<usize>,
    width: Vec<Option<usize>>,
    parent: Vec<Option<(usize, usize)>>,
    sets: Vec<Vec<usize>>,
}

fn layers(src: Source<'_>, sup: &mut Supports<'_>, gens: Vec<usize>, cap: usize) -> Result<Layers> {
    let k = src.len();
    let mut width = vec![None; k];
    let mut parent = vec![None; k];
    width[0] = Some(0);
    for &c in &gens {
        width[c] = Some(1);
    }
    let mut sets: Vec<Vec<usize>> = vec![gens.clone()];
    // The square of layer 1 is always reported, so build at least two layers.
    while width.iter().any(Option::is_none) || sets.len() < 2 {
        let layer = sets.len() + 1;
        if layer > cap {
            let missing = (0..k).find(|&x| width[x].is_none()).expect("some class is missing");
            return Err(Error::WidthCap { cap, class: src.name(missing) });
        }
        let prev = sets.last().expect("nonempty").clone();
        let pairs: Vec<(usize, usize)> =
            prev.iter().flat_map(|&d| gens.iter().map(move |&c| (d, c))).collect();
        sup.prefetch(&pairs)?;
        let mut next = BTreeSet::new();
        for &(d, c) in &pairs {
            for &x in sup.get(d, c) {
                next.insert(x);
                if width[x].is_none() {
                    width[x] = Some(layer);
                    parent[x] = Some((d, c));
                }
            }
        }
        let next: Vec<usize> = next.into_iter().collect();
        // S_k is determined by S_{k-1}; a repeat two steps back means the
        // sequence cycles without reaching the missing classes.
        if sets.len() >= 2 && next == sets[sets.len() - 2] && width.iter().any(Option::is_none) {
            let missing = (0..k).find(|&x| width[x].is_none()).expect("some class is missing");
            return Err(Error::InvalidArgument(format!(
                "elements of the chosen order do not generate the group (class {} is never reached)",
                src.name(missing)
            )));
        }
        sets.push(next);
    }
    Ok(Layers { gens, width, parent, sets })
}

impl Layers {
    fn width(&self, x: usize) -> usize {
        self.width[x].expect("all reached")
    }

    /// Order-`p` classes `C_1, …, C_k` with `x ⊆ C_1⋯C_k`.
    fn chain(&self, x: usize) -> Vec<usize> {
        match self.width(x) {
            0 => Vec::new(),
            1 => vec![x],
            _ => {
                let (d, c) = self.parent[x].expect("reached via a product");
                let mut out = self.chain(d);
                out.push(c);
                out
            }
        }
    }
}

fn check_prime(src: &Source<'_>, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = src.order();
    if &order % p != BigUint::from(0u32) {
        return Err(Error::PrimeDoesNotDivide { p, order: order.to_string() });
    }
    Ok(())
}

fn generating_classes(src: &Source<'_>, p: u64, single: Option<usize>) -> Result<Vec<usize>> {
    let all: Vec<usize> = (0..src.len()).filter(|&i| src.element_order(i) == p).collect();
    match single {
        None => Ok(all),
        Some(c) if all.contains(&c) => Ok(vec![c]),
        Some(c) => Err(Error::InvalidArgument(format!(
            "class {} does not consist of elements of order {p}",
            src.name(c)
        ))),
    }
}

/// `w_p(G)` with per-class widths and evidence.
pub fn p_width(src: Source<'_>, p: u64, opts: &WidthOptions) -> Result<WidthCertificate> {
    src.check(opts.method)?;
    check_prime(&src, p)?;
    let gens = generating_classes(&src, p, opts.single_class)?;
    let mut sup = Supports::new(src, opts.method, opts.budget)?;
    let lay = layers(src, &mut sup, gens, opts.cap)?;

    let names = |v: &[usize]| v.iter().map(|&c| src.name(c)).collect::<Vec<_>>();
    let k = src.len();
    let mut classes = Vec::with_capacity(k);
    for x in 0..k {
        let w = lay.width(x);
        let chain = lay.chain(x);
        let upper = if w >= 2 { Some(upper_evidence(&src, &sup, &lay, x)?) } else { None };
        let lower = if w >= 3 { lower_evidence(&src, &sup, &lay.gens, x)? } else { Vec::new() };
        classes.push(ClassWidth {
            name: src.name(x),
            size: src.size(x),
            element_order: src.element_order(x),
            width: w,
            chain: names(&chain),
            upper,
            lower,
        });
    }
    let width = (1..k).map(|x| lay.width(x)).max().unwrap_or(0);
    let outside: Vec<usize> = (1..k).filter(|x| !lay.sets[1].contains(x)).collect();
    Ok(WidthCertificate {
        group: src.group_name(),
        order: src.order(),
        prime: p,
        method: opts.method,
        width,
        identity_width: 0,
        generating_classes: names(&lay.gens),
        single_class: opts.single_class.is_some(),
        classes,
        outside_square: names(&outside),
        layers: lay.sets,
    })
}

fn evidence(src: &Source<'_>, sup: &Supports<'_>, factors: &[usize], target: usize) -> Result<Evidence> {
    let kappa = match &sup.engine {
        Some(e) => Some(e.kappa(factors, target)?.value.to_string()),
        None => None,
    };
    let count = match (sup.method.uses_counting(), src.group, factors) {
        (true, Some((g, d)), &[a, b]) => Some(count_oracle(g, d, a, b, target, u64::MAX)?),
        _ => None,
    };
    Ok(Evidence {
        factors: factors.iter().map(|&c| src.name(c)).collect(),
        target: src.name(target),
        kappa,
        count,
    })
}

fn upper_evidence(src: &Source<'_>, sup: &Supports<'_>, lay: &Layers, x: usize) -> Result<Evidence> {
    if sup.engine.is_some() {
        evidence(src, sup, &lay.chain(x), x)
    } else {
        // Counting only: the last step of the chain, D·C ⊇ x.
        let (d, c) = lay.parent[x].expect("width at least 2");
        evidence(src, sup, &[d, c], x)
    }
}

fn lower_evidence(src: &Source<'_>, sup: &Supports<'_>, gens: &[usize], x: usize) -> Result<Vec<Evidence>> {
    let mut out = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i..] {
            out.push(evidence(src, sup, &[a, b], x)?);
        }
    }
    Ok(out)
}

/// Width of one element, with an explicit factorisation into elements of
/// order `p` when a group is available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementWidth {
    pub class: String,
    pub width: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip)]
    pub factors: Vec<u32>,
}

/// `w_p(g)` for the element `g` of `g_group`.
pub fn width_of_element(src: Source<'_>, p: u64, g: u32, opts: &WidthOptions) -> Result<ElementWidth> {
    let (grp, data) = src
        .group
        .ok_or_else(|| Error::InvalidArgument("an enumerated group is required".into()))?;
    if g as usize >= grp.len() {
        return Err(Error::InvalidArgument(format!("element index {g} out of range")));
    }
    src.check(opts.method)?;
    check_prime(&src, p)?;
    let gens = generating_classes(&src, p, opts.single_class)?;
    let mut sup = Supports::new(src, opts.method, opts.budget)?;
    let lay = layers(src, &mut sup, gens, opts.cap)?;
    let x = data.class_of(g);
    let factors = factorize(grp, data, &lay, g)?;
    debug_assert_eq!(factors.len(), lay.width(x));
    Ok(ElementWidth {
        class: src.name(x),
        width: lay.width(x),
        witness: Some(factors.iter().map(|&f| grp.describe(f)).collect()),
        factors,
    })
}

/// Peels factors off the right along the parent chain: if `g ∈ D·C`, some
/// `c ∈ C` has `g·c⁻¹ ∈ D`.
fn factorize(grp: &FiniteGroup, data: &ClassData, lay: &Layers, g: u32) -> Result<Vec<u32>> {
    let x = data.class_of(g);
    match lay.width(x) {
        0 => Ok(Vec::new()),
        1 => Ok(vec![g]),
        _ => {
            let (d, c) = lay.parent[x].expect("width at least 2");
            let (head, last) = data
                .class(c)
                .members
                .iter()
                .find_map(|&y| {
                    let h = grp.mul(g, grp.inverse(y));
                    (data.class_of(h) == d).then_some((h, y))
                })
                .ok_or_else(|| Error::Witness(format!("no factor in class {} found", data.class(c).name)))?;
            let mut out = factorize(grp, data, lay, head)?;
            out.push(last);
            Ok(out)
        }
    }
}

/// Nontrivial classes outside the square of the order-`p` elements, with
/// the vanishing `κ` values that show it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    pub group: String,
    pub prime: u64,
    pub classes: Vec<String>,
    pub evidence: Vec<Evidence>,
}

pub fn table1_report(table: &CharacterTable, p: u64) -> Result<Table1Report> {
    let src = Source::table(table);
    src.check(Method::Characters)?;
    check_prime(&src, p)?;
    let gens = generating_classes(&src, p, None)?;
    let mut sup = Supports::new(src, Method::Characters, u64::MAX)?;
    let pairs: Vec<(usize, usize)> =
        gens.iter().enumerate().flat_map(|(i, &a)| gens[i..].iter().map(move |&b| (a, b))).collect();
    sup.prefetch(&pairs)?;
    let covered: BTreeSet<usize> = pairs.iter().flat_map(|&(a, b)| sup.get(a, b).iter().copied()).collect();
    let outside: Vec<usize> = (1..table.len()).filter(|x| !covered.contains(x)).collect();
    let mut evidence_lines = Vec::new();
    for &x in &outside {
        evidence_lines.extend(lower_evidence(&src, &sup, &gens, x)?);
    }
    Ok(Table1Report {
        group: table.name().to_string(),
        prime: p,
        classes: outside.iter().map(|&x| table.class(x).name.clone()).collect(),
        evidence: evidence_lines,
    })
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
    fn a5_three_width_two() {
        let (g, c, t) = setup("an:5");
        let cert = p_width(Source::both(&g, &c, &t), 3, &WidthOptions::new(Method::Both)).unwrap();
        assert_eq!(cert.width, 2);
        assert_eq!(cert.classes[0].width, 0);
        assert!(cert.outside_square.is_empty());
    }

    #[test]
    fn psl28_three_width_three() {
        let (g, c, t) = setup("psl:2:8");
        let cert = p_width(Source::both(&g, &c, &t), 3, &WidthOptions::new(Method::Both)).unwrap();
        assert_eq!(cert.width, 3);
        assert_eq!(cert.outside_square, vec!["2A".to_string()]);
        let two = cert.class("2A").unwrap();
        assert_eq!(two.width, 3);
        assert!(two.upper.as_ref().unwrap().holds());
        assert!(two.lower.iter().all(|e| e.kappa.as_deref() == Some("0") && e.count == Some(0)));
        let tv = c.class(1).representative;
        let ew = width_of_element(Source::group(&g, &c), 3, tv, &WidthOptions::new(Method::Counting)).unwrap();
        assert_eq!(ew.width, 3);
        let prod = ew.factors.iter().fold(g.identity(), |a, &b| g.mul(a, b));
        assert_eq!(prod, tv);
        assert!(ew.factors.iter().all(|&f| g.element_order(f) == 3));
    }

    #[test]
    fn errors() {
        let (g, c, t) = setup("an:5");
        let src = Source::both(&g, &c, &t);
        let o = WidthOptions::default();
        assert!(matches!(p_width(src, 7, &o), Err(Error::PrimeDoesNotDivide { .. })));
        assert!(matches!(p_width(src, 4, &o), Err(Error::NotPrime(4))));
        assert!(p_width(Source::group(&g, &c), 3, &o).is_err());
        let mut tight = WidthOptions::new(Method::Counting);
        tight.budget = 10;
        assert!(matches!(p_width(src, 3, &tight), Err(Error::Budget { .. })));
    }

    #[test]
    fn non_generating_is_reported() {
        let g = FiniteGroup::from_spec(&"cyclic:6".parse().unwrap(), 100).unwrap();
        let c = conjugacy_classes(&g);
        let r = p_width(Source::group(&g, &c), 3, &WidthOptions::new(Method::Counting));
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }
}
