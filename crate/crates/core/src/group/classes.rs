use std::collections::BTreeMap;

use super::FiniteGroup;
use crate::numtheory;

/// A conjugacy class with its ATLAS-style name.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub name: String,
    /// The member with the least element index.
    pub representative: u32,
    /// Member indices, increasing.
    pub members: Vec<u32>,
    pub element_order: u64,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The conjugacy classes of a group together with power maps and the inverse
/// map.
///
/// Classes are ordered by element order, then by increasing size (so by
/// decreasing centralizer order, as in the ATLAS), then by representative
/// index. Class 0 is the identity. Within one element order the classes are
/// lettered `A`, `B`, … in that order; ties in size are broken by
/// representative index, which need not reproduce the ATLAS letters.
#[derive(Clone, Debug)]
pub struct ClassData {
    group_order: u64,
    exponent: u64,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    inverse: Vec<usize>,
}

/// Partitions `g` into conjugacy classes (orbits of conjugation by the
/// generators).
pub fn conjugacy_classes(g: &FiniteGroup) -> ClassData {
    let n = g.len();
    let mut raw = vec![u32::MAX; n];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    let gens: Vec<(u32, u32)> = g.generators().iter().map(|&s| (s, g.inverse(s))).collect();
    for x in 0..n as u32 {
        if raw[x as usize] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        raw[x as usize] = id;
        let mut members = vec![x];
        let mut head = 0;
        while head < members.len() {
            let y = members[head];
            head += 1;
            for &(s, si) in &gens {
                let z = g.mul(g.mul(si, y), s);
                if raw[z as usize] == u32::MAX {
                    raw[z as usize] = id;
                    members.push(z);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }

    let mut order: Vec<usize> = (0..orbits.len()).collect();
    order.sort_by_key(|&c| {
        let rep = orbits[c][0];
        (g.element_order(rep), orbits[c].len(), rep)
    });
    let mut relabel = vec![0u32; orbits.len()];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new as u32;
    }
    let class_of: Vec<u32> = raw.iter().map(|&c| relabel[c as usize]).collect();

    let mut classes: Vec<ConjugacyClass> = Vec::with_capacity(orbits.len());
    let mut letter_count: BTreeMap<u64, usize> = BTreeMap::new();
    for &old in &order {
        let members = std::mem::take(&mut orbits[old]);
        let rep = members[0];
        let o = g.element_order(rep);
        let k = letter_count.entry(o).or_insert(0);
        let name = format!("{o}{}", letters(*k));
        *k += 1;
        classes.push(ConjugacyClass {
            name,
            representative: rep,
            members,
            element_order: o,
        });
    }

    let exponent = g.exponent();
    let mut power_maps = BTreeMap::new();
    for p in numtheory::prime_divisors(exponent) {
        let map = classes
            .iter()
            .map(|c| class_of[g.pow(c.representative, p) as usize] as usize)
            .collect();
        power_maps.insert(p, map);
    }
    let inverse = classes
        .iter()
        .map(|c| class_of[g.inverse(c.representative) as usize] as usize)
        .collect();

    ClassData {
        group_order: g.order(),
        exponent,
        classes,
        class_of,
        power_maps,
        inverse,
    }
}

/// `A, B, …, Z, AA, AB, …`
fn letters(mut k: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'A' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ASCII letters")
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ConjugacyClass {
        &self.classes[i]
    }

    /// Class index of an element.
    #[inline]
    pub fn class_of(&self, x: u32) -> usize {
        self.class_of[x as usize] as usize
    }

    pub fn size(&self, i: usize) -> u64 {
        self.classes[i].members.len() as u64
    }

    pub fn sizes(&self) -> Vec<u64> {
        (0..self.len()).map(|i| self.size(i)).collect()
    }

    pub fn centralizer_order(&self, i: usize) -> u64 {
        self.group_order / self.size(i)
    }

    pub fn element_orders(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.element_order).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// Class of `x^p` for `x` in class `i`, for primes `p` dividing the exponent.
    pub fn power_map(&self, p: u64) -> Option<&[usize]> {
        self.power_maps.get(&p).map(Vec::as_slice)
    }

    pub fn power_maps(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.power_maps
    }

    /// Class of `x⁻¹` for `x` in class `i`.
    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn inverse_map(&self) -> &[usize] {
        &self.inverse
    }
}

/// Indices of the classes of elements of order exactly `p`; empty when `p`
/// does not divide the group order.
pub fn order_p_classes(data: &ClassData, p: u64) -> Vec<usize> {
    (0..data.len())
        .filter(|&i| data.class(i).element_order == p)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ENUMERATION_BOUND;

    fn classes(spec: &str) -> (FiniteGroup, ClassData) {
        let g = FiniteGroup::from_spec(&spec.parse().unwrap(), DEFAULT_ENUMERATION_BOUND).unwrap();
        let c = conjugacy_classes(&g);
        (g, c)
    }

    #[test]
    fn a5() {
        let (_, c) = classes("an:5");
        assert_eq!(c.names(), ["1A", "2A", "3A", "5A", "5B"]);
        assert_eq!(c.sizes(), [1, 15, 20, 12, 12]);
        assert_eq!(order_p_classes(&c, 5), [3, 4]);
        assert_eq!(order_p_classes(&c, 2), [1]);
        assert!(order_p_classes(&c, 7).is_empty());
        assert_eq!(c.power_map(2).unwrap(), [0, 0, 2, 4, 3]);
        assert_eq!(c.inverse_map(), [0, 1, 2, 3, 4]);
    }

    #[test]
    fn psl28_has_one_class_of_order_three() {
        let (_, c) = classes("psl:2:8");
        assert_eq!(c.len(), 9);
        assert_eq!(order_p_classes(&c, 3).len(), 1);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let (g, c) = classes("cyclic:12");
        assert_eq!(c.len() as u64, g.order());
        assert_eq!(c.exponent(), 12);
    }

    #[test]
    fn class_members_share_cycle_type() {
        let (g, c) = classes("m11");
        assert_eq!(c.sizes().iter().sum::<u64>(), 7920);
        for cl in c.classes() {
            assert_eq!(7920 % cl.size() as u64, 0);
            let t = g.permutation(cl.representative).unwrap().cycle_type();
            for &m in &cl.members {
                assert_eq!(g.permutation(m).unwrap().cycle_type(), t);
                assert_eq!(g.element_order(m), cl.element_order);
            }
        }
    }

    #[test]
    fn letter_sequence() {
        assert_eq!(letters(0), "A");
        assert_eq!(letters(25), "Z");
        assert_eq!(letters(26), "AA");
        assert_eq!(letters(27), "AB");
    }
}
