use num_bigint::BigUint;
use serde::Serialize;

use super::GroupSpec;
use crate::error::{Error, Result};
use crate::numtheory;

/// Whether `l` generates `(ℤ/p)^*`.
pub fn is_primitive_root(l: u64, p: u64) -> Result<bool> {
    if !numtheory::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 3 {
        return Err(Error::InvalidArgument(format!(
            "the modulus must be an odd prime, got {p}"
        )));
    }
    if l.is_multiple_of(p) {
        return Err(Error::NotCoprime { l, p });
    }
    Ok(numtheory::multiplicative_order(l % p, p) == Some(p - 1))
}

/// One row of [`artin_scan`]: an odd prime `p` with `l` primitive mod `p` and
/// the two groups `SL_{p-1}(l)`, `Sp_{p-1}(l)` attached to it.
#[derive(Clone, Debug, Serialize)]
pub struct ArtinEntry {
    pub p: u64,
    pub sl: GroupSpec,
    pub sp: GroupSpec,
    #[serde(serialize_with = "crate::report::serialize_biguint")]
    pub sl_order: BigUint,
    #[serde(serialize_with = "crate::report::serialize_biguint")]
    pub sp_order: BigUint,
    pub sl_enumerable: bool,
    pub sp_enumerable: bool,
}

/// Odd primes `p <= p_max`, `p != l`, for which `l` is a primitive root.
/// Groups are flagged enumerable when their order is within `bound`.
pub fn artin_scan(l: u64, p_max: u64, bound: u64) -> Result<Vec<ArtinEntry>> {
    if numtheory::is_perfect_square(l) {
        return Err(Error::PerfectSquare(l));
    }
    if !numtheory::is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    let mut out = Vec::new();
    for p in (3..=p_max).filter(|&p| numtheory::is_prime(p) && p != l) {
        if !is_primitive_root(l, p)? {
            continue;
        }
        let n = (p - 1) as usize;
        let sl = GroupSpec::sl(n, l);
        let sp = GroupSpec::sp(n, l);
        let sl_order = sl.order().expect("classical orders are known");
        let sp_order = sp.order().expect("classical orders are known");
        out.push(ArtinEntry {
            p,
            sl_enumerable: sl_order <= BigUint::from(bound),
            sp_enumerable: sp_order <= BigUint::from(bound),
            sl,
            sp,
            sl_order,
            sp_order,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_roots() {
        assert!(is_primitive_root(2, 5).unwrap());
        assert!(!is_primitive_root(2, 7).unwrap());
        assert!(is_primitive_root(2, 11).unwrap());
        assert_eq!(is_primitive_root(2, 9), Err(Error::NotPrime(9)));
        assert_eq!(is_primitive_root(10, 5), Err(Error::NotCoprime { l: 10, p: 5 }));
        assert!(is_primitive_root(1, 2).is_err());
    }

    #[test]
    fn scans() {
        let ps: Vec<u64> = artin_scan(2, 20, 20_000_000).unwrap().iter().map(|e| e.p).collect();
        assert_eq!(ps, vec![3, 5, 11, 13, 19]);
        let ps: Vec<u64> = artin_scan(3, 10, 20_000_000).unwrap().iter().map(|e| e.p).collect();
        assert_eq!(ps, vec![5, 7]);
        assert_eq!(artin_scan(4, 50, 1).unwrap_err(), Error::PerfectSquare(4));
        let rows = artin_scan(2, 5, 20_000_000).unwrap();
        assert!(rows[1].sl_enumerable);
        assert_eq!(rows[1].sl_order, BigUint::from(20160u32));
    }
}
