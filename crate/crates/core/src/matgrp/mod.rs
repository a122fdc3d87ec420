//! Matrix groups over small finite fields and the group-spec mini-language.
//!
//! | spec          | group                                   |
//! |---------------|-----------------------------------------|
//! | `sl:n:q`      | SL_n(q)                                 |
//! | `sp:n:q`      | Sp_n(q), `n` even                       |
//! | `su:3:q`      | SU_3(q)                                 |
//! | `gu:3:q`      | GU_3(q)                                 |
//! | `psl:n:q` …   | central quotient of the above (`psl`, `psp`, `psu`) |
//! | `an:n`, `sn:n`| alternating and symmetric groups        |
//! | `cyclic:n`    | cyclic group generated by an `n`-cycle  |
//! | `m11`, `m12`, `sz8` | bundled permutation generators    |
//! | `file:<path>` | a generator file                        |

pub mod artin;
pub mod classical;
pub mod field;
pub mod matrix;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow};
use serde::{Serialize, Serializer};

pub use artin::{artin_scan, is_primitive_root, ArtinEntry};
pub use classical::transvection;
pub use field::FiniteField;
pub use matrix::Matrix;

use crate::error::{Error, Result};
use crate::numtheory;
use crate::perm::Permutation;

const M11_GENS: &str = include_str!("../../data/m11.gens");
const M12_GENS: &str = include_str!("../../data/m12.gens");
const SZ8_GENS: &str = include_str!("../../data/sz8.gens");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classical {
    Sl,
    Sp,
    Su,
    Gu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Named {
    M11,
    M12,
    Sz8,
}

/// A parsed group description.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Classical {
        family: Classical,
        n: usize,
        q: u64,
        projective: bool,
    },
    Alternating(usize),
    Symmetric(usize),
    Cyclic(usize),
    Named(Named),
    File(PathBuf),
}

/// Generators produced by [`build_group`].
#[derive(Clone, Debug)]
pub enum Generators {
    Matrices { n: usize, gens: Vec<Matrix> },
    Permutations { degree: usize, gens: Vec<Permutation> },
}

impl GroupSpec {
    pub fn sl(n: usize, q: u64) -> Self {
        GroupSpec::Classical { family: Classical::Sl, n, q, projective: false }
    }

    pub fn sp(n: usize, q: u64) -> Self {
        GroupSpec::Classical { family: Classical::Sp, n, q, projective: false }
    }

    pub fn psl(n: usize, q: u64) -> Self {
        GroupSpec::Classical { family: Classical::Sl, n, q, projective: true }
    }

    pub fn psu(n: usize, q: u64) -> Self {
        GroupSpec::Classical { family: Classical::Su, n, q, projective: true }
    }

    /// Whether the group is built as a quotient by its center.
    pub fn is_projective(&self) -> bool {
        matches!(self, GroupSpec::Classical { projective: true, .. })
    }

    /// Group order from the classical formulas; `None` for generator files.
    pub fn order(&self) -> Option<BigUint> {
        let big = |x: u64| BigUint::from(x);
        Some(match *self {
            GroupSpec::Classical { family, n, q, projective } => {
                let qb = big(q);
                let (full, center) = match family {
                    Classical::Sl => {
                        let mut o: BigUint = Pow::pow(&qb, (n * (n - 1) / 2) as u32);
                        for i in 2..=n as u32 {
                            o *= Pow::pow(&qb, i) - 1u32;
                        }
                        (o, (n as u64).gcd(&(q - 1)))
                    }
                    Classical::Sp => {
                        let m = (n / 2) as u32;
                        let mut o: BigUint = Pow::pow(&qb, m * m);
                        for i in 1..=m {
                            o *= Pow::pow(&qb, 2 * i) - 1u32;
                        }
                        (o, 2u64.gcd(&(q - 1)))
                    }
                    Classical::Su | Classical::Gu => {
                        let mut o = Pow::pow(&qb, 3u32) * (&qb * &qb - 1u32) * (Pow::pow(&qb, 3u32) + 1u32);
                        if family == Classical::Gu {
                            o *= &qb + 1u32;
                        }
                        (o, 3u64.gcd(&(q + 1)))
                    }
                };
                if projective {
                    full / big(center)
                } else {
                    full
                }
            }
            GroupSpec::Alternating(n) => factorial(n) / big(2).min(factorial(n)),
            GroupSpec::Symmetric(n) => factorial(n),
            GroupSpec::Cyclic(n) => big(n as u64),
            GroupSpec::Named(Named::M11) => big(7920),
            GroupSpec::Named(Named::M12) => big(95040),
            GroupSpec::Named(Named::Sz8) => big(29120),
            GroupSpec::File(_) => return None,
        })
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::UnsupportedGroup(msg));
        match *self {
            GroupSpec::Classical { family, n, q, .. } => {
                if numtheory::prime_power(q).is_none() {
                    return bad(format!("{self}: {q} is not a prime power"));
                }
                match family {
                    Classical::Sl if n < 2 => bad(format!("{self}: rank must be at least 2")),
                    Classical::Sp if n < 2 || n % 2 == 1 => {
                        bad(format!("{self}: symplectic groups need an even dimension"))
                    }
                    Classical::Su | Classical::Gu if n != 3 => {
                        bad(format!("{self}: unitary groups are implemented for n = 3 only"))
                    }
                    Classical::Su | Classical::Gu if q * q > 256 => {
                        bad(format!("{self}: F_(q^2) must have at most 256 elements"))
                    }
                    _ if q > 256 => bad(format!("{self}: fields are limited to 256 elements")),
                    _ => Ok(()),
                }
            }
            GroupSpec::Alternating(n) | GroupSpec::Symmetric(n) | GroupSpec::Cyclic(n) => {
                if n == 0 || n > 256 {
                    bad(format!("{self}: degree must be in 1..=256"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Classical { family, n, q, projective } => {
                let p = if *projective { "p" } else { "" };
                let fam = match family {
                    Classical::Sl => "sl",
                    Classical::Sp => "sp",
                    Classical::Su => "su",
                    Classical::Gu => "gu",
                };
                write!(f, "{p}{fam}:{n}:{q}")
            }
            GroupSpec::Alternating(n) => write!(f, "an:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "sn:{n}"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Named(Named::M11) => write!(f, "m11"),
            GroupSpec::Named(Named::M12) => write!(f, "m12"),
            GroupSpec::Named(Named::Sz8) => write!(f, "sz8"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

const FAMILIES: &str = "sl:n:q, sp:n:q, su:3:q, gu:3:q, psl:n:q, psp:n:q, psu:3:q, \
                        an:n, sn:n, cyclic:n, m11, m12, sz8, file:<path>";

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(GroupSpec::File(PathBuf::from(path)));
        }
        let unknown = || {
            Error::UnsupportedGroup(format!("unknown group spec {s:?}; available: {FAMILIES}"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<u64>().map_err(|_| unknown());
        let spec = match parts.as_slice() {
            ["m11"] => GroupSpec::Named(Named::M11),
            ["m12"] => GroupSpec::Named(Named::M12),
            ["sz8"] => GroupSpec::Named(Named::Sz8),
            ["an", n] => GroupSpec::Alternating(num(n)? as usize),
            ["sn", n] => GroupSpec::Symmetric(num(n)? as usize),
            ["cyclic", n] => GroupSpec::Cyclic(num(n)? as usize),
            [fam, n, q] => {
                let (projective, base) = match fam.strip_prefix('p') {
                    Some(rest) if !rest.is_empty() && *fam != "p" => (true, rest),
                    _ => (false, *fam),
                };
                let family = match base {
                    "sl" => Classical::Sl,
                    "sp" => Classical::Sp,
                    "su" => Classical::Su,
                    "gu" if !projective => Classical::Gu,
                    _ => return Err(unknown()),
                };
                GroupSpec::Classical { family, n: num(n)? as usize, q: num(q)?, projective }
            }
            _ => return Err(unknown()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses the generator file format: a `degree n` line followed by one
/// permutation per line in cycle notation. Blank lines and `#` comments are
/// ignored.
pub fn parse_generator_file(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty generator file".into()))?;
    let degree = header
        .strip_prefix("degree")
        .and_then(|d| d.trim().parse::<usize>().ok())
        .ok_or_else(|| {
            Error::InvalidArgument(format!("expected `degree <n>` header, found {header:?}"))
        })?;
    if degree == 0 || degree > 256 {
        return Err(Error::InvalidArgument(format!("degree {degree} outside 1..=256")));
    }
    let gens = lines
        .map(|l| Permutation::parse(degree, l))
        .collect::<Result<Vec<_>>>()?;
    Ok((degree, gens))
}

/// Standard generators of the group named by `spec`. The order formula is
/// checked against `bound` before anything is built.
pub fn build_group(spec: &GroupSpec, bound: u64) -> Result<Generators> {
    spec.validate()?;
    if let Some(order) = spec.order() {
        // Projective groups are built from the full linear group.
        let full = match spec {
            GroupSpec::Classical { family, n, q, .. } => GroupSpec::Classical {
                family: *family,
                n: *n,
                q: *q,
                projective: false,
            }
            .order()
            .unwrap_or(order),
            _ => order,
        };
        if full > BigUint::from(bound) {
            return Err(Error::OrderOverBound { order: full.to_string(), bound });
        }
    }
    Ok(match spec {
        GroupSpec::Classical { family, n, q, .. } => {
            let gens = match family {
                Classical::Sl => classical::sl_generators(*n, *q)?,
                Classical::Sp => classical::sp_generators(*n, *q)?,
                Classical::Su => classical::su3_generators(*q)?,
                Classical::Gu => classical::gu3_generators(*q)?,
            };
            Generators::Matrices { n: *n, gens }
        }
        GroupSpec::Alternating(n) => {
            let n = *n;
            let mut gens = Vec::new();
            if n >= 3 {
                gens.push(Permutation::cycle(n, &[1, 2, 3])?);
                if n >= 4 {
                    // An odd-length cycle: (1,…,n) or (2,…,n).
                    let start = if n % 2 == 1 { 1 } else { 2 };
                    let g = Permutation::cycle(n, &(start..=n).collect::<Vec<_>>())?;
                    gens.push(g);
                }
            }
            Generators::Permutations { degree: n, gens }
        }
        GroupSpec::Symmetric(n) => {
            let n = *n;
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(Permutation::cycle(n, &[1, 2])?);
                gens.push(Permutation::cycle(n, &(1..=n).collect::<Vec<_>>())?);
            }
            Generators::Permutations { degree: n, gens }
        }
        GroupSpec::Cyclic(n) => {
            let gens = if *n >= 2 {
                vec![Permutation::cycle(*n, &(1..=*n).collect::<Vec<_>>())?]
            } else {
                Vec::new()
            };
            Generators::Permutations { degree: *n, gens }
        }
        GroupSpec::Named(name) => {
            let text = match name {
                Named::M11 => M11_GENS,
                Named::M12 => M12_GENS,
                Named::Sz8 => SZ8_GENS,
            };
            let (degree, gens) = parse_generator_file(text)?;
            Generators::Permutations { degree, gens }
        }
        GroupSpec::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let (degree, gens) = parse_generator_file(&text)?;
            Generators::Permutations { degree, gens }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        for s in ["sl:4:2", "sp:4:3", "su:3:5", "psu:3:5", "psl:2:8", "gu:3:2", "psp:4:3",
                  "an:7", "sn:5", "cyclic:3", "m11", "m12", "sz8", "file:gens/m11.txt"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        assert!("pgu:3:5".parse::<GroupSpec>().is_err());
        assert!("sp:3:2".parse::<GroupSpec>().is_err());
        assert!("su:4:2".parse::<GroupSpec>().is_err());
        assert!("sl:2:6".parse::<GroupSpec>().is_err());
        let err = "foo:1".parse::<GroupSpec>().unwrap_err().to_string();
        assert!(err.contains("available"));
    }

    #[test]
    fn order_formulas() {
        let o = |s: &str| s.parse::<GroupSpec>().unwrap().order().unwrap();
        assert_eq!(o("sl:4:2"), BigUint::from(20160u32));
        assert_eq!(o("sp:2:3"), BigUint::from(24u32));
        assert_eq!(o("su:3:5"), BigUint::from(378000u32));
        assert_eq!(o("psu:3:5"), BigUint::from(126000u32));
        assert_eq!(o("psl:2:8"), BigUint::from(504u32));
        assert_eq!(o("psl:3:3"), BigUint::from(5616u32));
        assert_eq!(o("an:5"), BigUint::from(60u32));
        assert_eq!(o("an:1"), BigUint::from(1u32));
    }

    #[test]
    fn bound_is_checked_first() {
        let err = build_group(&"sl:5:3".parse().unwrap(), 20_000_000).unwrap_err();
        assert!(matches!(err, Error::OrderOverBound { .. }));
    }
}
