//! Small integer helpers: primality, factorisation, modular powers, orders.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut upper: Vec<u64> = out.iter().rev().map(|d| n / d).filter(|&d| d * d != n).collect();
    out.append(&mut upper);
    out
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse modulo a prime via Fermat.
pub fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Multiplicative order of `a` modulo `m`; `None` when `gcd(a, m) != 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if a.gcd(&m) != 1 {
        return None;
    }
    let lambda = euler_phi(m);
    let mut order = lambda;
    for q in prime_divisors(lambda) {
        while order.is_multiple_of(q) && mod_pow(a, order / q, m) == 1 {
            order /= q;
        }
    }
    Some(order)
}

/// Least primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    (1..p)
        .find(|&g| multiplicative_order(g, p) == Some(p - 1))
        .expect("every prime has a primitive root")
}

pub fn is_perfect_square(n: u64) -> bool {
    let r = integer_sqrt(n);
    r * r == n
}

pub fn integer_sqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.saturating_mul(x) > n {
        x -= 1;
    }
    while (x + 1).saturating_mul(x + 1) <= n {
        x += 1;
    }
    x
}

pub fn lcm_all<I: IntoIterator<Item = u64>>(it: I) -> u64 {
    it.into_iter().fold(1, |acc, x| acc.lcm(&x))
}

/// Prime power decomposition `q = l^k`, if `q` is one.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let ps = prime_divisors(q);
    if ps.len() != 1 {
        return None;
    }
    let l = ps[0];
    let mut k = 0;
    let mut r = q;
    while r > 1 {
        r /= l;
        k += 1;
    }
    Some((l, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_orders() {
        assert!(is_prime(2521));
        assert!(!is_prime(841));
        assert_eq!(prime_divisors(95040), vec![2, 3, 5, 11]);
        assert_eq!(euler_phi(840), 192);
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(2, 11), Some(10));
        assert_eq!(multiplicative_order(6, 9), None);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(12), None);
        assert!(is_perfect_square(4) && !is_perfect_square(2));
    }
}
