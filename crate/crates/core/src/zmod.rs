//! Exact arithmetic in the residue ring `Z_{p^e}` for an odd prime `p`.
//!
//! Residues are stored as `u32` and every product is formed in `u64`, so any
//! modulus below `2^32` is supported without overflow.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The modulus `n = p^e` of the ambient cyclic group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Modulus {
    p: u32,
    e: u32,
    n: u32,
}

impl Modulus {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidModulus("exponent must be at least 1".into()));
        }
        if p < 3 || !is_prime(p as u64) {
            return Err(Error::InvalidModulus(format!("{p} is not an odd prime")));
        }
        let n = (p as u64)
            .checked_pow(e)
            .filter(|&n| n <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidModulus(format!("{p}^{e} does not fit in 32 bits")))?;
        Ok(Modulus { p, e, n: n as u32 })
    }

    /// Recovers `(p, e)` from `n`, which must be a power of an odd prime.
    pub fn from_order(n: u32) -> Result<Self> {
        let not_pp = || Error::InvalidModulus(format!("{n} is not a power of an odd prime"));
        if n < 3 || n.is_multiple_of(2) {
            return Err(not_pp());
        }
        let p = smallest_prime_factor(n as u64) as u32;
        let mut rest = n;
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(not_pp());
        }
        Modulus::new(p, e)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `p^k`; `k` must not exceed `e`.
    pub fn p_pow(&self, k: u32) -> u64 {
        debug_assert!(k <= self.e);
        (self.p as u64).pow(k)
    }

    /// `φ(p^e) = (p - 1) p^{e-1}`, the order of the unit group.
    pub fn totient(&self) -> u64 {
        (self.p as u64 - 1) * self.p_pow(self.e - 1)
    }

    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.n as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.n as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.n as u64 - b as u64 % self.n as u64) % self.n as u64) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.n as u64) as u32
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}^{} (n = {})", self.p, self.e, self.n)
    }
}

/// A residue coprime to `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Unit {
    value: u32,
    modulus: Modulus,
}

impl Unit {
    pub fn new(value: u64, modulus: Modulus) -> Result<Self> {
        let r = (value % modulus.n as u64) as u32;
        if r.is_multiple_of(modulus.p) {
            return Err(Error::NotAUnit { value, n: modulus.n as u64 });
        }
        Ok(Unit { value: r, modulus })
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn pow(&self, exp: u64) -> Unit {
        Unit { value: pow_mod(self.value, exp, &self.modulus), modulus: self.modulus }
    }
}

/// `gcd(a, b)` with the convention `gcd(0, m) = m`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// `base^exp mod n` for an arbitrary modulus `n < 2^32`.
pub fn pow_mod_n(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % n;
        }
        b = b * b % n;
        exp >>= 1;
    }
    acc
}

pub fn pow_mod(base: u32, exp: u64, m: &Modulus) -> u32 {
    pow_mod_n(base as u64, exp, m.n as u64) as u32
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let q = smallest_prime_factor(n);
        out.push(q);
        while n.is_multiple_of(q) {
            n /= q;
        }
    }
    out
}

/// Euler's totient of an arbitrary positive integer.
pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n).into_iter().fold(n, |acc, q| acc / q * (q - 1))
}

/// Smallest `d >= 1` with `u^d = 1`.
pub fn multiplicative_order(u: &Unit) -> u64 {
    let m = u.modulus;
    let mut d = m.totient();
    let mut factors = prime_factors(m.p as u64 - 1);
    factors.push(m.p as u64);
    for q in factors {
        while d.is_multiple_of(q) && pow_mod(u.value, d / q, &m) == 1 {
            d /= q;
        }
    }
    d
}

/// Smallest generator of the (cyclic) unit group modulo `p^e`.
pub fn smallest_primitive_root(m: &Modulus) -> Unit {
    let phi = m.totient();
    (2..m.n.max(3) as u64)
        .filter_map(|g| Unit::new(g, *m).ok())
        .find(|g| multiplicative_order(g) == phi)
        .expect("the unit group modulo an odd prime power is cyclic")
}

/// The unit of order `p - 1` used for the automorphism `b`: `g^{p^{e-1}}` where
/// `g` is the smallest primitive root.
pub fn canonical_b_unit(m: &Modulus) -> Unit {
    let u = smallest_primitive_root(m).pow(m.p_pow(m.e - 1));
    debug_assert_eq!(multiplicative_order(&u), m.p as u64 - 1);
    u
}

/// `gcd((p+1)^k - 1, p^e)`, computed directly from the residue.
pub fn gcd_shift(k: u64, m: &Modulus) -> u64 {
    let r = m.sub(pow_mod(m.p + 1, k, m), 1);
    let g = gcd(r as u64, m.n as u64);
    debug_assert_eq!(g, m.p as u64 * gcd(k, m.p_pow(m.e - 1)));
    g
}
