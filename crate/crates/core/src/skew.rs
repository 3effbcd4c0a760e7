//! Skew-morphisms of cyclic groups and the constructive families for `Z_{p^e}`.
//!
//! A skew-morphism of `Z_n` is a permutation `f` fixing 0 together with a power
//! function `π` such that `f(x + y) = f(x) + f^{π(x)}(y)` for all `x, y`.
//!
//! The families are built from three kinds of maps on `Z_{p^e}`:
//!
//! * `a(x) = (p+1)x`, an automorphism of order `p^{e-1}`;
//! * `b(x) = u·x` with `u` the canonical unit of order `p - 1`
//!   (see [`canonical_b_unit`]);
//! * `b_j(x) = 1 + (p+1)^j + … + (p+1)^{(x-1)j}`, the unique permutation fixing
//!   0 with `b_j t b_j⁻¹ = t a^j`.
//!
//! Then `s_{i,j} = b_j⁻¹ a^i b_j` and `s_{i,j,k,l} = (b_l b_j)⁻¹ a^i b^k (b_l b_j)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{closure_with_cap, mult_map, Permutation, DEFAULT_CLOSURE_CAP};
use crate::zmod::{canonical_b_unit, euler_phi, gcd, lcm, pow_mod, Modulus, Unit};

/// Exponents `π(x)`, reduced into `[0, order)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerFunction {
    order: u64,
    values: Vec<u64>,
}

impl PowerFunction {
    /// The order of the skew-morphism; values are residues modulo it.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, x: u32) -> u64 {
        self.values[x as usize]
    }
}

/// Solves for the power function of `f`, or returns `None` when `f` is not a
/// skew-morphism.
///
/// For each `x` the map `y ↦ f(x+y) - f(x)` has to be a power `f^k`. Each cycle of
/// `f` pins `k` modulo its length, and the cycle lengths have lcm equal to the
/// order, so `k` is unique modulo the order. The cycle through 1 is resolved
/// first, which is the `y = 1` equation `f(x+1) - f(x) = f^k(1)`.
pub fn compute_power_function(f: &Permutation) -> Result<Option<PowerFunction>> {
    let n = f.degree();
    if n == 0 {
        return Err(Error::OutOfRange("empty permutation".into()));
    }
    if f.apply(0) != 0 {
        return Err(Error::DoesNotFixZero(f.apply(0)));
    }
    let order = f.try_order().ok_or(Error::OrderOverflow)?;
    let mut cycles = f.cycles();
    if n > 1 {
        // cycles start at their least point, so the cycle of 1 starts at 1
        let one = cycles.iter().position(|c| c[0] == 1).expect("1 lies on a cycle");
        cycles.swap(0, one);
    }
    let mut cycle_of = vec![0usize; n];
    let mut pos = vec![0usize; n];
    for (ci, c) in cycles.iter().enumerate() {
        for (pi, &y) in c.iter().enumerate() {
            cycle_of[y as usize] = ci;
            pos[y as usize] = pi;
        }
    }
    let nn = n as u64;
    let mut values = Vec::with_capacity(n);
    for x in 0..nn {
        let fx = f.apply(x as u32) as u64;
        let shifted = |y: u32| -> u32 {
            let fxy = f.apply(((x + y as u64) % nn) as u32) as u64;
            ((fxy + nn - fx) % nn) as u32
        };
        // k ≡ residue (mod modulus)
        let mut residue = 0u64;
        let mut modulus = 1u64;
        for (ci, c) in cycles.iter().enumerate() {
            let len = c.len();
            let z = shifted(c[0]);
            if cycle_of[z as usize] != ci {
                return Ok(None);
            }
            let r = pos[z as usize];
            if c.iter().enumerate().any(|(p0, &y)| shifted(y) != c[(p0 + r) % len]) {
                return Ok(None);
            }
            match combine_congruences(residue, modulus, r as u64, len as u64) {
                Some((res, m)) => {
                    residue = res;
                    modulus = m;
                }
                None => return Ok(None),
            }
        }
        debug_assert_eq!(modulus, order);
        values.push(residue % order);
    }
    Ok(Some(PowerFunction { order, values }))
}

/// Combines `k ≡ r1 (mod m1)` and `k ≡ r2 (mod m2)` for non-coprime moduli.
fn combine_congruences(r1: u64, m1: u64, r2: u64, m2: u64) -> Option<(u64, u64)> {
    let g = gcd(m1, m2);
    if r1 % g != r2 % g {
        return None;
    }
    let m = lcm(m1, m2)?;
    // k = r1 + m1·s with m1·s ≡ r2 - r1 (mod m2)
    let (m1g, m2g) = (m1 / g, m2 / g);
    let diff = ((r2 as i128 - r1 as i128) / g as i128).rem_euclid(m2g as i128) as u128;
    let s = if m2g == 1 { 0 } else { diff * mod_inverse(m1g % m2g, m2g)? as u128 % m2g as u128 };
    let k = (r1 as u128 + m1 as u128 * s) % m as u128;
    Some((k as u64, m))
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

/// Checks the skew-morphism definition directly.
///
/// Permutations whose order does not fit in 64 bits are reported as `false`.
pub fn verify_definition(f: &Permutation) -> bool {
    f.degree() > 0 && f.apply(0) == 0 && matches!(compute_power_function(f), Ok(Some(_)))
}

/// Checks `f(0) = 0` and `|⟨t, f⟩| = n·|f|`, with the default closure cap.
pub fn verify_criterion(f: &Permutation) -> Result<bool> {
    verify_criterion_with_cap(f, DEFAULT_CLOSURE_CAP)
}

pub fn verify_criterion_with_cap(f: &Permutation, cap: usize) -> Result<bool> {
    if f.degree() == 0 || f.apply(0) != 0 {
        return Ok(false);
    }
    let n = f.degree();
    let Some(target) = f.try_order().and_then(|d| d.checked_mul(n as u64)) else {
        return Err(Error::OrderOverflow);
    };
    // ⟨t⟩ ∩ ⟨f⟩ = 1 because f fixes 0, so |⟨t, f⟩| ≥ n·|f| and the search can
    // stop as soon as it passes that size.
    let limit = (target.min(usize::MAX as u64) as usize).min(cap);
    match closure_with_cap(&[Permutation::rotation(n), f.clone()], limit) {
        Ok(g) => Ok(g.order() as u64 == target),
        Err(Error::ClosureCapExceeded { .. }) if limit as u64 == target => Ok(false),
        Err(e) => Err(e),
    }
}

/// A permutation together with its power function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMorphism {
    perm: Permutation,
    pi: PowerFunction,
}

impl SkewMorphism {
    pub fn new(perm: Permutation) -> Result<Self> {
        match compute_power_function(&perm)? {
            Some(pi) => Ok(SkewMorphism { perm, pi }),
            None => Err(Error::NotSkewMorphism),
        }
    }

    pub fn identity(n: usize) -> Self {
        SkewMorphism::new(Permutation::identity(n)).expect("the identity is a skew-morphism")
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn pi(&self) -> &PowerFunction {
        &self.pi
    }

    pub fn order(&self) -> u64 {
        self.pi.order
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.perm.apply(x)
    }

    /// Power function constant 1 (or order 1), i.e. a group automorphism.
    pub fn is_automorphism(&self) -> bool {
        self.pi.order == 1 || self.pi.values.iter().all(|&v| v == 1)
    }

    pub fn into_perm(self) -> Permutation {
        self.perm
    }
}

/// `x ↦ (p+1)^i x`.
pub fn a_power(i: u64, m: &Modulus) -> Permutation {
    mult_map(&Unit::new(pow_mod(m.p() + 1, i, m) as u64, *m).expect("(p+1)^i is a unit"))
}

/// `b_j(x) = Σ_{r<x} (p+1)^{jr} mod p^e`, with `x` read in `[0, n)`.
pub fn b_map(j: u64, m: &Modulus) -> Result<Permutation> {
    if m.e() >= 1 && j >= m.p_pow(m.e() - 1) {
        return Err(Error::OutOfRange(format!("j = {j} must be below p^(e-1) = {}", m.p_pow(m.e() - 1))));
    }
    let ratio = pow_mod(m.p() + 1, j, m);
    let mut images = Vec::with_capacity(m.n() as usize);
    let (mut sum, mut term) = (0u32, 1u32);
    for _ in 0..m.n() {
        images.push(sum);
        sum = m.add(sum, term);
        term = m.mul(term, ratio);
    }
    let b = Permutation::from_images(images)?;
    debug_assert_eq!(
        Permutation::rotation(m.n() as usize).conjugate(&b).unwrap(),
        Permutation::rotation(m.n() as usize).comp(&a_power(j, m))
    );
    Ok(b)
}

fn require_e_at_least_two(m: &Modulus) -> Result<()> {
    if m.e() < 2 {
        return Err(Error::OutOfRange(format!("the families need e >= 2, got e = {}", m.e())));
    }
    Ok(())
}

/// Exponent `c` with `p^c = gcd(i, p^{e-2})`, using `gcd(0, m) = m`.
pub fn c_exponent(i: u64, m: &Modulus) -> u32 {
    let g = gcd(i, m.p_pow(m.e() - 2));
    let mut c = 0;
    let mut x = g;
    while x.is_multiple_of(m.p() as u64) && x > 1 {
        x /= m.p() as u64;
        c += 1;
    }
    c
}

/// `s_{i,j} = b_j⁻¹ a^i b_j` for `0 <= i, j < p^{e-1}`.
pub fn s_ij(i: u64, j: u64, m: &Modulus) -> Result<SkewMorphism> {
    require_e_at_least_two(m)?;
    let bound = m.p_pow(m.e() - 1);
    if i >= bound || j >= bound {
        return Err(Error::OutOfRange(format!("i = {i}, j = {j} must be below p^(e-1) = {bound}")));
    }
    let bj = b_map(j, m)?;
    let perm = bj.inverse().comp(&a_power(i, m).comp(&bj));
    let s = SkewMorphism::new(perm).map_err(|e| consistency(format!("s_{{{i},{j}}}"), e))?;
    let expected = bound / gcd(i, bound);
    if s.order() != expected {
        return Err(Error::Consistency(format!("s_{{{i},{j}}} has order {} not {expected}", s.order())));
    }
    Ok(s)
}

fn consistency(what: String, e: Error) -> Error {
    match e {
        Error::NotSkewMorphism => Error::Consistency(format!("{what} is not a skew-morphism")),
        other => other,
    }
}

/// A 4-tuple `(i, j, k, l)` satisfying the admissibility conditions for its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AdmissibleTuple {
    i: u64,
    j: u64,
    k: u64,
    l: u64,
    #[serde(skip)]
    modulus: Modulus,
}

impl AdmissibleTuple {
    pub fn new(i: u64, j: u64, k: u64, l: u64, m: Modulus) -> Result<Self> {
        if !is_admissible(i, j, k, l, &m) {
            return Err(Error::Inadmissible { i, j, k, l });
        }
        Ok(AdmissibleTuple { i, j, k, l, modulus: m })
    }

    pub fn i(&self) -> u64 {
        self.i
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn as_array(&self) -> [u64; 4] {
        [self.i, self.j, self.k, self.l]
    }

    /// `p^{e-1}(p-1) / (gcd(i, p^{e-1}) gcd(k, p-1))`.
    pub fn expected_order(&self) -> u64 {
        let m = &self.modulus;
        let pe1 = m.p_pow(m.e() - 1);
        let q = m.p() as u64 - 1;
        pe1 * q / (gcd(self.i, pe1) * gcd(self.k, q))
    }
}

impl fmt::Display for AdmissibleTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.i, self.j, self.k, self.l)
    }
}

/// The admissibility conditions:
///
/// * `i, l < p^{e-1}`, `k <= p-2`, `j < p^{e-2-c}` where `p^c = gcd(i, p^{e-2})`;
/// * if `i = 0` or `k = 0` then `l = 0`;
/// * if `i != 0` and `k != 0` then `p^c | j` and `p^{max(c, e-2-c)} | l`.
///
/// Always false for `e < 2`.
pub fn is_admissible(i: u64, j: u64, k: u64, l: u64, m: &Modulus) -> bool {
    if m.e() < 2 {
        return false;
    }
    let e = m.e();
    let p = m.p() as u64;
    let bound = m.p_pow(e - 1);
    if i >= bound || l >= bound || k > p - 2 {
        return false;
    }
    let c = c_exponent(i, m);
    if j >= m.p_pow(e - 2 - c) {
        return false;
    }
    if (i == 0 || k == 0) && l != 0 {
        return false;
    }
    if i != 0 && k != 0 && (!j.is_multiple_of(m.p_pow(c)) || !l.is_multiple_of(m.p_pow(c.max(e - 2 - c)))) {
        return false;
    }
    true
}

/// Every admissible tuple for `m`, in lexicographic `(i, j, k, l)` order.
/// Empty for `e < 2`.
pub fn admissible_tuples(m: Modulus) -> impl Iterator<Item = AdmissibleTuple> {
    let e = m.e();
    let p = m.p() as u64;
    let i_bound = if e >= 2 { m.p_pow(e - 1) } else { 0 };
    (0..i_bound).flat_map(move |i| {
        let c = c_exponent(i, &m);
        let j_bound = m.p_pow(e - 2 - c);
        let pc = m.p_pow(c);
        let l_step = m.p_pow(c.max(e - 2 - c));
        (0..j_bound).flat_map(move |j| {
            (0..p - 1).filter(move |&k| i == 0 || k == 0 || j % pc == 0).flat_map(move |k| {
                let l_count = if i == 0 || k == 0 { 1 } else { i_bound / l_step };
                (0..l_count).map(move |r| AdmissibleTuple { i, j, k, l: r * l_step, modulus: m })
            })
        })
    })
}

/// `s_{i,j,k,l} = (b_l b_j)⁻¹ a^i b^k (b_l b_j)` with `b` the canonical unit of order `p - 1`.
pub fn s_ijkl(tup: &AdmissibleTuple) -> Result<SkewMorphism> {
    let m = tup.modulus;
    require_e_at_least_two(&m)?;
    if !is_admissible(tup.i, tup.j, tup.k, tup.l, &m) {
        return Err(Error::Inadmissible { i: tup.i, j: tup.j, k: tup.k, l: tup.l });
    }
    let perm = s_ijkl_perm(tup, &canonical_b_unit(&m));
    let s = SkewMorphism::new(perm).map_err(|e| consistency(format!("s_{tup}"), e))?;
    if s.order() != tup.expected_order() {
        return Err(Error::Consistency(format!(
            "s_{tup} has order {} but the order formula gives {}",
            s.order(),
            tup.expected_order()
        )));
    }
    Ok(s)
}

fn s_ijkl_perm(tup: &AdmissibleTuple, b_unit: &Unit) -> Permutation {
    let m = tup.modulus;
    let bj = b_map(tup.j, &m).expect("admissible j is in range");
    let bl = b_map(tup.l, &m).expect("admissible l is in range");
    let scale = m.mul(pow_mod(m.p() + 1, tup.i, &m), b_unit.pow(tup.k).value());
    let linear = mult_map(&Unit::new(scale as u64, m).expect("product of units"));
    // conjugate a^i b^k by b_l b_j; the product read literally is not a
    // skew-morphism once l != 0 (e.g. (1,0,1,2) at n = 9)
    let outer = bl.comp(&bj);
    outer.inverse().comp(&linear.comp(&outer))
}

/// The admissible tuple whose `s_{i,j,k,l}` equals `s`.
///
/// Candidates are tried lexicographically, skipping tuples whose order formula
/// disagrees with `|s|`.
pub fn classify(s: &SkewMorphism, m: &Modulus) -> Result<AdmissibleTuple> {
    require_e_at_least_two(m)?;
    if s.degree() != m.n() as usize {
        return Err(Error::DegreeMismatch { left: s.degree(), right: m.n() as usize });
    }
    let b_unit = canonical_b_unit(m);
    admissible_tuples(*m)
        .filter(|t| t.expected_order() == s.order())
        .find(|t| s_ijkl_perm(t, &b_unit) == s.perm)
        .ok_or(Error::NotClassifiable)
}

/// The product skew-morphism on `Z_{n1 n2} ≅ Z_{n1} × Z_{n2}`, acting as `s1` on
/// the first coordinate and `s2` on the second.
///
/// Requires `gcd(n1, n2) = gcd(n1, φ(n2)) = gcd(φ(n1), n2) = 1`.
pub fn crt_product(s1: &SkewMorphism, s2: &SkewMorphism) -> Result<Permutation> {
    let (n1, n2) = (s1.degree() as u64, s2.degree() as u64);
    for (what, a, b) in
        [("gcd(n1, n2)", n1, n2), ("gcd(n1, phi(n2))", n1, euler_phi(n2)), ("gcd(phi(n1), n2)", euler_phi(n1), n2)]
    {
        if gcd(a, b) != 1 {
            return Err(Error::HypothesisViolated(format!("{what} = {} for n1 = {n1}, n2 = {n2}", gcd(a, b))));
        }
    }
    let n = n1
        .checked_mul(n2)
        .filter(|&n| n <= u32::MAX as u64)
        .ok_or_else(|| Error::OutOfRange(format!("{n1} * {n2} does not fit in 32 bits")))?;
    let mut from_pair = vec![0u32; n as usize];
    for z in 0..n {
        from_pair[((z % n1) * n2 + z % n2) as usize] = z as u32;
    }
    let images = (0..n)
        .map(|x| {
            let u = s1.apply((x % n1) as u32) as u64;
            let v = s2.apply((x % n2) as u32) as u64;
            from_pair[(u * n2 + v) as usize]
        })
        .collect();
    let product = Permutation::from_images(images)?;
    if !verify_definition(&product) {
        return Err(Error::Consistency("CRT product failed the skew-morphism check".into()));
    }
    Ok(product)
}
