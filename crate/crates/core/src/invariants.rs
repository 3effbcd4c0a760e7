//! Structural properties of skew-morphisms of `Z_{p^e}`, each as a check that
//! reports a [`Violation`] instead of panicking, so test suites can tally them.

use std::fmt;

use crate::perm::{mult_map, Permutation};
use crate::skew::{verify_definition, SkewMorphism};
use crate::zmod::{gcd, multiplicative_order, Modulus, Unit};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub property: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.property, self.detail)
    }
}

type Check = Result<(), Violation>;

fn fail(property: &'static str, detail: String) -> Check {
    Err(Violation { property, detail })
}

/// `Some(i)` when `d = p^i`.
pub fn p_power_exponent(d: u64, p: u32) -> Option<u32> {
    let mut x = d;
    let mut i = 0;
    while x.is_multiple_of(p as u64) {
        x /= p as u64;
        i += 1;
    }
    (x == 1).then_some(i)
}

/// `|s|` divides `n·φ(n)`.
pub fn order_divides_n_phi(s: &SkewMorphism, m: &Modulus) -> Check {
    let bound = m.n() as u64 * m.totient();
    if !bound.is_multiple_of(s.order()) {
        return fail("order divides n*phi(n)", format!("order {} does not divide {bound}", s.order()));
    }
    Ok(())
}

/// An order coprime to `n` forces an automorphism.
pub fn coprime_order_is_automorphism(s: &SkewMorphism, m: &Modulus) -> Check {
    if gcd(s.order(), m.n() as u64) == 1 && !s.is_automorphism() {
        return fail("coprime order implies automorphism", format!("order {} but pi is not constant 1", s.order()));
    }
    Ok(())
}

/// For `|s| = p^i > 1`, every `π(x) ≡ 1 (mod p)`.
pub fn pi_is_one_mod_p(s: &SkewMorphism, m: &Modulus) -> Check {
    let p = m.p() as u64;
    if s.order() > 1 && p_power_exponent(s.order(), m.p()).is_some() {
        if let Some(x) = s.pi().values().iter().position(|v| v % p != 1) {
            return fail("pi = 1 mod p", format!("pi({x}) = {}", s.pi().values()[x]));
        }
    }
    Ok(())
}

/// For `|s|` a power of `p`, `s^p` is again a skew-morphism.
pub fn p_th_power_is_skew(s: &SkewMorphism, m: &Modulus) -> Check {
    if p_power_exponent(s.order(), m.p()).is_some() && !verify_definition(&s.perm().power(m.p() as i64)) {
        return fail("s^p is a skew-morphism", format!("fails for {:?}", s.perm()));
    }
    Ok(())
}

/// For `|s| = p^i`, some automorphism of order `p^i` has the same orbits.
pub fn orbits_match_an_automorphism(s: &SkewMorphism, m: &Modulus) -> Check {
    if p_power_exponent(s.order(), m.p()).is_none() {
        return Ok(());
    }
    let target = s.perm().orbit_partition();
    let found = (1..m.n() as u64)
        .filter_map(|v| Unit::new(v, *m).ok())
        .filter(|u| multiplicative_order(u) == s.order())
        .any(|u| mult_map(&u).orbit_partition() == target);
    if !found {
        return fail("orbits of an automorphism", format!("no unit of order {} matches", s.order()));
    }
    Ok(())
}

/// For `|s| = p^i`, `gcd(s(1) - 1, p^e) = p^{e-i}`.
pub fn fixed_gcd_of_image_of_one(s: &SkewMorphism, m: &Modulus) -> Check {
    let Some(i) = p_power_exponent(s.order(), m.p()) else { return Ok(()) };
    if i > m.e() {
        return fail("gcd(s(1)-1, p^e)", format!("order p^{i} exceeds p^e"));
    }
    let g = gcd(m.sub(s.apply(1), 1) as u64, m.n() as u64);
    if g != m.p_pow(m.e() - i) {
        return fail("gcd(s(1)-1, p^e)", format!("got {g}, expected p^{}", m.e() - i));
    }
    Ok(())
}

/// `s t^x = t^{s(x)} s^{π(x)}` for every `x`.
pub fn commutation_relation(s: &SkewMorphism, m: &Modulus) -> Check {
    let t = Permutation::rotation(m.n() as usize);
    for x in 0..m.n() {
        let lhs = s.perm().compose(&t.power(x as i64)).expect("same degree");
        let rhs = t.power(s.apply(x) as i64).compose(&s.perm().power(s.pi().get(x) as i64)).expect("same degree");
        if lhs != rhs {
            return fail("s t^x = t^s(x) s^pi(x)", format!("fails at x = {x}"));
        }
    }
    Ok(())
}

/// `s_{i,j}(x) ≡ x (mod p·gcd(i, p^{e-1}))` for every `x`.
pub fn sij_fixes_residues(s: &SkewMorphism, i: u64, m: &Modulus) -> Check {
    let modulus = m.p() as u64 * gcd(i, m.p_pow(m.e() - 1));
    for x in 0..m.n() {
        if !(s.apply(x) as u64 + m.n() as u64 - x as u64).is_multiple_of(modulus) {
            return fail("s_ij(x) = x mod p*gcd(i,p^(e-1))", format!("i = {i}, x = {x}"));
        }
    }
    Ok(())
}

/// Every check that applies to an arbitrary skew-morphism of `Z_{p^e}`.
pub fn check_all(s: &SkewMorphism, m: &Modulus) -> Vec<Violation> {
    [
        order_divides_n_phi(s, m),
        coprime_order_is_automorphism(s, m),
        pi_is_one_mod_p(s, m),
        p_th_power_is_skew(s, m),
        orbits_match_an_automorphism(s, m),
        fixed_gcd_of_image_of_one(s, m),
        commutation_relation(s, m),
    ]
    .into_iter()
    .filter_map(Result::err)
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skew::{a_power, s_ij};

    #[test]
    fn p_power_exponent_values() {
        assert_eq!(p_power_exponent(1, 3), Some(0));
        assert_eq!(p_power_exponent(27, 3), Some(3));
        assert_eq!(p_power_exponent(18, 3), None);
    }

    #[test]
    fn automorphisms_pass() {
        let m = Modulus::new(3, 3).unwrap();
        let a = SkewMorphism::new(a_power(1, &m)).unwrap();
        assert!(check_all(&a, &m).is_empty());
    }

    #[test]
    fn detects_wrong_residue_class() {
        let m = Modulus::new(3, 3).unwrap();
        let s = s_ij(1, 1, &m).unwrap();
        assert!(sij_fixes_residues(&s, 1, &m).is_ok());
        // claiming i = 3 demands s(x) ≡ x mod 9, which s_{1,1} does not satisfy
        assert!(sij_fixes_residues(&s, 3, &m).is_err());
    }
}
