//! Permutations of `{0, …, n-1}` and small permutation-group computations.
//!
//! Products follow the right-to-left convention: `f.compose(&g)` is the map
//! `x ↦ f(g(x))`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::zmod::{gcd, lcm, Modulus, Unit};

/// Default element cap for [`closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A bijection on `{0, …, n-1}` stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl Permutation {
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (x, &y) in images.iter().enumerate() {
            let y = y as usize;
            if y >= n {
                return Err(Error::NotABijection(format!("image {y} of {x} is out of range 0..{n}")));
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::NotABijection(format!("value {y} appears twice")));
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    /// `x ↦ x + 1 (mod n)`.
    pub fn rotation(n: usize) -> Self {
        Permutation { images: (0..n as u32).map(|x| (x + 1) % n as u32).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn into_images(self) -> Vec<u32> {
        self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(())
    }

    /// `x ↦ self(g(x))`.
    pub fn compose(&self, g: &Permutation) -> Result<Permutation> {
        self.check_degree(g)?;
        Ok(self.comp(g))
    }

    #[inline]
    pub(crate) fn comp(&self, g: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), g.degree());
        Permutation { images: g.images.iter().map(|&y| self.images[y as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation { images: inv }
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate(&self, by: &Permutation) -> Result<Permutation> {
        self.check_degree(by)?;
        Ok(by.comp(&self.comp(&by.inverse())))
    }

    /// Cycle decomposition, each cycle starting at its smallest point, cycles
    /// ordered by that point. Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// `self^k` for any integer `k`; negative powers go through the inverse.
    pub fn power(&self, k: i64) -> Permutation {
        let mut images = vec![0; self.degree()];
        for cycle in self.cycles() {
            let len = cycle.len() as i64;
            let shift = k.rem_euclid(len) as usize;
            for (pos, &x) in cycle.iter().enumerate() {
                images[x as usize] = cycle[(pos + shift) % cycle.len()];
            }
        }
        Permutation { images }
    }

    pub fn try_order(&self) -> Option<u64> {
        self.cycles().iter().try_fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Order as a permutation. Panics if it overflows `u64`, which needs a
    /// degree in the hundreds; use [`Permutation::try_order`] for untrusted input.
    pub fn order(&self) -> u64 {
        self.try_order().expect("permutation order overflows u64")
    }

    /// Orbits of `⟨self⟩`, as a canonical sorted partition.
    pub fn orbit_partition(&self) -> Vec<Vec<u32>> {
        let mut cycles = self.cycles();
        for c in &mut cycles {
            c.sort_unstable();
        }
        cycles.sort();
        cycles
    }
}

/// The translation `t(x) = x + 1` of `Z_{p^e}`.
pub fn translation(m: &Modulus) -> Permutation {
    Permutation::rotation(m.n() as usize)
}

/// The automorphism `x ↦ u·x`.
pub fn mult_map(u: &Unit) -> Permutation {
    let m = u.modulus();
    Permutation { images: (0..m.n()).map(|x| m.mul(u.value(), x)).collect() }
}

/// A finite permutation group, stored as its sorted element list.
#[derive(Clone, Debug)]
pub struct GroupClosure {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl GroupClosure {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in increasing image-sequence order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, x)| self.generators[i + 1..].iter().all(|y| x.comp(y) == y.comp(x)))
    }

    /// Whether `self` is a normal subgroup of `g`.
    pub fn is_normal_in(&self, g: &GroupClosure) -> bool {
        self.degree == g.degree
            && self.elements.iter().all(|x| g.contains(x))
            && g.generators.iter().all(|c| {
                let c_inv = c.inverse();
                self.generators.iter().all(|x| self.contains(&c.comp(&x.comp(&c_inv))))
            })
    }
}

pub fn closure(generators: &[Permutation]) -> Result<GroupClosure> {
    closure_with_cap(generators, DEFAULT_CLOSURE_CAP)
}

/// Breadth-first product closure of `generators`. Fails once more than `cap`
/// elements have been found.
pub fn closure_with_cap(generators: &[Permutation], cap: usize) -> Result<GroupClosure> {
    let first = generators.first().ok_or_else(|| Error::OutOfRange("closure needs at least one generator".into()))?;
    for g in generators {
        first.check_degree(g)?;
    }
    let identity = Permutation::identity(first.degree());
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = s.comp(&g);
            if !seen.contains(&h) {
                if seen.len() >= cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(GroupClosure { degree: first.degree(), elements, generators: generators.to_vec() })
}

fn trivial_group(degree: usize) -> GroupClosure {
    let id = Permutation::identity(degree);
    GroupClosure { degree, elements: vec![id.clone()], generators: vec![id] }
}

/// `[x, y] = x y x⁻¹ y⁻¹`.
pub fn commutator(x: &Permutation, y: &Permutation) -> Permutation {
    x.comp(&y.comp(&x.inverse().comp(&y.inverse())))
}

/// Normal closure in `g` of the commutators of generator pairs, which is `G'`.
pub fn commutator_subgroup(g: &GroupClosure) -> Result<GroupClosure> {
    let mut gens: Vec<Permutation> = Vec::new();
    for (i, x) in g.generators.iter().enumerate() {
        for y in &g.generators[i + 1..] {
            let c = commutator(x, y);
            if !c.is_identity() && !gens.contains(&c) {
                gens.push(c);
            }
        }
    }
    if gens.is_empty() {
        return Ok(trivial_group(g.degree));
    }
    loop {
        let h = closure(&gens)?;
        let mut extra = Vec::new();
        for c in &g.generators {
            let c_inv = c.inverse();
            for x in &h.generators {
                let y = c.comp(&x.comp(&c_inv));
                if !h.contains(&y) && !extra.contains(&y) {
                    extra.push(y);
                }
            }
        }
        if extra.is_empty() {
            return Ok(h);
        }
        gens.extend(extra);
    }
}

pub fn center(g: &GroupClosure) -> Result<GroupClosure> {
    let central: Vec<Permutation> = g
        .elements
        .iter()
        .filter(|z| !z.is_identity() && g.generators.iter().all(|s| s.comp(z) == z.comp(s)))
        .cloned()
        .collect();
    if central.is_empty() {
        return Ok(trivial_group(g.degree));
    }
    closure(&central)
}

/// Least common multiple of the element orders.
pub fn exponent(g: &GroupClosure) -> u64 {
    g.elements.iter().fold(1, |acc, x| lcm(acc, x.order()).expect("group exponent overflow"))
}

/// Exponent of `G/N`: the lcm over `g ∈ G` of the least `k ≥ 1` with `g^k ∈ N`.
pub fn quotient_exponent(g: &GroupClosure, n: &GroupClosure) -> Result<u64> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let mut acc = 1u64;
    for x in &g.elements {
        let mut k = 1u64;
        let mut y = x.clone();
        while !n.contains(&y) {
            y = x.comp(&y);
            k += 1;
        }
        acc = lcm(acc, k).expect("quotient exponent overflow");
    }
    Ok(acc)
}

struct CyclicSubgroup {
    generator: Permutation,
    elements: Vec<Permutation>,
}

/// One entry per cyclic subgroup, largest first.
fn cyclic_subgroups(g: &GroupClosure) -> Vec<CyclicSubgroup> {
    let mut by_order: Vec<(u64, &Permutation)> = g.elements.iter().map(|x| (x.order(), x)).collect();
    by_order.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));
    let mut covered: HashSet<Permutation> = HashSet::new();
    let mut out = Vec::new();
    for (ord, x) in by_order {
        if covered.contains(x) {
            continue;
        }
        let mut elements = Vec::with_capacity(ord as usize);
        let mut y = Permutation::identity(g.degree);
        for k in 0..ord {
            if gcd(k, ord) == 1 {
                covered.insert(y.clone());
            }
            elements.push(y.clone());
            y = x.comp(&y);
        }
        elements.sort_unstable();
        out.push(CyclicSubgroup { generator: x.clone(), elements });
    }
    out
}

fn meets_trivially(a: &[Permutation], b: &[Permutation]) -> bool {
    // both sorted; only the identity may be shared
    let (mut i, mut j) = (0, 0);
    let mut common = 0;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                if common > 1 {
                    return false;
                }
                i += 1;
                j += 1;
            }
        }
    }
    true
}

/// Finds `x, y ∈ G` with `⟨x⟩ ⊴ G`, `⟨x⟩ ∩ ⟨y⟩ = 1` and `|⟨x⟩|·|⟨y⟩| = |G|`.
pub fn split_metacyclic_witness(g: &GroupClosure) -> Option<(Permutation, Permutation)> {
    let subgroups = cyclic_subgroups(g);
    let order = g.order();
    for x in &subgroups {
        if !order.is_multiple_of(x.elements.len()) {
            continue;
        }
        let normal = g.generators.iter().all(|c| {
            let conj = c.comp(&x.generator.comp(&c.inverse()));
            x.elements.binary_search(&conj).is_ok()
        });
        if !normal {
            continue;
        }
        let want = order / x.elements.len();
        for y in subgroups.iter().filter(|y| y.elements.len() == want) {
            if meets_trivially(&x.elements, &y.elements) {
                return Some((x.generator.clone(), y.generator.clone()));
            }
        }
    }
    None
}

pub fn is_split_metacyclic(g: &GroupClosure) -> bool {
    split_metacyclic_witness(g).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::Modulus;

    fn md(p: u32, e: u32) -> Modulus {
        Modulus::new(p, e).unwrap()
    }

    fn a(m: &Modulus) -> Permutation {
        mult_map(&Unit::new(m.p() as u64 + 1, *m).unwrap())
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn translation_examples() {
        assert_eq!(translation(&md(3, 1)).images(), &[1, 2, 0]);
        assert_eq!(translation(&md(3, 2)).order(), 9);
        assert_eq!(translation(&md(5, 1)).apply(4), 0);
    }

    #[test]
    fn mult_map_examples() {
        let m = md(3, 2);
        assert!(mult_map(&Unit::new(1, m).unwrap()).is_identity());
        assert_eq!(a(&m).images(), &[0, 4, 8, 3, 7, 2, 6, 1, 5]);
        assert_eq!(a(&m).order(), 3);
    }

    #[test]
    fn compose_and_order() {
        let m = md(3, 2);
        let t = translation(&m);
        let id = Permutation::identity(9);
        assert_eq!(t.compose(&id).unwrap(), t);
        assert_eq!(t.order(), 9);
        assert!(t.compose(&Permutation::identity(3)).is_err());
        // right-to-left: (t a)(1) = t(a(1)) = 5
        assert_eq!(t.compose(&a(&m)).unwrap().apply(1), 5);
    }

    #[test]
    fn power_handles_negative_exponents() {
        let t = Permutation::rotation(9);
        assert_eq!(t.power(-1), t.inverse());
        assert_eq!(t.power(-10), t.inverse());
        assert_eq!(t.power(9), Permutation::identity(9));
        assert_eq!(t.power(4).apply(7), 2);
    }

    #[test]
    fn conjugation_convention() {
        // c f c^-1 maps c(x) to c(f(x))
        let f = Permutation::rotation(5);
        let c = Permutation::from_images(vec![0, 2, 4, 1, 3]).unwrap();
        let g = f.conjugate(&c).unwrap();
        for x in 0..5 {
            assert_eq!(g.apply(c.apply(x)), c.apply(f.apply(x)));
        }
    }

    #[test]
    fn closure_examples() {
        let m = md(3, 2);
        let t = translation(&m);
        assert_eq!(closure(std::slice::from_ref(&t)).unwrap().order(), 9);
        let g = closure(&[t.clone(), a(&m)]).unwrap();
        assert_eq!(g.order(), 27);
        assert!(g.contains(&Permutation::identity(9)));
        assert!(g.contains(&t));
    }

    #[test]
    fn closure_cap_is_enforced() {
        let m = md(3, 2);
        let gens = [translation(&m), Permutation::from_images(vec![1, 0, 2, 3, 4, 5, 6, 7, 8]).unwrap()];
        assert!(matches!(closure_with_cap(&gens, 1000), Err(Error::ClosureCapExceeded { cap: 1000 })));
        assert!(closure_with_cap(&gens[..1], 9).is_ok());
        assert!(closure_with_cap(&gens[..1], 8).is_err());
    }

    #[test]
    fn closure_element_order_is_deterministic() {
        let m = md(3, 2);
        let g1 = closure(&[translation(&m), a(&m)]).unwrap();
        let g2 = closure(&[a(&m), translation(&m)]).unwrap();
        assert_eq!(g1.elements(), g2.elements());
    }

    #[test]
    fn commutator_subgroup_and_center() {
        let m = md(3, 2);
        let cyc = closure(&[translation(&m)]).unwrap();
        assert_eq!(commutator_subgroup(&cyc).unwrap().order(), 1);
        assert_eq!(center(&cyc).unwrap().order(), 9);
        assert_eq!(exponent(&closure(&[translation(&md(3, 3))]).unwrap()), 27);

        // ⟨t, a^{p^{e-1-i}}⟩ at p=3, e=3, i=1
        let m = md(3, 3);
        let y = a(&m).power(3);
        let g = closure(&[translation(&m), y]).unwrap();
        assert_eq!(g.order(), 81);
        assert_eq!(commutator_subgroup(&g).unwrap().order(), 3);
        // the centre is ⟨t^3⟩
        assert_eq!(center(&g).unwrap().order(), 9);
    }

    #[test]
    fn quotient_exponent_basics() {
        let m = md(3, 2);
        let g = closure(&[translation(&m), a(&m)]).unwrap();
        assert_eq!(quotient_exponent(&g, &g).unwrap(), 1);
        let cyc = closure(&[translation(&m)]).unwrap();
        let triv = trivial_group(9);
        assert_eq!(quotient_exponent(&cyc, &triv).unwrap(), exponent(&cyc));
        // ⟨a⟩ is not normal in ⟨t, a⟩
        let not_normal = closure(&[a(&m)]).unwrap();
        assert!(matches!(quotient_exponent(&g, &not_normal), Err(Error::NotNormal)));
    }

    #[test]
    fn split_test_on_visibly_split_group() {
        let m = md(3, 2);
        let g = closure(&[translation(&m), a(&m)]).unwrap();
        let (x, y) = split_metacyclic_witness(&g).unwrap();
        assert_eq!(x.order() * y.order(), 27);
        assert!(is_split_metacyclic(&closure(&[translation(&m)]).unwrap()));
    }

    #[test]
    fn quaternion_like_group_is_not_split() {
        // Z_3 x Z_3 x Z_3 is not metacyclic at all
        let g = closure(&[
            Permutation::from_images(vec![1, 2, 0, 3, 4, 5, 6, 7, 8]).unwrap(),
            Permutation::from_images(vec![0, 1, 2, 4, 5, 3, 6, 7, 8]).unwrap(),
            Permutation::from_images(vec![0, 1, 2, 3, 4, 5, 7, 8, 6]).unwrap(),
        ])
        .unwrap();
        assert_eq!(g.order(), 27);
        assert!(!is_split_metacyclic(&g));
    }

    #[test]
    fn metacyclic_order_law_small() {
        // order(x^i y^j) = max(|x^i|, |y^j|) in ⟨t, a^{p^{e-1-n}}⟩
        for e in 2..=3 {
            let m = md(3, e);
            let t = translation(&m);
            for nn in 1..e {
                let y = a(&m).power(m.p_pow(e - 1 - nn) as i64);
                for i in 0..m.n() as i64 {
                    for j in 0..m.p_pow(nn) as i64 {
                        let xi = t.power(i);
                        let yj = y.power(j);
                        assert_eq!(xi.comp(&yj).order(), xi.order().max(yj.order()));
                    }
                }
            }
        }
    }
}
