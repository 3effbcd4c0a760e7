use proptest::prelude::*;
use skewmorph::perm::{closure, mult_map, translation};
use skewmorph::skew::{a_power, b_map};
use skewmorph::zmod::gcd;
use skewmorph::{Modulus, Permutation, Unit};

fn md(p: u32, e: u32) -> Modulus {
    Modulus::new(p, e).unwrap()
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn arb_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..=243).prop_flat_map(|n| (arb_perm(n), arb_perm(n), arb_perm(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative((f, g, h) in arb_triple()) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels((f, _, _) in arb_triple()) {
        let n = f.degree();
        prop_assert!(f.compose(&f.inverse()).unwrap().is_identity());
        prop_assert!(f.inverse().compose(&f).unwrap().is_identity());
        prop_assert_eq!(f.compose(&Permutation::identity(n)).unwrap(), f.clone());
    }

    #[test]
    fn order_of_a_power((f, _, _) in arb_triple(), k in -500i64..500) {
        let d = f.order();
        let expected = d / gcd(k.unsigned_abs(), d);
        prop_assert_eq!(f.power(k).order(), expected);
        prop_assert!(f.power(d as i64).is_identity());
    }

    #[test]
    fn power_is_repeated_composition((f, _, _) in arb_triple(), k in 0i64..12) {
        let mut acc = Permutation::identity(f.degree());
        for _ in 0..k {
            acc = f.compose(&acc).unwrap();
        }
        prop_assert_eq!(f.power(k), acc.clone());
        prop_assert_eq!(f.power(-k), acc.inverse());
    }

    #[test]
    fn conjugation_preserves_cycle_type((f, g, _) in arb_triple()) {
        let c = f.conjugate(&g).unwrap();
        let lens = |p: &Permutation| {
            let mut v: Vec<usize> = p.cycles().iter().map(Vec::len).collect();
            v.sort_unstable();
            v
        };
        prop_assert_eq!(lens(&c), lens(&f));
        prop_assert_eq!(c.order(), f.order());
    }
}

#[test]
fn degree_mismatch_is_an_error() {
    let f = Permutation::identity(3);
    let g = Permutation::identity(4);
    assert!(f.compose(&g).is_err());
    assert!(f.conjugate(&g).is_err());
}

#[test]
fn metacyclic_order_law_up_to_e4() {
    // ⟨t, a^{p^{e-1-m}}⟩ realises ⟨x, y | x^{p^e} = y^{p^m} = 1, x^y = x^{1+p^{e-m}}⟩
    for e in 2..=4 {
        let mo = md(3, e);
        let t = translation(&mo);
        for m in 1..e {
            let y = a_power(mo.p_pow(e - 1 - m), &mo);
            assert_eq!(y.order(), mo.p_pow(m));
            // x^y = x^r with r = 1 + p^{e-m}·(unit), so ⟨y⟩ holds a generator
            // acting exactly as in the presentation
            let xy = y.inverse().compose(&t.compose(&y).unwrap()).unwrap();
            let r = xy.apply(0) as u64;
            assert_eq!(xy, t.power(r as i64));
            assert_eq!(gcd(r + mo.n() as u64 - 1, mo.n() as u64), mo.p_pow(e - m), "e={e} m={m}");
            for i in 0..mo.n() as i64 {
                let xi = t.power(i);
                for j in 0..mo.p_pow(m) as i64 {
                    let yj = y.power(j);
                    let prod = xi.compose(&yj).unwrap();
                    assert_eq!(prod.order(), xi.order().max(yj.order()), "e={e} m={m} i={i} j={j}");
                }
            }
        }
    }
}

#[test]
fn translation_times_a_power_law() {
    // (t^x a^y)^z = t^{x b_y(z)} a^{yz}
    for e in 2..=3 {
        let m = md(3, e);
        let t = translation(&m);
        for y in 0..m.p_pow(e - 1) {
            let by = b_map(y, &m).unwrap();
            let ay = a_power(y, &m);
            for x in 0..m.n() as i64 {
                let base = t.power(x).compose(&ay).unwrap();
                let mut acc = Permutation::identity(m.n() as usize);
                for z in 0..m.n() {
                    let rhs =
                        t.power(x * by.apply(z) as i64).compose(&a_power(y * z as u64 % m.p_pow(e - 1), &m)).unwrap();
                    assert_eq!(acc, rhs, "e={e} x={x} y={y} z={z}");
                    acc = base.compose(&acc).unwrap();
                }
            }
        }
    }
}

#[test]
fn closure_of_translation_and_fixing_map_is_multiple_of_n() {
    let m = md(3, 2);
    let t = translation(&m);
    for v in [1u64, 2, 4, 5, 7, 8] {
        let f = mult_map(&Unit::new(v, m).unwrap());
        let g = closure(&[t.clone(), f.clone()]).unwrap();
        assert_eq!(g.order() % 9, 0);
        assert_eq!(g.order() as u64, 9 * f.order());
    }
    let swap = Permutation::from_images(vec![0, 2, 1, 3, 4, 5, 6, 7, 8]).unwrap();
    assert_eq!(closure(&[t, swap]).unwrap().order() % 9, 0);
}
