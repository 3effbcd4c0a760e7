//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run alone with `cargo test -p skewmorph-cli --test acceptance`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;
use skewmorph::classify::{analyze_group, enumerate_constructive, oracle_exhaustive, oracle_pruned, PrunedConfig};
use skewmorph::invariants::{check_all, sij_fixes_residues};
use skewmorph::perm::{mult_map, translation, DEFAULT_CLOSURE_CAP};
use skewmorph::skew::{a_power, admissible_tuples, classify, crt_product, s_ij, s_ijkl, verify_definition};
use skewmorph::zmod::gcd;
use skewmorph::{Execution, Modulus, Permutation, SkewMorphism, Unit};

fn md(p: u32, e: u32) -> Modulus {
    Modulus::new(p, e).unwrap()
}

fn cli(args: &[&str], stdin: Option<&[u8]>) -> Output {
    use std::io::Write;
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_skewmorph"));
    cmd.args(args).stdout(std::process::Stdio::piped()).stderr(std::process::Stdio::piped());
    cmd.stdin(if stdin.is_some() { std::process::Stdio::piped() } else { std::process::Stdio::null() });
    let mut child = cmd.spawn().expect("spawn skewmorph");
    if let Some(data) = stdin {
        child.stdin.take().unwrap().write_all(data).unwrap();
    }
    child.wait_with_output().unwrap()
}

fn family_set(m: &Modulus) -> BTreeSet<Permutation> {
    enumerate_constructive(m).unwrap().into_iter().map(|r| Permutation::from_images(r.images).unwrap()).collect()
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t > budget {
        return Err(format!("took {t:.1?}, budget {budget:?}"));
    }
    Ok(())
}

type Outcome = Result<(), String>;
type Check = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn count_e2() -> Outcome {
    for (p, want) in [(3, 10), (5, 68), (7, 222)] {
        let start = Instant::now();
        let out = cli(&["count", "--p", &p.to_string(), "--e", "2", "--format", "json"], None);
        within(start, Duration::from_secs(1))?;
        ensure(out.status.success(), || format!("count --p {p} exited {:?}", out.status))?;
        let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        ensure(v["total"] == want, || format!("p = {p}: total {} not {want}", v["total"]))?;
    }
    Ok(())
}

fn count_general() -> Outcome {
    let start = Instant::now();
    for (p, e, want) in [(3, 3, 82u64), (3, 4, 730), (5, 3, 1668), (7, 2, 222)] {
        let m = md(p, e);
        let formula = (p as u64 - 1) * ((p as u64).pow(2 * e - 1) - (p as u64).pow(2 * e - 2) + 2) / (p as u64 + 1);
        let built = enumerate_constructive(&m).map_err(|e| e.to_string())?.len() as u64;
        ensure(formula == want && built == want, || format!("({p},{e}): formula {formula}, enumerated {built}"))?;
    }
    within(start, Duration::from_secs(60))
}

fn oracle_nine() -> Outcome {
    let start = Instant::now();
    let found = oracle_exhaustive(9, Execution::default()).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(10))?;
    ensure(found.len() == 10, || format!("{} maps", found.len()))?;
    ensure(found == family_set(&md(3, 2)), || "differs from the family".into())?;
    let linear = found.iter().filter(|f| SkewMorphism::new((*f).clone()).unwrap().is_automorphism()).count();
    ensure(linear == 6, || format!("{linear} linear maps"))
}

fn oracle_twenty_seven() -> Outcome {
    let start = Instant::now();
    let cfg = PrunedConfig { time_cap: Some(Duration::from_secs(600)), ..PrunedConfig::default() };
    let run = oracle_pruned(27, &cfg).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(600))?;
    ensure(run.maps.len() == 82, || format!("{} maps", run.maps.len()))?;
    ensure(run.maps == family_set(&md(3, 3)), || "differs from the family".into())
}

fn uniqueness() -> Outcome {
    for (p, e) in [(3, 2), (3, 3), (3, 4), (5, 2)] {
        let mut seen = HashMap::new();
        for t in admissible_tuples(md(p, e)) {
            let perm = s_ijkl(&t).map_err(|e| e.to_string())?.into_perm();
            if let Some(prev) = seen.insert(perm, t) {
                return Err(format!("{prev} and {t} collide"));
            }
        }
    }
    Ok(())
}

fn s_ij_equality() -> Outcome {
    for (p, e) in [(3, 2), (3, 3), (3, 4), (5, 2)] {
        let m = md(p, e);
        let bound = m.p_pow(e - 1);
        let top = m.p_pow(e - 2);
        let all: Vec<(u64, u64, Permutation)> = (0..bound)
            .flat_map(|i| (0..bound).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, s_ij(i, j, &m).unwrap().into_perm()))
            .collect();
        for (i, j, f) in &all {
            let modulus = top / gcd(*i, top);
            for (i2, j2, g) in &all {
                let predicted = i == i2 && j % modulus == j2 % modulus;
                ensure((f == g) == predicted, || format!("({p},{e}): ({i},{j}) vs ({i2},{j2})"))?;
            }
        }
    }
    Ok(())
}

fn lemma_suite() -> Outcome {
    let mut violations = Vec::new();
    for (p, e) in [(3, 2), (3, 3), (5, 2)] {
        let m = md(p, e);
        for t in admissible_tuples(m) {
            let s = s_ijkl(&t).map_err(|e| e.to_string())?;
            violations.extend(check_all(&s, &m).into_iter().map(|v| format!("({p},{e}) {t}: {v}")));
        }
        let bound = m.p_pow(e - 1);
        for i in 0..bound {
            for j in 0..bound {
                if let Err(v) = sij_fixes_residues(&s_ij(i, j, &m).unwrap(), i, &m) {
                    violations.push(format!("({p},{e}) s_{{{i},{j}}}: {v}"));
                }
            }
        }
    }
    ensure(violations.is_empty(), || format!("{} violations, first: {}", violations.len(), violations[0]))
}

fn group_suite() -> Outcome {
    for e in [3, 4] {
        let m = md(3, e);
        for i in 1..e {
            for j in 0..m.p_pow(i - 1) {
                let a = analyze_group(i, j, &m, DEFAULT_CLOSURE_CAP).map_err(|e| e.to_string())?;
                let divisible = j % m.p_pow(e - 1 - i) == 0;
                ensure(a.split == divisible, || format!("e={e} G({i},{j}): split = {}", a.split))?;
                if a.split {
                    ensure(a.commutator_order as u64 == m.p_pow(i), || {
                        format!("e={e} G({i},{j}): |G'| = {}", a.commutator_order)
                    })?;
                    ensure(a.quotient_exponent == m.p_pow(i.max(e - i)), || {
                        format!("e={e} G({i},{j}): exp(G/G') = {}", a.quotient_exponent)
                    })?;
                }
            }
        }
        // order law in ⟨x, y⟩ with x = t and y of order p^k
        let t = translation(&m);
        for k in 1..e {
            let y = a_power(m.p_pow(e - 1 - k), &m);
            for i in 0..m.n() as i64 {
                let xi = t.power(i);
                for j in 0..m.p_pow(k) as i64 {
                    let yj = y.power(j);
                    let prod = xi.compose(&yj).unwrap();
                    ensure(prod.order() == xi.order().max(yj.order()), || format!("e={e} k={k} x^{i} y^{j}"))?;
                }
            }
        }
    }
    Ok(())
}

fn crt_forty_five() -> Outcome {
    let start = Instant::now();
    let nine: Vec<SkewMorphism> = family_set(&md(3, 2)).into_iter().map(|p| SkewMorphism::new(p).unwrap()).collect();
    let five: Vec<SkewMorphism> =
        (1..5).map(|u| SkewMorphism::new(mult_map(&Unit::new(u, md(5, 1)).unwrap())).unwrap()).collect();
    let mut products = HashSet::new();
    for s1 in &nine {
        for s2 in &five {
            let f = crt_product(s1, s2).map_err(|e| e.to_string())?;
            ensure(verify_definition(&f), || "product is not a skew-morphism".into())?;
            products.insert(f);
        }
    }
    ensure(products.len() == 40, || format!("{} distinct products", products.len()))?;
    within(start, Duration::from_secs(30))
}

fn round_trip() -> Outcome {
    for (p, e) in [(3, 2), (3, 3)] {
        let m = md(p, e);
        for t in admissible_tuples(m) {
            let got = classify(&s_ijkl(&t).unwrap(), &m).map_err(|e| e.to_string())?;
            ensure(got == t, || format!("{t} classified as {got}"))?;
        }
    }
    for (p, e) in [("3", "2"), ("3", "3"), ("5", "2")] {
        let args = ["enum", "--p", p, "--e", e, "--format", "json"];
        let first = cli(&args, None);
        let second = cli(&args, None);
        let sequential = cli(&[&args[..], &["--jobs", "1"]].concat(), None);
        ensure(first.status.success(), || format!("enum ({p},{e}) exited {:?}", first.status))?;
        ensure(first.stdout == second.stdout && first.stdout == sequential.stdout, || {
            format!("enum ({p},{e}) output differs between runs")
        })?;
        let verified = cli(&["verify", "--format", "json"], Some(&first.stdout));
        ensure(verified.status.success(), || format!("verify ({p},{e}) exited {:?}", verified.status))?;
        let v: Value = serde_json::from_slice(&verified.stdout).map_err(|e| e.to_string())?;
        ensure(v["rejected"] == 0, || format!("verify ({p},{e}): {} rejected", v["rejected"]))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("count reproduction, e = 2", count_e2),
        ("count reproduction, general formula", count_general),
        ("oracle equality at n = 9", oracle_nine),
        ("independent confirmation at n = 27", oracle_twenty_seven),
        ("uniqueness of tuple parametrization", uniqueness),
        ("s_ij equality criterion", s_ij_equality),
        ("lemma suite", lemma_suite),
        ("group-theory suite", group_suite),
        ("CRT products on Z_45", crt_forty_five),
        ("round trip and determinism", round_trip),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (no, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned();
            Err(msg.or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {:>2} PASS {name} ({secs:.2}s)", no + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.2}s): {why}", no + 1);
            }
        }
    }
    println!("{} of {} criteria passed", 10 - failed, 10);
    if failed > 0 {
        std::process::exit(1);
    }
}
