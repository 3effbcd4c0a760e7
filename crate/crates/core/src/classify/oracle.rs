//! Brute-force searches for all skew-morphisms of `Z_n`.
//!
//! Both searches rely only on the defining identity
//! `f(x + y) = f(x) + f^{π(x)}(y)` and facts derived directly from it; neither
//! knows about admissible tuples or the constructive families, so they can
//! check them independently. Every map the pruned search returns is verified
//! against the definition.
//!
//! The pruned search fixes `L`, the length of the orbit `1, f(1), f²(1), …`, at
//! the root. The stabilisers of 0 and 1 in `⟨t, f⟩` are `⟨f⟩` and its conjugate
//! by `t`, two cyclic groups whose intersection is normal and hence trivial, so
//! `|f| = L` and `π` is a function to `Z_L`. From there:
//!
//! * `f(x + y) = f(x) + f^{π(x)}(y)` can be applied for every `y`, and on the
//!   orbit of 1 it reads `f(x + f^q(1)) = f(x) + f^{q+π(x)}(1)`, which also
//!   fills orbit positions learned out of order;
//! * `π(x + y) = π(y) + π(f(y)) + … + π(f^{π(x)-1}(y))`;
//! * with `y = 1` the sequence `π(0) = 1, π(1), π(2), …` iterates a fixed map of
//!   `Z_L`, so it is a cycle whose length `d` divides `n`, never hits 0 and has
//!   distinct values within a period. Hence `d < L`, and summing
//!   `f(x+1) - f(x) = f^{π(x)}(1)` over a period gives `f(x + d) = f(x) + f(d)`;
//! * `y ↦ f(x+y) - f(x)` maps the orbit of 1 onto itself, and every cycle
//!   length divides `L`.
//!
//! Branching order: `f(1)`, `π(1)`, `f(d)`, then the first gap in the walk
//! `f(y+1) = f(1) + f^{π(1)}(y)`, values tried in increasing order.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;

use super::checkpoint::Checkpoint;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::perm::Permutation;
use crate::skew::verify_definition;

/// Largest `n` accepted by [`oracle_exhaustive`]; it visits `(n-1)!` maps.
pub const EXHAUSTIVE_BOUND: u32 = 10;
pub const DEFAULT_PRUNED_BOUND: u32 = 27;
pub const DEFAULT_TIME_CAP: Duration = Duration::from_secs(600);

/// Every bijection of `{0, …, n-1}` fixing 0 that satisfies the definition.
pub fn oracle_exhaustive(n: u32, exec: Execution) -> Result<BTreeSet<Permutation>> {
    if n == 0 || n > EXHAUSTIVE_BOUND {
        return Err(Error::OracleBound { n, bound: EXHAUSTIVE_BOUND });
    }
    if n <= 2 {
        return Ok(BTreeSet::from([Permutation::identity(n as usize)]));
    }
    let first_images: Vec<u32> = (1..n).collect();
    let found = exec.map(&first_images, |&f1| {
        let rest: Vec<u32> = (1..n).filter(|&v| v != f1).collect();
        rest.iter()
            .copied()
            .permutations(rest.len())
            .filter_map(|tail| {
                let mut images = Vec::with_capacity(n as usize);
                images.extend([0, f1]);
                images.extend(tail);
                let f = Permutation::from_images_unchecked(images);
                verify_definition(&f).then_some(f)
            })
            .collect::<Vec<_>>()
    });
    Ok(found.into_iter().flatten().collect())
}

#[derive(Clone, Debug)]
pub struct PrunedConfig {
    /// Largest accepted `n`.
    pub bound: u32,
    /// Wall-clock limit for the whole search; `None` means unlimited.
    pub time_cap: Option<Duration>,
    /// Progress file; completed work units found there are not searched again.
    pub checkpoint: Option<PathBuf>,
    pub execution: Execution,
}

impl Default for PrunedConfig {
    fn default() -> Self {
        PrunedConfig {
            bound: DEFAULT_PRUNED_BOUND,
            time_cap: Some(DEFAULT_TIME_CAP),
            checkpoint: None,
            execution: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Independent subtrees the search was split into.
    pub units: usize,
    /// Units taken from the checkpoint instead of searched.
    pub resumed_units: usize,
    pub nodes: u64,
    pub leaves: u64,
}

#[derive(Clone, Debug)]
pub struct OracleRun {
    pub maps: BTreeSet<Permutation>,
    pub stats: SearchStats,
}

const UNSET: u32 = u32::MAX;

/// Branching depth, below the choice of orbit length, at which the tree is cut
/// into work units.
const UNIT_DEPTH: usize = 2;

/// A partial map together with a partial description of the orbit of 1.
///
/// The orbit length `len` is fixed up front, so `slot[q] = f^q(1)` is indexed
/// cyclically and may be learned out of order. `shift[x]` is `π(x) mod len`
/// once known; then `f(x + slot[q]) = f(x) + slot[q + shift[x]]` for every `q`.
#[derive(Clone)]
struct Partial {
    n: u32,
    len: u32,
    /// Period of `x ↦ π(x) mod len`; it divides `n` and the values within one
    /// period are distinct.
    period: u32,
    img: Vec<u32>,
    pre: Vec<u32>,
    slot: Vec<u32>,
    slot_of: Vec<u32>,
    shift: Vec<u32>,
    residue_of_shift: Vec<u32>,
    assigned: u32,
    filled: u32,
    /// Points known to lie in the orbit of 1.
    in_orbit: Vec<bool>,
    /// Whether `in_orbit` is the whole orbit.
    orbit_known: bool,
    changed: bool,
}

enum Branch {
    Leaf,
    Slot(u32, Vec<u32>),
    Shift(u32, Vec<u32>),
    Point(u32, Vec<u32>),
}

impl Partial {
    fn root(n: u32, len: u32, period: u32) -> Self {
        let nu = n as usize;
        let mut s = Partial {
            n,
            len,
            period,
            img: vec![UNSET; nu],
            pre: vec![UNSET; nu],
            slot: vec![UNSET; len as usize],
            slot_of: vec![UNSET; nu],
            shift: vec![UNSET; nu],
            residue_of_shift: vec![UNSET; len as usize],
            assigned: 0,
            filled: 0,
            in_orbit: vec![false; nu],
            orbit_known: false,
            changed: false,
        };
        s.assign(0, 0);
        s.set_slot(0, 1);
        s.set_shift(0, 1 % len);
        s
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.n as u64) as u32
    }

    fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.n as u64 - b as u64) % self.n as u64) as u32
    }

    fn assign(&mut self, x: u32, v: u32) -> bool {
        let cur = self.img[x as usize];
        if cur != UNSET {
            return cur == v;
        }
        if self.pre[v as usize] != UNSET {
            return false;
        }
        self.img[x as usize] = v;
        self.pre[v as usize] = x;
        self.assigned += 1;
        self.changed = true;
        true
    }

    fn set_slot(&mut self, q: u32, v: u32) -> bool {
        let cur = self.slot[q as usize];
        if cur != UNSET {
            return cur == v;
        }
        if v == 0 || self.slot_of[v as usize] != UNSET || (self.orbit_known && !self.in_orbit[v as usize]) {
            return false;
        }
        self.slot[q as usize] = v;
        self.slot_of[v as usize] = q;
        self.filled += 1;
        self.changed = true;
        true
    }

    fn set_shift(&mut self, x: u32, k: u32) -> bool {
        let cur = self.shift[x as usize];
        if cur != UNSET {
            return cur == k;
        }
        // a zero shift would repeat forever, contradicting π(0) = 1
        if (k == 0 && self.len > 1) || self.residue_of_shift[k as usize] != UNSET {
            return false;
        }
        let r = x % self.period;
        self.residue_of_shift[k as usize] = r;
        for y in (r..self.n).step_by(self.period as usize) {
            self.shift[y as usize] = k;
        }
        self.changed = true;
        true
    }

    /// Looks for a known orbit point `y` with `f(x + y) - f(x)` also placed.
    fn infer_shift(&mut self, x: u32) -> bool {
        let fx = self.img[x as usize];
        for q in 0..self.len {
            let y = self.slot[q as usize];
            if y == UNSET {
                continue;
            }
            let fz = self.img[self.add(x, y) as usize];
            if fz == UNSET {
                continue;
            }
            let s = self.slot_of[self.sub(fz, fx) as usize];
            if s != UNSET {
                return self.set_shift(x, (s + self.len - q) % self.len);
            }
        }
        true
    }

    fn apply_shift(&mut self, x: u32) -> bool {
        let (fx, k, len) = (self.img[x as usize], self.shift[x as usize], self.len);
        for q in 0..len {
            let t = (q + k) % len;
            let (a, b) = (self.slot[q as usize], self.slot[t as usize]);
            let ok = if a != UNSET {
                let z = self.add(x, a);
                if b != UNSET {
                    self.assign(z, self.add(fx, b))
                } else if self.img[z as usize] != UNSET {
                    self.set_slot(t, self.sub(self.img[z as usize], fx))
                } else {
                    true
                }
            } else if b != UNSET {
                let w = self.pre[self.add(fx, b) as usize];
                w == UNSET || self.set_slot(q, self.sub(w, x))
            } else {
                true
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// `f(x + y) = f(x) + f^k(y)` with `k = shift[x]`, for every `y`. When the
    /// walk from `y` breaks, a single missing link may still be forced.
    fn walk_shift(&mut self, x: u32) -> bool {
        let (fx, k) = (self.img[x as usize], self.shift[x as usize]);
        for y in 1..self.n {
            let z = self.add(x, y);
            let (mut u, mut j) = (y, 0);
            while j < k && self.img[u as usize] != UNSET {
                u = self.img[u as usize];
                j += 1;
            }
            if j == k {
                if !self.assign(z, self.add(fx, u)) {
                    return false;
                }
                continue;
            }
            let fz = self.img[z as usize];
            if fz == UNSET {
                continue;
            }
            let need = k - j - 1;
            let (mut w, mut i) = (self.sub(fz, fx), 0);
            while i < need && self.pre[w as usize] != UNSET {
                w = self.pre[w as usize];
                i += 1;
            }
            if i == need && !self.assign(u, w) {
                return false;
            }
        }
        true
    }

    /// `π(x + y) ≡ π(y) + π(f(y)) + … + π(f^{π(x)-1}(y))`.
    fn shift_sums(&mut self, x: u32) -> bool {
        let k = self.shift[x as usize];
        'y: for y in 0..self.n {
            let (mut u, mut sum) = (y, 0u64);
            for i in 0..k {
                if u == UNSET || self.shift[u as usize] == UNSET {
                    continue 'y;
                }
                sum += self.shift[u as usize] as u64;
                if i + 1 < k {
                    u = self.img[u as usize];
                }
            }
            if !self.set_shift(self.add(x, y), (sum % self.len as u64) as u32) {
                return false;
            }
        }
        true
    }

    /// Summing `f(x+1) - f(x) = f^{π(x)}(1)` over one period gives the same
    /// total from every start, so `f(x + period) = f(x) + f(period)`.
    fn period_translation(&mut self) -> bool {
        let (n, d) = (self.n, self.period);
        let step = self.img[d as usize];
        if step == UNSET {
            return true;
        }
        if crate::zmod::gcd(step as u64, n as u64) != d as u64 {
            return false;
        }
        for x in 0..n {
            let (fx, fy) = (self.img[x as usize], self.img[((x + d) % n) as usize]);
            let ok = match (fx != UNSET, fy != UNSET) {
                (true, _) => self.assign((x + d) % n, self.add(fx, step)),
                (false, true) => self.assign(x, self.sub(fy, step)),
                _ => true,
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Every cycle length divides the order of `f`, which is `len`.
    fn cycles_divide_len(&self) -> bool {
        let mut seen = vec![false; self.n as usize];
        for v in 0..self.n {
            if seen[v as usize] {
                continue;
            }
            let (mut u, mut l) = (v, 0);
            loop {
                seen[u as usize] = true;
                u = self.img[u as usize];
                l += 1;
                if u == UNSET || u == v || seen[u as usize] {
                    break;
                }
            }
            if u == v && !self.len.is_multiple_of(l) {
                return false;
            }
        }
        true
    }

    /// Collects points forced into the orbit of 1: `y ↦ f(x+y) - f(x)` maps the
    /// orbit onto itself, and the orbit is closed under `f` and `f⁻¹`.
    fn update_orbit(&mut self) -> bool {
        let n = self.n;
        let mut mark = vec![false; n as usize];
        let mut members: Vec<u32> = Vec::new();
        for &v in self.slot.iter().filter(|&&v| v != UNSET) {
            mark[v as usize] = true;
            members.push(v);
        }
        let mut grew = true;
        while grew {
            grew = false;
            let mut fresh = Vec::new();
            for x in (0..n).filter(|&x| self.img[x as usize] != UNSET) {
                let fx = self.img[x as usize];
                for &y in &members {
                    let fz = self.img[self.add(x, y) as usize];
                    if fz != UNSET {
                        let d = self.sub(fz, fx);
                        if !mark[d as usize] {
                            mark[d as usize] = true;
                            fresh.push(d);
                        }
                    }
                }
            }
            let mut i = 0;
            while i < fresh.len() {
                let v = fresh[i];
                for w in [self.img[v as usize], self.pre[v as usize]] {
                    if w != UNSET && !mark[w as usize] {
                        mark[w as usize] = true;
                        fresh.push(w);
                    }
                }
                i += 1;
            }
            if !fresh.is_empty() {
                grew = true;
                members.extend(fresh);
            }
            if mark[0] || members.len() > self.len as usize {
                return false;
            }
        }
        self.orbit_known = members.len() == self.len as usize;
        self.in_orbit = mark;
        if self.orbit_known {
            if self.slot.iter().any(|&v| v != UNSET && !self.in_orbit[v as usize]) {
                return false;
            }
            // off the orbit, y ↦ f(x+y) - f(x) stays off it
            for x in (0..n).filter(|&x| self.img[x as usize] != UNSET) {
                let fx = self.img[x as usize];
                for y in (1..n).filter(|&y| !self.in_orbit[y as usize]) {
                    let fz = self.img[self.add(x, y) as usize];
                    if fz != UNSET && self.in_orbit[self.sub(fz, fx) as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn point_candidates(&self, z: u32) -> Vec<u32> {
        let n = self.n;
        let prev = self.img[((z + n - 1) % n) as usize];
        let next = self.img[((z + 1) % n) as usize];
        let z_in = self.in_orbit[z as usize];
        (0..n)
            .filter(|&v| {
                self.pre[v as usize] == UNSET
                    && (!self.orbit_known
                        || (self.in_orbit[v as usize] == z_in
                            && (prev == UNSET || self.in_orbit[self.sub(v, prev) as usize])
                            && (next == UNSET || self.in_orbit[self.sub(next, v) as usize])))
            })
            .collect()
    }

    fn slot_candidates(&self, q: u32) -> Vec<u32> {
        let len = self.len;
        let before = self.slot[((q + len - 1) % len) as usize];
        let after = self.slot[((q + 1) % len) as usize];
        (1..self.n)
            .filter(|&v| {
                let (fv, pv) = (self.img[v as usize], self.pre[v as usize]);
                self.slot_of[v as usize] == UNSET
                    && (!self.orbit_known || self.in_orbit[v as usize])
                    && (before == UNSET
                        || self.img[before as usize] == v
                        || (self.img[before as usize] == UNSET && pv == UNSET))
                    && (after == UNSET || fv == after || (fv == UNSET && self.pre[after as usize] == UNSET))
                    && (fv == UNSET || self.slot_of[fv as usize] == UNSET || self.slot_of[fv as usize] == (q + 1) % len)
                    && (pv == UNSET
                        || self.slot_of[pv as usize] == UNSET
                        || self.slot_of[pv as usize] == (q + len - 1) % len)
            })
            .collect()
    }

    /// Applies forced assignments to a fixpoint; false means a contradiction.
    fn propagate(&mut self) -> bool {
        loop {
            self.changed = false;
            for x in 0..self.n {
                if self.img[x as usize] == UNSET {
                    continue;
                }
                if self.shift[x as usize] == UNSET && !self.infer_shift(x) {
                    return false;
                }
                if self.shift[x as usize] != UNSET && !(self.apply_shift(x) && self.walk_shift(x) && self.shift_sums(x))
                {
                    return false;
                }
            }
            if !self.period_translation() || !self.cycles_divide_len() || !self.update_orbit() {
                return false;
            }
            if self.orbit_known {
                for z in 0..self.n {
                    if self.img[z as usize] != UNSET {
                        continue;
                    }
                    match self.point_candidates(z).as_slice() {
                        [] => return false,
                        [v] if !self.assign(z, *v) => {
                            return false;
                        }
                        _ => {}
                    }
                }
            }
            if !self.changed {
                return true;
            }
        }
    }

    /// Order: `f(1)`, then `π(1) mod len`, then the most constrained orbit
    /// slot, then the most constrained point.
    fn branch(&self) -> Branch {
        if self.assigned == self.n {
            return Branch::Leaf;
        }
        if self.slot[1 % self.len as usize] == UNSET {
            return Branch::Slot(1, self.slot_candidates(1));
        }
        if self.shift[1] == UNSET {
            let free = (1..self.len).filter(|&k| self.residue_of_shift[k as usize] == UNSET).collect();
            return Branch::Shift(1, free);
        }
        if self.img[self.period as usize] == UNSET {
            let d = self.period as u64;
            let c = self.point_candidates(self.period);
            let c = c.into_iter().filter(|&v| crate::zmod::gcd(v as u64, self.n as u64) == d).collect();
            return Branch::Point(self.period, c);
        }
        // follow the recursion f(y+1) = f(1) + f^{π(1)}(y) to its first gap
        if let Some(y) = (1..self.n).find(|&y| self.img[((y + 1) % self.n) as usize] == UNSET) {
            let mut u = y;
            while self.img[u as usize] != UNSET {
                u = self.img[u as usize];
            }
            return Branch::Point(u, self.point_candidates(u));
        }
        if self.filled < self.len {
            let (q, c) = (0..self.len)
                .filter(|&q| self.slot[q as usize] == UNSET)
                .map(|q| (q, self.slot_candidates(q)))
                .min_by_key(|(_, c)| c.len())
                .expect("an empty slot exists");
            return Branch::Slot(q, c);
        }
        let (z, c) = (0..self.n)
            .filter(|&z| self.img[z as usize] == UNSET)
            .map(|z| (z, self.point_candidates(z)))
            .min_by_key(|(_, c)| c.len())
            .expect("an unassigned point exists");
        Branch::Point(z, c)
    }

    fn child(&self, branch: &Branch, v: u32) -> Option<Partial> {
        let mut c = self.clone();
        let ok = match *branch {
            Branch::Slot(q, _) => c.set_slot(q, v),
            Branch::Shift(x, _) => c.set_shift(x, v),
            Branch::Point(z, _) => c.assign(z, v),
            Branch::Leaf => unreachable!(),
        };
        ok.then_some(c)
    }
}

fn options(branch: &Branch) -> &[u32] {
    match branch {
        Branch::Slot(_, c) | Branch::Shift(_, c) | Branch::Point(_, c) => c,
        Branch::Leaf => &[],
    }
}

struct SearchCtx<'a> {
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
    nodes: u64,
    leaves: u64,
    found: Vec<Vec<u32>>,
}

impl SearchCtx<'_> {
    fn out_of_time(&mut self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        if self.nodes.is_multiple_of(256) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stop.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }

    fn search(&mut self, mut state: Partial) {
        if !state.propagate() {
            return;
        }
        self.nodes += 1;
        if self.out_of_time() {
            return;
        }
        let branch = state.branch();
        if let Branch::Leaf = branch {
            self.leaves += 1;
            let f = Permutation::from_images_unchecked(state.img);
            if verify_definition(&f) {
                self.found.push(f.into_images());
            }
            return;
        }
        for &v in options(&branch) {
            if let Some(child) = state.child(&branch, v) {
                self.search(child);
            }
            if self.stop.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}

/// Cuts the search tree into independent subtrees: one root per orbit length,
/// each expanded to a fixed depth. Depends only on `n`.
fn work_units(n: u32) -> Vec<Partial> {
    fn expand(mut state: Partial, depth: usize, out: &mut Vec<Partial>) {
        if !state.propagate() {
            return;
        }
        let branch = state.branch();
        if depth == 0 || matches!(branch, Branch::Leaf) {
            out.push(state);
            return;
        }
        for &v in options(&branch) {
            if let Some(child) = state.child(&branch, v) {
                expand(child, depth - 1, out);
            }
        }
    }
    let mut out = Vec::new();
    for len in 1..n {
        for period in (1..len.max(2)).filter(|d| n.is_multiple_of(*d)) {
            expand(Partial::root(n, len, period), UNIT_DEPTH, &mut out);
        }
    }
    out
}

struct UnitOutcome {
    maps: Vec<Vec<u32>>,
    nodes: u64,
    leaves: u64,
    complete: bool,
    resumed: bool,
}

/// Complete depth-first search for the skew-morphisms of `Z_n`.
///
/// On timeout the error carries progress counts; with a checkpoint configured,
/// a rerun resumes from the completed work units.
pub fn oracle_pruned(n: u32, cfg: &PrunedConfig) -> Result<OracleRun> {
    if n == 0 || n > cfg.bound {
        return Err(Error::OracleBound { n, bound: cfg.bound });
    }
    if n <= 2 {
        return Ok(OracleRun {
            maps: BTreeSet::from([Permutation::identity(n as usize)]),
            stats: SearchStats { units: 1, ..Default::default() },
        });
    }
    let start = Instant::now();
    let deadline = cfg.time_cap.map(|cap| start + cap);
    let units: Vec<(usize, Partial)> = work_units(n).into_iter().enumerate().collect();
    let (checkpoint, resumed) = match &cfg.checkpoint {
        Some(path) => {
            let (c, r) = Checkpoint::open(path, n, units.len())?;
            (Some(c), r)
        }
        None => (None, Default::default()),
    };
    let stop = AtomicBool::new(false);

    let outcomes = cfg.execution.map(&units, |(idx, state)| -> Result<UnitOutcome> {
        if let Some((nodes, maps)) = resumed.get(idx) {
            return Ok(UnitOutcome { maps: maps.clone(), nodes: *nodes, leaves: 0, complete: true, resumed: true });
        }
        let mut ctx = SearchCtx { deadline, stop: &stop, nodes: 0, leaves: 0, found: Vec::new() };
        if deadline.is_some_and(|d| Instant::now() >= d) {
            stop.store(true, Ordering::Relaxed);
        }
        if !stop.load(Ordering::Relaxed) {
            ctx.search(state.clone());
        }
        let complete = !stop.load(Ordering::Relaxed);
        if complete {
            if let Some(c) = &checkpoint {
                c.record(*idx, ctx.nodes, &ctx.found)?;
            }
        }
        Ok(UnitOutcome { maps: ctx.found, nodes: ctx.nodes, leaves: ctx.leaves, complete, resumed: false })
    });

    let mut stats = SearchStats { units: units.len(), ..Default::default() };
    let mut maps = BTreeSet::new();
    let mut completed = 0;
    for outcome in outcomes {
        let o = outcome?;
        stats.nodes += o.nodes;
        stats.leaves += o.leaves;
        stats.resumed_units += o.resumed as usize;
        if o.complete {
            completed += 1;
            for images in o.maps {
                maps.insert(Permutation::from_images(images)?);
            }
        }
    }
    if completed < units.len() {
        return Err(Error::Timeout {
            elapsed_secs: start.elapsed().as_secs_f64(),
            completed_branches: completed,
            total_branches: units.len(),
            nodes: stats.nodes,
            found: maps.len(),
        });
    }
    Ok(OracleRun { maps, stats })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pruned(n: u32) -> BTreeSet<Permutation> {
        oracle_pruned(n, &PrunedConfig::default()).unwrap().maps
    }

    #[test]
    fn exhaustive_small_moduli() {
        let seq = Execution::Sequential;
        assert_eq!(oracle_exhaustive(3, seq).unwrap().len(), 2);
        let five = oracle_exhaustive(5, seq).unwrap();
        assert_eq!(five.len(), 4);
        for f in &five {
            // all linear: f(x) = f(1)·x
            assert!((0..5).all(|x| f.apply(x) == f.apply(1) * x % 5));
        }
        assert_eq!(oracle_exhaustive(7, Execution::Parallel).unwrap().len(), 6);
        assert!(oracle_exhaustive(11, seq).is_err());
        assert!(oracle_exhaustive(0, seq).is_err());
        assert_eq!(oracle_exhaustive(1, seq).unwrap().len(), 1);
    }

    #[test]
    fn pruned_agrees_with_exhaustive() {
        for n in 1..=EXHAUSTIVE_BOUND {
            assert_eq!(pruned(n), oracle_exhaustive(n, Execution::Parallel).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn pruned_on_three() {
        let maps = pruned(3);
        let expected: BTreeSet<Permutation> =
            [vec![0, 1, 2], vec![0, 2, 1]].into_iter().map(|v| Permutation::from_images(v).unwrap()).collect();
        assert_eq!(maps, expected);
    }

    #[test]
    fn pruned_respects_bound_and_timeout() {
        let cfg = PrunedConfig { bound: 9, ..Default::default() };
        assert!(matches!(oracle_pruned(11, &cfg), Err(Error::OracleBound { .. })));
        let cfg = PrunedConfig { time_cap: Some(Duration::ZERO), ..Default::default() };
        assert!(matches!(oracle_pruned(25, &cfg), Err(Error::Timeout { .. })));
    }

    #[test]
    fn checkpoint_resume() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("n15.ck");
        let stalled =
            PrunedConfig { time_cap: Some(Duration::ZERO), checkpoint: Some(path.clone()), ..Default::default() };
        assert!(matches!(oracle_pruned(15, &stalled), Err(Error::Timeout { .. })));
        let cfg = PrunedConfig { checkpoint: Some(path.clone()), ..Default::default() };
        let first = oracle_pruned(15, &cfg).unwrap();
        assert_eq!(first.stats.resumed_units, 0);
        let again = oracle_pruned(15, &cfg).unwrap();
        assert_eq!(again.stats.resumed_units, again.stats.units);
        assert_eq!(again.maps, first.maps);
        assert_eq!(first.maps.len(), 8);
        let wrong_n = PrunedConfig { checkpoint: Some(path), ..Default::default() };
        assert!(matches!(oracle_pruned(21, &wrong_n), Err(Error::Checkpoint { .. })));
    }

    #[test]
    fn sequential_matches_parallel() {
        let seq = PrunedConfig { execution: Execution::Sequential, ..Default::default() };
        assert_eq!(oracle_pruned(25, &seq).unwrap().maps, pruned(25));
    }

    #[test]
    fn units_are_deterministic() {
        let a: Vec<Vec<u32>> = work_units(9).into_iter().map(|p| p.img).collect();
        let b: Vec<Vec<u32>> = work_units(9).into_iter().map(|p| p.img).collect();
        assert_eq!(a, b);
    }
}
