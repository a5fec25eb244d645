use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::cf::convergents::pq;
use crate::error::{Error, Result};
use crate::graph::classify::{classify_components, ComponentKind};
use crate::graph::scc::scc_decompose;
use crate::graph::TransitionGraph;
use crate::interval::Interval;

/// Bisection tolerance on the exponent.
pub const S_TOL: f64 = 1e-4;
/// Block lengths whose (context, child) count exceeds this are skipped.
pub const PAIR_LIMIT: usize = 4_000_000;
/// Minimum context length conditioning `r`.
pub const MIN_CONTEXT: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    CoverBisection,
    Submultiplicative,
    Supermultiplicative,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimBound {
    pub lo: f64,
    pub hi: f64,
    /// longest block length that contributed
    pub depth: usize,
    pub method: Method,
    /// largest max/min spread of a child ratio over its context cylinder
    pub distortion: f64,
}

impl DimBound {
    pub fn zero() -> Self {
        DimBound { lo: 0.0, hi: 0.0, depth: 0, method: Method::CoverBisection, distortion: 1.0 }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo, self.hi)
    }
}

/// Convergent data `(q, p, q + q', p + p')` of a child block, as exact
/// intervals.
struct Child {
    x: Interval,
    y: Interval,
    z: Interval,
    w: Interval,
}

impl Child {
    fn new(v: &[u32]) -> Self {
        let (p, p1, q, q1) = pq(v);
        let big = |n: &BigInt| Interval::from_bigint(n);
        Child { x: big(&q), y: big(&p), z: big(&(&q + &q1)), w: big(&(&p + &p1)) }
    }

    /// `|I(u v)| / |I(u)| = (1+r)/((x+yr)(z+wr))`, natural extension.
    fn ratio(&self, r: Interval) -> Interval {
        (Interval::point(1.0) + r) / ((self.x + self.y * r) * (self.z + self.w * r))
    }

    /// Enclosures of the max and min of the ratio over `r in [r0, r1]`.
    /// The derivative has the sign of `(x-y)(z-w) - yw(1+r)^2`, so the
    /// ratio rises then falls: the min sits at an endpoint and the max at
    /// an endpoint or at `r* = sqrt((x-y)(z-w)/(yw)) - 1`.
    fn extremes(&self, r0: Interval, r1: Interval) -> (f64, f64) {
        let a = self.ratio(r0);
        let b = self.ratio(r1);
        let mut hi = a.hi.max(b.hi);
        let lo = a.lo.min(b.lo);
        let sq = (self.x - self.y) * (self.z - self.w) / (self.y * self.w);
        let crit = Interval::new(sq.lo.max(0.0), sq.hi.max(0.0)).sqrt() - Interval::point(1.0);
        if crit.hi > r0.lo && crit.lo < r1.hi {
            let c = Interval::new(crit.lo.max(r0.lo), crit.hi.min(r1.hi));
            hi = hi.max(self.ratio(c).hi);
        }
        (hi, lo)
    }
}

/// Label sequences of all `k`-edge paths leaving `v`.
fn paths(g: &TransitionGraph, v: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut stack = vec![(v, Vec::with_capacity(k))];
    while let Some((u, word)) = stack.pop() {
        if word.len() == k {
            out.push(word);
            continue;
        }
        for &w in g.succ(u) {
            let mut next = word.clone();
            next.push(*g.vertex(w).digits().last().unwrap());
            stack.push((w, next));
        }
    }
    out
}

fn passes(logs: &[Vec<Interval>], s: f64, upper: bool) -> bool {
    let s = Interval::point(s);
    logs.iter().all(|ls| {
        let sum = ls
            .iter()
            .fold(Interval::point(0.0), |acc, l| acc + (*l * s).exp());
        if upper {
            sum.hi <= 1.0
        } else {
            sum.lo >= 1.0
        }
    })
}

/// Smallest grid `s` where the per-context max sums are certified `<= 1`.
fn bisect_upper(logs: &[Vec<Interval>]) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    if !passes(logs, hi, true) {
        return 1.0;
    }
    while hi - lo > S_TOL {
        let mid = 0.5 * (lo + hi);
        if passes(logs, mid, true) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Largest grid `s` where the per-context min sums are certified `>= 1`.
fn bisect_lower(logs: &[Vec<Interval>]) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    if !passes(logs, lo, false) {
        return 0.0;
    }
    while hi - lo > S_TOL {
        let mid = 0.5 * (lo + hi);
        if passes(logs, mid, false) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn rat_interval(r: &BigRational) -> Interval {
    Interval::from_rational(r)
}

/// Two-sided bounds for the unstable Cantor set of one irreducible graph.
fn irreducible_bounds(g: &TransitionGraph, depth: usize) -> DimBound {
    let n = g.word_len();
    let ctx = MIN_CONTEXT.max(n);
    let contexts: Vec<(usize, Interval, Interval)> = g
        .language(ctx)
        .into_iter()
        .map(|u| {
            let tail = crate::cf::word::Word::new(u[ctx - n..].to_vec(), g.bound()).unwrap();
            let end = g.index_of(&tail).expect("context ends at a vertex");
            // r = q_{n-1}/q_n of the parent is a point of I(reverse u)
            let rev: Vec<u32> = u.iter().rev().copied().collect();
            let (p, p1, q, q1) = pq(&rev);
            let e1 = BigRational::new(p.clone(), q.clone());
            let e2 = BigRational::new(p + p1, q + q1);
            let (a, b) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
            (end, rat_interval(&a), rat_interval(&b))
        })
        .collect();

    let mut best = DimBound { lo: 0.0, hi: 1.0, depth: 0, method: Method::CoverBisection, distortion: 1.0 };
    for k in 1..=depth {
        let mut cache: HashMap<usize, Vec<Child>> = HashMap::new();
        let mut pairs = 0usize;
        for &(end, _, _) in &contexts {
            let kids = cache
                .entry(end)
                .or_insert_with(|| paths(g, end, k).iter().map(|v| Child::new(v)).collect());
            pairs += kids.len();
        }
        if pairs > PAIR_LIMIT {
            log::info!("block length {k} skipped: {pairs} pairs");
            break;
        }
        let mut max_logs = Vec::with_capacity(contexts.len());
        let mut min_logs = Vec::with_capacity(contexts.len());
        let mut spread: f64 = 1.0;
        for (end, r0, r1) in &contexts {
            let mut mx = Vec::new();
            let mut mn = Vec::new();
            for c in &cache[end] {
                let (h, l) = c.extremes(*r0, *r1);
                spread = spread.max(h / l);
                mx.push(Interval::point(h).ln());
                mn.push(Interval::point(l).ln());
            }
            max_logs.push(mx);
            min_logs.push(mn);
        }
        let hi = bisect_upper(&max_logs);
        let lo = bisect_lower(&min_logs);
        best.hi = best.hi.min(hi);
        best.lo = best.lo.max(lo);
        best.depth = k;
        best.distortion = spread;
    }
    best
}

/// Certified enclosure of the Hausdorff dimension of the Cantor set of
/// forward continued-fraction tails realized by `g`.
///
/// The dimension of a finite union is the max over irreducible pieces;
/// single periodic orbits contribute 0.
pub fn hd_bounds(g: &TransitionGraph, depth: usize) -> Result<DimBound> {
    let core = g.core();
    if core.is_empty() {
        return Err(Error::empty("graph has an empty core"));
    }
    let d = scc_decompose(&core);
    let cls = classify_components(&core, &d);
    let mut out = DimBound::zero();
    for (comp, kind) in d.components.iter().zip(&cls.kinds) {
        if *kind == ComponentKind::Trivial {
            continue;
        }
        let b = irreducible_bounds(&core.induced(comp), depth);
        out.lo = out.lo.max(b.lo);
        out.hi = out.hi.max(b.hi);
        out.depth = out.depth.max(b.depth);
        out.distortion = out.distortion.max(b.distortion);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::testutil::digraph;

    #[test]
    fn single_loop_is_zero() {
        let b = hd_bounds(&TransitionGraph::full_shift(1, 1), 6).unwrap();
        assert_eq!((b.lo, b.hi), (0.0, 0.0));
    }

    #[test]
    fn two_shift_encloses_known_value() {
        let b = hd_bounds(&TransitionGraph::full_shift(2, 1), 8).unwrap();
        assert!(b.contains(0.5312805), "{b:?}");
        assert!(b.width() < 0.01, "{b:?}");
    }

    #[test]
    fn depth_never_widens() {
        let g = TransitionGraph::full_shift(2, 1);
        let mut prev = hd_bounds(&g, 1).unwrap();
        for k in 2..=6 {
            let b = hd_bounds(&g, k).unwrap();
            assert!(b.lo >= prev.lo && b.hi <= prev.hi);
            prev = b;
        }
    }

    #[test]
    fn golden_mean_below_two_shift() {
        // 1 -> 1, 1 -> 2, 2 -> 1
        let gm = digraph(2, &[(1, 1), (1, 2), (2, 1)]);
        let a = hd_bounds(&gm, 8).unwrap();
        let b = hd_bounds(&TransitionGraph::full_shift(2, 1), 8).unwrap();
        assert!(a.hi < b.lo, "{a:?} {b:?}");
        assert!(a.lo > 0.0);
    }

    #[test]
    fn trivial_pieces_ignored() {
        // a loop at 1 and a loop at 2 joined one way
        let g = digraph(2, &[(1, 1), (1, 2), (2, 2)]);
        let b = hd_bounds(&g, 4).unwrap();
        assert_eq!((b.lo, b.hi), (0.0, 0.0));
    }

    #[test]
    fn empty_core_errors() {
        let g = digraph(2, &[(1, 2)]);
        assert!(hd_bounds(&g, 3).is_err());
    }
}
