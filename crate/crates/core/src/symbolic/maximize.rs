use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::biseq::BiSeq;
use super::values::periodic_max;
use crate::cf::separation::{a_n, b_n};
use crate::error::{Error, Result};
use crate::graph::TransitionGraph;
use crate::radical::{CFValue, RadicalSum};

/// Stop expanding after this many states and report what is certified.
pub const MAX_STATES: usize = 2_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct MaxLambda {
    /// exact value of the witness, a lower bound for the sup
    pub lower: CFValue,
    /// rational upper bound for the sup
    #[serde(serialize_with = "crate::cf::cylinder::ser_rat")]
    pub upper: BigRational,
    pub witness: BiSeq,
    pub converged: bool,
    pub states: usize,
}

/// Convergent data of one side's digits, nearest digit first.
#[derive(Clone)]
struct Side {
    p: BigInt,
    p1: BigInt,
    q: BigInt,
    q1: BigInt,
}

impl Side {
    fn empty() -> Self {
        Side {
            p: 0.into(),
            p1: 1.into(),
            q: 1.into(),
            q1: 0.into(),
        }
    }

    fn push(&self, d: u32) -> Side {
        let d = BigInt::from(d);
        Side {
            p: &d * &self.p + &self.p1,
            p1: self.p.clone(),
            q: &d * &self.q + &self.q1,
            q1: self.q.clone(),
        }
    }

    /// Max of `(p + p1 y)/(q + q1 y)` over `y in [lo, hi]`.
    fn sup(&self, lo: &BigRational, hi: &BigRational) -> BigRational {
        let f = |y: &BigRational| {
            (BigRational::from_integer(self.p.clone()) + y * BigRational::from_integer(self.p1.clone()))
                / (BigRational::from_integer(self.q.clone()) + y * BigRational::from_integer(self.q1.clone()))
        };
        f(lo).max(f(hi))
    }
}

struct State {
    ub: BigRational,
    seq: u64,
    /// vertex path, leftmost first
    path: VecDeque<usize>,
    /// index of the centre vertex inside `path`
    centre: usize,
    left: Side,
    right: Side,
}

impl PartialEq for State {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for State {}
impl PartialOrd for State {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for State {
    fn cmp(&self, o: &Self) -> Ordering {
        (&self.ub, Reverse(self.seq)).cmp(&(&o.ub, Reverse(o.seq)))
    }
}

/// Shortest-path parents from every vertex (BFS, smallest vertex first).
fn all_parents(g: &TransitionGraph) -> Vec<Vec<usize>> {
    (0..g.len())
        .map(|s| {
            let mut parent = vec![usize::MAX; g.len()];
            let mut queue = VecDeque::new();
            for &w in g.succ(s) {
                if parent[w] == usize::MAX {
                    parent[w] = s;
                    queue.push_back(w);
                }
            }
            while let Some(u) = queue.pop_front() {
                for &w in g.succ(u) {
                    if parent[w] == usize::MAX {
                        parent[w] = u;
                        queue.push_back(w);
                    }
                }
            }
            parent
        })
        .collect()
}

/// Smallest rotation, used to identify cycles.
pub(crate) fn min_rotation(w: &[u32]) -> Vec<u32> {
    (0..w.len())
        .map(|r| {
            let mut v = w[r..].to_vec();
            v.extend_from_slice(&w[..r]);
            v
        })
        .min()
        .unwrap_or_default()
}

/// Reduces a periodic word to its primitive root.
pub(crate) fn primitive(w: &[u32]) -> Vec<u32> {
    let n = w.len();
    for p in 1..=n {
        if n % p == 0 && (0..n).all(|i| w[i] == w[i % p]) {
            return w[..p].to_vec();
        }
    }
    w.to_vec()
}

/// Certified enclosure of `sup λ_0` over the bi-infinite paths of `g`,
/// with a periodic witness attaining the lower end.
pub fn max_lambda0_on_subshift(g: &TransitionGraph, target: &BigRational) -> Result<MaxLambda> {
    let g = g.core();
    if g.is_empty() {
        return Err(Error::empty("graph has no bi-infinite admissible sequence"));
    }
    let n = g.bound();
    let bits = 64;
    let ylo = RadicalSum::from_quad(&a_n(n)).enclosure(bits).lo_rational();
    let yhi = RadicalSum::from_quad(&b_n(n)).enclosure(bits).hi_rational();
    let parents = all_parents(&g);
    let pred = g.predecessors();
    let first = |v: usize| g.vertex(v).digits()[0];
    let last = |v: usize| *g.vertex(v).digits().last().unwrap();
    let vlen = g.word_len();

    let mut best: Option<(RadicalSum, Vec<u32>, usize)> = None;
    let mut seen_cycles: HashSet<Vec<u32>> = HashSet::new();
    let mut heap = BinaryHeap::new();
    let mut counter = 0u64;
    let ub_of = |c: u32, l: &Side, r: &Side| -> BigRational {
        BigRational::from_integer(c.into()) + l.sup(&ylo, &yhi) + r.sup(&ylo, &yhi)
    };

    for v in 0..g.len() {
        // right side starts with the rest of the vertex's digits
        let mut right = Side::empty();
        for &d in &g.vertex(v).digits()[1..] {
            right = right.push(d);
        }
        let left = Side::empty();
        let ub = ub_of(first(v), &left, &right);
        heap.push(State {
            ub,
            seq: counter,
            path: VecDeque::from([v]),
            centre: 0,
            left,
            right,
        });
        counter += 1;
    }

    let mut states = 0usize;
    let mut converged = false;
    while let Some(st) = heap.pop() {
        states += 1;
        if let Some((b, _, _)) = &best {
            let gap = RadicalSum::from_rational(st.ub.clone()).sub(b);
            if gap <= RadicalSum::from_rational(target.clone()) {
                heap.push(st);
                converged = true;
                break;
            }
        }
        if states > MAX_STATES {
            heap.push(st);
            break;
        }
        // close the path into a cycle for a lower bound
        let (f, l) = (*st.path.front().unwrap(), *st.path.back().unwrap());
        if parents[l][f] != usize::MAX {
            let mut back = Vec::new();
            let mut v = parents[l][f];
            while v != l {
                back.push(v);
                v = parents[l][v];
            }
            back.reverse();
            let cycle: Vec<u32> = st
                .path
                .iter()
                .chain(back.iter())
                .map(|&v| first(v))
                .collect();
            let cycle = primitive(&cycle);
            let key = min_rotation(&cycle);
            if seen_cycles.insert(key.clone()) {
                let (val, at) = periodic_max(&key);
                let better = match &best {
                    None => true,
                    Some((b, w, _)) => match val.cmp(b) {
                        Ordering::Greater => true,
                        Ordering::Equal => (key.len(), &key) < (w.len(), w),
                        Ordering::Less => false,
                    },
                };
                if better {
                    best = Some((val, key, at));
                }
            }
        }
        // extend the shorter side
        let right_len = st.path.len() - 1 - st.centre + vlen - 1;
        let left_len = st.centre;
        let incumbent = best.as_ref().map(|(b, _, _)| b.clone());
        let centre_digit = first(st.path[st.centre]);
        let mut children = Vec::new();
        if left_len < right_len {
            for &u in &pred[f] {
                let left = st.left.push(first(u));
                let mut path = st.path.clone();
                path.push_front(u);
                children.push((ub_of(centre_digit, &left, &st.right), path, st.centre + 1, left, st.right.clone()));
            }
        } else {
            for &w in g.succ(l) {
                let right = st.right.push(last(w));
                let mut path = st.path.clone();
                path.push_back(w);
                children.push((ub_of(centre_digit, &st.left, &right), path, st.centre, st.left.clone(), right));
            }
        }
        for (ub, path, centre, left, right) in children {
            if let Some(b) = &incumbent {
                if RadicalSum::from_rational(ub.clone()) < *b {
                    continue;
                }
            }
            heap.push(State {
                ub,
                seq: counter,
                path,
                centre,
                left,
                right,
            });
            counter += 1;
        }
    }
    let (val, word, at) = best.ok_or_else(|| Error::Internal("no cycle found".into()))?;
    let upper = heap.peek().map(|s| s.ub.clone()).unwrap_or_else(|| {
        // every branch was pruned below the incumbent
        val.enclosure(bits).hi_rational()
    });
    let mut rotated = word[at..].to_vec();
    rotated.extend_from_slice(&word[..at]);
    let witness = BiSeq::periodic(&rotated)?.with_bound(n)?;
    Ok(MaxLambda {
        lower: CFValue::new(val),
        upper,
        witness,
        converged: converged || heap.is_empty(),
        states,
    })
}
