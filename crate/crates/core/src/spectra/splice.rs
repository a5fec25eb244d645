use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::lambda::{int, truncated_lambda, Conv};
use crate::cf::constants::max_f;
use crate::cf::expansion::Expansion;
use crate::cf::separation::{a_n, b_n};
use crate::cf::word::Word;
use crate::error::{Error, Result};
use crate::graph::classify::{classify_components, ComponentKind};
use crate::graph::scc::{scc_decompose, Decomposition};
use crate::graph::{digit_connector, mixing_constant, TransitionGraph};
use crate::interval::Interval;
use crate::radical::{CFValue, RadicalSum};
use crate::symbolic::maximize::{max_lambda0_on_subshift, MaxLambda};

/// Gap target handed to the maximizer.
const MAX_TARGET: (i64, i64) = (1, 1_000_000);
/// Digits on each side of a position used by the windowed `λ` bound.
pub const WINDOW: usize = 24;

/// One subshift of the chain with its maximal `λ_0` and connector data.
#[derive(Clone, Debug, Serialize)]
pub struct ChainLink {
    pub graph: TransitionGraph,
    #[serde(skip)]
    decomposition: Decomposition,
    pub component: usize,
    pub max: MaxLambda,
    pub mixing: usize,
    /// least `c >= mixing` such that every ordered pair of vertices of the
    /// component is joined by a path with `c + L - 1` interior vertices
    pub connector_len: usize,
}

/// Least `k >= from` with every entry of `A^k` positive, `A` the adjacency
/// of the component.
fn positive_power(g: &TransitionGraph, d: &Decomposition, comp: usize, from: usize) -> Option<usize> {
    let verts = &d.components[comp];
    let pos = |v: usize| verts.iter().position(|&u| u == v);
    let m = verts.len();
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| g.succ(v).iter().filter_map(|&w| pos(w)).collect())
        .collect();
    let limit = from.max(1) + m * m + 1;
    // rows of A^k as reachable sets
    let mut reach: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| i == j).collect()).collect();
    for k in 1..=limit {
        reach = reach
            .iter()
            .map(|row| {
                let mut next = vec![false; m];
                for (i, &on) in row.iter().enumerate() {
                    if on {
                        for &j in &adj[i] {
                            next[j] = true;
                        }
                    }
                }
                next
            })
            .collect();
        if k >= from && reach.iter().all(|r| r.iter().all(|&x| x)) {
            return Some(k);
        }
    }
    None
}

impl ChainLink {
    pub fn new(g: &TransitionGraph) -> Result<Self> {
        let graph = g.core();
        if graph.is_empty() {
            return Err(Error::empty("chain subshift has an empty core"));
        }
        let target = BigRational::new(MAX_TARGET.0.into(), MAX_TARGET.1.into());
        let max = max_lambda0_on_subshift(&graph, &target)?;
        let decomposition = scc_decompose(&graph);
        let l = graph.word_len() as i64;
        let start = Word::new(max.witness.digits(0, l), graph.bound())?;
        let v = graph
            .index_of(&start)
            .ok_or_else(|| Error::Internal("witness leaves the graph".into()))?;
        let component = decomposition.component_of[v]
            .ok_or_else(|| Error::Internal("witness vertex outside every component".into()))?;
        if classify_components(&graph, &decomposition).kinds[component] != ComponentKind::Mixing {
            return Err(Error::NotMixing(component));
        }
        let mixing = mixing_constant(&graph, &decomposition, component)?;
        let steps = positive_power(&graph, &decomposition, component, mixing + graph.word_len())
            .ok_or_else(|| Error::Internal("primitive component without a positive power".into()))?;
        Ok(ChainLink {
            connector_len: steps - graph.word_len(),
            graph,
            decomposition,
            component,
            max,
            mixing,
        })
    }

    pub fn value(&self) -> &RadicalSum {
        &self.max.lower.exact
    }

    fn vertex_in_component(&self, digits: &[u32]) -> Result<usize> {
        let w = Word::new(digits.to_vec(), self.graph.bound())?;
        self.graph
            .index_of(&w)
            .filter(|&v| self.decomposition.component_of[v] == Some(self.component))
            .ok_or_else(|| Error::input(format!("{w} is not a vertex of the chain component")))
    }

    /// Path from the vertex `from` to the vertex `to` with `c + L - 1`
    /// interior vertices, as spelled digits.
    fn connect(&self, from: &[u32], to: &[u32]) -> Result<Vec<u32>> {
        let a = self.vertex_in_component(from)?;
        let b = self.vertex_in_component(to)?;
        let len = self.connector_len + self.graph.word_len() - 1;
        let c = digit_connector(&self.graph, &self.decomposition, self.component, a, b, len)?;
        Ok(c.word.digits().to_vec())
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SpliceConfig {
    /// radius offset; by default the least `r0` with `2^-r0` below the
    /// smallest gap between consecutive chain maxima
    pub r0: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Insertion {
    pub n: usize,
    pub link: usize,
    pub radius: u32,
    pub connector_len: usize,
    /// `s(n) = Σ_{k<=n} (2 r(k) + 2 c(k) + 1)`
    pub s: u64,
    /// base digits emitted before the block, `s(n)!`
    #[serde(serialize_with = "ser_u128")]
    pub insert_after: u128,
    /// index of the first block digit in the spliced stream (0-based)
    pub start: usize,
    /// index of the window centre, the witness maximum
    pub centre: usize,
    pub block: Vec<u32>,
}

fn ser_u128<S: serde::Serializer>(v: &u128, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct SpliceTheta {
    pub r0: u32,
    pub insertions: Vec<Insertion>,
    #[serde(skip)]
    pub digits: Vec<u32>,
    pub length: usize,
}

/// `r0` from the smallest consecutive gap of the chain maxima.
fn default_r0(chain: &[ChainLink]) -> Result<u32> {
    let mut gap: Option<Interval> = None;
    for w in chain.windows(2) {
        let g = w[1].value().sub(w[0].value()).to_interval();
        gap = Some(match gap {
            None => g,
            Some(h) => h.min(&g),
        });
    }
    let Some(gap) = gap else { return Ok(1) };
    (1..=60)
        .find(|&r| 0.5f64.powi(r as i32) < gap.lo)
        .ok_or_else(|| Error::input("chain maxima too close together"))
}

fn factorial_capped(n: u64, cap: u128) -> Option<u128> {
    let mut f: u128 = 1;
    for k in 2..=n as u128 {
        f = f.checked_mul(k)?;
        if f > cap {
            return None;
        }
    }
    Some(f)
}

/// Prefix of length `prefix_length` of
/// `θ = a_1 … a_{s(1)!} h_1 a_{s(1)!+1} … a_{s(2)!} h_2 …`
/// where `h_n` connects the base into the centred window of radius `r(n)`
/// around the maximum of link `min(n, K)` and back.
pub fn splice_theta(
    base: &Expansion,
    chain: &[ChainLink],
    prefix_length: usize,
    cfg: &SpliceConfig,
) -> Result<SpliceTheta> {
    if chain.is_empty() {
        return Err(Error::input("chain must contain at least one subshift"));
    }
    if base.is_finite() {
        return Err(Error::input("base must be an infinite expansion"));
    }
    if chain.windows(2).any(|w| w[0].value() >= w[1].value()) {
        return Err(Error::input("chain maxima must strictly increase"));
    }
    let r0 = match cfg.r0 {
        Some(r) => r,
        None => default_r0(chain)?,
    };
    let digit = |k: usize| base.digit(k).expect("infinite base");
    let mut out: Vec<u32> = Vec::with_capacity(prefix_length);
    let mut insertions = Vec::new();
    let mut emitted_base: u128 = 0;
    let mut s: u64 = 0;
    let mut n = 0usize;
    while out.len() < prefix_length {
        n += 1;
        let li = n.min(chain.len()) - 1;
        let link = &chain[li];
        let radius = n as u32 + r0;
        s += 2 * radius as u64 + 2 * link.connector_len as u64 + 1;
        let cap = (prefix_length as u128).saturating_sub(out.len() as u128) + emitted_base;
        let next = factorial_capped(s, cap);
        let stop = next.unwrap_or(emitted_base + (prefix_length - out.len()) as u128);
        while emitted_base < stop && out.len() < prefix_length {
            emitted_base += 1;
            out.push(digit(emitted_base as usize));
        }
        let Some(insert_after) = next else { break };
        if out.len() >= prefix_length {
            break;
        }
        let l = link.graph.word_len();
        let r = radius as i64;
        let window = link.max.witness.digits(-r, r + 1);
        if window.len() < l || out.len() < l {
            return Err(Error::input("window or base prefix shorter than the link word length"));
        }
        let mut block = link.connect(&out[out.len() - l..], &window[..l])?;
        let lead = block.len() - (l - 1);
        let centre = out.len() + lead + r as usize;
        block.extend_from_slice(&window[l - 1..]);
        let resume: Vec<u32> = (1..=l as u128).map(|k| digit((emitted_base + k) as usize)).collect();
        let back = link.connect(&window[window.len() - l..], &resume)?;
        block.extend_from_slice(&back[..back.len() - (l - 1)]);
        insertions.push(Insertion {
            n,
            link: li,
            radius,
            connector_len: link.connector_len,
            s,
            insert_after,
            start: out.len(),
            centre,
            block: block.clone(),
        });
        let room = prefix_length - out.len();
        out.extend(block.into_iter().take(room));
    }
    Ok(SpliceTheta { r0, insertions, length: out.len(), digits: out })
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowCheck {
    pub checked: usize,
    /// positions whose windowed upper bound exceeds the allowed level
    pub violations: Vec<usize>,
    /// smallest `allowed - bound` over all positions
    pub min_slack: f64,
    pub max_bound: f64,
}

/// Upper bound for `λ_i` from `WINDOW` digits on each side, tails free in
/// the alphabet `{1..n}`.
fn windowed_upper(digits: &[u32], i: usize, ylo: Interval, yhi: Interval) -> f64 {
    let hi = (i + 1 + WINDOW).min(digits.len());
    let right = Conv::of(digits[i + 1..hi].iter().copied());
    let lo = i.saturating_sub(WINDOW);
    let left = Conv::of(digits[lo..i].iter().rev().copied());
    (int(digits[i] as u128) + right.range(ylo, yhi) + left.range(ylo, yhi)).hi
}

/// Every `λ_i` bound stays below `max_{k<=n} M_k + 2^{1-r(n)}`, `n` the
/// last insertion started at or before `i` (the first one before that).
pub fn window_check(theta: &SpliceTheta, chain: &[ChainLink]) -> WindowCheck {
    let n = chain
        .iter()
        .map(|c| c.graph.bound())
        .chain(theta.digits.iter().copied())
        .max()
        .unwrap_or(1)
        .max(2);
    let ylo = RadicalSum::from_quad(&a_n(n)).to_interval();
    let yhi = RadicalSum::from_quad(&b_n(n)).to_interval();
    let levels: Vec<(usize, f64)> = theta
        .insertions
        .iter()
        .scan(f64::MIN, |top, ins| {
            *top = top.max(Interval::from_rational(&chain[ins.link].max.upper).hi);
            let margin = Interval::from_rational(&BigRational::new(
                BigInt::from(2),
                BigInt::one() << ins.radius as usize,
            ));
            Some((ins.start, (Interval::point(*top) + margin).hi))
        })
        .collect();
    let fallback = RadicalSum::from_quad(&max_f(n)).to_interval().hi;
    let mut violations = Vec::new();
    let mut min_slack = f64::INFINITY;
    let mut max_bound = f64::MIN;
    let mut k = 0;
    for i in 0..theta.digits.len() {
        while k + 1 < levels.len() && levels[k + 1].0 <= i {
            k += 1;
        }
        let allowed = levels.get(k).map_or(fallback, |l| l.1);
        let b = windowed_upper(&theta.digits, i, ylo, yhi);
        max_bound = max_bound.max(b);
        min_slack = min_slack.min(allowed - b);
        if b > allowed {
            violations.push(i);
        }
    }
    WindowCheck { checked: theta.digits.len(), violations, min_slack, max_bound }
}

#[derive(Clone, Debug, Serialize)]
pub struct LagrangeEstimate {
    /// max truncated `λ_i` over the second half of the prefix
    pub estimate: f64,
    pub at: usize,
    /// maximum of the link used by the last insertion
    pub target: CFValue,
    pub error: f64,
}

pub fn lagrange_estimate(theta: &SpliceTheta, chain: &[ChainLink]) -> Result<LagrangeEstimate> {
    let last = theta
        .insertions
        .last()
        .ok_or_else(|| Error::input("prefix too short for any insertion"))?;
    let d = &theta.digits;
    let (mut best, mut at) = (f64::MIN, 0);
    for i in d.len() / 2..d.len() {
        let v = truncated_lambda(d, i);
        if v > best {
            best = v;
            at = i;
        }
    }
    let target = chain[last.link].max.lower.clone();
    let error = (best - target.exact.to_interval().mid()).abs();
    Ok(LagrangeEstimate { estimate: best, at, target, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::testutil::digraph;

    fn ones() -> Expansion {
        Expansion::periodic(0, vec![], vec![1])
    }

    fn chain(ns: &[u32]) -> Vec<ChainLink> {
        ns.iter().map(|&n| ChainLink::new(&TransitionGraph::full_shift(n, 1)).unwrap()).collect()
    }

    #[test]
    fn link_data_of_full_shifts() {
        let c = chain(&[2, 3]);
        assert_eq!(c[0].mixing, 0);
        assert_eq!(c[0].connector_len, 0);
        assert_eq!(c[1].max.witness.digit(0), 3);
    }

    #[test]
    fn golden_mean_needs_connectors() {
        let g = digraph(2, &[(1, 1), (1, 2), (2, 1)]);
        let l = ChainLink::new(&g).unwrap();
        assert!(l.connector_len >= l.mixing);
    }

    #[test]
    fn first_insertion_layout() {
        let c = chain(&[2, 3]);
        let cfg = SpliceConfig { r0: Some(1) };
        let th = splice_theta(&ones(), &c, 200, &cfg).unwrap();
        // s(1) = 2*2 + 1 = 5, s(2) = 5 + 7 = 12 and 12! is far away
        assert_eq!(th.insertions.len(), 1);
        let ins = &th.insertions[0];
        assert_eq!((ins.s, ins.insert_after, ins.start), (5, 120, 120));
        assert_eq!(ins.block.len(), 5);
        assert_eq!(ins.block, c[0].max.witness.digits(-2, 3));
        assert_eq!(th.digits[ins.centre], c[0].max.witness.digit(0));
        assert_eq!(th.length, 200);
        assert!(th.digits[..120].iter().all(|&d| d == 1));
    }

    #[test]
    fn connectors_spliced_for_golden_mean() {
        let g = digraph(2, &[(1, 1), (1, 2), (2, 1)]);
        let c = vec![ChainLink::new(&g).unwrap()];
        let th = splice_theta(&ones(), &c, 6000, &SpliceConfig { r0: Some(1) }).unwrap();
        let ins = &th.insertions[0];
        let len = 2 * ins.radius as usize + 2 * ins.connector_len + 1;
        assert_eq!(ins.block.len(), len);
        // the whole stream stays in the golden mean shift
        assert!(th.digits.windows(2).all(|w| w != [2, 2]));
    }

    #[test]
    fn window_margins_hold() {
        let c = chain(&[2, 3]);
        let th = splice_theta(&ones(), &c, 6000, &SpliceConfig { r0: Some(2) }).unwrap();
        let w = window_check(&th, &c);
        assert!(w.violations.is_empty(), "{w:?}");
        assert_eq!(w.checked, 6000);
    }

    #[test]
    fn default_radius_offset() {
        // √21 - √12 ≈ 1.118, so r0 = 1
        let c = chain(&[2, 3]);
        assert_eq!(default_r0(&c).unwrap(), 1);
        assert_eq!(default_r0(&c[..1]).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_chains() {
        let c = chain(&[3, 2]);
        assert!(splice_theta(&ones(), &c, 100, &SpliceConfig::default()).is_err());
        assert!(splice_theta(&ones(), &[], 100, &SpliceConfig::default()).is_err());
    }

    #[test]
    fn base_outside_link_rejected() {
        let g = digraph(2, &[(1, 2), (2, 1)]);
        // period-two graph is not mixing
        assert!(ChainLink::new(&g).is_err());
        let base = Expansion::periodic(0, vec![], vec![3]);
        let c = chain(&[2]);
        assert!(splice_theta(&base, &c, 200, &SpliceConfig { r0: Some(1) }).is_err());
    }

    #[test]
    fn estimate_near_link_maximum() {
        let c = chain(&[2]);
        let th = splice_theta(&ones(), &c, 6000, &SpliceConfig { r0: Some(2) }).unwrap();
        let e = lagrange_estimate(&th, &c).unwrap();
        assert!(e.error < 0.03 && e.estimate < 12f64.sqrt(), "{e:?}");
    }
}
