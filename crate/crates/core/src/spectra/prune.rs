use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};
use serde::Serialize;

use super::lambda::{periodic_markov, Conv};
use crate::cf::constants::max_f;
use crate::cf::cylinder::ser_rat;
use crate::cf::separation::{a_n, b_n};
use crate::cf::word::Word;
use crate::error::{Error, Result};
use crate::graph::classify::{classify_components, Classification};
use crate::graph::scc::{scc_decompose, Decomposition};
use crate::graph::TransitionGraph;
use crate::interval::Interval;
use crate::radical::{CFValue, RadicalSum};
use crate::symbolic::values::periodic_max;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordStatus {
    CertifiedNonempty,
    PossiblyNonempty,
    Pruned,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KeptWord {
    pub word: Word,
    pub status: WordStatus,
    /// period of a periodic sequence through the word
    pub witness: Option<Vec<u32>>,
    /// enclosure of the witness's Markov value
    pub witness_value: Option<Interval>,
}

/// Every word extending `prefix` has `λ_index >= lower_bound > t + ε/4`
/// whatever digits follow.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PruneCertificate {
    pub prefix: Vec<u32>,
    pub index: usize,
    #[serde(serialize_with = "ser_rat")]
    pub lower_bound: BigRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct PruneResult {
    pub n: u32,
    pub t: CFValue,
    #[serde(serialize_with = "ser_rat")]
    pub eps: BigRational,
    pub ell: usize,
    /// `t + ε/4`
    pub threshold: CFValue,
    /// rational bounds used for continued-fraction tails in `[A_N, B_N]`
    #[serde(serialize_with = "ser_rat")]
    pub tail_lo: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub tail_hi: BigRational,
    pub kept: Vec<KeptWord>,
    pub certificates: Vec<PruneCertificate>,
    /// number of words of length `2ℓ+1` covered by the certificates
    pub pruned_count: u128,
    pub diagnostic: Option<String>,
}

impl PruneResult {
    pub fn word_len(&self) -> usize {
        2 * self.ell + 1
    }

    pub fn certified(&self) -> impl Iterator<Item = &KeptWord> {
        self.kept.iter().filter(|k| k.status == WordStatus::CertifiedNonempty)
    }

    pub fn count(&self, status: WordStatus) -> u128 {
        match status {
            WordStatus::Pruned => self.pruned_count,
            s => self.kept.iter().filter(|k| k.status == s).count() as u128,
        }
    }

    /// Exact re-check of a certificate.
    pub fn verify_certificate(&self, c: &PruneCertificate) -> bool {
        let lb = exact_lower_bound(&c.prefix, c.index, &self.tail_lo, &self.tail_hi);
        lb == c.lower_bound && RadicalSum::from_rational(lb) > self.threshold.exact
    }

    /// The tail bounds really enclose `[A_N, B_N]`.
    pub fn tail_bounds_sound(&self) -> bool {
        RadicalSum::from_rational(self.tail_lo.clone()) <= RadicalSum::from_quad(&a_n(self.n))
            && RadicalSum::from_rational(self.tail_hi.clone()) >= RadicalSum::from_quad(&b_n(self.n))
    }

    /// Exact re-check of a certified word's witness against `t + ε/4`.
    pub fn verify_witness(&self, k: &KeptWord) -> bool {
        let Some(w) = &k.witness else { return false };
        let contains = w
            .iter()
            .cycle()
            .take(w.len() + k.word.len())
            .copied()
            .collect::<Vec<_>>()
            .windows(k.word.len())
            .any(|x| x == k.word.digits());
        contains && periodic_max(w).0 <= self.threshold.exact
    }
}

/// `2^{2-ℓ}`: two tails agreeing in their first `ℓ` digits differ by less
/// than `2^{1-ℓ}` each.
pub fn oscillation(ell: usize) -> BigRational {
    BigRational::new(BigInt::from(4), BigInt::one() << ell)
}

/// Least `ℓ >= 1` whose oscillation is below `ε/4`.
pub fn ell_for_eps(eps: &BigRational) -> usize {
    let target = eps / BigRational::from_integer(4.into());
    (1..).find(|&l| oscillation(l) < target).expect("ε > 0")
}

fn exact_range_min(digits: &[u32], lo: &BigRational, hi: &BigRational) -> BigRational {
    let c = Conv::of(digits.iter().copied());
    let k = |x: u128| BigRational::from_integer(BigInt::from(x));
    let f = |y: &BigRational| (k(c.p) + k(c.p1) * y) / (k(c.q) + k(c.q1) * y);
    f(lo).min(f(hi))
}

/// `a_i + min [0; a_{i+1}…] + min [0; a_{i-1}…]` over all continuations.
fn exact_lower_bound(prefix: &[u32], i: usize, lo: &BigRational, hi: &BigRational) -> BigRational {
    let right: Vec<u32> = prefix[i + 1..].to_vec();
    let left: Vec<u32> = prefix[..i].iter().rev().copied().collect();
    BigRational::from_integer(prefix[i].into())
        + exact_range_min(&right, lo, hi)
        + exact_range_min(&left, lo, hi)
}

fn f64_rat(x: f64) -> BigRational {
    BigRational::from_f64(x).expect("finite")
}

struct Search<'a> {
    n: u32,
    len: usize,
    ylo: Interval,
    yhi: Interval,
    thr: Interval,
    thr_exact: &'a RadicalSum,
    lo_rat: BigRational,
    hi_rat: BigRational,
    kept: Vec<Vec<u32>>,
    certs: Vec<PruneCertificate>,
    pruned: u128,
}

impl Search<'_> {
    fn min_side(&self, c: &Conv) -> f64 {
        c.range(self.ylo, self.yhi).lo
    }

    /// `rights[i]` holds the digits right of position `i` so far.
    fn dfs(&mut self, word: &mut Vec<u32>, rights: &mut Vec<Conv>) {
        let k = word.len();
        if k > 0 {
            for i in 0..k {
                let left = Conv::of(word[..i].iter().rev().copied());
                let lb = word[i] as f64 + self.min_side(&rights[i]) + self.min_side(&left);
                // outward slack for the two additions above
                let lb = Interval::point(lb).lo - 4.0 * f64::EPSILON * lb;
                if lb > self.thr.hi {
                    let exact = exact_lower_bound(word, i, &self.lo_rat, &self.hi_rat);
                    if RadicalSum::from_rational(exact.clone()) > *self.thr_exact {
                        let rest = (self.len - k) as u32;
                        self.pruned += (self.n as u128).pow(rest);
                        self.certs.push(PruneCertificate { prefix: word.clone(), index: i, lower_bound: exact });
                        return;
                    }
                }
            }
        }
        if k == self.len {
            self.kept.push(word.clone());
            return;
        }
        for d in 1..=self.n {
            let saved = rights.clone();
            for r in rights.iter_mut() {
                *r = r.push(d);
            }
            rights.push(Conv::EMPTY);
            word.push(d);
            self.dfs(word, rights);
            word.pop();
            *rights = saved;
        }
    }
}

fn all_words(n: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<u32>| {
                (1..=n).map(move |d| {
                    let mut x = w.clone();
                    x.push(d);
                    x
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Closing word lengths tried when searching for a periodic witness.
pub const WITNESS_PAD: usize = 2;

/// Cheapest periodic closure `overline(α c)` of a kept word, if its Markov
/// value is certified `<= t + ε/4`.
fn find_witness(
    word: &[u32],
    pads: &[Vec<u32>],
    thr: Interval,
    thr_exact: &RadicalSum,
) -> Option<(Vec<u32>, Interval)> {
    let mut best: Option<(Vec<u32>, Interval)> = None;
    for c in pads {
        let mut w = word.to_vec();
        w.extend_from_slice(c);
        let v = periodic_markov(&w);
        if v.lo > thr.hi || best.as_ref().is_some_and(|(_, b)| v.lo >= b.hi) {
            continue;
        }
        let ok = v.hi < thr.lo || periodic_max(&w).0 <= *thr_exact;
        if ok && best.as_ref().map_or(true, |(_, b)| v.hi < b.hi) {
            best = Some((w, v));
        }
    }
    best
}

/// Classifies the words of length `2ℓ+1` over `{1..N}` by whether their
/// cylinder can meet `Λ_{t+ε/4}`.
pub fn prune_words(n: u32, t: &RadicalSum, eps: &BigRational, ell: usize) -> Result<PruneResult> {
    if n < 2 {
        return Err(Error::input("alphabet bound must be at least 2"));
    }
    if eps <= &BigRational::zero() {
        return Err(Error::input("ε must be positive"));
    }
    if ell == 0 {
        return Err(Error::input("window radius must be at least 1"));
    }
    let top = RadicalSum::from_quad(&max_f(n));
    if *t > top {
        return Err(Error::input(format!("t exceeds max f = {}", top.decimal(6))));
    }
    let len = 2 * ell + 1;
    if (len as f64) * ((n + 1) as f64).log2() > 120.0 {
        return Err(Error::input("window too long for machine continuants"));
    }
    let thr_exact = t.add(&RadicalSum::from_rational(eps / BigRational::from_integer(4.into())));
    let thr = thr_exact.to_interval();
    let a = RadicalSum::from_quad(&a_n(n)).to_interval();
    let b = RadicalSum::from_quad(&b_n(n)).to_interval();
    let (ylo, yhi) = (Interval::point(a.lo), Interval::point(b.hi));
    let mut s = Search {
        n,
        len,
        ylo,
        yhi,
        thr,
        thr_exact: &thr_exact,
        lo_rat: f64_rat(a.lo),
        hi_rat: f64_rat(b.hi),
        kept: vec![],
        certs: vec![],
        pruned: 0,
    };
    s.dfs(&mut Vec::with_capacity(len), &mut Vec::with_capacity(len));
    let pads = all_words(n, WITNESS_PAD);
    let kept: Vec<KeptWord> = s
        .kept
        .iter()
        .map(|w| {
            let word = Word::new(w.clone(), n).expect("digits in range");
            match find_witness(w, &pads, thr, &thr_exact) {
                Some((p, v)) => KeptWord {
                    word,
                    status: WordStatus::CertifiedNonempty,
                    witness: Some(p),
                    witness_value: Some(v),
                },
                None => KeptWord { word, status: WordStatus::PossiblyNonempty, witness: None, witness_value: None },
            }
        })
        .collect();
    let diagnostic = kept.is_empty().then(|| {
        format!(
            "every word of length {len} is pruned: t + ε/4 lies below the minimum of f plus the window oscillation"
        )
    });
    Ok(PruneResult {
        n,
        t: CFValue::new(t.clone()),
        eps: eps.clone(),
        ell,
        threshold: CFValue::new(thr_exact.clone()),
        tail_lo: s.lo_rat.clone(),
        tail_hi: s.hi_rat.clone(),
        kept,
        certificates: s.certs,
        pruned_count: s.pruned,
        diagnostic,
    })
}

/// The finite-type set over the kept words and its decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct PtGraph {
    pub graph: TransitionGraph,
    pub decomposition: Decomposition,
    pub classification: Classification,
}

fn graph_of(words: Vec<Word>, n: u32) -> Result<PtGraph> {
    let g = TransitionGraph::from_vertices(words, n)?.core();
    if g.is_empty() {
        return Err(Error::empty("no bi-infinite sequence survives pruning"));
    }
    let decomposition = scc_decompose(&g);
    let classification = classify_components(&g, &decomposition);
    Ok(PtGraph { graph: g, decomposition, classification })
}

/// Overlap graph on all kept words, core-pruned and decomposed.
pub fn build_pt(result: &PruneResult) -> Result<PtGraph> {
    if result.kept.is_empty() {
        return Err(Error::empty(result.diagnostic.clone().unwrap_or_default()));
    }
    graph_of(result.kept.iter().map(|k| k.word.clone()).collect(), result.n)
}

/// Overlap graph on the certified words whose witness value is at most
/// `cap`.
pub fn build_certified(result: &PruneResult, cap: Option<&Interval>) -> Result<PtGraph> {
    let words: Vec<Word> = result
        .certified()
        .filter(|k| match (cap, &k.witness_value) {
            (Some(c), Some(v)) => v.hi <= c.lo,
            _ => true,
        })
        .map(|k| k.word.clone())
        .collect();
    graph_of(words, result.n)
}
