use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::lambda::cf_tail;
use super::splice::{splice_theta, ChainLink, SpliceConfig};
use crate::cf::expansion::Expansion;
use crate::error::{Error, Result};

pub const MIN_PAIRS: usize = 30;
/// Required ratio between the deepest and shallowest agreement.
pub const MIN_SPAN: f64 = 100.0;
/// Spliced digits generated past the end of each base stream.
const SLACK: usize = 4096;

#[derive(Clone, Debug, Serialize)]
pub struct HolderPoint {
    pub base_depth: usize,
    pub spliced_depth: usize,
    pub ln_base: f64,
    pub ln_spliced: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HolderProbe {
    /// least-squares slope of `ln|x - y|` against `ln|θ(x) - θ(y)|`
    pub exponent: f64,
    pub points: Vec<HolderPoint>,
}

fn agreement(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// `ln |[0; a] - [0; b]|` for streams sharing exactly `s` leading digits:
/// `|t1 - t2| / ((q_s + q_{s-1} t1)(q_s + q_{s-1} t2))` with `ln q_s`
/// accumulated in floating point.
fn ln_distance(a: &[u32], b: &[u32], s: usize) -> f64 {
    let mut ln_q = 0.0;
    // r = q_{k-1} / q_k
    let mut r = 0.0;
    for &d in &a[..s] {
        let step = d as f64 + r;
        ln_q += step.ln();
        r = 1.0 / step;
    }
    let t1 = cf_tail(a[s..].iter().copied());
    let t2 = cf_tail(b[s..].iter().copied());
    (t1 - t2).abs().ln() - 2.0 * ln_q - (1.0 + r * t1).ln() - (1.0 + r * t2).ln()
}

fn slope(points: &[HolderPoint]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.ln_spliced).sum::<f64>() / n;
    let my = points.iter().map(|p| p.ln_base).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.ln_spliced - mx) * (p.ln_base - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.ln_spliced - mx).powi(2)).sum();
    sxy / sxx
}

/// Fits the exponent of `x ↦ θ(x)` from pairs of base digit streams.
pub fn holder_exponent_probe(
    pairs: &[(Vec<u32>, Vec<u32>)],
    chain: &[ChainLink],
    cfg: &SpliceConfig,
) -> Result<HolderProbe> {
    if pairs.len() < MIN_PAIRS {
        return Err(Error::input(format!("need at least {MIN_PAIRS} pairs, got {}", pairs.len())));
    }
    let mut points = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let s = agreement(a, b);
        if s == a.len().min(b.len()) {
            return Err(Error::input("each pair must differ within its common length"));
        }
        let splice = |x: &[u32]| -> Result<Vec<u32>> {
            let base = Expansion::periodic(0, x.to_vec(), vec![1]);
            Ok(splice_theta(&base, chain, x.len() + SLACK, cfg)?.digits)
        };
        let (ta, tb) = (splice(a)?, splice(b)?);
        let st = agreement(&ta, &tb);
        points.push(HolderPoint {
            base_depth: s,
            spliced_depth: st,
            ln_base: ln_distance(a, b, s),
            ln_spliced: ln_distance(&ta, &tb, st),
        });
    }
    let lo = points.iter().map(|p| p.base_depth).min().unwrap().max(1) as f64;
    let hi = points.iter().map(|p| p.base_depth).max().unwrap() as f64;
    if hi / lo < MIN_SPAN {
        return Err(Error::input("agreement depths must span at least two decades"));
    }
    Ok(HolderProbe { exponent: slope(&points), points })
}

/// `count` pairs over `{1..n}` agreeing on log-spaced depths between
/// `min_depth` and `max_depth`, then differing, then `tail` random digits.
pub fn random_pairs(
    seed: u64,
    count: usize,
    n: u32,
    min_depth: usize,
    max_depth: usize,
    tail: usize,
) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
    if n < 2 || count < 2 || min_depth == 0 || min_depth > max_depth {
        return Err(Error::input("need n >= 2, count >= 2 and 1 <= min_depth <= max_depth"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ratio = (max_depth as f64 / min_depth as f64).ln();
    let pairs = (0..count)
        .map(|k| {
            let depth = (min_depth as f64 * (ratio * k as f64 / (count - 1) as f64).exp()).round() as usize;
            let mut a: Vec<u32> = (0..depth).map(|_| rng.gen_range(1..=n)).collect();
            let mut b = a.clone();
            let x = rng.gen_range(1..=n);
            let y = (x + rng.gen_range(0..n - 1)) % n + 1;
            a.push(x);
            b.push(y);
            a.extend((0..tail).map(|_| rng.gen_range(1..=n)));
            b.extend((0..tail).map(|_| rng.gen_range(1..=n)));
            (a, b)
        })
        .collect();
    Ok(pairs)
}
