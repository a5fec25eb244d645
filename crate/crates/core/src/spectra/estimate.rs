use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;

use super::prune::{build_certified, build_pt, oscillation, prune_words};
use crate::cf::constants::{freiman, junction_4, max_f};
use crate::dimension::bounds::{hd_bounds, DimBound};
use crate::error::{Error, Result};
use crate::graph::TransitionGraph;
use crate::interval::Interval;
use crate::radical::{CFValue, RadicalSum};

/// How the interior hypothesis on `t` is backed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    /// `t >= c_F`, inside the half-line contained in both spectra
    Verified,
    Assumed,
}

pub fn interior_hypothesis(t: &RadicalSum) -> Hypothesis {
    if *t >= RadicalSum::from_quad(&freiman()) {
        Hypothesis::Verified
    } else {
        Hypothesis::Assumed
    }
}

/// Alphabet bound for the splice construction at level `η`: 2 up to
/// `2 + [0; 1̄] + [0; 1, 3, 1̄, 4̄]`, else `max(4, ⌊η⌋)`.
pub fn alphabet_for(eta: &RadicalSum) -> u32 {
    if *eta <= junction_4() {
        2
    } else {
        let fl = eta.to_interval().lo.floor() as u32;
        fl.max(4)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DEstimate {
    pub n: u32,
    pub t: CFValue,
    #[serde(serialize_with = "crate::cf::cylinder::ser_rat")]
    pub eps: BigRational,
    pub ell: usize,
    /// enclosure of `D(t)`
    pub dim: DimBound,
    /// enclosure of `d(t) = min(1, 2 D(t))`
    pub d: Interval,
    pub hypothesis: Hypothesis,
    /// `t >= max f`, so the whole horseshoe is below `t`
    pub saturated: bool,
    pub kept_words: usize,
    pub certified_words: usize,
}

fn d_of(dim: &DimBound) -> Interval {
    let two = |x: f64| (2.0 * x).min(1.0);
    Interval::new(two(dim.lo), two(dim.hi))
}

/// Enclosure of `D(t) = HD(K^u_t)` over the alphabet `{1..N}`.
///
/// The upper end comes from every kept word, a superset of the words of
/// `Λ_t`. The lower end uses certified words whose witness stays below
/// `t` minus the window oscillation, so every sequence built from them has
/// all `λ_i <= t`.
pub fn d_estimate(n: u32, t: &RadicalSum, eps: &BigRational, ell: usize, depth: usize) -> Result<DEstimate> {
    let top = RadicalSum::from_quad(&max_f(n));
    let hypothesis = interior_hypothesis(t);
    if *t >= top {
        let dim = hd_bounds(&TransitionGraph::full_shift(n, 1), depth)?;
        return Ok(DEstimate {
            n,
            t: CFValue::new(t.clone()),
            eps: eps.clone(),
            ell,
            d: d_of(&dim),
            dim,
            hypothesis,
            saturated: true,
            kept_words: 0,
            certified_words: 0,
        });
    }
    let pr = prune_words(n, t, eps, ell)?;
    if pr.kept.is_empty() {
        return Err(Error::empty(pr.diagnostic.unwrap_or_default()));
    }
    let upper = hd_bounds(&build_pt(&pr)?.graph, depth)?;
    let cap = t.sub(&RadicalSum::from_rational(oscillation(ell))).to_interval();
    let lower = match build_certified(&pr, Some(&cap)) {
        Ok(g) => hd_bounds(&g.graph, depth)?.lo,
        Err(Error::Empty(_)) => 0.0,
        Err(e) => return Err(e),
    };
    let dim = DimBound { lo: lower.min(upper.hi), ..upper };
    Ok(DEstimate {
        n,
        t: CFValue::new(t.clone()),
        eps: eps.clone(),
        ell,
        d: d_of(&dim),
        dim,
        hypothesis,
        saturated: false,
        kept_words: pr.kept.len(),
        certified_words: pr.certified().count(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumScan {
    pub points: Vec<DEstimate>,
    /// adjacent pairs `(i, i+1)` with `hi D(t_i) < lo D(t_{i+1})`
    pub certified_increase: Vec<(usize, usize)>,
    pub inconclusive: Vec<(usize, usize)>,
    /// lower ends are non-decreasing along the grid
    pub monotone_lower: bool,
}

impl SpectrumScan {
    /// `t,D_lo,D_hi,d_lo,d_hi`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,D_lo,D_hi,d_lo,d_hi\n");
        for p in &self.points {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                p.t.decimal(10),
                p.dim.lo,
                p.dim.hi,
                p.d.lo,
                p.d.hi
            );
        }
        out
    }

    /// Pairs up estimates already sorted by `t`.
    pub fn from_points(points: Vec<DEstimate>) -> Self {
        let mut certified_increase = Vec::new();
        let mut inconclusive = Vec::new();
        for i in 1..points.len() {
            if points[i - 1].dim.hi < points[i].dim.lo {
                certified_increase.push((i - 1, i));
            } else {
                inconclusive.push((i - 1, i));
            }
        }
        let monotone_lower = points.windows(2).all(|w| w[0].dim.lo <= w[1].dim.lo);
        SpectrumScan { points, certified_increase, inconclusive, monotone_lower }
    }

    /// Smallest grid bracket `[t_i, t_j]` with `hi d(t_i) < 1 <= lo d(t_j)`.
    pub fn full_dimension_bracket(&self) -> Option<(usize, usize)> {
        let below = self.points.iter().rposition(|p| p.d.hi < 1.0)?;
        let above = self.points.iter().position(|p| p.d.lo >= 1.0)?;
        (below < above).then_some((below, above))
    }
}

pub fn scan(n: u32, grid: &[RadicalSum], eps: &BigRational, ell: usize, depth: usize) -> Result<SpectrumScan> {
    check_grid(grid)?;
    let points = grid
        .iter()
        .map(|t| d_estimate(n, t, eps, ell, depth))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumScan::from_points(points))
}

pub fn check_grid(grid: &[RadicalSum]) -> Result<()> {
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input("grid must be strictly increasing"));
    }
    Ok(())
}
