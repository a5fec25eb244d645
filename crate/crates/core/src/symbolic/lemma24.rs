use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::biseq::BiSeq;
use super::values::{lambda_exact, markov_value, periodic_max};
use crate::cf::compare::compare;
use crate::cf::expansion::Expansion;
use crate::error::{Error, Result};
use crate::radical::RadicalSum;

#[derive(Clone, Debug, Serialize)]
pub struct Lemma24Record {
    pub r: u32,
    /// `max{m(α…β¹), m(α̃…β³)} + 1/2^(R-1)`
    pub rhs: f64,
    /// `(j, rhs - λ_0(σ^j(α…β²)))` over the checked window
    pub margins: Vec<(i64, f64)>,
    /// margin against the left periodic limit of `λ_j`, `j → -∞`
    pub limit_margin: f64,
    pub min_margin: f64,
    pub violations: Vec<i64>,
    /// some of the `β` coincide
    pub degenerate: bool,
}

fn splice(alpha: &BiSeq, r: u32, beta: &Expansion) -> Result<BiSeq> {
    if beta.period.is_empty() {
        return Err(Error::input("β must be eventually periodic"));
    }
    let mut rt = alpha.digits(0, 2 * r as i64 + 2);
    rt.extend_from_slice(&beta.pre);
    BiSeq::new(
        alpha.left_period.clone(),
        alpha.left_transient.clone(),
        rt,
        beta.period.clone(),
    )
}

/// Evaluates both sides of
/// `λ_0(σ^j(α; α_0..α_{2R+1} β²)) < max{m(α; … β¹), m(α̃; … β³)} + 1/2^(R-1)`
/// for every `j <= 2R+1`. Indices left of the window are covered by
/// monotone convergence to the left periodic limit.
pub fn lemma24_check(
    alpha: &BiSeq,
    alpha_t: &BiSeq,
    betas: [&Expansion; 3],
    r: u32,
) -> Result<Lemma24Record> {
    if r < 1 {
        return Err(Error::input("R must be at least 1"));
    }
    let top = 2 * r as i64 + 2;
    if alpha.digits(0, top) != alpha_t.digits(0, top) {
        return Err(Error::input("α and α̃ must agree on positions 0..=2R+1"));
    }
    let o12 = compare(betas[0], betas[1]).ordering;
    let o23 = compare(betas[1], betas[2]).ordering;
    if o12 == Ordering::Greater || o23 == Ordering::Greater {
        return Err(Error::input("need [0;β¹] <= [0;β²] <= [0;β³]"));
    }
    let degenerate = o12 == Ordering::Equal || o23 == Ordering::Equal;
    let x1 = splice(alpha, r, betas[0])?;
    let x2 = splice(alpha, r, betas[1])?;
    let x3 = splice(alpha_t, r, betas[2])?;
    let m1 = markov_value(&x1).value.exact;
    let m3 = markov_value(&x3).value.exact;
    let slack = BigRational::new(BigInt::one(), BigInt::one() << (r as usize - 1));
    let rhs = if m1 >= m3 { m1 } else { m3 }.add(&RadicalSum::from_rational(slack));
    let lo = x2.left_end() - 2 * x2.left_period.len() as i64 + 1;
    let mut margins = Vec::new();
    let mut violations = Vec::new();
    for j in lo..=(2 * r as i64 + 1) {
        let d = rhs.sub(&lambda_exact(&x2, j));
        if d.signum() != Ordering::Greater {
            violations.push(j);
        }
        margins.push((j, d.to_f64()));
    }
    let mut lp = x2.left_period.clone();
    lp.reverse();
    let (lim, _) = periodic_max(&lp);
    let ld = rhs.sub(&lim);
    if ld.signum() == Ordering::Less {
        violations.push(i64::MIN);
    }
    let limit_margin = ld.to_f64();
    let min_margin = margins.iter().map(|m| m.1).fold(limit_margin, f64::min);
    Ok(Lemma24Record {
        r,
        rhs: rhs.to_f64(),
        margins,
        limit_margin,
        min_margin,
        violations,
        degenerate,
    })
}
