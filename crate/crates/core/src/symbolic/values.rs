use std::fmt;

use serde::Serialize;

use super::biseq::BiSeq;
use crate::cf::expansion::Expansion;
use crate::radical::{CFValue, RadicalSum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Attained {
    Index(i64),
    #[serde(serialize_with = "ser_limsup")]
    LimsupOnly,
}

fn ser_limsup<S: serde::Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("limsup-only")
}

impl fmt::Display for Attained {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attained::Index(i) => write!(f, "{i}"),
            Attained::LimsupOnly => write!(f, "limsup-only"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValueReport {
    pub value: CFValue,
    pub attaining_index: Attained,
    pub certified: bool,
}

fn tail(e: &Expansion) -> RadicalSum {
    RadicalSum::from_quad(&e.value())
}

pub(crate) fn lambda_exact(seq: &BiSeq, i: i64) -> RadicalSum {
    RadicalSum::from_int(seq.digit(i) as i64)
        .add(&tail(&seq.right_tail(i)))
        .add(&tail(&seq.left_tail(i)))
}

/// `λ_i = [0; a_{i+1}, …] + a_i + [0; a_{i-1}, …]`.
pub fn lambda_at(seq: &BiSeq, i: i64) -> CFValue {
    CFValue::new(lambda_exact(seq, i))
}

/// Max of `λ` over one period of `overline(w)`, with the first index
/// attaining it.
pub(crate) fn periodic_max(w: &[u32]) -> (RadicalSum, usize) {
    let s = BiSeq::periodic(w).expect("nonempty period");
    let mut best = lambda_exact(&s, 0);
    let mut at = 0;
    for i in 1..w.len() {
        let v = lambda_exact(&s, i as i64);
        if v > best {
            best = v;
            at = i;
        }
    }
    (best, at)
}

/// `m(θ) = sup_i λ_i(θ)`.
///
/// On the right periodic regime `left_tail(i + p) = M(left_tail(i))` for
/// the Möbius map `M` of one period, so along each residue class mod `2p`
/// the values approach the periodic limit monotonically. The sup is thus
/// the max over the window reaching two periods into each regime, and the
/// two periodic limits.
pub fn markov_value(seq: &BiSeq) -> ValueReport {
    let p = seq.right_period.len() as i64;
    let q = seq.left_period.len() as i64;
    let lo = seq.left_end() - 2 * q + 1;
    let hi = seq.right_start() + 2 * p - 1;
    let mut best: Option<(RadicalSum, i64)> = None;
    for i in lo..=hi {
        let v = lambda_exact(seq, i);
        match &best {
            Some((b, _)) if *b >= v => {}
            _ => best = Some((v, i)),
        }
    }
    let (wmax, at) = best.unwrap();
    let (right_lim, _) = periodic_max(&seq.right_period);
    let mut lp = seq.left_period.clone();
    lp.reverse();
    let (left_lim, _) = periodic_max(&lp);
    let lim = if right_lim >= left_lim { right_lim } else { left_lim };
    if wmax >= lim {
        ValueReport {
            value: CFValue::new(wmax),
            attaining_index: Attained::Index(at),
            certified: true,
        }
    } else {
        ValueReport {
            value: CFValue::new(lim),
            attaining_index: Attained::LimsupOnly,
            certified: true,
        }
    }
}

/// `ℓ(θ) = limsup_{i → +∞} λ_i(θ)`, the max of `λ` over one period of the
/// right periodic part.
pub fn lagrange_value(seq: &BiSeq) -> ValueReport {
    let (v, _) = periodic_max(&seq.right_period);
    let p = seq.right_period.len() as i64;
    let start = seq.right_start();
    let attaining_index = (start..start + 2 * p)
        .find(|&i| lambda_exact(seq, i) == v)
        .map_or(Attained::LimsupOnly, Attained::Index);
    ValueReport {
        value: CFValue::new(v),
        attaining_index,
        certified: true,
    }
}
