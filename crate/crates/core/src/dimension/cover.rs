use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cf::convergents::pq;
use crate::cf::cylinder::cylinder_length;
use crate::cf::word::Word;
use crate::error::{Error, Result};
use crate::graph::TransitionGraph;
use crate::interval::{ln_abs_bigint, Interval};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverSum {
    pub s: f64,
    pub depth: usize,
    pub value: Interval,
    pub cover_size: usize,
}

/// Enclosure of `|I(w)|^s`, computed as `exp(-s ln(q (q + q')))` so that
/// long words never overflow.
pub fn length_pow(digits: &[u32], s: &Interval) -> Interval {
    let (_, _, q, q1) = pq(digits);
    let sum: BigInt = &q + &q1;
    let ln_len = -(ln_abs_bigint(&q) + ln_abs_bigint(&sum));
    (ln_len * *s).exp()
}

/// `Σ |I|^s` over an explicit cover.
pub fn h_sum(cover: &[Word], s: f64) -> Interval {
    let s = Interval::point(s);
    cover
        .iter()
        .map(|w| length_pow(w.digits(), &s))
        .fold(Interval::point(0.0), |acc, x| acc + x)
}

/// `Σ |I(w)|^s` over the words of length `depth` in the bi-infinite
/// language of `g`.
pub fn cover_sum(g: &TransitionGraph, depth: usize, s: f64) -> Result<CoverSum> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(Error::input(format!("exponent {s} outside (0, 1]")));
    }
    let core = g.core();
    if core.is_empty() {
        return Err(Error::empty("graph has an empty core"));
    }
    let words: Vec<Word> = core
        .language(depth)
        .into_iter()
        .map(|d| Word::new(d, g.bound()))
        .collect::<Result<_>>()?;
    Ok(CoverSum { s, depth, value: h_sum(&words, s), cover_size: words.len() })
}

/// Replaces every cover element by the children named by `oracle`.
///
/// Children must properly extend their parent, respect the alphabet bound
/// and be pairwise non-nested.
pub fn refine_cover<F>(cover: &[Word], mut oracle: F) -> Result<Vec<Word>>
where
    F: FnMut(&Word) -> Vec<Word>,
{
    let mut out = Vec::new();
    for parent in cover {
        let kids = oracle(parent);
        if kids.is_empty() {
            return Err(Error::input(format!("no children for cylinder [{parent}]")));
        }
        for (i, c) in kids.iter().enumerate() {
            if c.len() <= parent.len() || c.digits()[..parent.len()] != *parent.digits() {
                return Err(Error::input(format!("[{c}] does not extend [{parent}]")));
            }
            if c.digits().iter().any(|&d| d == 0 || d > parent.bound()) {
                return Err(Error::input(format!("[{c}] leaves the alphabet 1..{}", parent.bound())));
            }
            for d in &kids[..i] {
                let k = c.len().min(d.len());
                if c.digits()[..k] == d.digits()[..k] {
                    return Err(Error::input(format!("children [{d}] and [{c}] overlap")));
                }
            }
        }
        out.extend(kids);
    }
    Ok(out)
}

/// The branching replacement for a parent with two continuations starting
/// at `i` and `i + 1`, alphabet bound `m + 3`:
/// `w,i,1,j` and `w,i+1,j` for `j = m+1, m+2, m+3`.
pub fn branching_children(w: &Word, i: u32, m: u32) -> Vec<Word> {
    let js = m + 1..=m + 3;
    let mut out: Vec<Word> = js.clone().map(|j| w.push(i).push(1).push(j)).collect();
    out.extend(js.map(|j| w.push(i + 1).push(j)));
    out
}

/// The two-child replacement over the alphabet `{1, 2}`.
pub fn two_children(w: &Word) -> Vec<Word> {
    vec![w.push(1).push(1), w.push(2).push(2)]
}

/// CSV dump of a cover: `word,length_num,length_den`.
pub fn cover_csv(cover: &[Word]) -> String {
    let mut out = String::from("word,length_num,length_den\n");
    for w in cover {
        let len = cylinder_length(w.digits());
        let digits: Vec<String> = w.digits().iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "\"{}\",{},{}", digits.join(","), len.numer(), len.denom());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(d: &[u32], n: u32) -> Word {
        Word::new(d.to_vec(), n).unwrap()
    }

    #[test]
    fn full_two_shift_depth_one() {
        let g = TransitionGraph::full_shift(2, 1);
        let c = cover_sum(&g, 1, 0.49).unwrap();
        let expect = 0.5f64.powf(0.49) + (1.0f64 / 6.0).powf(0.49);
        assert_eq!(c.cover_size, 2);
        assert!(c.value.contains(expect));
        assert!(c.value.width() < 1e-12);
    }

    #[test]
    fn single_loop_shrinks() {
        let g = TransitionGraph::full_shift(1, 1);
        let a = cover_sum(&g, 5, 0.5).unwrap();
        let b = cover_sum(&g, 20, 0.5).unwrap();
        assert_eq!(b.cover_size, 1);
        assert!(b.value.hi < a.value.lo);
    }

    #[test]
    fn measure_bound_at_one() {
        let g = TransitionGraph::full_shift(2, 1);
        assert!(cover_sum(&g, 8, 1.0).unwrap().value.hi <= 1.0);
    }

    #[test]
    fn huge_depth_stays_finite() {
        let g = TransitionGraph::full_shift(1, 1);
        let c = cover_sum(&g, 3000, 0.5).unwrap();
        assert!(c.value.hi > 0.0 && c.value.hi < 1e-300);
    }

    #[test]
    fn forced_letter_decreases() {
        let cover = vec![w(&[1, 2], 3), w(&[2], 3)];
        let refined = refine_cover(&cover, |p| vec![p.push(3)]).unwrap();
        assert!(h_sum(&refined, 0.49).hi < h_sum(&cover, 0.49).lo);
    }

    #[test]
    fn six_children_contract() {
        let parent = w(&[2, 1], 4);
        let kids = refine_cover(&[parent.clone()], |p| branching_children(p, 1, 1)).unwrap();
        assert_eq!(kids.len(), 6);
        assert!(h_sum(&kids, 0.49).hi < h_sum(&[parent], 0.49).lo);
    }

    #[test]
    fn two_children_below_point_nine() {
        for parent in Word::all(2, 4) {
            let kids = two_children(&parent);
            let ratio = h_sum(&kids, 0.49).hi / h_sum(&[parent], 0.49).lo;
            assert!(ratio < 0.9, "{ratio}");
        }
    }

    #[test]
    fn rejects_bad_children() {
        let parent = w(&[1], 3);
        assert!(refine_cover(&[parent.clone()], |_| vec![w(&[2, 1], 3)]).is_err());
        assert!(refine_cover(&[parent.clone()], |p| vec![p.push(1), p.push(1).push(2)]).is_err());
        assert!(refine_cover(&[parent.clone()], |p| vec![p.clone()]).is_err());
        assert!(refine_cover(&[parent], |_| vec![w(&[1, 4], 4)]).is_err());
    }

    #[test]
    fn csv_lists_lengths() {
        let csv = cover_csv(&[w(&[1], 2), w(&[2], 2)]);
        assert_eq!(csv, "word,length_num,length_den\n\"1\",1,2\n\"2\",1,6\n");
    }
}
