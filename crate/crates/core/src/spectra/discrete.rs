use serde::Serialize;

use crate::error::{Error, Result};
use crate::radical::{CFValue, RadicalSum};
use crate::symbolic::values::periodic_max;

/// One value of the Markov spectrum below 3 with a primitive period
/// realizing it.
#[derive(Clone, Debug, Serialize)]
pub struct DiscreteValue {
    pub value: CFValue,
    pub period: Vec<u32>,
}

/// Lyndon words over `{1, 2}` of length `1..=max_len`, by Duval's
/// successor rule.
fn lyndon_words(max_len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut w = vec![1u32];
    loop {
        out.push(w.clone());
        let mut next: Vec<u32> = w.iter().cycle().take(max_len).copied().collect();
        while next.last() == Some(&2) {
            next.pop();
        }
        match next.last_mut() {
            None => break,
            Some(d) => *d += 1,
        }
        w = next;
    }
    out
}

/// Markov values `< 3` of periodic sequences over `{1, 2}` with primitive
/// period at most `max_period`, sorted and exactly deduplicated.
pub fn discrete_below_3(max_period: usize) -> Result<Vec<DiscreteValue>> {
    if max_period == 0 {
        return Err(Error::input("max_period must be positive"));
    }
    if max_period > 24 {
        return Err(Error::input("max_period above 24 is not supported"));
    }
    let three = RadicalSum::from_int(3);
    let mut vals: Vec<(RadicalSum, Vec<u32>)> = lyndon_words(max_period)
        .into_iter()
        .filter_map(|w| {
            let (v, _) = periodic_max(&w);
            (v < three).then_some((v, w))
        })
        .collect();
    vals.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.len().cmp(&b.1.len())));
    vals.dedup_by(|a, b| a.0.cmp(&b.0).is_eq());
    Ok(vals.into_iter().map(|(v, period)| DiscreteValue { value: CFValue::new(v), period }).collect())
}
