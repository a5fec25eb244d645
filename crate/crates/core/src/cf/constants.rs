use num_bigint::BigInt;
use serde::Serialize;

use super::expansion::eval_quad;
use super::separation::{a_n, b_n};
use crate::radical::{CFValue, RadicalSum};
use crate::surd::QuadSurd;

/// Literature value of `t*_1 = sup{s : d(s) < 1}`; not recomputed here.
pub const T_STAR_1: &str = "3.334384";

#[derive(Clone, Debug, Serialize)]
pub struct NamedConstant {
    pub name: String,
    pub value: CFValue,
    /// expected leading digits, where a published string exists
    pub reference: Option<String>,
}

/// Freiman's constant, the left end of the Hall ray.
pub fn freiman() -> QuadSurd {
    QuadSurd::new(
        BigInt::from(2221564096u64),
        BigInt::from(283748u64),
        BigInt::from(491993569u64),
        BigInt::from(462),
    )
}

/// `2 + [0; overline(1)] + [0; 2, overline(2,1)]`, the smallest junction
/// value between the letters 1 and 2.
pub fn junction_12() -> RadicalSum {
    let golden = RadicalSum::from_quad(&eval_quad(&[], &[1], 0));
    let other = RadicalSum::from_quad(&eval_quad(&[2], &[2, 1], 0));
    RadicalSum::from_int(2).add(&golden).add(&other)
}

/// `2 + [0; overline(1)] + [0; 1, 3, overline(1,4)]`, the threshold above
/// which the splice uses the alphabet `{1..max(4, floor(η))}`.
pub fn junction_4() -> RadicalSum {
    let golden = RadicalSum::from_quad(&eval_quad(&[], &[1], 0));
    let other = RadicalSum::from_quad(&eval_quad(&[1, 3], &[1, 4], 0));
    RadicalSum::from_int(2).add(&golden).add(&other)
}

/// `max f|Λ(N) = 2 B_N + N`.
pub fn max_f(n: u32) -> QuadSurd {
    b_n(n).mul(&QuadSurd::from_int(2)).add_int(n as i64)
}

/// `min f|Λ(N) = 1 + 2 A_N`.
pub fn min_f(n: u32) -> QuadSurd {
    a_n(n).mul(&QuadSurd::from_int(2)).add_int(1)
}

/// The first Markov values `k_1 = √5`, `k_2 = 2√2`, `k_3 = √221/5`.
pub fn markov_k(i: usize) -> Option<QuadSurd> {
    match i {
        1 => Some(QuadSurd::sqrt_int(5)),
        2 => Some(QuadSurd::sqrt_int(8)),
        3 => Some(QuadSurd::new(0.into(), 1.into(), 5.into(), 221.into())),
        _ => None,
    }
}

pub fn named_constants(ns: &[u32]) -> Vec<NamedConstant> {
    let mut out = vec![
        NamedConstant {
            name: "freiman".into(),
            value: CFValue::from_quad(&freiman()),
            reference: Some("4.52782956616".into()),
        },
        NamedConstant {
            name: "junction_12".into(),
            value: CFValue::new(junction_12()),
            reference: Some("3.0406".into()),
        },
        NamedConstant {
            name: "junction_4".into(),
            value: CFValue::new(junction_4()),
            reference: Some("3.4109".into()),
        },
    ];
    for &n in ns {
        out.push(NamedConstant {
            name: format!("max_f_{n}"),
            value: CFValue::from_quad(&max_f(n)),
            reference: None,
        });
        out.push(NamedConstant {
            name: format!("min_f_{n}"),
            value: CFValue::from_quad(&min_f(n)),
            reference: None,
        });
    }
    out
}
