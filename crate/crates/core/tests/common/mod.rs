#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use autlie::cases::{build_case, CASE_IDS};
use autlie::liealg::MatElem;
use autlie::polyrat::RatL;
use autlie::redgroup::RedGroup;
use autlie::scalars::Scalar;
use proptest::prelude::*;

/// Reduction groups of every case, deduplicated by name.
pub fn case_groups() -> Vec<Arc<RedGroup>> {
    let mut out: Vec<Arc<RedGroup>> = Vec::new();
    for id in CASE_IDS {
        let g = build_case(id, None).unwrap().basis.group;
        if !out.iter().any(|h| h.name() == g.name()) {
            out.push(g);
        }
    }
    out
}

/// Laurent polynomial `Σ c_k λ^k` for `k` in `-2..=2`.
pub fn laurent(l: u32, cs: &[i64]) -> RatL {
    let terms: BTreeMap<i64, Scalar> = cs
        .iter()
        .enumerate()
        .map(|(k, &c)| (k as i64 - 2, Scalar::from_int(l, c)))
        .collect();
    RatL::laurent_poly(l, &terms)
}

/// Traceless `dim × dim` matrix from raw coefficients (five per entry).
pub fn traceless(dim: usize, l: u32, raw: &[i64]) -> MatElem {
    let mut entries: Vec<RatL> = raw.chunks(5).take(dim * dim).map(|c| laurent(l, c)).collect();
    let tr = (0..dim - 1).fold(RatL::zero(l), |acc, i| &acc + &entries[i * dim + i]);
    entries[dim * dim - 1] = -&tr;
    MatElem::new(dim, entries).unwrap()
}

pub fn raw_coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, 45)
}
