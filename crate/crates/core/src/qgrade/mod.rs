//! Quasigraded bases `b_i · fⁿ`, exact decomposition into them, structure
//! constants with the quasigrading window, Jacobi verification, change of
//! zero orbit and the splitting into non-negative and negative parts.

mod table;

pub use table::{JacobiReport, QuasiWindow, SplitReport, StructureTable, Term, Vector};

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{rational_rows, solve, Solution};
use crate::liealg::MatElem;
use crate::moebius::SpherePoint;
use crate::polyrat::RatL;
use crate::redgroup::RedGroup;
use crate::scalars::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("not in the span of the basis: {0}")]
    NotInSpan(String),
    #[error("basis elements are linearly dependent")]
    NotUnique,
    #[error("element is not invariant")]
    NotInvariant,
    #[error("degree {0} outside the basis range")]
    RangeExceeded(i64),
    #[error("point lies on the pole orbit")]
    OrbitClash,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Degree-0 generators and the primitive function `f` defining the basis
/// `gens[i] · fⁿ`.
#[derive(Debug, Clone)]
pub struct BasisSpec {
    pub group: Arc<RedGroup>,
    pub names: Vec<String>,
    pub gens: Vec<MatElem>,
    pub f: RatL,
    /// A pole of `f` and a zero of `f`, used to bound decomposition degrees.
    pub pole_point: SpherePoint,
    pub zero_point: SpherePoint,
    pub pole_orbit: Vec<SpherePoint>,
    pub zero_orbit: Vec<SpherePoint>,
    pub range: (i64, i64),
}

impl BasisSpec {
    pub fn new(
        group: Arc<RedGroup>,
        names: Vec<String>,
        gens: Vec<MatElem>,
        f: RatL,
        pole_point: SpherePoint,
        zero_point: SpherePoint,
    ) -> BasisSpec {
        let pole_orbit = group.orbit_points(&pole_point);
        let zero_orbit = group.orbit_points(&zero_point);
        BasisSpec {
            group,
            names,
            gens,
            f,
            pole_point,
            zero_point,
            pole_orbit,
            zero_orbit,
            range: (-2, 2),
        }
    }

    pub fn with_range(mut self, lo: i64, hi: i64) -> BasisSpec {
        self.range = (lo, hi);
        self
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn conductor(&self) -> u32 {
        self.f.conductor()
    }

    fn fpow(&self, n: i64) -> RatL {
        self.f.pow(n).expect("nonzero primitive function")
    }

    /// `gens[i] · fⁿ` without a range check.
    pub fn element(&self, i: usize, n: i64) -> MatElem {
        self.gens[i].scale_fun(&self.fpow(n))
    }

    /// Linear combination of basis elements.
    pub fn combine(&self, v: &Vector) -> MatElem {
        let l = self.conductor();
        let d = self.gens[0].dim();
        let mut acc = MatElem::zero(d, l);
        for ((i, n), c) in v {
            acc = acc.add(&self.element(*i, *n).scale(c));
        }
        acc
    }
}

/// `gens[i] · fⁿ` for `n` within the declared range.
pub fn basis_element(b: &BasisSpec, i: usize, n: i64) -> Result<MatElem, QError> {
    if n < b.range.0 || n > b.range.1 {
        return Err(QError::RangeExceeded(n));
    }
    Ok(b.element(i, n))
}

fn div_ceil(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

/// Degrees that can occur in the expansion of `a`, from pole orders at the
/// two orbit representatives, widened by `margin`.
fn degree_window(a: &MatElem, b: &BasisSpec, margin: i64) -> (i64, i64) {
    let e1 = -b.f.order_at(&b.pole_point).expect("nonzero f");
    let e2 = b.f.order_at(&b.zero_point).expect("nonzero f");
    let top = |p: &SpherePoint, e: i64| {
        let va = a.order_at(p).unwrap_or(0);
        let vb = b.gens.iter().filter_map(|g| g.order_at(p)).max().unwrap_or(0);
        div_ceil(vb - va, e).max(0)
    };
    (-top(&b.zero_point, e2) - margin, top(&b.pole_point, e1) + margin)
}

/// Exact coefficients `c_{i,n}` with `Σ c_{i,n} gens[i] fⁿ = a`.
///
/// Candidate degrees are bounded by the pole orders of `a`; the identity is
/// cleared of denominators entrywise and solved by exact elimination. The
/// result is checked by reconstruction.
pub fn decompose(a: &MatElem, b: &BasisSpec) -> Result<Vector, QError> {
    if a.is_zero() {
        return Ok(Vector::new());
    }
    let zero = Scalar::zero(b.conductor());
    for margin in [0, 1, 3] {
        let (lo, hi) = degree_window(a, b, margin);
        let keys: Vec<(usize, i64)> = (lo..=hi)
            .flat_map(|n| (0..b.len()).map(move |i| (i, n)))
            .collect();
        let cands: Vec<Vec<RatL>> = keys
            .iter()
            .map(|&(i, n)| b.element(i, n).entries().to_vec())
            .collect();
        let rows = rational_rows(&cands, a.entries());
        match solve(rows, keys.len(), &zero) {
            Solution::Unique(x) => {
                let v: Vector = keys
                    .into_iter()
                    .zip(x)
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if b.combine(&v) != *a {
                    return Err(QError::NotInSpan("reconstruction mismatch".into()));
                }
                return Ok(v);
            }
            Solution::Underdetermined(..) => return Err(QError::NotUnique),
            Solution::Inconsistent => continue,
        }
    }
    Err(QError::NotInSpan(format!(
        "no combination within degrees {:?}",
        degree_window(a, b, 3)
    )))
}

/// Bracket every pair of degree-0 generators and decompose; the shift law
/// extends the result to all degrees.
pub fn structure_table(b: &BasisSpec) -> Result<StructureTable, QError> {
    let n = b.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let results: Vec<((usize, usize), Vector)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let c = b.gens[i].bracket(&b.gens[j]);
            decompose(&c, b)
                .map(|v| ((i, j), v))
                .map_err(|e| match e {
                    QError::NotInSpan(m) => {
                        QError::NotInSpan(format!("[{}, {}]: {m}", b.names[i], b.names[j]))
                    }
                    other => other,
                })
        })
        .collect::<Result<_, _>>()?;
    let mut entries = BTreeMap::new();
    for ((i, j), v) in results {
        let terms: Vec<Term> = v
            .iter()
            .map(|(&(k, off), c)| Term {
                k,
                offset: off,
                coeff: c.clone(),
            })
            .collect();
        let neg = terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.neg_ref(),
                ..t.clone()
            })
            .collect();
        entries.insert((i, j), terms);
        entries.insert((j, i), neg);
    }
    for i in 0..n {
        entries.insert((i, i), Vec::new());
    }
    Ok(StructureTable::new(b.names.clone(), entries, b.conductor()))
}

/// `x_ν^n = Σ_k C(n,k) (−f(ν))^k x_μ^{n−k}`: row `n` holds the coefficients of
/// the new basis element of degree `n` on old degrees `0..=n`.
pub fn change_basis(b: &BasisSpec, nu: &SpherePoint, nmax: usize) -> Result<Vec<Vec<Scalar>>, QError> {
    if b.pole_orbit.contains(nu) {
        return Err(QError::OrbitClash);
    }
    let c = b.f.eval_at(nu).ok_or(QError::OrbitClash)?;
    Ok(binomial_shift(&c.neg_ref(), nmax))
}

/// Lower-triangular `T[n][n−k] = C(n,k) s^k`.
pub fn binomial_shift(s: &Scalar, nmax: usize) -> Vec<Vec<Scalar>> {
    let zero = s.zero_like();
    (0..=nmax)
        .map(|n| {
            let mut row = vec![zero.clone(); nmax + 1];
            let mut binom = 1i64;
            for k in 0..=n {
                row[n - k] = &Scalar::from_int(s.conductor(), binom) * &s.pow(k as i64).unwrap();
                binom = binom * (n - k) as i64 / (k + 1) as i64;
            }
            row
        })
        .collect()
}

/// Product of square matrices of scalars.
pub fn mat_product(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(a[i][0].zero_like(), |acc, k| &acc + &(&a[i][k] * &b[k][j]))
                })
                .collect()
        })
        .collect()
}

/// Whether every basis element of non-negative degree has poles only on the
/// pole orbit and every one of negative degree only on the zero orbit.
pub fn poles_separate(b: &BasisSpec) -> bool {
    (b.range.0..=b.range.1).all(|n| {
        let side = if n >= 0 { &b.pole_orbit } else { &b.zero_orbit };
        (0..b.len()).all(|i| b.element(i, n).poles_within(side))
    })
}
