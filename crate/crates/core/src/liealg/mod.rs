//! Matrix Lie algebra elements over rational functions of `λ`, the group
//! average over a reduction group and the space of invariant elements with
//! bounded poles.

mod mat;

pub use mat::MatElem;

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{nullspace, rational_rows};
use crate::moebius::SpherePoint;
use crate::polyrat::{Poly, RatL};
use crate::redgroup::RedGroup;
use crate::scalars::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("matrix dimensions differ")]
    DimensionMismatch,
    #[error("matrix is not traceless")]
    NotTraceless,
    #[error("matrix is singular")]
    Singular,
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Allowed poles: points of the sphere with maximal orders.
#[derive(Debug, Clone)]
pub struct PoleSet {
    pub caps: Vec<(SpherePoint, u32)>,
}

impl PoleSet {
    pub fn new(caps: Vec<(SpherePoint, u32)>) -> PoleSet {
        PoleSet { caps }
    }

    /// The same cap at every listed point.
    pub fn uniform(points: &[SpherePoint], cap: u32) -> PoleSet {
        PoleSet {
            caps: points.iter().map(|p| (p.clone(), cap)).collect(),
        }
    }

    pub fn points(&self) -> Vec<SpherePoint> {
        self.caps.iter().map(|(p, _)| p.clone()).collect()
    }

    /// Whether every entry has poles only at listed points, within the caps.
    pub fn admits(&self, a: &MatElem) -> bool {
        let pts = self.points();
        a.entries().iter().all(|e| {
            e.is_zero()
                || e.pole_profile(&pts).is_ok_and(|prof| {
                    self.caps.iter().all(|(p, c)| prof.order_at(p) <= *c)
                })
        })
    }

    /// Basis of the scalar functions allowed by the caps:
    /// `λ^j / Π (λ − p)^c` with `j ≤ Σ c` (the cap at infinity included).
    pub fn function_basis(&self, l: u32) -> Vec<RatL> {
        let one = Scalar::one(l);
        let mut den = Poly::constant(one.clone());
        let mut total = 0u32;
        for (p, c) in &self.caps {
            total += c;
            if !p.is_infinity() {
                den = den.mul(&p.linear_factor().pow(*c));
            }
        }
        let fin: u32 = self
            .caps
            .iter()
            .filter(|(p, _)| !p.is_infinity())
            .map(|(_, c)| c)
            .sum();
        let inf: u32 = total - fin;
        (0..=(fin + inf))
            .map(|j| RatL::new(Poly::monomial(one.clone(), j as usize), den.clone()).unwrap())
            .collect()
    }
}

/// `(1/|G|) Σ_g g(a)`.
pub fn average_mat(g: &RedGroup, a: &MatElem) -> Result<MatElem, LieError> {
    if a.dim() != g.dim() {
        return Err(LieError::DimensionMismatch);
    }
    let l = a.conductor();
    let sum = g
        .elements()
        .par_iter()
        .map(|e| e.act(a))
        .reduce(|| MatElem::zero_like(a), |x, y| x.add(&y));
    Ok(sum.scale(&Scalar::from_int(l, g.order() as i64).inv()?))
}

/// Fixed by every generator.
pub fn is_invariant(g: &RedGroup, a: &MatElem) -> bool {
    a.dim() == g.dim() && g.generators().iter().all(|e| e.act(a) == *a)
}

/// Basis of the invariant elements whose poles respect `caps`.
///
/// The ansatz is a general matrix over [`PoleSet::function_basis`]; the
/// invariance equations for each generator are solved exactly. With
/// `traceless` the trace is forced to vanish.
pub fn invariant_space(
    g: &RedGroup,
    caps: &PoleSet,
    traceless: bool,
    l: u32,
) -> Result<Vec<MatElem>, LieError> {
    let d = g.dim();
    let funs = caps.function_basis(l);
    let mut ansatz = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for f in &funs {
                ansatz.push(MatElem::unit(d, i, j, l).scale_fun(f));
            }
        }
    }
    let n = ansatz.len();
    let zero = Scalar::zero(l);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for gen in g.generators() {
        let cols: Vec<Vec<RatL>> = ansatz
            .par_iter()
            .map(|b| gen.act(b).sub(b).entries().to_vec())
            .collect();
        let target = vec![RatL::zero(l); d * d];
        rows.extend(rational_rows(&cols, &target).into_iter().map(|(r, _)| r));
    }
    if traceless {
        let nf = funs.len();
        for k in 0..nf {
            let mut row = vec![zero.clone(); n];
            for i in 0..d {
                row[(i * d + i) * nf + k] = Scalar::one(l);
            }
            rows.push(row);
        }
    }
    Ok(nullspace(rows, n, &zero)
        .into_iter()
        .map(|v| {
            let mut acc = MatElem::zero(d, l).allowing_trace(!traceless);
            for (c, b) in v.iter().zip(&ansatz) {
                if !c.is_zero() {
                    acc = acc.add(&b.scale(c));
                }
            }
            acc.allowing_trace(!traceless)
        })
        .collect())
}
