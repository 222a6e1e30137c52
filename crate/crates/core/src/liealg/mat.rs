use std::fmt;

use serde_json::{json, Value};

use super::LieError;
use crate::moebius::{MoebiusT, SpherePoint};
use crate::polyrat::RatL;
use crate::scalars::{Scalar, Tower};

/// A `d × d` matrix of rational functions of `λ`, stored row-major.
///
/// Elements of `sl(d)` are traceless; `allow_trace` lifts that constraint
/// for `gl(d)` elements and for automorphism matrices.
#[derive(Clone)]
pub struct MatElem {
    dim: usize,
    entries: Vec<RatL>,
    allow_trace: bool,
}

impl MatElem {
    /// A traceless matrix.
    pub fn new(dim: usize, entries: Vec<RatL>) -> Result<MatElem, LieError> {
        if entries.len() != dim * dim {
            return Err(LieError::DimensionMismatch);
        }
        let m = MatElem {
            dim,
            entries,
            allow_trace: false,
        };
        if !m.trace().is_zero() {
            return Err(LieError::NotTraceless);
        }
        Ok(m)
    }

    /// Any matrix; the trace is unconstrained.
    pub fn general(dim: usize, entries: Vec<RatL>) -> MatElem {
        assert_eq!(entries.len(), dim * dim, "entry count");
        MatElem {
            dim,
            entries,
            allow_trace: true,
        }
    }

    pub fn allowing_trace(mut self, yes: bool) -> MatElem {
        self.allow_trace = yes;
        self
    }

    pub fn zero(dim: usize, l: u32) -> MatElem {
        MatElem {
            dim,
            entries: vec![RatL::zero(l); dim * dim],
            allow_trace: false,
        }
    }

    pub fn zero_like(a: &MatElem) -> MatElem {
        MatElem::zero(a.dim, a.conductor())
    }

    pub fn identity(dim: usize, l: u32) -> MatElem {
        let mut m = MatElem::zero(dim, l);
        for i in 0..dim {
            m.entries[i * dim + i] = RatL::one(l);
        }
        m.allow_trace = true;
        m
    }

    /// The matrix unit `e_ij` (0-based indices).
    pub fn unit(dim: usize, i: usize, j: usize, l: u32) -> MatElem {
        let mut m = MatElem::zero(dim, l);
        m.entries[i * dim + j] = RatL::one(l);
        m.allow_trace = i == j;
        m
    }

    /// Constant matrix from row-major scalars.
    pub fn from_scalars(dim: usize, vals: &[Scalar]) -> MatElem {
        MatElem::general(dim, vals.iter().cloned().map(RatL::constant).collect())
    }

    pub fn diag(vals: &[RatL]) -> MatElem {
        let d = vals.len();
        let l = vals[0].conductor();
        let mut m = MatElem::zero(d, l);
        for (i, v) in vals.iter().enumerate() {
            m.entries[i * d + i] = v.clone();
        }
        m.allow_trace = true;
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.entries[0].conductor()
    }

    pub fn allows_trace(&self) -> bool {
        self.allow_trace
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatL {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[RatL] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatL::is_zero)
    }

    pub fn trace(&self) -> RatL {
        (0..self.dim).fold(RatL::zero(self.conductor()), |acc, i| &acc + self.entry(i, i))
    }

    fn zip(&self, other: &MatElem, f: impl Fn(&RatL, &RatL) -> RatL) -> MatElem {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        MatElem {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
            allow_trace: self.allow_trace || other.allow_trace,
        }
    }

    fn map(&self, f: impl Fn(&RatL) -> RatL) -> MatElem {
        MatElem {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
            allow_trace: self.allow_trace,
        }
    }

    pub fn add(&self, other: &MatElem) -> MatElem {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &MatElem) -> MatElem {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> MatElem {
        self.map(RatL::neg)
    }

    pub fn scale(&self, c: &Scalar) -> MatElem {
        self.map(|a| a.scale(c))
    }

    /// Multiply every entry by a function of `λ`.
    pub fn scale_fun(&self, f: &RatL) -> MatElem {
        self.map(|a| a * f)
    }

    /// Matrix product.
    pub fn matmul(&self, other: &MatElem) -> MatElem {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let l = self.conductor();
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = RatL::zero(l);
                for k in 0..d {
                    let (a, b) = (self.entry(i, k), other.entry(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        MatElem::general(d, entries)
    }

    /// `ab − ba`.
    pub fn bracket(&self, other: &MatElem) -> MatElem {
        let mut c = self.matmul(other).sub(&other.matmul(self));
        c.allow_trace = self.allow_trace || other.allow_trace;
        c
    }

    pub fn transpose(&self) -> MatElem {
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                entries.push(self.entry(j, i).clone());
            }
        }
        MatElem {
            dim: d,
            entries,
            allow_trace: self.allow_trace,
        }
    }

    /// Gauss–Jordan inverse over rational functions.
    pub fn inverse(&self) -> Result<MatElem, LieError> {
        let d = self.dim;
        let l = self.conductor();
        let mut a: Vec<Vec<RatL>> = (0..d)
            .map(|i| (0..d).map(|j| self.entry(i, j).clone()).collect())
            .collect();
        let mut b: Vec<Vec<RatL>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { RatL::one(l) } else { RatL::zero(l) })
                    .collect()
            })
            .collect();
        for c in 0..d {
            let p = (c..d).find(|&r| !a[r][c].is_zero()).ok_or(LieError::Singular)?;
            a.swap(c, p);
            b.swap(c, p);
            let inv = a[c][c].inv()?;
            for j in 0..d {
                a[c][j] = &a[c][j] * &inv;
                b[c][j] = &b[c][j] * &inv;
            }
            for r in 0..d {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for j in 0..d {
                    a[r][j] = &a[r][j] - &(&f * &a[c][j]);
                    b[r][j] = &b[r][j] - &(&f * &b[c][j]);
                }
            }
        }
        Ok(MatElem::general(d, b.into_iter().flatten().collect()))
    }

    /// Entrywise pullback `a ∘ m⁻¹`.
    pub fn pullback(&self, m: &MoebiusT) -> MatElem {
        if m.is_identity() {
            return self.clone();
        }
        let inv = m.inverse();
        self.map(|a| a.compose_with(&inv))
    }

    /// The function `c` with `self = c · other`, if one exists.
    pub fn ratio_to(&self, other: &MatElem) -> Option<RatL> {
        if self.dim != other.dim {
            return None;
        }
        let k = other.entries.iter().position(|e| !e.is_zero())?;
        let c = &self.entries[k] / &other.entries[k];
        if c.is_zero() {
            return None;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| *a == b * &c)
            .then_some(c)
    }

    /// Smallest order of vanishing over the nonzero entries (`None` for zero).
    pub fn order_at(&self, p: &SpherePoint) -> Option<i64> {
        self.entries.iter().filter_map(|e| e.order_at(p)).min()
    }

    /// Whether every entry is regular away from `poles`.
    pub fn poles_within(&self, poles: &[SpherePoint]) -> bool {
        self.entries
            .iter()
            .all(|e| e.is_zero() || e.pole_profile(poles).is_ok())
    }

    pub fn recast(&self, m: u32) -> Result<MatElem, LieError> {
        Ok(MatElem {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|e| e.recast(m))
                .collect::<Result<_, _>>()?,
            allow_trace: self.allow_trace,
        })
    }

    /// `[[a, b], [c, d]]` with entries as `λ`-expressions.
    pub fn to_text(&self, tower: &Tower) -> String {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| {
                let cells: Vec<String> =
                    (0..self.dim).map(|j| self.entry(i, j).to_text(tower)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }

    pub fn to_json(&self, tower: &Tower) -> Value {
        let rows: Vec<Value> = (0..self.dim)
            .map(|i| {
                Value::Array(
                    (0..self.dim)
                        .map(|j| Value::String(self.entry(i, j).to_text(tower)))
                        .collect(),
                )
            })
            .collect();
        json!({ "dim": self.dim, "entries": rows })
    }
}

impl PartialEq for MatElem {
    fn eq(&self, other: &MatElem) -> bool {
        self.dim == other.dim && self.entries == other.entries
    }
}

impl Eq for MatElem {}

impl fmt::Debug for MatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(&Tower::standard(self.conductor())))
    }
}
