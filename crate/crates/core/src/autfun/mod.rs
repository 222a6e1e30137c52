//! Scalar automorphic functions: the group average, the pole construction
//! `f̂`, primitive automorphic functions and their rebasing.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::moebius::{catalog_with, generator_conductor, FinGroup, Orbit, SpherePoint};
use crate::polyrat::RatL;
use crate::scalars::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutFunError {
    #[error("the pole and zero orbits coincide")]
    SameOrbit,
    #[error("point lies on the pole orbit")]
    OrbitClash,
    #[error("group average is constant")]
    ConstantAverage,
    #[error("no zero orbit recorded")]
    NoZeroOrbit,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `(1/|G|) Σ_σ f ∘ σ⁻¹`.
pub fn average_fun(g: &FinGroup, f: &RatL) -> RatL {
    let l = f.conductor();
    let sum = g
        .elements()
        .par_iter()
        .map(|m| f.pullback(m))
        .reduce(|| RatL::zero(l), |a, b| &a + &b);
    sum.scale(&Scalar::from_int(l, g.order() as i64).inv().unwrap())
}

/// Average of `(λ − γ)^(−ord γ)`; at `γ = ∞` the average of `λ^(ord ∞)`.
///
/// Catalog groups are averaged in the smallest field holding the generators
/// and `γ`, then embedded.
pub fn fhat(g: &FinGroup, gamma: &SpherePoint) -> RatL {
    let l = g.conductor();
    if let Some(kind) = g.kind() {
        let small = generator_conductor(kind);
        if small < l && l.is_multiple_of(small) {
            if let (Ok(gs), Ok(pt)) = (catalog_with(kind, small), gamma.recast(small)) {
                return fhat(&gs, &pt).recast(l).expect("subfield embeds");
            }
        }
    }
    let r = g.orbit_of(gamma).isotropy_order as i64;
    let seed = match gamma.finite_value() {
        None => RatL::monomial(Scalar::one(l), r),
        Some(x) => {
            let lin = &RatL::lambda(l) - &RatL::constant(x);
            lin.pow(-r).unwrap()
        }
    };
    average_fun(g, &seed)
}

/// An invariant rational function with poles on one orbit and, when known,
/// zeros on another.
#[derive(Debug, Clone)]
pub struct AutoFun {
    pub group: Arc<FinGroup>,
    pub fun: RatL,
    pub pole_orbit: Orbit,
    pub zero_orbit: Option<Orbit>,
}

impl AutoFun {
    /// Rescale so the leading Laurent coefficient at the pole seed is 1.
    pub fn normalize(mut self) -> AutoFun {
        let c = self.fun.laurent_at(&self.pole_orbit.seed, 1).coeffs[0].clone();
        self.fun = self.fun.scale(&c.inv().expect("nonzero leading coefficient"));
        self
    }

    pub fn is_invariant(&self) -> bool {
        self.group
            .generators()
            .iter()
            .all(|m| self.fun.pullback(m) == self.fun)
    }

    /// Poles exactly on the pole orbit and zeros exactly on the zero orbit,
    /// each of multiplicity equal to the isotropy order.
    pub fn has_primitive_divisor(&self) -> bool {
        let Some(zo) = &self.zero_orbit else {
            return false;
        };
        let poles_ok = self
            .fun
            .pole_profile(&self.pole_orbit.points)
            .is_ok_and(|p| {
                self.pole_orbit
                    .points
                    .iter()
                    .all(|q| p.order_at(q) as usize == self.pole_orbit.isotropy_order)
            });
        let inv = self.fun.inv().unwrap();
        let zeros_ok = inv.pole_profile(&zo.points).is_ok_and(|p| {
            zo.points
                .iter()
                .all(|q| p.order_at(q) as usize == zo.isotropy_order)
        });
        poles_ok && zeros_ok
    }

    /// `c/f`: exchange the roles of the two orbits.
    pub fn swap(&self) -> Result<AutoFun, AutFunError> {
        let zo = self.zero_orbit.clone().ok_or(AutFunError::NoZeroOrbit)?;
        Ok(AutoFun {
            group: self.group.clone(),
            fun: self.fun.inv()?,
            pole_orbit: zo,
            zero_orbit: Some(self.pole_orbit.clone()),
        }
        .normalize())
    }

    /// `f − f(γ₃)`: move the zeros to the orbit of `γ₃`.
    pub fn zero_shift(&self, g3: &SpherePoint) -> Result<AutoFun, AutFunError> {
        if self.pole_orbit.contains(g3) {
            return Err(AutFunError::OrbitClash);
        }
        let v = self.fun.eval_at(g3).ok_or(AutFunError::OrbitClash)?;
        Ok(AutoFun {
            group: self.group.clone(),
            fun: &self.fun - &RatL::constant(v),
            pole_orbit: self.pole_orbit.clone(),
            zero_orbit: Some(self.group.orbit_of(g3)),
        }
        .normalize())
    }

    /// `(f − f(γ₄))/(f − f(γ₃))`: poles on the orbit of `γ₃`, zeros on that of `γ₄`.
    pub fn rebase(&self, g3: &SpherePoint, g4: &SpherePoint) -> Result<AutoFun, AutFunError> {
        if self.pole_orbit.contains(g3) || self.pole_orbit.contains(g4) {
            return Err(AutFunError::OrbitClash);
        }
        let o3 = self.group.orbit_of(g3);
        if o3.contains(g4) {
            return Err(AutFunError::SameOrbit);
        }
        let v3 = RatL::constant(self.fun.eval_at(g3).ok_or(AutFunError::OrbitClash)?);
        let v4 = RatL::constant(self.fun.eval_at(g4).ok_or(AutFunError::OrbitClash)?);
        Ok(AutoFun {
            group: self.group.clone(),
            fun: &(&self.fun - &v4) / &(&self.fun - &v3),
            pole_orbit: o3,
            zero_orbit: Some(self.group.orbit_of(g4)),
        }
        .normalize())
    }

    /// Whether `other` equals `self` up to a nonzero constant factor.
    pub fn proportional_to(&self, other: &RatL) -> bool {
        proportional(&self.fun, other)
    }
}

/// `a = c·b` for some nonzero constant `c`.
pub fn proportional(a: &RatL, b: &RatL) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    (a / b).is_constant()
}

/// The primitive automorphic function with poles on `𝒢(γ₁)` and zeros on `𝒢(γ₂)`.
pub fn primitive(
    g: &Arc<FinGroup>,
    g1: &SpherePoint,
    g2: &SpherePoint,
) -> Result<AutoFun, AutFunError> {
    let pole_orbit = g.orbit_of(g1);
    if pole_orbit.contains(g2) {
        return Err(AutFunError::SameOrbit);
    }
    let h = fhat(g, g1);
    if h.is_constant() {
        return Err(AutFunError::ConstantAverage);
    }
    let v = h.eval_at(g2).expect("γ₂ is off the pole orbit");
    Ok(AutoFun {
        group: g.clone(),
        fun: &h - &RatL::constant(v),
        pole_orbit,
        zero_orbit: Some(g.orbit_of(g2)),
    }
    .normalize())
}
