use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Poly, PolyError};
use crate::moebius::{MoebiusT, SpherePoint};
use crate::scalars::{Scalar, ScalarError, Tower};

/// Rational function of `λ` over `Scalar` in canonical form:
/// coprime numerator and monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatL {
    num: Poly,
    den: Poly,
}

/// Pole orders on the Riemann sphere, keyed by position in the allowed list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleProfile {
    pub entries: Vec<(SpherePoint, u32)>,
}

impl PoleProfile {
    pub fn order_at(&self, p: &SpherePoint) -> u32 {
        self.entries
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, k)| *k)
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().map(|(_, k)| k).sum()
    }
}

/// A finite Laurent prefix: coefficient of `t^start`, `t^(start+1)`, ….
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent {
    pub start: i64,
    pub coeffs: Vec<Scalar>,
}

impl Laurent {
    /// Coefficient of `t^k` (zero below `start`; `None` past the computed prefix).
    pub fn coeff(&self, k: i64) -> Option<Scalar> {
        if k < self.start {
            return self.coeffs.first().map(Scalar::zero_like);
        }
        self.coeffs.get((k - self.start) as usize).cloned()
    }
}

impl RatL {
    /// Build from an arbitrary pair, cancelling common factors.
    pub fn new(num: Poly, den: Poly) -> Result<RatL, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatL::zero(den.conductor().unwrap()));
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 {
            (num.exact_div(&g), den.exact_div(&g))
        } else {
            (num, den)
        };
        Ok(RatL::normalized(num, den))
    }

    /// Pair already known to be coprime; only rescales to a monic denominator.
    pub(crate) fn normalized(num: Poly, den: Poly) -> RatL {
        if den.is_monic() {
            return RatL { num, den };
        }
        let lc = den.lead().unwrap().inv().expect("nonzero denominator");
        RatL {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero(l: u32) -> RatL {
        RatL {
            num: Poly::zero(),
            den: Poly::constant(Scalar::one(l)),
        }
    }

    pub fn one(l: u32) -> RatL {
        RatL::constant(Scalar::one(l))
    }

    pub fn from_int(l: u32, v: i64) -> RatL {
        RatL::constant(Scalar::from_int(l, v))
    }

    pub fn constant(c: Scalar) -> RatL {
        let l = c.conductor();
        RatL {
            num: Poly::constant(c),
            den: Poly::constant(Scalar::one(l)),
        }
    }

    pub fn from_poly(p: Poly, l: u32) -> RatL {
        RatL {
            num: p,
            den: Poly::constant(Scalar::one(l)),
        }
    }

    /// `λ`.
    pub fn lambda(l: u32) -> RatL {
        RatL::monomial(Scalar::one(l), 1)
    }

    /// `c·λ^k` for any integer `k`.
    pub fn monomial(c: Scalar, k: i64) -> RatL {
        let l = c.conductor();
        if c.is_zero() {
            return RatL::zero(l);
        }
        let one = Scalar::one(l);
        if k >= 0 {
            RatL {
                num: Poly::monomial(c, k as usize),
                den: Poly::constant(one),
            }
        } else {
            RatL {
                num: Poly::constant(c),
                den: Poly::monomial(one, (-k) as usize),
            }
        }
    }

    /// `Σ c_k λ^k` over integer exponents.
    pub fn laurent_poly(l: u32, terms: &BTreeMap<i64, Scalar>) -> RatL {
        let lo = terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| *k)
            .min();
        let Some(lo) = lo else {
            return RatL::zero(l);
        };
        let shift = (-lo).max(0);
        let hi = *terms.keys().max().unwrap();
        let mut v = vec![Scalar::zero(l); (hi + shift + 1) as usize];
        for (k, c) in terms.iter().filter(|(k, _)| **k >= lo) {
            v[(k + shift) as usize] = c.clone();
        }
        let num = Poly::new(v);
        RatL::new(num, Poly::monomial(Scalar::one(l), shift as usize)).expect("nonzero")
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn conductor(&self) -> u32 {
        self.den.conductor().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.degree() == Some(0) && self.num.degree() == Some(0) && self.num.coeffs()[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.degree() == Some(0) && self.num.degree().unwrap_or(0) == 0
    }

    /// The constant value when `self` does not depend on `λ`.
    pub fn as_constant(&self) -> Option<Scalar> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.num
                .coeffs()
                .first()
                .cloned()
                .unwrap_or_else(|| Scalar::zero(self.conductor())),
        )
    }

    /// Degree as a map of the sphere: `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    /// `Some(k)` when the denominator is `λ^k`.
    pub fn monomial_den(&self) -> Option<usize> {
        let d = self.den.degree()?;
        (self.den.valuation() == Some(d)).then_some(d)
    }

    pub fn neg(&self) -> RatL {
        RatL {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn check(&self, other: &RatL) -> Result<(), ScalarError> {
        let (a, b) = (self.conductor(), other.conductor());
        if a != b {
            Err(ScalarError::TowerMismatch(format!("conductor {a} vs {b}")))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &RatL) -> Result<RatL, ScalarError> {
        self.check(other)?;
        Ok(self.add_ref(other))
    }

    pub fn try_sub(&self, other: &RatL) -> Result<RatL, ScalarError> {
        self.check(other)?;
        Ok(self.add_ref(&other.neg()))
    }

    pub fn try_mul(&self, other: &RatL) -> Result<RatL, ScalarError> {
        self.check(other)?;
        Ok(self.mul_ref(other))
    }

    pub fn try_div(&self, other: &RatL) -> Result<RatL, ScalarError> {
        self.check(other)?;
        Ok(self.mul_ref(&other.inv()?))
    }

    fn add_ref(&self, other: &RatL) -> RatL {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            return RatL::new(num, self.den.clone()).expect("nonzero");
        }
        let g = Poly::gcd(&self.den, &other.den);
        if g.degree() == Some(0) {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            if num.is_zero() {
                return RatL::zero(self.conductor());
            }
            return RatL {
                num,
                den: self.den.mul(&other.den),
            };
        }
        let da = self.den.exact_div(&g);
        let db = other.den.exact_div(&g);
        let num = self.num.mul(&db).add(&other.num.mul(&da));
        if num.is_zero() {
            return RatL::zero(self.conductor());
        }
        let den = da.mul(&other.den);
        let h = Poly::gcd(&num, &g);
        if h.degree().unwrap_or(0) > 0 {
            RatL {
                num: num.exact_div(&h),
                den: den.exact_div(&h),
            }
        } else {
            RatL { num, den }
        }
    }

    fn mul_ref(&self, other: &RatL) -> RatL {
        if self.is_zero() || other.is_zero() {
            return RatL::zero(self.conductor());
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let g1 = Poly::gcd(&self.num, &other.den);
        let g2 = Poly::gcd(&other.num, &self.den);
        let cut = |p: &Poly, g: &Poly| {
            if g.degree().unwrap_or(0) > 0 {
                p.exact_div(g)
            } else {
                p.clone()
            }
        };
        RatL {
            num: cut(&self.num, &g1).mul(&cut(&other.num, &g2)),
            den: cut(&self.den, &g2).mul(&cut(&other.den, &g1)),
        }
    }

    pub fn scale(&self, c: &Scalar) -> RatL {
        if c.is_zero() {
            return RatL::zero(self.conductor());
        }
        RatL {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatL, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(RatL::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Result<RatL, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RatL {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Value at a finite point; `None` at a pole.
    pub fn eval(&self, x: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x).try_div(&d).expect("nonzero"))
    }

    /// Value at a point of the sphere; `None` at a pole.
    pub fn eval_at(&self, p: &SpherePoint) -> Option<Scalar> {
        match p.finite_value() {
            Some(x) => self.eval(&x),
            None => {
                let (dn, dd) = (self.num.degree(), self.den.degree().unwrap());
                match dn {
                    None => Some(Scalar::zero(self.conductor())),
                    Some(n) if n > dd => None,
                    Some(n) if n < dd => Some(Scalar::zero(self.conductor())),
                    Some(_) => Some(self.num.lead().unwrap().clone()),
                }
            }
        }
    }

    /// Pullback `f ∘ m⁻¹`.
    pub fn pullback(&self, m: &MoebiusT) -> RatL {
        self.compose_with(&m.inverse())
    }

    /// Composition `f ∘ m`, i.e. `f((aλ+b)/(cλ+d))`.
    pub fn compose_with(&self, m: &MoebiusT) -> RatL {
        if self.is_constant() {
            return self.clone();
        }
        let [a, b, c, d] = m.entries();
        let top = Poly::new(vec![b.clone(), a.clone()]);
        let bot = Poly::new(vec![d.clone(), c.clone()]);
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap();
        let mut num = self.num.homogeneous_subst(&top, &bot, dn);
        let mut den = self.den.homogeneous_subst(&top, &bot, dd);
        if dd > dn {
            num = num.mul(&bot.pow((dd - dn) as u32));
        } else if dn > dd {
            den = den.mul(&bot.pow((dn - dd) as u32));
        }
        RatL::normalized(num, den)
    }

    /// Order of vanishing at `p`: positive for zeros, negative for poles.
    pub fn order_at(&self, p: &SpherePoint) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        match p.finite_value() {
            None => {
                Some(self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64)
            }
            Some(x) => {
                let ns = self.num.taylor_shift(&x);
                let ds = self.den.taylor_shift(&x);
                Some(ns.valuation().unwrap() as i64 - ds.valuation().unwrap() as i64)
            }
        }
    }

    /// First `depth` Laurent coefficients at `p`, starting from the leading exponent.
    ///
    /// The local parameter is `λ − p` at finite points and `1/λ` at infinity.
    pub fn laurent_at(&self, p: &SpherePoint, depth: usize) -> Laurent {
        let l = self.conductor();
        if self.is_zero() {
            return Laurent {
                start: 0,
                coeffs: vec![Scalar::zero(l); depth],
            };
        }
        let (n, d, extra) = match p.finite_value() {
            Some(x) => (self.num.taylor_shift(&x), self.den.taylor_shift(&x), 0i64),
            None => {
                let dn = self.num.degree().unwrap() as i64;
                let dd = self.den.degree().unwrap() as i64;
                (self.num.reverse(), self.den.reverse(), dd - dn)
            }
        };
        let vn = n.valuation().unwrap();
        let vd = d.valuation().unwrap();
        let n = n.unshift(vn);
        let d = d.unshift(vd);
        let start = vn as i64 - vd as i64 + extra;
        Laurent {
            start,
            coeffs: series_div(&n, &d, depth),
        }
    }

    /// Pole orders at the allowed points; errors if any pole lies elsewhere.
    pub fn pole_profile(&self, allowed: &[SpherePoint]) -> Result<PoleProfile, PolyError> {
        let mut den = self.den.clone();
        let mut entries = Vec::new();
        let mut inf_allowed = false;
        for p in allowed {
            if p.is_infinity() {
                inf_allowed = true;
                let dn = self.num.degree().unwrap_or(0);
                let dd = self.den.degree().unwrap();
                if dn > dd {
                    entries.push((p.clone(), (dn - dd) as u32));
                }
                continue;
            }
            let lin = p.linear_factor();
            let mut k = 0u32;
            while den.degree().unwrap_or(0) > 0 {
                match den.try_exact_div(&lin) {
                    Some(q) => {
                        den = q;
                        k += 1;
                    }
                    None => break,
                }
            }
            if k > 0 {
                entries.push((p.clone(), k));
            }
        }
        if den.degree().unwrap_or(0) > 0 {
            return Err(PolyError::PoleOutsideGamma(format!(
                "residual denominator {:?}",
                den.monic()
            )));
        }
        if !inf_allowed && self.num.degree().unwrap_or(0) > self.den.degree().unwrap() {
            return Err(PolyError::PoleOutsideGamma("pole at infinity".into()));
        }
        Ok(PoleProfile { entries })
    }

    /// Apply a map to every coefficient (e.g. parameter specialization).
    pub fn map_coeffs(
        &self,
        f: impl Fn(&Scalar) -> Result<Scalar, ScalarError> + Copy,
    ) -> Result<RatL, ScalarError> {
        RatL::new(self.num.map_coeffs(f)?, self.den.map_coeffs(f)?)
    }

    /// Move all coefficients to conductor `m`.
    pub fn recast(&self, m: u32) -> Result<RatL, ScalarError> {
        Ok(RatL {
            num: self.num.map_coeffs(|c| c.recast(m))?,
            den: self.den.map_coeffs(|c| c.recast(m))?,
        })
    }

    /// Laurent-polynomial terms when the denominator is a power of `λ`.
    pub fn laurent_terms(&self) -> Option<BTreeMap<i64, Scalar>> {
        let k = self.monomial_den()? as i64;
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 - k, c.clone()))
                .collect(),
        )
    }

    /// `poly([c0,c1,...])/poly([d0,d1,...])`.
    pub fn to_poly_text(&self, tower: &Tower) -> String {
        let list = |p: &Poly| {
            p.coeffs()
                .iter()
                .map(|c| c.to_text_in(tower))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("poly([{}])/poly([{}])", list(&self.num), list(&self.den))
    }

    /// Human-readable `λ`-expression using the variable `l`.
    pub fn to_text(&self, tower: &Tower) -> String {
        if let Some(terms) = self.laurent_terms() {
            if terms.is_empty() {
                return "0".into();
            }
            let mut out = String::new();
            for (k, c) in terms.iter().rev() {
                let body = laurent_term(c, tower, *k);
                if out.is_empty() {
                    out.push_str(&body);
                } else if let Some(rest) = body.strip_prefix('-') {
                    out.push_str(" - ");
                    out.push_str(rest);
                } else {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
            }
            return out;
        }
        format!(
            "({})/({})",
            self.num.to_text_var("l", tower),
            self.den.to_text_var("l", tower)
        )
    }
}

fn laurent_term(c: &Scalar, tower: &Tower, k: i64) -> String {
    if k >= 0 {
        return super::poly::term_text(c, tower, "l", k as usize);
    }
    let mono = format!("l^{k}");
    if c.is_one() {
        return mono;
    }
    if c.neg_ref().is_one() {
        return format!("-{mono}");
    }
    if c.is_compound() {
        let neg = c.neg_ref();
        if !neg.is_compound() {
            return format!("-{}*{mono}", neg.to_text_in(tower));
        }
        format!("({})*{mono}", c.to_text_in(tower))
    } else {
        format!("{}*{mono}", c.to_text_in(tower))
    }
}

/// First `depth` coefficients of the power series `n/d` with `d(0) ≠ 0`.
fn series_div(n: &Poly, d: &Poly, depth: usize) -> Vec<Scalar> {
    let d0_inv = d.coeffs()[0].inv().expect("unit constant term");
    let zero = d0_inv.zero_like();
    let mut out: Vec<Scalar> = Vec::with_capacity(depth);
    for k in 0..depth {
        let mut acc = n.coeff(k).cloned().unwrap_or_else(|| zero.clone());
        for j in 1..=k.min(d.degree().unwrap()) {
            let dj = &d.coeffs()[j];
            if dj.is_zero() || out[k - j].is_zero() {
                continue;
            }
            acc = acc.add_unchecked(&dj.mul_unchecked(&out[k - j]).neg_ref());
        }
        out.push(acc.mul_unchecked(&d0_inv));
    }
    out
}

impl fmt::Debug for RatL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(&Tower::standard(self.conductor())))
    }
}

impl fmt::Display for RatL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(&Tower::standard(self.conductor())))
    }
}

macro_rules! ratl_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&RatL> for &RatL {
            type Output = RatL;
            fn $m(self, rhs: &RatL) -> RatL {
                self.$try(rhs)
                    .unwrap_or_else(|e| panic!("rational function {}: {e}", stringify!($m)))
            }
        }
        impl $tr<RatL> for RatL {
            type Output = RatL;
            fn $m(self, rhs: RatL) -> RatL {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatL> for RatL {
            type Output = RatL;
            fn $m(self, rhs: &RatL) -> RatL {
                (&self).$m(rhs)
            }
        }
    };
}

ratl_binop!(Add, add, try_add);
ratl_binop!(Sub, sub, try_sub);
ratl_binop!(Mul, mul, try_mul);
ratl_binop!(Div, div, try_div);

impl Neg for RatL {
    type Output = RatL;
    fn neg(self) -> RatL {
        RatL::neg(&self)
    }
}

impl Neg for &RatL {
    type Output = RatL;
    fn neg(self) -> RatL {
        RatL::neg(self)
    }
}
