use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use super::{CycNum, ScalarError, Tower};
use crate::polyrat::Poly;

/// Element of `Q(ζ_L)(p_0)(p_1)…`.
///
/// Level 0 is a `CycNum`. A value depending on parameter `p_k` (and
/// possibly lower ones) is a reduced fraction of univariate polynomials in
/// `p_k` whose coefficients only involve `p_0 … p_{k-1}`. Denominators are
/// monic at every level and fractions that do not involve their own
/// variable are collapsed, so the representation is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Cyc(CycNum),
    Frac(Arc<ParamFrac>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamFrac {
    var: usize,
    num: Poly,
    den: Poly,
}

impl ParamFrac {
    pub fn var(&self) -> usize {
        self.var
    }
    pub fn num(&self) -> &Poly {
        &self.num
    }
    pub fn den(&self) -> &Poly {
        &self.den
    }
}

/// Concrete values for tower parameters, indexed by 0-based position.
#[derive(Debug, Clone, Default)]
pub struct Bindings(Vec<Option<CycNum>>);

impl Bindings {
    pub fn new() -> Bindings {
        Bindings(Vec::new())
    }

    pub fn with(mut self, var: usize, value: CycNum) -> Bindings {
        if self.0.len() <= var {
            self.0.resize(var + 1, None);
        }
        self.0[var] = Some(value);
        self
    }

    pub fn get(&self, var: usize) -> Option<&CycNum> {
        self.0.get(var).and_then(Option::as_ref)
    }
}

impl Scalar {
    pub fn zero(l: u32) -> Scalar {
        Scalar::Cyc(CycNum::zero(l))
    }

    pub fn one(l: u32) -> Scalar {
        Scalar::Cyc(CycNum::one(l))
    }

    pub fn from_int(l: u32, v: i64) -> Scalar {
        Scalar::Cyc(CycNum::from_int(l, v))
    }

    pub fn from_rational(l: u32, v: &BigRational) -> Scalar {
        Scalar::Cyc(CycNum::from_rational(l, v))
    }

    /// `ζ_L^k` for `L` the working conductor.
    pub fn root(l: u32, k: i64) -> Scalar {
        Scalar::Cyc(CycNum::root(l, k))
    }

    /// The bare parameter `p_var`.
    pub fn param(l: u32, var: usize) -> Scalar {
        Scalar::Frac(Arc::new(ParamFrac {
            var,
            num: Poly::new(vec![Scalar::zero(l), Scalar::one(l)]),
            den: Poly::constant(Scalar::one(l)),
        }))
    }

    pub fn zero_like(&self) -> Scalar {
        Scalar::zero(self.conductor())
    }

    pub fn one_like(&self) -> Scalar {
        Scalar::one(self.conductor())
    }

    pub fn int_like(&self, v: i64) -> Scalar {
        Scalar::from_int(self.conductor(), v)
    }

    pub fn conductor(&self) -> u32 {
        match self {
            Scalar::Cyc(c) => c.conductor(),
            Scalar::Frac(f) => f.den.coeffs()[0].conductor(),
        }
    }

    /// Highest tower variable this value depends on.
    pub fn level(&self) -> Option<usize> {
        match self {
            Scalar::Cyc(_) => None,
            Scalar::Frac(f) => Some(f.var),
        }
    }

    /// Number of tower parameters needed to interpret the value.
    pub fn depth(&self) -> usize {
        self.level().map_or(0, |v| v + 1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Cyc(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Cyc(c) if c.is_one())
    }

    pub fn as_cyc(&self) -> Option<&CycNum> {
        match self {
            Scalar::Cyc(c) => Some(c),
            Scalar::Frac(_) => None,
        }
    }

    pub fn as_frac(&self) -> Option<&ParamFrac> {
        match self {
            Scalar::Cyc(_) => None,
            Scalar::Frac(f) => Some(f),
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.as_cyc().and_then(CycNum::to_rational)
    }

    fn check(&self, other: &Scalar) -> Result<(), ScalarError> {
        let (a, b) = (self.conductor(), other.conductor());
        if a != b {
            Err(ScalarError::TowerMismatch(format!("conductor {a} vs {b}")))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Cyc(c) => Scalar::Cyc(c.neg()),
            Scalar::Frac(f) => Scalar::Frac(Arc::new(ParamFrac {
                var: f.var,
                num: f.num.neg(),
                den: f.den.clone(),
            })),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Cyc(c) => Ok(Scalar::Cyc(c.inv()?)),
            Scalar::Frac(f) => {
                let lc = f.num.lead().expect("fraction numerator is nonzero").inv()?;
                Ok(make_frac(f.var, f.den.scale(&lc), f.num.scale(&lc)))
            }
        }
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one_like();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        Ok(acc)
    }

    pub(crate) fn add_unchecked(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        match (self.level(), other.level()) {
            (None, None) => Scalar::Cyc(
                self.as_cyc()
                    .unwrap()
                    .try_add(other.as_cyc().unwrap())
                    .expect("conductors checked"),
            ),
            (la, lb) if la > lb => add_const(self.as_frac().unwrap(), other),
            (la, lb) if lb > la => add_const(other.as_frac().unwrap(), self),
            _ => frac_add(self.as_frac().unwrap(), other.as_frac().unwrap()),
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return self.zero_like();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        match (self.level(), other.level()) {
            (None, None) => Scalar::Cyc(
                self.as_cyc()
                    .unwrap()
                    .try_mul(other.as_cyc().unwrap())
                    .expect("conductors checked"),
            ),
            (la, lb) if la > lb => mul_const(self.as_frac().unwrap(), other),
            (la, lb) if lb > la => mul_const(other.as_frac().unwrap(), self),
            _ => frac_mul(self.as_frac().unwrap(), other.as_frac().unwrap()),
        }
    }

    /// Substitute concrete values for every parameter.
    pub fn eval(&self, bindings: &Bindings) -> Result<CycNum, ScalarError> {
        match self {
            Scalar::Cyc(c) => Ok(c.clone()),
            Scalar::Frac(f) => {
                let x = bindings
                    .get(f.var)
                    .ok_or_else(|| ScalarError::MissingBinding(format!("p{}", f.var)))?;
                if x.conductor() != self.conductor() {
                    return Err(ScalarError::TowerMismatch(format!(
                        "binding conductor {} vs {}",
                        x.conductor(),
                        self.conductor()
                    )));
                }
                let d = eval_poly(&f.den, x, bindings)?;
                if d.is_zero() {
                    return Err(ScalarError::EvalPole);
                }
                let n = eval_poly(&f.num, x, bindings)?;
                n.try_div(&d)
            }
        }
    }

    /// Degree of the value in parameter `var` (max of numerator and denominator degrees).
    pub fn degree_in(&self, var: usize) -> usize {
        match self {
            Scalar::Cyc(_) => 0,
            Scalar::Frac(f) => {
                if f.var == var {
                    f.num.degree().unwrap_or(0).max(f.den.degree().unwrap_or(0))
                } else if f.var < var {
                    0
                } else {
                    f.num
                        .coeffs()
                        .iter()
                        .chain(f.den.coeffs())
                        .map(|c| c.degree_in(var))
                        .max()
                        .unwrap_or(0)
                }
            }
        }
    }

    /// Map every cyclotomic leaf, keeping the tower shape.
    pub fn map_cyc(
        &self,
        f: &impl Fn(&CycNum) -> Result<CycNum, ScalarError>,
    ) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Cyc(c) => Ok(Scalar::Cyc(f(c)?)),
            Scalar::Frac(fr) => {
                let num = Poly::new(
                    fr.num
                        .coeffs()
                        .iter()
                        .map(|c| c.map_cyc(f))
                        .collect::<Result<_, _>>()?,
                );
                let den = Poly::new(
                    fr.den
                        .coeffs()
                        .iter()
                        .map(|c| c.map_cyc(f))
                        .collect::<Result<_, _>>()?,
                );
                Ok(make_frac_checked(fr.var, num, den))
            }
        }
    }

    /// Complex conjugation applied to the cyclotomic coefficients; parameters are fixed.
    pub fn conj(&self) -> Scalar {
        self.map_cyc(&|c| Ok(c.conj())).expect("conjugation is total")
    }

    /// Move to conductor `m` (embedding or transport of rational values).
    pub fn recast(&self, m: u32) -> Result<Scalar, ScalarError> {
        self.map_cyc(&|c| c.recast(m))
    }

    pub fn to_text_in(&self, tower: &Tower) -> String {
        match self {
            Scalar::Cyc(c) => c.to_text(),
            Scalar::Frac(f) => {
                let name = tower.name(f.var);
                let num = f.num.to_text_var(name, tower);
                if f.den.degree() == Some(0) {
                    num
                } else {
                    format!("({})/({})", num, f.den.to_text_var(name, tower))
                }
            }
        }
    }

    /// Whether printing needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        match self {
            Scalar::Cyc(c) => {
                c.term_count() > 1 || c.to_rational().is_some_and(|r| !r.is_integer())
            }
            Scalar::Frac(_) => true,
        }
    }
}

fn eval_poly(p: &Poly, x: &CycNum, b: &Bindings) -> Result<CycNum, ScalarError> {
    let mut acc = CycNum::zero(x.conductor());
    for c in p.coeffs().iter().rev() {
        acc = acc.try_mul(x)?.try_add(&c.eval(b)?)?;
    }
    Ok(acc)
}

/// Build a fraction in `var` from a coprime pair with monic `den`, collapsing constants.
fn make_frac(var: usize, num: Poly, den: Poly) -> Scalar {
    if num.is_zero() {
        return den.coeffs()[0].zero_like();
    }
    if den.degree() == Some(0) && num.degree() == Some(0) {
        return num.coeffs()[0].clone();
    }
    Scalar::Frac(Arc::new(ParamFrac { var, num, den }))
}

/// Like `make_frac` but reduces and normalizes an arbitrary pair.
fn make_frac_checked(var: usize, num: Poly, den: Poly) -> Scalar {
    let g = Poly::gcd(&num, &den);
    let (num, den) = if g.degree().unwrap_or(0) > 0 {
        (num.exact_div(&g), den.exact_div(&g))
    } else {
        (num, den)
    };
    let lc = den.lead().expect("nonzero denominator").inv().expect("nonzero");
    make_frac(var, num.scale(&lc), den.scale(&lc))
}

fn add_const(f: &ParamFrac, c: &Scalar) -> Scalar {
    let num = f.num.add(&f.den.scale(c));
    make_frac(f.var, num, f.den.clone())
}

fn mul_const(f: &ParamFrac, c: &Scalar) -> Scalar {
    make_frac(f.var, f.num.scale(c), f.den.clone())
}

fn frac_add(a: &ParamFrac, b: &ParamFrac) -> Scalar {
    let g = Poly::gcd(&a.den, &b.den);
    if g.degree() == Some(0) {
        let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
        return make_frac(a.var, num, a.den.mul(&b.den));
    }
    let da = a.den.exact_div(&g);
    let db = b.den.exact_div(&g);
    let num = a.num.mul(&db).add(&b.num.mul(&da));
    let den = da.mul(&b.den);
    let h = Poly::gcd(&num, &g);
    if h.degree().unwrap_or(0) > 0 {
        make_frac(a.var, num.exact_div(&h), den.exact_div(&h))
    } else {
        make_frac(a.var, num, den)
    }
}

fn frac_mul(a: &ParamFrac, b: &ParamFrac) -> Scalar {
    let g1 = Poly::gcd(&a.num, &b.den);
    let g2 = Poly::gcd(&b.num, &a.den);
    let (an, bd) = if g1.degree().unwrap_or(0) > 0 {
        (a.num.exact_div(&g1), b.den.exact_div(&g1))
    } else {
        (a.num.clone(), b.den.clone())
    };
    let (bn, ad) = if g2.degree().unwrap_or(0) > 0 {
        (b.num.exact_div(&g2), a.den.exact_div(&g2))
    } else {
        (b.num.clone(), a.den.clone())
    };
    // Leading coefficients of the reduced numerators may carry lower-level
    // factors; denominators stay monic because gcds are monic.
    make_frac(a.var, an.mul(&bn), ad.mul(&bd))
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text_in(&Tower::standard(self.conductor())))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text_in(&Tower::standard(self.conductor())))
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).unwrap_or_else(|e| panic!("scalar {}: {e}", stringify!($m)))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);
scalar_binop!(Div, div, try_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower() -> Tower {
        Tower::standard(4)
    }

    #[test]
    fn inverse_of_gamma_mu_difference() {
        let t = tower();
        let (g, m) = (t.param(0), t.param(1));
        let x = &(&g * &g) - &(&m * &m);
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn division_by_zero_reported() {
        let t = tower();
        assert_eq!(t.int(0).inv(), Err(ScalarError::DivisionByZero));
        assert!(matches!(
            t.param(0).try_div(&t.int(0)),
            Err(ScalarError::DivisionByZero)
        ));
    }

    #[test]
    fn tower_mismatch_reported() {
        let a = Scalar::param(4, 0);
        let b = Scalar::param(3, 0);
        assert!(matches!(a.try_add(&b), Err(ScalarError::TowerMismatch(_))));
    }

    #[test]
    fn alpha_at_two_three() {
        // α = 2γ(γ⁴−1) / ((μ²−γ²)(1−μ²γ²)) at γ=2, μ=3 is 60/(5·(−35)) = −12/35.
        let t = tower();
        let (g, m) = (t.param(0), t.param(1));
        let one = t.int(1);
        let g2 = &g * &g;
        let m2 = &m * &m;
        let alpha = &(&t.int(2) * &g) * &(&(&g2 * &g2) - &one)
            / (&(&m2 - &g2) * &(&one - &(&m2 * &g2)));
        let b = Bindings::new()
            .with(0, CycNum::from_int(4, 2))
            .with(1, CycNum::from_int(4, 3));
        let v = alpha.eval(&b).unwrap();
        assert_eq!(
            v.to_rational().unwrap(),
            BigRational::new((-12).into(), 35.into())
        );
    }

    #[test]
    fn eval_examples() {
        let t = tower();
        let (g, m) = (t.param(0), t.param(1));
        let b = Bindings::new()
            .with(0, CycNum::from_int(4, 1))
            .with(1, CycNum::from_int(4, 2));
        assert_eq!((&g + &m).eval(&b).unwrap(), CycNum::from_int(4, 3));

        // a_{γμ} = 2μ²(1−γ⁴)/(γ(μ²−γ²)(1−μ²γ²)) at (2,3) is 27/35.
        let one = t.int(1);
        let g2 = &g * &g;
        let m2 = &m * &m;
        let a = &(&t.int(2) * &m2) * &(&one - &(&g2 * &g2))
            / (&(&g * &(&m2 - &g2)) * &(&one - &(&m2 * &g2)));
        let b23 = Bindings::new()
            .with(0, CycNum::from_int(4, 2))
            .with(1, CycNum::from_int(4, 3));
        assert_eq!(
            a.eval(&b23).unwrap().to_rational().unwrap(),
            BigRational::new(27.into(), 35.into())
        );

        let alpha_den = &(&m2 - &g2) * &(&one - &(&m2 * &g2));
        let pole = Bindings::new()
            .with(0, CycNum::from_int(4, 2))
            .with(1, CycNum::from_int(4, 2));
        assert_eq!(alpha_den.inv().unwrap().eval(&pole), Err(ScalarError::EvalPole));
        assert!(matches!(
            g.eval(&Bindings::new()),
            Err(ScalarError::MissingBinding(_))
        ));
    }

    #[test]
    fn canonical_forms_agree() {
        let t = tower();
        let (g, m) = (t.param(0), t.param(1));
        // (g^2 - m^2)/(g - m) == g + m
        let lhs = &(&(&g * &g) - &(&m * &m)) / &(&g - &m);
        assert_eq!(lhs, &g + &m);
        // collapse: (g*m)/m == g
        assert_eq!(&(&g * &m) / &m, g);
        assert_eq!(&m - &m, t.int(0));
    }
}
