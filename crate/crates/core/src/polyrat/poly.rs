use std::fmt;

use crate::scalars::{Scalar, ScalarError, Tower};

/// Dense univariate polynomial over `Scalar`, lowest degree first.
///
/// Used both for the parameter levels of the scalar tower and for
/// polynomials in `λ`. Trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: Scalar, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![c.zero_like(); k + 1];
        v[k] = c;
        Poly { coeffs: v }
    }

    /// `x`.
    pub fn x(l: u32) -> Poly {
        Poly::monomial(Scalar::one(l), 1)
    }

    pub fn from_ints(l: u32, cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| Scalar::from_int(l, c)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&Scalar> {
        self.coeffs.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(Scalar::is_one)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn conductor(&self) -> Option<u32> {
        self.coeffs.first().map(Scalar::conductor)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(Scalar::neg_ref).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(&short.coeffs) {
            *a = a.add_unchecked(b);
        }
        Poly::new(v)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.mul_unchecked(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let zero = self.coeffs[0].zero_like();
        let mut v = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = v[i + j].add_unchecked(&a.mul_unchecked(b));
            }
        }
        Poly::new(v)
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut v = vec![self.coeffs[0].zero_like(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Divide by `x^k`, dropping the low coefficients (caller checks valuation).
    pub fn unshift(&self, k: usize) -> Poly {
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let l = self.conductor().unwrap_or(1);
        let mut acc = Poly::constant(Scalar::one(l));
        let mut b = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly), ScalarError> {
        let dd = divisor.degree().ok_or(ScalarError::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lc = divisor.coeffs[dd].clone();
        let lc_inv = if lc.is_one() { None } else { Some(lc.inv()?) };
        let mut rem = self.coeffs.clone();
        let mut q = vec![self.coeffs[0].zero_like(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let c = match &lc_inv {
                Some(li) => top.mul_unchecked(li),
                None => top.clone(),
            };
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                rem[k + j] = rem[k + j].add_unchecked(&c.mul_unchecked(d).neg_ref());
            }
            q[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(q), Poly::new(rem)))
    }

    /// Quotient of an exact division; panics if the divisor is zero.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Quotient if `divisor` divides `self`.
    pub fn try_exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return Poly::constant(a.coeffs[0].one_like());
        }
        let (mut r0, mut r1) = if a.degree() >= b.degree() {
            (a.monic(), b.monic())
        } else {
            (b.monic(), a.monic())
        };
        while !r1.is_zero() {
            if r1.degree() == Some(0) {
                return Poly::constant(r1.coeffs[0].one_like());
            }
            let (_, r) = r0.divrem(&r1).expect("nonzero");
            r0 = r1;
            r1 = r.monic();
        }
        r0
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_unchecked(&c.int_like(k as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_unchecked(x).add_unchecked(c);
        }
        acc
    }

    /// `p(x + a)`.
    pub fn taylor_shift(&self, a: &Scalar) -> Poly {
        if a.is_zero() || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = c[j + 1].mul_unchecked(a);
                c[j] = c[j].add_unchecked(&t);
            }
        }
        Poly::new(c)
    }

    /// Coefficient reversal `x^d p(1/x)` with `d = degree`.
    pub fn reverse(&self) -> Poly {
        Poly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Homogenized substitution `Σ c_k (a x + b)^k (c x + d)^(n-k)` with `n = deg`.
    pub fn homogeneous_subst(&self, a: &Poly, b: &Poly, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut pa = vec![Poly::constant(self.coeffs[0].one_like())];
        let mut pb = vec![Poly::constant(self.coeffs[0].one_like())];
        for k in 1..=n {
            pa.push(pa[k - 1].mul(a));
            pb.push(pb[k - 1].mul(b));
        }
        let mut acc = Poly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&pa[k].mul(&pb[n - k]).scale(c));
        }
        acc
    }

    pub fn map_coeffs(
        &self,
        f: impl Fn(&Scalar) -> Result<Scalar, ScalarError>,
    ) -> Result<Poly, ScalarError> {
        Ok(Poly::new(
            self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        ))
    }

    /// Human-readable form in the variable `var`, highest power first.
    pub fn to_text_var(&self, var: &str, tower: &Tower) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = term_text(c, tower, var, k);
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
        out
    }
}

/// One term `c·var^k` as text.
pub(crate) fn term_text(c: &Scalar, tower: &Tower, var: &str, k: usize) -> String {
    let mono = match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    };
    if mono.is_empty() {
        let t = c.to_text_in(tower);
        return if c.is_compound() && c.as_cyc().is_none() {
            format!("({t})")
        } else {
            t
        };
    }
    if c.is_one() {
        return mono;
    }
    if c.neg_ref().is_one() {
        return format!("-{mono}");
    }
    let t = c.to_text_in(tower);
    if c.is_compound() {
        let neg = c.neg_ref();
        if !neg.is_compound() {
            return format!("-{}*{mono}", neg.to_text_in(tower));
        }
        format!("({t})*{mono}")
    } else {
        format!("{t}*{mono}")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.conductor().unwrap_or(1);
        write!(f, "{}", self.to_text_var("x", &Tower::standard(l)))
    }
}
