//! Exact arithmetic in cyclotomic fields `Q(ζ_L)`.
//!
//! An element is stored as an integer vector over a common positive
//! denominator, representing a polynomial in `ζ_L` of degree `< φ(L)`
//! reduced modulo the `L`-th cyclotomic polynomial. Reduction is canonical,
//! so equality is coefficient-wise.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ScalarError;

/// The field `Q(ζ_L)`: conductor plus the monic integer cyclotomic polynomial.
#[derive(Debug)]
pub struct CycField {
    conductor: u32,
    /// Coefficients of Φ_L, lowest degree first; monic, length φ(L)+1.
    phi: Vec<BigInt>,
}

impl CycField {
    /// Shared handle for conductor `l`.
    pub fn get(l: u32) -> Arc<CycField> {
        assert!(l >= 1, "conductor must be positive");
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("cyclotomic cache poisoned");
        guard
            .entry(l)
            .or_insert_with(|| {
                Arc::new(CycField {
                    conductor: l,
                    phi: cyclotomic_poly(l),
                })
            })
            .clone()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Euler totient of the conductor, the dimension over Q.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn cyclotomic_coeffs(&self) -> &[BigInt] {
        &self.phi
    }

    /// Reduce an integer polynomial modulo Φ_L in place and truncate to φ(L) terms.
    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.degree();
        if v.len() > n {
            for k in (n..v.len()).rev() {
                if v[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut v[k]);
                for j in 0..n {
                    if !self.phi[j].is_zero() {
                        let t = &c * &self.phi[j];
                        v[k - n + j] -= t;
                    }
                }
            }
        }
        v.resize(n, BigInt::zero());
        v
    }
}

/// Integer coefficients of the `l`-th cyclotomic polynomial, via
/// `x^l - 1 = Π_{d | l} Φ_d(x)`.
pub fn cyclotomic_poly(l: u32) -> Vec<BigInt> {
    let l = l as usize;
    let mut p = vec![BigInt::zero(); l + 1];
    p[0] = -BigInt::one();
    p[l] = BigInt::one();
    for d in 1..l {
        if l.is_multiple_of(d) {
            let q = cyclotomic_poly(d as u32);
            p = exact_div_monic(&p, &q);
        }
    }
    p
}

fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let dq = a.len() - b.len();
    let mut q = vec![BigInt::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let c = r[k + db].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[k + j] -= &c * &b[j];
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

/// Element of `Q(ζ_L)`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl CycNum {
    fn from_parts(field: Arc<CycField>, num: Vec<BigInt>, den: BigInt) -> CycNum {
        let mut x = CycNum { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero(l: u32) -> CycNum {
        let field = CycField::get(l);
        let n = field.degree();
        CycNum {
            field,
            num: vec![BigInt::zero(); n],
            den: BigInt::one(),
        }
    }

    pub fn one(l: u32) -> CycNum {
        CycNum::from_int(l, 1)
    }

    pub fn from_int(l: u32, v: i64) -> CycNum {
        CycNum::from_rational(l, &BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(l: u32, v: &BigRational) -> CycNum {
        let mut x = CycNum::zero(l);
        x.num[0] = v.numer().clone();
        x.den = v.denom().clone();
        x.normalize();
        x
    }

    /// `ζ_L^k` in canonical form.
    pub fn root(l: u32, k: i64) -> CycNum {
        let field = CycField::get(l);
        let e = k.rem_euclid(l as i64) as usize;
        let mut v = vec![BigInt::zero(); e.max(field.degree()) + 1];
        v[e] = BigInt::one();
        let num = field.reduce(v);
        CycNum::from_parts(field, num, BigInt::one())
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    /// Coefficients on the power basis `1, ζ, …, ζ^{φ(L)-1}`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn check(&self, other: &CycNum) -> Result<(), ScalarError> {
        if self.field.conductor != other.field.conductor {
            Err(ScalarError::TowerMismatch(format!(
                "conductor {} vs {}",
                self.field.conductor, other.field.conductor
            )))
        } else {
            Ok(())
        }
    }

    fn add_signed(&self, other: &CycNum, negate: bool) -> CycNum {
        let num = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect::<Vec<_>>()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        CycNum::from_parts(self.field.clone(), num, den)
    }

    pub fn try_add(&self, other: &CycNum) -> Result<CycNum, ScalarError> {
        self.check(other)?;
        Ok(self.add_signed(other, false))
    }

    pub fn try_sub(&self, other: &CycNum) -> Result<CycNum, ScalarError> {
        self.check(other)?;
        Ok(self.add_signed(other, true))
    }

    pub fn try_mul(&self, other: &CycNum) -> Result<CycNum, ScalarError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(CycNum::zero(self.conductor()));
        }
        if self.is_rational() || other.is_rational() {
            let (r, v) = if self.is_rational() { (self, other) } else { (other, self) };
            let c = &r.num[0];
            let num = v.num.iter().map(|x| x * c).collect();
            return Ok(CycNum::from_parts(self.field.clone(), num, &r.den * &v.den));
        }
        let n = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let num = self.field.reduce(prod);
        Ok(CycNum::from_parts(self.field.clone(), num, &self.den * &other.den))
    }

    pub fn try_div(&self, other: &CycNum) -> Result<CycNum, ScalarError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_L.
    pub fn inv(&self) -> Result<CycNum, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_rational() {
            let mut num = vec![BigInt::zero(); self.field.degree()];
            num[0] = self.den.clone();
            return Ok(CycNum::from_parts(self.field.clone(), num, self.num[0].clone()));
        }
        let to_q = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        // s * a + t * phi = g with g a nonzero constant.
        let mut r0 = qtrim(to_q(&self.field.phi));
        let mut r1 = qtrim(to_q(&self.num));
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = qdivrem(&r0, &r1);
            let s2 = qsub(&s0, &qmul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let g = r1[0].clone();
        let inv_num = BigRational::from_integer(self.den.clone()) / g;
        let coeffs: Vec<BigRational> = s1.into_iter().map(|c| c * &inv_num).collect();
        let mut den = BigInt::one();
        for c in &coeffs {
            den = den.lcm(c.denom());
        }
        let mut num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        num.resize(self.field.degree().max(num.len()), BigInt::zero());
        let num = self.field.reduce(num);
        Ok(CycNum::from_parts(self.field.clone(), num, den))
    }

    pub fn pow(&self, e: i64) -> Result<CycNum, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = CycNum::one(self.conductor());
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&b)?;
            }
            k >>= 1;
            if k > 0 {
                b = b.try_mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Complex conjugation, the field automorphism `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycNum {
        let l = self.conductor() as usize;
        let mut v = vec![BigInt::zero(); l.max(self.field.degree()) + 1];
        for (k, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                v[(l - k) % l] += c;
            }
        }
        let num = self.field.reduce(v);
        CycNum::from_parts(self.field.clone(), num, self.den.clone())
    }

    /// Image in `Q(ζ_M)` under `ζ_L ↦ ζ_M^{M/L}`; requires `L | M`.
    pub fn embed(&self, m: u32) -> Result<CycNum, ScalarError> {
        let l = self.conductor();
        if !m.is_multiple_of(l) {
            return Err(ScalarError::TowerMismatch(format!(
                "cannot embed conductor {l} into {m}"
            )));
        }
        let step = (m / l) as usize;
        let field = CycField::get(m);
        let len = (self.num.len() * step).max(field.degree()) + 1;
        let mut v = vec![BigInt::zero(); len];
        for (k, c) in self.num.iter().enumerate() {
            v[k * step] = c.clone();
        }
        let num = field.reduce(v);
        Ok(CycNum::from_parts(field, num, self.den.clone()))
    }

    /// Move to conductor `m`: an embedding when `L | m`, otherwise only
    /// rational values can be transported.
    pub fn recast(&self, m: u32) -> Result<CycNum, ScalarError> {
        if m.is_multiple_of(self.conductor()) {
            return self.embed(m);
        }
        match self.to_rational() {
            Some(r) => Ok(CycNum::from_rational(m, &r)),
            None => Err(ScalarError::TowerMismatch(format!(
                "value of conductor {} is not rational, cannot move to {m}",
                self.conductor()
            ))),
        }
    }

    /// Write in the form `Σ c_k * zL^k`.
    pub fn to_text(&self) -> String {
        let l = self.conductor();
        let mut out = String::new();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            let neg = q.is_negative();
            let mag = q.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let zpow = match k {
                0 => String::new(),
                1 => format!("z{l}"),
                _ => format!("z{l}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&zpow);
            } else {
                out.push_str(&format!("{mag}*{zpow}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Number of nonzero power-basis terms.
    pub fn term_count(&self) -> usize {
        self.num.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

fn qtrim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn qsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    qtrim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qtrim(out)
}

fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            let t = &c * &b[j];
            r[k + j] -= t;
        }
        q[k] = c;
    }
    (qtrim(q), qtrim(r))
}
