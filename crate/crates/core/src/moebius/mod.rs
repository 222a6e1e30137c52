//! Points of the Riemann sphere, fractional-linear transformations and the
//! finite groups they generate, with orbits and isotropy orders.

mod catalog;

pub use catalog::{
    catalog, catalog_with, default_conductor, generator_conductor, generators, named_point,
    point_conductor, GroupKind,
};

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::polyrat::Poly;
use crate::scalars::{Scalar, ScalarError, Tower};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoebiusError {
    #[error("closure exceeded {0} elements")]
    ClosureOverflow(usize),
    #[error("singular transformation")]
    Singular,
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A point `(p : q)` of the projective line; `(1 : 0)` is infinity.
#[derive(Clone)]
pub struct SpherePoint {
    p: Scalar,
    q: Scalar,
}

impl SpherePoint {
    pub fn new(p: Scalar, q: Scalar) -> SpherePoint {
        assert!(!(p.is_zero() && q.is_zero()), "(0 : 0) is not a point");
        SpherePoint { p, q }
    }

    pub fn finite(x: Scalar) -> SpherePoint {
        let one = x.one_like();
        SpherePoint { p: x, q: one }
    }

    pub fn infinity(l: u32) -> SpherePoint {
        SpherePoint {
            p: Scalar::one(l),
            q: Scalar::zero(l),
        }
    }

    pub fn from_int(l: u32, v: i64) -> SpherePoint {
        SpherePoint::finite(Scalar::from_int(l, v))
    }

    pub fn coords(&self) -> (&Scalar, &Scalar) {
        (&self.p, &self.q)
    }

    pub fn conductor(&self) -> u32 {
        self.p.conductor()
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    /// The affine coordinate, or `None` at infinity.
    pub fn finite_value(&self) -> Option<Scalar> {
        if self.q.is_zero() {
            None
        } else if self.q.is_one() {
            Some(self.p.clone())
        } else {
            Some(&self.p / &self.q)
        }
    }

    /// `λ − p/q` for a finite point.
    pub fn linear_factor(&self) -> Poly {
        let x = self.finite_value().expect("finite point");
        Poly::new(vec![x.neg_ref(), x.one_like()])
    }

    pub fn recast(&self, m: u32) -> Result<SpherePoint, ScalarError> {
        Ok(SpherePoint {
            p: self.p.recast(m)?,
            q: self.q.recast(m)?,
        })
    }

    pub fn to_text(&self, tower: &Tower) -> String {
        match self.finite_value() {
            None => "inf".into(),
            Some(x) => x.to_text_in(tower),
        }
    }
}

impl PartialEq for SpherePoint {
    fn eq(&self, other: &SpherePoint) -> bool {
        &self.p * &other.q == &other.p * &self.q
    }
}

impl Eq for SpherePoint {}

impl Hash for SpherePoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.finite_value().hash(state);
    }
}

impl fmt::Debug for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(&Tower::standard(self.conductor())))
    }
}

/// `λ ↦ (aλ + b)/(cλ + d)`, taken projectively.
#[derive(Clone)]
pub struct MoebiusT {
    e: [Scalar; 4],
}

impl MoebiusT {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<MoebiusT, MoebiusError> {
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(MoebiusError::Singular);
        }
        Ok(MoebiusT { e: [a, b, c, d] })
    }

    pub fn from_ints(l: u32, a: i64, b: i64, c: i64, d: i64) -> Result<MoebiusT, MoebiusError> {
        let s = |v| Scalar::from_int(l, v);
        MoebiusT::new(s(a), s(b), s(c), s(d))
    }

    pub fn identity(l: u32) -> MoebiusT {
        MoebiusT::from_ints(l, 1, 0, 0, 1).unwrap()
    }

    /// `λ ↦ cλ`.
    pub fn scaling(c: Scalar) -> MoebiusT {
        let (z, o) = (c.zero_like(), c.one_like());
        MoebiusT::new(c, z.clone(), z, o).expect("nonzero scale")
    }

    /// `λ ↦ 1/λ`.
    pub fn inversion(l: u32) -> MoebiusT {
        MoebiusT::from_ints(l, 0, 1, 1, 0).unwrap()
    }

    pub fn entries(&self) -> &[Scalar; 4] {
        &self.e
    }

    pub fn conductor(&self) -> u32 {
        self.e[0].conductor()
    }

    pub fn det(&self) -> Scalar {
        let [a, b, c, d] = &self.e;
        &(a * d) - &(b * c)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &MoebiusT) -> MoebiusT {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &other.e;
        MoebiusT {
            e: [
                &(a * p) + &(b * r),
                &(a * q) + &(b * s),
                &(c * p) + &(d * r),
                &(c * q) + &(d * s),
            ],
        }
    }

    pub fn inverse(&self) -> MoebiusT {
        let [a, b, c, d] = &self.e;
        MoebiusT {
            e: [d.clone(), b.neg_ref(), c.neg_ref(), a.clone()],
        }
    }

    pub fn pow(&self, k: i64) -> MoebiusT {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = MoebiusT::identity(self.conductor());
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    pub fn apply(&self, pt: &SpherePoint) -> SpherePoint {
        let [a, b, c, d] = &self.e;
        let (p, q) = pt.coords();
        SpherePoint::new(&(a * p) + &(b * q), &(c * p) + &(d * q))
    }

    pub fn is_identity(&self) -> bool {
        *self == MoebiusT::identity(self.conductor())
    }

    /// Representative scaled so the first nonzero entry is 1.
    pub fn normalized(&self) -> MoebiusT {
        let lead = self.e.iter().find(|x| !x.is_zero()).unwrap();
        if lead.is_one() {
            return self.clone();
        }
        let inv = lead.inv().unwrap();
        MoebiusT {
            e: self.e.clone().map(|x| &x * &inv),
        }
    }

    pub fn recast(&self, m: u32) -> Result<MoebiusT, ScalarError> {
        let [a, b, c, d] = &self.e;
        Ok(MoebiusT {
            e: [a.recast(m)?, b.recast(m)?, c.recast(m)?, d.recast(m)?],
        })
    }

    pub fn to_text(&self, tower: &Tower) -> String {
        let n = self.normalized();
        let t: Vec<String> = n.e.iter().map(|x| x.to_text_in(tower)).collect();
        format!("[{}, {}, {}, {}]", t[0], t[1], t[2], t[3])
    }
}

impl PartialEq for MoebiusT {
    fn eq(&self, other: &MoebiusT) -> bool {
        for i in 0..4 {
            for j in i + 1..4 {
                if &self.e[i] * &other.e[j] != &self.e[j] * &other.e[i] {
                    return false;
                }
            }
        }
        true
    }
}

impl Eq for MoebiusT {}

impl Hash for MoebiusT {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.normalized().e.hash(state);
    }
}

impl fmt::Debug for MoebiusT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(&Tower::standard(self.conductor())))
    }
}

/// A finite group of Möbius transformations with its multiplication table.
#[derive(Debug, Clone)]
pub struct FinGroup {
    name: String,
    kind: Option<GroupKind>,
    elements: Vec<MoebiusT>,
    gens: Vec<usize>,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FinGroup {
    /// Breadth-first closure of `gens`; element 0 is the identity.
    pub fn generate(
        name: &str,
        gens: &[MoebiusT],
        bound: usize,
    ) -> Result<FinGroup, MoebiusError> {
        let l = gens.first().map_or(1, MoebiusT::conductor);
        let mut elements = vec![MoebiusT::identity(l)];
        let mut index: HashMap<MoebiusT, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut frontier = 0;
        while frontier < elements.len() {
            let x = elements[frontier].clone();
            frontier += 1;
            for g in gens {
                let y = g.compose(&x).normalized();
                if !index.contains_key(&y) {
                    if elements.len() >= bound {
                        return Err(MoebiusError::ClosureOverflow(bound));
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mult: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| index[&elements[i].compose(&elements[j]).normalized()])
                    .collect()
            })
            .collect();
        let inv = (0..n)
            .map(|i| (0..n).find(|&j| mult[i][j] == 0).unwrap())
            .collect();
        let gen_idx = gens.iter().map(|g| index[&g.normalized()]).collect();
        Ok(FinGroup {
            name: name.to_string(),
            kind: None,
            elements,
            gens: gen_idx,
            mult,
            inv,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Catalog family, when the group came from the catalog.
    pub fn kind(&self) -> Option<GroupKind> {
        self.kind
    }

    pub(crate) fn with_kind(mut self, kind: GroupKind) -> FinGroup {
        self.kind = Some(kind);
        self
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[MoebiusT] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &MoebiusT {
        &self.elements[i]
    }

    pub fn generators(&self) -> Vec<&MoebiusT> {
        self.gens.iter().map(|&i| &self.elements[i]).collect()
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gens
    }

    pub fn conductor(&self) -> u32 {
        self.elements[0].conductor()
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mult[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mult[i][x];
            k += 1;
        }
        k
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.mult[i][j] == self.mult[j][i]))
    }

    /// Associativity, identity and inverse laws on the table.
    pub fn table_is_group(&self) -> bool {
        let n = self.order();
        let assoc = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.mult[self.mult[i][j]][k] == self.mult[i][self.mult[j][k]]))
        });
        let ident = (0..n).all(|i| self.mult[0][i] == i && self.mult[i][0] == i);
        let invs = (0..n).all(|i| self.mult[i][self.inv[i]] == 0 && self.mult[self.inv[i]][i] == 0);
        assoc && ident && invs
    }

    pub fn orbit_of(&self, p: &SpherePoint) -> Orbit {
        let mut points: Vec<SpherePoint> = Vec::new();
        for m in &self.elements {
            let q = m.apply(p);
            if !points.contains(&q) {
                points.push(q);
            }
        }
        Orbit {
            seed: p.clone(),
            isotropy_order: self.order() / points.len(),
            points,
        }
    }

    pub fn recast(&self, m: u32) -> Result<FinGroup, ScalarError> {
        Ok(FinGroup {
            name: self.name.clone(),
            kind: self.kind,
            elements: self
                .elements
                .iter()
                .map(|e| e.recast(m))
                .collect::<Result<_, _>>()?,
            gens: self.gens.clone(),
            mult: self.mult.clone(),
            inv: self.inv.clone(),
        })
    }
}

/// An orbit with the isotropy order of its points.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub seed: SpherePoint,
    pub points: Vec<SpherePoint>,
    pub isotropy_order: usize,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &SpherePoint) -> bool {
        self.points.contains(p)
    }

    pub fn has_infinity(&self) -> bool {
        self.points.iter().any(SpherePoint::is_infinity)
    }

    /// Monic polynomial whose roots are the finite points of the orbit.
    pub fn polynomial(&self) -> Poly {
        let l = self.seed.conductor();
        self.points
            .iter()
            .filter(|p| !p.is_infinity())
            .fold(Poly::constant(Scalar::one(l)), |acc, p| {
                acc.mul(&p.linear_factor())
            })
    }
}
