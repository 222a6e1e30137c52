//! Reduction groups: pairs of a Möbius transformation and an automorphism of
//! a matrix Lie algebra (possibly depending on `λ`), composed by the
//! semi-direct rule, together with the normal-subgroup analysis of a finite
//! reduction group.

use std::collections::HashMap;

use thiserror::Error;

use crate::liealg::{LieError, MatElem};
use crate::moebius::{MoebiusT, SpherePoint};
use crate::polyrat::RatL;
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RedError {
    #[error("matrix dimensions differ")]
    DimensionMismatch,
    #[error("closure exceeded {0} elements")]
    ClosureOverflow(usize),
    #[error("relation `{0}` fails")]
    RelationFailure(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AutKind {
    /// `a ↦ Q a Q⁻¹`.
    Inner,
    /// `a ↦ −H aᵀ H⁻¹`.
    Outer,
}

/// An automorphism of `sl(d)` over rational functions, given by a matrix
/// that may depend on `λ`. Equality is up to a nonzero scalar function.
#[derive(Clone, Debug)]
pub struct Automorphism {
    kind: AutKind,
    mat: MatElem,
    inv: MatElem,
}

impl Automorphism {
    pub fn inner(q: MatElem) -> Result<Automorphism, LieError> {
        let inv = q.inverse()?;
        Ok(Automorphism {
            kind: AutKind::Inner,
            mat: q.allowing_trace(true),
            inv,
        })
    }

    /// `a ↦ −H aᵀ H⁻¹`; in dimension 2 this is the inner automorphism by `HJ`.
    pub fn outer(h: MatElem) -> Result<Automorphism, LieError> {
        if h.dim() == 2 {
            let l = h.conductor();
            let j = MatElem::general(
                2,
                vec![RatL::zero(l), RatL::one(l), RatL::from_int(l, -1), RatL::zero(l)],
            );
            return Automorphism::inner(h.matmul(&j));
        }
        let inv = h.inverse()?;
        Ok(Automorphism {
            kind: AutKind::Outer,
            mat: h.allowing_trace(true),
            inv,
        })
    }

    pub fn identity(dim: usize, l: u32) -> Automorphism {
        let id = MatElem::identity(dim, l);
        Automorphism {
            kind: AutKind::Inner,
            mat: id.clone(),
            inv: id,
        }
    }

    pub fn kind(&self) -> AutKind {
        self.kind
    }

    pub fn matrix(&self) -> &MatElem {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn apply(&self, a: &MatElem) -> MatElem {
        let keep = a.allows_trace();
        match self.kind {
            AutKind::Inner => self.mat.matmul(a).matmul(&self.inv),
            AutKind::Outer => self.mat.matmul(&a.transpose()).matmul(&self.inv).neg(),
        }
        .allowing_trace(keep)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        use AutKind::*;
        let (kind, mat, inv) = match (self.kind, other.kind) {
            (Inner, Inner) => (Inner, self.mat.matmul(&other.mat), other.inv.matmul(&self.inv)),
            (Inner, Outer) => (Outer, self.mat.matmul(&other.mat), other.inv.matmul(&self.inv)),
            // −H (B a B⁻¹)ᵀ H⁻¹ = −(H B⁻ᵀ) aᵀ (H B⁻ᵀ)⁻¹
            (Outer, Inner) => (
                Outer,
                self.mat.matmul(&other.inv.transpose()),
                other.mat.transpose().matmul(&self.inv),
            ),
            // −H₁(−H₂ aᵀ H₂⁻¹)ᵀ H₁⁻¹ = (H₁ H₂⁻ᵀ) a (H₁ H₂⁻ᵀ)⁻¹
            (Outer, Outer) => (
                Inner,
                self.mat.matmul(&other.inv.transpose()),
                other.mat.transpose().matmul(&self.inv),
            ),
        };
        Automorphism { kind, mat, inv }
    }

    /// Pull the matrix entries back by `σ`.
    pub fn pullback(&self, m: &MoebiusT) -> Automorphism {
        Automorphism {
            kind: self.kind,
            mat: self.mat.pullback(m),
            inv: self.inv.pullback(m),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.kind == AutKind::Inner
            && self
                .mat
                .ratio_to(&MatElem::identity(self.dim(), self.mat.conductor()))
                .is_some()
    }

    /// Whether the matrix is independent of `λ`.
    pub fn is_constant(&self) -> bool {
        self.mat.entries().iter().all(RatL::is_constant)
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Automorphism) -> bool {
        self.kind == other.kind && self.mat.ratio_to(&other.mat).is_some()
    }
}

/// A reduction-group element `(σ, φ)` acting by `a ↦ φ(a ∘ σ⁻¹)`.
#[derive(Clone, Debug)]
pub struct RedElem {
    pub sigma: MoebiusT,
    pub phi: Automorphism,
}

impl RedElem {
    pub fn new(sigma: MoebiusT, phi: Automorphism) -> RedElem {
        RedElem { sigma, phi }
    }

    pub fn identity(dim: usize, l: u32) -> RedElem {
        RedElem {
            sigma: MoebiusT::identity(l),
            phi: Automorphism::identity(dim, l),
        }
    }

    pub fn act(&self, a: &MatElem) -> MatElem {
        self.phi.apply(&a.pullback(&self.sigma))
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.is_identity() && self.phi.is_identity()
    }
}

impl PartialEq for RedElem {
    fn eq(&self, other: &RedElem) -> bool {
        self.sigma == other.sigma && self.phi == other.phi
    }
}

/// `g2 · g1 = (σ₂σ₁, ψ₂ · σ₂(ψ₁))`: apply `g1` first.
pub fn red_compose(g2: &RedElem, g1: &RedElem) -> Result<RedElem, RedError> {
    if g2.phi.dim() != g1.phi.dim() {
        return Err(RedError::DimensionMismatch);
    }
    Ok(RedElem {
        sigma: g2.sigma.compose(&g1.sigma),
        phi: g2.phi.compose(&g1.phi.pullback(&g2.sigma)),
    })
}

/// `g(a)`, checking dimensions.
pub fn red_act(g: &RedElem, a: &MatElem) -> Result<MatElem, RedError> {
    if g.phi.dim() != a.dim() {
        return Err(RedError::DimensionMismatch);
    }
    Ok(g.act(a))
}

/// A defining relation: `(label, word in generator indices, exponent)`.
pub type Relation = (String, Vec<usize>, usize);

/// A finite reduction group with its multiplication table.
#[derive(Debug, Clone)]
pub struct RedGroup {
    name: String,
    dim: usize,
    elements: Vec<RedElem>,
    gens: Vec<usize>,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

/// Finite closure of `gens` under composition; relations, when given, are
/// checked exactly.
pub fn red_generate(
    name: &str,
    gens: &[RedElem],
    bound: usize,
    relations: Option<&[Relation]>,
) -> Result<RedGroup, RedError> {
    let dim = gens.first().map_or(0, |g| g.phi.dim());
    if gens.iter().any(|g| g.phi.dim() != dim) {
        return Err(RedError::DimensionMismatch);
    }
    if let Some(rels) = relations {
        for (label, word, e) in rels {
            let mut w = RedElem::identity(dim, gens[0].sigma.conductor());
            for &k in word {
                w = red_compose(&w, &gens[k])?;
            }
            let mut p = RedElem::identity(dim, gens[0].sigma.conductor());
            for _ in 0..*e {
                p = red_compose(&p, &w)?;
            }
            if !p.is_identity() {
                return Err(RedError::RelationFailure(label.clone()));
            }
        }
    }
    let l = gens.first().map_or(1, |g| g.sigma.conductor());
    let mut elements = vec![RedElem::identity(dim, l)];
    let mut buckets: HashMap<MoebiusT, Vec<usize>> = HashMap::new();
    buckets.insert(elements[0].sigma.normalized(), vec![0]);
    let find = |elements: &[RedElem], buckets: &HashMap<MoebiusT, Vec<usize>>, e: &RedElem| {
        buckets
            .get(&e.sigma.normalized())
            .and_then(|v| v.iter().copied().find(|&i| elements[i] == *e))
    };
    let mut frontier = 0;
    while frontier < elements.len() {
        let x = elements[frontier].clone();
        for g in gens {
            let y = red_compose(g, &x)?;
            if find(&elements, &buckets, &y).is_none() {
                if elements.len() >= bound {
                    return Err(RedError::ClosureOverflow(bound));
                }
                buckets
                    .entry(y.sigma.normalized())
                    .or_default()
                    .push(elements.len());
                elements.push(y);
            }
        }
        frontier += 1;
    }
    let n = elements.len();
    let mut mult = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = red_compose(&elements[i], &elements[j])?;
            mult[i][j] = find(&elements, &buckets, &p).expect("closed");
        }
    }
    let inv = (0..n)
        .map(|i| (0..n).find(|&j| mult[i][j] == 0).expect("inverse"))
        .collect();
    let gen_idx = gens
        .iter()
        .map(|g| find(&elements, &buckets, g).expect("generator present"))
        .collect();
    Ok(RedGroup {
        name: name.to_string(),
        dim,
        elements,
        gens: gen_idx,
        mult,
        inv,
    })
}

impl RedGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[RedElem] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &RedElem {
        &self.elements[i]
    }

    pub fn generators(&self) -> Vec<&RedElem> {
        self.gens.iter().map(|&i| &self.elements[i]).collect()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mult[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn table_is_group(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| self.mult[0][i] == i && self.mult[i][0] == i)
            && (0..n).all(|i| self.mult[i][self.inv[i]] == 0 && self.mult[self.inv[i]][i] == 0)
            && (0..n).all(|i| {
                (0..n).all(|j| (0..n).all(|k| self.mult[self.mult[i][j]][k] == self.mult[i][self.mult[j][k]]))
            })
    }

    /// Whether the index set is closed under conjugation by every element.
    pub fn is_normal(&self, sub: &[usize]) -> bool {
        (0..self.order()).all(|x| {
            sub.iter()
                .all(|&k| sub.contains(&self.mul(self.mul(x, k), self.inv(x))))
        })
    }

    /// Distinct images of a point under the Möbius parts.
    pub fn orbit_points(&self, p: &SpherePoint) -> Vec<SpherePoint> {
        let mut out: Vec<SpherePoint> = Vec::new();
        for e in &self.elements {
            let q = e.sigma.apply(p);
            if !out.contains(&q) {
                out.push(q);
            }
        }
        out
    }

    /// Average over the listed elements.
    pub fn average_over(&self, idx: &[usize], a: &MatElem) -> MatElem {
        let l = a.conductor();
        let sum = idx
            .iter()
            .fold(MatElem::zero_like(a), |acc, &i| acc.add(&self.elements[i].act(a)));
        sum.scale(&Scalar::from_int(l, idx.len() as i64).inv().unwrap())
    }
}

/// The subgroups `U₁ = G ∩ (A × id)`, `U₂ = G ∩ (id × B)` and `K = U₁U₂`
/// with their normality and the diagonal structure of `G/K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorAnalysis {
    pub u1: Vec<usize>,
    pub u2: Vec<usize>,
    pub k: Vec<usize>,
    pub normal: bool,
    pub quotient_order: usize,
    pub coset_reps: Vec<usize>,
    pub diag_witness: bool,
}

pub fn factor_analysis(g: &RedGroup) -> FactorAnalysis {
    let n = g.order();
    let u1: Vec<usize> = (0..n).filter(|&i| g.elements[i].phi.is_identity()).collect();
    let u2: Vec<usize> = (0..n).filter(|&i| g.elements[i].sigma.is_identity()).collect();
    let mut k: Vec<usize> = Vec::new();
    for &a in &u1 {
        for &b in &u2 {
            let p = g.mul(a, b);
            if !k.contains(&p) {
                k.push(p);
            }
        }
    }
    k.sort_unstable();
    let normal = g.is_normal(&u1) && g.is_normal(&u2) && g.is_normal(&k);
    let mut reps = Vec::new();
    let mut covered = vec![false; n];
    for x in 0..n {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &kk in &k {
            covered[g.mul(x, kk)] = true;
        }
    }
    // Distinct cosets must differ in both projections, modulo the images of K.
    let sig_k: Vec<&MoebiusT> = k.iter().map(|&i| &g.elements[i].sigma).collect();
    let phi_k: Vec<&Automorphism> = k.iter().map(|&i| &g.elements[i].phi).collect();
    let mut diag = true;
    for (a, &r) in reps.iter().enumerate() {
        for &s in &reps[a + 1..] {
            let t = g.mul(g.inv(r), s);
            let e = &g.elements[t];
            if sig_k.contains(&&e.sigma) || phi_k.iter().any(|p| **p == e.phi) {
                diag = false;
            }
        }
    }
    FactorAnalysis {
        u1,
        u2,
        quotient_order: reps.len(),
        k,
        normal,
        coset_reps: reps,
        diag_witness: diag,
    }
}

/// Average in stages: over `U₂`, then `U₁`, then coset representatives of `K`.
pub fn staged_average(g: &RedGroup, fa: &FactorAnalysis, a: &MatElem) -> MatElem {
    let b = g.average_over(&fa.u2, a);
    let c = g.average_over(&fa.u1, &b);
    g.average_over(&fa.coset_reps, &c)
}
