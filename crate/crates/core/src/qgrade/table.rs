use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::scalars::{Bindings, Scalar, ScalarError, Tower};

/// Coefficients keyed by `(generator index, degree)`.
pub type Vector = BTreeMap<(usize, i64), Scalar>;

/// One term `coeff · b_k^{n+m+offset}` of a bracket `[b_i^n, b_j^m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub k: usize,
    pub offset: i64,
    pub coeff: Scalar,
}

/// Smallest `(p, q)` with every offset in `[−q, p]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasiWindow {
    pub p: i64,
    pub q: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitReport {
    pub plus_closed: bool,
    pub minus_closed: bool,
}

/// Structure constants at degree 0; `[b_i fⁿ, b_j fᵐ] = f^{n+m} [b_i, b_j]`
/// gives every other degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    pub names: Vec<String>,
    pub entries: BTreeMap<(usize, usize), Vec<Term>>,
    conductor: u32,
}

/// Result of a Jacobi sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiReport {
    pub checked: usize,
    pub violations: Vec<[(usize, i64); 3]>,
}

impl StructureTable {
    pub fn new(
        names: Vec<String>,
        entries: BTreeMap<(usize, usize), Vec<Term>>,
        conductor: u32,
    ) -> StructureTable {
        StructureTable {
            names,
            entries,
            conductor,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn terms(&self, i: usize, j: usize) -> &[Term] {
        self.entries.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    /// `[b_i^n, b_j^m]` as `(k, degree, coeff)`.
    pub fn bracket(&self, i: usize, n: i64, j: usize, m: i64) -> Vec<(usize, i64, Scalar)> {
        self.terms(i, j)
            .iter()
            .map(|t| (t.k, n + m + t.offset, t.coeff.clone()))
            .collect()
    }

    /// Bilinear extension of the table.
    pub fn bracket_vec(&self, u: &Vector, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&(i, n), a) in u {
            for (&(j, m), b) in v {
                let ab = a * b;
                for t in self.terms(i, j) {
                    let key = (t.k, n + m + t.offset);
                    let add = &ab * &t.coeff;
                    let e = out
                        .entry(key)
                        .or_insert_with(|| Scalar::zero(self.conductor));
                    *e = &*e + &add;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn window(&self) -> QuasiWindow {
        let offs = self.entries.values().flatten().map(|t| t.offset);
        let (lo, hi) = offs.fold((0, 0), |(lo, hi), o| (lo.min(o), hi.max(o)));
        QuasiWindow { p: hi, q: -lo }
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let a = self.terms(i, j);
                let b = self.terms(j, i);
                a.len() == b.len()
                    && a.iter().all(|t| {
                        b.iter()
                            .any(|s| s.k == t.k && s.offset == t.offset && s.coeff == t.coeff.neg_ref())
                    })
            })
        })
    }

    /// `[[a,b],c] + [[b,c],a] + [[c,a],b]` on every triple of basis elements
    /// with degrees in `lo..=hi`.
    pub fn jacobi_check(&self, lo: i64, hi: i64) -> JacobiReport {
        let n = self.len();
        let unit = |i: usize, d: i64| {
            let mut v = Vector::new();
            v.insert((i, d), Scalar::one(self.conductor));
            v
        };
        let mut checked = 0;
        let mut violations = Vec::new();
        let elems: Vec<(usize, i64)> = (lo..=hi)
            .flat_map(|d| (0..n).map(move |i| (i, d)))
            .collect();
        for (x, &a) in elems.iter().enumerate() {
            for (y, &b) in elems.iter().enumerate().skip(x) {
                for &c in elems.iter().skip(y) {
                    let (ua, ub, uc) = (unit(a.0, a.1), unit(b.0, b.1), unit(c.0, c.1));
                    let mut sum = self.bracket_vec(&self.bracket_vec(&ua, &ub), &uc);
                    for (k, v) in self.bracket_vec(&self.bracket_vec(&ub, &uc), &ua) {
                        let e = sum.entry(k).or_insert_with(|| Scalar::zero(self.conductor));
                        *e = &*e + &v;
                    }
                    for (k, v) in self.bracket_vec(&self.bracket_vec(&uc, &ua), &ub) {
                        let e = sum.entry(k).or_insert_with(|| Scalar::zero(self.conductor));
                        *e = &*e + &v;
                    }
                    checked += 1;
                    if sum.values().any(|c| !c.is_zero()) {
                        violations.push([a, b, c]);
                    }
                }
            }
        }
        JacobiReport {
            checked,
            violations,
        }
    }

    /// Non-negative degrees close iff no offset is negative; negative degrees
    /// close iff no offset exceeds 1.
    pub fn split_check(&self) -> SplitReport {
        let w = self.window();
        SplitReport {
            plus_closed: w.q == 0,
            minus_closed: w.p <= 1,
        }
    }

    /// Whether the Lie subalgebra generated by `seeds` contains every target,
    /// exploring brackets whose degrees stay in `0..=max_degree`.
    pub fn generates(&self, seeds: &[(usize, i64)], targets: &[(usize, i64)], max_degree: i64) -> bool {
        let one = Scalar::one(self.conductor);
        let seed_vecs: Vec<Vector> = seeds
            .iter()
            .map(|&k| std::iter::once((k, one.clone())).collect())
            .collect();
        let mut span = Echelon::default();
        let mut queue: Vec<Vector> = Vec::new();
        for s in &seed_vecs {
            if let Some(v) = span.insert(s.clone()) {
                queue.push(v);
            }
        }
        while let Some(v) = queue.pop() {
            for s in &seed_vecs {
                let w = self.bracket_vec(s, &v);
                if w.keys().any(|&(_, d)| d < 0 || d > max_degree) {
                    continue;
                }
                if let Some(w) = span.insert(w) {
                    queue.push(w);
                }
            }
        }
        targets.iter().all(|&t| {
            let v: Vector = std::iter::once((t, one.clone())).collect();
            span.reduce(v).is_empty()
        })
    }

    /// Substitute concrete parameter values into every coefficient.
    pub fn evaluate(&self, bindings: &Bindings) -> Result<StructureTable, ScalarError> {
        let mut entries = BTreeMap::new();
        for (key, terms) in &self.entries {
            let mut out = Vec::new();
            for t in terms {
                let c = Scalar::Cyc(t.coeff.eval(bindings)?);
                if !c.is_zero() {
                    out.push(Term { coeff: c, ..t.clone() });
                }
            }
            entries.insert(*key, out);
        }
        Ok(StructureTable::new(self.names.clone(), entries, self.conductor))
    }

    /// Right-hand side of `[b_i, b_j]` in the form `2*x1^{+1} - 4*y1`.
    pub fn rhs_text(&self, i: usize, j: usize, tower: &Tower) -> String {
        let terms = self.terms(i, j);
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for t in sorted(terms) {
            let name = &self.names[t.k];
            let sup = if t.offset == 0 {
                String::new()
            } else {
                format!("^{{{:+}}}", t.offset)
            };
            let (neg, mag) = sign_split(&t.coeff);
            let coef = if mag.is_one() {
                String::new()
            } else if mag.is_compound() {
                format!("({})*", mag.to_text_in(tower))
            } else {
                format!("{}*", mag.to_text_in(tower))
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&format!("{coef}{name}{sup}"));
        }
        out
    }

    pub fn to_text(&self, tower: &Tower) -> String {
        let mut out = String::new();
        for ((i, j), terms) in &self.entries {
            if i < j && !terms.is_empty() {
                out.push_str(&format!(
                    "[{}, {}] = {}\n",
                    self.names[*i],
                    self.names[*j],
                    self.rhs_text(*i, *j, tower)
                ));
            }
        }
        let w = self.window();
        out.push_str(&format!("window: p = {}, q = {}\n", w.p, w.q));
        out
    }

    pub fn to_json(&self, tower: &Tower) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .filter(|((i, j), _)| i < j)
            .map(|((i, j), terms)| {
                let ts: Vec<Value> = sorted(terms)
                    .into_iter()
                    .map(|t| {
                        json!({
                            "k": self.names[t.k],
                            "offset": t.offset,
                            "coeff": t.coeff.to_text_in(tower),
                        })
                    })
                    .collect();
                json!({ "i": self.names[*i], "j": self.names[*j], "terms": ts })
            })
            .collect();
        let w = self.window();
        json!({
            "basis": self.names,
            "entries": entries,
            "window": { "p": w.p, "q": w.q },
        })
    }

    /// Table in the `[a^n, b^m] = …` layout with superscripts `n+m+k`.
    pub fn to_latex(&self, tower: &Tower) -> String {
        let mut cells = Vec::new();
        for ((i, j), terms) in &self.entries {
            if i >= j || terms.is_empty() {
                continue;
            }
            let mut rhs = String::new();
            for t in sorted(terms) {
                let (neg, mag) = sign_split(&t.coeff);
                let coef = if mag.is_one() {
                    String::new()
                } else if mag.is_compound() {
                    format!("({})", mag.to_text_in(tower))
                } else {
                    mag.to_text_in(tower)
                };
                let sup = match t.offset {
                    0 => "n+m".to_string(),
                    o if o > 0 => format!("n+m+{o}"),
                    o => format!("n+m{o}"),
                };
                if rhs.is_empty() {
                    if neg {
                        rhs.push('-');
                    }
                } else {
                    rhs.push_str(if neg { "-" } else { "+" });
                }
                rhs.push_str(&format!("{coef}{}^{{{sup}}}", latex_name(&self.names[t.k])));
            }
            cells.push(format!(
                "\\left[{}^n,{}^m\\right]={rhs}",
                latex_name(&self.names[*i]),
                latex_name(&self.names[*j])
            ));
        }
        let rows: Vec<String> = cells.chunks(3).map(|c| c.join(", & ")).collect();
        format!(
            "\\begin{{array}}{{lll}}\n{}\n\\end{{array}}\n",
            rows.join(", \\\\\n")
        )
    }
}

fn latex_name(n: &str) -> String {
    let (head, tail) = n.split_at(n.find(|c: char| c.is_ascii_digit()).unwrap_or(n.len()));
    if tail.is_empty() {
        head.to_string()
    } else {
        format!("{head}_{tail}")
    }
}

fn sorted(terms: &[Term]) -> Vec<&Term> {
    let mut v: Vec<&Term> = terms.iter().collect();
    v.sort_by_key(|t| (-t.offset, t.k));
    v
}

/// Split off a leading sign when the negated coefficient prints more simply.
fn sign_split(c: &Scalar) -> (bool, Scalar) {
    let n = c.neg_ref();
    match c.to_rational() {
        Some(r) if r < num_rational::BigRational::from_integer(0.into()) => (true, n),
        Some(_) => (false, c.clone()),
        None => {
            if c.is_compound() && !n.is_compound() {
                (true, n)
            } else {
                (false, c.clone())
            }
        }
    }
}

/// Row-echelon basis of coefficient vectors.
#[derive(Default)]
struct Echelon {
    rows: Vec<Vector>,
}

impl Echelon {
    fn reduce(&self, mut v: Vector) -> Vector {
        for r in &self.rows {
            let (&key, _) = r.iter().next().expect("nonzero row");
            if let Some(c) = v.get(&key).cloned() {
                for (k, x) in r {
                    let e = v.entry(*k).or_insert_with(|| c.zero_like());
                    *e = &*e - &(&c * x);
                }
                v.retain(|_, x| !x.is_zero());
            }
        }
        v
    }

    /// Add `v` if independent; returns the reduced vector that was added.
    fn insert(&mut self, v: Vector) -> Option<Vector> {
        let mut v = self.reduce(v);
        let (&key, lead) = v.iter().next()?;
        let inv = lead.inv().expect("nonzero");
        for x in v.values_mut() {
            *x = &*x * &inv;
        }
        // Keep rows fully reduced against the new pivot.
        for r in &mut self.rows {
            if let Some(c) = r.get(&key).cloned() {
                for (k, x) in &v {
                    let e = r.entry(*k).or_insert_with(|| c.zero_like());
                    *e = &*e - &(&c * x);
                }
                r.retain(|_, x| !x.is_zero());
            }
        }
        self.rows.push(v.clone());
        Some(v)
    }
}
