//! Coefficient fields: cyclotomic numbers and towers of formal parameters
//! over them.

mod cyclo;
mod scalar;

pub use cyclo::{cyclotomic_poly, CycField, CycNum};
pub use scalar::{Bindings, ParamFrac, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("tower mismatch: {0}")]
    TowerMismatch(String),
    #[error("evaluation hits a pole")]
    EvalPole,
    #[error("missing binding for parameter {0}")]
    MissingBinding(String),
}

/// A formal parameter of a tower, e.g. `γ` at position 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamSym {
    pub name: String,
    /// 1-based position in the tower; the innermost parameter is 1.
    pub position: usize,
}

/// Conductor plus the ordered parameter names.
///
/// Values themselves only carry the parameter index; the tower supplies
/// the names used when printing and parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    conductor: u32,
    params: Vec<ParamSym>,
}

impl Tower {
    pub fn new(conductor: u32, names: &[&str]) -> Tower {
        let mut params: Vec<ParamSym> = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            assert!(
                params.iter().all(|p| p.name != *n),
                "duplicate parameter name {n}"
            );
            params.push(ParamSym {
                name: n.to_string(),
                position: i + 1,
            });
        }
        Tower { conductor, params }
    }

    /// Tower with the default parameter names `g, m, n` (γ, μ, ν).
    pub fn standard(conductor: u32) -> Tower {
        Tower::new(conductor, &["g", "m", "n"])
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn params(&self) -> &[ParamSym] {
        &self.params
    }

    pub fn name(&self, var: usize) -> &str {
        self.params
            .get(var)
            .map(|p| p.name.as_str())
            .unwrap_or("?")
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p.name == name)
    }

    /// The parameter at 0-based index `var` as a `Scalar`.
    pub fn param(&self, var: usize) -> Scalar {
        assert!(var < self.params.len(), "parameter index out of range");
        Scalar::param(self.conductor, var)
    }

    pub fn int(&self, v: i64) -> Scalar {
        Scalar::from_int(self.conductor, v)
    }

    pub fn root(&self, l: u32, k: i64) -> Result<Scalar, ScalarError> {
        if !self.conductor.is_multiple_of(l) {
            return Err(ScalarError::TowerMismatch(format!(
                "ζ_{l} is not in Q(ζ_{})",
                self.conductor
            )));
        }
        Ok(Scalar::Cyc(CycNum::root(
            self.conductor,
            k * (self.conductor / l) as i64,
        )))
    }
}
