use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::{PolyError, Polynomial};

/// Exponents above this are rejected unless a ring sets its own cap.
pub const DEFAULT_EXPONENT_CAP: u32 = 1 << 16;

/// A polynomial ring over the rationals: an ordered list of variable names,
/// optionally with a positive weight per variable.
///
/// The variable order matters. It fixes the monomial order used for storage
/// and printing, and it is the coordinate order of a [`super::Point`].
#[derive(Debug, Clone)]
pub struct Ring {
    vars: Vec<String>,
    weights: Option<Vec<u32>>,
    exponent_cap: u32,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.weights == other.weights
    }
}

impl Eq for Ring {}

pub fn is_valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<I, S>(vars: I) -> Result<Arc<Ring>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::build(vars.into_iter().map(Into::into).collect(), None).map(Arc::new)
    }

    pub fn graded<I, S>(vars: I, weights: Vec<u32>) -> Result<Arc<Ring>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::build(vars.into_iter().map(Into::into).collect(), Some(weights)).map(Arc::new)
    }

    fn build(vars: Vec<String>, weights: Option<Vec<u32>>) -> Result<Ring, PolyError> {
        let mut seen = HashSet::new();
        for v in &vars {
            if !is_valid_var_name(v) {
                return Err(PolyError::InvalidVariableName(v.clone()));
            }
            if !seen.insert(v.as_str()) {
                return Err(PolyError::DuplicateVariable(v.clone()));
            }
        }
        if let Some(w) = &weights {
            if w.len() != vars.len() {
                return Err(PolyError::WeightCount {
                    vars: vars.len(),
                    weights: w.len(),
                });
            }
            if w.contains(&0) {
                return Err(PolyError::NonPositiveWeight);
            }
        }
        Ok(Ring {
            vars,
            weights,
            exponent_cap: DEFAULT_EXPONENT_CAP,
        })
    }

    /// Copy of this ring with a different exponent cap.
    pub fn with_exponent_cap(&self, cap: u32) -> Arc<Ring> {
        Arc::new(Ring {
            exponent_cap: cap,
            ..self.clone()
        })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn exponent_cap(&self) -> u32 {
        self.exponent_cap
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    pub fn var_name(&self, index: usize) -> &str {
        &self.vars[index]
    }

    /// The variable `name` as a polynomial.
    pub fn variable(self: &Arc<Self>, name: &str) -> Result<Polynomial, PolyError> {
        Ok(Polynomial::var(self, self.var_index(name)?))
    }

    /// All variables, in ring order.
    pub fn generators(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| Polynomial::var(self, i)).collect()
    }

    /// This ring with one more variable appended. The grading is dropped.
    pub fn extended(&self, name: &str) -> Result<Arc<Ring>, PolyError> {
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        let mut ring = Self::build(vars, None)?;
        ring.exponent_cap = self.exponent_cap;
        Ok(Arc::new(ring))
    }

    /// A variable name not used by this ring, built from `stem` and, if needed,
    /// a numeric suffix.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.index_of(stem).is_none() {
            return stem.to_string();
        }
        (0..)
            .map(|k| format!("{stem}_{k}"))
            .find(|n| self.index_of(n).is_none())
            .unwrap()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars.join(","))
    }
}
