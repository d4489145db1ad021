use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::field::FieldSpec;
use super::monomial::MAX_VARS;
use crate::error::{Error, Result};

/// Fixes the polynomial ring `k[x_0, ..., x_{n-1}]` localized at the origin,
/// optionally with one variable playing the role of the uniformizer `t` of
/// the coefficient ring `k[[t]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingSignature {
    field: FieldSpec,
    vars: Vec<String>,
    uniformizer: Option<usize>,
}

impl RingSignature {
    pub fn new<S: AsRef<str>>(field: FieldSpec, vars: &[S], uniformizer: Option<&str>) -> Result<Arc<Self>> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables { max: MAX_VARS, got: vars.len() });
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        let uniformizer = match uniformizer {
            Some(name) => Some(
                vars.iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::UnknownVariable(name.to_string()))?,
            ),
            None => None,
        };
        Ok(Arc::new(RingSignature { field, vars, uniformizer }))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn variable(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn uniformizer(&self) -> Option<usize> {
        self.uniformizer
    }

    pub fn uniformizer_name(&self) -> Option<&str> {
        self.uniformizer.map(|i| self.vars[i].as_str())
    }

    /// A copy of this signature with one more variable appended, named
    /// `base` with primes added until the name is fresh.
    pub fn with_fresh_variable(&self, base: &str) -> Result<(Arc<Self>, usize)> {
        let mut name = String::from(base);
        while self.vars.contains(&name) {
            name.push('\'');
        }
        let mut vars = self.vars.clone();
        vars.push(name);
        let sig = RingSignature::new(self.field, &vars, self.uniformizer_name())?;
        Ok((sig, self.arity()))
    }

    /// Same variables, reordered by `perm` (new position `i` holds old variable `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Result<Arc<Self>> {
        let vars: Vec<&str> = perm.iter().map(|&i| self.vars[i].as_str()).collect();
        RingSignature::new(self.field, &vars, self.uniformizer_name())
    }
}

impl fmt::Display for RingSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(", "))?;
        if let Some(u) = self.uniformizer_name() {
            write!(f, " uniformizer {u}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_unknown_uniformizer() {
        assert_eq!(
            RingSignature::new(FieldSpec::Rationals, &["x", "x"], None).unwrap_err(),
            Error::DuplicateVariable("x".into())
        );
        assert_eq!(
            RingSignature::new(FieldSpec::Rationals, &["x"], Some("t")).unwrap_err(),
            Error::UnknownVariable("t".into())
        );
        let sig = RingSignature::new(FieldSpec::Rationals, &["t", "x"], Some("t")).unwrap();
        assert_eq!(sig.uniformizer(), Some(0));
        assert_eq!(sig.to_string(), "Q[t, x] uniformizer t");
    }

    #[test]
    fn fresh_variables_do_not_clash() {
        let sig = RingSignature::new(FieldSpec::Rationals, &["w", "x"], None).unwrap();
        let (ext, idx) = sig.with_fresh_variable("w").unwrap();
        assert_eq!(idx, 2);
        assert_eq!(ext.variable(2), "w'");
    }
}
