//! Variable registry for phase-space expressions.
//!
//! A [`PhaseContext`] fixes the base dimension `n` and the parameter symbols.
//! The variable order is `q1 < ... < qn < p1 < ... < pn < params...`, and
//! every expression and operator carries a reference to exactly one context;
//! mixing contexts is rejected by the arithmetic layer.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Default parameter symbols, in order.
pub const DEFAULT_PARAMS: [&str; 3] = ["hbar", "m", "omega"];

#[derive(Debug)]
struct ContextData {
    n: usize,
    params: Vec<String>,
}

/// Registry of the `q`/`p` variables and the named parameters.
#[derive(Clone, Debug)]
pub struct PhaseContext {
    data: Arc<ContextData>,
}

/// A variable of a context, identified by its position in the fixed order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Var(pub(crate) usize);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarKind {
    /// `q^{i+1}` (0-based index).
    Position(usize),
    /// `p_{i+1}` (0-based index).
    Momentum(usize),
    /// Parameter, by index into the context's parameter list.
    Parameter(usize),
}

impl PartialEq for PhaseContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.n == other.data.n && self.data.params == other.data.params)
    }
}

impl Eq for PhaseContext {}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_phase_name(s: &str) -> bool {
    let mut chars = s.chars();
    if !matches!(chars.next(), Some('q') | Some('p')) {
        return false;
    }
    let rest: String = chars.collect();
    !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) && !rest.starts_with('0')
}

impl PhaseContext {
    /// Context with base dimension `n` and the default parameters.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_params(n, &DEFAULT_PARAMS)
    }

    pub fn with_params(n: usize, params: &[&str]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidContext("base dimension must be at least 1".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in params {
            if !is_identifier(name) {
                return Err(Error::InvalidContext(format!("`{name}` is not an identifier")));
            }
            if *name == "i" {
                return Err(Error::InvalidContext(
                    "`i` is reserved for the imaginary unit".into(),
                ));
            }
            if is_phase_name(name) {
                return Err(Error::InvalidContext(format!(
                    "`{name}` collides with a phase-variable name"
                )));
            }
            if !seen.insert(*name) {
                return Err(Error::InvalidContext(format!("duplicate parameter `{name}`")));
            }
        }
        Ok(PhaseContext {
            data: Arc::new(ContextData {
                n,
                params: params.iter().map(|s| s.to_string()).collect(),
            }),
        })
    }

    pub fn n(&self) -> usize {
        self.data.n
    }

    pub fn num_params(&self) -> usize {
        self.data.params.len()
    }

    /// Total number of variables: `2 n + #params`.
    pub fn nvars(&self) -> usize {
        2 * self.data.n + self.data.params.len()
    }

    /// Position variable `q{i+1}`, 0-based. Panics if `i >= n`.
    pub fn q(&self, i: usize) -> Var {
        assert!(i < self.data.n, "position index out of range");
        Var(i)
    }

    /// Momentum variable `p{i+1}`, 0-based. Panics if `i >= n`.
    pub fn p(&self, i: usize) -> Var {
        assert!(i < self.data.n, "momentum index out of range");
        Var(self.data.n + i)
    }

    pub fn param(&self, name: &str) -> Result<Var> {
        self.data
            .params
            .iter()
            .position(|p| p == name)
            .map(|k| Var(2 * self.data.n + k))
            .ok_or_else(|| Error::MissingParameter(name.to_string()))
    }

    pub fn kind(&self, v: Var) -> VarKind {
        let n = self.data.n;
        if v.0 < n {
            VarKind::Position(v.0)
        } else if v.0 < 2 * n {
            VarKind::Momentum(v.0 - n)
        } else {
            VarKind::Parameter(v.0 - 2 * n)
        }
    }

    pub fn is_phase(&self, v: Var) -> bool {
        v.0 < 2 * self.data.n
    }

    pub fn is_momentum(&self, v: Var) -> bool {
        let n = self.data.n;
        v.0 >= n && v.0 < 2 * n
    }

    pub fn name(&self, v: Var) -> String {
        match self.kind(v) {
            VarKind::Position(i) => format!("q{}", i + 1),
            VarKind::Momentum(i) => format!("p{}", i + 1),
            VarKind::Parameter(k) => self.data.params[k].clone(),
        }
    }

    /// Resolve an identifier to a variable, if it names one.
    pub fn lookup(&self, name: &str) -> Option<Var> {
        if is_phase_name(name) {
            let idx: usize = name[1..].parse().ok()?;
            if idx == 0 || idx > self.data.n {
                return None;
            }
            return Some(if name.starts_with('q') {
                self.q(idx - 1)
            } else {
                self.p(idx - 1)
            });
        }
        self.param(name).ok()
    }

    pub fn q_vars(&self) -> Vec<Var> {
        (0..self.data.n).map(|i| self.q(i)).collect()
    }

    pub fn p_vars(&self) -> Vec<Var> {
        (0..self.data.n).map(|i| self.p(i)).collect()
    }

    pub fn param_vars(&self) -> Vec<Var> {
        (0..self.data.params.len()).map(|k| Var(2 * self.data.n + k)).collect()
    }

    /// All phase variables, `q`s first.
    pub fn phase_vars(&self) -> Vec<Var> {
        (0..2 * self.data.n).map(Var).collect()
    }

    /// Every variable of the context in the fixed order.
    pub fn all_vars(&self) -> Vec<Var> {
        (0..self.nvars()).map(Var).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_layout() {
        let ctx = PhaseContext::new(2).unwrap();
        assert_eq!(ctx.nvars(), 7);
        assert_eq!(ctx.name(ctx.q(0)), "q1");
        assert_eq!(ctx.name(ctx.p(1)), "p2");
        assert_eq!(ctx.name(ctx.param("omega").unwrap()), "omega");
        assert_eq!(ctx.lookup("p2"), Some(ctx.p(1)));
        assert_eq!(ctx.lookup("q3"), None);
        assert_eq!(ctx.lookup("q01"), None);
        assert_eq!(ctx.lookup("hbar"), Some(ctx.param("hbar").unwrap()));
    }

    #[test]
    fn rejects_bad_contexts() {
        assert!(PhaseContext::new(0).is_err());
        assert!(PhaseContext::with_params(1, &["i"]).is_err());
        assert!(PhaseContext::with_params(1, &["q1"]).is_err());
        assert!(PhaseContext::with_params(1, &["m", "m"]).is_err());
        assert!(PhaseContext::with_params(1, &["2m"]).is_err());
    }

    #[test]
    fn contexts_compare_by_contents() {
        let a = PhaseContext::new(2).unwrap();
        let b = PhaseContext::new(2).unwrap();
        let c = PhaseContext::new(3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
