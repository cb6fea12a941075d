//! Triangular norms and their residuals.
//!
//! A t-norm plays the role of multiplication in the max-T semiring. Each
//! implementation lives behind the [`TNorm`] trait and is registered by name
//! in a [`TNormRegistry`], so callers (and the CLI's `--tnorm` flag) select
//! one at runtime.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::value::{SemiringBounds, Value};

pub trait TNorm: fmt::Debug + Send + Sync {
    /// Registry key, lower case.
    fn name(&self) -> &'static str;

    /// Whether the norm is defined over `bounds`.
    fn supports(&self, bounds: &SemiringBounds) -> bool {
        bounds.is_unit()
    }

    /// `T(a, b)` for arguments already known to lie in `bounds`.
    fn apply_in(&self, a: Value, b: Value, bounds: &SemiringBounds) -> Result<Value>;

    /// Largest `λ` with `T(λ, a) <= c`, for arguments already known to lie in `bounds`.
    fn residual_in(&self, a: Value, c: Value, bounds: &SemiringBounds) -> Result<Value>;

    /// True when `T(a, b)` is always one of `a`, `b`. For such norms every
    /// combination of grid values stays on the grid, so finite witness grids
    /// built from the input coordinates are exact.
    fn is_selective(&self) -> bool {
        false
    }
}

fn check_args(t: &dyn TNorm, a: Value, b: Value, bounds: &SemiringBounds) -> Result<()> {
    if !t.supports(bounds) {
        return Err(Error::Domain(format!(
            "t-norm {} is only defined on [0, 1], not [{}, {}]",
            t.name(),
            bounds.lo(),
            bounds.hi()
        )));
    }
    bounds.check(a)?;
    bounds.check(b)?;
    Ok(())
}

/// `T(a, b)`, with domain checks.
pub fn tnorm_apply(t: &dyn TNorm, a: Value, b: Value, bounds: &SemiringBounds) -> Result<Value> {
    check_args(t, a, b, bounds)?;
    t.apply_in(a, b, bounds)
}

/// `sup { λ : T(λ, a) <= c }`, with domain checks.
pub fn residual(t: &dyn TNorm, a: Value, c: Value, bounds: &SemiringBounds) -> Result<Value> {
    check_args(t, a, c, bounds)?;
    t.residual_in(a, c, bounds)
}

/// `min(a, b)`, defined for any bounds.
#[derive(Debug, Clone, Copy, Default)]
pub struct MinNorm;

impl TNorm for MinNorm {
    fn name(&self) -> &'static str {
        "min"
    }

    fn supports(&self, _bounds: &SemiringBounds) -> bool {
        true
    }

    fn apply_in(&self, a: Value, b: Value, _bounds: &SemiringBounds) -> Result<Value> {
        Ok(a.min(b))
    }

    fn residual_in(&self, a: Value, c: Value, bounds: &SemiringBounds) -> Result<Value> {
        Ok(if a <= c { bounds.hi() } else { c })
    }

    fn is_selective(&self) -> bool {
        true
    }
}

/// Ordinary product `a * b` on `[0, 1]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ProductNorm;

impl TNorm for ProductNorm {
    fn name(&self) -> &'static str {
        "product"
    }

    fn apply_in(&self, a: Value, b: Value, _bounds: &SemiringBounds) -> Result<Value> {
        a.checked_mul(&b)
    }

    fn residual_in(&self, a: Value, c: Value, _bounds: &SemiringBounds) -> Result<Value> {
        if a <= c {
            Ok(Value::ONE)
        } else {
            // a > c >= 0
            c.checked_div(&a)
        }
    }
}

/// Łukasiewicz norm `max(0, a + b - 1)` on `[0, 1]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct LukasiewiczNorm;

impl TNorm for LukasiewiczNorm {
    fn name(&self) -> &'static str {
        "lukasiewicz"
    }

    fn apply_in(&self, a: Value, b: Value, _bounds: &SemiringBounds) -> Result<Value> {
        Ok(a.checked_add(&b)?.checked_sub(&Value::ONE)?.max(Value::ZERO))
    }

    fn residual_in(&self, a: Value, c: Value, _bounds: &SemiringBounds) -> Result<Value> {
        Ok(c.checked_add(&Value::ONE)?.checked_sub(&a)?.min(Value::ONE))
    }
}

/// Name-keyed collection of t-norms.
#[derive(Clone)]
pub struct TNormRegistry {
    entries: BTreeMap<&'static str, Arc<dyn TNorm>>,
}

impl TNormRegistry {
    pub fn empty() -> TNormRegistry {
        TNormRegistry {
            entries: BTreeMap::new(),
        }
    }

    /// Registry holding `min`, `product` and `lukasiewicz`.
    pub fn builtin() -> TNormRegistry {
        let mut reg = TNormRegistry::empty();
        reg.register(Arc::new(MinNorm));
        reg.register(Arc::new(ProductNorm));
        reg.register(Arc::new(LukasiewiczNorm));
        reg
    }

    /// Adds a norm, replacing any previous entry with the same name.
    pub fn register(&mut self, norm: Arc<dyn TNorm>) {
        self.entries.insert(norm.name(), norm);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn TNorm>> {
        let key = name.trim().to_ascii_lowercase();
        self.entries
            .get(key.as_str())
            .cloned()
            .ok_or_else(|| Error::UnknownTNorm(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn TNorm>> + '_ {
        self.entries.values()
    }
}

impl Default for TNormRegistry {
    fn default() -> Self {
        TNormRegistry::builtin()
    }
}

impl fmt::Debug for TNormRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.keys()).finish()
    }
}
