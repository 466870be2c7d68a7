//! Polynomial ring contexts.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::MonomialOrder;

/// Shared cap on reduction steps. Cloning shares the counter, so every ring
/// derived from a budgeted ring draws from the same pool.
#[derive(Clone, Default)]
pub struct Budget {
    inner: Option<Arc<BudgetInner>>,
}

struct BudgetInner {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { inner: None }
    }

    pub fn limited(limit: u64) -> Budget {
        Budget {
            inner: Some(Arc::new(BudgetInner {
                limit,
                used: AtomicU64::new(0),
            })),
        }
    }

    /// Records `steps` reduction steps, failing once the cap is passed.
    #[inline]
    pub fn charge(&self, steps: u64) -> Result<()> {
        match &self.inner {
            None => Ok(()),
            Some(b) => {
                let used = b.used.fetch_add(steps, Ordering::Relaxed) + steps;
                if used > b.limit {
                    Err(Error::BudgetExhausted)
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn used(&self) -> u64 {
        self.inner
            .as_ref()
            .map_or(0, |b| b.used.load(Ordering::Relaxed))
    }
}

impl fmt::Debug for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner {
            None => write!(f, "Budget(unlimited)"),
            Some(b) => write!(f, "Budget({}/{})", b.used.load(Ordering::Relaxed), b.limit),
        }
    }
}

/// A polynomial ring `k[x_1..x_n]` with a monomial order. The first
/// `base` variables play the role of the base ring `R`.
#[derive(Clone, Debug)]
pub struct Ring {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
    base: usize,
    budget: Budget,
}

pub type RingRef = Arc<Ring>;

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(
        field: Field,
        vars: &[S],
        order: MonomialOrder,
        base: usize,
    ) -> Result<RingRef> {
        Ring::with_budget(field, vars, order, base, Budget::unlimited())
    }

    /// Grevlex ring with no base variables.
    pub fn simple<S: AsRef<str>>(field: Field, vars: &[S]) -> Result<RingRef> {
        Ring::new(field, vars, MonomialOrder::Grevlex, 0)
    }

    pub fn with_budget<S: AsRef<str>>(
        field: Field,
        vars: &[S],
        order: MonomialOrder,
        base: usize,
        budget: Budget,
    ) -> Result<RingRef> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("variable `{v}` declared twice")));
            }
        }
        if base > 2 {
            return Err(Error::InvalidRing(format!(
                "base has {base} variables; at most 2 are supported"
            )));
        }
        if base > vars.len() {
            return Err(Error::InvalidRing("base variables must be ring variables".into()));
        }
        order.validate(vars.len()).map_err(Error::InvalidRing)?;
        Ok(Arc::new(Ring {
            field,
            vars,
            order,
            base,
            budget,
        }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Number of base variables (a prefix of the variable list).
    pub fn base_count(&self) -> usize {
        self.base
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<RingRef> {
        order.validate(self.nvars()).map_err(Error::InvalidRing)?;
        Ok(Arc::new(Ring {
            order,
            ..self.clone()
        }))
    }

    /// Same ring drawing reduction steps from `budget`.
    pub fn rebudget(&self, budget: Budget) -> RingRef {
        Arc::new(Ring {
            budget,
            ..self.clone()
        })
    }

    /// Ring with `names` prepended to the variables, ordered by `order`.
    /// The base designation is dropped.
    pub fn prepend_vars<S: AsRef<str>>(&self, names: &[S], order: MonomialOrder) -> Result<RingRef> {
        let mut vars: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        vars.extend(self.vars.iter().cloned());
        Ring::with_budget(self.field, &vars, order, 0, self.budget.clone())
    }

    /// A fresh variable name not used in this ring, derived from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.var_index(stem).is_none() {
            return stem.to_string();
        }
        (1..)
            .map(|i| format!("{stem}{i}"))
            .find(|n| self.var_index(n).is_none())
            .unwrap()
    }

    /// Structural equality, ignoring the budget.
    pub fn same_as(&self, other: &Ring) -> bool {
        self.field == other.field
            && self.vars == other.vars
            && self.order == other.order
            && self.base == other.base
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        self.same_as(other)
    }
}

impl Eq for Ring {}

#[inline]
pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || a.same_as(b)
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))?;
        if self.base > 0 {
            write!(f, " base={}", self.vars[..self.base].join(","))?;
        }
        Ok(())
    }
}
