use super::Objective;
use crate::element::ElementId;
use crate::error::{Error, Result};

/// `f(S) = Σ_{x ∈ S} weights[x]` with nonnegative weights.
#[derive(Clone, Debug)]
pub struct ModularInstance {
    weights: Vec<f64>,
}

impl ModularInstance {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::input(format!("modular weight {w} is not a nonnegative number")));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl Objective for ModularInstance {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        set.iter().map(|e| self.weights[e.0]).sum()
    }

    fn kind(&self) -> &'static str {
        "modular"
    }
}
