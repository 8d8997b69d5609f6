//! Module-spec files: `{"ring": <path or inline ring>, "generators": g, "relations": [...]}`.
//!
//! Each relation is a row of `g` entries; each entry is a list of ring terms.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::FiniteModule;
use crate::error::ModuleError;
use crate::linalg::zero_vec;
use crate::ring::spec::TermSpec;
use crate::ring::{GradedRing, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Path(String),
    Inline(RingSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub ring: RingRef,
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<Vec<TermSpec>>>,
}

impl ModuleSpec {
    pub fn from_json(text: &str) -> Result<Self, ModuleError> {
        serde_json::from_str(text).map_err(|e| {
            ModuleError::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
        })
    }

    /// Resolve the ring (paths are relative to `base`) and build the module.
    pub fn build(&self, base: &Path) -> Result<FiniteModule, ModuleError> {
        let ring = match &self.ring {
            RingRef::Inline(spec) => GradedRing::from_spec(spec)?,
            RingRef::Path(p) => {
                let text = std::fs::read_to_string(base.join(p))
                    .map_err(|e| ModuleError::Parse(format!("{p}: {e}")))?;
                GradedRing::from_json(&text)?
            }
        };
        self.build_over(Arc::new(ring))
    }

    pub fn build_over(&self, ring: Arc<GradedRing>) -> Result<FiniteModule, ModuleError> {
        let n = ring.n();
        let g = self.generators;
        let mut rows = Vec::new();
        for rel in &self.relations {
            if rel.len() != g {
                return Err(ModuleError::Shape(format!(
                    "relation has {} entries, expected {g}",
                    rel.len()
                )));
            }
            let mut v = zero_vec(g * n);
            for (j, terms) in rel.iter().enumerate() {
                for t in terms {
                    let k = ring
                        .basis()
                        .iter()
                        .position(|b| b.name == t.basis)
                        .ok_or_else(|| crate::error::RingError::UnknownBasis(t.basis.clone()))?;
                    let a = t.coeff.to_scalar(ring.coeffs())?;
                    v[j * n + k] = ring.coeffs().add(&v[j * n + k], &a);
                }
            }
            rows.push(ring.normalize_blocks(v));
        }
        FiniteModule::new(ring, g, rows)
    }
}

pub fn load_module(path: &Path) -> Result<FiniteModule, ModuleError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ModuleError::Parse(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    ModuleSpec::from_json(&text)?.build(base)
}
