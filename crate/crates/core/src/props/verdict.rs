use serde::Serialize;

/// Structured evidence attached to a verdict, rendered to strings so that
/// reports from both universes share one schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Element { value: String },
    Maximal { ideal: String },
    /// An element tied to a maximal ideal, e.g. `x ∉ A_[m]`.
    ElementAt { ideal: String, value: String },
    /// Pairs `(αᵢ, zᵢ)` with `Σ αᵢzᵢ = 1`.
    Combination { pairs: Vec<(String, String)> },
    /// A nonzero tensor `Σ gᵢ ⊗ βᵢ` in the kernel of multiplication.
    Tensor { terms: Vec<(String, String)>, ideal: String },
    Tuple { items: Vec<String> },
    Text { value: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyVerdict {
    pub name: String,
    pub holds: bool,
    /// Set when the quantifier domain is empty or degenerate.
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl PropertyVerdict {
    pub fn new(name: impl Into<String>, holds: bool) -> Self {
        Self { name: name.into(), holds, vacuous: false, witness: None, notes: Vec::new() }
    }

    pub fn with_witness(mut self, witness: Witness) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn maybe_witness(mut self, witness: Option<Witness>) -> Self {
        self.witness = witness;
        self
    }

    pub fn vacuous(mut self, vacuous: bool) -> Self {
        self.vacuous = vacuous;
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// The isomorphism type of `a·A_m` as an `A_m`-module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalShape {
    Zero,
    /// Generated by one element with zero annihilator.
    FreeRankOne,
    /// Generated by one element with nonzero annihilator.
    PrincipalWithTorsion,
    NotPrincipal,
}

impl LocalShape {
    pub fn is_principal(self) -> bool {
        self != LocalShape::NotPrincipal
    }

    pub fn is_free(self) -> bool {
        matches!(self, LocalShape::Zero | LocalShape::FreeRankOne)
    }
}
