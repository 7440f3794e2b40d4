use crate::error::{Error, Result};
use crate::statevector::gate::{self, GateMatrix};
use crate::statevector::UNITARY_TOL;

#[derive(Clone, Debug)]
pub struct NamedGate {
    pub name: String,
    pub gate: GateMatrix,
}

/// Finite gate set of one- and two-qubit unitaries.
#[derive(Clone, Debug)]
pub struct GateSet {
    name: String,
    elements: Vec<NamedGate>,
    closed_under_inverse: bool,
}

fn inverse_present(elements: &[NamedGate], g: &GateMatrix) -> bool {
    let inv = g.adjoint();
    elements
        .iter()
        .any(|e| e.gate.dim() == inv.dim() && e.gate.distance_up_to_phase(&inv) <= UNITARY_TOL)
}

impl GateSet {
    /// Validates unitarity and computes the inverse-closure flag.
    pub fn new(name: impl Into<String>, elements: Vec<NamedGate>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Input("gate set is empty".into()));
        }
        for e in &elements {
            let err = e.gate.unitarity_error();
            if err > UNITARY_TOL {
                return Err(Error::Validation(format!("gate {} is not unitary ({err:.3e})", e.name)));
            }
        }
        let closed_under_inverse = elements.iter().all(|e| inverse_present(&elements, &e.gate));
        Ok(Self {
            name: name.into(),
            elements,
            closed_under_inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elements(&self) -> &[NamedGate] {
        &self.elements
    }

    pub fn get(&self, name: &str) -> Option<&GateMatrix> {
        self.elements.iter().find(|e| e.name == name).map(|e| &e.gate)
    }

    pub fn closed_under_inverse(&self) -> bool {
        self.closed_under_inverse
    }

    /// Adds `g^dagger` for every element whose inverse (up to phase) is missing.
    pub fn with_inverses(&self) -> Self {
        let mut elements = self.elements.clone();
        for e in &self.elements {
            if !inverse_present(&elements, &e.gate) {
                elements.push(NamedGate {
                    name: format!("{}^-1", e.name),
                    gate: e.gate.adjoint(),
                });
            }
        }
        Self {
            name: format!("{}-inv", self.name),
            elements,
            closed_under_inverse: true,
        }
    }

    /// Two-qubit lift used by brickwork layers: every ordered pair `g ⊗ g'` of
    /// single-qubit elements, followed by the two-qubit elements as they are.
    pub fn lifted_two_qubit(&self) -> Vec<NamedGate> {
        let singles: Vec<&NamedGate> = self.elements.iter().filter(|e| e.gate.arity() == 1).collect();
        let mut out = Vec::new();
        for a in &singles {
            for b in &singles {
                out.push(NamedGate {
                    name: format!("{}⊗{}", a.name, b.name),
                    gate: a.gate.kron(&b.gate),
                });
            }
        }
        out.extend(self.elements.iter().filter(|e| e.gate.arity() == 2).cloned());
        out
    }
}

/// `{CZ, H, √X, √Y, T}`
pub fn gate_set_bis() -> GateSet {
    let named = |name: &str, gate| NamedGate {
        name: name.to_string(),
        gate,
    };
    GateSet::new(
        "bis",
        vec![
            named("CZ", gate::cz()),
            named("H", gate::hadamard()),
            named("sqrtX", gate::sqrt_x()),
            named("sqrtY", gate::sqrt_y()),
            named("T", gate::t_gate()),
        ],
    )
    .expect("standard gates are unitary")
}

/// Gate set by CLI name: `bis` or `bis-inv`.
pub fn gate_set_by_name(name: &str) -> Result<GateSet> {
    match name {
        "bis" => Ok(gate_set_bis()),
        "bis-inv" => Ok(gate_set_bis().with_inverses()),
        other => Err(Error::Input(format!(
            "unknown gate set {other:?} (expected bis or bis-inv)"
        ))),
    }
}
