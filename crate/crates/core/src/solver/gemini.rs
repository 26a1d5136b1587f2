use serde::Serialize;

use super::eval::{Compiled, Counterexample};
use super::SolverError;
use crate::equation::Equation;
use crate::finalg::{steiner_loop_10, FiniteGroup, Table};

/// Steiner loops scanned by [`gemini_refute`], smallest first.
pub fn gemini_bank() -> Vec<(String, Table)> {
    let z2 = FiniteGroup::cyclic(2);
    let z2_2 = FiniteGroup::product(&z2, &z2);
    let z2_3 = FiniteGroup::product(&z2_2, &z2);
    vec![
        ("Z2".to_string(), z2.table().clone()),
        ("Z2xZ2".to_string(), z2_2.table().clone()),
        ("Z2xZ2xZ2".to_string(), z2_3.table().clone()),
        ("sloop10".to_string(), steiner_loop_10().table),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GeminiVerdict {
    /// The equation fails in a Steiner loop, so it is not a consequence of
    /// the Steiner loop identities.
    NonGemini {
        model: String,
        counterexample: Counterexample,
    },
    /// No model in the bank refutes the equation.
    #[serde(rename_all = "camelCase")]
    GeminiUnknown { models_checked: Vec<String> },
}

/// Semi-decision: substitutes the loop operation for every symbol of `e` in
/// each bank model and scans all assignments.
pub fn gemini_refute(e: &Equation) -> Result<GeminiVerdict, SolverError> {
    if !e.is_quadratic() {
        return Err(SolverError::NotQuadratic);
    }
    let compiled = Compiled::new(e);
    let bank = gemini_bank();
    for (name, table) in &bank {
        let tables = vec![table; compiled.ops().len()];
        if let Some(counterexample) = compiled.first_violation(table.order(), &tables) {
            return Ok(GeminiVerdict::NonGemini {
                model: name.clone(),
                counterexample,
            });
        }
    }
    Ok(GeminiVerdict::GeminiUnknown {
        models_checked: bank.into_iter().map(|(n, _)| n).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, EquationId, Named};

    #[test]
    fn bank_models_are_steiner_loops() {
        for (name, t) in gemini_bank() {
            let n = t.order();
            assert!(t.is_latin() && t.is_commutative(), "{name}");
            assert!(
                (0..n).all(|x| t.get(x, x) == 0 && (0..n).all(|y| t.get(x, t.get(x, y)) == y)),
                "{name}"
            );
        }
    }

    #[test]
    fn verdicts() {
        let comm = catalog(EquationId::Named(Named::Commutativity)).unwrap();
        assert!(matches!(
            gemini_refute(&comm),
            Ok(GeminiVerdict::GeminiUnknown { .. })
        ));
        let med = catalog(EquationId::Named(Named::Mediality)).unwrap();
        assert!(matches!(
            gemini_refute(&med),
            Ok(GeminiVerdict::NonGemini { model, .. }) if model == "sloop10"
        ));
        let idem = catalog(EquationId::Named(Named::Idempotency)).unwrap();
        assert_eq!(gemini_refute(&idem), Err(SolverError::NotQuadratic));
    }
}
