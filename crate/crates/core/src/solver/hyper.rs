use serde::{Deserialize, Serialize};

use super::eval::{Compiled, Counterexample};
use super::SolverError;
use crate::catalog::{catalog, EquationId};
use crate::equation::Equation;
use crate::finalg::{
    find_shared_abelian_representation, FiniteGroup, LinearParams, Table, CERTIFICATE_BOUND,
};

/// A carrier with a nonempty list of binary operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Algebra {
    pub order: usize,
    pub operations: Vec<Table>,
}

impl Algebra {
    pub fn new(order: usize, operations: Vec<Table>) -> Result<Algebra, SolverError> {
        if operations.is_empty() {
            return Err(SolverError::EmptyAlgebra);
        }
        if let Some(t) = operations.iter().find(|t| t.order() != order) {
            return Err(SolverError::OrderMismatch {
                expected: order,
                found: t.order(),
            });
        }
        Ok(Algebra { order, operations })
    }

    fn validate(&self) -> Result<(), SolverError> {
        Algebra::new(self.order, self.operations.clone()).map(|_| ())
    }
}

/// Operation chosen for each function symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub symbol: String,
    pub operation: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum HyperVerdict {
    Holds {
        substitutions: usize,
    },
    Counterexample {
        substitution: Vec<Substitution>,
        counterexample: Counterexample,
    },
}

impl HyperVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, HyperVerdict::Holds { .. })
    }
}

pub fn check_hyperidentity(a: &Algebra, id: EquationId) -> Result<HyperVerdict, SolverError> {
    check_hyperidentity_equation(a, &catalog(id)?)
}

/// Tries all `|ops|^k` substitutions, first symbol most significant.
pub fn check_hyperidentity_equation(
    a: &Algebra,
    e: &Equation,
) -> Result<HyperVerdict, SolverError> {
    a.validate()?;
    let compiled = Compiled::new(e);
    let k = compiled.ops().len();
    let m = a.operations.len();
    let mut choice = vec![0usize; k];
    let mut count = 0;
    loop {
        let tables: Vec<&Table> = choice.iter().map(|&i| &a.operations[i]).collect();
        count += 1;
        if let Some(counterexample) = compiled.first_violation(a.order, &tables) {
            return Ok(HyperVerdict::Counterexample {
                substitution: compiled
                    .ops()
                    .iter()
                    .zip(&choice)
                    .map(|(s, &operation)| Substitution {
                        symbol: s.clone(),
                        operation,
                    })
                    .collect(),
                counterexample,
            });
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(HyperVerdict::Holds {
                    substitutions: count,
                });
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < m {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// `f_l(c_k, c_k)` against `f_k(c_l, c_l)` for one pair of operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstCompatCheck {
    pub l: usize,
    pub k: usize,
    pub left: usize,
    pub right: usize,
}

/// One abelian group shared by all operations, with their parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representation {
    pub group: FiniteGroup,
    pub operations: Vec<LinearParams>,
    pub compatibility: Vec<ConstCompatCheck>,
}

/// Finds a shared abelian group over which every operation is linear with
/// pairwise compatible constants. `None` means no shared group exists.
pub fn represent_hyperalgebra(
    a: &Algebra,
    id: EquationId,
) -> Result<Option<Representation>, SolverError> {
    a.validate()?;
    if a.order > CERTIFICATE_BOUND {
        return Err(SolverError::OrderTooLarge {
            order: a.order,
            bound: CERTIFICATE_BOUND,
        });
    }
    if !check_hyperidentity(a, id)?.holds() {
        return Err(SolverError::HyperidentityFails(id));
    }
    let Some(cert) = find_shared_abelian_representation(&a.operations)? else {
        return Ok(None);
    };
    let m = a.operations.len();
    let compatibility = (0..m)
        .flat_map(|l| (l + 1..m).map(move |k| (l, k)))
        .map(|(l, k)| {
            let (cl, ck) = (cert.params[l].c, cert.params[k].c);
            ConstCompatCheck {
                l,
                k,
                left: a.operations[l].get(ck, ck),
                right: a.operations[k].get(cl, cl),
            }
        })
        .collect();
    Ok(Some(Representation {
        group: cert.group,
        operations: cert.params,
        compatibility,
    }))
}
