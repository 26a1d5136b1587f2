use rayon::prelude::*;

use super::eval::{Compiled, Interpretation};
use super::SolverError;
use crate::catalog::{catalog, EquationId};
use crate::equation::Equation;
use crate::finalg::{latin_squares, Table};

/// Exhaustive search refuses orders above this.
pub const SEARCH_BOUND: usize = 4;

/// Every assignment of order-`n` Latin squares to the operation symbols of
/// `id` that satisfies the equation, in lexicographic order of the tables.
pub fn exhaustive_search(id: EquationId, n: usize) -> Result<Vec<Interpretation>, SolverError> {
    exhaustive_search_equation(&catalog(id)?, n)
}

pub fn exhaustive_search_equation(
    e: &Equation,
    n: usize,
) -> Result<Vec<Interpretation>, SolverError> {
    if n == 0 || n > SEARCH_BOUND {
        return Err(SolverError::OrderTooLarge {
            order: n,
            bound: SEARCH_BOUND,
        });
    }
    let compiled = Compiled::new(e);
    let squares: Vec<Table> = latin_squares(n)
        .into_iter()
        .map(|s| s.into_table())
        .collect();
    let symbols = compiled.ops().to_vec();
    let solutions: Vec<Vec<&Table>> = match symbols.len() {
        1 => squares
            .par_iter()
            .filter(|f| compiled.holds(n, &[f]))
            .map(|f| vec![f])
            .collect(),
        2 => squares
            .par_iter()
            .map(|f1| {
                squares
                    .iter()
                    .filter(|f2| compiled.holds(n, &[f1, f2]))
                    .map(|f2| vec![f1, f2])
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect(),
        k => return Err(SolverError::TooManyOperations(k)),
    };
    Ok(solutions
        .into_iter()
        .map(|tables| Interpretation {
            order: n,
            ops: symbols
                .iter()
                .cloned()
                .zip(tables.into_iter().cloned())
                .collect(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_one_has_single_trivial_pair() {
        let sols = exhaustive_search(EquationId::Family4(1), 1).unwrap();
        assert_eq!(sols.len(), 1);
    }

    #[test]
    fn bounds() {
        assert!(matches!(
            exhaustive_search(EquationId::Family4(1), 5),
            Err(SolverError::OrderTooLarge { .. })
        ));
        assert!(exhaustive_search(EquationId::Family4(1), 0).is_err());
    }

    #[test]
    fn commutative_squares_of_order_three() {
        let e = Equation::parse("f(x,y)=f(y,x)").unwrap();
        let sols = exhaustive_search_equation(&e, 3).unwrap();
        // commutative Latin squares of order 3: three idempotent-free relabelings ... counted directly
        let direct = latin_squares(3)
            .iter()
            .filter(|s| s.is_commutative())
            .count();
        assert_eq!(sols.len(), direct);
    }
}
