use serde::Serialize;

use super::eval::{Compiled, Interpretation};
use super::SolverError;
use crate::branches::{conditions, BranchWord, Condition, Parity, Slot, Symbol};
use crate::catalog::{catalog, EquationId};
use crate::finalg::{automorphisms, FiniteGroup, LinearParams, Perm, Table};

/// One operation of a synthesized solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpSolution {
    pub symbol: String,
    pub alpha: Perm,
    pub c: usize,
    pub beta: Perm,
    pub reversed: bool,
    pub table: Table,
}

impl OpSolution {
    pub fn params(&self) -> LinearParams {
        LinearParams {
            alpha: self.alpha.clone(),
            c: self.c,
            beta: self.beta.clone(),
            reversed: self.reversed,
        }
    }
}

/// Linear parameters for every operation of an equation, their tables, and
/// whether the tables satisfy the equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionPair {
    pub group: FiniteGroup,
    pub ops: Vec<OpSolution>,
    pub verified: bool,
}

impl SolutionPair {
    pub fn tables(&self) -> Vec<Table> {
        self.ops.iter().map(|o| o.table.clone()).collect()
    }

    pub fn interpretation(&self) -> Interpretation {
        Interpretation {
            order: self.group.order(),
            ops: self
                .ops
                .iter()
                .map(|o| (o.symbol.clone(), o.table.clone()))
                .collect(),
        }
    }

    pub fn has_nonidentity_automorphism(&self) -> bool {
        self.ops
            .iter()
            .any(|o| !o.alpha.is_identity() || !o.beta.is_identity())
    }
}

/// Search state: automorphisms for `α_i`, `β_i` then constants `c_i`.
struct Search<'a> {
    group: &'a FiniteGroup,
    auts: &'a [Perm],
    op_count: usize,
    reversed: Vec<bool>,
    /// Conditions grouped by the level after which they become checkable.
    checks: Vec<Vec<&'a Condition>>,
    perms: Vec<usize>,
    consts: Vec<usize>,
}

fn perm_level(s: Symbol) -> usize {
    2 * (usize::from(s.op) - 1) + usize::from(s.slot == Slot::Beta)
}

impl Search<'_> {
    fn levels(&self) -> usize {
        3 * self.op_count
    }

    fn const_level(&self, index: u8) -> usize {
        2 * self.op_count + usize::from(index) - 1
    }

    fn required_level(&self, c: &Condition) -> Option<usize> {
        let word_level = |w: &BranchWord| w.symbols().iter().map(|&s| perm_level(s)).max();
        match c {
            Condition::LinearEq { lhs, rhs }
            | Condition::Annihilate {
                first: lhs,
                second: rhs,
            } => word_level(lhs).max(word_level(rhs)),
            Condition::Sandwich {
                first,
                constant,
                second,
            } => Some(self.const_level(*constant))
                .max(word_level(first))
                .max(word_level(second)),
            Condition::ConstCompat => Some(self.levels() - 1),
            _ => None,
        }
    }

    fn perm(&self, s: Symbol) -> &Perm {
        &self.auts[self.perms[perm_level(s)]]
    }

    fn apply(&self, w: &BranchWord, x: usize) -> usize {
        w.apply(x, |s, v| self.perm(s).apply(v))
    }

    fn params(&self, op: usize) -> LinearParams {
        LinearParams {
            alpha: self.auts[self.perms[2 * op]].clone(),
            c: self.consts[op],
            beta: self.auts[self.perms[2 * op + 1]].clone(),
            reversed: self.reversed[op],
        }
    }

    fn check(&self, c: &Condition) -> bool {
        let g = self.group;
        let carrier = 0..g.order();
        match c {
            Condition::LinearEq { lhs, rhs } => carrier
                .clone()
                .all(|x| self.apply(lhs, x) == self.apply(rhs, x)),
            Condition::Annihilate { first, second } => carrier
                .clone()
                .all(|x| g.add(self.apply(first, x), self.apply(second, x)) == g.identity()),
            Condition::Sandwich {
                first,
                constant,
                second,
            } => {
                let k = self.consts[usize::from(*constant) - 1];
                carrier
                    .clone()
                    .all(|x| g.add(g.add(self.apply(first, x), k), self.apply(second, x)) == k)
            }
            Condition::ConstCompat => {
                let (p1, p2) = (self.params(0), self.params(1));
                p1.eval(g, p2.c, p2.c) == p2.eval(g, p1.c, p1.c)
            }
            _ => true,
        }
    }

    fn run(&mut self, level: usize, limit: Option<usize>, out: &mut Vec<Vec<LinearParams>>) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        if level == self.levels() {
            out.push((0..self.op_count).map(|i| self.params(i)).collect());
            return;
        }
        let choices = if level < 2 * self.op_count {
            self.auts.len()
        } else {
            self.group.order()
        };
        for choice in 0..choices {
            if level < 2 * self.op_count {
                self.perms[level] = choice;
            } else {
                self.consts[level - 2 * self.op_count] = choice;
            }
            if self.checks[level].iter().all(|c| self.check(c)) {
                self.run(level + 1, limit, out);
            }
        }
    }
}

/// Enumerates linear parameters over `g` satisfying every condition of `id`,
/// in the order `α1, β1, α2, β2, c1, c2` (automorphisms in lexicographic
/// order, constants ascending), and verifies each induced interpretation.
pub fn synthesize(
    id: EquationId,
    g: &FiniteGroup,
    limit: Option<usize>,
) -> Result<Vec<SolutionPair>, SolverError> {
    let conds = conditions(id)?;
    if conds.contains(&Condition::GroupAbelian) && !g.is_abelian() {
        return Err(SolverError::NotAbelian(g.name().to_string()));
    }
    let e = catalog(id)?;
    let symbols = e.ops_by_index();
    let op_count = symbols.len();
    let auts = automorphisms(g)?;
    let mut reversed = vec![false; op_count];
    for c in &conds {
        if let Condition::DualTwist { op, parity } = c {
            reversed[usize::from(*op) - 1] = *parity == Parity::Odd;
        }
    }
    let mut search = Search {
        group: g,
        auts: &auts,
        op_count,
        reversed,
        checks: vec![Vec::new(); 3 * op_count],
        perms: vec![0; 2 * op_count],
        consts: vec![0; op_count],
    };
    for c in &conds {
        if let Some(level) = search.required_level(c) {
            search.checks[level].push(c);
        }
    }
    let mut found = Vec::new();
    search.run(0, limit, &mut found);

    let compiled = Compiled::new(&e);
    Ok(found
        .into_iter()
        .map(|params| {
            let tables: Vec<Table> = params.iter().map(|p| p.table(g)).collect();
            let refs: Vec<&Table> = tables.iter().collect();
            let verified = compiled.holds(g.order(), &refs);
            let ops = symbols
                .iter()
                .zip(params)
                .zip(tables)
                .map(|((symbol, p), table)| OpSolution {
                    symbol: symbol.clone(),
                    alpha: p.alpha,
                    c: p.c,
                    beta: p.beta,
                    reversed: p.reversed,
                    table,
                })
                .collect();
            SolutionPair {
                group: g.clone(),
                ops,
                verified,
            }
        })
        .collect())
}
