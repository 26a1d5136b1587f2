use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SolverError;
use crate::equation::{Equation, Term};
use crate::finalg::Table;

#[derive(Debug, Clone, Copy)]
enum Instr {
    Var(usize),
    Op(usize),
}

/// An equation compiled to postfix code over numbered variables and
/// operation slots.
#[derive(Debug, Clone)]
pub struct Compiled {
    vars: Vec<String>,
    ops: Vec<String>,
    lhs: Vec<Instr>,
    rhs: Vec<Instr>,
}

impl Compiled {
    /// Operation slots follow `ops`; every symbol of `e` must be listed.
    pub fn with_ops(e: &Equation, ops: Vec<String>) -> Result<Compiled, SolverError> {
        let vars = e.variables();
        let mut c = Compiled {
            vars,
            ops,
            lhs: Vec::new(),
            rhs: Vec::new(),
        };
        c.lhs = c.emit(&e.lhs)?;
        c.rhs = c.emit(&e.rhs)?;
        Ok(c)
    }

    /// Operation slots in index order (`f1`, `f2`, ...).
    pub fn new(e: &Equation) -> Compiled {
        Compiled::with_ops(e, e.ops_by_index()).expect("all symbols listed")
    }

    fn emit(&self, t: &Term) -> Result<Vec<Instr>, SolverError> {
        let mut code = Vec::new();
        self.emit_into(t, &mut code)?;
        Ok(code)
    }

    fn emit_into(&self, t: &Term, code: &mut Vec<Instr>) -> Result<(), SolverError> {
        match t {
            Term::Var(v) => {
                let i = self
                    .vars
                    .iter()
                    .position(|x| x == v)
                    .expect("variable listed");
                code.push(Instr::Var(i));
            }
            Term::App { op, left, right } => {
                self.emit_into(left, code)?;
                self.emit_into(right, code)?;
                let i = self
                    .ops
                    .iter()
                    .position(|o| o == op)
                    .ok_or_else(|| SolverError::Unassigned(op.clone()))?;
                code.push(Instr::Op(i));
            }
        }
        Ok(())
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn ops(&self) -> &[String] {
        &self.ops
    }

    #[inline]
    fn run(code: &[Instr], tables: &[&Table], vals: &[usize], stack: &mut Vec<usize>) -> usize {
        stack.clear();
        for ins in code {
            match *ins {
                Instr::Var(i) => stack.push(vals[i]),
                Instr::Op(k) => {
                    let r = stack.pop().expect("right operand");
                    let l = stack.pop().expect("left operand");
                    stack.push(tables[k].get(l, r));
                }
            }
        }
        stack[0]
    }

    /// Both sides under one assignment.
    pub fn eval(&self, tables: &[&Table], vals: &[usize]) -> (usize, usize) {
        let mut stack = Vec::with_capacity(self.lhs.len().max(self.rhs.len()));
        let l = Compiled::run(&self.lhs, tables, vals, &mut stack);
        let r = Compiled::run(&self.rhs, tables, vals, &mut stack);
        (l, r)
    }

    /// Scans all `n^|vars|` assignments, first variable most significant,
    /// and returns the first violation.
    pub fn first_violation(&self, n: usize, tables: &[&Table]) -> Option<Counterexample> {
        debug_assert_eq!(tables.len(), self.ops.len());
        let k = self.vars.len();
        let mut vals = vec![0usize; k];
        let mut stack = Vec::with_capacity(self.lhs.len().max(self.rhs.len()));
        loop {
            let l = Compiled::run(&self.lhs, tables, &vals, &mut stack);
            let r = Compiled::run(&self.rhs, tables, &vals, &mut stack);
            if l != r {
                return Some(Counterexample {
                    assignment: self
                        .vars
                        .iter()
                        .zip(&vals)
                        .map(|(v, &x)| VarValue {
                            variable: v.clone(),
                            value: x,
                        })
                        .collect(),
                    lhs: l,
                    rhs: r,
                });
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                vals[i] += 1;
                if vals[i] < n {
                    break;
                }
                vals[i] = 0;
            }
        }
    }

    pub fn holds(&self, n: usize, tables: &[&Table]) -> bool {
        self.first_violation(n, tables).is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarValue {
    pub variable: String,
    pub value: usize,
}

/// A violating assignment with the two side values it produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: Vec<VarValue>,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Counterexample(Counterexample),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            holds: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            counterexample: Option<&'a Counterexample>,
        }
        let counterexample = match self {
            Verdict::Holds => None,
            Verdict::Counterexample(c) => Some(c),
        };
        Json {
            holds: counterexample.is_none(),
            counterexample,
        }
        .serialize(serializer)
    }
}

/// Operation symbols assigned to tables on a common carrier. Tables need not
/// be Latin, so damaged inputs are refuted rather than rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interpretation {
    pub order: usize,
    pub ops: BTreeMap<String, Table>,
}

impl Interpretation {
    pub fn new(
        order: usize,
        ops: impl IntoIterator<Item = (String, Table)>,
    ) -> Result<Interpretation, SolverError> {
        let ops: BTreeMap<String, Table> = ops.into_iter().collect();
        if let Some(t) = ops.values().find(|t| t.order() != order) {
            return Err(SolverError::OrderMismatch {
                expected: order,
                found: t.order(),
            });
        }
        Ok(Interpretation { order, ops })
    }

    /// Tables in the slot order of `c`.
    pub fn tables_for<'a>(&'a self, c: &Compiled) -> Result<Vec<&'a Table>, SolverError> {
        c.ops()
            .iter()
            .map(|op| {
                self.ops
                    .get(op)
                    .ok_or_else(|| SolverError::Unassigned(op.clone()))
            })
            .collect()
    }
}

pub fn verify_equation(i: &Interpretation, e: &Equation) -> Result<Verdict, SolverError> {
    let compiled = Compiled::new(e);
    let tables = i.tables_for(&compiled)?;
    if let Some(t) = tables.iter().find(|t| t.order() != i.order) {
        return Err(SolverError::OrderMismatch {
            expected: i.order,
            found: t.order(),
        });
    }
    Ok(match compiled.first_violation(i.order, &tables) {
        None => Verdict::Holds,
        Some(c) => Verdict::Counterexample(c),
    })
}
