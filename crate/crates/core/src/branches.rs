//! Branch words and the symbolic solvability conditions of the catalog.
//!
//! A branch word records, for one occurrence of a variable, which argument
//! slots (`α_i` = left of `f_i`, `β_i` = right of `f_i`) the path from the
//! root passes through. Words are read outermost-first: `α1α2` applied to `x`
//! is `α1(α2(x))`.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::catalog::{catalog, CatalogError, EquationId, Named};
use crate::equation::{Equation, Term, VarKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BranchError {
    #[error("variable `{0}` does not occur in the equation")]
    VariableAbsent(String),
    #[error("no solvability conditions are known for `{0}`")]
    Unsupported(EquationId),
    #[error("`{0}` has no dual reduction")]
    NoDualReduction(EquationId),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Alpha,
    Beta,
}

/// `α_i` or `β_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub slot: Slot,
    pub op: u8,
}

impl Symbol {
    pub fn alpha(op: u8) -> Symbol {
        Symbol {
            slot: Slot::Alpha,
            op,
        }
    }

    pub fn beta(op: u8) -> Symbol {
        Symbol {
            slot: Slot::Beta,
            op,
        }
    }

    /// Machine name used in JSON output, e.g. `alpha1`.
    pub fn ascii(self) -> String {
        match self.slot {
            Slot::Alpha => format!("alpha{}", self.op),
            Slot::Beta => format!("beta{}", self.op),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.slot {
            Slot::Alpha => write!(f, "α{}", self.op),
            Slot::Beta => write!(f, "β{}", self.op),
        }
    }
}

/// A composition word; the empty word is `Λ`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchWord(pub Vec<Symbol>);

impl BranchWord {
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> BranchWord {
        BranchWord(symbols.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    fn prepend(mut self, s: Symbol) -> BranchWord {
        self.0.insert(0, s);
        self
    }

    /// Substitutes symbols, e.g. to identify two operations.
    pub fn map(&self, f: impl Fn(Symbol) -> Symbol) -> BranchWord {
        BranchWord(self.0.iter().copied().map(f).collect())
    }

    /// Applies the word to `x`, innermost (rightmost) symbol first.
    pub fn apply<F: Fn(Symbol, usize) -> usize>(&self, x: usize, eval: F) -> usize {
        self.0.iter().rev().fold(x, |acc, &s| eval(s, acc))
    }
}

impl fmt::Display for BranchWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Λ");
        }
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Serialize for BranchWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for s in &self.0 {
            seq.serialize_element(&s.ascii())?;
        }
        seq.end()
    }
}

fn branch_term(x: &str, t: &Term, e: &Equation, left: bool) -> Option<BranchWord> {
    match t {
        Term::Var(v) => (v == x).then(BranchWord::default),
        Term::App {
            op,
            left: l,
            right: r,
        } => {
            let i = e.op_indices()[op];
            let (in_l, in_r) = (l.contains(x), r.contains(x));
            let go_left = match (in_l, in_r) {
                (false, false) => return None,
                (true, false) => true,
                (false, true) => false,
                (true, true) => left,
            };
            if go_left {
                branch_term(x, l, e, left).map(|w| w.prepend(Symbol::alpha(i)))
            } else {
                branch_term(x, r, e, left).map(|w| w.prepend(Symbol::beta(i)))
            }
        }
    }
}

/// Left branch of `x`: taken in the lhs when `x` occurs there, else in the rhs.
pub fn lbranch(x: &str, e: &Equation) -> Result<BranchWord, BranchError> {
    let side = if e.lhs.contains(x) { &e.lhs } else { &e.rhs };
    branch_term(x, side, e, true).ok_or_else(|| BranchError::VariableAbsent(x.to_string()))
}

/// Right branch of `x`: taken in the rhs when `x` occurs there, else in the lhs.
pub fn rbranch(x: &str, e: &Equation) -> Result<BranchWord, BranchError> {
    let side = if e.rhs.contains(x) { &e.rhs } else { &e.lhs };
    branch_term(x, side, e, false).ok_or_else(|| BranchError::VariableAbsent(x.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// One symbolic requirement on `f_i(x,y) = α_i x + c_i + β_i y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `lhs = rhs` as automorphisms.
    LinearEq {
        lhs: BranchWord,
        rhs: BranchWord,
    },
    /// `first(x) + second(x) = 0` for all `x`.
    Annihilate {
        first: BranchWord,
        second: BranchWord,
    },
    /// `first(x) + c_constant + second(x) = c_constant` for all `x`.
    Sandwich {
        first: BranchWord,
        constant: u8,
        second: BranchWord,
    },
    /// `f1(c2,c2) = f2(c1,c1)`.
    ConstCompat,
    GroupAbelian,
    GroupArbitrary,
    /// `f_op` is written as `∂^parity(α x + c + β y)`; odd reverses the sum.
    DualTwist {
        op: u8,
        parity: Parity,
    },
}

impl Condition {
    pub fn kind(&self) -> &'static str {
        match self {
            Condition::LinearEq { .. } => "LinearEq",
            Condition::Annihilate { .. } => "Annihilate",
            Condition::Sandwich { .. } => "Sandwich",
            Condition::ConstCompat => "ConstCompat",
            Condition::GroupAbelian => "GroupAbelian",
            Condition::GroupArbitrary => "GroupArbitrary",
            Condition::DualTwist { .. } => "DualTwist",
        }
    }

    pub fn words(&self) -> Vec<&BranchWord> {
        match self {
            Condition::LinearEq { lhs, rhs } => vec![lhs, rhs],
            Condition::Annihilate { first, second } | Condition::Sandwich { first, second, .. } => {
                vec![first, second]
            }
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::LinearEq { lhs, rhs } => write!(f, "{lhs} = {rhs}"),
            Condition::Annihilate { first, second } => write!(f, "{first}(w) + {second}(w) = 0"),
            Condition::Sandwich {
                first,
                constant,
                second,
            } => write!(f, "{first}(w) + c{constant} + {second}(w) = c{constant}"),
            Condition::ConstCompat => f.write_str("f1(c2,c2) = f2(c1,c1)"),
            Condition::GroupAbelian => f.write_str("(B,+) abelian"),
            Condition::GroupArbitrary => f.write_str("(B,+) arbitrary group"),
            Condition::DualTwist {
                op,
                parity: Parity::Odd,
            } => {
                write!(f, "f{op}(x,y) = β{op} y + c{op} + α{op} x")
            }
            Condition::DualTwist {
                op,
                parity: Parity::Even,
            } => {
                write!(f, "f{op}(x,y) = α{op} x + c{op} + β{op} y")
            }
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ConditionJson<'a> {
    kind: &'static str,
    words: Vec<&'a BranchWord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constant_index: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    op: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    parity: Option<Parity>,
}

impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (constant_index, op, parity) = match self {
            Condition::Sandwich { constant, .. } => (Some(*constant), None, None),
            Condition::DualTwist { op, parity } => (None, Some(*op), Some(*parity)),
            _ => (None, None, None),
        };
        ConditionJson {
            kind: self.kind(),
            words: self.words(),
            constant_index,
            op,
            parity,
        }
        .serialize(serializer)
    }
}

/// How quadratic variables and the carrier group are constrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    /// Balanced equations: abelian group, linear variables only.
    Balanced,
    /// Abelian group, `Annihilate` for each quadratic variable.
    Abelian,
    /// Arbitrary group, `Sandwich` for the left and right quadratic variables.
    Twisted(Parity),
}

fn rule_for(id: EquationId) -> Result<Rule, BranchError> {
    Ok(match id {
        EquationId::Family4(_) => Rule::Balanced,
        EquationId::Family5(10) => Rule::Twisted(Parity::Even),
        EquationId::Family5(23) => Rule::Twisted(Parity::Odd),
        EquationId::Family5(_) => Rule::Abelian,
        EquationId::Named(Named::Mediality | Named::Paramediality) => Rule::Balanced,
        EquationId::Named(Named::Intermediality) => Rule::Twisted(Parity::Even),
        // single-operation form: a twisted f2 cannot coincide with f1, the group is abelian
        EquationId::Named(Named::Extramediality) => Rule::Abelian,
        EquationId::Named(_) => return Err(BranchError::Unsupported(id)),
    })
}

/// Symbolic conditions on the linear representation of the solutions, in
/// canonical order: group requirement, constant compatibility, linear
/// variables, quadratic variables, operation twist.
pub fn conditions(id: EquationId) -> Result<Vec<Condition>, BranchError> {
    let rule = rule_for(id)?;
    let e = catalog(id)?;
    let two_ops = e.op_symbols().len() > 1;
    let profiles = e.var_profiles().map_err(|_| BranchError::Unsupported(id))?;

    let mut out = vec![match rule {
        Rule::Twisted(_) => Condition::GroupArbitrary,
        _ => Condition::GroupAbelian,
    }];
    if two_ops {
        out.push(Condition::ConstCompat);
    }
    for p in profiles.iter().filter(|p| p.kind == VarKind::Linear) {
        out.push(Condition::LinearEq {
            lhs: lbranch(&p.variable, &e)?,
            rhs: rbranch(&p.variable, &e)?,
        });
    }
    for p in profiles.iter().filter(|p| p.kind.is_quadratic()) {
        let (lb, rb) = (lbranch(&p.variable, &e)?, rbranch(&p.variable, &e)?);
        out.push(match rule {
            Rule::Balanced | Rule::Abelian => Condition::Annihilate {
                first: lb,
                second: rb,
            },
            Rule::Twisted(parity) => {
                let right = p.kind == VarKind::RightQuadratic;
                let constant = if right && two_ops { 2 } else { 1 };
                let (first, second) = if right && parity == Parity::Odd {
                    (rb, lb)
                } else {
                    (lb, rb)
                };
                Condition::Sandwich {
                    first,
                    constant,
                    second,
                }
            }
        });
    }
    if let (Rule::Twisted(parity), true) = (rule, two_ops) {
        out.push(Condition::DualTwist { op: 2, parity });
    }
    Ok(out)
}

/// A family-5 equation and the catalog entry it becomes after dualizing
/// some operations and renaming variables canonically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualReduction {
    pub source: EquationId,
    pub target: EquationId,
    pub dualized: BTreeSet<String>,
}

const DUAL_PAIRS: [(u8, u8); 16] = [
    (3, 25),
    (4, 29),
    (7, 26),
    (8, 30),
    (11, 17),
    (12, 21),
    (15, 18),
    (16, 22),
    (19, 9),
    (20, 13),
    (23, 10),
    (24, 14),
    (27, 1),
    (28, 5),
    (31, 2),
    (32, 6),
];

/// Dualizes `ops` in `e` and renames variables by first appearance.
pub fn apply_duality(e: &Equation, ops: &BTreeSet<String>) -> Equation {
    e.dualize(ops).canonical_var_renaming()
}

pub fn dual_reduce(id: EquationId) -> Result<DualReduction, BranchError> {
    let EquationId::Family5(j) = id else {
        return Err(BranchError::NoDualReduction(id));
    };
    let &(_, t) = DUAL_PAIRS
        .iter()
        .find(|(s, _)| *s == j)
        .ok_or(BranchError::NoDualReduction(id))?;
    let target = EquationId::Family5(t);
    let (source_eq, target_eq) = (catalog(id)?, catalog(target)?);
    let candidates: [&[&str]; 3] = [&["f2"], &["f1"], &["f1", "f2"]];
    candidates
        .into_iter()
        .map(|ops| ops.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>())
        .find(|ops| apply_duality(&source_eq, ops) == target_eq)
        .map(|dualized| DualReduction {
            source: id,
            target,
            dualized,
        })
        .ok_or(BranchError::NoDualReduction(id))
}

/// Source ids accepted by [`dual_reduce`].
pub fn dual_sources() -> impl Iterator<Item = EquationId> {
    DUAL_PAIRS.iter().map(|&(s, _)| EquationId::Family5(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &[Symbol]) -> BranchWord {
        BranchWord::new(s.iter().copied())
    }

    use Symbol as S;

    #[test]
    fn branches_of_medial_pair() {
        let e = catalog(EquationId::Family4(1)).unwrap();
        assert_eq!(lbranch("x", &e).unwrap(), word(&[S::alpha(1), S::alpha(2)]));
        assert_eq!(rbranch("x", &e).unwrap(), word(&[S::alpha(2), S::alpha(1)]));
        assert_eq!(lbranch("x", &e).unwrap().to_string(), "α1α2");
    }

    #[test]
    fn branches_of_quadratic_variable() {
        let e = catalog(EquationId::Family5(10)).unwrap();
        assert_eq!(lbranch("y", &e).unwrap(), word(&[S::alpha(1), S::beta(2)]));
        assert_eq!(rbranch("y", &e).unwrap(), word(&[S::beta(1), S::alpha(2)]));
    }

    #[test]
    fn one_step_branch() {
        let e = Equation::parse("f1(x,y)=f1(y,x)").unwrap();
        assert_eq!(lbranch("x", &e).unwrap(), word(&[S::alpha(1)]));
        assert_eq!(rbranch("x", &e).unwrap(), word(&[S::beta(1)]));
        assert_eq!(
            lbranch("q", &e),
            Err(BranchError::VariableAbsent("q".into()))
        );
        let e = Equation::parse("f1(x,y)=x").unwrap();
        assert_eq!(rbranch("x", &e).unwrap(), BranchWord::default());
        assert_eq!(rbranch("x", &e).unwrap().to_string(), "Λ");
    }

    #[test]
    fn word_application_is_outermost_first() {
        // α1 = +1, α2 = *2 (mod 7): α1α2(3) = α1(α2(3)) = 7 mod 7 = 0
        let w = word(&[S::alpha(1), S::alpha(2)]);
        let eval = |s: Symbol, x: usize| if s.op == 1 { (x + 1) % 7 } else { (2 * x) % 7 };
        assert_eq!(w.apply(3, eval), 0);
    }

    #[test]
    fn linear_branches_have_length_two() {
        for id in EquationId::family_ids() {
            let e = catalog(id).unwrap();
            for p in e.var_profiles().unwrap() {
                if p.kind == VarKind::Linear {
                    assert_eq!(lbranch(&p.variable, &e).unwrap().len(), 2);
                    assert_eq!(rbranch(&p.variable, &e).unwrap().len(), 2);
                }
            }
        }
    }

    #[test]
    fn family4_branches_cover_all_products_once() {
        let mut expected = Vec::new();
        for a in [S::alpha(1), S::beta(1)] {
            for b in [S::alpha(2), S::beta(2)] {
                expected.push(word(&[a, b]));
                expected.push(word(&[b, a]));
            }
        }
        expected.sort();
        for j in 1..=16 {
            let e = catalog(EquationId::Family4(j)).unwrap();
            let mut got: Vec<BranchWord> = e
                .variables()
                .iter()
                .flat_map(|v| [lbranch(v, &e).unwrap(), rbranch(v, &e).unwrap()])
                .collect();
            got.sort();
            assert_eq!(got, expected, "4.{j}");
        }
    }

    #[test]
    fn conditions_of_twisted_equations() {
        let c = conditions(EquationId::Family5(10)).unwrap();
        assert_eq!(c[0], Condition::GroupArbitrary);
        assert_eq!(c[1], Condition::ConstCompat);
        assert_eq!(c.len(), 7);
        assert_eq!(
            c[4],
            Condition::Sandwich {
                first: word(&[S::alpha(1), S::beta(2)]),
                constant: 1,
                second: word(&[S::beta(1), S::alpha(2)]),
            }
        );
        assert_eq!(
            c[5],
            Condition::Sandwich {
                first: word(&[S::alpha(2), S::beta(1)]),
                constant: 2,
                second: word(&[S::beta(2), S::alpha(1)]),
            }
        );
        assert_eq!(
            c[6],
            Condition::DualTwist {
                op: 2,
                parity: Parity::Even
            }
        );

        let c = conditions(EquationId::Family5(23)).unwrap();
        assert_eq!(
            c.last(),
            Some(&Condition::DualTwist {
                op: 2,
                parity: Parity::Odd
            })
        );
        // right quadratic variable v: Rbranch first
        assert_eq!(
            c[5],
            Condition::Sandwich {
                first: word(&[S::beta(2), S::beta(1)]),
                constant: 2,
                second: word(&[S::alpha(2), S::alpha(1)]),
            }
        );
    }

    #[test]
    fn conditions_of_abelian_family5() {
        let c = conditions(EquationId::Family5(3)).unwrap();
        assert_eq!(c[0], Condition::GroupAbelian);
        assert_eq!(
            c[4],
            Condition::Annihilate {
                first: word(&[S::alpha(1), S::alpha(2)]),
                second: word(&[S::beta(1), S::alpha(2)]),
            }
        );
        assert_eq!(c.len(), 6);
    }

    #[test]
    fn unsupported_named_equations() {
        for n in [
            Named::Associativity,
            Named::Transitivity,
            Named::Distributivity,
            Named::Idempotency,
        ] {
            assert!(matches!(
                conditions(EquationId::Named(n)),
                Err(BranchError::Unsupported(_))
            ));
        }
        assert!(conditions(EquationId::Named(Named::Mediality)).is_ok());
    }

    #[test]
    fn condition_json_shape() {
        let c = conditions(EquationId::Family5(10)).unwrap();
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json[0]["kind"], "GroupArbitrary");
        assert_eq!(json[4]["kind"], "Sandwich");
        assert_eq!(json[4]["constantIndex"], 1);
        assert_eq!(json[4]["words"][0][0], "alpha1");
        assert_eq!(json[6]["parity"], "even");
    }

    #[test]
    fn dual_reduction_examples() {
        let r = dual_reduce(EquationId::Family5(3)).unwrap();
        assert_eq!(r.target, EquationId::Family5(25));
        assert_eq!(r.dualized, BTreeSet::from(["f2".to_string()]));
        assert_eq!(
            dual_reduce(EquationId::Family5(23)).unwrap().target,
            EquationId::Family5(10)
        );
        assert_eq!(
            dual_reduce(EquationId::Family5(27)).unwrap().target,
            EquationId::Family5(1)
        );
        assert!(dual_reduce(EquationId::Family5(1)).is_err());
        assert!(dual_reduce(EquationId::Family4(3)).is_err());
    }

    #[test]
    fn every_dual_source_reduces_into_the_base_set() {
        let base: BTreeSet<u8> = [
            1, 2, 5, 6, 9, 10, 13, 14, 17, 18, 21, 22, 23, 25, 26, 29, 30,
        ]
        .into();
        for id in dual_sources() {
            let r = dual_reduce(id).unwrap();
            let EquationId::Family5(t) = r.target else {
                unreachable!()
            };
            assert!(base.contains(&t), "{id} -> {t}");
        }
    }
}
