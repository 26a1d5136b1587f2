//! Terms, equations and the purely syntactic classifiers.
//!
//! All operation symbols are binary. Variables and operation symbols live in
//! disjoint namespaces; the parser rejects an identifier used in both roles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::parse::{self, ParseError};

/// A term over binary operation symbols and object variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    App {
        op: String,
        left: Box<Term>,
        right: Box<Term>,
    },
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn app(op: impl Into<String>, left: Term, right: Term) -> Term {
        Term::App {
            op: op.into(),
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// Number of occurrences of the variable `x`.
    pub fn occurrences(&self, x: &str) -> usize {
        match self {
            Term::Var(v) => usize::from(v == x),
            Term::App { left, right, .. } => left.occurrences(x) + right.occurrences(x),
        }
    }

    pub fn contains(&self, x: &str) -> bool {
        match self {
            Term::Var(v) => v == x,
            Term::App { left, right, .. } => left.contains(x) || right.contains(x),
        }
    }

    /// Variables in order of first (leftmost) appearance, without repetition.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.iter().any(|o| o == v) {
                    out.push(v.clone());
                }
            }
            Term::App { left, right, .. } => {
                left.collect_vars(out);
                right.collect_vars(out);
            }
        }
    }

    /// The content `var(t)` as a set.
    pub fn content(&self) -> BTreeSet<String> {
        self.variables().into_iter().collect()
    }

    /// Operation occurrences in depth-first, left-to-right (pre-)order.
    pub fn op_occurrences(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_ops(&mut out);
        out
    }

    fn collect_ops<'a>(&'a self, out: &mut Vec<&'a str>) {
        if let Term::App { op, left, right } = self {
            out.push(op);
            left.collect_ops(out);
            right.collect_ops(out);
        }
    }

    /// All subterms in pre-order, including `self` and the variable leaves.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            if let Term::App { left, right, .. } = t {
                stack.push(right);
                stack.push(left);
            }
        }
        out
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Rewrites every operation symbol with `f`, visiting occurrences in pre-order.
    pub fn map_ops(&self, f: &mut impl FnMut(&str) -> String) -> Term {
        match self {
            Term::Var(v) => Term::Var(v.clone()),
            Term::App { op, left, right } => {
                let op = f(op);
                let left = left.map_ops(f);
                let right = right.map_ops(f);
                Term::app(op, left, right)
            }
        }
    }

    pub fn map_vars(&self, f: &impl Fn(&str) -> String) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(v)),
            Term::App { op, left, right } => {
                Term::app(op.clone(), left.map_vars(f), right.map_vars(f))
            }
        }
    }

    /// Swaps the arguments of every application of one of `ops`.
    pub fn dualize(&self, ops: &BTreeSet<String>) -> Term {
        match self {
            Term::Var(v) => Term::Var(v.clone()),
            Term::App { op, left, right } => {
                let (l, r) = (left.dualize(ops), right.dualize(ops));
                if ops.contains(op) {
                    Term::app(op.clone(), r, l)
                } else {
                    Term::app(op.clone(), l, r)
                }
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App { op, left, right } => write!(f, "{op}({left},{right})"),
        }
    }
}

/// The content of a term split by multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VarSets {
    pub all: BTreeSet<String>,
    /// Variables occurring exactly once.
    pub linear: BTreeSet<String>,
    /// Variables occurring exactly twice.
    pub quadratic: BTreeSet<String>,
}

pub fn var_sets(t: &Term) -> VarSets {
    let mut sets = VarSets::default();
    for v in t.variables() {
        match t.occurrences(&v) {
            1 => {
                sets.linear.insert(v.clone());
            }
            2 => {
                sets.quadratic.insert(v.clone());
            }
            _ => {}
        }
        sets.all.insert(v);
    }
    sets
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("equation is not quadratic")]
    NotQuadratic,
    #[error("equation is not balanced")]
    NotBalanced,
    #[error("variable `{0}` does not occur in the equation")]
    VariableAbsent(String),
}

/// A functional equation `lhs = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    /// Builds an equation, rejecting inputs without any operation symbol and
    /// identifiers used both as a variable and as an operation.
    pub fn new(lhs: Term, rhs: Term) -> Result<Equation, ParseError> {
        if lhs.is_var() && rhs.is_var() {
            return Err(ParseError::NotFunctional);
        }
        let e = Equation { lhs, rhs };
        let ops: BTreeSet<&str> = e.op_occurrences().into_iter().collect();
        if let Some(clash) = e.variables().into_iter().find(|v| ops.contains(v.as_str())) {
            return Err(ParseError::NamespaceClash(clash));
        }
        Ok(e)
    }

    pub fn parse(text: &str) -> Result<Equation, ParseError> {
        parse::parse_equation(text)
    }

    /// Variables in order of first appearance, lhs then rhs.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.lhs.collect_vars(&mut out);
        self.rhs.collect_vars(&mut out);
        out
    }

    pub fn occurrences(&self, x: &str) -> usize {
        self.lhs.occurrences(x) + self.rhs.occurrences(x)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.lhs.contains(x) || self.rhs.contains(x)
    }

    /// Operation occurrences, lhs then rhs, each side in pre-order.
    pub fn op_occurrences(&self) -> Vec<&str> {
        let mut out = self.lhs.op_occurrences();
        out.extend(self.rhs.op_occurrences());
        out
    }

    /// Distinct operation symbols in order of first appearance.
    pub fn op_symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for op in self.op_occurrences() {
            if !out.iter().any(|o| o == op) {
                out.push(op.to_string());
            }
        }
        out
    }

    /// Index assigned to each operation symbol (`f_i` carries `α_i`, `β_i`).
    ///
    /// When every symbol ends in a distinct positive number that number is the
    /// index (`f1`, `f2`, `g6`); otherwise symbols are numbered 1, 2, ... by
    /// first appearance.
    pub fn op_indices(&self) -> BTreeMap<String, u8> {
        let symbols = self.op_symbols();
        let suffixes: Vec<Option<u8>> = symbols.iter().map(|s| numeric_suffix(s)).collect();
        let distinct: BTreeSet<u8> = suffixes.iter().flatten().copied().collect();
        if suffixes.iter().all(Option::is_some) && distinct.len() == symbols.len() {
            symbols
                .into_iter()
                .zip(suffixes.into_iter().flatten())
                .collect()
        } else {
            symbols
                .into_iter()
                .enumerate()
                .map(|(i, s)| (s, (i + 1) as u8))
                .collect()
        }
    }

    /// Operation symbols sorted by their index.
    pub fn ops_by_index(&self) -> Vec<String> {
        let mut ops: Vec<(String, u8)> = self.op_indices().into_iter().collect();
        ops.sort_by_key(|(_, i)| *i);
        ops.into_iter().map(|(s, _)| s).collect()
    }

    pub fn map_ops(&self, mut f: impl FnMut(&str) -> String) -> Equation {
        let lhs = self.lhs.map_ops(&mut f);
        let rhs = self.rhs.map_ops(&mut f);
        Equation { lhs, rhs }
    }

    /// Renames variables to `x, y, u, v, w, ...` by order of first appearance.
    pub fn canonical_var_renaming(&self) -> Equation {
        let names = self.variables();
        let rename = |v: &str| {
            let pos = names.iter().position(|n| n == v).unwrap_or(0);
            canonical_var_name(pos)
        };
        Equation {
            lhs: self.lhs.map_vars(&rename),
            rhs: self.rhs.map_vars(&rename),
        }
    }

    pub fn dualize(&self, ops: &BTreeSet<String>) -> Equation {
        Equation {
            lhs: self.lhs.dualize(ops),
            rhs: self.rhs.dualize(ops),
        }
    }

    pub fn is_quadratic(&self) -> bool {
        self.variables().iter().all(|v| self.occurrences(v) == 2)
    }

    pub fn is_balanced(&self) -> bool {
        self.variables()
            .iter()
            .all(|v| self.lhs.occurrences(v) == 1 && self.rhs.occurrences(v) == 1)
    }

    /// Every subterm on one side has a subterm with the same content on the other.
    pub fn is_belousov(&self) -> Result<bool, ClassifyError> {
        if !self.is_balanced() {
            return Err(ClassifyError::NotBalanced);
        }
        let contents = |t: &Term| -> BTreeSet<BTreeSet<String>> {
            t.subterms().into_iter().map(Term::content).collect()
        };
        let (left, right) = (contents(&self.lhs), contents(&self.rhs));
        Ok(left == right)
    }

    /// Left height of `x` in the equation.
    pub fn lh(&self, x: &str) -> Result<usize, ClassifyError> {
        let side = if self.lhs.contains(x) {
            &self.lhs
        } else {
            &self.rhs
        };
        lh(x, side).ok_or_else(|| ClassifyError::VariableAbsent(x.to_string()))
    }

    /// Right height of `x` in the equation.
    pub fn rh(&self, x: &str) -> Result<usize, ClassifyError> {
        let side = if self.rhs.contains(x) {
            &self.rhs
        } else {
            &self.lhs
        };
        rh(x, side).ok_or_else(|| ClassifyError::VariableAbsent(x.to_string()))
    }

    /// All left and right heights of all variables coincide.
    pub fn is_level(&self) -> Result<bool, ClassifyError> {
        if !self.is_quadratic() {
            return Err(ClassifyError::NotQuadratic);
        }
        let mut heights = BTreeSet::new();
        for v in self.variables() {
            heights.insert(self.lh(&v)?);
            heights.insert(self.rh(&v)?);
        }
        Ok(heights.len() <= 1)
    }

    /// Every operation symbol occurs exactly once.
    pub fn is_generalized(&self) -> bool {
        let occ = self.op_occurrences();
        let distinct: BTreeSet<&str> = occ.iter().copied().collect();
        distinct.len() == occ.len()
    }

    /// Replaces the k-th operation occurrence (pre-order, lhs then rhs) by `g<k>`.
    /// Already generalized equations are returned unchanged.
    pub fn generalize(&self) -> Equation {
        if self.is_generalized() {
            return self.clone();
        }
        let mut k = 0usize;
        self.map_ops(|_| {
            k += 1;
            format!("g{k}")
        })
    }

    pub fn var_profiles(&self) -> Result<Vec<VarProfile>, ClassifyError> {
        if !self.is_quadratic() {
            return Err(ClassifyError::NotQuadratic);
        }
        Ok(self
            .variables()
            .into_iter()
            .map(|v| {
                let lhs_occurrences = self.lhs.occurrences(&v);
                let rhs_occurrences = self.rhs.occurrences(&v);
                VarProfile {
                    kind: VarKind::from_counts(lhs_occurrences, rhs_occurrences),
                    total_occurrences: lhs_occurrences + rhs_occurrences,
                    lhs_occurrences,
                    rhs_occurrences,
                    variable: v,
                }
            })
            .collect())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.lhs, self.rhs)
    }
}

impl std::str::FromStr for Equation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Equation::parse(s)
    }
}

fn numeric_suffix(s: &str) -> Option<u8> {
    let digits: String = s
        .chars()
        .rev()
        .take_while(char::is_ascii_digit)
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    if digits.is_empty() || digits.len() == s.len() {
        return None;
    }
    digits.parse::<u8>().ok().filter(|&n| n > 0)
}

/// `x, y, u, v, w, z` and then `x6, x7, ...`.
pub fn canonical_var_name(pos: usize) -> String {
    const NAMES: [&str; 6] = ["x", "y", "u", "v", "w", "z"];
    NAMES
        .get(pos)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("x{pos}"))
}

/// Left height of `x` in the term `t`; `None` when `x` does not occur.
pub fn lh(x: &str, t: &Term) -> Option<usize> {
    match t {
        Term::Var(v) => (v == x).then_some(0),
        Term::App { left, right, .. } => {
            if left.contains(x) {
                lh(x, left).map(|h| h + 1)
            } else {
                lh(x, right).map(|h| h + 1)
            }
        }
    }
}

/// Right height of `x` in the term `t`; `None` when `x` does not occur.
pub fn rh(x: &str, t: &Term) -> Option<usize> {
    match t {
        Term::Var(v) => (v == x).then_some(0),
        Term::App { left, right, .. } => {
            if right.contains(x) {
                rh(x, right).map(|h| h + 1)
            } else {
                rh(x, left).map(|h| h + 1)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarKind {
    Linear,
    LeftQuadratic,
    RightQuadratic,
    Other,
}

impl VarKind {
    fn from_counts(lhs: usize, rhs: usize) -> VarKind {
        match (lhs, rhs) {
            (1, 1) => VarKind::Linear,
            (2, 0) => VarKind::LeftQuadratic,
            (0, 2) => VarKind::RightQuadratic,
            _ => VarKind::Other,
        }
    }

    pub fn is_quadratic(self) -> bool {
        matches!(self, VarKind::LeftQuadratic | VarKind::RightQuadratic)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VarProfile {
    pub variable: String,
    pub total_occurrences: usize,
    pub lhs_occurrences: usize,
    pub rhs_occurrences: usize,
    pub kind: VarKind,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(s: &str) -> Equation {
        Equation::parse(s).unwrap()
    }

    const TRANSITIVITY: &str = "f(f(x,y),f(y,z))=f(x,z)";
    const ASSOCIATIVITY: &str = "f(f(x,y),z)=f(x,f(y,z))";
    const MEDIALITY: &str = "f(f(x,y),f(u,v))=f(f(x,u),f(y,v))";

    #[test]
    fn var_sets_of_transitivity_lhs() {
        let e = eq(TRANSITIVITY);
        let s = var_sets(&e.lhs);
        assert_eq!(s.all, ["x", "y", "z"].map(String::from).into());
        assert_eq!(s.linear, ["x", "z"].map(String::from).into());
        assert_eq!(s.quadratic, ["y"].map(String::from).into());
    }

    #[test]
    fn var_sets_of_leaf_and_square() {
        let s = var_sets(&Term::var("x"));
        assert_eq!(s.linear.len(), 1);
        assert!(s.quadratic.is_empty());
        let s = var_sets(&Term::app("f", Term::var("x"), Term::var("x")));
        assert!(s.linear.is_empty());
        assert_eq!(s.quadratic, ["x"].map(String::from).into());
    }

    #[test]
    fn heights_of_associativity() {
        let e = eq(ASSOCIATIVITY);
        assert_eq!(e.lh("x").unwrap(), 2);
        assert_eq!(e.rh("x").unwrap(), 1);
        assert_eq!(e.is_level(), Ok(false));
    }

    #[test]
    fn heights_of_mediality_are_two() {
        let e = eq(MEDIALITY);
        for v in ["x", "y", "u", "v"] {
            assert_eq!(e.lh(v).unwrap(), 2);
            assert_eq!(e.rh(v).unwrap(), 2);
        }
    }

    #[test]
    fn heights_of_single_application() {
        let t = Term::app("f", Term::var("x"), Term::var("y"));
        assert_eq!(lh("x", &t), Some(1));
        assert_eq!(rh("y", &t), Some(1));
        assert_eq!(lh("z", &t), None);
    }

    #[test]
    fn both_subterm_case_descends_left_for_lh_and_right_for_rh() {
        // y occurs in both arguments of the root
        let e = eq("f(f(x,y),f(f(y,u),w))=f(f(x,v),f(v,f(u,w)))");
        assert_eq!(lh("y", &e.lhs), Some(2));
        assert_eq!(rh("y", &e.lhs), Some(3));
    }

    #[test]
    fn absent_variable_is_an_error() {
        let e = eq(MEDIALITY);
        assert_eq!(e.lh("q"), Err(ClassifyError::VariableAbsent("q".into())));
        assert!(e.rh("q").is_err());
    }

    #[test]
    fn quadratic_and_balanced() {
        assert!(eq(MEDIALITY).is_quadratic());
        assert!(eq(MEDIALITY).is_balanced());
        assert!(eq(TRANSITIVITY).is_quadratic());
        assert!(!eq(TRANSITIVITY).is_balanced());
        assert!(!eq("f(x,x)=x").is_quadratic());
        assert!(!eq("f(x,f(y,z))=f(f(x,y),f(x,z))").is_quadratic());
    }

    #[test]
    fn belousov_requires_balanced() {
        assert_eq!(eq("f(x,y)=f(y,x)").is_belousov(), Ok(true));
        assert_eq!(eq(MEDIALITY).is_belousov(), Ok(false));
        assert_eq!(eq("f(x,f(y,z))=f(f(z,y),x)").is_belousov(), Ok(true));
        assert_eq!(
            eq(TRANSITIVITY).is_belousov(),
            Err(ClassifyError::NotBalanced)
        );
    }

    #[test]
    fn level_requires_quadratic() {
        assert_eq!(eq("f(f(x,y),f(u,v))=f(f(v,y),f(u,x))").is_level(), Ok(true));
        assert_eq!(eq("f(x,y)=f(x,y)").is_level(), Ok(true));
        assert_eq!(eq("f(x,x)=x").is_level(), Err(ClassifyError::NotQuadratic));
    }

    #[test]
    fn generalize_transitivity() {
        let g = eq(TRANSITIVITY).generalize();
        assert_eq!(g.to_string(), "g1(g2(x,y),g3(y,z))=g4(x,z)");
        assert!(g.is_generalized());
        assert_eq!(g.generalize(), g);
    }

    #[test]
    fn generalize_medial_pair() {
        let e = eq("f1(f2(x,y),f2(u,v))=f2(f1(x,u),f1(y,v))");
        assert!(!e.is_generalized());
        let g = e.generalize();
        assert_eq!(g.op_symbols(), ["g1", "g2", "g3", "g4", "g5", "g6"]);
    }

    #[test]
    fn profiles_classify_variables() {
        let e = eq("f1(f2(x,y),f2(x,u))=f2(f1(y,v),f1(u,v))");
        let kinds: Vec<(String, VarKind)> = e
            .var_profiles()
            .unwrap()
            .into_iter()
            .map(|p| (p.variable, p.kind))
            .collect();
        assert_eq!(
            kinds,
            vec![
                ("x".into(), VarKind::LeftQuadratic),
                ("y".into(), VarKind::Linear),
                ("u".into(), VarKind::Linear),
                ("v".into(), VarKind::RightQuadratic),
            ]
        );
        assert_eq!(
            eq("f(x,x)=x").var_profiles(),
            Err(ClassifyError::NotQuadratic)
        );
    }

    #[test]
    fn op_indices_use_suffix_or_appearance() {
        let e = eq("f1(f2(x,y),f2(u,v))=f2(f1(x,u),f1(y,v))");
        assert_eq!(e.op_indices()["f1"], 1);
        assert_eq!(e.op_indices()["f2"], 2);
        let e = eq(MEDIALITY);
        assert_eq!(e.op_indices()["f"], 1);
        let e = eq("h(g(x,y),z)=g(x,h(y,z))");
        assert_eq!(e.ops_by_index(), ["h", "g"]);
    }

    #[test]
    fn canonical_renaming_follows_first_appearance() {
        let e = eq("f1(f2(y,x),f2(u,x))=f2(f1(y,v),f1(u,v))");
        assert_eq!(
            e.canonical_var_renaming().to_string(),
            "f1(f2(x,y),f2(u,y))=f2(f1(x,v),f1(u,v))"
        );
    }
}
