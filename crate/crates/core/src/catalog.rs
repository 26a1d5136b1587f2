//! The 48 two-operation equations and the named classical identities.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::equation::Equation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown equation id `{0}`")]
    UnknownId(String),
}

/// Named single-operation identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Named {
    Commutativity,
    Associativity,
    Mediality,
    Paramediality,
    Distributivity,
    Transitivity,
    Intermediality,
    Extramediality,
    FourPalindromic,
    Idempotency,
    Trivial,
    Eq13,
}

impl Named {
    pub const ALL: [Named; 12] = [
        Named::Commutativity,
        Named::Associativity,
        Named::Mediality,
        Named::Paramediality,
        Named::Distributivity,
        Named::Transitivity,
        Named::Intermediality,
        Named::Extramediality,
        Named::FourPalindromic,
        Named::Idempotency,
        Named::Trivial,
        Named::Eq13,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Named::Commutativity => "commutativity",
            Named::Associativity => "associativity",
            Named::Mediality => "mediality",
            Named::Paramediality => "paramediality",
            Named::Distributivity => "distributivity",
            Named::Transitivity => "transitivity",
            Named::Intermediality => "intermediality",
            Named::Extramediality => "extramediality",
            Named::FourPalindromic => "4-palindromic",
            Named::Idempotency => "idempotency",
            Named::Trivial => "trivial",
            Named::Eq13 => "eq13",
        }
    }

    fn text(self) -> &'static str {
        match self {
            Named::Commutativity => "f(x,y)=f(y,x)",
            Named::Associativity => "f(f(x,y),z)=f(x,f(y,z))",
            Named::Mediality => "f(f(x,y),f(u,v))=f(f(x,u),f(y,v))",
            Named::Paramediality => "f(f(x,y),f(u,v))=f(f(v,y),f(u,x))",
            Named::Distributivity => "f(x,f(y,z))=f(f(x,y),f(x,z))",
            Named::Transitivity => "f(f(x,y),f(y,z))=f(x,z)",
            Named::Intermediality => "f(f(x,y),f(y,u))=f(f(x,v),f(v,u))",
            Named::Extramediality => "f(f(x,y),f(u,x))=f(f(v,y),f(u,v))",
            Named::FourPalindromic => "f(f(x,y),f(u,v))=f(f(v,u),f(y,x))",
            Named::Idempotency => "f(x,x)=x",
            Named::Trivial => "f(x,y)=f(x,y)",
            Named::Eq13 => "f(x,f(y,z))=f(f(z,y),x)",
        }
    }
}

/// Identifies a catalog entry: `4.j` (j in 1..=16), `5.j` (j in 1..=32) or a name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EquationId {
    Family4(u8),
    Family5(u8),
    Named(Named),
}

impl EquationId {
    /// The 16 + 32 two-operation equations in catalog order.
    pub fn family_ids() -> impl Iterator<Item = EquationId> {
        (1..=16)
            .map(EquationId::Family4)
            .chain((1..=32).map(EquationId::Family5))
    }

    pub fn named_ids() -> impl Iterator<Item = EquationId> {
        Named::ALL.into_iter().map(EquationId::Named)
    }

    fn is_valid(self) -> bool {
        match self {
            EquationId::Family4(j) => (1..=16).contains(&j),
            EquationId::Family5(j) => (1..=32).contains(&j),
            EquationId::Named(_) => true,
        }
    }
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationId::Family4(j) => write!(f, "4.{j}"),
            EquationId::Family5(j) => write!(f, "5.{j}"),
            EquationId::Named(n) => f.write_str(n.name()),
        }
    }
}

impl FromStr for EquationId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || CatalogError::UnknownId(s.to_string());
        let trimmed = s.trim().to_ascii_lowercase();
        if let Some(named) = Named::ALL.into_iter().find(|n| n.name() == trimmed) {
            return Ok(EquationId::Named(named));
        }
        let (family, index) = trimmed.split_once('.').ok_or_else(unknown)?;
        let index: u8 = index.parse().map_err(|_| unknown())?;
        let id = match family {
            "4" => EquationId::Family4(index),
            "5" => EquationId::Family5(index),
            _ => return Err(unknown()),
        };
        id.is_valid().then_some(id).ok_or_else(unknown)
    }
}

impl Serialize for EquationId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Right-hand arrangements `x5 x6 x7 x8` of the balanced family; the left
/// side is always `f1(f2(x,y),f2(u,v))`.
const FAMILY4_RHS: [&str; 16] = [
    "xuyv", "xuvy", "xvyu", "xvuy", "yuxv", "yuvx", "yvxu", "yvux", "uxyv", "uxvy", "uyxv", "uyvx",
    "vxyu", "vxuy", "vyxu", "vyux",
];

/// Full arrangements `x1..x4 = x5..x8` of the non-balanced family.
const FAMILY5: [&str; 32] = [
    "xyxu=yvuv",
    "xyxu=yvvu",
    "xyxu=uvyv",
    "xyxu=uvvy",
    "xyxu=vyuv",
    "xyxu=vyvu",
    "xyxu=vuyv",
    "xyxu=vuvy",
    "xyyu=xvuv",
    "xyyu=xvvu",
    "xyyu=uvxv",
    "xyyu=uvvx",
    "xyyu=vxuv",
    "xyyu=vxvu",
    "xyyu=vuxv",
    "xyyu=vuvx",
    "xyux=yvuv",
    "xyux=yvvu",
    "xyux=uvyv",
    "xyux=uvvy",
    "xyux=vyuv",
    "xyux=vyvu",
    "xyux=vuyv",
    "xyux=vuvy",
    "xyuy=xvuv",
    "xyuy=xvvu",
    "xyuy=uvxv",
    "xyuy=uvvx",
    "xyuy=vxuv",
    "xyuy=vxvu",
    "xyuy=vuxv",
    "xyuy=vuvx",
];

fn from_arrangement(lhs: &str, rhs: &str) -> String {
    let l: Vec<char> = lhs.chars().collect();
    let r: Vec<char> = rhs.chars().collect();
    format!(
        "f1(f2({},{}),f2({},{}))=f2(f1({},{}),f1({},{}))",
        l[0], l[1], l[2], l[3], r[0], r[1], r[2], r[3]
    )
}

/// Source text of a catalog entry.
pub fn catalog_text(id: EquationId) -> Result<String, CatalogError> {
    if !id.is_valid() {
        return Err(CatalogError::UnknownId(id.to_string()));
    }
    Ok(match id {
        EquationId::Family4(j) => from_arrangement("xyuv", FAMILY4_RHS[usize::from(j) - 1]),
        EquationId::Family5(j) => {
            let (l, r) = FAMILY5[usize::from(j) - 1]
                .split_once('=')
                .expect("arrangement has `=`");
            from_arrangement(l, r)
        }
        EquationId::Named(n) => n.text().to_string(),
    })
}

pub fn catalog(id: EquationId) -> Result<Equation, CatalogError> {
    let text = catalog_text(id)?;
    Ok(Equation::parse(&text).expect("catalog entries are well-formed"))
}
