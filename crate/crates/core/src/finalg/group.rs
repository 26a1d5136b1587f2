use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use super::{AlgebraError, Perm, Table};

/// Automorphism enumeration refuses groups larger than this.
pub const AUTOMORPHISM_BOUND: usize = 12;

/// Largest order for which automorphisms are found by filtering all permutations.
const FILTER_LIMIT: usize = 8;

/// A finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Table,
    identity: usize,
    inverse: Vec<usize>,
    abelian: bool,
}

impl FiniteGroup {
    /// Validates the Latin property, an identity element and associativity.
    pub fn from_table(name: impl Into<String>, table: Table) -> Result<FiniteGroup, AlgebraError> {
        if !table.is_latin() {
            return Err(AlgebraError::NotLatin);
        }
        let n = table.order();
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table.get(e, x) == x && table.get(x, e) == x))
            .ok_or(AlgebraError::NoIdentity)?;
        if let Some((a, b, c)) = table.associativity_witness() {
            return Err(AlgebraError::NotAssociative { a, b, c });
        }
        let inverse = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table.get(x, y) == identity)
                    .expect("Latin rows contain identity")
            })
            .collect();
        let abelian = table.is_commutative();
        Ok(FiniteGroup {
            name: name.into(),
            table,
            identity,
            inverse,
            abelian,
        })
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n > 0, "cyclic group of order 0");
        FiniteGroup::from_table(format!("Z{n}"), Table::from_fn(n, |x, y| (x + y) % n))
            .expect("cyclic group")
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    /// Direct product with `(a, b)` encoded as `a * |h| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let m = h.order();
        let table = Table::from_fn(g.order() * m, |x, y| {
            g.add(x / m, y / m) * m + h.add(x % m, y % m)
        });
        FiniteGroup::from_table(format!("{}x{}", g.name, h.name), table).expect("product of groups")
    }

    /// The symmetric group on three points; elements are the permutations of
    /// `{0,1,2}` in lexicographic order, so element 0 is the identity.
    pub fn s3() -> FiniteGroup {
        let perms: Vec<Vec<usize>> = (0..3).permutations(3).collect();
        let index = |p: &[usize]| {
            perms
                .iter()
                .position(|q| q == p)
                .expect("permutation listed")
        };
        let table = Table::from_fn(6, |a, b| {
            let composed: Vec<usize> = (0..3).map(|i| perms[a][perms[b][i]]).collect();
            index(&composed)
        });
        FiniteGroup::from_table("S3", table).expect("S3")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.table.get(x, y)
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn is_automorphism(&self, p: &Perm) -> bool {
        let n = self.order();
        p.len() == n
            && (0..n).all(|x| {
                (0..n).all(|y| p.apply(self.add(x, y)) == self.add(p.apply(x), p.apply(y)))
            })
    }

    /// The group transported along the bijection `sigma`: `σa ∘ σb = σ(a + b)`.
    pub fn relabel(&self, sigma: &Perm) -> FiniteGroup {
        let inv = sigma.inverse();
        let table = Table::from_fn(self.order(), |x, y| {
            sigma.apply(self.add(inv.apply(x), inv.apply(y)))
        });
        FiniteGroup {
            name: self.name.clone(),
            inverse: (0..self.order())
                .map(|x| sigma.apply(self.neg(inv.apply(x))))
                .collect(),
            identity: sigma.apply(self.identity),
            abelian: self.abelian,
            table,
        }
    }

    /// Smallest generating set chosen greedily in increasing element order.
    pub fn generators(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut span = vec![false; n];
        span[self.identity] = true;
        while let Some(g) = (0..n).find(|&x| !span[x]) {
            gens.push(g);
            span = self.closure(&gens);
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let n = self.order();
        let mut span = vec![false; n];
        span[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.add(a, g);
                if !span[b] {
                    span[b] = true;
                    frontier.push(b);
                }
            }
        }
        span
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut acc = x;
        while acc != self.identity {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }
}

impl Serialize for FiniteGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct GroupJson<'a> {
            spec: &'a str,
            identity: usize,
            abelian: bool,
            table: &'a Table,
        }
        GroupJson {
            spec: &self.name,
            identity: self.identity,
            abelian: self.abelian,
            table: &self.table,
        }
        .serialize(serializer)
    }
}

/// How to build a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    S3,
    FromTable(Vec<Vec<usize>>),
}

impl FromStr for GroupSpec {
    type Err = AlgebraError;

    /// Accepts `Zn`, `S3`, `trivial` and `x`-separated products such as `Z2xZ2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || AlgebraError::UnknownGroupSpec(s.to_string());
        let lower = s.trim().to_ascii_lowercase();
        let factor = |part: &str| -> Result<GroupSpec, AlgebraError> {
            match part {
                "s3" => Ok(GroupSpec::S3),
                "trivial" => Ok(GroupSpec::Cyclic(1)),
                _ => {
                    let n: usize = part
                        .strip_prefix('z')
                        .ok_or_else(unknown)?
                        .parse()
                        .map_err(|_| unknown())?;
                    if n == 0 {
                        return Err(unknown());
                    }
                    Ok(GroupSpec::Cyclic(n))
                }
            }
        };
        lower
            .split('x')
            .map(factor)
            .reduce(|a, b| Ok(GroupSpec::Product(Box::new(a?), Box::new(b?))))
            .unwrap_or_else(|| Err(unknown()))
    }
}

pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup, AlgebraError> {
    match spec {
        GroupSpec::Cyclic(0) => Err(AlgebraError::Empty),
        GroupSpec::Cyclic(n) => Ok(FiniteGroup::cyclic(*n)),
        GroupSpec::Product(g, h) => Ok(FiniteGroup::product(&make_group(g)?, &make_group(h)?)),
        GroupSpec::S3 => Ok(FiniteGroup::s3()),
        GroupSpec::FromTable(rows) => FiniteGroup::from_table("table", Table::new(rows.clone())?),
    }
}

/// All automorphisms of `g` in lexicographic order of their image lists.
pub fn automorphisms(g: &FiniteGroup) -> Result<Vec<Perm>, AlgebraError> {
    let n = g.order();
    if n > AUTOMORPHISM_BOUND {
        return Err(AlgebraError::OrderTooLarge {
            order: n,
            bound: AUTOMORPHISM_BOUND,
        });
    }
    if n <= FILTER_LIMIT {
        Ok(automorphisms_by_filter(g))
    } else {
        Ok(automorphisms_by_generators(g))
    }
}

/// Filters every permutation of the carrier.
pub fn automorphisms_by_filter(g: &FiniteGroup) -> Vec<Perm> {
    let n = g.order();
    (0..n)
        .permutations(n)
        .map(|images| Perm::new(images).expect("permutation"))
        .filter(|p| g.is_automorphism(p))
        .collect()
}

/// Tries every assignment of generator images with matching element orders.
pub fn automorphisms_by_generators(g: &FiniteGroup) -> Vec<Perm> {
    let gens = g.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            (0..g.order())
                .filter(|&y| g.element_order(y) == g.element_order(x))
                .collect()
        })
        .collect();
    let mut out: Vec<Perm> = candidates
        .iter()
        .map(|c| c.iter().copied())
        .multi_cartesian_product()
        .filter_map(|images| extend_hom(g, &gens, &images))
        .filter(|p| g.is_automorphism(p))
        .collect();
    if gens.is_empty() {
        out.push(Perm::identity(g.order()));
    }
    out.sort();
    out
}

fn extend_hom(g: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Perm> {
    let n = g.order();
    let mut map: Vec<Option<usize>> = vec![None; n];
    map[g.identity()] = Some(g.identity());
    let mut frontier = vec![g.identity()];
    while let Some(a) = frontier.pop() {
        let fa = map[a].expect("mapped");
        for (&x, &y) in gens.iter().zip(images) {
            let (b, fb) = (g.add(a, x), g.add(fa, y));
            match map[b] {
                None => {
                    map[b] = Some(fb);
                    frontier.push(b);
                }
                Some(v) if v != fb => return None,
                Some(_) => {}
            }
        }
    }
    let images: Option<Vec<usize>> = map.into_iter().collect();
    Perm::new(images?).ok()
}

/// `m(x - y + z) = m(x) - m(y) + m(z)` for all triples, where `x - y + z`
/// means `x + y⁻¹ + z`.
pub fn is_holomorphism(m: &Perm, g: &FiniteGroup) -> bool {
    let n = g.order();
    if m.len() != n {
        return false;
    }
    (0..n).all(|x| {
        (0..n).all(|y| {
            let xy = g.add(x, g.neg(y));
            let mxy = g.add(m.apply(x), g.neg(m.apply(y)));
            (0..n).all(|z| m.apply(g.add(xy, z)) == g.add(mxy, m.apply(z)))
        })
    })
}

/// `m(x) = φ1(x) + k1 = k2 + φ2(x)` with automorphisms `φ1, φ2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HolomorphismParts {
    pub phi1: Perm,
    pub k1: usize,
    pub phi2: Perm,
    pub k2: usize,
}

pub fn decompose_holomorphism(
    m: &Perm,
    g: &FiniteGroup,
) -> Result<HolomorphismParts, AlgebraError> {
    if !is_holomorphism(m, g) {
        return Err(AlgebraError::NotHolomorphism);
    }
    let n = g.order();
    let k = m.apply(g.identity());
    let phi1 = Perm::from_fn(n, |x| g.add(m.apply(x), g.neg(k)))?;
    let phi2 = Perm::from_fn(n, |x| g.add(g.neg(k), m.apply(x)))?;
    let parts = HolomorphismParts {
        phi1,
        k1: k,
        phi2,
        k2: k,
    };
    let consistent = g.is_automorphism(&parts.phi1)
        && g.is_automorphism(&parts.phi2)
        && (0..n).all(|x| {
            m.apply(x) == g.add(parts.phi1.apply(x), k)
                && m.apply(x) == g.add(k, parts.phi2.apply(x))
        });
    if consistent {
        Ok(parts)
    } else {
        Err(AlgebraError::NotHolomorphism)
    }
}

/// The map `x ↦ φ(x) + k`.
pub fn affine_map(phi: &Perm, k: usize, g: &FiniteGroup) -> Perm {
    Perm::from_fn(g.order(), |x| g.add(phi.apply(x), k)).expect("affine maps are bijective")
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
