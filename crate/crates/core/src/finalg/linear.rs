use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use super::{automorphisms, AlgebraError, FiniteGroup, Perm, Table};

/// Parameters of `f(x,y) = α x + c + β y`, or `β y + c + α x` when reversed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LinearParams {
    pub alpha: Perm,
    pub c: usize,
    pub beta: Perm,
    pub reversed: bool,
}

impl LinearParams {
    #[inline]
    pub fn eval(&self, g: &FiniteGroup, x: usize, y: usize) -> usize {
        let (a, b) = (self.alpha.apply(x), self.beta.apply(y));
        if self.reversed {
            g.add(g.add(b, self.c), a)
        } else {
            g.add(g.add(a, self.c), b)
        }
    }

    /// The induced table; panics if it is not Latin, which cannot happen for
    /// bijective `α`, `β`.
    pub fn table(&self, g: &FiniteGroup) -> Table {
        let t = Table::from_fn(g.order(), |x, y| self.eval(g, x, y));
        assert!(t.is_latin(), "linear quasigroup table must be Latin");
        t
    }
}

pub fn linear_quasigroup(
    g: &FiniteGroup,
    alpha: &Perm,
    c: usize,
    beta: &Perm,
    reversed: bool,
) -> Result<Table, AlgebraError> {
    if !g.is_automorphism(alpha) || !g.is_automorphism(beta) {
        return Err(AlgebraError::NotAutomorphism);
    }
    if c >= g.order() {
        return Err(AlgebraError::OutOfRange {
            value: c,
            order: g.order(),
        });
    }
    Ok(LinearParams {
        alpha: alpha.clone(),
        c,
        beta: beta.clone(),
        reversed,
    }
    .table(g))
}

/// Recovers the parameters of `t` over `g` for the given orientation, if
/// `t` is linear over `g` in that orientation.
pub fn derive_params(t: &Table, g: &FiniteGroup, reversed: bool) -> Option<LinearParams> {
    let n = g.order();
    if t.order() != n {
        return None;
    }
    let e = g.identity();
    let c = t.get(e, e);
    let nc = g.neg(c);
    let (alpha, beta) = if reversed {
        (
            Perm::from_fn(n, |x| g.add(nc, t.get(x, e))).ok()?,
            Perm::from_fn(n, |y| g.add(t.get(e, y), nc)).ok()?,
        )
    } else {
        (
            Perm::from_fn(n, |x| g.add(t.get(x, e), nc)).ok()?,
            Perm::from_fn(n, |y| g.add(nc, t.get(e, y))).ok()?,
        )
    };
    if !g.is_automorphism(&alpha) || !g.is_automorphism(&beta) {
        return None;
    }
    let params = LinearParams {
        alpha,
        c,
        beta,
        reversed,
    };
    let reproduces = (0..n).all(|x| (0..n).all(|y| params.eval(g, x, y) == t.get(x, y)));
    reproduces.then_some(params)
}

/// A group structure on the carrier with its automorphisms.
#[derive(Debug, Clone)]
pub struct LabeledGroup {
    pub group: FiniteGroup,
    pub automorphisms: Vec<Perm>,
}

/// Largest order handled by [`group_structures`] and certificate search.
pub const CERTIFICATE_BOUND: usize = 6;

/// Representatives of the isomorphism classes of groups of order `n`.
pub fn canonical_groups(n: usize) -> Result<Vec<FiniteGroup>, AlgebraError> {
    Ok(match n {
        1 => vec![FiniteGroup::trivial()],
        2 | 3 | 5 => vec![FiniteGroup::cyclic(n)],
        4 => vec![
            FiniteGroup::cyclic(4),
            FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        ],
        6 => vec![FiniteGroup::cyclic(6), FiniteGroup::s3()],
        _ => {
            return Err(AlgebraError::OrderTooLarge {
                order: n,
                bound: CERTIFICATE_BOUND,
            })
        }
    })
}

/// Every group structure on `{0..n-1}`: each canonical group transported
/// along every bijection, without repeated tables. Ordered by canonical
/// group, then by bijection.
pub fn group_structures(n: usize) -> Result<Vec<LabeledGroup>, AlgebraError> {
    let mut out = Vec::new();
    for g in canonical_groups(n)? {
        let auts = automorphisms(&g)?;
        let mut seen = BTreeSet::new();
        for images in (0..n).permutations(n) {
            let sigma = Perm::new(images).expect("permutation");
            let relabeled = g.relabel(&sigma);
            if !seen.insert(relabeled.table().clone()) {
                continue;
            }
            let inv = sigma.inverse();
            let mut transported: Vec<Perm> = auts
                .iter()
                .map(|a| sigma.compose(a).compose(&inv))
                .collect();
            transported.sort();
            out.push(LabeledGroup {
                group: relabeled,
                automorphisms: transported,
            });
        }
    }
    Ok(out)
}

/// A group structure and linear parameters reproducing a list of tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearCertificate {
    pub group: FiniteGroup,
    pub params: Vec<LinearParams>,
}

impl LinearCertificate {
    pub fn reproduces(&self, tables: &[Table]) -> bool {
        tables.len() == self.params.len()
            && tables
                .iter()
                .zip(&self.params)
                .all(|(t, p)| &p.table(&self.group) == t)
    }
}

fn check_orders(tables: &[Table]) -> Result<usize, AlgebraError> {
    let n = tables.first().ok_or(AlgebraError::Empty)?.order();
    if let Some(t) = tables.iter().find(|t| t.order() != n) {
        return Err(AlgebraError::OrderMismatch {
            expected: n,
            found: t.order(),
        });
    }
    if n > CERTIFICATE_BOUND {
        return Err(AlgebraError::OrderTooLarge {
            order: n,
            bound: CERTIFICATE_BOUND,
        });
    }
    Ok(n)
}

/// First group structure (in [`group_structures`] order) over which every
/// table is linear; each table prefers the non-reversed orientation.
pub fn find_linear_certificate(
    tables: &[Table],
    require_abelian: bool,
) -> Result<Option<LinearCertificate>, AlgebraError> {
    let n = check_orders(tables)?;
    for lg in group_structures(n)? {
        if require_abelian && !lg.group.is_abelian() {
            continue;
        }
        let params: Option<Vec<LinearParams>> = tables
            .iter()
            .map(|t| {
                derive_params(t, &lg.group, false).or_else(|| derive_params(t, &lg.group, true))
            })
            .collect();
        if let Some(params) = params {
            return Ok(Some(LinearCertificate {
                group: lg.group,
                params,
            }));
        }
    }
    Ok(None)
}

/// Every certificate for `tables`, one per group structure that admits one.
pub fn all_linear_certificates(tables: &[Table]) -> Result<Vec<LinearCertificate>, AlgebraError> {
    let n = check_orders(tables)?;
    let mut out = Vec::new();
    for lg in group_structures(n)? {
        let params: Option<Vec<LinearParams>> = tables
            .iter()
            .map(|t| {
                derive_params(t, &lg.group, false).or_else(|| derive_params(t, &lg.group, true))
            })
            .collect();
        if let Some(params) = params {
            out.push(LinearCertificate {
                group: lg.group,
                params,
            });
        }
    }
    Ok(out)
}

/// A single abelian group over which every table is `α x + c + β y` and the
/// constants satisfy `f_l(c_k, c_k) = f_k(c_l, c_l)` for all pairs.
pub fn find_shared_abelian_representation(
    tables: &[Table],
) -> Result<Option<LinearCertificate>, AlgebraError> {
    let n = check_orders(tables)?;
    for lg in group_structures(n)? {
        if !lg.group.is_abelian() {
            continue;
        }
        let Some(params) = tables
            .iter()
            .map(|t| derive_params(t, &lg.group, false))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let compatible = params.iter().enumerate().all(|(l, pl)| {
            params
                .iter()
                .enumerate()
                .all(|(k, pk)| tables[l].get(pk.c, pk.c) == tables[k].get(pl.c, pl.c))
        });
        if compatible {
            return Ok(Some(LinearCertificate {
                group: lg.group,
                params,
            }));
        }
    }
    Ok(None)
}
