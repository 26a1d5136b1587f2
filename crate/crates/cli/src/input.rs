use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use quasieq::finalg::{make_group, parse_table, FiniteGroup, GroupSpec, Table};
use quasieq::solver::{Algebra, Interpretation};
use quasieq::{catalog, Equation, EquationId};
use serde::Deserialize;

/// An equation named by catalog id or given as text.
pub enum Target {
    Id(EquationId),
    Expr(Equation),
}

impl Target {
    pub fn resolve(id: Option<&str>, expr: Option<&str>) -> Result<Target> {
        match (id, expr) {
            (Some(id), None) => Ok(Target::Id(id.parse()?)),
            (None, Some(text)) => Ok(Target::Expr(Equation::parse(text)?)),
            _ => bail!("give exactly one of an equation id or --expr"),
        }
    }

    pub fn equation(&self) -> Result<Equation> {
        match self {
            Target::Id(id) => Ok(catalog(*id)?),
            Target::Expr(e) => Ok(e.clone()),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// `Z5`, `Z2xZ2`, `S3`, `trivial` or `file:<path>` holding a Cayley table.
pub fn load_group(spec: &str) -> Result<FiniteGroup> {
    if let Some(path) = spec.strip_prefix("file:") {
        let table = parse_table(&read(Path::new(path))?)?;
        return Ok(FiniteGroup::from_table(spec, table)?);
    }
    if spec.eq_ignore_ascii_case("sloop10") {
        bail!("sloop10 is a loop, not a group");
    }
    Ok(make_group(&spec.parse::<GroupSpec>()?)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TablesFile {
    order: usize,
    tables: Vec<Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    order: usize,
    operations: Vec<Vec<Vec<usize>>>,
}

fn tables(order: usize, raw: Vec<Vec<Vec<usize>>>) -> Result<Vec<Table>> {
    raw.into_iter()
        .enumerate()
        .map(|(i, rows)| Table::with_order(order, rows).with_context(|| format!("table {i}")))
        .collect()
}

/// Assigns the tables of `{order, tables}` to the operation symbols of `e`
/// in index order.
pub fn load_interpretation(path: &Path, e: &Equation) -> Result<Interpretation> {
    let file: TablesFile = serde_json::from_str(&read(path)?).context("malformed tables file")?;
    let tables = tables(file.order, file.tables)?;
    let symbols = e.ops_by_index();
    if tables.len() != symbols.len() {
        bail!(
            "equation has {} operation symbol(s) but the file holds {} table(s)",
            symbols.len(),
            tables.len()
        );
    }
    Ok(Interpretation::new(
        file.order,
        symbols.into_iter().zip(tables),
    )?)
}

pub fn load_algebra(path: &Path) -> Result<Algebra> {
    let file: AlgebraFile = serde_json::from_str(&read(path)?).context("malformed algebra file")?;
    Ok(Algebra::new(
        file.order,
        tables(file.order, file.operations)?,
    )?)
}
