use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use super::AlgebraError;

/// A closed binary operation on `{0..n-1}` stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Table {
    n: usize,
    cells: Vec<usize>,
}

impl Table {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Table, AlgebraError> {
        let n = rows.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::NotSquare {
                    row: i,
                    len: row.len(),
                    order: n,
                });
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(AlgebraError::OutOfRange { value: v, order: n });
            }
            cells.extend(row);
        }
        Ok(Table { n, cells })
    }

    /// Builds a table with an explicit order check on every row.
    pub fn with_order(order: usize, rows: Vec<Vec<usize>>) -> Result<Table, AlgebraError> {
        if rows.len() != order {
            return Err(AlgebraError::OrderMismatch {
                expected: order,
                found: rows.len(),
            });
        }
        Table::new(rows)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Table {
        let cells: Vec<usize> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        assert!(cells.iter().all(|&v| v < n), "operation leaves the carrier");
        Table { n, cells }
    }

    pub(crate) fn from_cells(n: usize, cells: Vec<usize>) -> Table {
        debug_assert_eq!(cells.len(), n * n);
        Table { n, cells }
    }

    /// Whitespace-separated rows, one row per non-empty line.
    pub fn parse_text(text: &str) -> Result<Table, AlgebraError> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| AlgebraError::Parse(format!("bad entry `{t}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Table::new(rows)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn set(&mut self, x: usize, y: usize, v: usize) {
        assert!(v < self.n, "value outside the carrier");
        self.cells[x * self.n + y] = v;
    }

    pub fn is_latin(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            (0..n).all(|j| {
                let (r, c) = (self.get(i, j), self.get(j, i));
                !std::mem::replace(&mut row[r], true) && !std::mem::replace(&mut col[c], true)
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.get(x, y) == self.get(y, x)))
    }

    /// First triple violating associativity, if any.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for c in 0..n {
                    if self.get(ab, c) != self.get(a, self.get(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// The dual operation `(x, y) -> f(y, x)`.
    pub fn transpose(&self) -> Table {
        Table::from_fn(self.n, |x, y| self.get(y, x))
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.cells.chunks(self.n) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Table {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<usize>>::deserialize(deserializer)?;
        Table::new(rows).map_err(serde::de::Error::custom)
    }
}

/// A table whose rows and columns are permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LatinSquare(Table);

impl LatinSquare {
    pub fn new(table: Table) -> Result<LatinSquare, AlgebraError> {
        if table.is_latin() {
            Ok(LatinSquare(table))
        } else {
            Err(AlgebraError::NotLatin)
        }
    }

    pub fn table(&self) -> &Table {
        &self.0
    }

    pub fn into_table(self) -> Table {
        self.0
    }
}

impl std::ops::Deref for LatinSquare {
    type Target = Table;

    fn deref(&self) -> &Table {
        &self.0
    }
}

/// JSON form `{order, table}` of a single operation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl TableFile {
    pub fn into_table(self) -> Result<Table, AlgebraError> {
        Table::with_order(self.order, self.table)
    }
}

/// Reads a table from JSON `{order, table}` or from whitespace rows.
pub fn parse_table(text: &str) -> Result<Table, AlgebraError> {
    if text.trim_start().starts_with('{') {
        let file: TableFile =
            serde_json::from_str(text).map_err(|e| AlgebraError::Parse(e.to_string()))?;
        file.into_table()
    } else {
        Table::parse_text(text)
    }
}

/// All Latin squares of order `n` in lexicographic (row-major) order.
pub fn latin_squares(n: usize) -> Vec<LatinSquare> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut cells = vec![0usize; n * n];
    let mut row_used = vec![vec![false; n]; n];
    let mut col_used = vec![vec![false; n]; n];
    fill(n, 0, &mut cells, &mut row_used, &mut col_used, &mut out);
    out
}

fn fill(
    n: usize,
    pos: usize,
    cells: &mut [usize],
    row_used: &mut [Vec<bool>],
    col_used: &mut [Vec<bool>],
    out: &mut Vec<LatinSquare>,
) {
    if pos == n * n {
        out.push(LatinSquare(Table::from_cells(n, cells.to_vec())));
        return;
    }
    let (r, c) = (pos / n, pos % n);
    for v in 0..n {
        if row_used[r][v] || col_used[c][v] {
            continue;
        }
        row_used[r][v] = true;
        col_used[c][v] = true;
        cells[pos] = v;
        fill(n, pos + 1, cells, row_used, col_used, out);
        row_used[r][v] = false;
        col_used[c][v] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latin_square_counts() {
        assert_eq!(latin_squares(1).len(), 1);
        assert_eq!(latin_squares(2).len(), 2);
        assert_eq!(latin_squares(3).len(), 12);
        assert_eq!(latin_squares(4).len(), 576);
        let sq = latin_squares(3);
        assert!(sq.windows(2).all(|w| w[0] < w[1]), "lexicographic");
        assert!(sq.iter().all(|s| s.is_latin()));
    }

    #[test]
    fn parsing_formats_agree() {
        let a = parse_table("0 1 2\n1 2 0\n2 0 1\n").unwrap();
        let b = parse_table(r#"{"order":3,"table":[[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap();
        assert_eq!(a, b);
        assert!(a.is_latin() && a.is_commutative());
        assert_eq!(a.associativity_witness(), None);
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(
            parse_table("0 1\n1"),
            Err(AlgebraError::NotSquare { .. })
        ));
        assert!(matches!(
            parse_table("0 2\n1 0"),
            Err(AlgebraError::OutOfRange { .. })
        ));
        assert!(matches!(
            parse_table(r#"{"order":3,"table":[[0,1],[1,0]]}"#),
            Err(AlgebraError::OrderMismatch { .. })
        ));
        assert!(matches!(
            parse_table("0 x\n1 0"),
            Err(AlgebraError::Parse(_))
        ));
        let t = Table::new(vec![vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(LatinSquare::new(t), Err(AlgebraError::NotLatin));
    }

    #[test]
    fn transpose_is_dual() {
        let t = Table::from_fn(4, |x, y| (2 * x + y) % 4);
        assert_eq!(t.transpose().get(1, 3), t.get(3, 1));
        assert_eq!(t.transpose().transpose(), t);
    }
}
