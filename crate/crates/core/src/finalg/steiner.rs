use super::Table;

/// Lines of the affine plane of order 3 on points 1..=9.
pub const STS9_TRIPLES: [[usize; 3]; 12] = [
    [1, 2, 3],
    [4, 5, 6],
    [7, 8, 9],
    [1, 4, 7],
    [2, 5, 8],
    [3, 6, 9],
    [1, 5, 9],
    [2, 6, 7],
    [3, 4, 8],
    [1, 6, 8],
    [2, 4, 9],
    [3, 5, 7],
];

/// A commutative loop with `x·x = e` and `x·(x·y) = y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerLoop {
    pub table: Table,
    pub identity: usize,
}

impl SteinerLoop {
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.get(x, y)
    }

    /// Checks identity, commutativity, `x·x = e` and `x·(x·y) = y`.
    pub fn is_valid(&self) -> bool {
        let n = self.table.order();
        let e = self.identity;
        (0..n).all(|x| {
            self.mul(e, x) == x
                && self.mul(x, e) == x
                && self.mul(x, x) == e
                && (0..n)
                    .all(|y| self.mul(x, y) == self.mul(y, x) && self.mul(x, self.mul(x, y)) == y)
        }) && self.table.is_latin()
    }
}

/// The Steiner loop of order 10 built on the 9-point triple system, with
/// identity 0 adjoined.
pub fn steiner_loop_10() -> SteinerLoop {
    let mut third = [[0usize; 10]; 10];
    for t in STS9_TRIPLES {
        for i in 0..3 {
            let (a, b, c) = (t[i], t[(i + 1) % 3], t[(i + 2) % 3]);
            assert_eq!(third[a][b], 0, "pair {a}{b} lies in two triples");
            third[a][b] = c;
            third[b][a] = c;
        }
    }
    let table = Table::from_fn(10, |x, y| match (x, y) {
        (0, y) => y,
        (x, 0) => x,
        (x, y) if x == y => 0,
        (x, y) => third[x][y],
    });
    let sl = SteinerLoop { table, identity: 0 };
    assert!(sl.is_valid(), "Steiner loop construction");
    sl
}
