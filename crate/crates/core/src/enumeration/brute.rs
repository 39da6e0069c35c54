//! Independent oracle: all groups of order at most 8 by backtracking over
//! Latin squares with the identity fixed at 0, pruning on associativity
//! whenever all products of a triple are known.

use super::{deduplicate, CatalogEntry, Provenance};
use crate::error::{Error, Result};
use crate::group::GroupTable;

const EMPTY: usize = usize::MAX;
pub const BRUTE_FORCE_MAX: usize = 8;

struct Filler {
    n: usize,
    t: Vec<usize>,
    row_used: Vec<Vec<bool>>,
    col_used: Vec<Vec<bool>>,
    found: Vec<Vec<usize>>,
}

impl Filler {
    fn get(&self, a: usize, b: usize) -> usize {
        self.t[a * self.n + b]
    }

    /// Every associativity instance that involves cell `(a, b)` and whose
    /// products are all known must hold.
    fn consistent(&self, a: usize, b: usize) -> bool {
        let n = self.n;
        let c = self.get(a, b);
        for x in 0..n {
            // (x a) b = x (a b)
            let xa = self.get(x, a);
            if xa != EMPTY {
                let l = self.get(xa, b);
                let r = self.get(x, c);
                if l != EMPTY && r != EMPTY && l != r {
                    return false;
                }
            }
            // (a b) x = a (b x)
            let bx = self.get(b, x);
            if bx != EMPTY {
                let l = self.get(c, x);
                let r = self.get(a, bx);
                if l != EMPTY && r != EMPTY && l != r {
                    return false;
                }
            }
        }
        // (a, b) as the outer product: a = x y gives (x y) b = x (y b),
        // b = y z gives a (y z) = (a y) z
        for x in 0..n {
            for y in 0..n {
                if self.get(x, y) == a {
                    let yb = self.get(y, b);
                    if yb != EMPTY {
                        let r = self.get(x, yb);
                        if r != EMPTY && r != c {
                            return false;
                        }
                    }
                }
                if self.get(x, y) == b {
                    let ax = self.get(a, x);
                    if ax != EMPTY {
                        let r = self.get(ax, y);
                        if r != EMPTY && r != c {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn fill(&mut self, cell: usize) {
        let n = self.n;
        if cell == n * n {
            self.found.push(self.t.clone());
            return;
        }
        let (a, b) = (cell / n, cell % n);
        if self.t[cell] != EMPTY {
            self.fill(cell + 1);
            return;
        }
        for v in 0..n {
            if self.row_used[a][v] || self.col_used[b][v] {
                continue;
            }
            self.t[cell] = v;
            self.row_used[a][v] = true;
            self.col_used[b][v] = true;
            if self.consistent(a, b) {
                self.fill(cell + 1);
            }
            self.row_used[a][v] = false;
            self.col_used[b][v] = false;
            self.t[cell] = EMPTY;
        }
    }
}

pub fn brute_force_groups(n: usize) -> Result<Vec<CatalogEntry>> {
    if n == 0 || n > BRUTE_FORCE_MAX {
        return Err(Error::OrderOutOfRange { n, cap: BRUTE_FORCE_MAX });
    }
    let mut f = Filler {
        n,
        t: vec![EMPTY; n * n],
        row_used: vec![vec![false; n]; n],
        col_used: vec![vec![false; n]; n],
        found: Vec::new(),
    };
    for x in 0..n {
        for (a, b) in [(0, x), (x, 0)] {
            f.t[a * n + b] = x;
            f.row_used[a][x] = true;
            f.col_used[b][x] = true;
        }
    }
    f.fill(0);
    let candidates = f
        .found
        .into_iter()
        .map(|mul| {
            let rows: Vec<Vec<usize>> = mul.chunks(n).map(<[usize]>::to_vec).collect();
            let g = GroupTable::from_table(&rows).expect("search only emits groups");
            CatalogEntry::new(g, Provenance::BruteForce)
        })
        .collect();
    Ok(deduplicate(candidates))
}
