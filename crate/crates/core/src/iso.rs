//! Isomorphism testing, automorphism enumeration, and generating-set
//! statistics.
//!
//! Both isomorphism and automorphism search are the same ordered
//! backtracking: fix a greedy generating sequence of the domain, try images
//! for each generator in increasing index order (filtered by element order
//! and conjugacy-class size), and extend the partial map over the generated
//! subgroup, rejecting as soon as it stops being an injective homomorphism.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupTable, Hom};

pub const DEFAULT_AUT_CAP: usize = 1_000_000;

/// Isomorphism invariants. Unequal fingerprints certify non-isomorphism.
///
/// Fields are declared in comparison order; the derived `Ord` fixes the
/// catalog ordering.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    /// Number of elements of each order `d`, listed over the divisors of
    /// the group order from largest to smallest.
    pub order_histogram: Vec<usize>,
    pub abelian: bool,
    pub center_order: usize,
    pub derived_series: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub exponent: usize,
    /// Sorted `(element order, class size, order of the square)` triples
    /// with multiplicities.
    pub element_profile: Vec<(usize, usize, usize, usize)>,
}

impl Fingerprint {
    pub fn of(g: &GroupTable) -> Self {
        let n = g.order();
        let orders = g.element_orders();
        let divisors: Vec<usize> = (1..=n).rev().filter(|d| n.is_multiple_of(*d)).collect();
        let order_histogram = divisors.iter().map(|&d| orders.iter().filter(|&&o| o == d).count()).collect();
        let classes = g.conjugacy_classes();
        let mut class_of = vec![0; n];
        for c in &classes {
            for &x in c {
                class_of[x] = c.len();
            }
        }
        let mut class_sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        class_sizes.sort_unstable();
        let mut triples: Vec<(usize, usize, usize)> =
            (0..n).map(|x| (orders[x], class_of[x], orders[g.mul(x, x)])).collect();
        triples.sort_unstable();
        let mut element_profile: Vec<(usize, usize, usize, usize)> = Vec::new();
        for t in triples {
            match element_profile.last_mut() {
                Some(last) if (last.0, last.1, last.2) == t => last.3 += 1,
                _ => element_profile.push((t.0, t.1, t.2, 1)),
            }
        }
        Fingerprint {
            order: n,
            order_histogram,
            abelian: g.is_abelian(),
            center_order: g.center().len(),
            derived_series: g.derived_series_orders(),
            class_sizes,
            exponent: orders.iter().copied().fold(1, crate::group::lcm),
            element_profile,
        }
    }

    /// Name of the first invariant on which two fingerprints disagree.
    pub fn first_difference(&self, other: &Fingerprint) -> Option<&'static str> {
        if self.order != other.order {
            Some("order")
        } else if self.order_histogram != other.order_histogram {
            Some("order histogram")
        } else if self.abelian != other.abelian {
            Some("abelian flag")
        } else if self.center_order != other.center_order {
            Some("center order")
        } else if self.derived_series != other.derived_series {
            Some("derived series")
        } else if self.class_sizes != other.class_sizes {
            Some("class sizes")
        } else if self.exponent != other.exponent {
            Some("exponent")
        } else if self.element_profile != other.element_profile {
            Some("element profile")
        } else {
            None
        }
    }
}

/// Greedy generating sequence: repeatedly append the smallest element not
/// yet in the generated subgroup.
pub fn generating_sequence(g: &GroupTable) -> Vec<usize> {
    let mut mask = vec![false; g.order()];
    mask[0] = true;
    let mut gens = Vec::new();
    while let Some(x) = (0..g.order()).find(|&x| !mask[x]) {
        gens.push(x);
        g.close_into(&mut mask, &[x]);
    }
    gens
}

/// Per-element invariants preserved by isomorphisms.
fn element_keys(g: &GroupTable) -> Vec<(usize, usize)> {
    let orders = g.element_orders();
    let mut keys = vec![(0, 0); g.order()];
    for c in g.conjugacy_classes() {
        for &x in &c {
            keys[x] = (orders[x], c.len());
        }
    }
    keys
}

struct Search<'a> {
    dom: &'a GroupTable,
    cod: &'a GroupTable,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    map: Vec<usize>,
    rev: Vec<usize>,
    mapped: Vec<usize>,
    gen_images: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(dom: &'a GroupTable, cod: &'a GroupTable) -> Self {
        let gens = generating_sequence(dom);
        let dk = element_keys(dom);
        let ck = element_keys(cod);
        let candidates = gens.iter().map(|&g| cod.elements().filter(|&y| ck[y] == dk[g]).collect()).collect();
        let mut map = vec![UNSET; dom.order()];
        let mut rev = vec![UNSET; cod.order()];
        map[0] = 0;
        rev[0] = 0;
        Search { dom, cod, gens, candidates, map, rev, mapped: vec![0], gen_images: Vec::new() }
    }

    /// Map the next generator to `y` and close; on conflict the partial map
    /// is restored and `false` returned.
    fn extend(&mut self, y: usize) -> bool {
        let mark = self.mapped.len();
        self.gen_images.push(y);
        let k = self.gen_images.len();
        let mut head = 0;
        let mut ok = true;
        'bfs: while head < self.mapped.len() {
            let x = self.mapped[head];
            head += 1;
            for j in 0..k {
                let xg = self.dom.mul(x, self.gens[j]);
                let img = self.cod.mul(self.map[x], self.gen_images[j]);
                let cur = self.map[xg];
                if cur == UNSET {
                    if self.rev[img] != UNSET {
                        ok = false;
                        break 'bfs;
                    }
                    self.map[xg] = img;
                    self.rev[img] = xg;
                    self.mapped.push(xg);
                } else if cur != img {
                    ok = false;
                    break 'bfs;
                }
            }
        }
        if !ok {
            self.retract(mark);
        }
        ok
    }

    fn retract(&mut self, mark: usize) {
        for x in self.mapped.drain(mark..) {
            self.rev[self.map[x]] = UNSET;
            self.map[x] = UNSET;
        }
        self.gen_images.pop();
    }

    /// Visit every complete injective homomorphism; `visit` returns `false`
    /// to stop. Returns `false` if stopped early.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.gens.len() {
            return visit(&self.map);
        }
        for ci in 0..self.candidates[depth].len() {
            let y = self.candidates[depth][ci];
            if self.rev[y] != UNSET {
                continue;
            }
            let mark = self.mapped.len();
            if self.extend(y) {
                let cont = self.run(depth + 1, visit);
                self.retract(mark);
                if !cont {
                    return false;
                }
            }
        }
        true
    }
}

/// Backtracking only, no fingerprint pre-check. Requires equal orders.
pub fn find_isomorphism(g: &GroupTable, h: &GroupTable) -> Option<Hom> {
    if g.order() != h.order() {
        return None;
    }
    let mut search = Search::new(g, h);
    let mut found = None;
    search.run(0, &mut |m| {
        found = Some(m.to_vec());
        false
    });
    found.map(|image| Hom::new_unchecked(g, h, image))
}

/// A bijective homomorphism `g -> h`, if one exists. Fingerprints are
/// compared first.
pub fn isomorphic(g: &GroupTable, h: &GroupTable) -> Option<Hom> {
    if g.order() != h.order() || Fingerprint::of(g) != Fingerprint::of(h) {
        return None;
    }
    find_isomorphism(g, h)
}

pub fn aut_order(g: &GroupTable) -> u64 {
    let mut search = Search::new(g, g);
    let mut count = 0u64;
    search.run(0, &mut |_| {
        count += 1;
        true
    });
    count
}

/// All automorphisms in search order (the identity comes first). Fails
/// with the full count once more than `cap` are found.
pub fn aut_list(g: &GroupTable, cap: usize) -> Result<Vec<Hom>> {
    let mut search = Search::new(g, g);
    let mut out: Vec<Hom> = Vec::new();
    let mut count = 0u64;
    search.run(0, &mut |m| {
        count += 1;
        if out.len() < cap {
            out.push(Hom::new_unchecked(g, g, m.to_vec()));
        }
        true
    });
    if count > cap as u64 {
        return Err(Error::AutListTooLarge { count, cap });
    }
    Ok(out)
}

fn generates(g: &GroupTable, set: &[usize]) -> bool {
    g.generated_subgroup(set).len() == g.order()
}

fn in_span_without(g: &GroupTable, set: &[usize], skip: usize) -> bool {
    let rest: Vec<usize> = set.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
    g.generated_subgroup(&rest).contains(set[skip])
}

/// Maximum size of an irredundant generating set. Irredundancy is
/// hereditary, so the search extends a set only while it stays irredundant
/// and stops extending once it generates.
pub fn mu(g: &GroupTable) -> usize {
    fn dfs(g: &GroupTable, set: &mut Vec<usize>, start: usize, best: &mut usize) {
        let span = g.generated_subgroup(set);
        if span.len() == g.order() {
            *best = (*best).max(set.len());
            return;
        }
        for x in start..g.order() {
            if span.contains(x) {
                continue;
            }
            set.push(x);
            let last = set.len() - 1;
            let irredundant = (0..last).all(|i| !in_span_without(g, set, i));
            if irredundant {
                dfs(g, set, x + 1, best);
            }
            set.pop();
        }
    }
    let mut best = 0;
    dfs(g, &mut Vec::new(), 1, &mut best);
    best
}

/// Smallest size of a generating set.
pub fn min_generators(g: &GroupTable) -> usize {
    fn exists(g: &GroupTable, set: &mut Vec<usize>, start: usize, k: usize) -> bool {
        if set.len() == k {
            return generates(g, set);
        }
        let span = g.generated_subgroup(set);
        for x in start..g.order() {
            if span.contains(x) {
                continue;
            }
            set.push(x);
            let hit = exists(g, set, x + 1, k);
            set.pop();
            if hit {
                return true;
            }
        }
        false
    }
    (0..).find(|&k| exists(g, &mut Vec::new(), 1, k)).unwrap()
}
