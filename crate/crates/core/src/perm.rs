//! Permutations in cycle notation and closure of permutation generators
//! into a [`GroupTable`].
//!
//! Products compose left to right: `(x * y)(i) = y(x(i))`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupTable;

pub const DEFAULT_CLOSURE_CAP: usize = 20_000;

/// A permutation of `0..degree`, displayed 1-based in cycle notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i as usize >= images.len() || std::mem::replace(&mut seen[i as usize], true) {
                return Err(Error::InvalidPermutation {
                    text: format!("{images:?}"),
                    reason: "not a bijection".into(),
                });
            }
        }
        Ok(Permutation(images))
    }

    /// Parse 1-based cycle notation such as `(1 2 3)(4 5)`; `()` is the
    /// identity. Commas between points are accepted.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidPermutation { text: text.to_string(), reason: reason.to_string() };
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad("empty"));
        }
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let cycle = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let body = &cycle[..body_end - 1];
            rest = rest[body_end + 1..].trim_start();
            let points = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad("non-numeric point")))
                .collect::<Result<Vec<_>>>()?;
            for &p in &points {
                if p == 0 || p > degree {
                    return Err(bad("point out of range"));
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(bad("point repeated"));
                }
            }
            for w in 0..points.len() {
                let from = points[w] - 1;
                let to = points[(w + 1) % points.len()] - 1;
                images[from] = to as u32;
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut wrote = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Close `generators` under composition and build the Cayley table.
///
/// Elements are numbered in breadth-first order over words in the
/// generators, so the identity is element 0. The returned labels give the
/// permutation of each element.
pub fn from_permutations(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<(GroupTable, Vec<Permutation>)> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::InvalidPermutation { text: g.to_string(), reason: "wrong degree".into() });
        }
    }
    let gens: Vec<&Permutation> = generators.iter().filter(|g| !g.is_identity()).collect();
    let mut elements = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(elements[0].clone(), 0)]);
    // parent[x] = (y, k) with x = y * gens[k]
    let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
    let mut right: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for (k, g) in gens.iter().enumerate() {
            let p = elements[i].then(g);
            let next = elements.len();
            let j = *index.entry(p.clone()).or_insert(next);
            if j == next {
                if next >= cap {
                    return Err(Error::ClosureExceedsCap { cap });
                }
                elements.push(p);
                parent.push((i, k));
            }
            right.push(j);
        }
        i += 1;
    }
    let n = elements.len();
    let ng = gens.len();
    // mul[a][x] for x = y * g_k is mul[a][y] * g_k, and BFS order puts y before x
    let mut mul = vec![0usize; n * n];
    for a in 0..n {
        mul[a * n] = a;
        for x in 1..n {
            let (y, k) = parent[x];
            mul[a * n + x] = right[mul[a * n + y] * ng + k];
        }
    }
    let table = GroupTable::from_mul(n, mul)?;
    Ok((table, elements))
}
