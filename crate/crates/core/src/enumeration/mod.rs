//! All groups of a given order up to isomorphism.
//!
//! Orders below 64 other than 60 only admit solvable groups, and a solvable
//! group has a normal subgroup `N` of prime index `p`. Every such group is
//! then `⟨N, t | t^p = a, t x t^-1 = φ(x)⟩` for an automorphism `φ` of `N`
//! and an `a ∈ N` with `φ(a) = a` and `φ^p = (x -> a x a^-1)`. Candidates are
//! built for every `(p, N, φ, a)` and deduplicated by fingerprint bucket and
//! explicit isomorphism.

mod brute;
mod catalog;

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::iso::{aut_list, find_isomorphism, Fingerprint, DEFAULT_AUT_CAP};
use crate::perm::{from_permutations, Permutation};

pub use brute::brute_force_groups;
pub use catalog::{catalog_load, catalog_path, catalog_store, CatalogLoad};

pub const DEFAULT_ORDER_CAP: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    BruteForce,
    CyclicExtension,
    Fixture,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::BruteForce => "brute-force",
            Provenance::CyclicExtension => "cyclic-extension",
            Provenance::Fixture => "fixture",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "brute-force" => Some(Provenance::BruteForce),
            "cyclic-extension" => Some(Provenance::CyclicExtension),
            "fixture" => Some(Provenance::Fixture),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub order: usize,
    pub group: GroupTable,
    pub fingerprint: Fingerprint,
    pub provenance: Provenance,
}

impl CatalogEntry {
    pub fn new(group: GroupTable, provenance: Provenance) -> Self {
        let fingerprint = Fingerprint::of(&group);
        CatalogEntry { order: group.order(), group, fingerprint, provenance }
    }
}

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    pub order_cap: usize,
    /// Admit order 60 by adding the alternating group A5 to the candidates.
    pub include_a5: bool,
    pub aut_cap: usize,
    /// Directory for persisted catalogs; `None` keeps everything in memory.
    pub catalog_dir: Option<PathBuf>,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig { order_cap: DEFAULT_ORDER_CAP, include_a5: false, aut_cap: DEFAULT_AUT_CAP, catalog_dir: None }
    }
}

/// Memoizing generator; smaller orders are produced on demand.
#[derive(Debug, Default)]
pub struct Enumerator {
    config: EnumerationConfig,
    cache: HashMap<usize, Vec<CatalogEntry>>,
}

impl Enumerator {
    pub fn new(config: EnumerationConfig) -> Self {
        Enumerator { config, cache: HashMap::new() }
    }

    pub fn config(&self) -> &EnumerationConfig {
        &self.config
    }

    pub fn groups_of_order(&mut self, n: usize) -> Result<&[CatalogEntry]> {
        self.ensure(n)?;
        Ok(&self.cache[&n])
    }

    fn ensure(&mut self, n: usize) -> Result<()> {
        if self.cache.contains_key(&n) {
            return Ok(());
        }
        if n == 0 || n > self.config.order_cap {
            return Err(Error::OrderOutOfRange { n, cap: self.config.order_cap });
        }
        if n == 60 && !self.config.include_a5 {
            return Err(Error::NonSolvableOrderUnsupported { n });
        }
        if let Some(dir) = &self.config.catalog_dir {
            let loaded = catalog_load(dir, n)?;
            if !loaded.needs_generation {
                self.cache.insert(n, loaded.entries);
                return Ok(());
            }
        }
        let entries = self.generate(n)?;
        if let Some(dir) = &self.config.catalog_dir {
            catalog_store(dir, n, &entries)?;
        }
        self.cache.insert(n, entries);
        Ok(())
    }

    fn generate(&mut self, n: usize) -> Result<Vec<CatalogEntry>> {
        if n == 1 {
            return Ok(vec![CatalogEntry::new(GroupTable::trivial(), Provenance::CyclicExtension)]);
        }
        let mut candidates: Vec<CatalogEntry> = Vec::new();
        for p in prime_divisors(n) {
            self.ensure(n / p)?;
            let bases = self.cache[&(n / p)].clone();
            for base in &bases {
                candidates.extend(cyclic_extensions(&base.group, p, self.config.aut_cap)?);
            }
        }
        if n == 60 {
            candidates.push(CatalogEntry::new(alternating5(), Provenance::Fixture));
        }
        Ok(deduplicate(candidates))
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Every group `⟨N, t | t^p = a, t x t^-1 = φ(x)⟩` over all admissible
/// `(φ, a)`, in a deterministic order. Element `x t^i` has index
/// `x + |N| i`.
pub fn cyclic_extensions(base: &GroupTable, p: usize, aut_cap: usize) -> Result<Vec<CatalogEntry>> {
    let auts = aut_list(base, aut_cap)?;
    let m = base.order();
    let per_aut: Vec<Vec<CatalogEntry>> = auts
        .par_iter()
        .map(|phi| {
            let phi = phi.image();
            let mut phi_p: Vec<usize> = base.elements().collect();
            for _ in 0..p {
                phi_p = phi_p.iter().map(|&x| phi[x]).collect();
            }
            let mut out = Vec::new();
            for a in base.elements() {
                if phi[a] != a {
                    continue;
                }
                let ainv = base.inv(a);
                if base.elements().any(|x| phi_p[x] != base.mul(base.mul(a, x), ainv)) {
                    continue;
                }
                // powers φ^i for the twist x t^i y t^j = x φ^i(y) t^(i+j)
                let mut powers: Vec<Vec<usize>> = vec![base.elements().collect()];
                for i in 1..p {
                    let prev = &powers[i - 1];
                    powers.push(prev.iter().map(|&x| phi[x]).collect());
                }
                let n = m * p;
                let mut mul = Vec::with_capacity(n * n);
                for u in 0..n {
                    let (x, i) = (u % m, u / m);
                    for v in 0..n {
                        let (y, j) = (v % m, v / m);
                        let mut z = base.mul(x, powers[i][y]);
                        let mut k = i + j;
                        if k >= p {
                            z = base.mul(z, a);
                            k -= p;
                        }
                        mul.push(z + m * k);
                    }
                }
                let g = GroupTable::from_mul(n, mul).expect("cyclic extension data defines a group");
                out.push(CatalogEntry::new(g, Provenance::CyclicExtension));
            }
            out
        })
        .collect();
    Ok(per_aut.into_iter().flatten().collect())
}

/// Keep the first representative of each isomorphism class, ordered by
/// fingerprint and then by position in the candidate stream.
pub fn deduplicate(candidates: Vec<CatalogEntry>) -> Vec<CatalogEntry> {
    let mut buckets: BTreeMap<Fingerprint, Vec<CatalogEntry>> = BTreeMap::new();
    for c in candidates {
        let reps = buckets.entry(c.fingerprint.clone()).or_default();
        if reps.iter().all(|r| find_isomorphism(&r.group, &c.group).is_none()) {
            reps.push(c);
        }
    }
    buckets.into_values().flatten().collect()
}

/// A5 generated by `(1 2 3 4 5)` and `(1 2 3)`.
pub fn alternating5() -> GroupTable {
    let gens = [Permutation::parse("(1 2 3 4 5)", 5).unwrap(), Permutation::parse("(1 2 3)", 5).unwrap()];
    from_permutations(5, &gens, 100).unwrap().0
}
