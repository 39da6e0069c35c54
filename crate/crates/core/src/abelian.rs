//! Finite abelian groups: invariant factors, Omega subgroups, the kernel
//! enlargement `X` with `alpha X ≅ Z`, and canonical `alpha`-th roots.
//!
//! Kernel arithmetic is done in coordinates of a [`CyclicSum`]
//! `Z/f_1 ⊕ ... ⊕ Z/f_k`, with elements encoded as mixed-radix indices
//! (first coordinate least significant, so 0 is the identity).

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{gcd, GroupTable, Hom, Subset};

/// `Z/f_1 ⊕ ... ⊕ Z/f_k` in coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicSum {
    factors: Vec<usize>,
    order: usize,
}

impl CyclicSum {
    pub fn new(factors: Vec<usize>) -> Self {
        assert!(factors.iter().all(|&f| f >= 1), "cyclic factors must be positive");
        let order = factors.iter().product();
        CyclicSum { factors, order }
    }

    pub fn trivial() -> Self {
        CyclicSum::new(Vec::new())
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of nontrivial cyclic factors.
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|&&f| f > 1).count()
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.factors.len());
        let mut idx = 0;
        for (&c, &f) in coords.iter().zip(&self.factors).rev() {
            idx = idx * f + c % f;
        }
        idx
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        self.factors
            .iter()
            .map(|&f| {
                let c = idx % f;
                idx /= f;
                c
            })
            .collect()
    }

    /// Apply `op` coordinate-wise to two encoded elements.
    fn zip_with(&self, a: usize, b: usize, op: impl Fn(usize, usize, usize) -> usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut idx = 0;
        let mut stride = 1;
        for &f in &self.factors {
            let c = op(a % f, b % f, f);
            a /= f;
            b /= f;
            idx += c * stride;
            stride *= f;
        }
        idx
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.zip_with(a, b, |x, y, f| (x + y) % f)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.zip_with(a, 0, |x, _, f| (f - x) % f)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, a: usize, k: usize) -> usize {
        self.zip_with(a, 0, |x, _, f| (x * (k % f)) % f)
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.decode(a)
            .iter()
            .zip(&self.factors)
            .map(|(&c, &f)| f / gcd(c, f))
            .fold(1, crate::group::lcm)
    }

    /// Materialise the Cayley table; element `i` is the encoded index `i`.
    pub fn to_group(&self) -> GroupTable {
        let n = self.order;
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(self.add(a, b));
            }
        }
        GroupTable::from_mul(n, mul).expect("direct sum of cyclic groups is a group")
    }

    /// `Ω_m` in coordinates: in `Z/f` it is generated by `f / gcd(f, m)` and
    /// has order `gcd(f, m)`. Returns the subgroup as its own sum together
    /// with the embedding of its encoded elements.
    pub fn omega(&self, m: usize) -> (CyclicSum, Vec<usize>) {
        let sub = CyclicSum::new(self.factors.iter().map(|&f| gcd(f, m)).collect());
        let steps: Vec<usize> = self.factors.iter().map(|&f| f / gcd(f, m)).collect();
        let embed = (0..sub.order())
            .map(|i| {
                let c: Vec<usize> = sub.decode(i).iter().zip(&steps).map(|(&c, &s)| c * s).collect();
                self.encode(&c)
            })
            .collect();
        (sub, embed)
    }

    /// Coordinates of `x` inside `omega(m)`, if `x` lies there.
    pub fn omega_index(&self, x: usize, m: usize) -> Option<usize> {
        let sub = CyclicSum::new(self.factors.iter().map(|&f| gcd(f, m)).collect());
        let mut coords = Vec::with_capacity(self.factors.len());
        for (&c, &f) in self.decode(x).iter().zip(&self.factors) {
            let step = f / gcd(f, m);
            if c % step != 0 {
                return None;
            }
            coords.push(c / step);
        }
        Some(sub.encode(&coords))
    }
}

impl fmt::Display for CyclicSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_factors(&self.factors))
    }
}

/// `[2,4]` style rendering used in reports.
pub fn format_factors(factors: &[usize]) -> String {
    let parts: Vec<String> = factors.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Invariant-factor structure of an abelian [`GroupTable`] with an explicit
/// isomorphism onto the canonical direct sum.
#[derive(Clone, Debug)]
pub struct AbelianType {
    canonical: CyclicSum,
    table: GroupTable,
    iso: Hom,
    from_canonical: Vec<usize>,
}

impl AbelianType {
    /// Invariant factors `m_1 | m_2 | ... | m_k`, each at least 2.
    pub fn factors(&self) -> &[usize] {
        self.canonical.factors()
    }

    /// Minimal number of generators.
    pub fn d(&self) -> usize {
        self.canonical.factors().len()
    }

    pub fn canonical(&self) -> &CyclicSum {
        &self.canonical
    }

    /// Cayley table of the canonical direct sum.
    pub fn canonical_table(&self) -> &GroupTable {
        &self.table
    }

    /// Source element to canonical encoded index.
    pub fn iso(&self) -> &Hom {
        &self.iso
    }

    pub fn to_canonical(&self, x: usize) -> usize {
        self.iso.apply(x)
    }

    pub fn from_canonical(&self, c: usize) -> usize {
        self.from_canonical[c]
    }
}

/// Greedy decomposition: repeatedly pick an element of maximal order modulo
/// the part already split off, correct it so its order equals that relative
/// order, and adjoin the cyclic factor it generates.
pub fn decompose(a: &GroupTable) -> Result<AbelianType> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = a.order();
    let mut coords: Vec<Option<Vec<usize>>> = vec![None; n];
    coords[0] = Some(Vec::new());
    let mut members = vec![0usize];
    let mut basis: Vec<usize> = Vec::new();
    let mut orders: Vec<usize> = Vec::new();
    while members.len() < n {
        // (relative order, element) of maximal relative order, smallest index on ties
        let mut best: Option<(usize, usize)> = None;
        for y in 0..n {
            if coords[y].is_some() {
                continue;
            }
            let mut r = 1;
            let mut p = y;
            while coords[p].is_none() {
                p = a.mul(p, y);
                r += 1;
            }
            if best.is_none_or(|(br, _)| r > br) {
                best = Some((r, y));
            }
        }
        let (r, y) = best.expect("some element lies outside the split part");
        let yr = a.pow(y, r as u64);
        let c = coords[yr].clone().expect("y^r lies in the split part");
        let mut lifted = y;
        for (&b, &ci) in basis.iter().zip(&c) {
            assert!(ci % r == 0, "maximal-order lifting failed; table is not abelian");
            lifted = a.mul(lifted, a.pow(a.inv(b), (ci / r) as u64));
        }
        debug_assert_eq!(a.pow(lifted, r as u64), 0);
        for cs in coords.iter_mut().flatten() {
            cs.push(0);
        }
        let old = members.clone();
        let mut power = 0;
        for t in 1..r {
            power = a.mul(power, lifted);
            for &s in &old {
                let x = a.mul(s, power);
                let mut cx = coords[s].clone().unwrap();
                *cx.last_mut().unwrap() = t;
                debug_assert!(coords[x].is_none());
                coords[x] = Some(cx);
                members.push(x);
            }
        }
        basis.push(lifted);
        orders.push(r);
    }
    // basis orders are non-increasing; canonical order is ascending
    orders.reverse();
    let canonical = CyclicSum::new(orders);
    let table = canonical.to_group();
    let mut to_canonical = vec![0; n];
    let mut from_canonical = vec![0; n];
    for x in 0..n {
        let mut c = coords[x].take().unwrap();
        c.reverse();
        let idx = canonical.encode(&c);
        to_canonical[x] = idx;
        from_canonical[idx] = x;
    }
    let iso = Hom::new_unchecked(a, &table, to_canonical);
    Ok(AbelianType { canonical, table, iso, from_canonical })
}

pub fn d(a: &GroupTable) -> Result<usize> {
    Ok(decompose(a)?.d())
}

/// `Ω_m(A) = { a : a^m = 1 }`.
pub fn omega(a: &GroupTable, m: usize) -> Result<Subset> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    Ok(a.subset(a.elements().filter(|&x| a.pow(x, m as u64) == 0)))
}

/// Smallest `c` in each coordinate with `alpha * c = z`. For the enlarged
/// kernel `⊕ Z/(alpha m_i)` the value `alpha c` lifts to `c`.
pub fn alpha_root(x: &CyclicSum, z: usize, alpha: usize) -> Result<usize> {
    let mut out = Vec::with_capacity(x.factors().len());
    for (&c, &f) in x.decode(z).iter().zip(x.factors()) {
        let root = if f % alpha == 0 {
            (c % alpha == 0).then_some(c / alpha)
        } else {
            (0..f).find(|&r| (r * alpha) % f == c)
        };
        out.push(root.ok_or(Error::NotInImage { alpha })?);
    }
    Ok(x.encode(&out))
}

/// The enlarged kernel `X = ⊕ Z/(alpha m_i)` of `Z = ⊕ Z/m_i`, with
/// `iota` sending the i-th generator of `Z` to `alpha` times the i-th
/// generator of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enlargement {
    pub alpha: usize,
    pub source: CyclicSum,
    pub x: CyclicSum,
}

impl Enlargement {
    pub fn iota(&self, z: usize) -> usize {
        let c: Vec<usize> = self.source.decode(z).iter().map(|&c| c * self.alpha).collect();
        self.x.encode(&c)
    }

    pub fn alpha_root(&self, x: usize) -> Result<usize> {
        alpha_root(&self.x, x, self.alpha)
    }

    /// Cayley table of `X`, its invariant-factor type and `iota` as a
    /// homomorphism out of the canonical table of `Z`.
    pub fn materialize(&self, source_table: &GroupTable) -> Result<(GroupTable, AbelianType, Hom)> {
        assert_eq!(source_table.order(), self.source.order());
        let xt = self.x.to_group();
        let ty = decompose(&xt)?;
        let image = (0..self.source.order()).map(|z| self.iota(z)).collect();
        let hom = Hom::new(source_table, &xt, image)?;
        Ok((xt, ty, hom))
    }
}

pub fn enlarge(z: &AbelianType, alpha: usize) -> Enlargement {
    enlarge_sum(z.canonical(), alpha)
}

pub fn enlarge_sum(z: &CyclicSum, alpha: usize) -> Enlargement {
    assert!(alpha >= 1);
    Enlargement {
        alpha,
        source: z.clone(),
        x: CyclicSum::new(z.factors().iter().map(|&m| m * alpha).collect()),
    }
}
