//! Finite groups as multiplication tables, with subsets, homomorphisms and
//! the usual subgroup machinery (closure, center, centralizers, commutator
//! subgroups, quotients).
//!
//! Elements are indices `0..n` and the identity is always index `0`.

use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Identity token of a constructed table. Clones share it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId(u64);

impl GroupId {
    fn fresh() -> Self {
        GroupId(NEXT_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// A finite group given by its full Cayley table.
#[derive(Clone)]
pub struct GroupTable {
    id: GroupId,
    n: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable").field("order", &self.n).finish_non_exhaustive()
    }
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.mul == other.mul
    }
}

impl Eq for GroupTable {}

impl GroupTable {
    /// Validate a user-supplied multiplication table.
    ///
    /// The identity is relabeled to index 0 by swapping it with the element
    /// currently at 0. Error locations refer to the labels of the input.
    /// Associativity is checked on all `n^3` triples so the first violating
    /// triple (lexicographically) is reported.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        let mut mul = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RaggedTable { row: r, len: row.len(), expected: n });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::EntryOutOfRange { row: r, col: c, value: v, n });
                }
            }
            mul.extend_from_slice(row);
        }
        check_latin(n, &mul)?;
        let e = find_identity(n, &mul).ok_or(Error::NoIdentity)?;
        check_inverses(n, &mul, e)?;
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let mul = if e == 0 { mul } else { swap_labels(n, &mul, e) };
        Ok(Self::assemble(n, mul))
    }

    /// Validate a table produced by one of this crate's constructions. The
    /// identity must already sit at index 0.
    ///
    /// Performs the same checks as [`GroupTable::from_table`] except that
    /// associativity uses Light's test over a magma generating set, which is
    /// complete but costs `O(n^2 log n)` instead of `O(n^3)`.
    pub(crate) fn from_mul(n: usize, mul: Vec<usize>) -> Result<Self> {
        assert_eq!(mul.len(), n * n);
        check_latin(n, &mul)?;
        if find_identity(n, &mul) != Some(0) {
            return Err(Error::NoIdentity);
        }
        check_inverses(n, &mul, 0)?;
        check_associative_light(n, &mul)?;
        Ok(Self::assemble(n, mul))
    }

    fn assemble(n: usize, mul: Vec<usize>) -> Self {
        let mut inv = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    inv[a] = b;
                    break;
                }
            }
        }
        GroupTable { id: GroupId::fresh(), n, mul, inv }
    }

    pub fn trivial() -> Self {
        Self::assemble(1, vec![0])
    }

    /// The cyclic group `Z/n` with element `k` the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push((a + b) % n);
            }
        }
        Self::assemble(n, mul)
    }

    /// `A x B` with `(a, b)` at index `a + |A| * b`.
    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Self {
        let (na, nb) = (a.n, b.n);
        let n = na * nb;
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            let (xa, xb) = (x % na, x / na);
            for y in 0..n {
                let (ya, yb) = (y % na, y / na);
                mul.push(a.mul(xa, ya) + na * b.mul(xb, yb));
            }
        }
        Self::assemble(n, mul)
    }

    /// Re-run every structural check, including exhaustive associativity.
    pub fn validate(&self) -> Result<()> {
        let rows = self.rows();
        GroupTable::from_table(&rows).map(|_| ())
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let mut base = a;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `g^-1 a g`.
    pub fn conjugate(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|a| self.element_order(a)).collect()
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subset {
        Subset { parent: self.id, members: (0..self.n).collect(), subgroup: true }
    }

    pub fn trivial_subgroup(&self) -> Subset {
        Subset { parent: self.id, members: vec![0], subgroup: true }
    }

    /// An arbitrary subset; the `subgroup` flag is computed.
    pub fn subset<I: IntoIterator<Item = usize>>(&self, members: I) -> Subset {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        assert!(members.last().is_none_or(|&m| m < self.n), "subset member out of range");
        let mut s = Subset { parent: self.id, members, subgroup: false };
        s.subgroup = self.is_closed(&s);
        s
    }

    fn is_closed(&self, s: &Subset) -> bool {
        if s.members.first() != Some(&0) {
            return false;
        }
        let mut mask = vec![false; self.n];
        for &m in &s.members {
            mask[m] = true;
        }
        s.members.iter().all(|&a| mask[self.inv(a)] && s.members.iter().all(|&b| mask[self.mul(a, b)]))
    }

    /// Closure of `seeds` under multiplication and inversion.
    pub fn generated_subgroup(&self, seeds: &[usize]) -> Subset {
        let mut mask = vec![false; self.n];
        self.close_into(&mut mask, seeds);
        self.subset_from_mask(&mask)
    }

    /// Grow `mask` (assumed to be a subgroup or empty) to the subgroup
    /// generated by it together with `seeds`.
    pub(crate) fn close_into(&self, mask: &mut [bool], seeds: &[usize]) {
        let mut gens: Vec<usize> = seeds.to_vec();
        let mut queue: VecDeque<usize> = VecDeque::new();
        let mut members: Vec<usize> = (0..self.n).filter(|&x| mask[x]).collect();
        for &m in &members {
            gens.push(m);
        }
        gens.sort_unstable();
        gens.dedup();
        if !mask[0] {
            mask[0] = true;
            members.push(0);
        }
        queue.extend(members.iter().copied());
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }

    pub(crate) fn subset_from_mask(&self, mask: &[bool]) -> Subset {
        Subset {
            parent: self.id,
            members: (0..self.n).filter(|&x| mask[x]).collect(),
            subgroup: true,
        }
    }

    pub fn is_normal(&self, s: &Subset) -> bool {
        self.check_parent(s);
        if !s.subgroup {
            return false;
        }
        let mut mask = vec![false; self.n];
        for &m in &s.members {
            mask[m] = true;
        }
        (0..self.n).all(|g| s.members.iter().all(|&m| mask[self.conjugate(m, g)]))
    }

    pub fn commutator_subgroup(&self) -> Subset {
        let mut seen = vec![false; self.n];
        let mut seeds = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.commutator(a, b);
                if !seen[c] {
                    seen[c] = true;
                    seeds.push(c);
                }
            }
        }
        self.generated_subgroup(&seeds)
    }

    /// Subgroup generated by all `[a, b]` with `a ∈ x`, `b ∈ y`.
    pub fn commutator_of(&self, x: &Subset, y: &Subset) -> Subset {
        let mut seeds = Vec::new();
        for &a in &x.members {
            for &b in &y.members {
                seeds.push(self.commutator(a, b));
            }
        }
        seeds.sort_unstable();
        seeds.dedup();
        self.generated_subgroup(&seeds)
    }

    pub fn center(&self) -> Subset {
        self.centralizer(&self.whole())
    }

    pub fn centralizer(&self, s: &Subset) -> Subset {
        self.check_parent(s);
        let members = (0..self.n)
            .filter(|&h| s.members.iter().all(|&x| self.mul(h, x) == self.mul(x, h)))
            .collect();
        Subset { parent: self.id, members, subgroup: true }
    }

    /// Every subgroup of `s` (itself a subgroup), smallest first. Built by
    /// repeatedly adjoining one element, so cost grows with the lattice.
    pub fn subgroups_of(&self, s: &Subset) -> Vec<Subset> {
        self.check_parent(s);
        assert!(s.subgroup, "subgroups_of needs a subgroup");
        let mut seen = std::collections::HashSet::new();
        let mut queue = vec![self.trivial_subgroup()];
        seen.insert(queue[0].members.clone());
        let mut i = 0;
        while i < queue.len() {
            let cur = queue[i].clone();
            for &x in &s.members {
                if cur.contains(x) {
                    continue;
                }
                let mut seeds = cur.members.clone();
                seeds.push(x);
                let next = self.generated_subgroup(&seeds);
                if seen.insert(next.members.clone()) {
                    queue.push(next);
                }
            }
            i += 1;
        }
        queue.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
        queue
    }

    /// Orders of the derived series `G ≥ G' ≥ G'' ≥ ...` down to the point
    /// where it stabilises.
    pub fn derived_series_orders(&self) -> Vec<usize> {
        let mut out = vec![self.n];
        let mut cur = self.clone();
        loop {
            let d = cur.commutator_subgroup();
            if d.len() == cur.order() {
                break;
            }
            out.push(d.len());
            cur = cur.subgroup_table(&d).0;
        }
        out
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for a in 0..self.n {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = Vec::new();
            for g in 0..self.n {
                let c = self.conjugate(a, g);
                if !seen[c] {
                    seen[c] = true;
                    class.push(c);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// The quotient `G/N` by cosets, with coset `i` represented by its
    /// smallest element; the identity coset is index 0.
    pub fn quotient(&self, normal: &Subset) -> Result<(GroupTable, Hom)> {
        self.check_parent(normal);
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let (reps, coset_of) = self.cosets(normal);
        let q = reps.len();
        let mut mul = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                mul.push(coset_of[self.mul(a, b)]);
            }
        }
        let table = GroupTable::from_mul(q, mul)?;
        let proj = Hom { domain: self.id, codomain: table.id, image: coset_of };
        Ok((table, proj))
    }

    /// Left cosets of `s`: sorted representatives (smallest element of each
    /// coset) and the coset index of every element.
    pub fn cosets(&self, s: &Subset) -> (Vec<usize>, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &m in &s.members {
                coset_of[self.mul(g, m)] = idx;
            }
        }
        (reps, coset_of)
    }

    /// Materialise a subgroup as its own table. Element `i` of the result is
    /// `members[i]`, so the returned embedding is increasing.
    pub fn subgroup_table(&self, s: &Subset) -> (GroupTable, Hom) {
        self.check_parent(s);
        assert!(s.subgroup, "subgroup_table needs a subgroup");
        let k = s.members.len();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &m) in s.members.iter().enumerate() {
            pos[m] = i;
        }
        let mut mul = Vec::with_capacity(k * k);
        for &a in &s.members {
            for &b in &s.members {
                mul.push(pos[self.mul(a, b)]);
            }
        }
        let table = GroupTable::assemble(k, mul);
        let emb = Hom { domain: table.id, codomain: self.id, image: s.members.clone() };
        (table, emb)
    }

    fn check_parent(&self, s: &Subset) {
        assert_eq!(s.parent, self.id, "subset belongs to a different group");
    }
}

/// A subset of a specific [`GroupTable`]. Equality requires the same parent.
#[derive(Clone, Debug)]
pub struct Subset {
    parent: GroupId,
    members: Vec<usize>,
    subgroup: bool,
}

impl PartialEq for Subset {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subset {}

impl Subset {
    pub fn parent(&self) -> GroupId {
        self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subgroup(&self) -> bool {
        self.subgroup
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.parent == other.parent && self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        assert_eq!(self.parent, other.parent);
        Subset {
            parent: self.parent,
            members: self.members.iter().copied().filter(|&m| other.contains(m)).collect(),
            subgroup: self.subgroup && other.subgroup,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }
}

/// A homomorphism given by the image of every domain element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    domain: GroupId,
    codomain: GroupId,
    image: Vec<usize>,
}

impl Hom {
    /// Check the homomorphism property on all pairs.
    pub fn new(domain: &GroupTable, codomain: &GroupTable, image: Vec<usize>) -> Result<Self> {
        assert_eq!(image.len(), domain.order());
        assert!(image.iter().all(|&y| y < codomain.order()));
        if image[0] != 0 {
            return Err(Error::NotAHomomorphism { x: 0, y: 0 });
        }
        for x in domain.elements() {
            for y in domain.elements() {
                if image[domain.mul(x, y)] != codomain.mul(image[x], image[y]) {
                    return Err(Error::NotAHomomorphism { x, y });
                }
            }
        }
        Ok(Hom { domain: domain.id(), codomain: codomain.id(), image })
    }

    pub(crate) fn new_unchecked(domain: &GroupTable, codomain: &GroupTable, image: Vec<usize>) -> Self {
        debug_assert_eq!(image.len(), domain.order());
        Hom { domain: domain.id(), codomain: codomain.id(), image }
    }

    pub fn identity(g: &GroupTable) -> Self {
        Hom { domain: g.id(), codomain: g.id(), image: g.elements().collect() }
    }

    pub fn domain(&self) -> GroupId {
        self.domain
    }

    pub fn codomain(&self) -> GroupId {
        self.codomain
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// Re-verify against concrete tables.
    pub fn is_homomorphism(&self, domain: &GroupTable, codomain: &GroupTable) -> bool {
        self.domain == domain.id()
            && self.codomain == codomain.id()
            && Hom::new(domain, codomain, self.image.clone()).is_ok()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.image.iter().max().map_or(0, |&m| m + 1)];
        self.image.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self, codomain: &GroupTable) -> bool {
        let mut seen = vec![false; codomain.order()];
        for &y in &self.image {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self, codomain: &GroupTable) -> bool {
        self.image.len() == codomain.order() && self.is_injective()
    }

    pub fn kernel(&self, domain: &GroupTable) -> Subset {
        assert_eq!(self.domain, domain.id());
        let members = (0..self.image.len()).filter(|&x| self.image[x] == 0).collect();
        Subset { parent: self.domain, members, subgroup: true }
    }

    pub fn image_subset(&self, codomain: &GroupTable) -> Subset {
        assert_eq!(self.codomain, codomain.id());
        codomain.subset(self.image.iter().copied())
    }

    pub fn map_subset(&self, s: &Subset, codomain: &GroupTable) -> Subset {
        assert_eq!(s.parent, self.domain);
        assert_eq!(self.codomain, codomain.id());
        codomain.subset(s.members.iter().map(|&x| self.image[x]))
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &Hom) -> Hom {
        assert_eq!(self.codomain, other.domain);
        Hom {
            domain: self.domain,
            codomain: other.codomain,
            image: self.image.iter().map(|&y| other.image[y]).collect(),
        }
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<Hom> {
        let mut inv = vec![usize::MAX; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            if y >= inv.len() || inv[y] != usize::MAX {
                return None;
            }
            inv[y] = x;
        }
        Some(Hom { domain: self.codomain, codomain: self.domain, image: inv })
    }
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

fn check_latin(n: usize, mul: &[usize]) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for r in 0..n {
        for c in 0..n {
            let v = mul[r * n + c];
            if seen[v] == r {
                return Err(Error::NotLatinSquare { row: r, col: c, value: v });
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..n {
        for r in 0..n {
            let v = mul[r * n + c];
            if seen[v] == c {
                return Err(Error::NotLatinSquare { row: r, col: c, value: v });
            }
            seen[v] = c;
        }
    }
    Ok(())
}

fn find_identity(n: usize, mul: &[usize]) -> Option<usize> {
    (0..n).find(|&e| (0..n).all(|x| mul[e * n + x] == x && mul[x * n + e] == x))
}

fn check_inverses(n: usize, mul: &[usize], e: usize) -> Result<()> {
    for x in 0..n {
        let y = (0..n).find(|&y| mul[x * n + y] == e).ok_or(Error::NoInverse { element: x })?;
        if mul[y * n + x] != e {
            return Err(Error::NoInverse { element: x });
        }
    }
    Ok(())
}

fn swap_labels(n: usize, mul: &[usize], e: usize) -> Vec<usize> {
    let relabel = |x: usize| {
        if x == e {
            0
        } else if x == 0 {
            e
        } else {
            x
        }
    };
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[relabel(a) * n + relabel(b)] = relabel(mul[a * n + b]);
        }
    }
    out
}

/// Greedy generating set of the table viewed as a magma. In a finite
/// Latin square every multiplicatively closed subset is a subquasigroup, so
/// plain product closure suffices.
fn magma_generators(n: usize, mul: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut gens = Vec::new();
    while let Some(x) = (0..n).find(|&x| !inside[x]) {
        gens.push(x);
        let mut queue = VecDeque::from([x]);
        inside[x] = true;
        while let Some(y) = queue.pop_front() {
            members.push(y);
            for i in 0..members.len() {
                let m = members[i];
                for p in [mul[y * n + m], mul[m * n + y]] {
                    if !inside[p] {
                        inside[p] = true;
                        queue.push_back(p);
                    }
                }
            }
        }
    }
    gens
}

/// Light's associativity test: the elements `g` with `(xg)y = x(gy)` for
/// all `x, y` form a submagma, so checking a generating set is enough.
fn check_associative_light(n: usize, mul: &[usize]) -> Result<()> {
    for g in magma_generators(n, mul) {
        for x in 0..n {
            let xg = mul[x * n + g];
            for y in 0..n {
                if mul[xg * n + y] != mul[x * n + mul[g * n + y]] {
                    return Err(Error::NotAssociative { a: x, b: g, c: y });
                }
            }
        }
    }
    Ok(())
}
