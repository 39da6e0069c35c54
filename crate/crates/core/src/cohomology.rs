//! Central extensions through normalized 2-cocycles with trivial action,
//! and the reduction of an integral `H` to an integral of bounded order.
//!
//! A cocycle `δ: Q × Q -> A` defines the twisted product on `A × Q`:
//!
//! ```text
//! (z1, h1)(z2, h2) = (z1 + z2 + δ(h1, h2), h1 h2)
//! ```
//!
//! The reduction replaces the kernel `Z(H)` by an enlarged `X` with
//! `α X ≅ Z(H)` (`α = |H/Z(H)|`), shifts the pushed-forward cocycle by the
//! coboundary of `Ψ = -β∘Φ` (with `Φ` the transfer and `β` the canonical
//! `α`-th root) so that every value lands in `Ω_α(X)`, and rebuilds the
//! extension over `Ω_α(X)` alone.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{decompose, enlarge_sum, format_factors, AbelianType, CyclicSum, Enlargement};
use crate::error::{Error, Result};
use crate::group::{GroupTable, Hom, Subset};
use crate::iso::isomorphic;

/// A normalized 2-cocycle `Q × Q -> A` (trivial action), `A` given in
/// coordinates. Values are encoded kernel elements, row-major.
#[derive(Clone, Debug)]
pub struct CentralCocycle {
    quotient: GroupTable,
    kernel: CyclicSum,
    values: Vec<usize>,
}

impl CentralCocycle {
    /// Checks normalization on the border and the cocycle identity
    /// `δ(a,b) + δ(ab,c) = δ(b,c) + δ(a,bc)` on all triples.
    pub fn new(quotient: GroupTable, kernel: CyclicSum, values: Vec<usize>) -> Result<Self> {
        let n = quotient.order();
        if values.len() != n * n {
            return Err(Error::CocycleInvalid(format!("expected {} values, got {}", n * n, values.len())));
        }
        if let Some(i) = values.iter().position(|&v| v >= kernel.order()) {
            return Err(Error::CocycleInvalid(format!("value at ({}, {}) is not a kernel element", i / n, i % n)));
        }
        let c = CentralCocycle { quotient, kernel, values };
        c.check()?;
        Ok(c)
    }

    pub fn zero(quotient: GroupTable, kernel: CyclicSum) -> Self {
        let n = quotient.order();
        CentralCocycle { quotient, kernel, values: vec![0; n * n] }
    }

    /// The coboundary `(a, b) -> ψ(a) + ψ(b) - ψ(ab)`.
    pub fn coboundary(quotient: GroupTable, kernel: CyclicSum, psi: &[usize]) -> Result<Self> {
        if psi[0] != 0 {
            return Err(Error::NotNormalizedShift);
        }
        let zero = CentralCocycle::zero(quotient, kernel);
        shift_cocycle(&zero, psi)
    }

    fn check(&self) -> Result<()> {
        let n = self.quotient.order();
        for q in 0..n {
            if self.value(0, q) != 0 || self.value(q, 0) != 0 {
                return Err(Error::CocycleInvalid(format!("not normalized at element {q}")));
            }
        }
        let (g, k) = (&self.quotient, &self.kernel);
        let bad = (0..n).into_par_iter().find_first(|&a| {
            (0..n).any(|b| {
                let ab = g.mul(a, b);
                (0..n).any(|c| {
                    let lhs = k.add(self.value(a, b), self.value(ab, c));
                    let rhs = k.add(self.value(b, c), self.value(a, g.mul(b, c)));
                    lhs != rhs
                })
            })
        });
        match bad {
            Some(a) => Err(Error::CocycleInvalid(format!("cocycle identity fails with first argument {a}"))),
            None => Ok(()),
        }
    }

    pub fn quotient(&self) -> &GroupTable {
        &self.quotient
    }

    pub fn kernel(&self) -> &CyclicSum {
        &self.kernel
    }

    #[inline]
    pub fn value(&self, a: usize, b: usize) -> usize {
        self.values[a * self.quotient.order() + b]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `|Q|`, which annihilates the cohomology class.
    pub fn alpha(&self) -> usize {
        self.quotient.order()
    }

    /// Push the values through a kernel homomorphism `f` into `kernel`.
    pub fn map_kernel(&self, kernel: CyclicSum, f: impl Fn(usize) -> usize) -> Result<Self> {
        let values = self.values.iter().map(|&v| f(v)).collect();
        CentralCocycle::new(self.quotient.clone(), kernel, values)
    }
}

/// The data `cocycle_from_extension` extracts from `1 -> Z -> H -> H/Z -> 1`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub cocycle: CentralCocycle,
    /// Coset of `Z` to its smallest element; the identity coset maps to 0.
    pub transversal: Vec<usize>,
    pub kernel_type: AbelianType,
    pub projection: Hom,
    /// Kernel coordinate of each element of `Z`, `None` outside `Z`.
    kernel_coords: Vec<Option<usize>>,
}

impl Extension {
    /// Image of `h = z σ(q)` in the twisted product, as the index `z + |Z| q`.
    pub fn to_twisted(&self, h: &GroupTable, x: usize) -> usize {
        let q = self.projection.apply(x);
        let z = h.mul(x, h.inv(self.transversal[q]));
        let zc = self.kernel_coords[z].expect("x σ(q)^-1 lies in the kernel");
        zc + self.cocycle.kernel().order() * q
    }

    pub fn kernel_coord(&self, x: usize) -> Option<usize> {
        self.kernel_coords[x]
    }
}

/// `δ(q1, q2) = σ(q1) σ(q2) σ(q1 q2)^-1` for the smallest-element
/// transversal `σ`, written in coordinates of `Z`.
pub fn cocycle_from_extension(h: &GroupTable, z: &Subset) -> Result<Extension> {
    let central = z.is_subgroup() && z.iter().all(|a| h.elements().all(|x| h.mul(a, x) == h.mul(x, a)));
    if !central {
        return Err(Error::NotCentral);
    }
    let (q, projection) = h.quotient(z)?;
    let (transversal, _) = h.cosets(z);
    let (zt, _) = h.subgroup_table(z);
    let kernel_type = decompose(&zt)?;
    let mut kernel_coords = vec![None; h.order()];
    for (i, a) in z.iter().enumerate() {
        kernel_coords[a] = Some(kernel_type.to_canonical(i));
    }
    let n = q.order();
    let mut values = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let ab = q.mul(a, b);
            let x = h.mul(h.mul(transversal[a], transversal[b]), h.inv(transversal[ab]));
            values.push(kernel_coords[x].expect("σ(a)σ(b)σ(ab)^-1 lies in the kernel"));
        }
    }
    let cocycle = CentralCocycle::new(q, kernel_type.canonical().clone(), values)?;
    Ok(Extension { cocycle, transversal, kernel_type, projection, kernel_coords })
}

#[derive(Clone, Debug)]
pub struct TwistedProduct {
    /// Element `(z, q)` sits at index `z + |A| q`.
    pub group: GroupTable,
    pub kernel_table: GroupTable,
    pub embedding: Hom,
    pub projection: Hom,
}

pub fn twisted_product(delta: &CentralCocycle) -> Result<TwistedProduct> {
    let a = delta.kernel().to_group();
    let q = delta.quotient();
    let (na, nq) = (a.order(), q.order());
    let n = na * nq;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (z1, h1) = (x % na, x / na);
        for y in 0..n {
            let (z2, h2) = (y % na, y / na);
            let z = a.mul(a.mul(z1, z2), delta.value(h1, h2));
            mul.push(z + na * q.mul(h1, h2));
        }
    }
    let group = GroupTable::from_mul(n, mul)?;
    let embedding = Hom::new_unchecked(&a, &group, (0..na).collect());
    let projection = Hom::new_unchecked(&group, q, (0..n).map(|x| x / na).collect());
    Ok(TwistedProduct { group, kernel_table: a, embedding, projection })
}

/// `Φ(h) = Σ_k δ(h, k)`, verified against `∂Φ = α δ` on every pair.
pub fn transfer_phi(delta: &CentralCocycle) -> Result<Vec<usize>> {
    let (q, k) = (delta.quotient(), delta.kernel());
    let n = q.order();
    let phi: Vec<usize> = (0..n).map(|h| (0..n).fold(0, |acc, j| k.add(acc, delta.value(h, j)))).collect();
    let alpha = delta.alpha();
    for a in 0..n {
        for b in 0..n {
            let lhs = k.sub(k.add(phi[a], phi[b]), phi[q.mul(a, b)]);
            if lhs != k.scale(delta.value(a, b), alpha) {
                return Err(Error::TransferFailed { q1: a, q2: b });
            }
        }
    }
    Ok(phi)
}

/// `δ + ∂ψ`. Requires `ψ(1) = 0` so the result stays normalized.
pub fn shift_cocycle(delta: &CentralCocycle, psi: &[usize]) -> Result<CentralCocycle> {
    if psi.first() != Some(&0) {
        return Err(Error::NotNormalizedShift);
    }
    let (q, k) = (delta.quotient(), delta.kernel());
    let n = q.order();
    assert_eq!(psi.len(), n);
    let mut values = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let db = k.sub(k.add(psi[a], psi[b]), psi[q.mul(a, b)]);
            values.push(k.add(delta.value(a, b), db));
        }
    }
    CentralCocycle::new(q.clone(), k.clone(), values)
}

#[derive(Clone, Debug)]
pub struct TransferData {
    /// `Φ: Q -> A` with `∂Φ = α δ`.
    pub phi: Vec<usize>,
    /// `Ψ(h) = -β(Φ(h))` in `X`.
    pub psi: Vec<usize>,
    /// `β(Φ(h))`, the canonical `α`-th root of `ι(Φ(h))` in `X`.
    pub roots: Vec<usize>,
}

/// Everything produced on the way from `δ` to the shifted cocycle `δ' + b`.
#[derive(Clone, Debug)]
pub struct ShiftedCocycle {
    pub enlargement: Enlargement,
    /// `ι∘δ`, valued in `X`.
    pub pushed: CentralCocycle,
    pub transfer: TransferData,
    /// `δ' + ∂Ψ`, valued in `X` but with every value in `Ω_α(X)`.
    pub shifted: CentralCocycle,
}

/// Enlarge the kernel along `α = |Q|` and shift by the transfer coboundary.
pub fn shift_into_omega(delta: &CentralCocycle) -> Result<ShiftedCocycle> {
    let alpha = delta.alpha();
    let enlargement = enlarge_sum(delta.kernel(), alpha);
    let x = enlargement.x.clone();
    let pushed = delta.map_kernel(x.clone(), |v| enlargement.iota(v))?;
    let phi = transfer_phi(delta)?;
    let roots = phi.iter().map(|&p| enlargement.alpha_root(enlargement.iota(p))).collect::<Result<Vec<_>>>()?;
    let psi: Vec<usize> = roots.iter().map(|&r| x.neg(r)).collect();
    let shifted = shift_cocycle(&pushed, &psi)?;
    Ok(ShiftedCocycle { enlargement, pushed, transfer: TransferData { phi, psi, roots }, shifted })
}

/// Re-express a cocycle whose values all lie in `Ω_α(X)` over `Ω_α(X)`.
pub fn restrict_to_omega(shifted: &CentralCocycle, alpha: usize) -> Result<CentralCocycle> {
    let x = shifted.kernel();
    let (omega, _) = x.omega(alpha);
    let n = shifted.quotient().order();
    let mut values = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let v = x.omega_index(shifted.value(a, b), alpha).ok_or(Error::ValueEscapedOmega { q1: a, q2: b })?;
            values.push(v);
        }
    }
    CentralCocycle::new(shifted.quotient().clone(), omega, values)
}

/// Structure of a derived subgroup as it appears in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedType {
    pub order: usize,
    /// Invariant factors when abelian.
    pub abelian_factors: Option<Vec<usize>>,
}

impl DerivedType {
    pub fn of(g: &GroupTable) -> Self {
        DerivedType { order: g.order(), abelian_factors: decompose(g).ok().map(|t| t.factors().to_vec()) }
    }
}

impl std::fmt::Display for DerivedType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.abelian_factors {
            Some(fs) if fs.is_empty() => write!(f, "trivial"),
            Some(fs) if fs.len() == 1 => write!(f, "C{}", fs[0]),
            Some(fs) => write!(f, "abelian {}", format_factors(fs)),
            None => write!(f, "nonabelian of order {}", self.order),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub input_order: usize,
    pub center_order: usize,
    pub alpha: usize,
    pub center_factors: Vec<usize>,
    pub x_factors: Vec<usize>,
    pub omega_order: usize,
    pub output_order: usize,
    pub input_derived: DerivedType,
    pub output_derived: DerivedType,
    pub derived_isomorphic: bool,
    /// `|H/Z(H)|^(d(Z(H)) + 1)` as a decimal string.
    pub size_bound: String,
    pub bound_holds: bool,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub group: GroupTable,
    pub report: ReductionReport,
}

/// Reduce `H` to the twisted product of `H/Z(H)` by `Ω_α(X)`.
///
/// The result has derived subgroup isomorphic to `[H, H]` and order
/// `|H/Z(H)| |Ω_α(X)| <= |H/Z(H)|^(d(Z(H)) + 1)`.
pub fn reduce_integral(h: &GroupTable) -> Result<Reduction> {
    let center = h.center();
    let alpha = h.order() / center.len();
    let (derived_table, _) = h.subgroup_table(&h.commutator_subgroup());
    let input_derived = DerivedType::of(&derived_table);
    let center_type = decompose(&h.subgroup_table(&center).0)?;
    let d = center_type.d();
    let size_bound = BigUint::from(alpha).pow(d as u32 + 1);

    if alpha == 1 {
        let q = GroupTable::trivial();
        let report = ReductionReport {
            input_order: h.order(),
            center_order: center.len(),
            alpha,
            center_factors: center_type.factors().to_vec(),
            x_factors: center_type.factors().to_vec(),
            omega_order: 1,
            output_order: 1,
            output_derived: DerivedType::of(&q),
            input_derived,
            derived_isomorphic: true,
            bound_holds: size_bound >= BigUint::from(1u32),
            size_bound: size_bound.to_string(),
        };
        return Ok(Reduction { group: q, report });
    }

    let ext = cocycle_from_extension(h, &center)?;
    let step = shift_into_omega(&ext.cocycle)?;
    let restricted = restrict_to_omega(&step.shifted, alpha)?;
    let omega_order = restricted.kernel().order();
    let q = twisted_product(&restricted)?.group;

    let (q_derived, _) = q.subgroup_table(&q.commutator_subgroup());
    let derived_isomorphic = isomorphic(&q_derived, &derived_table).is_some();
    if !derived_isomorphic {
        return Err(Error::DerivedMismatch);
    }
    let report = ReductionReport {
        input_order: h.order(),
        center_order: center.len(),
        alpha,
        center_factors: center_type.factors().to_vec(),
        x_factors: step.enlargement.x.factors().to_vec(),
        omega_order,
        output_order: q.order(),
        input_derived,
        output_derived: DerivedType::of(&q_derived),
        derived_isomorphic,
        bound_holds: BigUint::from(q.order()) <= size_bound,
        size_bound: size_bound.to_string(),
    };
    Ok(Reduction { group: q, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{from_permutations, Permutation};

    fn perm_group(degree: usize, gens: &[&str]) -> GroupTable {
        let gens: Vec<Permutation> = gens.iter().map(|s| Permutation::parse(s, degree).unwrap()).collect();
        from_permutations(degree, &gens, 10_000).unwrap().0
    }

    fn d4() -> GroupTable {
        perm_group(4, &["(1 2 3 4)", "(1 3)"])
    }

    fn modular(n: u32) -> GroupTable {
        let m = 1usize << (n - 1);
        let u = 1 + (1usize << (n - 2));
        let a = Permutation::from_images((0..m as u32).map(|x| (x + 1) % m as u32).collect()).unwrap();
        let b = Permutation::from_images((0..m).map(|x| ((u * x) % m) as u32).collect()).unwrap();
        from_permutations(m, &[a, b], 10_000).unwrap().0
    }

    #[test]
    fn split_extension_has_zero_cocycle() {
        // C2 x C2 with Z the first factor {0, 1}; transversal {0, 2}
        let v = GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2));
        let z = v.subset([0, 1]);
        let ext = cocycle_from_extension(&v, &z).unwrap();
        assert_eq!(ext.transversal, vec![0, 2]);
        assert!(ext.cocycle.values().iter().all(|&x| x == 0));
    }

    #[test]
    fn c4_over_c2_cocycle() {
        let c4 = GroupTable::cyclic(4);
        let ext = cocycle_from_extension(&c4, &c4.subset([0, 2])).unwrap();
        assert_eq!(ext.transversal, vec![0, 1]);
        // kernel {0, 2} is C2 with 2 as its generator
        assert_eq!(ext.cocycle.values(), &[0, 0, 0, 1]);
        let tp = twisted_product(&ext.cocycle).unwrap();
        assert!(isomorphic(&tp.group, &c4).is_some());
        let phi = transfer_phi(&ext.cocycle).unwrap();
        // Φ(1̄) = δ(1̄,0̄) + δ(1̄,1̄) = 1 in Z/2 (the element 2 of C4)
        assert_eq!(phi, vec![0, 1]);
    }

    #[test]
    fn non_central_kernel_rejected() {
        let s3 = perm_group(3, &["(1 2 3)", "(1 2)"]);
        let a3 = s3.commutator_subgroup();
        assert_eq!(cocycle_from_extension(&s3, &a3).unwrap_err(), Error::NotCentral);
    }

    #[test]
    fn twisted_product_examples() {
        let c2 = GroupTable::cyclic(2);
        let zero = CentralCocycle::zero(c2.clone(), CyclicSum::new(vec![3]));
        let tp = twisted_product(&zero).unwrap();
        assert!(isomorphic(&tp.group, &GroupTable::cyclic(6)).is_some());
        let nonsplit = CentralCocycle::new(c2.clone(), CyclicSum::new(vec![2]), vec![0, 0, 0, 1]).unwrap();
        let tp = twisted_product(&nonsplit).unwrap();
        assert!(isomorphic(&tp.group, &GroupTable::cyclic(4)).is_some());
        assert!(tp.embedding.is_homomorphism(&tp.kernel_table, &tp.group));
        assert!(tp.projection.is_homomorphism(&tp.group, &c2));
        assert_eq!(tp.projection.kernel(&tp.group), tp.embedding.image_subset(&tp.group));
        let center = tp.group.center();
        assert!(tp.embedding.image_subset(&tp.group).is_subset_of(&center));
    }

    #[test]
    fn invalid_cocycles_rejected() {
        let c2 = GroupTable::cyclic(2);
        let k = CyclicSum::new(vec![2]);
        assert!(matches!(CentralCocycle::new(c2.clone(), k.clone(), vec![1, 0, 0, 0]), Err(Error::CocycleInvalid(_))));
        let c3 = GroupTable::cyclic(3);
        // normalized but not a cocycle
        let vals = vec![0, 0, 0, 0, 1, 0, 0, 0, 0];
        assert!(matches!(CentralCocycle::new(c3, k.clone(), vals), Err(Error::CocycleInvalid(_))));
        assert!(matches!(CentralCocycle::new(c2, k, vec![0, 0, 0, 5]), Err(Error::CocycleInvalid(_))));
    }

    #[test]
    fn d4_round_trip_and_witness() {
        let h = d4();
        let ext = cocycle_from_extension(&h, &h.center()).unwrap();
        assert!(ext.cocycle.values().iter().any(|&v| v != 0));
        let tp = twisted_product(&ext.cocycle).unwrap();
        let image: Vec<usize> = h.elements().map(|x| ext.to_twisted(&h, x)).collect();
        Hom::new(&h, &tp.group, image).unwrap();
        assert!(isomorphic(&h, &tp.group).is_some());
    }

    #[test]
    fn shift_examples() {
        let c2 = GroupTable::cyclic(2);
        let delta = CentralCocycle::new(c2.clone(), CyclicSum::new(vec![2]), vec![0, 0, 0, 1]).unwrap();
        let same = shift_cocycle(&delta, &[0, 0]).unwrap();
        assert_eq!(same.values(), delta.values());
        assert_eq!(shift_cocycle(&delta, &[1, 0]).unwrap_err(), Error::NotNormalizedShift);
        // δ = 0 shifted by a coboundary is split
        let v = GroupTable::direct_product(&c2, &c2);
        let k = CyclicSum::new(vec![4]);
        let b = CentralCocycle::coboundary(v.clone(), k.clone(), &[0, 1, 3, 2]).unwrap();
        let tp = twisted_product(&b).unwrap();
        let direct = GroupTable::direct_product(&GroupTable::cyclic(4), &v);
        assert!(isomorphic(&tp.group, &direct).is_some());
    }

    #[test]
    fn modular_group_transfer_and_omega() {
        let h = modular(5);
        let ext = cocycle_from_extension(&h, &h.center()).unwrap();
        assert_eq!(ext.cocycle.alpha(), 4);
        let phi = transfer_phi(&ext.cocycle).unwrap();
        assert_eq!(phi.len(), 4);
        let step = shift_into_omega(&ext.cocycle).unwrap();
        assert_eq!(step.enlargement.x.factors(), &[32]);
        let x = &step.enlargement.x;
        assert!(step.shifted.values().iter().all(|&v| 4 % x.element_order(v) == 0));
        assert_eq!(step.transfer.psi[0], 0);
    }

    #[test]
    fn reduce_examples() {
        let r = reduce_integral(&GroupTable::cyclic(6)).unwrap();
        assert!(r.group.is_trivial());
        assert_eq!(r.report.alpha, 1);

        let r = reduce_integral(&modular(5)).unwrap();
        assert_eq!(r.report.alpha, 4);
        assert_eq!(r.report.x_factors, vec![32]);
        assert_eq!(r.report.omega_order, 4);
        assert_eq!(r.group.order(), 16);
        assert_eq!(r.report.output_derived.to_string(), "C2");

        let r = reduce_integral(&d4()).unwrap();
        assert_eq!((r.report.center_order, r.report.alpha), (2, 4));
        assert_eq!(r.report.x_factors, vec![8]);
        assert_eq!(r.report.omega_order, 4);
        assert_eq!(r.group.order(), 16);
        assert!(r.report.bound_holds);
        assert_eq!(r.report.size_bound, "16");
    }
}
