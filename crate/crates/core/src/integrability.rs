//! Integrals: the size bound, the decision procedure, and concrete checks
//! of the structural facts about `K = C_H([H,H])`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::abelian::decompose;
use crate::enumeration::Enumerator;
use crate::error::{Error, Result};
use crate::group::{GroupTable, Hom, Subset};
use crate::iso::{aut_list, aut_order, isomorphic, min_generators, mu};

/// Ingredients of the bound, kept for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundParts {
    pub aut_order: u64,
    pub center_order: usize,
    pub mu: usize,
    pub center_rank: usize,
    #[serde(serialize_with = "as_decimal")]
    pub bound: BigUint,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn bound_parts(g: &GroupTable) -> BoundParts {
    if g.is_trivial() {
        return BoundParts { aut_order: 1, center_order: 1, mu: 0, center_rank: 0, bound: BigUint::from(1u32) };
    }
    let aut = aut_order(g);
    let z = g.center();
    let rank = decompose(&g.subgroup_table(&z).0).expect("centre is abelian").d();
    let mu = mu(g);
    let base = BigUint::from(aut) * BigUint::from(z.len()).pow(2 * mu as u32);
    BoundParts { aut_order: aut, center_order: z.len(), mu, center_rank: rank, bound: base.pow(rank as u32 + 1) }
}

/// `(|Aut G| |Z(G)|^(2 mu(G)))^(d(Z(G)) + 1)`; 1 for the trivial group.
pub fn bound(g: &GroupTable) -> BigUint {
    bound_parts(g).bound
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Integrable,
    NotIntegrable,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Integrable => 0,
            Verdict::NotIntegrable => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub group: GroupTable,
    pub derived: Subset,
    /// `[H, H]` as a standalone table.
    pub derived_table: GroupTable,
    /// Isomorphism from `derived_table` onto `G`.
    pub iso: Hom,
    /// Position in the catalog for `group.order()`.
    pub catalog_index: usize,
}

#[derive(Clone, Debug)]
pub struct DecisionOutcome {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub bound: BigUint,
    pub searched_orders: Vec<usize>,
    pub cap_applied: Option<BigUint>,
    pub reason: Option<String>,
}

/// Scan `|G|, 2|G|, ...` up to the bound (or `cap`, or what the enumerator
/// can produce) for a group whose derived subgroup is `G`.
pub fn decide(g: &GroupTable, cap: Option<usize>, enumerator: &mut Enumerator) -> Result<DecisionOutcome> {
    let b = bound(g);
    if g.is_trivial() {
        let t = GroupTable::trivial();
        let derived = t.whole();
        let witness = Witness {
            iso: isomorphic(&t, g).expect("both trivial"),
            derived_table: t.clone(),
            derived,
            group: t,
            catalog_index: 0,
        };
        return Ok(DecisionOutcome {
            verdict: Verdict::Integrable,
            witness: Some(witness),
            bound: b,
            searched_orders: vec![1],
            cap_applied: None,
            reason: None,
        });
    }

    let order_cap = enumerator.config().order_cap;
    let mut limit = b.clone();
    let mut reason = None;
    if let Some(c) = cap {
        if BigUint::from(c) < limit {
            limit = BigUint::from(c);
            reason = Some(format!("stopped at --cap {c}"));
        }
    }
    if BigUint::from(order_cap) < limit {
        limit = BigUint::from(order_cap);
        reason = Some(format!("enumeration is limited to orders <= {order_cap}"));
    }

    let n = g.order();
    let mut searched = Vec::new();
    let mut m = n;
    while BigUint::from(m) <= limit {
        let groups = match enumerator.groups_of_order(m) {
            Ok(gs) => gs,
            Err(Error::NonSolvableOrderUnsupported { n: blocked }) => {
                return Ok(DecisionOutcome {
                    verdict: Verdict::Inconclusive,
                    witness: None,
                    bound: b,
                    searched_orders: searched,
                    cap_applied: Some(BigUint::from(blocked - 1)),
                    reason: Some(format!("order {blocked} needs the A5 special case")),
                });
            }
            Err(e) => return Err(e),
        };
        for (idx, entry) in groups.iter().enumerate() {
            let h = &entry.group;
            let derived = h.commutator_subgroup();
            if derived.len() != n {
                continue;
            }
            let (dt, _) = h.subgroup_table(&derived);
            if let Some(iso) = isomorphic(&dt, g) {
                searched.push(m);
                let witness = Witness { group: h.clone(), derived, derived_table: dt, iso, catalog_index: idx };
                return Ok(DecisionOutcome {
                    verdict: Verdict::Integrable,
                    witness: Some(witness),
                    bound: b,
                    searched_orders: searched,
                    cap_applied: None,
                    reason: None,
                });
            }
        }
        searched.push(m);
        m += n;
    }
    if limit < b {
        Ok(DecisionOutcome {
            verdict: Verdict::Inconclusive,
            witness: None,
            bound: b,
            searched_orders: searched,
            cap_applied: Some(limit),
            reason,
        })
    } else {
        Ok(DecisionOutcome {
            verdict: Verdict::NotIntegrable,
            witness: None,
            bound: b,
            searched_orders: searched,
            cap_applied: None,
            reason: None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClauseStatus {
    Pass,
    Fail,
    /// Not evaluated; the detail says why.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub name: &'static str,
    pub status: ClauseStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LemmaReport {
    pub clauses: Vec<Clause>,
}

impl LemmaReport {
    fn push(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) {
        let status = if ok { ClauseStatus::Pass } else { ClauseStatus::Fail };
        self.clauses.push(Clause { name, status, detail: detail.into() });
    }

    pub fn get(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| c.status == ClauseStatus::Fail)
    }

    pub fn skipped(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| c.status == ClauseStatus::Skipped)
    }

    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.status == ClauseStatus::Pass)
    }
}

fn list(xs: &[usize]) -> String {
    const SHOW: usize = 8;
    let mut s: Vec<String> = xs.iter().take(SHOW).map(usize::to_string).collect();
    if xs.len() > SHOW {
        s.push(format!("... ({} total)", xs.len()));
    }
    format!("[{}]", s.join(", "))
}

fn outside(a: &Subset, b: &Subset) -> Vec<usize> {
    a.iter().filter(|&x| !b.contains(x)).collect()
}

fn subset_clause(r: &mut LemmaReport, name: &'static str, a: &Subset, b: &Subset, what: &str) {
    let bad = outside(a, b);
    if bad.is_empty() {
        r.push(name, true, what.to_string());
    } else {
        r.push(name, false, format!("{what}: elements {} escape", list(&bad)));
    }
}

/// The instance of the quotient-intersection lemma for `A, B <= G` and
/// `C` normal with `A ∩ B = C`: the images of `A` and `B` in `G/C` meet
/// trivially, and when `A` is normal `B/C -> G/A` is injective.
pub fn lemma31_instance(g: &GroupTable, a: &Subset, b: &Subset, c: &Subset) -> Result<(bool, String)> {
    if !g.is_normal(c) {
        return Err(Error::NotNormal);
    }
    if a.intersection(b) != *c {
        return Ok((false, "A ∩ B differs from C".into()));
    }
    let (_, proj) = g.quotient(c)?;
    let ia: Vec<usize> = a.iter().map(|x| proj.apply(x)).collect();
    let both: Vec<usize> = b.iter().map(|x| proj.apply(x)).filter(|y| *y != 0 && ia.contains(y)).collect();
    if !both.is_empty() {
        return Ok((false, format!("images share cosets {}", list(&both))));
    }
    if g.is_normal(a) {
        // b C -> b A is well defined; injective iff distinct C-cosets of B
        // land in distinct A-cosets
        let (_, to_a) = g.quotient(a)?;
        let mut seen = std::collections::HashMap::new();
        for x in b.iter() {
            if let Some(prev) = seen.insert(to_a.apply(x), proj.apply(x)) {
                if prev != proj.apply(x) {
                    return Ok((false, format!("B/C -> G/A identifies the cosets of {x}")));
                }
            }
        }
    }
    Ok((true, "images intersect trivially".into()))
}

/// Evaluate the quotient-intersection lemma and every structural clause
/// about `K = C_H(G)`, `G = [H, H]`, on a concrete `H`.
pub fn lemma_suite(h: &GroupTable, aut_cap: usize) -> Result<LemmaReport> {
    let mut r = LemmaReport::default();
    let g = h.commutator_subgroup();
    let k = h.centralizer(&g);
    let zg = g.intersection(&h.centralizer(&g));
    let zh = h.center();
    let zk = {
        let ck = h.centralizer(&k);
        k.intersection(&ck)
    };

    let (ok, detail) = lemma31_instance(h, &k, &g, &zg)?;
    r.push("L3.1", ok, format!("A = K, B = [H,H], C = Z(G): {detail}"));

    // (i) [K, G] = 1
    let bad: Vec<usize> = k.iter().filter(|&x| g.iter().any(|y| h.commutator(x, y) != 0)).collect();
    r.push("L3.2(i)", bad.is_empty(), if bad.is_empty() { "[K,G] = 1".into() } else { format!("K elements {} fail to centralise G", list(&bad)) });

    // (ii) K ∩ G = Z(G)
    let kg = k.intersection(&g);
    r.push(
        "L3.2(ii)",
        kg == zg,
        format!("|K ∩ G| = {}, |Z(G)| = {}", kg.len(), zg.len()),
    );

    // (iii) [H/K, H/K] ≅ G/Z(G)
    let (hk, _) = h.quotient(&k)?;
    let (hk_derived, _) = hk.subgroup_table(&hk.commutator_subgroup());
    let (gt, g_emb) = h.subgroup_table(&g);
    let zg_in_gt = gt.subset(zg.iter().map(|x| g_emb.image().iter().position(|&y| y == x).unwrap()));
    let (gz, _) = gt.quotient(&zg_in_gt)?;
    let iso3 = isomorphic(&hk_derived, &gz).is_some();
    r.push("L3.2(iii)", iso3, format!("|[H/K,H/K]| = {}, |G/Z(G)| = {}", hk_derived.order(), gz.order()));

    // (iv) K/Z(G) ∩ [H,H]/Z(G) = 1 inside H/Z(G)
    let (hz, p) = h.quotient(&zg)?;
    let kimg = p.map_subset(&k, &hz);
    let gimg = p.map_subset(&g, &hz);
    let meet = kimg.intersection(&gimg);
    r.push("L3.2(iv)", meet.len() == 1, format!("|K/Z ∩ G/Z| = {}", meet.len()));

    // (v) K/Z(G) -> H/[H,H] injective, i.e. K ∩ [H,H] = Z(G)
    r.push("L3.2(v)", kg == zg, "K ∩ [H,H] = Z(G), so K/Z(G) embeds in H/[H,H]");

    // (vi) Z(G) characteristic in H, Z(G) <= Z(K)
    let in_zk = outside(&zg, &zk);
    let mut detail = String::new();
    let mut status = ClauseStatus::Pass;
    if !in_zk.is_empty() {
        status = ClauseStatus::Fail;
        detail = format!("Z(G) elements {} outside Z(K); ", list(&in_zk));
    }
    match aut_list(h, aut_cap) {
        Ok(auts) => {
            let moved = auts.iter().position(|a| zg.iter().any(|x| !zg.contains(a.apply(x))));
            match moved {
                None => detail.push_str(&format!("Z(G) invariant under all {} automorphisms, Z(G) <= Z(K)", auts.len())),
                Some(i) => {
                    status = ClauseStatus::Fail;
                    detail.push_str(&format!("automorphism #{i} moves Z(G)"));
                }
            }
        }
        Err(Error::AutListTooLarge { count, cap }) => {
            if status == ClauseStatus::Pass {
                status = ClauseStatus::Skipped;
            }
            detail.push_str(&format!("automorphism check skipped: |Aut(H)| = {count} exceeds cap {cap}"));
        }
        Err(e) => return Err(e),
    }
    r.clauses.push(Clause { name: "L3.2(vi)", status, detail });

    // (vii) K normal, K/Z(G) central in H/Z(G)
    let normal = h.is_normal(&k);
    let noncentral: Vec<usize> = kimg.iter().filter(|&x| hz.elements().any(|y| hz.commutator(x, y) != 0)).collect();
    r.push(
        "L3.2(vii)",
        normal && noncentral.is_empty(),
        if !normal {
            "K is not normal".to_string()
        } else if noncentral.is_empty() {
            "K normal, K/Z(G) central in H/Z(G)".to_string()
        } else {
            format!("cosets {} of K/Z(G) are not central", list(&noncentral))
        },
    );

    // (viii) [K, H] <= Z(G)
    let kh = h.commutator_of(&k, &h.whole());
    subset_clause(&mut r, "L3.2(viii)", &kh, &zg, "[K,H] <= Z(G)");

    // (ix) Z(H) <= Z(K)
    subset_clause(&mut r, "L3.2(ix)", &zh, &zk, "Z(H) <= Z(K)");

    // (x) [[K,K],K] = 1
    let kk = h.commutator_of(&k, &k);
    let kkk = h.commutator_of(&kk, &k);
    r.push("L3.2(x)", kkk.len() == 1, format!("|[[K,K],K]| = {}", kkk.len()));

    // (xi) k^n central for n = exp(G)
    let n = gt.exponent();
    let bad: Vec<usize> = k.iter().filter(|&x| !zh.contains(h.pow(x, n as u64))).collect();
    r.push(
        "L3.2(xi)",
        bad.is_empty(),
        if bad.is_empty() { format!("k^{n} in Z(H) for all k in K") } else { format!("k^{n} escapes Z(H) for k in {}", list(&bad)) },
    );
    Ok(r)
}

/// Check the four properties that some integral of `G` is guaranteed to
/// have. Failing one is not a contradiction: only existence is promised.
pub fn verify_thm21(h: &GroupTable, g: &GroupTable) -> Result<LemmaReport> {
    let (derived, _) = h.subgroup_table(&h.commutator_subgroup());
    if isomorphic(&derived, g).is_none() {
        return Err(Error::NotAnIntegral);
    }
    let mut r = LemmaReport::default();
    r.push("T2.1(i)", true, format!("|H| = {}", h.order()));
    let t = min_generators(h);
    let mu_g = mu(g);
    r.push("T2.1(ii)", t <= 2 * mu_g, format!("d(H) = {t} <= 2 mu(G) = {}", 2 * mu_g));
    let parts = bound_parts(g);
    let zh = h.center();
    let quot = h.order() / zh.len();
    let rhs = BigUint::from(parts.aut_order) * BigUint::from(parts.center_order).pow(2 * parts.mu as u32);
    r.push("T2.1(iii)", BigUint::from(quot) <= rhs, format!("|H/Z(H)| = {quot} <= |Aut G| |Z(G)|^(2 mu) = {rhs}"));
    let dzh = decompose(&h.subgroup_table(&zh).0)?.d();
    r.push("T2.1(iv)", dzh <= parts.center_rank, format!("d(Z(H)) = {dzh} <= d(Z(G)) = {}", parts.center_rank));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{from_permutations, Permutation};

    fn perm_group(degree: usize, gens: &[&str]) -> GroupTable {
        let gens: Vec<Permutation> = gens.iter().map(|s| Permutation::parse(s, degree).unwrap()).collect();
        from_permutations(degree, &gens, 10_000).unwrap().0
    }

    fn s3() -> GroupTable {
        perm_group(3, &["(1 2 3)", "(1 2)"])
    }

    fn d4() -> GroupTable {
        perm_group(4, &["(1 2 3 4)", "(1 3)"])
    }

    #[test]
    fn bound_examples() {
        assert_eq!(bound(&GroupTable::cyclic(2)), BigUint::from(16u32));
        assert_eq!(bound(&s3()), BigUint::from(6u32));
        assert_eq!(bound(&GroupTable::cyclic(3)), BigUint::from(324u32));
        assert_eq!(bound(&GroupTable::trivial()), BigUint::from(1u32));
    }

    #[test]
    fn decide_examples() {
        let mut e = Enumerator::default();
        let c2 = decide(&GroupTable::cyclic(2), None, &mut e).unwrap();
        assert_eq!(c2.verdict, Verdict::Integrable);
        assert_eq!(c2.searched_orders, vec![2, 4, 6, 8]);
        assert_eq!(c2.witness.as_ref().unwrap().group.order(), 8);

        let s = decide(&s3(), None, &mut e).unwrap();
        assert_eq!(s.verdict, Verdict::NotIntegrable);
        assert_eq!(s.searched_orders, vec![6]);
        assert_eq!(s.bound, BigUint::from(6u32));

        let t = decide(&GroupTable::trivial(), None, &mut e).unwrap();
        assert_eq!(t.verdict, Verdict::Integrable);

        let c3 = decide(&GroupTable::cyclic(3), Some(30), &mut e).unwrap();
        assert_eq!(c3.verdict, Verdict::Integrable);
        assert_eq!(c3.witness.unwrap().group.order(), 6);
    }

    #[test]
    fn decide_reports_the_cap() {
        // groups of order 4 and 8 have derived subgroup of order <= 2; A4 comes at 12
        let mut e = Enumerator::default();
        let v4 = GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(2));
        let out = decide(&v4, Some(10), &mut e).unwrap();
        assert_eq!(out.verdict, Verdict::Inconclusive);
        assert_eq!(out.searched_orders, vec![4, 8]);
        assert_eq!(out.cap_applied, Some(BigUint::from(10u32)));
        assert_eq!(decide(&v4, None, &mut e).unwrap().witness.unwrap().group.order(), 12);
        assert!(out.cap_applied.unwrap() < out.bound);
    }

    #[test]
    fn lemma_suite_examples() {
        for h in [d4(), GroupTable::cyclic(6), s3(), GroupTable::trivial()] {
            let r = lemma_suite(&h, 1000).unwrap();
            assert_eq!(r.clauses.len(), 12);
            assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn aut_cap_downgrades_clause_vi() {
        let r = lemma_suite(&d4(), 3).unwrap();
        assert_eq!(r.get("L3.2(vi)").unwrap().status, ClauseStatus::Skipped);
        assert!(!r.all_pass());
        assert_eq!(r.failures().count(), 0);
    }

    #[test]
    fn lemma31_on_small_triples() {
        let d = d4();
        let z = d.center();
        let c4 = d.generated_subgroup(&[d.elements().find(|&x| d.element_order(x) == 4).unwrap()]);
        let (ok, _) = lemma31_instance(&d, &c4, &c4, &c4).unwrap();
        assert!(ok);
        let refl: Vec<usize> = d.elements().filter(|&x| d.element_order(x) == 2 && !z.contains(x)).collect();
        let b = d.generated_subgroup(&[refl[0]]);
        let (ok, _) = lemma31_instance(&d, &c4, &b, &d.trivial_subgroup()).unwrap();
        assert!(ok);
        // the intersection hypothesis is reported, not assumed
        let (ok, _) = lemma31_instance(&d, &c4, &d.whole(), &z).unwrap();
        assert!(!ok);
    }

    #[test]
    fn thm21_examples() {
        let r = verify_thm21(&d4(), &GroupTable::cyclic(2)).unwrap();
        assert!(r.all_pass());
        let r = verify_thm21(&GroupTable::trivial(), &GroupTable::trivial()).unwrap();
        assert!(r.all_pass());
        assert_eq!(verify_thm21(&s3(), &GroupTable::cyclic(2)).unwrap_err(), Error::NotAnIntegral);
    }
}
