//! Acceptance criteria, one PASS/FAIL line each. Runtime limits are part of
//! each criterion and are checked against wall-clock time.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use integra::cohomology::{cocycle_from_extension, shift_into_omega, transfer_phi, twisted_product};
use integra::enumeration::brute_force_groups;
use integra::format::load_group;
use integra::integrability::{lemma_suite, ClauseStatus};
use integra::iso::{isomorphic, DEFAULT_AUT_CAP};
use integra::{decide, reduce_integral, Enumerator, GroupTable, Subset, Verdict};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> GroupTable {
    load_group(&fixtures().join(format!("{name}.grp"))).unwrap()
}

fn all_fixtures() -> Vec<(String, GroupTable)> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "grp").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), fixture(&n))).collect()
}

/// `[H, H]` from first principles: close the set of all commutators.
fn brute_derived(h: &GroupTable) -> Vec<usize> {
    let mut set: Vec<bool> = vec![false; h.order()];
    set[0] = true;
    for x in h.elements() {
        for y in h.elements() {
            set[h.commutator(x, y)] = true;
        }
    }
    loop {
        let cur: Vec<usize> = h.elements().filter(|&x| set[x]).collect();
        let mut grew = false;
        for &a in &cur {
            for &b in &cur {
                let p = h.mul(a, b);
                if !set[p] {
                    set[p] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            return h.elements().filter(|&x| set[x]).collect();
        }
    }
}

fn derived_table(h: &GroupTable) -> GroupTable {
    h.subgroup_table(&h.commutator_subgroup()).0
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn c1_bound() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_integra");
    let mut lines = Vec::new();
    for (name, want) in [("c2", "16"), ("s3", "6"), ("c3", "324")] {
        let start = Instant::now();
        let out = Command::new(bin).arg("bound").arg(fixtures().join(format!("{name}.grp"))).output().unwrap();
        let elapsed = start.elapsed();
        let text = String::from_utf8_lossy(&out.stdout).to_string();
        let got = text.strip_prefix("bound = ").and_then(|t| t.split_whitespace().next()).unwrap_or("").to_string();
        if got != want || !out.status.success() || elapsed > Duration::from_secs(1) {
            return check(false, format!("{name}: got {text:?} in {elapsed:.2?}, want {want}"));
        }
        lines.push(format!("{name}={got}"));
    }
    check(true, lines.join(" "))
}

fn c2_decide_c2() -> Outcome {
    let g = GroupTable::cyclic(2);
    let mut e = Enumerator::default();
    let out = decide(&g, None, &mut e).unwrap();
    if out.verdict != Verdict::Integrable || out.searched_orders != [2, 4, 6, 8] {
        return check(false, format!("{:?}, searched {:?}", out.verdict, out.searched_orders));
    }
    // orders 2, 4, 6 really have no witness
    for m in [2, 4, 6] {
        for c in e.groups_of_order(m).unwrap() {
            let d = brute_derived(&c.group);
            if d.len() == 2 {
                return check(false, format!("order {m} has a group with derived subgroup of order 2"));
            }
        }
    }
    let w = out.witness.unwrap();
    let d = brute_derived(&w.group);
    let ok = w.group.order() == 8 && d.len() == 2 && isomorphic(&derived_table(&w.group), &g).is_some();
    check(ok, format!("witness of order {} with |[H,H]| = {}", w.group.order(), d.len()))
}

fn c3_decide_s3() -> Outcome {
    let g = fixture("s3");
    let mut e = Enumerator::default();
    let out = decide(&g, None, &mut e).unwrap();
    let six = e.groups_of_order(6).unwrap();
    let derived: Vec<usize> = six.iter().map(|c| brute_derived(&c.group).len()).collect();
    let ok = out.verdict == Verdict::NotIntegrable
        && out.bound == BigUint::from(6u32)
        && out.searched_orders == [6]
        && six.len() == 2
        && !derived.contains(&6);
    check(ok, format!("{:?}, bound {}, searched {:?}, |[H,H]| over order 6: {:?}", out.verdict, out.bound, out.searched_orders, derived))
}

fn c4_modular() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [4u32, 5, 6] {
        let start = Instant::now();
        let h = fixture(&format!("m{}", 1 << n));
        let zh = h.center().len();
        let r = reduce_integral(&h).unwrap();
        let q = &r.group;
        let d = brute_derived(q);
        let elapsed = start.elapsed();
        let good = h.order() == 1 << n
            && zh == 1 << (n - 2)
            && q.order() <= 16
            && d.len() == 2
            && isomorphic(&derived_table(q), &GroupTable::cyclic(2)).is_some()
            && elapsed < Duration::from_secs(5);
        ok &= good;
        parts.push(format!("M_{} -> |Q| = {}, |[Q,Q]| = {} ({elapsed:.2?})", 1 << n, q.order(), d.len()));
    }
    check(ok, parts.join("; "))
}

fn c5_lemma_suite() -> Outcome {
    let mut e = Enumerator::default();
    let (mut groups, mut clauses) = (0, 0);
    for n in 1..=24 {
        for c in e.groups_of_order(n).unwrap() {
            let r = lemma_suite(&c.group, DEFAULT_AUT_CAP).unwrap();
            groups += 1;
            clauses += r.clauses.len();
            if r.clauses.len() != 12 {
                return check(false, format!("order {n}: {} clauses", r.clauses.len()));
            }
            if let Some(bad) = r.clauses.iter().find(|c| c.status != ClauseStatus::Pass) {
                return check(false, format!("order {n}: {} {:?}: {}", bad.name, bad.status, bad.detail));
            }
        }
    }
    check(true, format!("{groups} groups, {clauses} clause evaluations, none skipped"))
}

/// Fixtures crossed with every subgroup of their centre.
fn central_sweep() -> Vec<(String, GroupTable, Subset)> {
    let mut out = Vec::new();
    for (name, h) in all_fixtures() {
        for z in h.subgroups_of(&h.center()) {
            out.push((name.clone(), h.clone(), z));
        }
    }
    out
}

fn c6_round_trip() -> Outcome {
    let sweep = central_sweep();
    for (name, h, z) in &sweep {
        let ext = cocycle_from_extension(h, z).unwrap();
        let tw = twisted_product(&ext.cocycle).unwrap().group;
        if isomorphic(&tw, h).is_none() {
            return check(false, format!("{name} over |Z| = {}", z.len()));
        }
    }
    check(true, format!("{} (H, Z) pairs", sweep.len()))
}

fn c7_transfer() -> Outcome {
    let sweep = central_sweep();
    let mut pairs = 0usize;
    for (name, h, z) in &sweep {
        let delta = cocycle_from_extension(h, z).unwrap().cocycle;
        let (q, k) = (delta.quotient(), delta.kernel());
        let phi = transfer_phi(&delta).unwrap();
        for a in q.elements() {
            for b in q.elements() {
                let lhs = k.sub(k.add(phi[a], phi[b]), phi[q.mul(a, b)]);
                if lhs != k.scale(delta.value(a, b), delta.alpha()) {
                    return check(false, format!("{name} over |Z| = {} at ({a}, {b})", z.len()));
                }
                pairs += 1;
            }
        }
    }
    check(true, format!("{} extensions, {pairs} pairs", sweep.len()))
}

fn c8_omega() -> Outcome {
    let sweep = central_sweep();
    let mut values = 0usize;
    for (name, h, z) in &sweep {
        let delta = cocycle_from_extension(h, z).unwrap().cocycle;
        let alpha = delta.alpha();
        let step = shift_into_omega(&delta).unwrap();
        let x = step.shifted.kernel();
        for &v in step.shifted.values() {
            if !alpha.is_multiple_of(x.element_order(v)) {
                return check(false, format!("{name}: value of order {} with alpha = {alpha}", x.element_order(v)));
            }
            values += 1;
        }
    }
    check(true, format!("{} extensions, {values} values", sweep.len()))
}

fn c9_counts() -> Outcome {
    let want = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];
    let text = std::fs::read_to_string(fixtures().join("small_group_counts.txt")).unwrap();
    let reference: Vec<usize> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .filter_map(|l| l.split_whitespace().nth(1)?.parse().ok())
        .collect();
    let mut e = Enumerator::default();
    let mut got = Vec::new();
    for n in 1..=16 {
        let gs = e.groups_of_order(n).unwrap();
        got.push(gs.len());
        if n <= 8 {
            let brute = brute_force_groups(n).unwrap();
            let matched = brute.len() == gs.len()
                && brute.iter().all(|b| gs.iter().filter(|g| isomorphic(&b.group, &g.group).is_some()).count() == 1);
            if !matched {
                return check(false, format!("order {n}: brute force disagrees"));
            }
        } else if reference[n - 1] != gs.len() {
            return check(false, format!("order {n}: {} vs reference {}", gs.len(), reference[n - 1]));
        }
    }
    check(got == want, format!("{got:?}"))
}

fn c10_size_chain() -> Outcome {
    let mut e = Enumerator::default();
    let mut checked = 0;
    let mut largest = 0;
    for n in 1..=32 {
        for c in e.groups_of_order(n).unwrap() {
            let h = &c.group;
            if h.is_abelian() {
                continue;
            }
            let z = h.center();
            let d = integra::abelian::d(&h.subgroup_table(&z).0).unwrap();
            let rhs = BigUint::from(h.order() / z.len()).pow(d as u32 + 1);
            let q = reduce_integral(h).unwrap().group;
            if BigUint::from(q.order()) > rhs {
                return check(false, format!("order {n}: |Q| = {} > {rhs}", q.order()));
            }
            largest = largest.max(q.order());
            checked += 1;
        }
    }
    check(true, format!("{checked} nonabelian groups, largest |Q| = {largest}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 bound formula", Duration::from_secs(3), c1_bound),
        ("2 decide(C2) integrable", Duration::from_secs(10), c2_decide_c2),
        ("3 decide(S3) not integrable", Duration::from_secs(1), c3_decide_s3),
        ("4 reduction of M_16, M_32, M_64", Duration::from_secs(15), c4_modular),
        ("5 lemma suite, orders <= 24", Duration::from_secs(300), c5_lemma_suite),
        ("6 cocycle round trip", Duration::from_secs(60), c6_round_trip),
        ("7 transfer identity", Duration::from_secs(60), c7_transfer),
        ("8 omega containment", Duration::from_secs(60), c8_omega),
        ("9 enumeration counts", Duration::from_secs(600), c9_counts),
        ("10 size inequality chain", Duration::from_secs(600), c10_size_chain),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let ok = out.ok && in_time;
        if !ok {
            failed += 1;
        }
        let timing = if in_time { String::new() } else { format!(" [over the {limit:.0?} limit]") };
        println!(
            "{} criterion {name}: {} ({elapsed:.2?}){timing}",
            if ok { "PASS" } else { "FAIL" },
            out.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
