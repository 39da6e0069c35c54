#![allow(dead_code)]

use std::path::PathBuf;

use integra::format::load_group;
use integra::GroupTable;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(name: &str) -> GroupTable {
    load_group(&fixtures_dir().join(format!("{name}.grp"))).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every `.grp` fixture except A5, sorted by name.
pub fn solvable_fixtures() -> Vec<(String, GroupTable)> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "grp").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .filter(|n| n != "a5")
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), fixture(&n))).collect()
}

pub fn expected_counts() -> Vec<(usize, usize)> {
    let text = std::fs::read_to_string(fixtures_dir().join("small_group_counts.txt")).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace().map(|x| x.parse::<usize>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect()
}

pub fn relabel(g: &GroupTable, perm: &[usize]) -> GroupTable {
    let n = g.order();
    let mut rows = vec![vec![0; n]; n];
    for a in g.elements() {
        for b in g.elements() {
            rows[perm[a]][perm[b]] = perm[g.mul(a, b)];
        }
    }
    GroupTable::from_table(&rows).unwrap()
}
