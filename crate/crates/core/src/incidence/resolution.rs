use serde::Serialize;

use super::{is_parallel_class, Design};
use crate::permgroup::PermGroup;

/// Outcome of the combinatorial resolution search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Resolution {
    NotResolvable,
    Unique { classes: Vec<Vec<usize>> },
    /// More than one resolution exists; two distinct witnesses are returned.
    Multiple {
        first: Vec<Vec<usize>>,
        second: Vec<Vec<usize>>,
    },
}

impl Resolution {
    pub fn classes(&self) -> Option<&[Vec<usize>]> {
        match self {
            Resolution::NotResolvable => None,
            Resolution::Unique { classes } => Some(classes),
            Resolution::Multiple { first, .. } => Some(first),
        }
    }
}

/// Searches for partitions of the blocks into parallel classes, stopping after two.
pub fn resolution(d: &Design) -> Resolution {
    let classes = all_parallel_classes(d);
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); d.b()];
    for (i, c) in classes.iter().enumerate() {
        for &b in c {
            containing[b].push(i);
        }
    }
    let mut used = vec![false; d.b()];
    let mut chosen = Vec::new();
    let mut found = Vec::new();
    search_partitions(&classes, &containing, &mut used, &mut chosen, &mut found);
    let mut found = found.into_iter().map(|mut r: Vec<Vec<usize>>| {
        r.sort();
        r
    });
    match (found.next(), found.next()) {
        (None, _) => Resolution::NotResolvable,
        (Some(classes), None) => Resolution::Unique { classes },
        (Some(first), Some(second)) => Resolution::Multiple { first, second },
    }
}

fn search_partitions(
    classes: &[Vec<usize>],
    containing: &[Vec<usize>],
    used: &mut Vec<bool>,
    chosen: &mut Vec<usize>,
    found: &mut Vec<Vec<Vec<usize>>>,
) {
    if found.len() >= 2 {
        return;
    }
    let Some(first_free) = used.iter().position(|u| !u) else {
        found.push(chosen.iter().map(|&i| classes[i].clone()).collect());
        return;
    };
    for &ci in &containing[first_free] {
        if classes[ci].iter().any(|&b| used[b]) {
            continue;
        }
        for &b in &classes[ci] {
            used[b] = true;
        }
        chosen.push(ci);
        search_partitions(classes, containing, used, chosen, found);
        chosen.pop();
        for &b in &classes[ci] {
            used[b] = false;
        }
    }
}

/// Every set of pairwise disjoint blocks covering the points, each sorted.
pub fn all_parallel_classes(d: &Design) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut covered = vec![false; d.v()];
    let mut chosen = Vec::new();
    cover(d, &mut covered, &mut chosen, &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out.dedup();
    out
}

fn cover(d: &Design, covered: &mut Vec<bool>, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let Some(x) = covered.iter().position(|c| !c) else {
        if !chosen.is_empty() {
            out.push(chosen.clone());
        }
        return;
    };
    for &b in d.blocks_through(x) {
        if d.block(b).iter().any(|&y| covered[y]) {
            continue;
        }
        for &y in d.block(b) {
            covered[y] = true;
        }
        chosen.push(b);
        cover(d, covered, chosen, out);
        chosen.pop();
        for &y in d.block(b) {
            covered[y] = false;
        }
    }
}

/// Resolution given by the orbits of `n` on blocks, if each orbit is a parallel class.
pub fn resolution_by_group(d: &Design, n: &PermGroup) -> Option<Vec<Vec<usize>>> {
    let blocks: Vec<usize> = (0..d.b()).map(|b| d.v() + b).collect();
    let classes: Vec<Vec<usize>> = n
        .orbits_on(&blocks)
        .ok()?
        .into_iter()
        .map(|o| o.into_iter().map(|x| x - d.v()).collect())
        .collect();
    classes
        .iter()
        .all(|c| is_parallel_class(d, c))
        .then_some(classes)
}
