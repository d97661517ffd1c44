//! Weisfeiler-Lehman relabeling and per-iteration label histograms.
//!
//! Labels are interned exactly: a refined label is the pair of the node's
//! previous label and the sorted multiset of its neighbors' previous labels,
//! mapped to a dense id through a shared map. No hashing is involved, so
//! distinct signatures can never collide. Ids 0..16 are reserved for the
//! initial UPOS labels; refined ids are assigned in first-encounter order,
//! which only affects internal numbering, never kernel values.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::DepTree;
use crate::corpus::Upos;

pub(crate) struct Interner {
    map: BTreeMap<(u32, Vec<u32>), u32>,
    next: u32,
}

impl Interner {
    pub(crate) fn new() -> Self {
        Interner {
            map: BTreeMap::new(),
            next: Upos::COUNT,
        }
    }

    fn intern(&mut self, label: u32, neighborhood: Vec<u32>) -> u32 {
        let next = &mut self.next;
        *self.map.entry((label, neighborhood)).or_insert_with(|| {
            let id = *next;
            *next += 1;
            id
        })
    }
}

/// Sorted `(label, count)` histograms for iterations `0..=h_max` of one
/// tree, plus the per-iteration self dot products.
pub(crate) struct TreeProfile {
    hist: Vec<Vec<(u32, u32)>>,
    self_per_h: Vec<u64>,
}

impl TreeProfile {
    fn push_iteration(&mut self, labels: &[u32]) {
        let hist = histogram(labels);
        self.self_per_h.push(dot(&hist, &hist));
        self.hist.push(hist);
    }
}

/// Profiles every tree against one shared interner so refined labels are
/// comparable across the whole set.
pub(crate) fn build_profiles<'a, I>(trees: I, h_max: u32) -> Vec<TreeProfile>
where
    I: IntoIterator<Item = &'a DepTree>,
{
    let mut interner = Interner::new();
    trees
        .into_iter()
        .map(|t| profile_tree(t, h_max, &mut interner))
        .collect()
}

fn profile_tree(tree: &DepTree, h_max: u32, interner: &mut Interner) -> TreeProfile {
    let n = tree.len();
    let neighbors = tree.adjacency();
    let mut profile = TreeProfile {
        hist: Vec::with_capacity(h_max as usize + 1),
        self_per_h: Vec::with_capacity(h_max as usize + 1),
    };
    let mut current: Vec<u32> = tree.labels().iter().map(|&u| u as u32).collect();
    profile.push_iteration(&current);
    for _ in 0..h_max {
        let mut next = Vec::with_capacity(n);
        for v in 0..n {
            let mut around: Vec<u32> = neighbors[v].iter().map(|&u| current[u as usize]).collect();
            around.sort_unstable();
            next.push(interner.intern(current[v], around));
        }
        current = next;
        profile.push_iteration(&current);
    }
    profile
}

fn histogram(labels: &[u32]) -> Vec<(u32, u32)> {
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    let mut hist: Vec<(u32, u32)> = Vec::new();
    for &label in &sorted {
        match hist.last_mut() {
            Some((l, c)) if *l == label => *c += 1,
            _ => hist.push((label, 1)),
        }
    }
    hist
}

/// Dot product of two sorted histograms by merge join. Counts stay integral
/// until the caller normalizes, so kernel values on raw counts are exact.
fn dot(a: &[(u32, u32)], b: &[(u32, u32)]) -> u64 {
    let (mut i, mut j) = (0, 0);
    let mut sum = 0u64;
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                sum += a[i].1 as u64 * b[j].1 as u64;
                i += 1;
                j += 1;
            }
        }
    }
    sum
}

/// Unnormalized kernel between two profiled trees over iterations
/// `h_min..=h_max`: the sum of per-iteration histogram dot products.
pub(crate) fn profile_dot(a: &TreeProfile, b: &TreeProfile, h_min: u32, h_max: u32) -> u64 {
    (h_min as usize..=h_max as usize)
        .map(|h| dot(&a.hist[h], &b.hist[h]))
        .sum()
}

pub(crate) fn profile_self(a: &TreeProfile, h_min: u32, h_max: u32) -> u64 {
    a.self_per_h[h_min as usize..=h_max as usize].iter().sum()
}
