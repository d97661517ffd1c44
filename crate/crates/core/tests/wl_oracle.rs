//! Checks the WL kernel against an independent oracle that relabels nodes
//! with full canonical strings (no interning, no histograms shared across
//! trees) and counts matches by Cartesian comparison of label multisets.

use std::collections::HashMap;

use natcorpus_core::corpus::Upos;
use natcorpus_core::rng;
use natcorpus_core::syndiv::{kernel_matrix, normalized_wl_kernel, wl_kernel, DepTree};

const TAGS: [Upos; 3] = [Upos::Noun, Upos::Verb, Upos::Adj];

/// Per-node labels for iterations 0..=h, as self-describing strings:
/// `prev(sorted neighbor prevs)`.
fn oracle_labelings(labels: &[Upos], edges: &[(u32, u32)], h: u32) -> Vec<Vec<String>> {
    let n = labels.len();
    let mut neighbors = vec![Vec::new(); n];
    for &(a, b) in edges {
        neighbors[a as usize].push(b as usize);
        neighbors[b as usize].push(a as usize);
    }
    let mut rounds = Vec::new();
    rounds.push(
        labels
            .iter()
            .map(|u| u.as_str().to_string())
            .collect::<Vec<_>>(),
    );
    for _ in 0..h {
        let prev = rounds.last().unwrap();
        let mut next = Vec::with_capacity(n);
        for v in 0..n {
            let mut around: Vec<&str> = neighbors[v].iter().map(|&u| prev[u].as_str()).collect();
            around.sort_unstable();
            next.push(format!("{}({})", prev[v], around.join(",")));
        }
        rounds.push(next);
    }
    rounds
}

/// Kernel by brute force: for every iteration, compare every node label of
/// one tree against every node label of the other.
fn oracle_kernel(a: (&[Upos], &[(u32, u32)]), b: (&[Upos], &[(u32, u32)]), h: u32) -> u64 {
    let rounds_a = oracle_labelings(a.0, a.1, h);
    let rounds_b = oracle_labelings(b.0, b.1, h);
    let mut matches = 0u64;
    for (round_a, round_b) in rounds_a.iter().zip(&rounds_b) {
        for label_a in round_a {
            for label_b in round_b {
                if label_a == label_b {
                    matches += 1;
                }
            }
        }
    }
    matches
}

/// Random recursive tree: node 0 is the root, each later node attaches to a
/// uniformly random earlier node. Returned as (labels, edges, root).
fn random_tree(
    generator: &mut rng::ChaCha8Rng,
    max_nodes: usize,
) -> (Vec<Upos>, Vec<(u32, u32)>, u32) {
    let n = 1 + rng::sample_index(generator, max_nodes);
    let labels: Vec<Upos> = (0..n)
        .map(|_| TAGS[rng::sample_index(generator, TAGS.len())])
        .collect();
    let edges: Vec<(u32, u32)> = (1..n)
        .map(|i| (rng::sample_index(generator, i) as u32, i as u32))
        .collect();
    (labels, edges, 0)
}

/// Relabels the nodes of a tree by a random permutation; same tree, new
/// node order and root index.
fn permuted(
    generator: &mut rng::ChaCha8Rng,
    labels: &[Upos],
    edges: &[(u32, u32)],
    root: u32,
) -> (Vec<Upos>, Vec<(u32, u32)>, u32) {
    let n = labels.len();
    let mut position: Vec<usize> = (0..n).collect();
    rng::shuffle(generator, &mut position);
    let mut new_labels = vec![Upos::X; n];
    for (old, &new) in position.iter().enumerate() {
        new_labels[new] = labels[old];
    }
    let new_edges = edges
        .iter()
        .map(|&(a, b)| (position[a as usize] as u32, position[b as usize] as u32))
        .collect();
    (new_labels, new_edges, position[root as usize] as u32)
}

#[test]
fn matches_oracle_exactly_on_random_small_trees() {
    let mut generator = rng::seeded(0x57AB1E);
    for case in 0..600 {
        let h = (case % 4) as u32;
        let (labels_a, edges_a, root_a) = random_tree(&mut generator, 8);
        let (labels_b, edges_b, root_b) = random_tree(&mut generator, 8);
        let tree_a = DepTree::new(labels_a.clone(), edges_a.clone(), root_a).unwrap();
        let tree_b = DepTree::new(labels_b.clone(), edges_b.clone(), root_b).unwrap();

        let expected = oracle_kernel((&labels_a, &edges_a), (&labels_b, &edges_b), h);
        let actual = wl_kernel(&tree_a, &tree_b, h);
        assert_eq!(actual, expected, "case {case} at h={h}");

        let self_expected = oracle_kernel((&labels_a, &edges_a), (&labels_a, &edges_a), h);
        assert_eq!(wl_kernel(&tree_a, &tree_a, h), self_expected, "case {case} self");
    }
}

#[test]
fn kernel_ignores_node_order() {
    let mut generator = rng::seeded(0xDECAF);
    for case in 0..200 {
        let (labels_a, edges_a, root_a) = random_tree(&mut generator, 8);
        let (labels_b, edges_b, root_b) = random_tree(&mut generator, 8);
        let (labels_p, edges_p, root_p) = permuted(&mut generator, &labels_a, &edges_a, root_a);

        let tree_a = DepTree::new(labels_a, edges_a, root_a).unwrap();
        let tree_b = DepTree::new(labels_b, edges_b, root_b).unwrap();
        let tree_p = DepTree::new(labels_p, edges_p, root_p).unwrap();

        for h in 0..=3u32 {
            assert_eq!(
                wl_kernel(&tree_p, &tree_b, h),
                wl_kernel(&tree_a, &tree_b, h),
                "case {case} at h={h}"
            );
            assert_eq!(
                wl_kernel(&tree_b, &tree_a, h),
                wl_kernel(&tree_a, &tree_b, h),
                "case {case} symmetry at h={h}"
            );
        }
    }
}

#[test]
fn per_iteration_matches_shrink_and_bound_holds() {
    let mut generator = rng::seeded(42);
    for _ in 0..200 {
        let (labels_a, edges_a, root_a) = random_tree(&mut generator, 8);
        let (labels_b, edges_b, root_b) = random_tree(&mut generator, 8);
        let size_product = (labels_a.len() * labels_b.len()) as u64;
        let tree_a = DepTree::new(labels_a, edges_a, root_a).unwrap();
        let tree_b = DepTree::new(labels_b, edges_b, root_b).unwrap();

        let cumulative: Vec<u64> = (0..=3u32)
            .map(|h| wl_kernel(&tree_a, &tree_b, h))
            .collect();
        let mut previous_round = u64::MAX;
        for h in 0..=3usize {
            let round = if h == 0 {
                cumulative[0]
            } else {
                cumulative[h] - cumulative[h - 1]
            };
            assert!(round <= previous_round, "round matches grew at h={h}");
            assert!(round <= size_product);
            previous_round = round;
        }
    }
}

#[test]
fn normalization_stays_in_unit_interval() {
    let mut generator = rng::seeded(99);
    let trees: Vec<DepTree> = (0..30)
        .map(|_| {
            let (labels, edges, root) = random_tree(&mut generator, 8);
            DepTree::new(labels, edges, root).unwrap()
        })
        .collect();
    for a in &trees {
        for b in &trees {
            let value = normalized_wl_kernel(a, b, 2);
            assert!((0.0..=1.0 + 1e-12).contains(&value), "{value}");
        }
        assert_eq!(normalized_wl_kernel(a, a, 2), 1.0);
    }

    let matrix = kernel_matrix(&trees, &trees, 2).unwrap();
    for (i, a) in trees.iter().enumerate() {
        assert_eq!(matrix.get(i, i), 1.0);
        for (j, b) in trees.iter().enumerate() {
            assert_eq!(matrix.get(i, j), matrix.get(j, i));
            // the matrix entry is the f32 rounding of the scalar kernel
            assert_eq!(matrix.get(i, j), normalized_wl_kernel(a, b, 2) as f32);
        }
    }
}

#[test]
fn interning_never_collides_with_dense_label_space() {
    // a worst case for hashed labelings: many structurally near-identical
    // trees; exact interning must keep them apart exactly as strings do
    let mut generator = rng::seeded(0x1D);
    let mut raw: Vec<(Vec<Upos>, Vec<(u32, u32)>, u32)> = Vec::new();
    for _ in 0..40 {
        raw.push(random_tree(&mut generator, 6));
    }
    let trees: Vec<DepTree> = raw
        .iter()
        .map(|(l, e, r)| DepTree::new(l.clone(), e.clone(), *r).unwrap())
        .collect();

    let mut by_oracle: HashMap<(usize, usize), u64> = HashMap::new();
    for (i, a) in raw.iter().enumerate() {
        for (j, b) in raw.iter().enumerate() {
            by_oracle.insert((i, j), oracle_kernel((&a.0, &a.1), (&b.0, &b.1), 3));
        }
    }
    for i in 0..trees.len() {
        for j in 0..trees.len() {
            assert_eq!(
                wl_kernel(&trees[i], &trees[j], 3),
                by_oracle[&(i, j)],
                "pair ({i}, {j})"
            );
        }
    }
}
