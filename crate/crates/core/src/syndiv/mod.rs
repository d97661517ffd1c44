//! Syntactic divergence: squared maximum mean discrepancy between sets of
//! dependency trees under the Weisfeiler-Lehman subtree kernel.
//!
//! Trees carry UPOS node labels and undirected structure; direction and
//! dependency relations are deliberately ignored. The kernel counts matching
//! WL labels over iterations `0..=h` (default `h = 2`), is normalized to
//! `[0, 1]` per pair, and feeds a biased MMD² estimate scaled to `[0, 200]`.

mod matrix;
mod wl;

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::corpus::{Corpus, Sentence, Upos};
use crate::error::{Error, Result};
use crate::math;

pub use matrix::{mmd2, KernelMatrix};

/// A dependency tree reduced to what the kernel consumes: UPOS labels,
/// undirected edges as `(parent, child)` index pairs, and the root index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepTree {
    labels: Vec<Upos>,
    edges: Vec<(u32, u32)>,
    root: u32,
}

impl DepTree {
    /// Validates connectivity: exactly one root, every other node with one
    /// parent, all nodes reachable. `edges` are `(parent, child)` pairs.
    pub fn new(labels: Vec<Upos>, edges: Vec<(u32, u32)>, root: u32) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidTree("tree has no nodes".to_string()));
        }
        if root as usize >= n {
            return Err(Error::InvalidTree(format!(
                "root {root} out of range for {n} nodes"
            )));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{n} nodes need {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut parent = vec![None; n];
        for &(p, c) in &edges {
            if p as usize >= n || c as usize >= n {
                return Err(Error::InvalidTree(format!("edge ({p}, {c}) out of range")));
            }
            if c == root {
                return Err(Error::InvalidTree("root has a parent".to_string()));
            }
            if parent[c as usize].replace(p).is_some() {
                return Err(Error::InvalidTree(format!("node {c} has two parents")));
            }
        }
        let tree = DepTree { labels, edges, root };
        let mut seen = vec![false; n];
        let mut stack = vec![root as usize];
        seen[root as usize] = true;
        let mut reached = 1;
        let adjacency = tree.adjacency();
        while let Some(v) = stack.pop() {
            for &u in &adjacency[v] {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    reached += 1;
                    stack.push(u as usize);
                }
            }
        }
        if reached != n {
            return Err(Error::InvalidTree("graph is not connected".to_string()));
        }
        Ok(tree)
    }

    /// Converts an annotated sentence, keeping token order as node order.
    pub fn from_sentence(sentence: &Sentence) -> Result<Self> {
        let Some(tokens) = sentence.annotated_tokens() else {
            return Err(Error::MissingAnnotation(sentence.id().to_string()));
        };
        let labels = tokens.iter().map(|t| t.upos()).collect();
        let mut edges = Vec::with_capacity(tokens.len().saturating_sub(1));
        let mut root = 0;
        for (i, tok) in tokens.iter().enumerate() {
            if tok.head() == 0 {
                root = i as u32;
            } else {
                edges.push((tok.head() - 1, i as u32));
            }
        }
        // Sentence construction already validated the tree shape.
        Ok(DepTree {
            labels,
            edges,
            root,
        })
    }

    /// Like [`from_sentence`](Self::from_sentence) but drops punctuation
    /// nodes, reattaching their children to the nearest kept ancestor. A
    /// punctuation root is kept so the result stays a tree.
    pub fn from_sentence_pruned(sentence: &Sentence) -> Result<Self> {
        let Some(tokens) = sentence.annotated_tokens() else {
            return Err(Error::MissingAnnotation(sentence.id().to_string()));
        };
        let root_idx = tokens
            .iter()
            .position(|t| t.head() == 0)
            .expect("validated sentence has a root");
        let keep: Vec<bool> = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| t.upos() != Upos::Punct || i == root_idx)
            .collect();
        if keep.iter().all(|&k| k) {
            return Self::from_sentence(sentence);
        }

        let mut new_index = vec![u32::MAX; tokens.len()];
        let mut labels = Vec::new();
        for (i, tok) in tokens.iter().enumerate() {
            if keep[i] {
                new_index[i] = labels.len() as u32;
                labels.push(tok.upos());
            }
        }
        let mut edges = Vec::with_capacity(labels.len() - 1);
        for (i, tok) in tokens.iter().enumerate() {
            if !keep[i] || i == root_idx {
                continue;
            }
            let mut head = tok.head() as usize;
            while !keep[head - 1] {
                head = tokens[head - 1].head() as usize;
            }
            edges.push((new_index[head - 1], new_index[i]));
        }
        Ok(DepTree {
            labels,
            edges,
            root: new_index[root_idx],
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Upos] {
        &self.labels
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    /// Undirected neighbor lists.
    pub(crate) fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adjacency = vec![Vec::new(); self.labels.len()];
        for &(p, c) in &self.edges {
            adjacency[p as usize].push(c);
            adjacency[c as usize].push(p);
        }
        adjacency
    }
}

/// One tree per sentence, in document order.
pub fn corpus_trees(corpus: &Corpus, prune_punct: bool) -> Result<Vec<DepTree>> {
    corpus
        .sentences()
        .map(|s| {
            if prune_punct {
                DepTree::from_sentence_pruned(s)
            } else {
                DepTree::from_sentence(s)
            }
        })
        .collect()
}

/// Raw WL subtree kernel: matching label counts summed over iterations
/// `0..=iterations`. Always a nonnegative integer.
pub fn wl_kernel(a: &DepTree, b: &DepTree, iterations: u32) -> u64 {
    let profiles = wl::build_profiles([a, b], iterations);
    wl::profile_dot(&profiles[0], &profiles[1], 0, iterations)
}

/// Kernel normalized to `[0, 1]`: `K(a,b) / sqrt(K(a,a) * K(b,b))`.
/// Self-similarity is exactly 1, since the radicand is then an exact square.
pub fn normalized_wl_kernel(a: &DepTree, b: &DepTree, iterations: u32) -> f64 {
    let profiles = wl::build_profiles([a, b], iterations);
    let cross = wl::profile_dot(&profiles[0], &profiles[1], 0, iterations) as f64;
    let self_a = wl::profile_self(&profiles[0], 0, iterations) as f64;
    let self_b = wl::profile_self(&profiles[1], 0, iterations) as f64;
    cross / math::sqrt(self_a * self_b)
}

/// Dense normalized kernel matrix between two tree sets over iterations
/// `0..=iterations`.
pub fn kernel_matrix(rows: &[DepTree], cols: &[DepTree], iterations: u32) -> Result<KernelMatrix> {
    kernel_matrix_range(rows, cols, 0, iterations)
}

/// Same, restricted to iterations `min_iteration..=iterations`. The default
/// range starts at 0; a higher floor isolates the contribution of deeper
/// neighborhoods.
pub fn kernel_matrix_range(
    rows: &[DepTree],
    cols: &[DepTree],
    min_iteration: u32,
    iterations: u32,
) -> Result<KernelMatrix> {
    check_range(min_iteration, iterations)?;
    if rows.is_empty() || cols.is_empty() {
        return Err(Error::EmptyTreeSet);
    }
    let profiles = wl::build_profiles(rows.iter().chain(cols.iter()), iterations);
    Ok(normalized_block(
        &profiles,
        (0, rows.len()),
        (rows.len(), cols.len()),
        min_iteration,
        iterations,
    ))
}

/// Options for [`syntactic_divergence_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynDivOptions {
    /// WL iteration cap `h`; the kernel sums iterations `min_iteration..=iterations`.
    pub iterations: u32,
    pub min_iteration: u32,
    /// Drop punctuation nodes from trees before profiling.
    pub prune_punct: bool,
}

impl Default for SynDivOptions {
    fn default() -> Self {
        SynDivOptions {
            iterations: 2,
            min_iteration: 0,
            prune_punct: false,
        }
    }
}

/// MMD² between the dependency trees of two corpora under the normalized WL
/// kernel with the given iteration cap.
pub fn syntactic_divergence(reference: &Corpus, candidate: &Corpus, iterations: u32) -> Result<f64> {
    syntactic_divergence_with(
        reference,
        candidate,
        &SynDivOptions {
            iterations,
            ..SynDivOptions::default()
        },
    )
}

pub fn syntactic_divergence_with(
    reference: &Corpus,
    candidate: &Corpus,
    options: &SynDivOptions,
) -> Result<f64> {
    let trees_a = corpus_trees(reference, options.prune_punct)?;
    let trees_b = corpus_trees(candidate, options.prune_punct)?;
    divergence_from_trees(&trees_a, &trees_b, options.min_iteration, options.iterations)
}

/// The tree-set form of the divergence: profiles both sets against a shared
/// labeling, builds the three normalized matrices, and applies [`mmd2`].
pub fn divergence_from_trees(
    a: &[DepTree],
    b: &[DepTree],
    min_iteration: u32,
    iterations: u32,
) -> Result<f64> {
    check_range(min_iteration, iterations)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyTreeSet);
    }
    let profiles = wl::build_profiles(a.iter().chain(b.iter()), iterations);
    let k_aa = normalized_block(&profiles, (0, a.len()), (0, a.len()), min_iteration, iterations);
    let k_bb = normalized_block(
        &profiles,
        (a.len(), b.len()),
        (a.len(), b.len()),
        min_iteration,
        iterations,
    );
    let k_ab = normalized_block(
        &profiles,
        (0, a.len()),
        (a.len(), b.len()),
        min_iteration,
        iterations,
    );
    mmd2(&k_aa, &k_bb, &k_ab)
}

fn check_range(min_iteration: u32, iterations: u32) -> Result<()> {
    if min_iteration > iterations {
        return Err(Error::InvalidIterationRange {
            min: min_iteration,
            max: iterations,
        });
    }
    Ok(())
}

/// Fills one block of the normalized kernel matrix from shared profiles.
/// `rows`/`cols` are `(offset, len)` into the profile list.
fn normalized_block(
    profiles: &[wl::TreeProfile],
    rows: (usize, usize),
    cols: (usize, usize),
    min_iteration: u32,
    iterations: u32,
) -> KernelMatrix {
    let selfs: Vec<f64> = profiles
        .iter()
        .map(|p| wl::profile_self(p, min_iteration, iterations) as f64)
        .collect();
    KernelMatrix::fill(rows.1, cols.1, |i, j| {
        let (a, b) = (rows.0 + i, cols.0 + j);
        let cross = wl::profile_dot(&profiles[a], &profiles[b], min_iteration, iterations) as f64;
        (cross / math::sqrt(selfs[a] * selfs[b])) as f32
    })
}
