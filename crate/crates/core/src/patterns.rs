//! Contrastive POS n-gram mining: which part-of-speech patterns a model
//! overuses relative to a native corpus, with frequencies normalized per
//! 40,000 n-grams so corpora of different sizes are comparable.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::corpus::{Corpus, Upos};
use crate::error::{Error, Result};
use crate::math;

pub const NORMALIZATION_BASE: f64 = 40_000.0;

/// Counts of UPOS n-grams of one fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosNgramTable {
    n: usize,
    counts: BTreeMap<Vec<Upos>, u64>,
    total: u64,
}

impl PosNgramTable {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, pattern: &[Upos]) -> u64 {
        self.counts.get(pattern).copied().unwrap_or(0)
    }

    /// Frequency normalized to a 40,000-n-gram corpus:
    /// `40000 * count / total`. Absent patterns give 0.
    pub fn per_40k(&self, pattern: &[Upos]) -> f64 {
        NORMALIZATION_BASE * self.count(pattern) as f64 / self.total as f64
    }

    /// Patterns and counts in lexicographic tag order.
    pub fn iter(&self) -> impl Iterator<Item = (&[Upos], u64)> + '_ {
        self.counts.iter().map(|(p, &c)| (p.as_slice(), c))
    }
}

/// Collects sliding-window n-grams over the UPOS sequence of every annotated
/// sentence. Windows never cross sentence boundaries; unannotated sentences
/// contribute nothing.
pub fn extract_pos_ngrams(corpus: &Corpus, n: usize) -> Result<PosNgramTable> {
    if n < 2 {
        return Err(Error::InvalidNgramOrder(n));
    }
    let mut counts: BTreeMap<Vec<Upos>, u64> = BTreeMap::new();
    let mut total = 0u64;
    for sentence in corpus.sentences() {
        let Some(tokens) = sentence.annotated_tokens() else {
            continue;
        };
        let tags: Vec<Upos> = tokens.iter().map(|t| t.upos()).collect();
        for window in tags.windows(n) {
            *counts.entry(window.to_vec()).or_insert(0) += 1;
            total += 1;
        }
    }
    if total == 0 {
        return Err(Error::EmptyNgramTable(n));
    }
    Ok(PosNgramTable { n, counts, total })
}

/// One row of the contrast table.
#[derive(Debug, Clone, PartialEq)]
pub struct ContrastEntry {
    pub pattern: Vec<Upos>,
    pub model_per_40k: f64,
    pub native_per_40k: f64,
    /// Present when a reference corpus was used to filter the candidates.
    pub reference_per_40k: Option<f64>,
    /// `log2((model + 0.5) / (native + 0.5))` over per-40k frequencies; the
    /// additive 0.5 keeps patterns absent from one side finite.
    pub score: f64,
    /// Example surface realizations, filled in by the caller.
    pub examples: Vec<Vec<String>>,
}

/// Scores every pattern seen in the model or native table and returns the
/// `top_k` most model-like ones.
///
/// With a reference table, only patterns whose reference frequency exceeds
/// their native frequency are kept; this focuses the table on patterns that
/// genuinely separate the two sources rather than artifacts of the native
/// sample. Ties are broken by model frequency (descending), then pattern
/// order, so the output is fully deterministic.
pub fn contrast_patterns(
    model: &PosNgramTable,
    native: &PosNgramTable,
    reference: Option<&PosNgramTable>,
    top_k: usize,
) -> Result<Vec<ContrastEntry>> {
    if model.n != native.n {
        return Err(Error::NgramOrderMismatch {
            left: model.n,
            right: native.n,
        });
    }
    if let Some(reference) = reference {
        if reference.n != model.n {
            return Err(Error::NgramOrderMismatch {
                left: model.n,
                right: reference.n,
            });
        }
    }

    let candidates: BTreeSet<&Vec<Upos>> =
        model.counts.keys().chain(native.counts.keys()).collect();
    let mut entries = Vec::new();
    for pattern in candidates {
        let model_per_40k = model.per_40k(pattern);
        let native_per_40k = native.per_40k(pattern);
        let reference_per_40k = reference.map(|r| r.per_40k(pattern));
        if let Some(ref_freq) = reference_per_40k {
            if ref_freq <= native_per_40k {
                continue;
            }
        }
        entries.push(ContrastEntry {
            pattern: pattern.clone(),
            model_per_40k,
            native_per_40k,
            reference_per_40k,
            score: math::log2((model_per_40k + 0.5) / (native_per_40k + 0.5)),
            examples: Vec::new(),
        });
    }
    entries.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .expect("scores are finite")
            .then_with(|| {
                b.model_per_40k
                    .partial_cmp(&a.model_per_40k)
                    .expect("frequencies are finite")
            })
            .then_with(|| a.pattern.cmp(&b.pattern))
    });
    entries.truncate(top_k);
    Ok(entries)
}

/// First `k` distinct surface realizations of `pattern` in document order.
/// May return fewer than `k`; unannotated sentences are skipped.
pub fn example_ngrams(corpus: &Corpus, pattern: &[Upos], k: usize) -> Vec<Vec<String>> {
    let mut seen = BTreeSet::new();
    let mut examples = Vec::new();
    if k == 0 || pattern.is_empty() {
        return examples;
    }
    'outer: for sentence in corpus.sentences() {
        let Some(tokens) = sentence.annotated_tokens() else {
            continue;
        };
        for window in tokens.windows(pattern.len()) {
            if window.iter().map(|t| t.upos()).ne(pattern.iter().copied()) {
                continue;
            }
            let surfaces: Vec<String> = window
                .iter()
                .map(|t| t.token().surface().to_string())
                .collect();
            if seen.insert(surfaces.clone()) {
                examples.push(surfaces);
                if examples.len() == k {
                    break 'outer;
                }
            }
        }
    }
    examples
}
