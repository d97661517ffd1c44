//! Stability protocols around the divergence metrics: the human-reference
//! baseline (divergence between two halves of the same native corpus) and
//! bootstrap variation across random document subsets.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::lexdiv::lexical_divergence_between;
use crate::rng;
use crate::math;
use crate::syndiv::{syntactic_divergence_with, SynDivOptions};

/// Which divergence to run in a protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceMetric {
    Lexical { fold_case: bool },
    Syntactic { iterations: u32 },
}

impl DivergenceMetric {
    pub fn lexical() -> Self {
        DivergenceMetric::Lexical { fold_case: false }
    }

    pub fn syntactic() -> Self {
        DivergenceMetric::Syntactic { iterations: 2 }
    }

    pub fn evaluate(&self, a: &Corpus, b: &Corpus) -> Result<f64> {
        match *self {
            DivergenceMetric::Lexical { fold_case } => lexical_divergence_between(a, b, fold_case),
            DivergenceMetric::Syntactic { iterations } => syntactic_divergence_with(
                a,
                b,
                &SynDivOptions {
                    iterations,
                    ..SynDivOptions::default()
                },
            ),
        }
    }
}

/// Divergence between two non-overlapping halves of one corpus: shuffle the
/// documents with the seeded generator, split (the first half takes the
/// extra document when the count is odd), and evaluate the metric across
/// the halves. This is the scale against which a model's divergence is
/// judged; sampling noise alone produces this much.
pub fn human_reference(corpus: &Corpus, metric: &DivergenceMetric, seed: u64) -> Result<f64> {
    let n = corpus.num_documents();
    if n < 2 {
        return Err(Error::TooFewDocuments { need: 2, got: n });
    }
    let mut indices: Vec<usize> = (0..n).collect();
    let mut generator = rng::seeded(seed);
    rng::shuffle(&mut generator, &mut indices);
    let split = n.div_ceil(2);
    let first = corpus.subset(&indices[..split]);
    let second = corpus.subset(&indices[split..]);
    metric.evaluate(&first, &second)
}

/// Per-iteration values of a bootstrap run plus their spread.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationReport {
    pub values: Vec<f64>,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    /// `(max - min) / mean`, or 0 when the mean is 0 (all values are then 0
    /// too, since divergences are nonnegative).
    pub rel_interval: f64,
}

/// Repeats the metric on `randomizations` random document subsets of both
/// corpora. Iteration `i` uses a fresh generator seeded with `seed + i` and
/// draws the subset of `a` first, then the subset of `b`, from that one
/// stream. Subset sizes are `round(fraction * docs)` clamped to at least 1.
pub fn bootstrap_variation(
    metric: &DivergenceMetric,
    a: &Corpus,
    b: &Corpus,
    randomizations: usize,
    fraction: f64,
    seed: u64,
) -> Result<VariationReport> {
    if randomizations < 2 {
        return Err(Error::InvalidRandomizations(randomizations));
    }
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidFraction(fraction));
    }

    let mut values = Vec::with_capacity(randomizations);
    for i in 0..randomizations {
        let mut generator = rng::seeded(seed.wrapping_add(i as u64));
        let sub_a = a.subset(&draw(&mut generator, a.num_documents(), fraction));
        let sub_b = b.subset(&draw(&mut generator, b.num_documents(), fraction));
        let value = metric
            .evaluate(&sub_a, &sub_b)
            .map_err(|source| Error::BootstrapIteration {
                index: i,
                source: Box::new(source),
            })?;
        values.push(value);
    }

    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let rel_interval = if mean == 0.0 { 0.0 } else { (max - min) / mean };
    Ok(VariationReport {
        values,
        mean,
        min,
        max,
        rel_interval,
    })
}

fn draw(generator: &mut rng::ChaCha8Rng, docs: usize, fraction: f64) -> Vec<usize> {
    let k = (math::round(fraction * docs as f64) as usize).clamp(1, docs);
    rng::sample_without_replacement(generator, docs, k)
}
