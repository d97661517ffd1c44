//! Lexical divergence: Jensen-Shannon divergence between word-frequency
//! distributions, in base 2, scaled to a 0..100 percentage-point range.
//!
//! No smoothing is applied anywhere. Each KL term is computed over the
//! support of its first argument, where the midpoint mixture is strictly
//! positive by construction, so the value is exact for identical inputs and
//! maximal for disjoint ones.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};

use crate::corpus::{lexical_word_stream, Corpus};
use crate::error::{Error, Result};
use crate::math;

/// Word counts with their total, kept in sorted order so iteration (and
/// therefore float accumulation) is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreqDist {
    counts: BTreeMap<String, u64>,
    total: u64,
}

impl FreqDist {
    pub fn from_words<I, S>(words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut counts = BTreeMap::new();
        let mut total = 0u64;
        for word in words {
            *counts.entry(word.into()).or_insert(0) += 1;
            total += 1;
        }
        if total == 0 {
            return Err(Error::EmptyStream);
        }
        Ok(FreqDist { counts, total })
    }

    pub fn count(&self, word: &str) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }

    pub fn prob(&self, word: &str) -> f64 {
        self.count(word) as f64 / self.total as f64
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    /// Words and counts in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> + '_ {
        self.counts.iter().map(|(w, &c)| (w.as_str(), c))
    }
}

/// The mixture `M = (P + Q) / 2`, evaluated lazily per word.
#[derive(Debug, Clone, Copy)]
pub struct Midpoint<'a> {
    p: &'a FreqDist,
    q: &'a FreqDist,
}

impl<'a> Midpoint<'a> {
    pub fn new(p: &'a FreqDist, q: &'a FreqDist) -> Self {
        Midpoint { p, q }
    }

    pub fn prob(&self, word: &str) -> f64 {
        0.5 * (self.p.prob(word) + self.q.prob(word))
    }
}

/// `KL(P || M)` in bits, summed over the support of `P` in lexicographic
/// order. Errors if the mixture misses a word of `P`, which cannot happen
/// for a true midpoint and guards against misuse.
pub fn kl_divergence(p: &FreqDist, m: &Midpoint<'_>) -> Result<f64> {
    let total = p.total as f64;
    let mut sum = 0.0;
    for (word, count) in p.iter() {
        let pw = count as f64 / total;
        let mw = m.prob(word);
        if mw <= 0.0 {
            return Err(Error::MixtureSupportGap(word.to_string()));
        }
        sum += pw * math::log2(pw / mw);
    }
    Ok(sum)
}

/// Jensen-Shannon divergence between two distributions, as a percentage of
/// the 1-bit maximum: `100 * (KL(P||M) + KL(Q||M)) / 2`, clamped to
/// `[0, 100]` to absorb last-ulp rounding at the boundaries.
///
/// Identical probability vectors give exactly 0; disjoint supports give 100.
/// The value is symmetric and invariant under scaling all counts of one side
/// by a constant.
pub fn lexical_divergence(p: &FreqDist, q: &FreqDist) -> Result<f64> {
    if p.total == 0 || q.total == 0 {
        return Err(Error::EmptyDistribution);
    }
    let m = Midpoint::new(p, q);
    let jsd = 0.5 * (kl_divergence(p, &m)? + kl_divergence(q, &m)?);
    Ok((100.0 * jsd).clamp(0.0, 100.0))
}

/// Builds per-corpus distributions over the filtered word streams and
/// returns their divergence.
pub fn lexical_divergence_between(a: &Corpus, b: &Corpus, fold_case: bool) -> Result<f64> {
    let p = FreqDist::from_words(lexical_word_stream(a, fold_case)?)?;
    let q = FreqDist::from_words(lexical_word_stream(b, fold_case)?)?;
    lexical_divergence(&p, &q)
}
