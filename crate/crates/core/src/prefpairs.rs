//! Preference-pair filtering: BLEU similarity between the chosen and
//! rejected responses of a pair, and a band filter that drops pairs whose
//! responses are near-duplicates, entirely unrelated, or too short to teach
//! anything.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

pub const DEFAULT_MAX_N: usize = 4;

/// Sentence-level BLEU of `hypothesis` against a single `reference`, with
/// n-gram orders `1..=max_n` weighted uniformly.
///
/// Unigram precision is the plain clipped count with no smoothing, so
/// zero unigram overlap gives exactly 0. Higher orders use add-one
/// smoothing, `(matches + 1) / (candidates + 1)`; an order with no
/// candidate n-grams (hypothesis shorter than `n`) contributes precision 1.
/// Brevity penalty is `min(1, exp(1 - |reference| / |hypothesis|))`.
pub fn sentence_bleu<S: AsRef<str>>(reference: &[S], hypothesis: &[S], max_n: usize) -> Result<f64> {
    assert!(max_n >= 1, "BLEU needs at least unigrams");
    if reference.is_empty() || hypothesis.is_empty() {
        return Err(Error::EmptyTokenList);
    }

    let mut log_sum = 0.0;
    for n in 1..=max_n {
        let reference_counts = ngram_counts(reference, n);
        let hypothesis_counts = ngram_counts(hypothesis, n);
        let candidates: u64 = hypothesis_counts.values().sum();
        let matches: u64 = hypothesis_counts
            .iter()
            .map(|(gram, &count)| {
                count.min(reference_counts.get(gram).copied().unwrap_or(0))
            })
            .sum();
        let precision = if n == 1 {
            if matches == 0 {
                return Ok(0.0);
            }
            matches as f64 / candidates as f64
        } else if candidates == 0 {
            1.0
        } else {
            (matches + 1) as f64 / (candidates + 1) as f64
        };
        log_sum += math::ln(precision);
    }

    let brevity = if hypothesis.len() >= reference.len() {
        1.0
    } else {
        math::exp(1.0 - reference.len() as f64 / hypothesis.len() as f64)
    };
    Ok(brevity * math::exp(log_sum / max_n as f64))
}

fn ngram_counts<S: AsRef<str>>(tokens: &[S], n: usize) -> BTreeMap<Vec<&str>, u64> {
    let mut counts = BTreeMap::new();
    if n <= tokens.len() {
        for window in tokens.windows(n) {
            let gram: Vec<&str> = window.iter().map(AsRef::as_ref).collect();
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// A prompt with its preferred and dispreferred responses. `bleu` scores the
/// chosen tokens against the rejected tokens as reference.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferencePair {
    pub prompt: String,
    pub chosen: String,
    pub rejected: String,
    pub chosen_tokens: Vec<String>,
    pub rejected_tokens: Vec<String>,
    pub bleu: f64,
}

impl PreferencePair {
    pub fn new(
        prompt: impl Into<String>,
        chosen: impl Into<String>,
        rejected: impl Into<String>,
        chosen_tokens: Vec<String>,
        rejected_tokens: Vec<String>,
    ) -> Result<Self> {
        let bleu = sentence_bleu(&rejected_tokens, &chosen_tokens, DEFAULT_MAX_N)?;
        Ok(PreferencePair {
            prompt: prompt.into(),
            chosen: chosen.into(),
            rejected: rejected.into(),
            chosen_tokens,
            rejected_tokens,
            bleu,
        })
    }

    pub fn chosen_len(&self) -> usize {
        self.chosen_tokens.len()
    }

    pub fn rejected_len(&self) -> usize {
        self.rejected_tokens.len()
    }
}

/// Filter band: pairs are kept when `bleu_low < bleu < bleu_high` (strict on
/// both ends) and both responses have at least `min_words` tokens.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterThresholds {
    pub bleu_low: f64,
    pub bleu_high: f64,
    pub min_words: usize,
}

impl Default for FilterThresholds {
    fn default() -> Self {
        FilterThresholds {
            bleu_low: 0.15,
            bleu_high: 0.9,
            min_words: 10,
        }
    }
}

/// Why a pair was kept or dropped. Length checks run before BLEU checks,
/// and the chosen side before the rejected side, so each pair gets the
/// first reason in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterVerdict {
    Ok,
    ChosenTooShort,
    RejectedTooShort,
    BleuTooLow,
    BleuTooHigh,
}

impl FilterVerdict {
    pub fn kept(self) -> bool {
        self == FilterVerdict::Ok
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FilterVerdict::Ok => "ok",
            FilterVerdict::ChosenTooShort => "chosen_too_short",
            FilterVerdict::RejectedTooShort => "rejected_too_short",
            FilterVerdict::BleuTooLow => "bleu_too_low",
            FilterVerdict::BleuTooHigh => "bleu_too_high",
        }
    }
}

impl FilterThresholds {
    pub fn verdict(&self, bleu: f64, chosen_len: usize, rejected_len: usize) -> FilterVerdict {
        if chosen_len < self.min_words {
            FilterVerdict::ChosenTooShort
        } else if rejected_len < self.min_words {
            FilterVerdict::RejectedTooShort
        } else if bleu <= self.bleu_low {
            FilterVerdict::BleuTooLow
        } else if bleu >= self.bleu_high {
            FilterVerdict::BleuTooHigh
        } else {
            FilterVerdict::Ok
        }
    }
}

pub fn evaluate_pair(pair: &PreferencePair, thresholds: &FilterThresholds) -> FilterVerdict {
    thresholds.verdict(pair.bleu, pair.chosen_len(), pair.rejected_len())
}

/// Running totals over a filtered dataset. Means cover kept pairs only.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FilterStats {
    total: u64,
    kept: u64,
    chosen_too_short: u64,
    rejected_too_short: u64,
    bleu_too_low: u64,
    bleu_too_high: u64,
    malformed: u64,
    kept_chosen_words: u64,
    kept_rejected_words: u64,
    kept_bleu_sum: f64,
}

impl FilterStats {
    pub fn record(&mut self, pair: &PreferencePair, verdict: FilterVerdict) {
        self.total += 1;
        match verdict {
            FilterVerdict::Ok => {
                self.kept += 1;
                self.kept_chosen_words += pair.chosen_len() as u64;
                self.kept_rejected_words += pair.rejected_len() as u64;
                self.kept_bleu_sum += pair.bleu;
            }
            FilterVerdict::ChosenTooShort => self.chosen_too_short += 1,
            FilterVerdict::RejectedTooShort => self.rejected_too_short += 1,
            FilterVerdict::BleuTooLow => self.bleu_too_low += 1,
            FilterVerdict::BleuTooHigh => self.bleu_too_high += 1,
        }
    }

    /// Counts an input record that never became a pair (bad schema, empty
    /// token lists). Not included in `total`.
    pub fn record_malformed(&mut self) {
        self.malformed += 1;
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn kept(&self) -> u64 {
        self.kept
    }

    pub fn rejected(&self) -> u64 {
        self.total - self.kept
    }

    pub fn chosen_too_short(&self) -> u64 {
        self.chosen_too_short
    }

    pub fn rejected_too_short(&self) -> u64 {
        self.rejected_too_short
    }

    pub fn bleu_too_low(&self) -> u64 {
        self.bleu_too_low
    }

    pub fn bleu_too_high(&self) -> u64 {
        self.bleu_too_high
    }

    pub fn malformed(&self) -> u64 {
        self.malformed
    }

    pub fn mean_kept_chosen_len(&self) -> f64 {
        if self.kept == 0 {
            0.0
        } else {
            self.kept_chosen_words as f64 / self.kept as f64
        }
    }

    pub fn mean_kept_rejected_len(&self) -> f64 {
        if self.kept == 0 {
            0.0
        } else {
            self.kept_rejected_words as f64 / self.kept as f64
        }
    }

    pub fn mean_kept_bleu(&self) -> f64 {
        if self.kept == 0 {
            0.0
        } else {
            self.kept_bleu_sum / self.kept as f64
        }
    }
}

/// Applies the band filter to a whole dataset, returning the kept pairs in
/// input order along with the stats.
pub fn filter_dataset<I>(pairs: I, thresholds: &FilterThresholds) -> (Vec<PreferencePair>, FilterStats)
where
    I: IntoIterator<Item = PreferencePair>,
{
    let mut kept = Vec::new();
    let mut stats = FilterStats::default();
    for pair in pairs {
        let verdict = evaluate_pair(&pair, thresholds);
        stats.record(&pair, verdict);
        if verdict.kept() {
            kept.push(pair);
        }
    }
    (kept, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn words(text: &str) -> Vec<String> {
        text.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn bleu_of_identical_sequences_is_one() {
        let t = words("the cat sat on the mat today okay fine");
        assert_eq!(sentence_bleu(&t, &t, 4).unwrap(), 1.0);
    }

    #[test]
    fn bleu_with_no_unigram_overlap_is_zero() {
        assert_eq!(
            sentence_bleu(&words("a b c d"), &words("x y z w"), 4).unwrap(),
            0.0
        );
    }

    #[test]
    fn bleu_matches_hand_computed_example() {
        let b = sentence_bleu(&words("a b c d"), &words("a b c x"), 4).unwrap();
        assert!((b - 0.658_037_006_476_246_2).abs() < 1e-12, "{b}");
    }

    #[test]
    fn short_hypothesis_orders_contribute_one() {
        // single-token hypothesis: p1 = 1, higher orders have no candidates
        let b = sentence_bleu(&words("a b c"), &words("a"), 4).unwrap();
        let expected = math::exp(1.0 - 3.0);
        assert!((b - expected).abs() < 1e-12, "{b}");
    }

    #[test]
    fn brevity_penalty_applies_only_to_short_hypotheses() {
        // perfect prefix, half the reference length: BP = exp(1 - 4/2)
        let b = sentence_bleu(&words("a b c d"), &words("a b"), 4).unwrap();
        assert!((b - math::exp(-1.0)).abs() < 1e-12, "{b}");
        // hypothesis longer than reference: no penalty, value from precisions only
        let b = sentence_bleu(&words("a b"), &words("a b a b"), 1).unwrap();
        assert_eq!(b, 0.5);
    }

    #[test]
    fn empty_sides_are_errors() {
        assert_eq!(
            sentence_bleu(&words("a"), &Vec::<String>::new(), 4),
            Err(Error::EmptyTokenList)
        );
        assert_eq!(
            sentence_bleu(&Vec::<String>::new(), &words("a"), 4),
            Err(Error::EmptyTokenList)
        );
    }

    #[test]
    fn verdict_band_is_strict() {
        let t = FilterThresholds::default();
        assert_eq!(t.verdict(0.5, 20, 20), FilterVerdict::Ok);
        assert_eq!(t.verdict(0.15, 20, 20), FilterVerdict::BleuTooLow);
        assert_eq!(t.verdict(0.9, 20, 20), FilterVerdict::BleuTooHigh);
        assert_eq!(t.verdict(0.1500001, 20, 20), FilterVerdict::Ok);
        assert_eq!(t.verdict(0.8999999, 20, 20), FilterVerdict::Ok);
        assert_eq!(t.verdict(0.5, 9, 20), FilterVerdict::ChosenTooShort);
        assert_eq!(t.verdict(0.5, 20, 9), FilterVerdict::RejectedTooShort);
        assert_eq!(t.verdict(0.5, 10, 10), FilterVerdict::Ok);
        // chosen length wins over rejected length, lengths win over bleu
        assert_eq!(t.verdict(0.95, 9, 9), FilterVerdict::ChosenTooShort);
        assert_eq!(t.verdict(0.95, 20, 9), FilterVerdict::RejectedTooShort);
    }

    fn pair(chosen: &str, rejected: &str) -> PreferencePair {
        PreferencePair::new("prompt", chosen, rejected, words(chosen), words(rejected)).unwrap()
    }

    #[test]
    fn pair_computes_its_bleu() {
        let p = pair("a b c x", "a b c d");
        assert!((p.bleu - 0.658_037_006_476_246_2).abs() < 1e-12);
        assert_eq!(p.chosen_len(), 4);
        assert_eq!(p.rejected_len(), 4);
    }

    #[test]
    fn filters_a_small_dataset() {
        let near_duplicate = pair(
            "the quick brown fox jumps over the lazy dog today",
            "the quick brown fox jumps over the lazy dog today",
        );
        let unrelated = pair(
            "alpha beta gamma delta epsilon zeta eta theta iota kappa",
            "one two three four five six seven eight nine ten",
        );
        let related = pair(
            "the quick brown fox jumps over the lazy dog while the calm cat watches",
            "a quick brown fox leaps over the lazy dog while a sleepy cat rests nearby",
        );
        assert!(near_duplicate.bleu >= 0.9);
        assert_eq!(unrelated.bleu, 0.0);
        assert!(related.bleu > 0.15 && related.bleu < 0.9, "{}", related.bleu);

        let (kept, stats) = filter_dataset(
            vec![near_duplicate, unrelated, related.clone()],
            &FilterThresholds::default(),
        );
        assert_eq!(kept, vec![related]);
        assert_eq!(stats.total(), 3);
        assert_eq!(stats.kept(), 1);
        assert_eq!(stats.rejected(), 2);
        assert_eq!(stats.bleu_too_high(), 1);
        assert_eq!(stats.bleu_too_low(), 1);
        assert_eq!(stats.mean_kept_chosen_len(), 14.0);
        assert_eq!(stats.mean_kept_rejected_len(), 15.0);
        assert!(stats.mean_kept_bleu() > 0.15);
    }

    #[test]
    fn empty_dataset_means_are_zero() {
        let (kept, stats) = filter_dataset(vec![], &FilterThresholds::default());
        assert!(kept.is_empty());
        assert_eq!(stats.total(), 0);
        assert_eq!(stats.mean_kept_bleu(), 0.0);
        assert_eq!(stats.mean_kept_chosen_len(), 0.0);
    }

    #[test]
    fn widening_the_band_never_drops_kept_pairs() {
        let narrow = FilterThresholds::default();
        let wide = FilterThresholds {
            bleu_low: 0.05,
            bleu_high: 0.95,
            min_words: 5,
        };
        for i in 0..=100 {
            let bleu = i as f64 / 100.0;
            for len in [5usize, 9, 10, 25] {
                if narrow.verdict(bleu, len, len).kept() {
                    assert!(wide.verdict(bleu, len, len).kept());
                }
            }
        }
    }
}
