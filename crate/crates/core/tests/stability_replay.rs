//! Replays the documented sampling protocols of the stability module with
//! independent bookkeeping and checks that the reported values match a
//! recomputation from the replayed subsets.

use natcorpus_core::corpus::{Corpus, Document, Sentence, Token};
use natcorpus_core::lexdiv::lexical_divergence_between;
use natcorpus_core::rng;
use natcorpus_core::stability::{bootstrap_variation, human_reference, DivergenceMetric};

fn doc(id: &str, words: &[&str]) -> Document {
    let tokens = words.iter().map(|w| Token::new(*w).unwrap()).collect();
    let sentence = Sentence::plain(format!("{id}s"), tokens).unwrap();
    Document::new(id, vec![sentence]).unwrap()
}

/// A corpus whose documents have visibly different vocabulary, so different
/// subsets give different divergences.
fn varied_corpus(tag: &str, docs: usize) -> Corpus {
    let documents = (0..docs)
        .map(|i| {
            let a = format!("{tag}shared");
            let b = format!("{tag}word{}", i % 7);
            let c = format!("{tag}word{}", i % 3);
            let d = format!("extra{}", i % 5);
            doc(
                &format!("{tag}{i}"),
                &[a.as_str(), b.as_str(), c.as_str(), d.as_str(), "common"],
            )
        })
        .collect();
    Corpus::new("en", documents).unwrap()
}

#[test]
fn human_reference_equals_replayed_split() {
    let corpus = varied_corpus("h", 11);
    let metric = DivergenceMetric::lexical();
    for seed in [0u64, 1, 17, 0xFFFF_FFFF_FFFF_FFFF] {
        let reported = human_reference(&corpus, &metric, seed).unwrap();

        // replay: shuffle 0..n with the same protocol, split ceil(n/2)
        let mut indices: Vec<usize> = (0..corpus.num_documents()).collect();
        let mut generator = rng::seeded(seed);
        rng::shuffle(&mut generator, &mut indices);
        let split = corpus.num_documents().div_ceil(2);
        let first = corpus.subset(&indices[..split]);
        let second = corpus.subset(&indices[split..]);
        assert_eq!(first.num_documents(), 6);
        assert_eq!(second.num_documents(), 5);

        let replayed = lexical_divergence_between(&first, &second, false).unwrap();
        assert_eq!(reported, replayed, "seed {seed}");
        assert!(reported > 0.0, "varied docs should not split evenly");
    }
}

#[test]
fn halves_partition_the_corpus() {
    let corpus = varied_corpus("p", 9);
    for seed in 0..20u64 {
        let mut indices: Vec<usize> = (0..9).collect();
        let mut generator = rng::seeded(seed);
        rng::shuffle(&mut generator, &mut indices);
        let split = 9usize.div_ceil(2);
        let mut all: Vec<usize> = indices.to_vec();
        all.sort_unstable();
        assert_eq!(all, (0..9).collect::<Vec<_>>());
        assert_eq!(indices[..split].len() + indices[split..].len(), 9);
    }
}

#[test]
fn bootstrap_equals_replayed_subsets() {
    let a = varied_corpus("a", 13);
    let b = varied_corpus("b", 10);
    let metric = DivergenceMetric::lexical();
    let (randomizations, fraction, seed) = (6usize, 0.5f64, 77u64);

    let report = bootstrap_variation(&metric, &a, &b, randomizations, fraction, seed).unwrap();
    assert_eq!(report.values.len(), randomizations);

    for (i, &reported) in report.values.iter().enumerate() {
        // replay iteration i: fresh generator at seed + i, draw a's subset
        // then b's from the same stream, sizes round(fraction * docs)
        let mut generator = rng::seeded(seed + i as u64);
        let size_a = ((fraction * 13.0).round() as usize).clamp(1, 13);
        let size_b = ((fraction * 10.0).round() as usize).clamp(1, 10);
        let idx_a = rng::sample_without_replacement(&mut generator, 13, size_a);
        let idx_b = rng::sample_without_replacement(&mut generator, 10, size_b);
        let replayed =
            lexical_divergence_between(&a.subset(&idx_a), &b.subset(&idx_b), false).unwrap();
        assert_eq!(reported, replayed, "iteration {i}");
    }

    let mean: f64 = report.values.iter().sum::<f64>() / randomizations as f64;
    assert_eq!(report.mean, mean);
    let min = report.values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = report
        .values
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    assert_eq!(report.min, min);
    assert_eq!(report.max, max);
    assert_eq!(report.rel_interval, (max - min) / mean);
}

#[test]
fn syntactic_metric_runs_through_the_protocols() {
    use natcorpus_core::corpus::{AnnotatedToken, Upos};

    let make = |tag: &str, docs: usize, flip: bool| {
        let documents = (0..docs)
            .map(|i| {
                let (u1, u2) = if flip && i % 2 == 0 {
                    (Upos::Adj, Upos::Noun)
                } else {
                    (Upos::Noun, Upos::Verb)
                };
                let tokens = vec![
                    AnnotatedToken::new(Token::new("w1").unwrap(), u1, 2, "dep"),
                    AnnotatedToken::new(Token::new("w2").unwrap(), u2, 0, "root"),
                ];
                let sentence = Sentence::annotated(format!("{tag}{i}s"), tokens).unwrap();
                Document::new(format!("{tag}{i}"), vec![sentence]).unwrap()
            })
            .collect();
        Corpus::new("en", documents).unwrap()
    };

    let human = make("h", 8, false);
    let model = make("m", 8, true);
    let metric = DivergenceMetric::syntactic();
    assert_eq!(human_reference(&human, &metric, 5).unwrap(), 0.0);
    let report = bootstrap_variation(&metric, &human, &model, 3, 0.5, 5).unwrap();
    assert!(report.mean > 0.0);
}
