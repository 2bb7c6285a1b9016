use namefinder::experiment::{evaluate, learning_curve};
use namefinder::synth::{generate, SynthConfig};
use namefinder::{train, Error, FeatureConfig};

fn corpus() -> (Vec<namefinder::AnnotatedSentence>, Vec<namefinder::AnnotatedSentence>) {
    let mut all = generate(&SynthConfig::default(), 1200, 7);
    let test = all.split_off(1000);
    (all, test)
}

#[test]
fn full_fraction_is_plain_train_and_evaluate() {
    let (training, test) = corpus();
    let rows = learning_curve(&training, &test, &[1.0], FeatureConfig::default(), 1.0).unwrap();
    let model = train(&training, FeatureConfig::default()).unwrap();
    assert_eq!(rows[0].report, evaluate(&model, &test, 1.0).unwrap());
    assert_eq!(rows[0].sentences, training.len());
    assert_eq!(rows[0].words, training.iter().map(|s| s.tokens.len()).sum::<usize>());
}

#[test]
fn half_data_is_not_materially_better() {
    let (training, test) = corpus();
    let rows = learning_curve(&training, &test, &[1.0, 0.5], FeatureConfig::default(), 1.0).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1].sentences, 500);
    assert!(rows[0].report.overall.f_measure >= rows[1].report.overall.f_measure - 0.05);
}

#[test]
fn runs_are_reproducible() {
    let (training, test) = corpus();
    let a = learning_curve(&training, &test, &[1.0, 0.25], FeatureConfig::default(), 1.0).unwrap();
    let b = learning_curve(&training, &test, &[1.0, 0.25], FeatureConfig::default(), 1.0).unwrap();
    assert_eq!(a, b);
    assert_eq!(a[1].report.to_record(), b[1].report.to_record());
}

#[test]
fn bad_fractions_are_reported_with_their_value() {
    let (training, test) = corpus();
    for f in [0.0, 1.5] {
        match learning_curve(&training, &test, &[f], FeatureConfig::default(), 1.0) {
            Err(Error::Experiment { fraction, .. }) => assert_eq!(fraction, f),
            other => panic!("{other:?}"),
        }
    }
    // A fraction too small to leave two sentences fails in training.
    assert!(learning_curve(&training[..3], &test, &[0.2], FeatureConfig::default(), 1.0).is_err());
}

#[test]
fn generator_is_deterministic_and_valid() {
    let a = generate(&SynthConfig::default(), 300, 11);
    assert_eq!(a, generate(&SynthConfig::default(), 300, 11));
    assert_ne!(a, generate(&SynthConfig::default(), 300, 12));
    assert!(a.iter().all(|s| s.is_valid() && !s.tokens.is_empty()));
}
