//! Trains on a generated corpus and prints the learning curve.
//!
//! `cargo run --release --example synthetic_curve -- [sentences] [seed]`

use std::time::Instant;

use namefinder::experiment::{learning_curve, DEFAULT_FRACTIONS};
use namefinder::synth::{generate, SynthConfig};
use namefinder::FeatureConfig;

fn main() -> namefinder::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(5000);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);

    let corpus = generate(&SynthConfig::default(), n, seed);
    let (training, test) = corpus.split_at(n * 4 / 5);
    let started = Instant::now();
    let rows = learning_curve(training, test, &DEFAULT_FRACTIONS, FeatureConfig::default(), 1.0)?;
    for row in &rows {
        println!(
            "{:.4} {:>7} {:.4}",
            row.fraction, row.words, row.report.overall.f_measure
        );
    }
    for row in &rows {
        print!("{}", row.report.to_table());
    }
    eprintln!("elapsed {:.2?}", started.elapsed());
    Ok(())
}
