#![allow(dead_code)]

use beurling::sequence::{generate, GeneratorKind, GeneratorSpec};
use beurling::{carleson_delta, BeurlingSystem, PointSequence, Tolerances};

pub const CORPUS_DELTA_MIN: f64 = 0.1;
pub const CORPUS_MAX_N: usize = 50;

fn delta_of(seq: &PointSequence) -> f64 {
    carleson_delta(seq, &Tolerances::default()).delta
}

/// Longest prefix-generated sequence (n <= max_n) with delta >= 0.1.
fn largest_separated(base: GeneratorSpec, max_n: usize) -> Option<PointSequence> {
    let mut best = None;
    for n in 1..=max_n {
        let seq = match generate(&GeneratorSpec { n, ..base.clone() }) {
            Ok(seq) => seq,
            Err(_) => break,
        };
        if delta_of(&seq) < CORPUS_DELTA_MIN {
            break;
        }
        best = Some(seq);
    }
    best
}

/// Random-ball sequence of the largest n <= target with delta >= 0.1,
/// trying a fixed list of seeds for each n.
fn separated_random(dim: usize, target: usize, seed: u64) -> PointSequence {
    for n in (2..=target).rev() {
        for attempt in 0..40 {
            let spec =
                GeneratorSpec { kind: GeneratorKind::RandomBall, n, dim, c: 0.5, r0: 0.0, seed: seed * 1000 + attempt };
            let seq = generate(&spec).unwrap();
            if delta_of(&seq) >= CORPUS_DELTA_MIN {
                return seq;
            }
        }
    }
    panic!("no separated random sequence in dimension {dim}");
}

/// Sequences with delta >= 0.1, n <= 50, dimensions 1 to 16.
pub fn corpus_sequences() -> Vec<PointSequence> {
    let mut out = Vec::new();
    for c in [0.3, 0.5, 0.7] {
        for (dim, r0) in [(1, 0.0), (4, 0.5)] {
            let spec = GeneratorSpec { kind: GeneratorKind::RadialGeometric, n: 1, dim, c, r0, seed: 0 };
            out.push(largest_separated(spec, CORPUS_MAX_N).expect("single point qualifies"));
        }
    }
    for dim in [2, 5, 9, 16] {
        for c in [0.5, 0.7] {
            let spec = GeneratorSpec { kind: GeneratorKind::OrthogonalDirections, n: 1, dim, c, r0: 0.3, seed: 0 };
            out.push(largest_separated(spec, dim).expect("single point qualifies"));
        }
    }
    for (dim, target, seed) in [(1, 4, 1), (2, 8, 2), (4, 16, 3), (8, 30, 4), (12, 40, 5), (16, 50, 6)] {
        out.push(separated_random(dim, target, seed));
    }
    out
}

pub fn corpus() -> Vec<BeurlingSystem> {
    corpus_sequences()
        .iter()
        .map(|seq| BeurlingSystem::build(seq, &Tolerances::default()).expect("corpus system builds"))
        .collect()
}
