//! Benchmark fixtures shared by the criterion targets.

use kakeya_core::{construct, Construction, FieldSpec, PointSet};

/// A greedy Kakeya set over `spec` in dimension `n`.
pub fn greedy_set(spec: &str, n: usize) -> PointSet {
    let f = FieldSpec::parse(spec).expect("valid field spec");
    construct(Construction::GreedyLines, &f, n, 0).expect("small space")
}
