//! Hand-written fixtures and the generated staircase corpus.

use super::gen::{gen_guard_cover, gen_staircase};
use super::instance::{parse_instance, InstanceFile};

/// Named hand-written instances. `mixed-cross` has a horizontal and a
/// vertical segment; all others use parallel segments only.
pub const FIXTURES: &[(&str, &str)] = &[
    ("rectangle", "ORTHO 1\nP 4\n0 0\n4 0\n4 4\n0 4\nS 1\n2 0 2 4\n"),
    ("l-shape", "ORTHO 1\nP 6\n0 0\n4 0\n4 2\n2 2\n2 4\n0 4\nS 1\n1 0 1 4\n"),
    ("l-shape-pair", "ORTHO 1\nP 6\n0 0\n4 0\n4 2\n2 2\n2 4\n0 4\nS 2\n1 2 1 4\n3 0 3 2\n"),
    ("cross", "ORTHO 1\nP 12\n2 0\n4 0\n4 2\n6 2\n6 4\n4 4\n4 6\n2 6\n2 4\n0 4\n0 2\n2 2\nS 1\n3 0 3 6\n"),
    (
        "comb",
        "ORTHO 1\nP 12\n0 0\n10 0\n10 4\n8 4\n8 2\n6 2\n6 5\n4 5\n4 3\n2 3\n2 6\n0 6\nS 3\n1 0 1 6\n5 0 5 5\n9 0 9 4\n",
    ),
    // Robot 0 starting low faces two contaminated pockets under its first
    // chord and has to signal for them one at a time.
    (
        "double-pocket",
        "ORTHO 1\nP 10\n0 0\n2 0\n2 2\n3 2\n3 0\n5 0\n5 2\n7 2\n7 4\n0 4\nS 3\n4 2 4 4\n1 0 1 4\n4 0 4 2\n",
    ),
    (
        "mixed-cross",
        "ORTHO 1\nP 12\n2 0\n4 0\n4 2\n6 2\n6 4\n4 4\n4 6\n2 6\n2 4\n0 4\n0 2\n2 2\nS 2\n3 0 3 6\n0 3 6 3\n",
    ),
];

pub fn fixture(name: &str) -> Option<InstanceFile> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| parse_instance(t).expect("fixture parses"))
}

/// All fixtures, parsed, in declaration order.
pub fn fixtures() -> Vec<(String, InstanceFile)> {
    FIXTURES.iter().map(|(n, t)| (n.to_string(), parse_instance(t).expect("fixture parses"))).collect()
}

/// Staircase `seed` of the corpus: `1 + seed % 12` steps, at most 28 vertices,
/// with its greedy vertical cover.
pub fn corpus_instance(seed: u64) -> InstanceFile {
    let polygon = gen_staircase(seed, 1 + (seed % 12) as usize);
    let segments = gen_guard_cover(&polygon, seed);
    InstanceFile { polygon, segments }
}

/// The 50 generated corpus instances.
pub fn corpus() -> Vec<(String, InstanceFile)> {
    (0..50).map(|s| (format!("staircase-{s}"), corpus_instance(s))).collect()
}
