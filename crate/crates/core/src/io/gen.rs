//! Seeded instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::Guard;
use crate::kernel::{Axis, Location};
use crate::visibility::covers_point;
use crate::{Coord, Point, Polygon};

/// A staircase-family polygon: a row of `steps + 1` columns standing on a
/// flat floor, each at least 2 wide, with neighbouring columns of different
/// heights. Every column boundary contributes exactly one reflex vertex, so
/// the polygon has `2 * steps + 4` vertices and `steps` reflex vertices. No
/// height carries more than two reflex vertices.
pub fn gen_staircase(seed: u64, steps: usize) -> Polygon {
    let steps = steps.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let widths: Vec<Coord> = (0..=steps).map(|_| rng.gen_range(2..=5)).collect();
        let mut heights: Vec<Coord> = Vec::with_capacity(steps + 1);
        while heights.len() <= steps {
            let h = rng.gen_range(2..=2 * steps as Coord + 4);
            if heights.last() != Some(&h) {
                heights.push(h);
            }
        }
        let mut per_level = std::collections::BTreeMap::new();
        for w in heights.windows(2) {
            *per_level.entry(w[0].min(w[1])).or_insert(0) += 1;
        }
        if per_level.values().any(|&c| c > 2) {
            continue;
        }
        let mut right = Vec::with_capacity(steps + 1);
        let mut x = 0;
        for w in &widths {
            x += w;
            right.push(x);
        }
        let mut pts = vec![Point::new(0, 0), Point::new(x, 0), Point::new(x, heights[steps])];
        for i in (0..steps).rev() {
            pts.push(Point::new(right[i], heights[i + 1]));
            pts.push(Point::new(right[i], heights[i]));
        }
        pts.push(Point::new(0, heights[0]));
        return Polygon::validate(pts).expect("staircase construction is valid");
    }
}

/// Greedy cover by maximal vertical chords.
///
/// Candidate chords sit at one seed-chosen integer abscissa strictly inside
/// every slab between consecutive vertex abscissae (on the slab's left line
/// when the slab is one unit wide). The first unseen cell of the vertex grid
/// picks the candidate seeing it that sees the most unseen cells; ties go to
/// the lowest abscissa, then the lowest chord.
pub fn gen_guard_cover(poly: &Polygon, seed: u64) -> Vec<Guard> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (xs, ys) = poly.grid_lines();
    let mut candidates = Vec::new();
    for w in xs.windows(2) {
        let x = if w[1] - w[0] >= 2 { rng.gen_range(w[0] + 1..w[1]) } else { w[0] };
        for (lo, hi) in poly.cross_section(Axis::Vertical, x) {
            if lo < hi {
                candidates.push(Guard::new(Point::new(x, lo), Point::new(x, hi)).expect("positive length"));
            }
        }
    }
    let doubled = poly.scaled(2);
    let mut cells = Vec::new();
    for i in 0..xs.len() - 1 {
        for j in 0..ys.len() - 1 {
            let c = Point::new(xs[i] + xs[i + 1], ys[j] + ys[j + 1]);
            if doubled.locate(&c) == Location::Inside {
                cells.push(c);
            }
        }
    }
    let sees: Vec<Vec<bool>> = candidates
        .iter()
        .map(|g| {
            let g2 = g.scaled(2);
            cells.iter().map(|c| covers_point(&doubled, &g2, c)).collect()
        })
        .collect();
    let mut unseen = vec![true; cells.len()];
    let mut chosen = Vec::new();
    while let Some(first) = unseen.iter().position(|&u| u) {
        let best = (0..candidates.len())
            .filter(|&k| sees[k][first])
            .max_by_key(|&k| {
                let gain = (0..cells.len()).filter(|&c| unseen[c] && sees[k][c]).count();
                (gain, std::cmp::Reverse(k))
            })
            .expect("every interior cell lies on some vertical chord");
        for c in 0..cells.len() {
            if sees[best][c] {
                unseen[c] = false;
            }
        }
        chosen.push(best);
    }
    chosen.sort_unstable();
    chosen.into_iter().map(|k| candidates[k]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::visibility::{coverage_complete, Coverage};

    #[test]
    fn seed_zero_one_step_is_an_l() {
        let p = gen_staircase(0, 1);
        assert_eq!(p.len(), 6);
        assert_eq!(p.reflex_vertices().len(), 1);
    }

    #[test]
    fn staircases_are_valid_and_covered() {
        for seed in 0..20 {
            for steps in [1, 3, 7, 12] {
                let p = gen_staircase(seed, steps);
                assert_eq!(p.len(), 2 * steps + 4);
                assert_eq!(p.reflex_vertices().len(), steps);
                let cover = gen_guard_cover(&p, seed);
                assert!(!cover.is_empty() && cover.len() <= steps + 1);
                assert_eq!(coverage_complete(&p, &cover), Coverage::Complete);
            }
        }
    }

    #[test]
    fn rectangle_needs_one_segment() {
        let p =
            Polygon::validate(vec![Point::new(0, 0), Point::new(4, 0), Point::new(4, 4), Point::new(0, 4)]).unwrap();
        assert_eq!(gen_guard_cover(&p, 0).len(), 1);
    }

    #[test]
    fn deterministic() {
        assert_eq!(gen_staircase(5, 6), gen_staircase(5, 6));
        let p = gen_staircase(5, 6);
        assert_eq!(gen_guard_cover(&p, 5), gen_guard_cover(&p, 5));
    }
}
