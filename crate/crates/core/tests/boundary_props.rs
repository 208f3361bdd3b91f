//! Boundary algebra and instance round trips under proptest, checked against
//! the dense-sampling model in `common`.

mod common;

use num_rational::Ratio;
use proptest::prelude::*;
use slidepursuit::io::fixtures::{corpus_instance, fixture};
use slidepursuit::io::instance::{parse_instance, write_instance};
use slidepursuit::{Polygon, Region};

fn polygons() -> Vec<Polygon> {
    let mut v: Vec<Polygon> =
        ["rectangle", "l-shape", "cross", "comb"].iter().map(|n| fixture(n).unwrap().polygon).collect();
    v.push(corpus_instance(7).polygon);
    v
}

fn arcs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((0i64..400, 0i64..400), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn operations_match_sampling(
        which in 0usize..5,
        a in arcs(), b in arcs(),
        fa in prop::bool::weighted(0.1), fb in prop::bool::weighted(0.1),
        op in 0usize..4,
    ) {
        let poly = &polygons()[which];
        let ra = common::region_from(poly, &a, fa);
        let rb = common::region_from(poly, &b, fb);
        common::check_region(poly, &ra.0, &ra.1).map_err(TestCaseError::fail)?;
        common::check_op(poly, common::OPS[op], &ra, &rb).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn complement_is_an_involution(which in 0usize..5, a in arcs()) {
        let poly = &polygons()[which];
        let (r, _) = common::region_from(poly, &a, false);
        prop_assert_eq!(r.complement().complement(), r.clone());
        prop_assert!(r.union(&r.complement()).unwrap().is_full());
    }

    #[test]
    fn union_laws(which in 0usize..5, a in arcs(), b in arcs(), c in arcs()) {
        let poly = &polygons()[which];
        let (ra, _) = common::region_from(poly, &a, false);
        let (rb, _) = common::region_from(poly, &b, false);
        let (rc, _) = common::region_from(poly, &c, false);
        prop_assert_eq!(ra.union(&rb).unwrap(), rb.union(&ra).unwrap());
        prop_assert_eq!(ra.union(&rb).unwrap().union(&rc).unwrap(), ra.union(&rb.union(&rc).unwrap()).unwrap());
        prop_assert!(ra.union(&rb).unwrap().subtract(&rb).unwrap().is_subset(&ra).unwrap());
        // Re-canonicalizing a result is a no-op.
        prop_assert_eq!(Region::from_params(poly, ra.spans()), ra.clone());
    }

    #[test]
    fn lattice_params_walk_the_boundary(which in 0usize..5, t in 0i64..1000) {
        let poly = &polygons()[which];
        let t = t % poly.perimeter();
        // Walk the edges counterclockwise from vertex 0.
        let vs = poly.vertices();
        let mut left = t;
        let mut at = None;
        for i in 0..vs.len() {
            let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
            let len = (b.x - a.x).abs() + (b.y - a.y).abs();
            if left < len {
                at = Some(((a.x + (b.x - a.x).signum() * left), (a.y + (b.y - a.y).signum() * left)));
                break;
            }
            left -= len;
        }
        let bp = poly.point_at_param(&Ratio::from_integer(t));
        let p = poly.lattice_point(&bp).unwrap();
        prop_assert_eq!(Some((p.x, p.y)), at);
        prop_assert_eq!(poly.param_of(&bp), Ratio::from_integer(t));
    }

    #[test]
    fn instances_round_trip(seed in 0u64..500) {
        let f = corpus_instance(seed);
        let text = write_instance(&f.polygon, &f.segments);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back.polygon, &f.polygon);
        prop_assert_eq!(&back.segments, &f.segments);
        prop_assert_eq!(write_instance(&back.polygon, &back.segments), text);
    }
}
