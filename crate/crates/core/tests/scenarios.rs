//! Scripted multi-robot scenarios, certified by replaying their traces
//! through the contamination oracle.

use slidepursuit::engine::trace::RecordKind;
use slidepursuit::engine::{run, EndChoice, Guard, RunReport, Verdict, SERIALIZED_NOTE};
use slidepursuit::io::fixtures::fixture;
use slidepursuit::oracle::{replay, replay_full, OracleVerdict};
use slidepursuit::{Point, Polygon};

fn big_l() -> Polygon {
    let pts = [(0, 0), (8, 0), (8, 4), (4, 4), (4, 8), (0, 8)];
    Polygon::validate(pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
}

fn g(a: (i64, i64), b: (i64, i64)) -> Guard {
    Guard::new(Point::new(a.0, a.1), Point::new(b.0, b.1)).unwrap()
}

fn certified(poly: &Polygon, segs: &[Guard], report: &RunReport) {
    assert_eq!(report.verdict, Verdict::Cleared);
    for scale in [2, 4] {
        assert_eq!(replay(&report.trace, poly, segs, scale).unwrap(), OracleVerdict::Cleared);
    }
    assert_eq!(replay_full(&report.trace, poly, segs, 2).unwrap(), OracleVerdict::Cleared);
}

/// First robot other than the sender to start after the first signal.
fn responder(report: &RunReport) -> usize {
    let recs = &report.trace.records;
    let s = recs.iter().position(|r| r.kind == RecordKind::Signal).expect("a signal is sent");
    recs[s..].iter().find(|r| r.kind == RecordKind::Start).expect("someone responds").robot
}

#[test]
fn three_cover_tie_goes_to_lowest_id() {
    let poly = big_l();
    let waiter = g((6, 0), (6, 4));
    let cover = [g((1, 0), (1, 8)), g((2, 0), (2, 8)), g((3, 0), (3, 8))];
    // Every ordering of the three candidates hands the signal to robot 1.
    for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
        let mut segs = vec![waiter];
        segs.extend(order.iter().map(|&k| cover[k]));
        let report = run(&poly, &segs, 0, EndChoice::High, None).unwrap();
        assert_eq!(responder(&report), 1, "order {order:?}");
        certified(&poly, &segs, &report);
        let again = run(&poly, &segs, 0, EndChoice::High, None).unwrap();
        assert_eq!(again.trace, report.trace);
    }
}

#[test]
fn waiter_is_released_and_finishes() {
    let poly = big_l();
    let segs = [g((6, 0), (6, 4)), g((2, 0), (2, 8))];
    let report = run(&poly, &segs, 0, EndChoice::High, None).unwrap();
    let kinds: Vec<RecordKind> = report.trace.records.iter().map(|r| r.kind).collect();
    let signal = kinds.iter().position(|&k| k == RecordKind::Signal).unwrap();
    let release = kinds.iter().position(|&k| k == RecordKind::Release).unwrap();
    assert!(signal < release);
    assert_eq!(report.robots_used(), 2);
    certified(&poly, &segs, &report);
}

#[test]
fn two_pockets_are_signalled_in_turn() {
    let f = fixture("double-pocket").unwrap();
    let report = run(&f.polygon, &f.segments, 0, EndChoice::Low, None).unwrap();
    let signals: Vec<(usize, usize)> =
        report.trace.records.iter().filter(|r| r.kind == RecordKind::Signal).map(|r| (r.step, r.robot)).collect();
    assert_eq!(signals, [(1, 0), (7, 0)]);
    assert!(report.trace.header.notes.iter().any(|n| n == SERIALIZED_NOTE));
    assert_eq!(report.robots_used(), 3);
    certified(&f.polygon, &f.segments, &report);
}

#[test]
fn golden_fixtures_replay_cleared() {
    for name in ["l-shape", "l-shape-pair", "cross", "comb", "double-pocket", "mixed-cross"] {
        let f = fixture(name).unwrap();
        for start in 0..f.segments.len() {
            for end in [EndChoice::Low, EndChoice::High] {
                let report = run(&f.polygon, &f.segments, start, end, None).unwrap();
                certified(&f.polygon, &f.segments, &report);
            }
        }
    }
}
