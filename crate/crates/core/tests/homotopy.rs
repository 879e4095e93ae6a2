mod common;

use std::collections::HashSet;
use std::sync::Arc;

use common::{point_index, RawCert};
use digitop::catalog::{mss18, mss18_contraction, mss18_point, simple_closed_curve};
use digitop::homotopy::{ContractionFailure, Endpoint, HomotopyError};
use digitop::search::{MapGraph, MapKey};
use digitop::{ContractionVerdict, DigitalImage, DigitalMap, Homotopy, Verdict, Violation};
use rand::prelude::*;

fn label(h: &Homotopy, i: usize) -> usize {
    h.domain().index_of(&mss18_point(i)).unwrap()
}

#[test]
fn h_contracts_onto_p6() {
    for adj in [18, 26] {
        let h = mss18_contraction(adj).unwrap();
        assert_eq!(h.m(), 3);
        let v = h.is_contraction().unwrap();
        assert_eq!(v, ContractionVerdict::Contraction { target: mss18_point(6) });
        let raw = RawCert::of(&h);
        let id: Vec<usize> = (0..10).collect();
        let q = vec![label(&h, 6); 10];
        assert!(raw.view().check(&id, &q).accepted());
    }
}

#[test]
fn jump_at_p0_is_reported_at_t0() {
    let h = mss18_contraction(18).unwrap();
    let bad = h.with_entry(1, label(&h, 0), label(&h, 7)).unwrap();
    let raw = RawCert::of(&bad);
    assert!(raw.view().path_broken_at(label(&h, 0), 0));
    match bad.is_contraction().unwrap() {
        ContractionVerdict::NotContraction { failure: ContractionFailure::NotAHomotopy { target, violation } } => {
            assert_eq!(target, mss18_point(6));
            assert_eq!(
                violation,
                Violation::Path { x: mss18_point(0), t: 0, from: mss18_point(0), to: mss18_point(7) }
            );
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn reverse_and_truncation() {
    let h = mss18_contraction(18).unwrap();
    let r = h.reverse();
    assert!(!r.is_contraction().unwrap().is_contraction());
    assert!(r.verify_free().is_accepted());
    assert_eq!(r.reverse(), h);

    let cut = Homotopy::new(h.steps()[..3].to_vec()).unwrap();
    assert_eq!(cut.m(), 2);
    assert!(matches!(
        cut.is_contraction().unwrap(),
        ContractionVerdict::NotContraction { failure: ContractionFailure::EndNotConstant { .. } }
    ));
    assert!(cut.verify_free().is_accepted());

    let lone = Homotopy::new(vec![DigitalMap::identity(h.domain().clone())]).unwrap();
    assert_eq!(lone.m(), 0);
    assert!(lone.verify_free().is_accepted());
    assert!(Homotopy::new(vec![]).is_err());
}

#[test]
fn loop_through_the_constant() {
    let h = mss18_contraction(18).unwrap();
    let round = h.concatenate(&h.reverse()).unwrap();
    assert_eq!(round.m(), 6);
    let id = DigitalMap::identity(h.domain().clone());
    assert_eq!(round.verify(&id, &id).unwrap(), Verdict::Accepted);
    assert_eq!(h.concatenate(&h).unwrap_err(), HomotopyError::JunctionMismatch);

    let a = Homotopy::new(h.steps()[..2].to_vec()).unwrap();
    let b = Homotopy::new(h.steps()[1..3].to_vec()).unwrap();
    let c = Homotopy::new(h.steps()[2..].to_vec()).unwrap();
    let left = a.concatenate(&b).unwrap().concatenate(&c).unwrap();
    let right = a.concatenate(&b.concatenate(&c).unwrap()).unwrap();
    assert_eq!(left, right);
    assert_eq!(left, h);
}

#[test]
fn endpoint_images_must_match() {
    let h = mss18_contraction(18).unwrap();
    let other = Arc::new(mss18(26).unwrap());
    let id = DigitalMap::identity(other);
    assert_eq!(h.verify(&id, &id).unwrap_err(), HomotopyError::EndpointImageMismatch);
}

/// Re-checks a rejection witness against the raw certificate. `f` and `g`
/// are the required endpoint tables.
fn replays(h: &Homotopy, v: &Violation, f: &[usize], g: &[usize]) -> bool {
    let raw = RawCert::of(h);
    let view = raw.view();
    let dom = h.domain();
    let cod = h.codomain();
    match v {
        Violation::Endpoint { which, x, t, expected, found } => {
            let xi = point_index(dom, x);
            let (want, at) = match which {
                Endpoint::Start => (f[xi], 0),
                Endpoint::End => (g[xi], h.m()),
            };
            *t == at
                && raw.steps[at][xi] == point_index(cod, found)
                && want == point_index(cod, expected)
                && want != raw.steps[at][xi]
        }
        Violation::Path { x, t, from, to } => {
            let xi = point_index(dom, x);
            view.path_broken_at(xi, *t)
                && raw.steps[*t][xi] == point_index(cod, from)
                && raw.steps[*t + 1][xi] == point_index(cod, to)
        }
        Violation::Continuity { t, x, x2, fx, fx2 } => {
            let (a, b) = (point_index(dom, x), point_index(dom, x2));
            view.step_broken_at(*t, a, b)
                && raw.steps[*t][a] == point_index(cod, fx)
                && raw.steps[*t][b] == point_index(cod, fx2)
        }
    }
}

/// The oracle's contraction verdict: last step constant and all three
/// conditions hold against identity and that constant.
fn oracle_contraction(h: &Homotopy) -> Option<usize> {
    let raw = RawCert::of(h);
    let last = raw.steps.last().unwrap();
    if last.is_empty() || last.iter().any(|&v| v != last[0]) {
        return None;
    }
    let id: Vec<usize> = (0..last.len()).collect();
    raw.view().check(&id, last).accepted().then_some(last[0])
}

#[test]
fn every_single_entry_mutation_of_h() {
    let mut mutations = 0;
    for adj in [18, 26] {
        let h = mss18_contraction(adj).unwrap();
        let n = h.domain().len();
        for t in 0..=h.m() {
            for x in 0..n {
                for v in 0..n {
                    if v == h.value_index(x, t) {
                        continue;
                    }
                    mutations += 1;
                    let bad = h.with_entry(t, x, v).unwrap();
                    let oracle = oracle_contraction(&bad);
                    match bad.is_contraction().unwrap() {
                        ContractionVerdict::Contraction { target } => {
                            assert_eq!(
                                oracle,
                                Some(point_index(bad.domain(), &target)),
                                "unsound at t={t} x={x} v={v}"
                            );
                        }
                        ContractionVerdict::NotContraction { failure } => {
                            assert_eq!(oracle, None, "missed contraction at t={t} x={x} v={v}");
                            match failure {
                                ContractionFailure::EndNotConstant { x, x2, fx, fx2 } => {
                                    let last = bad.last();
                                    assert_ne!(fx, fx2);
                                    assert_eq!(last.apply(&x), Some(&fx));
                                    assert_eq!(last.apply(&x2), Some(&fx2));
                                }
                                ContractionFailure::NotAHomotopy { target, violation } => {
                                    let id: Vec<usize> = (0..n).collect();
                                    let q = vec![point_index(bad.domain(), &target); n];
                                    assert!(replays(&bad, &violation, &id, &q), "{violation}");
                                }
                                ContractionFailure::EmptyImage => unreachable!(),
                            }
                        }
                    }
                }
            }
        }
    }
    assert_eq!(mutations, 720);
}

fn random_homotopy(rng: &mut StdRng, img: &Arc<DigitalImage>, graph: &MapGraph) -> Homotopy {
    let mut key = graph.identity_key();
    let mut steps = vec![graph.map_of(&key)];
    for _ in 0..rng.gen_range(0..4) {
        let nbrs = graph.expand(&key);
        key = nbrs.choose(rng).unwrap().clone();
        steps.push(graph.map_of(&key));
    }
    let mut h = Homotopy::new(steps).unwrap();
    if rng.gen_bool(0.6) {
        let t = rng.gen_range(0..=h.m());
        let x = rng.gen_range(0..img.len());
        h = h.with_entry(t, x, rng.gen_range(0..img.len())).unwrap();
    }
    h
}

#[test]
fn random_certificates_match_the_oracle() {
    let mut rng = StdRng::seed_from_u64(7);
    let (mut accepted, mut rejected) = (0, 0);
    for trial in 0..400 {
        let (n, name) = [(2, 4), (2, 8), (3, 6), (3, 18), (3, 26)][trial % 5];
        let size = rng.gen_range(2..=7);
        let img = Arc::new(common::random_connected_image(&mut rng, n, size, name));
        let graph = MapGraph::new(img.clone()).unwrap();
        let h = random_homotopy(&mut rng, &img, &graph);
        let raw = RawCert::of(&h);
        let f = h.first().table().to_vec();
        let g = h.last().table().to_vec();
        let oracle = raw.view().check(&f, &g).accepted();
        match h.verify_free() {
            Verdict::Accepted => {
                assert!(oracle);
                accepted += 1;
            }
            Verdict::Rejected { violation } => {
                assert!(!oracle);
                assert!(replays(&h, &violation, &f, &g), "{violation}");
                rejected += 1;
            }
        }
    }
    assert!(accepted > 50 && rejected > 50, "{accepted} / {rejected}");
}

#[test]
fn short_homotopies_are_map_graph_paths() {
    let img = Arc::new(simple_closed_curve(4).unwrap());
    let graph = MapGraph::new(img.clone()).unwrap();
    let n = img.len();
    let tables = digitop_oracle::all_tables(n, n);
    let maps: Vec<DigitalMap> =
        tables.iter().map(|t| DigitalMap::from_indices(img.clone(), img.clone(), t.clone()).unwrap()).collect();
    let key = |m: &DigitalMap| graph.key_of(m).unwrap();

    // graph edges, including loops, from every continuous map
    let continuous: Vec<&DigitalMap> = maps.iter().filter(|m| m.is_continuous_pointwise()).collect();
    let mut edges: HashSet<(MapKey, MapKey)> = HashSet::new();
    for m in &continuous {
        for next in graph.expand(&key(m)) {
            edges.insert((key(m), next));
        }
    }

    // length 0: the continuous maps
    let zero: Vec<&DigitalMap> =
        maps.iter().filter(|m| Homotopy::new(vec![(*m).clone()]).unwrap().verify_free().is_accepted()).collect();
    assert_eq!(zero.len(), continuous.len());

    // length 1: every pair of tables
    let mut one = 0;
    for a in &maps {
        for b in &maps {
            let h = Homotopy::new(vec![a.clone(), b.clone()]).unwrap();
            let is_path = edges.contains(&(key(a), key(b)));
            assert_eq!(h.verify_free().is_accepted(), is_path);
            one += is_path as usize;
        }
    }
    assert_eq!(one, edges.len());

    // length 2: triples of continuous maps; a discontinuous member is
    // already excluded by the length-1 case
    let mut two = 0;
    for a in &continuous {
        for b in &continuous {
            let ab = edges.contains(&(key(a), key(b)));
            for c in &continuous {
                let h = Homotopy::new(vec![(*a).clone(), (*b).clone(), (*c).clone()]).unwrap();
                let is_path = ab && edges.contains(&(key(b), key(c)));
                assert_eq!(h.verify_free().is_accepted(), is_path);
                two += is_path as usize;
            }
        }
    }
    let walks: usize =
        continuous.iter().map(|a| graph.expand(&key(a)).iter().map(|b| graph.expand(b).len()).sum::<usize>()).sum();
    assert_eq!(two, walks);
}
