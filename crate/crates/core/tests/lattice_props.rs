use digitop::lattice::{adjacent, named_adjacency, neighbors, Adjacency, LatticePoint};
use proptest::prelude::*;

fn all_adjacencies() -> Vec<Adjacency> {
    (1..=3).flat_map(|n| (1..=n).map(move |u| Adjacency::new(n, u).unwrap())).collect()
}

#[test]
fn census_matches_enumeration_oracle() {
    for a in all_adjacencies() {
        let expected = digitop_oracle::origin_neighbor_count(a.dimension(), a.u());
        let got = neighbors(&LatticePoint::origin(a.dimension()), a).unwrap();
        assert_eq!(got.len(), expected, "{a}");
        assert_eq!(Some(expected as u32), a.name());
    }
}

#[test]
fn named_pairs() {
    let table = [(2, 1, 1), (4, 2, 1), (8, 2, 2), (6, 3, 1), (18, 3, 2), (26, 3, 3)];
    for (name, n, u) in table {
        assert_eq!(named_adjacency(name, n).unwrap(), Adjacency::new(n, u).unwrap());
    }
    assert!(named_adjacency(18, 2).is_err());
    assert!(named_adjacency(8, 3).is_err());
}

#[test]
fn exhaustive_box_properties() {
    // symmetry, irreflexivity, agreement with the oracle and monotonicity in
    // u over the 5^n box
    for n in 1..=3 {
        let pts = digitop_oracle::box_points(n, -2, 2);
        for u in 1..=n {
            let a = Adjacency::new(n, u).unwrap();
            let next = (u < n).then(|| Adjacency::new(n, u + 1).unwrap());
            for x in &pts {
                let px = LatticePoint::new(x.clone());
                for y in &pts {
                    let py = LatticePoint::new(y.clone());
                    let xy = adjacent(&px, &py, a).unwrap();
                    assert_eq!(xy, adjacent(&py, &px, a).unwrap());
                    assert_eq!(xy, digitop_oracle::cu_adjacent(x, y, u));
                    if x == y {
                        assert!(!xy);
                    }
                    if let (true, Some(b)) = (xy, next) {
                        assert!(adjacent(&px, &py, b).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn spec_examples() {
    let o = LatticePoint::from([0, 0, 0]);
    let d = LatticePoint::from([1, 1, 0]);
    assert!(adjacent(&o, &d, Adjacency::new(3, 2).unwrap()).unwrap());
    assert!(!adjacent(&o, &d, Adjacency::new(3, 1).unwrap()).unwrap());
    assert!(!adjacent(&o, &LatticePoint::from([0, 3, 0]), Adjacency::new(3, 3).unwrap()).unwrap());
    assert_eq!(neighbors(&LatticePoint::from([5, 7]), Adjacency::new(2, 2).unwrap()).unwrap().len(), 8);
}

fn point(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1000i64..1000, n)
}

proptest! {
    #[test]
    fn translation_invariance(x in point(3), v in point(3), n in 1usize..=3) {
        let px = LatticePoint::new(x[..n].to_vec());
        for u in 1..=n {
            let a = Adjacency::new(n, u).unwrap();
            let moved: Vec<_> = a.neighbors(&px).unwrap().iter().map(|q| q.translate(&v[..n]).unwrap()).collect();
            prop_assert_eq!(moved, a.neighbors(&px.translate(&v[..n]).unwrap()).unwrap());
        }
    }

    #[test]
    fn adjacency_symmetric_anywhere(x in point(3), y in point(3), u in 1usize..=3) {
        let a = Adjacency::new(3, u).unwrap();
        let (px, py) = (LatticePoint::new(x.clone()), LatticePoint::new(y.clone()));
        prop_assert_eq!(a.adjacent(&px, &py).unwrap(), a.adjacent(&py, &px).unwrap());
        prop_assert_eq!(a.adjacent(&px, &py).unwrap(), digitop_oracle::cu_adjacent(&x, &y, u));
    }

    #[test]
    fn display_parse_round_trip(x in point(3)) {
        let p = LatticePoint::new(x);
        prop_assert_eq!(p.to_string().parse::<LatticePoint>().unwrap(), p);
    }
}
