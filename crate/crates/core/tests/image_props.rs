mod common;

use digitop::catalog::{mss18, mss18_point, simple_closed_curve};
use digitop::image::{components, is_connected, is_connected_subset, is_simple_closed_curve};
use digitop::{Adjacency, DigitalImage, LatticePoint};
use rand::prelude::*;

#[test]
fn mss18_connectivity_examples() {
    let img = mss18(18).unwrap();
    assert!(is_connected(&img));
    assert!(digitop_oracle::connected(&common::raw_points(&img), 2));
    assert_eq!(components(&img), vec![img.points().to_vec()]);

    let six = mss18(6).unwrap();
    assert!(!is_connected(&six));
    assert!(!digitop_oracle::connected(&common::raw_points(&six), 1));
    let comps = components(&six);
    let with_p0 = comps.iter().find(|c| c.contains(&mss18_point(0))).unwrap();
    assert_eq!(with_p0, &vec![mss18_point(0)]);

    let single = DigitalImage::from_coords(&[[0, 0, 0]], Adjacency::named(26, 3).unwrap()).unwrap();
    assert!(is_connected(&single));
}

#[test]
fn subset_examples() {
    let img = mss18(18).unwrap();
    let s = [1, 6, 5, 9].map(mss18_point);
    assert!(is_connected_subset(&img, &s).unwrap());
    assert!(!is_connected_subset(&img, &[mss18_point(0), mss18_point(3)]).unwrap());
    assert!(is_connected_subset(&img, &[]).unwrap());
    assert!(is_connected_subset(&img, &[LatticePoint::from([9, 9, 9])]).is_err());
}

#[test]
fn curve_examples() {
    let s = digitop::catalog::curve_s(18).unwrap();
    assert!(is_simple_closed_curve(&s));
    let sp = digitop::catalog::curve_s_prime(26).unwrap();
    assert!(is_simple_closed_curve(&sp));
    let sq = DigitalImage::from_coords(&[[0, 0], [1, 0], [1, 1], [0, 1]], Adjacency::named(4, 2).unwrap()).unwrap();
    assert!(is_simple_closed_curve(&sq));
    // degree census of MSS_18 under 18: not all 2
    let img = mss18(18).unwrap();
    let degrees: Vec<usize> = (0..img.len()).map(|i| img.degree(i)).collect();
    assert!(degrees.iter().any(|&d| d != 2));
    assert!(!is_simple_closed_curve(&img));
}

#[test]
fn random_images_partition_and_agree_with_oracle() {
    let mut rng = StdRng::seed_from_u64(7);
    for trial in 0..600 {
        let name = [6, 18, 26][trial % 3];
        let img = common::random_image(&mut rng, 3, 4, 12, name);
        let comps = img.components();
        let raw = common::raw_points(&img);
        let u = img.adjacency().u();

        assert_eq!(img.is_connected(), comps.len() <= 1);
        assert_eq!(img.is_connected(), digitop_oracle::connected(&raw, u));

        let mut union: Vec<LatticePoint> = comps.iter().flatten().cloned().collect();
        union.sort();
        assert_eq!(union, img.points());
        for (i, c) in comps.iter().enumerate() {
            let craw: Vec<_> = c.iter().map(|p| p.coords().to_vec()).collect();
            assert!(digitop_oracle::connected(&craw, u));
            for d in &comps[i + 1..] {
                for p in c {
                    for q in d {
                        assert!(!img.adjacency().adjacent(p, q).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn curves_survive_point_removal() {
    let mut curves = vec![
        digitop::catalog::curve_s(18).unwrap(),
        digitop::catalog::curve_s_prime(18).unwrap(),
        digitop::catalog::curve_s(26).unwrap(),
    ];
    curves.extend([4, 8, 10, 12, 16].map(|k| simple_closed_curve(k).unwrap()));
    for c in curves {
        assert!(c.is_simple_closed_curve());
        for i in 0..c.len() {
            let rest: Vec<_> = c.points().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
            assert!(c.subimage(&rest).unwrap().is_connected());
        }
    }
}

#[test]
fn no_five_point_curve_in_the_grid() {
    assert!(!digitop_oracle::grid_has_cycle_of_length(5, 5));
    assert!(simple_closed_curve(5).is_err());
}
