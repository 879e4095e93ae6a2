#![allow(dead_code)]

use std::sync::Arc;

use digitop::{DigitalImage, DigitalMap, Homotopy, LatticePoint};
use digitop_oracle::{Pt, RawHomotopy};
use rand::prelude::*;

pub fn raw_points(img: &DigitalImage) -> Vec<Pt> {
    img.points().iter().map(|p| p.coords().to_vec()).collect()
}

pub fn u_of(img: &DigitalImage) -> usize {
    img.adjacency().u()
}

pub fn oracle_continuous(f: &DigitalMap) -> bool {
    digitop_oracle::continuous_setwise(
        &raw_points(f.domain()),
        u_of(f.domain()),
        &raw_points(f.codomain()),
        u_of(f.codomain()),
        f.table(),
    )
}

/// Raw view of a certificate for the oracle. Holds owned point lists.
pub struct RawCert {
    pub domain: Vec<Pt>,
    pub codomain: Vec<Pt>,
    pub du: usize,
    pub cu: usize,
    pub steps: Vec<Vec<usize>>,
}

impl RawCert {
    pub fn of(h: &Homotopy) -> Self {
        RawCert {
            domain: raw_points(h.domain()),
            codomain: raw_points(h.codomain()),
            du: u_of(h.domain()),
            cu: u_of(h.codomain()),
            steps: h.steps().iter().map(|s| s.table().to_vec()).collect(),
        }
    }

    pub fn view(&self) -> RawHomotopy<'_> {
        RawHomotopy {
            domain: &self.domain,
            domain_u: self.du,
            codomain: &self.codomain,
            codomain_u: self.cu,
            steps: &self.steps,
        }
    }
}

pub fn point_index(img: &DigitalImage, p: &LatticePoint) -> usize {
    img.index_of(p).expect("witness point lies in the image")
}

/// Random image of up to `max_points` distinct points in [0, side)^n.
pub fn random_image(rng: &mut impl Rng, n: usize, side: i64, max_points: usize, name: u32) -> DigitalImage {
    let box_pts = digitop_oracle::box_points(n, 0, side - 1);
    let k = rng.gen_range(1..=max_points.min(box_pts.len()));
    let chosen: Vec<LatticePoint> = box_pts.choose_multiple(rng, k).map(|c| LatticePoint::new(c.clone())).collect();
    DigitalImage::new(chosen, digitop::Adjacency::named(name, n).unwrap()).unwrap()
}

/// A connected random image, grown by random adjacent steps from the origin.
pub fn random_connected_image(rng: &mut impl Rng, n: usize, points: usize, name: u32) -> DigitalImage {
    let adj = digitop::Adjacency::named(name, n).unwrap();
    let mut pts = vec![LatticePoint::origin(n)];
    while pts.len() < points {
        let base = pts.choose(rng).unwrap().clone();
        let nb = adj.neighbors(&base).unwrap();
        let q = nb.choose(rng).unwrap().clone();
        if !pts.contains(&q) {
            pts.push(q);
        }
    }
    DigitalImage::new(pts, adj).unwrap()
}

pub fn random_map(rng: &mut impl Rng, dom: &Arc<DigitalImage>, cod: &Arc<DigitalImage>) -> DigitalMap {
    let table = (0..dom.len()).map(|_| rng.gen_range(0..cod.len())).collect();
    DigitalMap::from_indices(dom.clone(), cod.clone(), table).unwrap()
}
