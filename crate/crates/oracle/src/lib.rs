//! Slow, literal reference checks for the digitop test suites.
//!
//! Everything here works on raw coordinate vectors and index tables and
//! never calls into `digitop`. Each check follows the textbook definition
//! as directly as possible: subset enumeration instead of adjacency lists,
//! full products instead of pruned search.

use std::collections::{HashMap, HashSet, VecDeque};

pub type Pt = Vec<i64>;

/// c_u adjacency straight from the two defining conditions.
pub fn cu_adjacent(x: &[i64], y: &[i64], u: usize) -> bool {
    assert_eq!(x.len(), y.len());
    if x == y {
        return false;
    }
    let mut unit = 0;
    for (a, b) in x.iter().zip(y) {
        let d = (a - b).abs();
        if d == 1 {
            unit += 1;
        } else if d != 0 {
            return false;
        }
    }
    unit <= u
}

pub fn adjacent_or_equal(x: &[i64], y: &[i64], u: usize) -> bool {
    x == y || cu_adjacent(x, y, u)
}

/// Counts neighbors of the origin by scanning the box [-2, 2]^n.
pub fn origin_neighbor_count(n: usize, u: usize) -> usize {
    let origin = vec![0; n];
    box_points(n, -2, 2).iter().filter(|p| cu_adjacent(&origin, p, u)).count()
}

/// Every point of [lo, hi]^n in lexicographic order.
pub fn box_points(n: usize, lo: i64, hi: i64) -> Vec<Pt> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for c in lo..=hi {
                let mut q = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Connectivity of a list of points, scanning all pairs.
pub fn connected(points: &[Pt], u: usize) -> bool {
    if points.len() <= 1 {
        return true;
    }
    let mut seen = vec![false; points.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in 0..points.len() {
            if !seen[j] && cu_adjacent(&points[i], &points[j], u) {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn dedup(points: Vec<Pt>) -> Vec<Pt> {
    let mut v = points;
    v.sort();
    v.dedup();
    v
}

/// Set-based continuity: the image of every connected subset is connected.
/// Enumerates all 2^n subsets of the domain.
pub fn continuous_setwise(domain: &[Pt], du: usize, codomain: &[Pt], cu: usize, table: &[usize]) -> bool {
    let n = domain.len();
    assert!(n <= 20, "oracle subset enumeration is exponential");
    for mask in 1u32..(1u32 << n) {
        let subset: Vec<Pt> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| domain[i].clone()).collect();
        if !connected(&subset, du) {
            continue;
        }
        let image = dedup((0..n).filter(|i| mask & (1 << i) != 0).map(|i| codomain[table[i]].clone()).collect());
        if !connected(&image, cu) {
            return false;
        }
    }
    true
}

pub fn continuous_pointwise(domain: &[Pt], du: usize, codomain: &[Pt], cu: usize, table: &[usize]) -> bool {
    for i in 0..domain.len() {
        for j in 0..domain.len() {
            if cu_adjacent(&domain[i], &domain[j], du)
                && !adjacent_or_equal(&codomain[table[i]], &codomain[table[j]], cu)
            {
                return false;
            }
        }
    }
    true
}

/// Outcome of checking the three homotopy conditions independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomotopyCheck {
    pub endpoints: bool,
    pub paths: bool,
    pub steps: bool,
}

impl HomotopyCheck {
    pub fn accepted(&self) -> bool {
        self.endpoints && self.paths && self.steps
    }
}

/// Raw description of a homotopy between self-maps or maps X -> Y.
pub struct RawHomotopy<'a> {
    pub domain: &'a [Pt],
    pub domain_u: usize,
    pub codomain: &'a [Pt],
    pub codomain_u: usize,
    pub steps: &'a [Vec<usize>],
}

impl RawHomotopy<'_> {
    fn value(&self, x: usize, t: usize) -> &Pt {
        &self.codomain[self.steps[t][x]]
    }

    /// Tests every condition by exhaustive enumeration over X x [0, m].
    ///
    /// The per-point trajectories are checked as maps out of the integer
    /// interval [0, m] with 2-adjacency using the set-based definition, so no
    /// shortcut through consecutive pairs is taken here.
    pub fn check(&self, f: &[usize], g: &[usize]) -> HomotopyCheck {
        let m = self.steps.len() - 1;
        let endpoints = (0..self.domain.len()).all(|x| self.steps[0][x] == f[x] && self.steps[m][x] == g[x]);

        let paths = (0..self.domain.len()).all(|x| {
            // interval subsets of Z^1 under 2-adjacency are the intervals
            let mut ok = true;
            for a in 0..=m {
                for b in a..=m {
                    let img = dedup((a..=b).map(|t| self.value(x, t).clone()).collect());
                    if !connected(&img, self.codomain_u) {
                        ok = false;
                    }
                }
            }
            ok
        });

        let steps = self.steps.iter().all(|table| {
            if self.domain.len() <= 16 {
                continuous_setwise(self.domain, self.domain_u, self.codomain, self.codomain_u, table)
            } else {
                continuous_pointwise(self.domain, self.domain_u, self.codomain, self.codomain_u, table)
            }
        });
        HomotopyCheck { endpoints, paths, steps }
    }

    /// True iff F(x, t) and F(x, t + 1) are neither equal nor adjacent.
    pub fn path_broken_at(&self, x: usize, t: usize) -> bool {
        t + 1 < self.steps.len() && !adjacent_or_equal(self.value(x, t), self.value(x, t + 1), self.codomain_u)
    }

    /// True iff x ~ x2 in the domain but F_t separates their images.
    pub fn step_broken_at(&self, t: usize, x: usize, x2: usize) -> bool {
        cu_adjacent(&self.domain[x], &self.domain[x2], self.domain_u)
            && !adjacent_or_equal(self.value(x, t), self.value(x2, t), self.codomain_u)
    }
}

/// Naive map-graph exploration from the identity: neighbor maps are drawn
/// from the full product of closed neighborhoods, then filtered by
/// continuity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reachability {
    /// Length of the shortest path from the identity to a constant map.
    pub constant_depth: Option<usize>,
    /// Number of continuous self-maps reachable from the identity.
    pub reachable: usize,
}

pub fn reachability_from_identity(points: &[Pt], u: usize, max_states: usize) -> Option<Reachability> {
    let n = points.len();
    let closed: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).filter(|&j| adjacent_or_equal(&points[i], &points[j], u)).collect()).collect();
    let identity: Vec<usize> = (0..n).collect();
    let mut depth: HashMap<Vec<usize>, usize> = HashMap::new();
    depth.insert(identity.clone(), 0);
    let mut queue = VecDeque::from([identity]);
    let mut constant_depth = None;
    while let Some(s) = queue.pop_front() {
        let d = depth[&s];
        if constant_depth.is_none() && s.iter().all(|&v| v == s[0]) {
            constant_depth = Some(d);
        }
        let choices: Vec<&Vec<usize>> = s.iter().map(|&v| &closed[v]).collect();
        for g in product(&choices) {
            if continuous_pointwise(points, u, points, u, &g) && !depth.contains_key(&g) {
                depth.insert(g.clone(), d + 1);
                queue.push_back(g);
                if depth.len() > max_states {
                    return None;
                }
            }
        }
    }
    Some(Reachability { constant_depth, reachable: depth.len() })
}

fn product(choices: &[&Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for p in &out {
            for &v in c.iter() {
                let mut q = p.clone();
                q.push(v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Every total function from an n-point set into a k-point set.
pub fn all_tables(n: usize, k: usize) -> Vec<Vec<usize>> {
    let choices: Vec<Vec<usize>> = (0..n).map(|_| (0..k).collect()).collect();
    let refs: Vec<&Vec<usize>> = choices.iter().collect();
    product(&refs)
}

/// Checks whether some cycle of length k exists in the 4-adjacency grid
/// restricted to [0, side)^2, by depth-first enumeration of simple paths.
pub fn grid_has_cycle_of_length(k: usize, side: i64) -> bool {
    let cells: Vec<Pt> = box_points(2, 0, side - 1);
    let index: HashSet<Pt> = cells.iter().cloned().collect();
    fn dfs(path: &mut Vec<Pt>, k: usize, cells: &HashSet<Pt>) -> bool {
        let last = path.last().unwrap().clone();
        if path.len() == k {
            return cu_adjacent(&last, &path[0], 1);
        }
        for d in [[1, 0], [-1, 0], [0, 1], [0, -1]] {
            let next = vec![last[0] + d[0], last[1] + d[1]];
            if cells.contains(&next) && !path.contains(&next) {
                path.push(next);
                if dfs(path, k, cells) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    cells.iter().any(|start| dfs(&mut vec![start.clone()], k, &index))
}
