//! Homotopy certificates and their verification.
//!
//! A certificate is the list of step maps F_0, ..., F_m from X to Y. It is a
//! digital homotopy from f to g when
//!
//! 1. F_0 = f and F_m = g,
//! 2. every trajectory t -> F(x, t) is a path: consecutive values are equal
//!    or adjacent in Y,
//! 3. every step map F_t is continuous.
//!
//! Zero-length certificates (m = 0) are accepted and witness f = g.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::image::DigitalImage;
use crate::lattice::LatticePoint;
use crate::mapping::DigitalMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("a homotopy needs at least one step map")]
    NoSteps,
    #[error("step {0} has a different domain or codomain than step 0")]
    StepImageMismatch(usize),
    #[error("endpoint maps do not share the homotopy's domain and codomain")]
    EndpointImageMismatch,
    #[error("a contraction needs domain and codomain to be the same image")]
    NotSelfMap,
    #[error("cannot concatenate: the last step of the first homotopy differs from the first step of the second")]
    JunctionMismatch,
}

/// Which endpoint condition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    Start,
    End,
}

/// A concrete counterexample to one of the three homotopy conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    /// F(x, t) differs from the required endpoint map at t = 0 or t = m.
    Endpoint { which: Endpoint, x: LatticePoint, t: usize, expected: LatticePoint, found: LatticePoint },
    /// F(x, t) and F(x, t + 1) are neither equal nor adjacent.
    Path { x: LatticePoint, t: usize, from: LatticePoint, to: LatticePoint },
    /// x ~ x2 but F(x, t) and F(x2, t) are neither equal nor adjacent.
    Continuity { t: usize, x: LatticePoint, x2: LatticePoint, fx: LatticePoint, fx2: LatticePoint },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Endpoint { which, x, t, expected, found } => {
                let side = match which {
                    Endpoint::Start => "start",
                    Endpoint::End => "end",
                };
                write!(f, "{side} map mismatch at x=({x}), t={t}: expected ({expected}), found ({found})")
            }
            Violation::Path { x, t, from, to } => {
                write!(f, "trajectory of x=({x}) jumps at t={t}->{}: ({from}) and ({to}) are not adjacent", t + 1)
            }
            Violation::Continuity { t, x, x2, fx, fx2 } => {
                write!(f, "step t={t} is not continuous: ({x}) ~ ({x2}) but ({fx}) and ({fx2}) are not adjacent")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Accepted,
    Rejected { violation: Violation },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Accepted => None,
            Verdict::Rejected { violation } => Some(violation),
        }
    }
}

/// Why a certificate is not a contraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ContractionFailure {
    /// The empty image has no constant maps.
    EmptyImage,
    /// F_m takes at least two values; `x` and `x2` land apart.
    EndNotConstant { x: LatticePoint, x2: LatticePoint, fx: LatticePoint, fx2: LatticePoint },
    /// F_m is constant but the certificate fails as a homotopy from the
    /// identity to that constant.
    NotAHomotopy { target: LatticePoint, violation: Violation },
}

impl fmt::Display for ContractionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContractionFailure::EmptyImage => write!(f, "the empty image admits no constant map"),
            ContractionFailure::EndNotConstant { x, x2, fx, fx2 } => {
                write!(f, "final step is not constant: ({x}) -> ({fx}) but ({x2}) -> ({fx2})")
            }
            ContractionFailure::NotAHomotopy { target, violation } => {
                write!(f, "not a homotopy from the identity to constant ({target}): {violation}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ContractionVerdict {
    Contraction { target: LatticePoint },
    NotContraction { failure: ContractionFailure },
}

impl ContractionVerdict {
    pub fn is_contraction(&self) -> bool {
        matches!(self, ContractionVerdict::Contraction { .. })
    }

    pub fn target(&self) -> Option<&LatticePoint> {
        match self {
            ContractionVerdict::Contraction { target } => Some(target),
            ContractionVerdict::NotContraction { .. } => None,
        }
    }
}

/// The step maps F_0, ..., F_m of a candidate homotopy X x [0, m] -> Y.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Homotopy {
    steps: Vec<DigitalMap>,
}

impl Homotopy {
    pub fn new(steps: Vec<DigitalMap>) -> Result<Self, HomotopyError> {
        let first = steps.first().ok_or(HomotopyError::NoSteps)?;
        if let Some(t) = steps.iter().position(|s| !s.same_images(first)) {
            return Err(HomotopyError::StepImageMismatch(t));
        }
        Ok(Homotopy { steps })
    }

    /// Builds from raw codomain-index tables, one per time step.
    pub fn from_tables(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self, crate::Error> {
        let steps = tables
            .into_iter()
            .map(|t| DigitalMap::from_indices(domain.clone(), codomain.clone(), t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(steps)?)
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        self.steps[0].domain()
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        self.steps[0].codomain()
    }

    /// Number of time steps; the time interval is [0, m].
    pub fn m(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn steps(&self) -> &[DigitalMap] {
        &self.steps
    }

    pub fn step(&self, t: usize) -> &DigitalMap {
        &self.steps[t]
    }

    pub fn first(&self) -> &DigitalMap {
        &self.steps[0]
    }

    pub fn last(&self) -> &DigitalMap {
        &self.steps[self.m()]
    }

    /// Codomain index of F(x, t) for domain index `x`.
    pub fn value_index(&self, x: usize, t: usize) -> usize {
        self.steps[t].table()[x]
    }

    /// The endpoint condition.
    fn endpoint_violation(&self, f: &DigitalMap, g: &DigitalMap) -> Option<Violation> {
        let dom = self.domain();
        let cod = self.codomain();
        let m = self.m();
        for (which, t, target) in [(Endpoint::Start, 0, f), (Endpoint::End, m, g)] {
            for x in 0..dom.len() {
                let found = self.value_index(x, t);
                let expected = target.table()[x];
                if found != expected {
                    return Some(Violation::Endpoint {
                        which,
                        x: dom.point(x).clone(),
                        t,
                        expected: cod.point(expected).clone(),
                        found: cod.point(found).clone(),
                    });
                }
            }
        }
        None
    }

    /// Trajectory condition, scanning time first so the earliest break is reported.
    fn path_violation(&self) -> Option<Violation> {
        let dom = self.domain();
        let cod = self.codomain();
        for t in 0..self.m() {
            for x in 0..dom.len() {
                let a = self.value_index(x, t);
                let b = self.value_index(x, t + 1);
                if !cod.adjacent_or_equal(a, b) {
                    return Some(Violation::Path {
                        x: dom.point(x).clone(),
                        t,
                        from: cod.point(a).clone(),
                        to: cod.point(b).clone(),
                    });
                }
            }
        }
        None
    }

    /// Every step map is continuous.
    fn continuity_violation(&self) -> Option<Violation> {
        let dom = self.domain();
        for (t, step) in self.steps.iter().enumerate() {
            if let Some((i, j)) = step.discontinuity() {
                return Some(Violation::Continuity {
                    t,
                    x: dom.point(i).clone(),
                    x2: dom.point(j).clone(),
                    fx: step.value_at(i).clone(),
                    fx2: step.value_at(j).clone(),
                });
            }
        }
        None
    }

    /// Checks that this certificate is a homotopy from `f` to `g`, reporting
    /// the first failed condition in the order endpoints, paths, continuity.
    pub fn verify(&self, f: &DigitalMap, g: &DigitalMap) -> Result<Verdict, HomotopyError> {
        if !f.same_images(self.first()) || !g.same_images(self.first()) {
            return Err(HomotopyError::EndpointImageMismatch);
        }
        let violation =
            self.endpoint_violation(f, g).or_else(|| self.path_violation()).or_else(|| self.continuity_violation());
        Ok(match violation {
            None => Verdict::Accepted,
            Some(violation) => Verdict::Rejected { violation },
        })
    }

    /// Checks trajectories and step continuity only, taking F_0 and F_m as the endpoints.
    pub fn verify_free(&self) -> Verdict {
        self.verify(self.first(), self.last()).expect("steps share images")
    }

    /// Accepts iff this is a homotopy from the identity to some constant map,
    /// and reports the constant.
    pub fn is_contraction(&self) -> Result<ContractionVerdict, HomotopyError> {
        let dom = self.domain().clone();
        if dom != *self.codomain() {
            return Err(HomotopyError::NotSelfMap);
        }
        let last = self.last();
        let target = match last.constant_value() {
            Some(q) => q.clone(),
            None if dom.is_empty() => {
                return Ok(ContractionVerdict::NotContraction { failure: ContractionFailure::EmptyImage });
            }
            None => {
                let t = last.table();
                let j = t.iter().position(|&v| v != t[0]).expect("not constant");
                return Ok(ContractionVerdict::NotContraction {
                    failure: ContractionFailure::EndNotConstant {
                        x: dom.point(0).clone(),
                        x2: dom.point(j).clone(),
                        fx: last.value_at(0).clone(),
                        fx2: last.value_at(j).clone(),
                    },
                });
            }
        };
        let id = DigitalMap::identity(dom.clone());
        let constant = DigitalMap::constant(dom, &target).expect("value lies in the image");
        Ok(match self.verify(&id, &constant)? {
            Verdict::Accepted => ContractionVerdict::Contraction { target },
            Verdict::Rejected { violation } => {
                ContractionVerdict::NotContraction { failure: ContractionFailure::NotAHomotopy { target, violation } }
            }
        })
    }

    /// The same steps in reverse order: a homotopy from g back to f.
    pub fn reverse(&self) -> Homotopy {
        let mut steps = self.steps.clone();
        steps.reverse();
        Homotopy { steps }
    }

    /// Runs `self` then `next`; the shared junction map appears once, so the
    /// result has m_self + m_next steps.
    pub fn concatenate(&self, next: &Homotopy) -> Result<Homotopy, HomotopyError> {
        if self.last() != next.first() {
            return Err(HomotopyError::JunctionMismatch);
        }
        let mut steps = self.steps.clone();
        steps.extend(next.steps[1..].iter().cloned());
        Ok(Homotopy { steps })
    }

    /// A copy with F(x, t) replaced by codomain index `value`.
    pub fn with_entry(&self, t: usize, x: usize, value: usize) -> Result<Homotopy, crate::Error> {
        let mut steps = self.steps.clone();
        let mut table = steps[t].table().to_vec();
        table[x] = value;
        steps[t] = DigitalMap::from_indices(self.domain().clone(), self.codomain().clone(), table)?;
        Ok(Homotopy { steps })
    }
}

pub fn verify_homotopy(h: &Homotopy, f: &DigitalMap, g: &DigitalMap) -> Result<Verdict, HomotopyError> {
    h.verify(f, g)
}

pub fn is_contraction(h: &Homotopy) -> Result<ContractionVerdict, HomotopyError> {
    h.is_contraction()
}

impl fmt::Debug for Homotopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.steps.iter()).finish()
    }
}
