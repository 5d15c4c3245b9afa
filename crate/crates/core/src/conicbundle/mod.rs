//! Conic bundles in `P2 x P2` given by forms of bidegree (2,2) with four
//! prescribed nodes on the diagonal: linear systems of such forms, the
//! five-line construction of a unique member, its symmetric determinantal
//! matrix, the discriminant sextic and exact certificates for its nodes.

mod instance;
mod locus;
mod net;
mod nodes;
mod symmetric;
mod system;

pub use instance::{
    certify_form, construct, residual_line, residual_of, unique_form, zeta, ConicBundleInstance,
    ConstructOptions, Residual,
};
pub use locus::{check_singular_locus, LocusMode, SingularLocusCheck};
pub use net::{
    build_net_t, discriminant_cubic, sweep, BinaryQuadratic, CubicReport, NetT, SweepReport,
    SweepSample,
};
pub use nodes::{
    certify_node, certify_nodes, rank_stratification_check, singular_point_on_q, FiberSingularity,
    NodeCertificate, NodeStage, RankReport, RankSample,
};
pub use symmetric::{discriminant, to_symmetric_matrix, SymQuadricMatrix};
pub use system::{base_system, dimension_ladder, linear_analog_system, LinearSystem};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{int, serial, AlgError, Block, QMatrix, Rational};

/// A point of `P2` as a vector of three rational coordinates.
pub type Point = Vec<Rational>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConicError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("genericity failure at {stage}: {detail}")]
    Genericity { stage: &'static str, detail: String },
    #[error("{point} is not an ordinary node (fails at {stage:?})")]
    NotANode { point: String, stage: NodeStage },
    #[error("rank {rank} at {point}, expected 2")]
    RankDrop { point: String, rank: usize },
    #[error("{0} is not a singular point of the threefold")]
    NotSingularOnQ(String),
    #[error("marked line {0} does not divide its restricted conic")]
    MarkedLineBroken(usize),
    #[error("instance JSON: {0}")]
    Json(String),
    #[error("gave up after {attempts} attempts: {last}")]
    RetriesExhausted { attempts: usize, last: String },
}

/// Retry cap for seeded resampling.
pub const MAX_ATTEMPTS: usize = 16;

/// Bound on numerators and denominators of sampled coordinates.
pub const COORD_BOUND: i64 = 97;

pub fn xy_blocks() -> Vec<Block> {
    vec![Block::new("x", 3), Block::new("y", 3)]
}

/// The four nodes `(1:0:0), (0:1:0), (0:0:1), (1:1:1)`.
pub fn standard_nodes() -> Vec<Point> {
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
        .iter()
        .map(|p| p.iter().map(|&c| int(c)).collect())
        .collect()
}

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let n = rng.random_range(-COORD_BOUND..=COORD_BOUND);
    let d = rng.random_range(1..=COORD_BOUND);
    Rational::new(n.into(), d.into())
}

pub fn random_point<R: Rng + ?Sized>(rng: &mut R) -> Point {
    loop {
        let p: Point = (0..3).map(|_| random_rational(rng)).collect();
        if p.iter().any(|c| c != &int(0)) {
            return p;
        }
    }
}

pub fn cross(a: &[Rational], b: &[Rational]) -> Point {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Projective equality of two coordinate vectors.
pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    cross(a, b).iter().all(|c| c == &int(0))
}

pub fn collinear(a: &[Rational], b: &[Rational], c: &[Rational]) -> bool {
    dot(&cross(a, b), c) == int(0)
}

pub(crate) fn show(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(":"))
}

/// The line `{o} x l` inside the fiber of the first projection over `o`,
/// with `l` given by its dual vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineInFiber {
    #[serde(with = "serial::rationals")]
    pub o: Point,
    #[serde(with = "serial::rationals")]
    pub line: Point,
}

impl LineInFiber {
    pub fn new(o: Point, line: Point) -> Result<Self, ConicError> {
        let zero = int(0);
        if o.len() != 3 || line.len() != 3 || o.iter().all(|c| c == &zero) || line.iter().all(|c| c == &zero) {
            return Err(ConicError::Degenerate("line in fiber needs nonzero o and l".into()));
        }
        Ok(LineInFiber { o, line })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        LineInFiber {
            o: random_point(rng),
            line: random_point(rng),
        }
    }

    /// Two points spanning `l` (a kernel basis of its dual vector).
    pub fn spanning_points(&self) -> (Point, Point) {
        let m = QMatrix::from_rows(vec![self.line.clone()]).expect("one row");
        let mut k = m.kernel();
        let q = k.pop().expect("two-dimensional kernel");
        let p = k.pop().expect("two-dimensional kernel");
        (p, q)
    }

    pub fn contains_fiber_point(&self, y: &[Rational]) -> bool {
        dot(&self.line, y) == int(0)
    }
}
