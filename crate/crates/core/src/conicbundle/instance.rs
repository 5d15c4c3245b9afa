use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    base_system, certify_nodes, check_singular_locus, cross, discriminant, rank_stratification_check,
    show, singular_point_on_q, standard_nodes, to_symmetric_matrix, xy_blocks, ConicError,
    FiberSingularity, LineInFiber, LocusMode, NodeCertificate, Point, RankReport,
    SingularLocusCheck, SymQuadricMatrix, MAX_ATTEMPTS,
};
use crate::exactalg::{int, serial, Block, MultiPoly, QMatrix, Rational};

/// Knobs for [`construct`]; `force_repeated_line` reuses the fourth line as
/// the fifth so that every attempt fails (exercises the retry path).
#[derive(Debug, Clone, Copy, Default)]
pub struct ConstructOptions {
    pub exact_elimination: bool,
    pub force_repeated_line: bool,
}

/// The second component `m` of a restricted conic `l * m` over a marked
/// point, and the section point `l ∩ m` (absent for a double line).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    pub index: usize,
    #[serde(with = "serial::rationals")]
    pub line: Point,
    #[serde(with = "serial::rationals")]
    pub residual: Point,
    pub double_line: bool,
    #[serde(with = "serial::rationals")]
    pub section_point: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicBundleInstance {
    pub seed: Option<u64>,
    pub attempts: usize,
    #[serde(with = "serial::rational_rows")]
    pub nodes: Vec<Point>,
    pub form: MultiPoly,
    pub matrix: SymQuadricMatrix,
    pub discriminant: MultiPoly,
    pub marked_lines: Vec<LineInFiber>,
    pub certificates: Vec<NodeCertificate>,
    pub fiber_singularities: Vec<FiberSingularity>,
    pub residuals: Vec<Residual>,
    pub rank_check: RankReport,
    pub singular_locus: SingularLocusCheck,
}

impl ConicBundleInstance {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, ConicError> {
        serde_json::from_str(s).map_err(|e| ConicError::Json(e.to_string()))
    }
}

fn y_block() -> Vec<Block> {
    vec![Block::new("y", 3)]
}

/// Splits the conic `Q(o, y)` as `l(y) * m(y)` for the marked line `l`,
/// solving the six coefficient equations for the three unknowns of `m`.
pub fn residual_of(q: &MultiPoly, lf: &LineInFiber) -> Result<(Point, Option<Point>), ConicError> {
    let conic = q.evaluate(&[Some(lf.o.clone()), None])?;
    let yb = y_block();
    let monos = MultiPoly::monomials(&yb, &[2]);
    let lform = MultiPoly::linear_form(&yb, 0, &lf.line);
    let mut rows: Vec<Vec<Rational>> = vec![Vec::with_capacity(4); monos.len()];
    for j in 0..3 {
        let mut unit = vec![int(0); 3];
        unit[j] = int(1);
        let prod = &lform * &MultiPoly::linear_form(&yb, 0, &unit);
        for (r, e) in rows.iter_mut().zip(&monos) {
            r.push(prod.coefficient(e));
        }
    }
    for (r, e) in rows.iter_mut().zip(&monos) {
        r.push(-conic.coefficient(e));
    }
    let kernel = QMatrix::from_rows(rows)?.kernel();
    let v = kernel
        .into_iter()
        .find(|v| !v[3].is_zero())
        .ok_or(ConicError::MarkedLineBroken(0))?;
    let m: Point = v[..3].iter().map(|c| c / &v[3]).collect();
    if m.iter().all(|c| c.is_zero()) {
        return Err(ConicError::Degenerate(format!(
            "fiber over {} lies in the threefold",
            show(&lf.o)
        )));
    }
    let y = cross(&lf.line, &m);
    let section = (!y.iter().all(|c| c.is_zero())).then_some(y);
    Ok((m, section))
}

pub fn residual_line(inst: &ConicBundleInstance, j: usize) -> Result<Residual, ConicError> {
    let lf = inst
        .marked_lines
        .get(j)
        .ok_or_else(|| ConicError::Degenerate(format!("no marked line {j}")))?;
    let (residual, section) = residual_of(&inst.form, lf).map_err(|e| match e {
        ConicError::MarkedLineBroken(_) => ConicError::MarkedLineBroken(j),
        other => other,
    })?;
    Ok(Residual {
        index: j,
        line: lf.line.clone(),
        residual,
        double_line: section.is_none(),
        section_point: section.unwrap_or_default(),
    })
}

/// The unique (up to scale) member of the nodal system containing the five
/// marked lines.
pub fn unique_form(lines: &[LineInFiber], u: &[Point]) -> Result<MultiPoly, ConicError> {
    let sys = lines.iter().fold(base_system(u)?, |s, l| s.impose_line(l));
    if sys.dim() != 1 {
        return Err(ConicError::Genericity {
            stage: "five lines",
            detail: format!("solution space of dimension {}", sys.dim()),
        });
    }
    Ok(sys.basis()[0].primitive())
}

/// Runs every certificate on a form already known to contain the marked
/// lines.
pub fn certify_form<R: Rng + ?Sized>(
    q: MultiPoly,
    lines: &[LineInFiber],
    u: &[Point],
    mode: LocusMode,
    rng: &mut R,
) -> Result<ConicBundleInstance, ConicError> {
    if q.blocks() != xy_blocks().as_slice() {
        return Err(ConicError::Degenerate("form must live on blocks x:3, y:3".into()));
    }
    for (j, lf) in lines.iter().enumerate() {
        let (p, r) = lf.spanning_points();
        let s: Point = p.iter().zip(&r).map(|(a, b)| a + b).collect();
        for y in [p, r, s] {
            if !q.eval_at(&[lf.o.clone(), y])?.is_zero() {
                return Err(ConicError::MarkedLineBroken(j));
            }
        }
    }
    let matrix = to_symmetric_matrix(&q)?;
    debug_assert_eq!(matrix.reassemble(), q);
    let gamma = discriminant(&matrix)?;
    if gamma.multidegree() != Some(vec![6]) {
        return Err(ConicError::Degenerate("discriminant is not a sextic".into()));
    }
    let certificates = certify_nodes(&gamma, u)?;
    let fiber_singularities = u
        .iter()
        .map(|p| singular_point_on_q(&matrix, p))
        .collect::<Result<Vec<_>, _>>()?;
    let rank_check = rank_stratification_check(&matrix, &gamma, u, 4, rng)?;
    let singular_locus = check_singular_locus(&gamma, u, mode, rng)?;
    if !singular_locus.passed {
        return Err(ConicError::Genericity {
            stage: "singular locus",
            detail: format!("eliminant has {:?} roots", singular_locus.eliminant_roots),
        });
    }
    let mut inst = ConicBundleInstance {
        seed: None,
        attempts: 1,
        nodes: u.to_vec(),
        form: q,
        matrix,
        discriminant: gamma,
        marked_lines: lines.to_vec(),
        certificates,
        fiber_singularities,
        residuals: Vec::new(),
        rank_check,
        singular_locus,
    };
    inst.residuals = (0..lines.len())
        .map(|j| residual_line(&inst, j))
        .collect::<Result<_, _>>()?;
    Ok(inst)
}

/// Five lines in fibers to the certified conic bundle through them.
pub fn zeta<R: Rng + ?Sized>(
    lines: &[LineInFiber],
    u: &[Point],
    mode: LocusMode,
    rng: &mut R,
) -> Result<ConicBundleInstance, ConicError> {
    if lines.len() != 5 {
        return Err(ConicError::Degenerate(format!("need 5 lines, got {}", lines.len())));
    }
    let q = unique_form(lines, u)?;
    certify_form(q, lines, u, mode, rng)
}

/// Seeded end-to-end construction with resampling on genericity failures.
pub fn construct(seed: u64, opts: ConstructOptions) -> Result<ConicBundleInstance, ConicError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = standard_nodes();
    let mode = if opts.exact_elimination {
        LocusMode::Exact
    } else {
        LocusMode::Modular
    };
    let mut last = String::new();
    for attempt in 1..=MAX_ATTEMPTS {
        let mut lines: Vec<LineInFiber> = (0..5).map(|_| LineInFiber::random(&mut rng)).collect();
        if opts.force_repeated_line {
            lines[4] = lines[3].clone();
        }
        match zeta(&lines, &u, mode, &mut rng) {
            Ok(mut inst) => {
                inst.seed = Some(seed);
                inst.attempts = attempt;
                return Ok(inst);
            }
            Err(e) => last = e.to_string(),
        }
    }
    Err(ConicError::RetriesExhausted {
        attempts: MAX_ATTEMPTS,
        last,
    })
}
