//! The net of nodal conic bundles containing four fixed fiber lines and
//! passing through a diagonal point `(o, o)`, its discriminant cubic, and
//! the pencil of instances swept out by lines through `o`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::instance::certify_form;
use super::nodes::rational_sqrt;
use super::{
    base_system, certify_node, check_singular_locus, collinear, cross, proportional, random_point,
    show, standard_nodes, ConicBundleInstance, ConicError, LineInFiber, LinearSystem, LocusMode,
    NodeCertificate, Point, SingularLocusCheck, MAX_ATTEMPTS,
};
use crate::exactalg::{int, serial, Block, MultiPoly, QMatrix, Rational};

#[derive(Debug, Clone)]
pub struct NetT {
    pub o: Point,
    pub fixed: Vec<LineInFiber>,
    pub generators: Vec<MultiPoly>,
    /// Symmetric matrices of the conics `Q_k(o, y)`.
    pub restricted: Vec<QMatrix>,
    pub system: LinearSystem,
}

fn restricted_matrix(q: &MultiPoly, o: &[Rational]) -> Result<QMatrix, ConicError> {
    let conic = q.evaluate(&[Some(o.to_vec()), None])?;
    let mut rows = vec![vec![int(0); 3]; 3];
    for (e, c) in conic.terms() {
        let idx: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            rows[i][i] += c;
        } else {
            let half = c / int(2);
            rows[i][j] += &half;
            rows[j][i] += &half;
        }
    }
    Ok(QMatrix::from_rows(rows)?)
}

fn genericity(detail: String) -> ConicError {
    ConicError::Genericity { stage: "net", detail }
}

pub fn build_net_t(o: &[Rational], fixed: &[LineInFiber], u: &[Point]) -> Result<NetT, ConicError> {
    if fixed.len() != 4 {
        return Err(ConicError::Degenerate(format!("need 4 fixed lines, got {}", fixed.len())));
    }
    for p in u {
        if proportional(o, p) {
            return Err(genericity(format!("o = {} is a node", show(o))));
        }
    }
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if collinear(o, &u[i], &u[j]) {
                return Err(genericity(format!("o lies on the line through {} and {}", show(&u[i]), show(&u[j]))));
            }
        }
    }
    for lf in fixed {
        if proportional(o, &lf.o) {
            return Err(genericity(format!("o coincides with a fixed base point {}", show(o))));
        }
        if lf.contains_fiber_point(o) {
            return Err(genericity(format!("o lies on the fixed line {}^", show(&lf.line))));
        }
    }
    let system = fixed
        .iter()
        .fold(base_system(u)?, |s, l| s.impose_line(l))
        .impose_point(o, o);
    if system.dim() != 3 {
        return Err(genericity(format!("net has dimension {}", system.dim())));
    }
    let generators: Vec<MultiPoly> = system.basis().iter().map(|q| q.primitive()).collect();
    let restricted = generators
        .iter()
        .map(|q| restricted_matrix(q, o))
        .collect::<Result<Vec<_>, _>>()?;
    let coeff_rows: Vec<Vec<Rational>> = restricted
        .iter()
        .map(|m| (0..3).flat_map(|i| (i..3).map(move |j| (i, j))).map(|(i, j)| m.get(i, j).clone()).collect())
        .collect();
    if QMatrix::from_rows(coeff_rows)?.rank() != 3 {
        return Err(genericity("restriction to the fiber over o is not injective".into()));
    }
    Ok(NetT {
        o: o.to_vec(),
        fixed: fixed.to_vec(),
        generators,
        restricted,
        system,
    })
}

/// A conic of rank 2 through `o` split into two lines: its restriction to a
/// line avoiding `o`, and the pair of lines when the roots are rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryQuadratic {
    #[serde(with = "serial::rationals")]
    pub coeffs: Vec<Rational>,
    #[serde(with = "serial::rational")]
    pub discriminant: Rational,
    pub rational: bool,
    #[serde(with = "serial::rational_rows")]
    pub lines: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicReport {
    pub cubic: MultiPoly,
    #[serde(with = "serial::rationals")]
    pub node: Point,
    pub certificate: NodeCertificate,
    pub singular_member_rank: usize,
    pub split: BinaryQuadratic,
    pub completeness: SingularLocusCheck,
}

fn t_block() -> Vec<Block> {
    vec![Block::new("t", 3)]
}

fn split_singular_member(m: &QMatrix, o: &[Rational]) -> BinaryQuadratic {
    // a line avoiding o, spanned by p and q
    let (p, q) = LineInFiber { o: o.to_vec(), line: o.to_vec() }.spanning_points();
    let form = |a: &[Rational], b: &[Rational]| -> Rational {
        (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| &a[i] * m.get(i, j) * &b[j]).sum()
    };
    let (al, be, ga) = (form(&p, &p), form(&p, &q) * int(2), form(&q, &q));
    let discriminant = &be * &be - int(4) * &al * &ga;
    let roots: Option<Vec<Point>> = rational_sqrt(&discriminant).map(|r| {
        // roots of al s^2 + be s t + ga t^2 as points (s:t)
        let st: Vec<(Rational, Rational)> = if !al.is_zero() {
            vec![(-&be + &r, int(2) * &al), (-&be - &r, int(2) * &al)]
        } else {
            vec![(int(1), int(0)), (-ga.clone(), be.clone())]
        };
        st.into_iter()
            .map(|(s, t)| {
                let y: Point = (0..3).map(|k| &s * &p[k] + &t * &q[k]).collect();
                cross(o, &y)
            })
            .collect()
    });
    BinaryQuadratic {
        coeffs: vec![al, be, ga],
        rational: roots.is_some(),
        discriminant,
        lines: roots.unwrap_or_default(),
    }
}

pub fn discriminant_cubic<R: Rng + ?Sized>(net: &NetT, mode: LocusMode, rng: &mut R) -> Result<CubicReport, ConicError> {
    let tb = t_block();
    let t = |k: usize| MultiPoly::var(&tb, crate::exactalg::Var::new(0, k)).expect("t variable");
    let entries: [[MultiPoly; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(MultiPoly::zero(&tb), |acc, k| &acc + &t(k).scale(net.restricted[k].get(i, j)))
        })
    });
    let cubic = crate::exactalg::det3(&entries).primitive();
    if cubic.multidegree() != Some(vec![3]) {
        return Err(genericity("discriminant of the net is not a cubic".into()));
    }
    // member singular at o: (sum t_k A_k) o = 0
    let rows: Vec<Vec<Rational>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|k| (0..3).map(|j| net.restricted[k].get(i, j) * &net.o[j]).sum())
                .collect()
        })
        .collect();
    let kernel = QMatrix::from_rows(rows)?.kernel();
    if kernel.len() != 1 {
        return Err(genericity(format!("{} members singular at o", kernel.len())));
    }
    let node = kernel.into_iter().next().expect("one kernel vector");
    let certificate = certify_node(&cubic, &node)?;
    let completeness = check_singular_locus(&cubic, std::slice::from_ref(&node), mode, rng)?;
    if !completeness.passed {
        return Err(ConicError::Genericity {
            stage: "net cubic",
            detail: "cubic has further singular points".into(),
        });
    }
    let member = (0..3).fold(QMatrix::zeros(3, 3), |acc, k| {
        let mut out = acc.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.set(i, j, acc.get(i, j) + &node[k] * net.restricted[k].get(i, j));
            }
        }
        out
    });
    let singular_member_rank = member.rank();
    if singular_member_rank != 2 {
        return Err(ConicError::RankDrop {
            point: format!("net member {}", show(&node)),
            rank: singular_member_rank,
        });
    }
    let split = split_singular_member(&member, &net.o);
    Ok(CubicReport {
        cubic,
        node,
        certificate,
        singular_member_rank,
        split,
        completeness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSample {
    pub index: usize,
    #[serde(with = "serial::rationals")]
    pub line: Point,
    pub instance: Option<ConicBundleInstance>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub seed: u64,
    pub net_dimension: usize,
    #[serde(with = "serial::rationals")]
    pub o: Point,
    pub fixed: Vec<LineInFiber>,
    pub cubic: CubicReport,
    pub samples: Vec<SweepSample>,
}

fn sample_pencil_member<R: Rng + ?Sized>(
    net: &NetT,
    line: &LineInFiber,
    u: &[Point],
    mode: LocusMode,
    rng: &mut R,
) -> Result<ConicBundleInstance, ConicError> {
    let sys = net.system.impose_line(line);
    if sys.dim() != 1 {
        return Err(genericity(format!("pencil member space of dimension {}", sys.dim())));
    }
    let mut lines = net.fixed.clone();
    lines.push(line.clone());
    certify_form(sys.basis()[0].primitive(), &lines, u, mode, rng)
}

/// Fixes four lines and `o`, certifies the net and its cubic, then runs the
/// instance pipeline on `samples` lines through `o` in the fiber over `o`.
pub fn sweep(seed: u64, samples: usize, mode: LocusMode) -> Result<SweepReport, ConicError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = standard_nodes();
    let mut last = String::new();
    for _ in 0..MAX_ATTEMPTS {
        let fixed: Vec<LineInFiber> = (0..4).map(|_| LineInFiber::random(&mut rng)).collect();
        let o = random_point(&mut rng);
        let built = build_net_t(&o, &fixed, &u).and_then(|net| {
            let cubic = discriminant_cubic(&net, mode, &mut rng)?;
            Ok((net, cubic))
        });
        let (net, cubic) = match built {
            Ok(v) => v,
            Err(e) => {
                last = e.to_string();
                continue;
            }
        };
        let samples = (0..samples)
            .map(|index| {
                let line = cross(&o, &random_point(&mut rng));
                let lf = LineInFiber::new(o.clone(), line.clone());
                match lf.and_then(|lf| sample_pencil_member(&net, &lf, &u, mode, &mut rng)) {
                    Ok(inst) => SweepSample {
                        index,
                        line,
                        instance: Some(ConicBundleInstance {
                            seed: Some(seed),
                            ..inst
                        }),
                        error: None,
                    },
                    Err(e) => SweepSample {
                        index,
                        line,
                        instance: None,
                        error: Some(e.to_string()),
                    },
                }
            })
            .collect();
        return Ok(SweepReport {
            seed,
            net_dimension: net.system.dim(),
            o,
            fixed,
            cubic,
            samples,
        });
    }
    Err(ConicError::RetriesExhausted {
        attempts: MAX_ATTEMPTS,
        last,
    })
}
