use num_traits::{Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{show, ConicError, Point, SymQuadricMatrix};
use crate::exactalg::field::{rank_over, Field, PrimeField};
use crate::exactalg::modp::random_prime;
use crate::exactalg::univariate::{interpolate, roots_mod_p};
use crate::exactalg::{int, serial, MultiPoly, Rational, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeStage {
    Value,
    Gradient,
    Hessian,
}

/// Exact witness that a point is an ordinary double point of a plane curve:
/// vanishing value and gradient, and a nondegenerate Hessian of the affine
/// equation in the chart `x_chart = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeCertificate {
    #[serde(with = "serial::rationals")]
    pub point: Point,
    pub chart: usize,
    #[serde(with = "serial::rationals")]
    pub gradient: Vec<Rational>,
    #[serde(with = "serial::rational_rows")]
    pub hessian: Vec<Vec<Rational>>,
    #[serde(with = "serial::rational")]
    pub hessian_det: Rational,
}

pub fn certify_node(f: &MultiPoly, p: &[Rational]) -> Result<NodeCertificate, ConicError> {
    let fail = |stage| ConicError::NotANode {
        point: show(p),
        stage,
    };
    let at = |g: &MultiPoly, q: &[Rational]| g.eval_at(&[q.to_vec()]);
    if !at(f, p)?.is_zero() {
        return Err(fail(NodeStage::Value));
    }
    let partials: Vec<MultiPoly> = (0..3)
        .map(|i| f.partial_derivative(Var::new(0, i)))
        .collect::<Result<_, _>>()?;
    let gradient: Vec<Rational> = partials.iter().map(|g| at(g, p)).collect::<Result<_, _>>()?;
    if gradient.iter().any(|c| !c.is_zero()) {
        return Err(fail(NodeStage::Gradient));
    }
    let chart = (0..3).rev().find(|&k| !p[k].is_zero()).ok_or_else(|| fail(NodeStage::Value))?;
    let q: Point = p.iter().map(|c| c / &p[chart]).collect();
    let free: Vec<usize> = (0..3).filter(|&k| k != chart).collect();
    let mut hessian = vec![vec![int(0); 2]; 2];
    for (a, &i) in free.iter().enumerate() {
        for (b, &j) in free.iter().enumerate() {
            hessian[a][b] = at(&partials[i].partial_derivative(Var::new(0, j))?, &q)?;
        }
    }
    let hessian_det = &hessian[0][0] * &hessian[1][1] - &hessian[0][1] * &hessian[1][0];
    if hessian_det.is_zero() {
        return Err(fail(NodeStage::Hessian));
    }
    Ok(NodeCertificate {
        point: p.to_vec(),
        chart,
        gradient,
        hessian,
        hessian_det,
    })
}

pub fn certify_nodes(gamma: &MultiPoly, u: &[Point]) -> Result<Vec<NodeCertificate>, ConicError> {
    u.iter().map(|p| certify_node(gamma, p)).collect()
}

/// The singular point of the conic-bundle threefold over a node of the
/// discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSingularity {
    #[serde(with = "serial::rationals")]
    pub x: Point,
    #[serde(with = "serial::rationals")]
    pub y: Point,
    pub rank: usize,
}

/// The kernel of `A(x)` when it has rank 2, verified to be a singular point
/// of `Q` (all six partials vanish).
pub fn singular_point_on_q(a: &SymQuadricMatrix, x: &[Rational]) -> Result<FiberSingularity, ConicError> {
    let m = a.at(x);
    let rank = m.rank();
    if rank != 2 {
        return Err(ConicError::RankDrop { point: show(x), rank });
    }
    let y = m.kernel().pop().expect("one-dimensional kernel");
    let q = a.reassemble();
    let pt = [x.to_vec(), y.clone()];
    for b in 0..2 {
        for i in 0..3 {
            if !q.partial_derivative(Var::new(b, i))?.eval_at(&pt)?.is_zero() {
                return Err(ConicError::NotSingularOnQ(format!(
                    "{} x {}",
                    show(x),
                    show(&y)
                )));
            }
        }
    }
    Ok(FiberSingularity {
        x: x.to_vec(),
        y,
        rank,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankSample {
    #[serde(with = "serial::rationals")]
    pub point: Point,
    pub rank: usize,
}

/// Rank of `A(x)` along the discriminant: exact at rational points found on
/// lines joining two nodes, and modulo a large prime at the roots of the
/// discriminant on random lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub exact_samples: Vec<RankSample>,
    pub prime: u64,
    pub modular_samples: usize,
    pub passed: bool,
}

pub(crate) fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// Rational points of `gamma` on the line through two nodes other than the
/// nodes themselves.
fn residual_points_on_node_line(gamma: &MultiPoly, a: &[Rational], b: &[Rational]) -> Vec<Point> {
    let sub: Vec<Vec<Rational>> = (0..3).map(|k| vec![a[k].clone(), b[k].clone(), int(0)]).collect();
    let g = gamma.linear_substitute(0, &sub);
    let coef = |i: u32| g.coefficient(&[i, 6 - i, 0]);
    // g = s^2 t^2 (al s^2 + be s t + ga t^2) when both points are double
    if (0..2).chain(5..7).any(|i| !coef(i).is_zero()) {
        return Vec::new();
    }
    let (al, be, ga) = (coef(4), coef(3), coef(2));
    if al.is_zero() || ga.is_zero() {
        return Vec::new();
    }
    let disc = &be * &be - int(4) * &al * &ga;
    let Some(r) = rational_sqrt(&disc) else {
        return Vec::new();
    };
    let mut roots = vec![(-&be + &r) / (int(2) * &al)];
    if !r.is_zero() {
        roots.push((-&be - &r) / (int(2) * &al));
    }
    roots
        .into_iter()
        .map(|s| (0..3).map(|k| &s * &a[k] + &b[k]).collect())
        .collect()
}

fn eval_mod(f: &PrimeField, g: &MultiPoly, x: &[u64]) -> Option<u64> {
    let mut acc = 0;
    for (e, c) in g.terms() {
        let mut t = f.from_rational(c)?;
        for (k, &ex) in e.iter().enumerate() {
            t = f.mul(&t, &f.pow(&x[k], ex as u64));
        }
        acc = f.add(&acc, &t);
    }
    Some(acc)
}

pub fn rank_stratification_check<R: Rng + ?Sized>(
    a: &SymQuadricMatrix,
    gamma: &MultiPoly,
    nodes: &[Point],
    modular_lines: usize,
    rng: &mut R,
) -> Result<RankReport, ConicError> {
    let mut exact_samples = Vec::new();
    let mut points: Vec<Point> = nodes.to_vec();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            points.extend(residual_points_on_node_line(gamma, &nodes[i], &nodes[j]));
        }
    }
    for p in points {
        if !gamma.eval_at(&[p.clone()])?.is_zero() {
            return Err(ConicError::Degenerate(format!("{} is not on the discriminant", show(&p))));
        }
        let rank = a.at(&p).rank();
        if rank != 2 {
            return Err(ConicError::RankDrop { point: show(&p), rank });
        }
        exact_samples.push(RankSample { point: p, rank });
    }

    let prime = random_prime(rng);
    let f = PrimeField::new(prime);
    let deg = 6;
    let mut modular_samples = 0;
    for _ in 0..modular_lines {
        let base: Vec<u64> = (0..3).map(|_| rng.random_range(0..prime)).collect();
        let dir: Vec<u64> = (0..3).map(|_| rng.random_range(0..prime)).collect();
        let on_line = |l: u64| -> Vec<u64> { (0..3).map(|k| f.add(&base[k], &f.mul(&l, &dir[k]))).collect() };
        let xs: Vec<u64> = (0..=deg).collect();
        let ys: Option<Vec<u64>> = xs.iter().map(|&l| eval_mod(&f, gamma, &on_line(l))).collect();
        let Some(ys) = ys else { continue };
        let restricted = interpolate(&f, &xs, &ys);
        if restricted.is_empty() {
            continue;
        }
        for root in roots_mod_p(&f, &restricted, rng) {
            let x = on_line(root);
            let rows: Option<Vec<Vec<u64>>> = (0..3)
                .map(|i| (0..3).map(|j| eval_mod(&f, a.entry(i, j), &x)).collect())
                .collect();
            let Some(rows) = rows else { continue };
            let rank = rank_over(&f, &rows);
            if rank != 2 {
                return Err(ConicError::RankDrop {
                    point: format!("{x:?} mod {prime}"),
                    rank,
                });
            }
            modular_samples += 1;
        }
    }
    Ok(RankReport {
        exact_samples,
        prime,
        modular_samples,
        passed: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Block;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(&[Block::new("x", 3)], Var::new(0, i)).unwrap()
    }

    fn pt(v: [i64; 3]) -> Point {
        v.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn node_of_nodal_cubic() {
        let f = &(&x(1).pow(2) * &x(2)) - &(&x(0).pow(2) * &(&x(0) + &x(2)));
        let c = certify_node(&f, &pt([0, 0, 1])).unwrap();
        assert_eq!(c.chart, 2);
        assert_eq!(c.hessian_det, int(-4));
        let smooth = certify_node(&f, &pt([-1, 0, 1]));
        assert!(matches!(smooth, Err(ConicError::NotANode { stage: NodeStage::Gradient, .. })));
        let off = certify_node(&f, &pt([1, 1, 1]));
        assert!(matches!(off, Err(ConicError::NotANode { stage: NodeStage::Value, .. })));
    }

    #[test]
    fn cusp_fails_hessian() {
        // x2^2 x1^4 - x3^3 x1^3: a cusp at (1:0:0)
        let f = &(&x(1).pow(2) * &x(0).pow(4)) - &(&x(2).pow(3) * &x(0).pow(3));
        let r = certify_node(&f, &pt([1, 0, 0]));
        assert!(matches!(r, Err(ConicError::NotANode { stage: NodeStage::Hessian, .. })));
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&Rational::new(9.into(), 4.into())), Some(Rational::new(3.into(), 2.into())));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
    }
}
