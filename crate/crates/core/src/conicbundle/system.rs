use num_traits::{One, Zero};

use super::{collinear, show, xy_blocks, ConicError, LineInFiber, Point};
use crate::exactalg::{Block, MultiPoly, QMatrix, Rational};

/// A linear system of forms of fixed multidegree, kept as the kernel of a
/// matrix of linear conditions on the monomial coefficients.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    blocks: Vec<Block>,
    degrees: Vec<u32>,
    monomials: Vec<Vec<u32>>,
    conditions: QMatrix,
    basis: Vec<MultiPoly>,
    log: Vec<String>,
}

fn monomial_value(e: &[u32], pt: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for (&k, c) in e.iter().zip(pt) {
        if k > 0 {
            acc *= num_traits::pow(c.clone(), k as usize);
            if acc.is_zero() {
                break;
            }
        }
    }
    acc
}

fn monomial_partial(e: &[u32], var: usize, pt: &[Rational]) -> Rational {
    if e[var] == 0 {
        return Rational::zero();
    }
    let mut d = e.to_vec();
    d[var] -= 1;
    monomial_value(&d, pt) * Rational::from_integer(e[var].into())
}

impl LinearSystem {
    /// Every form of the given bidegree in `(x, y)`.
    pub fn complete(degrees: [u32; 2]) -> Self {
        let blocks = xy_blocks();
        let monomials = MultiPoly::monomials(&blocks, &degrees);
        let basis = monomials
            .iter()
            .map(|e| MultiPoly::monomial(&blocks, e.clone(), Rational::one()))
            .collect();
        LinearSystem {
            conditions: QMatrix::empty(monomials.len()),
            blocks,
            degrees: degrees.to_vec(),
            monomials,
            basis,
            log: Vec::new(),
        }
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn conditions_log(&self) -> &[String] {
        &self.log
    }

    pub fn condition_matrix(&self) -> &QMatrix {
        &self.conditions
    }

    /// Adds rows of linear functionals on the monomial coefficients.
    pub fn impose(&self, rows: Vec<Vec<Rational>>, label: String) -> Self {
        let mut out = self.clone();
        for r in rows {
            out.conditions.push_row(r);
        }
        out.basis = out
            .conditions
            .kernel()
            .into_iter()
            .map(|v| MultiPoly::from_terms(&out.blocks, out.monomials.iter().cloned().zip(v)))
            .collect();
        out.log.push(label);
        out
    }

    fn value_row(&self, pt: &[Rational]) -> Vec<Rational> {
        self.monomials.iter().map(|e| monomial_value(e, pt)).collect()
    }

    /// Vanishing at `(x, y)`.
    pub fn impose_point(&self, x: &[Rational], y: &[Rational]) -> Self {
        let pt: Point = x.iter().chain(y).cloned().collect();
        let row = self.value_row(&pt);
        self.impose(vec![row], format!("point {} x {}", show(x), show(y)))
    }

    /// Vanishing with all first partials at `(x, y)`.
    pub fn impose_singular_point(&self, x: &[Rational], y: &[Rational]) -> Self {
        let pt: Point = x.iter().chain(y).cloned().collect();
        let mut rows = vec![self.value_row(&pt)];
        for v in 0..pt.len() {
            rows.push(self.monomials.iter().map(|e| monomial_partial(e, v, &pt)).collect());
        }
        self.impose(rows, format!("node {} x {}", show(x), show(y)))
    }

    /// Containment of `{o} x l`: vanishing at three points of the line, which
    /// for a form quadratic in `y` is the vanishing of the restricted binary
    /// quadratic.
    pub fn impose_line(&self, lf: &LineInFiber) -> Self {
        let (p, q) = lf.spanning_points();
        let r: Point = p.iter().zip(&q).map(|(a, b)| a + b).collect();
        let rows = [p, q, r]
            .iter()
            .map(|y| {
                let pt: Point = lf.o.iter().chain(y.iter()).cloned().collect();
                self.value_row(&pt)
            })
            .collect();
        self.impose(rows, format!("line {} x {}^", show(&lf.o), show(&lf.line)))
    }
}

fn check_general_position(u: &[Point]) -> Result<(), ConicError> {
    if u.len() != 4 {
        return Err(ConicError::Degenerate(format!("need 4 points, got {}", u.len())));
    }
    for i in 0..4 {
        for j in i + 1..4 {
            for k in j + 1..4 {
                if collinear(&u[i], &u[j], &u[k]) {
                    return Err(ConicError::Degenerate(format!(
                        "{}, {}, {} are collinear",
                        show(&u[i]),
                        show(&u[j]),
                        show(&u[k])
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Forms of bidegree (2,2) singular at the four diagonal points `(u_i, u_i)`.
pub fn base_system(u: &[Point]) -> Result<LinearSystem, ConicError> {
    check_general_position(u)?;
    let sys = u
        .iter()
        .fold(LinearSystem::complete([2, 2]), |s, p| s.impose_singular_point(p, p));
    let rank = sys.conditions.rank();
    if sys.dim() != 16 {
        return Err(ConicError::Degenerate(format!(
            "node conditions have rank {rank}, expected 20"
        )));
    }
    Ok(sys)
}

/// Forms of bidegree (1,1) through the four diagonal points.
pub fn linear_analog_system(u: &[Point]) -> Result<LinearSystem, ConicError> {
    check_general_position(u)?;
    let sys = u
        .iter()
        .fold(LinearSystem::complete([1, 1]), |s, p| s.impose_point(p, p));
    if sys.dim() != 5 {
        return Err(ConicError::Degenerate(format!(
            "point conditions have rank {}, expected 4",
            sys.conditions.rank()
        )));
    }
    Ok(sys)
}

/// Dimensions along complete system, nodal system, then one entry per
/// imposed line.
pub fn dimension_ladder(u: &[Point], lines: &[LineInFiber]) -> Result<Vec<usize>, ConicError> {
    let mut sys = base_system(u)?;
    let mut dims = vec![sys.ambient_dim(), sys.dim()];
    for l in lines {
        sys = sys.impose_line(l);
        dims.push(sys.dim());
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conicbundle::standard_nodes;
    use crate::exactalg::{int, Var};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ladder_dimensions() {
        let u = standard_nodes();
        assert_eq!(LinearSystem::complete([2, 2]).dim(), 36);
        let base = base_system(&u).unwrap();
        assert_eq!(base.dim(), 16);
        assert_eq!(linear_analog_system(&u).unwrap().dim(), 5);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut s = base;
        for expected in [13, 10, 7, 4, 1] {
            s = s.impose_line(&LineInFiber::random(&mut rng));
            assert_eq!(s.dim(), expected);
        }
        assert_eq!(s.conditions_log().len(), 9);
    }

    #[test]
    fn basis_is_singular_at_nodes() {
        let u = standard_nodes();
        let base = base_system(&u).unwrap();
        for f in base.basis() {
            let pt = vec![u[1].clone(), u[1].clone()];
            assert_eq!(f.eval_at(&pt).unwrap(), int(0));
            for b in 0..2 {
                for i in 0..3 {
                    let d = f.partial_derivative(Var::new(b, i)).unwrap();
                    assert_eq!(d.eval_at(&pt).unwrap(), int(0));
                }
            }
        }
    }

    #[test]
    fn repeated_line_adds_nothing() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let lf = LineInFiber::random(&mut rng);
        let s = base_system(&standard_nodes()).unwrap().impose_line(&lf);
        assert_eq!(s.impose_line(&lf).dim(), s.dim());
    }

    #[test]
    fn collinear_points_rejected() {
        let mut u = standard_nodes();
        u[3] = vec![int(1), int(1), int(0)];
        assert!(matches!(base_system(&u), Err(ConicError::Degenerate(_))));
    }
}
