use serde::{Deserialize, Serialize};

use super::{xy_blocks, ConicError};
use crate::exactalg::{det3, rat, Block, MultiPoly, QMatrix, Rational};

fn x_block() -> Vec<Block> {
    vec![Block::new("x", 3)]
}

/// Symmetric 3x3 matrix of quadratic forms in `x`, so that
/// `Q(x, y) = sum a_ij(x) y_i y_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymQuadricMatrix {
    entries: Vec<Vec<MultiPoly>>,
}

impl SymQuadricMatrix {
    pub fn from_entries(entries: [[MultiPoly; 3]; 3]) -> Result<Self, ConicError> {
        for i in 0..3 {
            for j in 0..3 {
                if entries[i][j] != entries[j][i] {
                    return Err(ConicError::Degenerate(format!("entry ({i},{j}) breaks symmetry")));
                }
                if entries[i][j].blocks() != x_block().as_slice() {
                    return Err(ConicError::Degenerate(format!("entry ({i},{j}) is not a form in x")));
                }
            }
        }
        Ok(SymQuadricMatrix {
            entries: entries.iter().map(|r| r.to_vec()).collect(),
        })
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }

    pub fn as_array(&self) -> [[MultiPoly; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j].clone()))
    }

    /// `sum a_ij(x) y_i y_j` as a form on `P2 x P2`.
    pub fn reassemble(&self) -> MultiPoly {
        let blocks = xy_blocks();
        let mut q = MultiPoly::zero(&blocks);
        for i in 0..3 {
            for j in 0..3 {
                for (e, c) in self.entries[i][j].terms() {
                    let mut full = e.clone();
                    let mut ye = [0u32; 3];
                    ye[i] += 1;
                    ye[j] += 1;
                    full.extend_from_slice(&ye);
                    q = &q + &MultiPoly::monomial(&blocks, full, c.clone());
                }
            }
        }
        q
    }

    /// The rational matrix `A(x)`.
    pub fn at(&self, x: &[Rational]) -> QMatrix {
        let rows = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|f| f.eval_at(&[x.to_vec()]).expect("point in P2"))
                    .collect()
            })
            .collect();
        QMatrix::from_rows(rows).expect("3x3")
    }
}

/// Splits a (2,2) form into its symmetric matrix of quadrics, halving the
/// coefficients of mixed monomials `y_i y_j`.
pub fn to_symmetric_matrix(q: &MultiPoly) -> Result<SymQuadricMatrix, ConicError> {
    if q.blocks() != xy_blocks().as_slice() {
        return Err(ConicError::Degenerate("form must live on blocks x:3, y:3".into()));
    }
    match q.multidegree() {
        Some(d) if d == [2, 2] => {}
        other => {
            return Err(ConicError::Degenerate(format!(
                "form of multidegree {other:?}, expected [2, 2]"
            )))
        }
    }
    let xb = x_block();
    let mut entries: [[MultiPoly; 3]; 3] =
        std::array::from_fn(|_| std::array::from_fn(|_| MultiPoly::zero(&xb)));
    for (e, c) in q.terms() {
        let xe = e[..3].to_vec();
        let idx: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat_n(i, e[3 + i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            entries[i][i] = &entries[i][i] + &MultiPoly::monomial(&xb, xe, c.clone());
        } else {
            let half = MultiPoly::monomial(&xb, xe, c * rat(1, 2));
            entries[i][j] = &entries[i][j] + &half;
            entries[j][i] = &entries[j][i] + &half;
        }
    }
    SymQuadricMatrix::from_entries(entries)
}

/// `det A(x)`, a sextic; identically zero determinants are rejected.
pub fn discriminant(a: &SymQuadricMatrix) -> Result<MultiPoly, ConicError> {
    let g = det3(&a.as_array());
    if g.is_zero() {
        return Err(ConicError::Degenerate("determinant vanishes identically".into()));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, Var};

    fn var(b: usize, i: usize) -> MultiPoly {
        MultiPoly::var(&xy_blocks(), Var::new(b, i)).unwrap()
    }

    #[test]
    fn mixed_term_is_halved() {
        let q = &(&var(0, 0) * &var(0, 0)) * &(&var(1, 0) * &var(1, 1));
        let a = to_symmetric_matrix(&q).unwrap();
        let xb = x_block();
        let expect = MultiPoly::monomial(&xb, vec![2, 0, 0], rat(1, 2));
        assert_eq!(a.entry(0, 1), &expect);
        assert_eq!(a.entry(1, 0), &expect);
        assert!(a.entry(0, 0).is_zero());
        assert_eq!(a.reassemble(), q);
    }

    #[test]
    fn diagonal_form_and_its_discriminant() {
        let mut q = MultiPoly::zero(&xy_blocks());
        for i in 0..3 {
            q = &q + &(&var(0, i).pow(2) * &var(1, i).pow(2));
        }
        let a = to_symmetric_matrix(&q).unwrap();
        let g = discriminant(&a).unwrap();
        let xb = x_block();
        assert_eq!(g, MultiPoly::monomial(&xb, vec![2, 2, 2], int(1)));
        assert_eq!(a.at(&[int(1), int(2), int(0)]).rank(), 2);
    }

    #[test]
    fn reducible_form_gives_product_discriminant() {
        // Q = x1 * C with C = x1 y1^2 + x2 y2^2 + x3 y3^2 + 2 x3 y1 y2, so
        // det A = x1^3 * x3 (x1 x2 - x3^2)
        let c = &(&(&(&var(0, 0) * &var(1, 0).pow(2)) + &(&var(0, 1) * &var(1, 1).pow(2)))
            + &(&var(0, 2) * &var(1, 2).pow(2)))
            + &(&var(0, 2) * &(&var(1, 0) * &var(1, 1))).scale(&int(2));
        let q = &var(0, 0) * &c;
        let g = discriminant(&to_symmetric_matrix(&q).unwrap()).unwrap();
        let xb = x_block();
        let x = |i: usize| MultiPoly::var(&xb, Var::new(0, i)).unwrap();
        let expect = &(&x(0).pow(3) * &x(2)) * &(&(&x(0) * &x(1)) - &x(2).pow(2));
        assert_eq!(g, expect);
    }

    #[test]
    fn rank_one_form_is_degenerate() {
        let q = &var(0, 0).pow(2) * &var(1, 0).pow(2);
        assert!(discriminant(&to_symmetric_matrix(&q).unwrap()).is_err());
    }

    #[test]
    fn wrong_bidegree_rejected() {
        let q = &var(0, 0) * &var(1, 0);
        assert!(to_symmetric_matrix(&q).is_err());
    }
}
