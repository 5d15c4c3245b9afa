use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgError, Rational};

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Integer row-echelon form produced by fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, AlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgError::Shape("ragged rows".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Zero-row matrix with a fixed column count, for accumulating conditions.
    pub fn empty(cols: usize) -> Self {
        QMatrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Rational>) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, AlgError> {
        if v.len() != self.cols {
            return Err(AlgError::Shape(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, AlgError> {
        if self.cols != other.rows {
            return Err(AlgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Each row scaled to a primitive integer vector; row space unchanged.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
                let ints: Vec<BigInt> = row
                    .iter()
                    .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                    .collect();
                let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
                if g.is_zero() || g.is_one() {
                    ints
                } else {
                    ints.into_iter().map(|c| c / &g).collect()
                }
            })
            .collect()
    }

    /// Bareiss fraction-free elimination. Every intermediate entry is a minor
    /// of the integer matrix, so each division below is exact.
    fn echelon(&self) -> Echelon {
        let mut m = self.integer_rows();
        let (nr, nc) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut r = 0;
        let mut pivots = Vec::new();
        for c in 0..nc {
            if r == nr {
                break;
            }
            // smallest nonzero pivot keeps the minors small in practice
            let Some(p) = (r..nr)
                .filter(|&i| !m[i][c].is_zero())
                .min_by_key(|&i| m[i][c].abs())
            else {
                continue;
            };
            m.swap(r, p);
            let (head, tail) = m.split_at_mut(r + 1);
            let prow = &head[r];
            for row in tail.iter_mut() {
                let f = row[c].clone();
                for j in c + 1..nc {
                    let v = &prow[c] * &row[j] - &f * &prow[j];
                    debug_assert!((&v % &prev).is_zero(), "Bareiss division not exact");
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Echelon { rows: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Exact basis of the right null space, one vector per free column, each
    /// normalized to have a 1 in its free coordinate.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let ech = self.echelon();
        let n = self.cols;
        let pivot_set: Vec<bool> = (0..n).map(|c| ech.pivots.contains(&c)).collect();
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| !pivot_set[c]) {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (k, &pc) in ech.pivots.iter().enumerate().rev() {
                let row = &ech.rows[k];
                let mut s = Rational::zero();
                for j in pc + 1..n {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        s += Rational::from_integer(row[j].clone()) * &v[j];
                    }
                }
                v[pc] = -s / Rational::from_integer(row[pc].clone());
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<Rational, AlgError> {
        if self.rows != self.cols {
            return Err(AlgError::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        // plain elimination over Q; only used on tiny matrices
        let mut m = self.to_rows();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let piv = m[c][c].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = &m[i][c] / &piv;
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] -= t;
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(QMatrix::identity(3).kernel().is_empty());
        assert_eq!(QMatrix::identity(3).rank(), 3);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let z = QMatrix::zeros(3, 5);
        assert_eq!(z.kernel().len(), 5);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = QMatrix::from_rows(vec![
            vec![int(1), int(2), int(3), int(4)],
            vec![int(2), int(4), int(6), int(8)],
            vec![rat(1, 2), int(0), int(-1), rat(5, 3)],
        ])
        .unwrap();
        let k = m.kernel();
        assert_eq!(k.len() + m.rank(), 4);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn determinant_small() {
        let m = QMatrix::from_rows(vec![
            vec![int(2), int(0), int(1)],
            vec![int(1), int(3), int(2)],
            vec![int(1), int(1), int(2)],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), int(6));
        let s = QMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert_eq!(s.det().unwrap(), int(0));
    }

    #[test]
    fn rank_with_skipped_pivot_columns() {
        let m = QMatrix::from_rows(vec![
            vec![int(0), int(1), int(1), int(0)],
            vec![int(0), int(2), int(2), int(1)],
            vec![int(0), int(3), int(3), int(5)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel().len(), 2);
    }
}
