use super::MultiPoly;

/// Determinant of a 3x3 matrix of polynomials by the rule of Sarrus.
pub fn det3(m: &[[MultiPoly; 3]; 3]) -> MultiPoly {
    let t = |a: &MultiPoly, b: &MultiPoly, c: &MultiPoly| &(a * b) * c;
    let pos = &(&t(&m[0][0], &m[1][1], &m[2][2]) + &t(&m[0][1], &m[1][2], &m[2][0]))
        + &t(&m[0][2], &m[1][0], &m[2][1]);
    let neg = &(&t(&m[0][2], &m[1][1], &m[2][0]) + &t(&m[0][0], &m[1][2], &m[2][1]))
        + &t(&m[0][1], &m[1][0], &m[2][2]);
    &pos - &neg
}
