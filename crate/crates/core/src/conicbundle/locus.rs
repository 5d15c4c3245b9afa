//! Completeness of a claimed singular locus of a plane curve `F = 0`: after
//! a random projective change of coordinates, every singular point is a
//! common zero of the three partials, so its first affine coordinate is a
//! root of `gcd(Res_y(F_i, F_j))`. Matching that gcd's squarefree degree
//! with the number of claimed points, plus a uniqueness check on each
//! vertical line and a separate check along the line at infinity, shows
//! there are no other singular points.
//!
//! Runs over `F_p` for one random large prime (fast, probabilistic) or over
//! `Q` (exact).

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{cross, dot, ConicError, Point, MAX_ATTEMPTS};
use crate::exactalg::field::{Field, PrimeField, RationalField};
use crate::exactalg::modp::random_prime;
use crate::exactalg::univariate::{self as up, UPoly};
use crate::exactalg::{int, MultiPoly, Rational, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocusMode {
    Modular,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularLocusCheck {
    pub mode: LocusMode,
    pub prime: Option<u64>,
    pub expected_points: usize,
    /// Number of distinct roots of the eliminant, `None` if it vanished.
    pub eliminant_roots: Option<usize>,
    pub attempts: usize,
    pub passed: bool,
}

// polynomial in y whose coefficients are polynomials in x
type Biv<E> = Vec<UPoly<E>>;

enum Attempt {
    Retry(&'static str),
    Done { passed: bool, roots: Option<usize> },
}

fn to_field<F: Field>(f: &F, q: &Rational) -> Option<F::Elem> {
    f.from_rational(q)
}

/// Dehomogenizes at `x3 = 1`, grouping by the power of `x2`.
fn to_biv<F: Field>(f: &F, g: &MultiPoly) -> Biv<F::Elem> {
    let mut out: Biv<F::Elem> = Vec::new();
    for (e, c) in g.terms() {
        let (a, b) = (e[0] as usize, e[1] as usize);
        if out.len() <= b {
            out.resize(b + 1, Vec::new());
        }
        let row = &mut out[b];
        if row.len() <= a {
            row.resize(a + 1, f.zero());
        }
        let c = to_field(f, c).expect("integral coefficients");
        row[a] = f.add(&row[a], &c);
    }
    out.into_iter().map(|r| up::trim(f, r)).collect()
}

fn specialize_x<F: Field>(f: &F, g: &Biv<F::Elem>, x: &F::Elem) -> UPoly<F::Elem> {
    up::trim(f, g.iter().map(|c| up::eval(f, c, x)).collect())
}

/// Restriction to the line at infinity `x3 = 0` in the coordinate `x2 / x1`.
fn at_infinity<F: Field>(f: &F, g: &MultiPoly) -> UPoly<F::Elem> {
    let mut out = Vec::new();
    for (e, c) in g.terms() {
        if e[2] != 0 {
            continue;
        }
        let b = e[1] as usize;
        if out.len() <= b {
            out.resize(b + 1, f.zero());
        }
        out[b] = f.add(&out[b], &to_field(f, c).expect("integral coefficients"));
    }
    up::trim(f, out)
}

/// Counting the distinct common roots of the three eliminants `res`, which
/// must include the `claimed` ones. `None` when the eliminants vanish.
trait Eliminant: Field {
    fn eliminant_roots<R: Rng + ?Sized>(
        &self,
        res: &[UPoly<Self::Elem>],
        claimed: &[Self::Elem],
        rng: &mut R,
    ) -> Option<(bool, usize)>;
}

impl Eliminant for PrimeField {
    fn eliminant_roots<R: Rng + ?Sized>(&self, res: &[UPoly<u64>], claimed: &[u64], _: &mut R) -> Option<(bool, usize)> {
        let f = self;
        let h = up::gcd(f, &up::gcd(f, &res[0], &res[1]), &res[2]);
        if h.is_empty() {
            return None;
        }
        let sqfree = up::divrem(f, &h, &up::gcd(f, &h, &up::derivative(f, &h))).0;
        let roots = up::degree(&sqfree).unwrap_or(0);
        let passed = roots == claimed.len() && claimed.iter().all(|a| f.is_zero(&up::eval(f, &sqfree, a)));
        Some((passed, roots))
    }
}

// Over Q the gcd itself is too expensive: the claimed roots are divided out
// exactly, and the cofactors are shown coprime modulo a prime that keeps
// their leading coefficients (a common factor over Q would survive there).
impl Eliminant for RationalField {
    fn eliminant_roots<R: Rng + ?Sized>(
        &self,
        res: &[UPoly<Rational>],
        claimed: &[Rational],
        rng: &mut R,
    ) -> Option<(bool, usize)> {
        let f = self;
        if res.iter().any(|r| r.is_empty()) {
            return None;
        }
        let mut passed = true;
        let mut cofactors = Vec::with_capacity(res.len());
        for r in res {
            let mut r = r.clone();
            for a in claimed {
                let lin = [-a.clone(), int(1)];
                let mut mult = 0;
                while f.is_zero(&up::eval(f, &r, a)) {
                    r = up::divrem(f, &r, &lin).0;
                    mult += 1;
                }
                passed &= mult > 0;
            }
            cofactors.push(r);
        }
        let mut extra = None;
        for _ in 0..PRIME_TRIES {
            let pf = PrimeField::new(random_prime(rng));
            let reduced: Option<Vec<UPoly<u64>>> = cofactors
                .iter()
                .map(|r| r.iter().map(|c| pf.from_rational(c)).collect::<Option<Vec<_>>>())
                .collect();
            let Some(reduced) = reduced else { continue };
            if reduced.iter().any(|r| r.last().is_none_or(|l| *l == 0)) {
                continue;
            }
            let g = up::gcd(&pf, &up::gcd(&pf, &reduced[0], &reduced[1]), &reduced[2]);
            let d = up::degree(&g).unwrap_or(0);
            extra = Some(d);
            if d == 0 {
                break;
            }
        }
        let extra = extra?;
        Some((passed && extra == 0, claimed.len() + extra))
    }
}

const PRIME_TRIES: usize = 4;

fn attempt<F: Eliminant, R: Rng + ?Sized>(
    f: &F,
    curve: &MultiPoly,
    degree: usize,
    expected: &[Point],
    t: &[Vec<Rational>],
    rng: &mut R,
) -> Result<Attempt, ConicError> {
    let g = curve.linear_substitute(0, t);
    let cols: Vec<Point> = (0..3).map(|j| t.iter().map(|r| r[j].clone()).collect()).collect();
    let adj = [cross(&cols[1], &cols[2]), cross(&cols[2], &cols[0]), cross(&cols[0], &cols[1])];

    // claimed points in the new coordinates, normalized to x3 = 1
    let mut affine = Vec::with_capacity(expected.len());
    for p in expected {
        let q: Point = adj.iter().map(|r| dot(r, p)).collect();
        if q[2] == int(0) {
            return Ok(Attempt::Retry("claimed point at infinity"));
        }
        let (Some(a), Some(b)) = (to_field(f, &(&q[0] / &q[2])), to_field(f, &(&q[1] / &q[2]))) else {
            return Ok(Attempt::Retry("claimed point not reducible"));
        };
        if affine.iter().any(|(a0, _)| a0 == &a) {
            return Ok(Attempt::Retry("claimed points share a vertical line"));
        }
        affine.push((a, b));
    }

    let partials: Vec<MultiPoly> = (0..3)
        .map(|i| g.partial_derivative(Var::new(0, i)))
        .collect::<Result<_, _>>()?;
    let bivs: Vec<Biv<F::Elem>> = partials.iter().map(|p| to_biv(f, p)).collect();
    for b in &bivs {
        // leading coefficient in y must be a nonzero constant
        if b.len() != degree || b[degree - 1].len() != 1 {
            return Ok(Attempt::Retry("partial not monic in y"));
        }
    }

    // (0:1:0) is excluded by the leading coefficients; the rest of x3 = 0
    let inf = partials.iter().map(|p| at_infinity(f, p)).collect::<Vec<_>>();
    let inf_gcd = up::gcd(f, &up::gcd(f, &inf[0], &inf[1]), &inf[2]);
    if up::degree(&inf_gcd) != Some(0) {
        return Ok(Attempt::Done {
            passed: false,
            roots: None,
        });
    }

    let n_samples = (degree - 1) * (degree - 1) + 1;
    let xs: Vec<F::Elem> = (0..n_samples as i64).map(|k| f.from_i64(k)).collect();
    let mut values = vec![Vec::with_capacity(n_samples); 3];
    for x in &xs {
        let s: Vec<UPoly<F::Elem>> = bivs.iter().map(|b| specialize_x(f, b, x)).collect();
        values[0].push(up::resultant(f, &s[0], &s[1]));
        values[1].push(up::resultant(f, &s[0], &s[2]));
        values[2].push(up::resultant(f, &s[1], &s[2]));
    }
    let res: Vec<UPoly<F::Elem>> = values.iter().map(|v| up::interpolate(f, &xs, v)).collect();
    let claimed: Vec<F::Elem> = affine.iter().map(|(a, _)| a.clone()).collect();
    let Some((mut passed, roots)) = f.eliminant_roots(&res, &claimed, rng) else {
        return Ok(Attempt::Done {
            passed: false,
            roots: None,
        });
    };
    for (a, b) in &affine {
        let s: Vec<UPoly<F::Elem>> = bivs.iter().map(|bv| specialize_x(f, bv, a)).collect();
        let common = up::gcd(f, &up::gcd(f, &s[0], &s[1]), &s[2]);
        if common != vec![f.neg(b), f.one()] {
            passed = false;
        }
    }
    Ok(Attempt::Done {
        passed,
        roots: Some(roots),
    })
}

fn run<F: Eliminant, R: Rng + ?Sized>(
    f: &F,
    curve: &MultiPoly,
    expected: &[Point],
    rng: &mut R,
) -> Result<(bool, Option<usize>, usize), ConicError> {
    let degree = match curve.multidegree().as_deref() {
        Some([d]) if *d >= 2 => *d as usize,
        other => {
            return Err(ConicError::Degenerate(format!(
                "plane curve of degree {other:?}"
            )))
        }
    };
    let curve = curve.primitive();
    let mut last = "";
    for k in 1..=MAX_ATTEMPTS {
        let t: Vec<Vec<Rational>> = (0..3)
            .map(|_| (0..3).map(|_| int(rng.random_range(-4..=4))).collect())
            .collect();
        let det = dot(&t[0], &cross(&t[1], &t[2]));
        if det == int(0) || to_field(f, &det).is_none_or(|d| f.is_zero(&d)) {
            last = "singular transform";
            continue;
        }
        match attempt(f, &curve, degree, expected, &t, rng)? {
            Attempt::Retry(why) => last = why,
            Attempt::Done { passed, roots } => return Ok((passed, roots, k)),
        }
    }
    Err(ConicError::RetriesExhausted {
        attempts: MAX_ATTEMPTS,
        last: last.to_string(),
    })
}

/// Checks that the singular points of the plane curve `curve = 0` (a form in
/// a single block of three variables) are exactly `expected`.
pub fn check_singular_locus<R: Rng + ?Sized>(
    curve: &MultiPoly,
    expected: &[Point],
    mode: LocusMode,
    rng: &mut R,
) -> Result<SingularLocusCheck, ConicError> {
    if curve.blocks().len() != 1 || curve.num_vars() != 3 {
        return Err(ConicError::Degenerate("expected a ternary form".into()));
    }
    let (prime, (passed, roots, attempts)) = match mode {
        LocusMode::Modular => {
            let p = random_prime(rng);
            (Some(p), run(&PrimeField::new(p), curve, expected, rng)?)
        }
        LocusMode::Exact => (None, run(&RationalField, curve, expected, rng)?),
    };
    Ok(SingularLocusCheck {
        mode,
        prime,
        expected_points: expected.len(),
        eliminant_roots: roots,
        attempts,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Block, Var};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(&[Block::new("x", 3)], Var::new(0, i)).unwrap()
    }

    fn pt(v: [i64; 3]) -> Point {
        v.iter().map(|&c| int(c)).collect()
    }

    // nodal cubic x2^2 x3 = x1^2 (x1 + x3), node at (0:0:1)
    fn nodal_cubic() -> MultiPoly {
        &(&x(1).pow(2) * &x(2)) - &(&x(0).pow(2) * &(&x(0) + &x(2)))
    }

    #[test]
    fn nodal_cubic_has_one_singular_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for mode in [LocusMode::Modular, LocusMode::Exact] {
            let r = check_singular_locus(&nodal_cubic(), &[pt([0, 0, 1])], mode, &mut rng).unwrap();
            assert!(r.passed, "{mode:?}");
            assert_eq!(r.eliminant_roots, Some(1));
        }
    }

    #[test]
    fn missing_point_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // three lines x1 x2 x3 = 0 have three nodes; claim only two
        let tri = &(&x(0) * &x(1)) * &x(2);
        let claimed = [pt([1, 0, 0]), pt([0, 1, 0])];
        let r = check_singular_locus(&tri, &claimed, LocusMode::Modular, &mut rng).unwrap();
        assert!(!r.passed);
        let all = [pt([1, 0, 0]), pt([0, 1, 0]), pt([0, 0, 1])];
        assert!(check_singular_locus(&tri, &all, LocusMode::Exact, &mut rng).unwrap().passed);
    }

    #[test]
    fn smooth_conic_has_none() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = &(&x(0).pow(2) + &x(1).pow(2)) - &x(2).pow(2);
        assert!(check_singular_locus(&c, &[], LocusMode::Modular, &mut rng).unwrap().passed);
        assert!(!check_singular_locus(&c, &[pt([0, 0, 1])], LocusMode::Exact, &mut rng).unwrap().passed);
    }

    #[test]
    fn nonreduced_curve_fails() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let double = x(0).pow(2);
        let r = check_singular_locus(&double, &[], LocusMode::Modular, &mut rng).unwrap();
        assert!(!r.passed);
    }
}
