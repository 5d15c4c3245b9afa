use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::ChowError;
use crate::exactalg::{int, Rational};

/// Finite-dimensional graded Q-algebra given by a monomial basis and a full
/// table of structure constants, together with a degree map on the top
/// codimension.
#[derive(Debug)]
pub struct ChowRing {
    name: String,
    labels: Vec<String>,
    codims: Vec<usize>,
    // table[i][j] = coordinates of basis_i * basis_j
    table: Vec<Vec<Vec<Rational>>>,
    integration: Vec<Rational>,
    top: usize,
    generators: Vec<(String, Vec<Rational>)>,
    // basis-index maps for pulling classes back from factor / base rings
    pullbacks: Vec<(Arc<ChowRing>, Vec<usize>)>,
}

impl ChowRing {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn codim(&self, i: usize) -> usize {
        self.codims[i]
    }

    pub fn top_dimension(&self) -> usize {
        self.top
    }

    /// Rings this one can pull classes back from (bundle base or product
    /// factors), in construction order.
    pub fn sources(&self) -> impl Iterator<Item = &Arc<ChowRing>> {
        self.pullbacks.iter().map(|(r, _)| r)
    }

    pub fn generator_names(&self) -> impl Iterator<Item = &str> {
        self.generators.iter().map(|(n, _)| n.as_str())
    }

    pub fn one(self: &Arc<Self>) -> ChowClass {
        let i = self
            .codims
            .iter()
            .position(|&c| c == 0)
            .expect("ring has a unit");
        self.basis_class(i)
    }

    pub fn basis_class(self: &Arc<Self>, i: usize) -> ChowClass {
        let mut v = vec![Rational::zero(); self.rank()];
        v[i] = Rational::one();
        ChowClass {
            ring: Arc::clone(self),
            coeffs: v,
        }
    }

    pub fn zero(self: &Arc<Self>) -> ChowClass {
        ChowClass {
            ring: Arc::clone(self),
            coeffs: vec![Rational::zero(); self.rank()],
        }
    }

    pub fn class(self: &Arc<Self>, coeffs: Vec<Rational>) -> Result<ChowClass, ChowError> {
        if coeffs.len() != self.rank() {
            return Err(ChowError::Invalid(format!(
                "{} coefficients for a ring of rank {}",
                coeffs.len(),
                self.rank()
            )));
        }
        Ok(ChowClass {
            ring: Arc::clone(self),
            coeffs,
        })
    }

    pub fn generator(self: &Arc<Self>, name: &str) -> Result<ChowClass, ChowError> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| ChowClass {
                ring: Arc::clone(self),
                coeffs: v.clone(),
            })
            .ok_or_else(|| ChowError::UnknownGenerator(name.to_string()))
    }

    /// The class of a point: the top-codimension class of degree one.
    pub fn point(self: &Arc<Self>) -> ChowClass {
        let i = (0..self.rank())
            .find(|&i| self.codims[i] == self.top && !self.integration[i].is_zero())
            .expect("ring has a top class");
        self.basis_class(i).scale(&self.integration[i].recip())
    }

    /// Pull a class back along a structure map recorded at construction
    /// (bundle projection or product projection).
    pub fn pullback(self: &Arc<Self>, c: &ChowClass) -> Result<ChowClass, ChowError> {
        let (_, map) = self
            .pullbacks
            .iter()
            .find(|(src, _)| Arc::ptr_eq(src, &c.ring))
            .ok_or_else(|| ChowError::RingMismatch(c.ring.name.clone(), self.name.clone()))?;
        let mut v = vec![Rational::zero(); self.rank()];
        for (i, x) in c.coeffs.iter().enumerate() {
            v[map[i]] += x;
        }
        self.class(v)
    }

    /// Exhaustive check of commutativity, associativity, unit and grading on
    /// basis elements.
    pub fn check_axioms(self: &Arc<Self>) -> Result<(), String> {
        let n = self.rank();
        let one = self.one();
        for i in 0..n {
            let b = self.basis_class(i);
            if &one * &b != b {
                return Err(format!("unit fails on {}", self.labels[i]));
            }
            for j in 0..n {
                let bj = self.basis_class(j);
                let p = &b * &bj;
                if p != &bj * &b {
                    return Err(format!("{} * {} not commutative", self.labels[i], self.labels[j]));
                }
                for (k, c) in p.coeffs.iter().enumerate() {
                    if !c.is_zero() && self.codims[k] != self.codims[i] + self.codims[j] {
                        return Err(format!("grading broken in {} * {}", self.labels[i], self.labels[j]));
                    }
                }
                for k in 0..n {
                    let bk = self.basis_class(k);
                    if &p * &bk != &b * &(&bj * &bk) {
                        return Err(format!(
                            "({} * {}) * {} not associative",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn mul_coeffs(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = self.rank();
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &xy * t;
                    }
                }
            }
        }
        out
    }

    /// Tensor product `A ⊗ B`, the Chow ring of a product when both factors
    /// have cellular-type rings. Generator names must not collide.
    pub fn tensor(a: &Arc<ChowRing>, b: &Arc<ChowRing>, name: &str) -> Arc<ChowRing> {
        let (na, nb) = (a.rank(), b.rank());
        let idx = |i: usize, j: usize| i * nb + j;
        let mut labels = Vec::with_capacity(na * nb);
        let mut codims = Vec::with_capacity(na * nb);
        let mut integration = Vec::with_capacity(na * nb);
        for i in 0..na {
            for j in 0..nb {
                labels.push(match (a.codims[i], b.codims[j]) {
                    (0, 0) => "1".to_string(),
                    (_, 0) => a.labels[i].clone(),
                    (0, _) => b.labels[j].clone(),
                    _ => format!("{}*{}", a.labels[i], b.labels[j]),
                });
                codims.push(a.codims[i] + b.codims[j]);
                integration.push(&a.integration[i] * &b.integration[j]);
            }
        }
        let mut table = vec![vec![vec![Rational::zero(); na * nb]; na * nb]; na * nb];
        for i1 in 0..na {
            for j1 in 0..nb {
                for i2 in 0..na {
                    for j2 in 0..nb {
                        let pa = &a.table[i1][i2];
                        let pb = &b.table[j1][j2];
                        let cell = &mut table[idx(i1, j1)][idx(i2, j2)];
                        for (k, x) in pa.iter().enumerate() {
                            if x.is_zero() {
                                continue;
                            }
                            for (l, y) in pb.iter().enumerate() {
                                if !y.is_zero() {
                                    cell[idx(k, l)] += x * y;
                                }
                            }
                        }
                    }
                }
            }
        }
        let one_a = a.codims.iter().position(|&c| c == 0).unwrap();
        let one_b = b.codims.iter().position(|&c| c == 0).unwrap();
        let map_a: Vec<usize> = (0..na).map(|i| idx(i, one_b)).collect();
        let map_b: Vec<usize> = (0..nb).map(|j| idx(one_a, j)).collect();
        let lift = |v: &[Rational], map: &[usize]| {
            let mut out = vec![Rational::zero(); na * nb];
            for (i, x) in v.iter().enumerate() {
                out[map[i]] += x;
            }
            out
        };
        let generators = a
            .generators
            .iter()
            .map(|(n, v)| (n.clone(), lift(v, &map_a)))
            .chain(b.generators.iter().map(|(n, v)| (n.clone(), lift(v, &map_b))))
            .collect();
        Arc::new(ChowRing {
            name: name.to_string(),
            labels,
            codims,
            table,
            integration,
            top: a.top + b.top,
            generators,
            pullbacks: vec![(Arc::clone(a), map_a), (Arc::clone(b), map_b)],
        })
    }
}

/// `Q[h_1..h_k]/(h_i^{d_i+1})` with `∫ Π h_i^{d_i} = 1`.
pub fn product_projective_ring(dims: &[usize]) -> Result<Arc<ChowRing>, ChowError> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(ChowError::Invalid(format!("projective dimensions {dims:?}")));
    }
    let mut exps: Vec<Vec<usize>> = vec![vec![]];
    for &d in dims {
        exps = exps
            .into_iter()
            .flat_map(|e| {
                (0..=d).map(move |a| {
                    let mut v = e.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    let n = exps.len();
    let index_of = |e: &[usize]| exps.iter().position(|x| x == e);
    let labels: Vec<String> = exps
        .iter()
        .map(|e| {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        format!("h{}", i + 1)
                    } else {
                        format!("h{}^{}", i + 1, a)
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("*")
            }
        })
        .collect();
    let codims: Vec<usize> = exps.iter().map(|e| e.iter().sum()).collect();
    let top: usize = dims.iter().sum();
    let integration = exps
        .iter()
        .map(|e| if e.as_slice() == dims { int(1) } else { int(0) })
        .collect();
    let mut table = vec![vec![vec![Rational::zero(); n]; n]; n];
    for (i, ei) in exps.iter().enumerate() {
        for (j, ej) in exps.iter().enumerate() {
            let s: Vec<usize> = ei.iter().zip(ej).map(|(a, b)| a + b).collect();
            if s.iter().zip(dims).all(|(a, d)| a <= d) {
                table[i][j][index_of(&s).unwrap()] = int(1);
            }
        }
    }
    let generators = (0..dims.len())
        .map(|g| {
            let mut e = vec![0; dims.len()];
            e[g] = 1;
            let mut v = vec![Rational::zero(); n];
            v[index_of(&e).unwrap()] = int(1);
            (format!("h{}", g + 1), v)
        })
        .collect();
    let name = dims
        .iter()
        .map(|d| format!("P{d}"))
        .collect::<Vec<_>>()
        .join("x");
    Ok(Arc::new(ChowRing {
        name,
        labels,
        codims,
        table,
        integration,
        top,
        generators,
        pullbacks: Vec::new(),
    }))
}

/// Chow ring of the blow-up of the plane at four general points:
/// basis `1, L, E1..E4, pt` with `L^2 = pt`, `Ei^2 = -pt`, `L.Ei = Ei.Ej = 0`.
pub fn del_pezzo_ring() -> Arc<ChowRing> {
    let n = 7;
    let labels: Vec<String> = ["1", "L", "E1", "E2", "E3", "E4", "pt"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let codims = vec![0, 1, 1, 1, 1, 1, 2];
    let mut table = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        table[0][i][i] = int(1);
        table[i][0][i] = int(1);
    }
    table[1][1][6] = int(1);
    for e in 2..6 {
        table[e][e][6] = int(-1);
    }
    let integration = (0..n).map(|i| if i == 6 { int(1) } else { int(0) }).collect();
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); n];
        v[i] = int(1);
        v
    };
    let mut generators = vec![("L".to_string(), unit(1))];
    for k in 1..=4 {
        generators.push((format!("E{k}"), unit(k + 1)));
    }
    generators.push(("pt".to_string(), unit(6)));
    // K_S = -3L + E1 + E2 + E3 + E4
    let mut k = vec![Rational::zero(); n];
    k[1] = int(-3);
    for e in 2..6 {
        k[e] = int(1);
    }
    generators.push(("K".to_string(), k));
    Arc::new(ChowRing {
        name: "S5".into(),
        labels,
        codims,
        table,
        integration,
        top: 2,
        generators,
        pullbacks: Vec::new(),
    })
}

/// Chern data of a vector bundle on a surface; higher Chern classes vanish.
#[derive(Debug, Clone)]
pub struct ChernData {
    pub rank: usize,
    pub c1: ChowClass,
    pub c2: Rational,
}

impl ChernData {
    fn classes(&self) -> Vec<ChowClass> {
        let base = &self.c1.ring;
        let mut out = vec![self.c1.clone(), base.point().scale(&self.c2)];
        while out.len() < self.rank {
            out.push(base.zero());
        }
        out.truncate(self.rank);
        out
    }
}

/// `CH(P(E)) = CH(S)[ζ] / (ζ^r - c1 ζ^{r-1} + c2 ζ^{r-2} - ...)`, with ζ the
/// class of the tautological quotient `O(1)`. With this sign convention
/// `∫ ζ^{r+1} = c1^2 - c2`, the second Segre number of `E` on a surface.
pub fn projective_bundle_ring(
    base: &Arc<ChowRing>,
    chern: &ChernData,
) -> Result<Arc<ChowRing>, ChowError> {
    if !Arc::ptr_eq(base, &chern.c1.ring) {
        return Err(ChowError::RingMismatch(
            chern.c1.ring.name.clone(),
            base.name.clone(),
        ));
    }
    let r = chern.rank;
    if r < 1 {
        return Err(ChowError::Invalid("rank zero bundle".into()));
    }
    let cs = chern.classes();
    let nb = base.rank();
    let n = nb * r;
    let idx = |b: usize, k: usize| b * r + k;

    // element as a vector over powers of ζ of base coordinate vectors
    let reduce = |mut poly: Vec<Vec<Rational>>| -> Vec<Rational> {
        for k in (r..poly.len()).rev() {
            let beta = std::mem::replace(&mut poly[k], vec![Rational::zero(); nb]);
            if beta.iter().all(|x| x.is_zero()) {
                continue;
            }
            for (i, c) in cs.iter().enumerate() {
                let i = i + 1;
                let sign = if i % 2 == 1 { int(1) } else { int(-1) };
                let term = base.mul_coeffs(&beta, &c.coeffs);
                for (t, x) in poly[k - i].iter_mut().zip(term) {
                    *t += &sign * x;
                }
            }
        }
        let mut out = vec![Rational::zero(); n];
        for (k, v) in poly.iter().enumerate().take(r) {
            for (b, x) in v.iter().enumerate() {
                out[idx(b, k)] = x.clone();
            }
        }
        out
    };

    let mut table = vec![vec![vec![Rational::zero(); n]; n]; n];
    for b1 in 0..nb {
        for k1 in 0..r {
            for b2 in 0..nb {
                for k2 in 0..r {
                    let mut poly = vec![vec![Rational::zero(); nb]; k1 + k2 + 1];
                    poly[k1 + k2] = base.table[b1][b2].clone();
                    table[idx(b1, k1)][idx(b2, k2)] = reduce(poly);
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(n);
    let mut codims = Vec::with_capacity(n);
    let mut integration = Vec::with_capacity(n);
    for b in 0..nb {
        for k in 0..r {
            let z = match k {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{k}"),
            };
            labels.push(match (base.codims[b], k) {
                (0, 0) => "1".into(),
                (0, _) => z,
                (_, 0) => base.labels[b].clone(),
                _ => format!("{}*{}", base.labels[b], z),
            });
            codims.push(base.codims[b] + k);
            integration.push(if k == r - 1 {
                base.integration[b].clone()
            } else {
                Rational::zero()
            });
        }
    }
    let map: Vec<usize> = (0..nb).map(|b| idx(b, 0)).collect();
    let mut generators: Vec<(String, Vec<Rational>)> = base
        .generators
        .iter()
        .map(|(name, v)| {
            let mut out = vec![Rational::zero(); n];
            for (b, x) in v.iter().enumerate() {
                out[idx(b, 0)] = x.clone();
            }
            (name.clone(), out)
        })
        .collect();
    let one_b = base.codims.iter().position(|&c| c == 0).unwrap();
    let mut zeta = vec![Rational::zero(); n];
    if r > 1 {
        zeta[idx(one_b, 1)] = int(1);
    }
    generators.push(("zeta".into(), zeta));
    Ok(Arc::new(ChowRing {
        name: format!("P({})", base.name),
        labels,
        codims,
        table,
        integration,
        top: base.top + r - 1,
        generators,
        pullbacks: vec![(Arc::clone(base), map)],
    }))
}

/// Element of a [`ChowRing`] as coordinates over its basis.
#[derive(Debug, Clone)]
pub struct ChowClass {
    ring: Arc<ChowRing>,
    coeffs: Vec<Rational>,
}

impl PartialEq for ChowClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.coeffs == other.coeffs
    }
}

impl ChowClass {
    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<(), ChowError> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(ChowError::RingMismatch(
                self.ring.name.clone(),
                other.ring.name.clone(),
            ))
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ChowError> {
        self.check(other)?;
        Ok(ChowClass {
            ring: Arc::clone(&self.ring),
            coeffs: self.ring.mul_coeffs(&self.coeffs, &other.coeffs),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ChowError> {
        self.check(other)?;
        Ok(ChowClass {
            ring: Arc::clone(&self.ring),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ChowClass {
            ring: Arc::clone(&self.ring),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Degree of the top-codimension part.
    pub fn integrate(&self) -> Rational {
        self.coeffs
            .iter()
            .zip(&self.ring.integration)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Homogeneous part of the given codimension.
    pub fn component(&self, codim: usize) -> Self {
        ChowClass {
            ring: Arc::clone(&self.ring),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if self.ring.codims[i] == codim {
                        c.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        }
    }

    /// `exp(self)` truncated at the ring's top codimension.
    pub fn exp(&self) -> Self {
        let mut acc = self.ring.one();
        let mut term = self.ring.one();
        for k in 1..=self.ring.top {
            term = (&term * self).scale(&int(k as i64).recip());
            acc = &acc + &term;
        }
        acc
    }
}

impl<'a> Add for &'a ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: &'a ChowClass) -> ChowClass {
        self.try_add(rhs).expect("ring mismatch in add")
    }
}

impl<'a> Sub for &'a ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &'a ChowClass) -> ChowClass {
        self.try_add(&-rhs).expect("ring mismatch in sub")
    }
}

impl<'a> Mul for &'a ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: &'a ChowClass) -> ChowClass {
        self.try_mul(rhs).expect("ring mismatch in mul")
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        self.scale(&int(-1))
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if self.ring.codims[i] == 0 {
                    c.to_string()
                } else if c.is_one() {
                    self.ring.labels[i].clone()
                } else {
                    format!("{}*{}", c, self.ring.labels[i])
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_two_planes() {
        let r = product_projective_ring(&[2, 2]).unwrap();
        let h1 = r.generator("h1").unwrap();
        let h2 = r.generator("h2").unwrap();
        assert_eq!((&h1.pow(2) * &h2.pow(2)).integrate(), int(1));
        // C(4,2) = 6
        assert_eq!((&h1 + &h2).pow(4).integrate(), int(6));
        assert!(h1.pow(3).is_zero());
    }

    #[test]
    fn invalid_dimensions_rejected() {
        assert!(product_projective_ring(&[2, 0]).is_err());
        assert!(product_projective_ring(&[]).is_err());
    }

    #[test]
    fn del_pezzo_canonical_square() {
        let s = del_pezzo_ring();
        let k = s.generator("K").unwrap();
        assert_eq!(k.pow(2).integrate(), int(5));
        let anti = -&k;
        assert_eq!((&anti.scale(&int(2)) * &anti).integrate(), int(10));
    }

    #[test]
    fn rings_satisfy_axioms() {
        del_pezzo_ring().check_axioms().unwrap();
        product_projective_ring(&[2, 1]).unwrap().check_axioms().unwrap();
        let s = del_pezzo_ring();
        let p2 = product_projective_ring(&[2]).unwrap();
        ChowRing::tensor(&s, &p2, "S x P2").check_axioms().unwrap();
    }

    #[test]
    fn bundle_fiber_and_segre_numbers() {
        let s = del_pezzo_ring();
        let c1 = -&s.generator("K").unwrap();
        let data = ChernData {
            rank: 3,
            c1: c1.clone(),
            c2: int(3),
        };
        let p = projective_bundle_ring(&s, &data).unwrap();
        p.check_axioms().unwrap();
        let z = p.generator("zeta").unwrap();
        let pt = p.pullback(&s.point()).unwrap();
        assert_eq!((&z.pow(2) * &pt).integrate(), int(1));
        assert_eq!(z.pow(4).integrate(), int(2));
        let ak = p.pullback(&c1).unwrap();
        assert_eq!((&z.pow(3) * &ak).integrate(), int(5));
    }

    #[test]
    fn ring_mismatch_reported() {
        let a = product_projective_ring(&[2]).unwrap();
        let b = product_projective_ring(&[2]).unwrap();
        let ha = a.generator("h1").unwrap();
        let hb = b.generator("h1").unwrap();
        assert!(matches!(ha.try_mul(&hb), Err(ChowError::RingMismatch(..))));
        assert!(a.generator("nope").is_err());
    }
}
