//! Finite-dimensional algebras given by structure constants.
//!
//! A bilinear product on a rational vector space is stored as the rank-3
//! array `c[i][j][k]` = coefficient of `e_k` in `e_i · e_j`. On top of that:
//! the left-symmetry and associativity checks, the commutator Lie algebra,
//! the canonical affine matrix representation x ↦ [[L_x, x], [0, 0]], unit
//! adjunction, associative closure of matrix sets, and numeric one-parameter
//! subgroups for orbit sampling.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::exactmath::span::rational_coords;
use crate::exactmath::Rational;
use crate::Verdict;

/// Structure constants of a bilinear product with labeled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    labels: Vec<String>,
    c: Vec<Vec<Vec<Rational>>>,
}

/// Witness of a failed ternary identity: the basis triple and the nonzero
/// difference vector of the two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleWitness {
    pub triple: (usize, usize, usize),
    pub discrepancy: Vec<Rational>,
}

impl StructureConstants {
    pub fn new(labels: Vec<String>, c: Vec<Vec<Vec<Rational>>>) -> Result<Self, Error> {
        let n = labels.len();
        let distinct: std::collections::BTreeSet<_> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::DimensionMismatch("basis labels must be distinct".into()));
        }
        if c.len() != n || c.iter().any(|p| p.len() != n || p.iter().any(|q| q.len() != n)) {
            return Err(Error::DimensionMismatch(format!(
                "structure constants must form an {n}×{n}×{n} array"
            )));
        }
        Ok(StructureConstants { labels, c })
    }

    /// The zero product on `n` generators labeled e1..en.
    pub fn zero(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("e{i}")).collect();
        let c = vec![vec![vec![Rational::zero(); n]; n]; n];
        StructureConstants { labels, c }
    }

    /// Build from a sparse product list: entries (i, j, k, coeff).
    pub fn from_sparse(
        labels: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self, Error> {
        let n = labels.len();
        let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
        for (i, j, k, v) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::DimensionMismatch(format!(
                    "product index ({i},{j},{k}) out of range for dimension {n}"
                )));
            }
            c[i][j][k] = v;
        }
        Self::new(labels, c)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    /// Coordinates of `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Rational> {
        self.c[i][j].clone()
    }

    /// Bilinear extension of the product to coordinate vectors.
    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                for k in 0..n {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &f * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// (xy)z − x(yz).
    pub fn associator(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        let xy_z = self.product(&self.product(x, y), z);
        let x_yz = self.product(x, &self.product(y, z));
        xy_z.iter().zip(&x_yz).map(|(a, b)| a - b).collect()
    }

    /// Matrix of left multiplication by `e_i`: column `j` holds `e_i · e_j`.
    pub fn left_multiplication(&self, i: usize) -> RationalMatrix {
        let n = self.dim();
        let mut m = RationalMatrix::zero(n);
        for j in 0..n {
            for k in 0..n {
                m.set(k, j, self.c[i][j][k].clone());
            }
        }
        m
    }
}

fn basis_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Exhaustive check of associator symmetry in the first two arguments:
/// (xy)z − x(yz) = (yx)z − y(xz) over all basis triples. The witness is the
/// first violating triple in lexicographic order.
pub fn check_left_symmetric(a: &StructureConstants) -> Verdict<TripleWitness> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (basis_vector(n, i), basis_vector(n, j), basis_vector(n, k));
                let lhs = a.associator(&x, &y, &z);
                let rhs = a.associator(&y, &x, &z);
                let d: Vec<Rational> = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();
                if d.iter().any(|v| !v.is_zero()) {
                    return Verdict::Violation(TripleWitness { triple: (i, j, k), discrepancy: d });
                }
            }
        }
    }
    Verdict::Holds
}

/// Exhaustive check of (xy)z = x(yz) over all basis triples; first violating
/// triple in lexicographic order.
pub fn check_associative(a: &StructureConstants) -> Verdict<TripleWitness> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (basis_vector(n, i), basis_vector(n, j), basis_vector(n, k));
                let d = a.associator(&x, &y, &z);
                if d.iter().any(|v| !v.is_zero()) {
                    return Verdict::Violation(TripleWitness { triple: (i, j, k), discrepancy: d });
                }
            }
        }
    }
    Verdict::Holds
}

/// Antisymmetric bracket constants with the Jacobi identity validated at
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieStructure {
    b: Vec<Vec<Vec<Rational>>>,
}

impl LieStructure {
    /// Validate antisymmetry and Jacobi; reports the first bad triple.
    pub fn new(b: Vec<Vec<Vec<Rational>>>) -> Result<Self, Error> {
        let n = b.len();
        if b.iter().any(|p| p.len() != n || p.iter().any(|q| q.len() != n)) {
            return Err(Error::DimensionMismatch("bracket constants must be n×n×n".into()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if b[i][j][k] != -b[j][i][k].clone() {
                        return Err(Error::DimensionMismatch(format!(
                            "bracket not antisymmetric at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        let l = LieStructure { b };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) =
                        (basis_vector(n, i), basis_vector(n, j), basis_vector(n, k));
                    let mut acc = l.bracket(&l.bracket(&x, &y), &z);
                    for (t, v) in l.bracket(&l.bracket(&y, &z), &x).iter().enumerate() {
                        acc[t] += v;
                    }
                    for (t, v) in l.bracket(&l.bracket(&z, &x), &y).iter().enumerate() {
                        acc[t] += v;
                    }
                    if acc.iter().any(|v| !v.is_zero()) {
                        return Err(Error::JacobiFailure(i, j, k));
                    }
                }
            }
        }
        Ok(l)
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn bracket_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.b[i][j][k]
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        self.b[i][j].clone()
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let f = &x[i] * &y[j];
                for k in 0..n {
                    if !self.b[i][j][k].is_zero() {
                        out[k] += &f * &self.b[i][j][k];
                    }
                }
            }
        }
        out
    }
}

/// Lie algebra of commutators [x,y] = xy − yx. Jacobi is validated because
/// it can genuinely fail when the product is not left-symmetric.
pub fn commutator_algebra(a: &StructureConstants) -> Result<LieStructure, Error> {
    let n = a.dim();
    let mut b = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                b[i][j][k] = &a.c[i][j][k] - &a.c[j][i][k];
            }
        }
    }
    LieStructure::new(b)
}

/// Dense square matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    a: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zero(n: usize) -> Self {
        RationalMatrix { n, a: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix must be square".into()));
        }
        Ok(RationalMatrix { n, a: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.a[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        RationalMatrix {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        RationalMatrix {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalMatrix { n: self.n, a: self.a.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = other.get(k, j);
                    if !y.is_zero() {
                        let v = out.get(i, j) + &(x * y);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.n {
                    acc += self.get(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }
}

/// Element of the affine algebra in homogeneous block form
/// [[linear, translation], [0, 0]], an (n+1)×(n+1) rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineRepElement {
    m: RationalMatrix,
}

impl AffineRepElement {
    pub fn from_linear_translation(linear: &RationalMatrix, translation: &[Rational]) -> Self {
        let n = linear.size();
        assert_eq!(translation.len(), n);
        let mut m = RationalMatrix::zero(n + 1);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, linear.get(i, j).clone());
            }
            m.set(i, n, translation[i].clone());
        }
        AffineRepElement { m }
    }

    /// Base dimension n (the matrix is (n+1)×(n+1)).
    pub fn dim(&self) -> usize {
        self.m.size() - 1
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.m
    }

    pub fn linear_part(&self) -> RationalMatrix {
        let n = self.dim();
        let mut l = RationalMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                l.set(i, j, self.m.get(i, j).clone());
            }
        }
        l
    }

    pub fn translation(&self) -> Vec<Rational> {
        let n = self.dim();
        (0..n).map(|i| self.m.get(i, n).clone()).collect()
    }

    /// Matrix commutator; stays in block form because last rows are zero.
    pub fn commutator(&self, other: &Self) -> Self {
        AffineRepElement { m: self.m.commutator(&other.m) }
    }
}

/// Canonical affine representation of a left-symmetric algebra:
/// η(e_i) = [[L_{e_i}, e_i], [0, 0]].
pub fn affine_rep(a: &StructureConstants) -> Result<Vec<AffineRepElement>, Error> {
    if !check_left_symmetric(a).holds() {
        return Err(Error::NotLeftSymmetric);
    }
    let n = a.dim();
    Ok((0..n)
        .map(|i| {
            AffineRepElement::from_linear_translation(&a.left_multiplication(i), &basis_vector(n, i))
        })
        .collect())
}

/// Check [η(e_i), η(e_j)] = η([e_i, e_j]) for all pairs; witness is the
/// first failing pair.
pub fn check_lie_homomorphism(
    reps: &[AffineRepElement],
    l: &LieStructure,
) -> Verdict<(usize, usize)> {
    let n = l.dim();
    assert_eq!(reps.len(), n, "one representative per basis vector");
    for i in 0..n {
        for j in 0..n {
            let lhs = reps[i].commutator(&reps[j]);
            // η of the bracket, by linearity of η.
            let coords = l.basis_bracket(i, j);
            let mut rhs = RationalMatrix::zero(reps[i].m.size());
            for (k, ck) in coords.iter().enumerate() {
                if !ck.is_zero() {
                    rhs = rhs.add(&reps[k].m.scale(ck));
                }
            }
            if lhs.m != rhs {
                return Verdict::Violation((i, j));
            }
        }
    }
    Verdict::Holds
}

/// How a closure basis element came to be: carried over from the input
/// generators, or introduced as the product of two earlier basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisOrigin {
    Generator(usize),
    Product(usize, usize),
}

/// Result of closing a generating set under a bilinear product: independent
/// basis, multiplication table in that basis, and the generation trace.
#[derive(Clone, Debug)]
pub struct ClosureResult<T> {
    pub basis: Vec<T>,
    pub table: Vec<Vec<Vec<Rational>>>,
    pub trace: Vec<BasisOrigin>,
}

impl<T> ClosureResult<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of basis[i] · basis[j] in the basis.
    pub fn product_coords(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i][j]
    }
}

/// Close a generating set under a product: repeatedly sweep all pairwise
/// products in row-major order and admit anything outside the current
/// rational span, until a sweep admits nothing. Deterministic basis order.
///
/// `vectorize` must map a slice of elements to comparable rational
/// coordinate vectors (jointly, so scalings stay consistent).
pub(crate) fn close_under_product<T: Clone>(
    generators: &[T],
    cap: usize,
    product: &dyn Fn(&T, &T) -> Result<T, Error>,
    vectorize: &dyn Fn(&[T]) -> Result<Vec<Vec<Rational>>, Error>,
) -> Result<ClosureResult<T>, Error> {
    let mut basis: Vec<T> = Vec::new();
    let mut trace: Vec<BasisOrigin> = Vec::new();

    let in_span = |basis: &[T], cand: &T| -> Result<bool, Error> {
        let mut all: Vec<T> = basis.to_vec();
        all.push(cand.clone());
        let mut vs = vectorize(&all)?;
        let t = vs.pop().expect("candidate vector present");
        Ok(rational_coords(&vs, &t).is_some())
    };

    for (g, gen) in generators.iter().enumerate() {
        if !in_span(&basis, gen)? {
            if basis.len() == cap {
                return Err(Error::CapExceeded(cap));
            }
            basis.push(gen.clone());
            trace.push(BasisOrigin::Generator(g));
        }
    }

    loop {
        let mut grew = false;
        let mut i = 0;
        while i < basis.len() {
            let mut j = 0;
            while j < basis.len() {
                let p = product(&basis[i], &basis[j])?;
                if !in_span(&basis, &p)? {
                    if basis.len() == cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    basis.push(p);
                    trace.push(BasisOrigin::Product(i, j));
                    grew = true;
                }
                j += 1;
            }
            i += 1;
        }
        if !grew {
            break;
        }
    }

    // Multiplication table in the final basis; closure guarantees success.
    // Scalings are only consistent within a single vectorize call, so each
    // product is vectorized jointly with the basis.
    let mut table = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let mut row = Vec::with_capacity(basis.len());
        for j in 0..basis.len() {
            let p = product(&basis[i], &basis[j])?;
            let mut all = basis.clone();
            all.push(p);
            let mut pv = vectorize(&all)?;
            let t = pv.pop().expect("product vector present");
            let coords = rational_coords(&pv, &t).expect("closure is product-closed");
            row.push(coords);
        }
        table.push(row);
    }
    Ok(ClosureResult { basis, table, trace })
}

/// Flatten square matrices to coordinate vectors for span arithmetic.
fn vectorize_matrices(ms: &[RationalMatrix]) -> Result<Vec<Vec<Rational>>, Error> {
    if let Some(first) = ms.first() {
        if ms.iter().any(|m| m.size() != first.size()) {
            return Err(Error::DimensionMismatch("matrices differ in size".into()));
        }
    }
    Ok(ms.iter().map(|m| m.entries().to_vec()).collect())
}

/// Smallest associative subalgebra of the full matrix algebra containing
/// the generators, by iterated span-and-multiply closure.
pub fn matrix_envelope(
    generators: &[RationalMatrix],
    cap: usize,
) -> Result<ClosureResult<RationalMatrix>, Error> {
    close_under_product(
        generators,
        cap,
        &|x: &RationalMatrix, y: &RationalMatrix| Ok(x.mul(y)),
        &vectorize_matrices,
    )
}

/// Formally adjoin a unit: dimension grows by one, the new element acts as
/// a two-sided identity, and the original constants embed unchanged.
pub fn adjoin_unit(
    a: &StructureConstants,
    require_associative: bool,
) -> Result<StructureConstants, Error> {
    if require_associative && !check_associative(a).holds() {
        return Err(Error::NotAssociative);
    }
    let n = a.dim();
    let mut unit_label = "1".to_string();
    while a.labels.iter().any(|l| l == &unit_label) {
        unit_label.push('\'');
    }
    let mut labels = vec![unit_label];
    labels.extend(a.labels.iter().cloned());
    let m = n + 1;
    let mut c = vec![vec![vec![Rational::zero(); m]; m]; m];
    c[0][0][0] = Rational::one();
    for i in 0..n {
        c[0][i + 1][i + 1] = Rational::one();
        c[i + 1][0][i + 1] = Rational::one();
        for j in 0..n {
            for k in 0..n {
                c[i + 1][j + 1][k + 1] = a.c[i][j][k].clone();
            }
        }
    }
    StructureConstants::new(labels, c)
}

fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().expect("rational fits in f64 for numeric work")
}

fn mat_mul_f64(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i][k];
            if x == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += x * b[k][j];
            }
        }
    }
    out
}

/// Truncated exponential series with `terms` terms (k = 0..terms-1).
pub fn matrix_exponential_taylor(m: &AffineRepElement, t: f64, terms: usize) -> Vec<Vec<f64>> {
    let n = m.matrix().size();
    let a: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| to_f64(m.matrix().get(i, j)) * t).collect()).collect();
    let mut sum = vec![vec![0.0; n]; n];
    let mut term: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for k in 0..terms {
        for i in 0..n {
            for j in 0..n {
                sum[i][j] += term[i][j];
            }
        }
        if k + 1 < terms {
            term = mat_mul_f64(&term, &a);
            let inv = 1.0 / (k as f64 + 1.0);
            for row in term.iter_mut() {
                for v in row.iter_mut() {
                    *v *= inv;
                }
            }
        }
    }
    sum
}

/// exp(t·m) in double precision by scaling and squaring around a truncated
/// series core. The last row is pinned to (0,…,0,1): exact for the affine
/// block form, where exp acts as [[e^L, ·],[0, 1]].
pub fn matrix_exponential_numeric(m: &AffineRepElement, t: f64) -> Vec<Vec<f64>> {
    let n = m.matrix().size();
    let norm: f64 = (0..n)
        .map(|i| (0..n).map(|j| (to_f64(m.matrix().get(i, j)) * t).abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        squarings += 1;
        scale *= 0.5;
    }
    let mut e = matrix_exponential_taylor(m, t * scale, 20);
    for _ in 0..squarings {
        e = mat_mul_f64(&e, &e);
    }
    for j in 0..n {
        e[n - 1][j] = if j == n - 1 { 1.0 } else { 0.0 };
    }
    e
}

/// Track the affine action through a parameter grid: each tuple
/// (t₁,…,t_n) maps to exp(t₁η(e₁))···exp(t_nη(e_n)) applied to the origin.
pub fn orbit_sample(reps: &[AffineRepElement], grid: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = reps.len();
    let size = n + 1;
    grid.iter()
        .map(|tuple| {
            assert_eq!(tuple.len(), n, "one parameter per representative");
            let mut acc: Vec<Vec<f64>> = (0..size)
                .map(|i| (0..size).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
                .collect();
            for (rep, &t) in reps.iter().zip(tuple) {
                acc = mat_mul_f64(&acc, &matrix_exponential_numeric(rep, t));
            }
            // Affine action on the origin: top n entries of the last column.
            (0..n).map(|i| acc[i][size - 1]).collect()
        })
        .collect()
}

/// Exact differential of the orbit map at the zero parameter tuple: column
/// i is the translation part of η(e_i). For the canonical representation
/// this is the identity matrix.
pub fn orbit_jacobian_at_zero(reps: &[AffineRepElement]) -> RationalMatrix {
    let n = reps.len();
    let mut j = RationalMatrix::zero(n);
    for (col, rep) in reps.iter().enumerate() {
        for (row, v) in rep.translation().iter().enumerate() {
            j.set(row, col, v.clone());
        }
    }
    j
}

/// Independence rank of the orbit differential, for the étale check.
pub fn orbit_jacobian_rank(reps: &[AffineRepElement]) -> usize {
    let j = orbit_jacobian_at_zero(reps);
    let n = j.size();
    let rows: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|k| j.get(i, k).clone()).collect()).collect();
    crate::exactmath::span::rational_rank(&rows)
}
