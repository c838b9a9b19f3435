//! Exact matrices over the rational-function field.
//!
//! Rank and nullspace run fraction-free: rows are cleared to polynomials
//! and eliminated Bareiss-style, dividing each step by the previous pivot
//! (the division is exact because every intermediate entry is a minor of
//! the cleared matrix). Field division only appears in the final
//! back-substitution, in `inverse`, and in `determinant`.

use crate::error::Error;
use crate::exactmath::gcd::{exact_div, poly_gcd, poly_lcm};
use crate::exactmath::poly::{Polynomial, VarSet};
use crate::exactmath::ratfunc::RationalFunction;
use crate::exactmath::Rational;

/// Dense matrix of rational functions on a shared chart, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    vars: VarSet,
    rows: usize,
    cols: usize,
    data: Vec<RationalFunction>,
}

impl ExactMatrix {
    pub fn zero(vars: &VarSet, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            vars: vars.clone(),
            rows,
            cols,
            data: vec![RationalFunction::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &VarSet, n: usize) -> Self {
        let mut m = Self::zero(vars, n, n);
        for i in 0..n {
            m.set(i, i, RationalFunction::one(vars));
        }
        m
    }

    pub fn from_rows(vars: &VarSet, rows: Vec<Vec<RationalFunction>>) -> Result<Self, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch("ragged matrix rows".into()));
            }
            for entry in row {
                if entry.vars() != vars {
                    return Err(Error::MixedCharts);
                }
                data.push(entry);
            }
        }
        Ok(ExactMatrix { vars: vars.clone(), rows: nrows, cols: ncols, data })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RationalFunction] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(&self.vars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        ExactMatrix { vars: self.vars.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        ExactMatrix { vars: self.vars.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| a.neg()).collect();
        ExactMatrix { vars: self.vars.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, f: &RationalFunction) -> Self {
        let data = self.data.iter().map(|a| a.mul(f)).collect();
        ExactMatrix { vars: self.vars.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zero(&self.vars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = RationalFunction::zero(&self.vars);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Apply the matrix to a column vector.
    pub fn apply(&self, v: &[RationalFunction]) -> Vec<RationalFunction> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = RationalFunction::zero(&self.vars);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    /// Determinant by elimination over the function field.
    pub fn determinant(&self) -> RationalFunction {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = RationalFunction::one(&self.vars);
        for c in 0..n {
            let pivot = match (c..n).find(|&r| !m.get(r, c).is_zero()) {
                Some(p) => p,
                None => return RationalFunction::zero(&self.vars),
            };
            if pivot != c {
                for j in 0..n {
                    let a = m.get(c, j).clone();
                    let b = m.get(pivot, j).clone();
                    m.set(c, j, b);
                    m.set(pivot, j, a);
                }
                det = det.neg();
            }
            let p = m.get(c, c).clone();
            det = det.mul(&p);
            for r in c + 1..n {
                let factor = m.get(r, c).div(&p).expect("pivot is nonzero");
                for j in c..n {
                    let v = m.get(r, j).sub(&factor.mul(m.get(c, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Inverse over the function field; fails when the determinant is the
    /// zero function.
    pub fn inverse(&self) -> Result<Self, Error> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Self::identity(&self.vars, n);
        for c in 0..n {
            let pivot = (c..n)
                .find(|&r| !m.get(r, c).is_zero())
                .ok_or(Error::SingularFrame)?;
            if pivot != c {
                for j in 0..n {
                    let (a, b) = (m.get(c, j).clone(), m.get(pivot, j).clone());
                    m.set(c, j, b);
                    m.set(pivot, j, a);
                    let (a, b) = (inv.get(c, j).clone(), inv.get(pivot, j).clone());
                    inv.set(c, j, b);
                    inv.set(pivot, j, a);
                }
            }
            let p = m.get(c, c).clone();
            for j in 0..n {
                m.set(c, j, m.get(c, j).div(&p).expect("pivot is nonzero"));
                inv.set(c, j, inv.get(c, j).div(&p).expect("pivot is nonzero"));
            }
            for r in 0..n {
                if r == c || m.get(r, c).is_zero() {
                    continue;
                }
                let factor = m.get(r, c).clone();
                for j in 0..n {
                    let v = m.get(r, j).sub(&factor.mul(m.get(c, j)));
                    m.set(r, j, v);
                    let v = inv.get(r, j).sub(&factor.mul(inv.get(c, j)));
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Rank over the function field.
    pub fn rank(&self) -> usize {
        rank_and_nullspace(self).0
    }
}

/// Clear each row to a polynomial row (multiply by the least common
/// denominator of its entries, a nonzero function, which preserves rank
/// and nullspace).
fn cleared_rows(m: &ExactMatrix) -> Vec<Vec<Polynomial>> {
    (0..m.rows())
        .map(|i| {
            let mut lcd = Polynomial::one(m.vars());
            for j in 0..m.cols() {
                lcd = poly_lcm(&lcd, m.get(i, j).den());
            }
            (0..m.cols())
                .map(|j| {
                    let e = m.get(i, j);
                    let extra = exact_div(&lcd, e.den()).expect("lcd is a common multiple");
                    e.num().mul(&extra)
                })
                .collect()
        })
        .collect()
}

/// Rank and a nullspace basis over the function field.
///
/// Forward elimination is fraction-free (Bareiss); the returned nullspace
/// vectors are scaled to coprime polynomial entries, first nonzero entry
/// with positive leading coefficient, one vector per free column.
pub fn rank_and_nullspace(m: &ExactMatrix) -> (usize, Vec<Vec<RationalFunction>>) {
    let vars = m.vars().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = cleared_rows(m);
    let mut prev = Polynomial::one(&vars);
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot = match (r..rows).find(|&i| !a[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        a.swap(r, pivot);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = a[r][c].mul(&a[i][j]).sub(&a[i][c].mul(&a[r][j]));
                a[i][j] = exact_div(&t, &prev).expect("Bareiss step divides exactly");
            }
            a[i][c] = Polynomial::zero(&vars);
        }
        prev = a[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    let rank = pivot_cols.len();

    // Back-substitute over the field, one basis vector per free column.
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivot_cols.contains(&f) {
            continue;
        }
        let mut v = vec![RationalFunction::zero(&vars); cols];
        v[f] = RationalFunction::one(&vars);
        for (k, &pc) in pivot_cols.iter().enumerate().rev() {
            let mut acc = RationalFunction::zero(&vars);
            for j in pc + 1..cols {
                if v[j].is_zero() {
                    continue;
                }
                acc = acc.add(&RationalFunction::from_poly(a[k][j].clone()).mul(&v[j]));
            }
            let piv = RationalFunction::from_poly(a[k][pc].clone());
            v[pc] = acc.neg().div(&piv).expect("pivot is nonzero");
        }
        basis.push(primitive_vector(&vars, v));
    }
    (rank, basis)
}

/// Scale a function vector to coprime polynomial entries whose first
/// nonzero entry has positive leading coefficient.
fn primitive_vector(vars: &VarSet, v: Vec<RationalFunction>) -> Vec<RationalFunction> {
    let mut lcd = Polynomial::one(vars);
    for e in &v {
        lcd = poly_lcm(&lcd, e.den());
    }
    let mut polys: Vec<Polynomial> = v
        .iter()
        .map(|e| e.num().mul(&exact_div(&lcd, e.den()).expect("lcd is a common multiple")))
        .collect();
    let mut g = Polynomial::zero(vars);
    for p in polys.iter().filter(|p| !p.is_zero()) {
        g = poly_gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for p in polys.iter_mut() {
            *p = exact_div(p, &g).expect("gcd divides");
        }
    }
    // One scalar for the whole vector: gcd of the entry contents, with the
    // sign chosen so the first nonzero entry leads positively.
    let mut s = num_traits::Zero::zero();
    for p in polys.iter().filter(|p| !p.is_zero()) {
        s = rational_gcd(&s, &p.rational_content());
    }
    if let Some(first) = polys.iter().find(|p| !p.is_zero()) {
        if first.leading_sign() < 0 {
            s = -s;
        }
        let inv: Rational = s.recip();
        for p in polys.iter_mut() {
            *p = p.scale(&inv);
        }
    }
    polys.into_iter().map(RationalFunction::from_poly).collect()
}

/// Nonnegative gcd on rationals: `gcd(a/b, c/d) = gcd(a, c) / lcm(b, d)`,
/// the largest rational dividing both into integers; `gcd(0, q) = |q|`.
fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    use num_integer::Integer;
    Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

/// Indices of a maximal subset of the given rows that is linearly
/// independent over the function field, chosen greedily in input order.
pub fn independent_subset(rows: &[Vec<RationalFunction>]) -> Vec<usize> {
    // Echelon reducers: (leading column, row with that entry normalized
    // to 1). A reducer is zero before its lead, so applying reducers in
    // increasing lead order never reintroduces a cleared column.
    let mut reducers: Vec<(usize, Vec<RationalFunction>)> = Vec::new();
    let mut kept = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut work = row.clone();
        for (lead, red) in &reducers {
            if !work[*lead].is_zero() {
                let factor = work[*lead].clone();
                for (w, r) in work.iter_mut().zip(red) {
                    *w = w.sub(&factor.mul(r));
                }
            }
        }
        if let Some(lead) = work.iter().position(|e| !e.is_zero()) {
            let inv = work[lead].recip().expect("entry is nonzero");
            for w in work.iter_mut() {
                *w = w.mul(&inv);
            }
            reducers.push((lead, work));
            reducers.sort_by_key(|(l, _)| *l);
            kept.push(idx);
        }
    }
    kept
}
