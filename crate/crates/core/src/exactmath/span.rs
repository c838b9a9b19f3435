//! Linear algebra over the constants for families of vector fields.
//!
//! A vector field on a chart is a list of component functions. Families of
//! fields are compared over the *rationals*, not over the function field:
//! all components are put over one common denominator and the resulting
//! polynomial numerators are expanded in the monomial basis, turning each
//! field into a vector of rational coordinates. Rank, span membership, and
//! coordinates are then exact Gaussian elimination over the rationals.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::Error;
use crate::exactmath::gcd::{exact_div, poly_lcm};
use crate::exactmath::poly::{Monomial, Polynomial};
use crate::exactmath::ratfunc::RationalFunction;
use crate::exactmath::Rational;

/// Rank of a list of rational vectors (all of one length).
pub fn rational_rank(vectors: &[Vec<Rational>]) -> usize {
    let mut work: Vec<Vec<Rational>> = vectors.to_vec();
    let mut rank = 0;
    let cols = work.first().map_or(0, |v| v.len());
    for c in 0..cols {
        let Some(p) = (rank..work.len()).find(|&r| !work[r][c].is_zero()) else {
            continue;
        };
        work.swap(rank, p);
        let pivot = work[rank][c].clone();
        for r in 0..work.len() {
            if r == rank || work[r][c].is_zero() {
                continue;
            }
            let factor = &work[r][c] / &pivot;
            for j in c..cols {
                let delta = &factor * &work[rank][j];
                work[r][j] = &work[r][j] - &delta;
            }
        }
        rank += 1;
        if rank == work.len() {
            break;
        }
    }
    rank
}

/// Express `target` as a rational combination of `generators`, if possible.
/// When the generators are dependent, free coefficients are set to zero, so
/// the answer is deterministic; it is unique when they are independent.
pub fn rational_coords(generators: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = target.len();
    debug_assert!(generators.iter().all(|g| g.len() == n));
    let k = generators.len();
    // Augmented system: columns are the generators, last column the target.
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = generators.iter().map(|g| g[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; k];
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for j in c..=k {
            a[r][j] = &a[r][j] / &pivot;
        }
        for i in 0..n {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for j in c..=k {
                let delta = &factor * &a[r][j];
                a[i][j] = &a[i][j] - &delta;
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == n {
            break;
        }
    }
    // Inconsistent iff some zero row has a nonzero right-hand side.
    for row in a.iter().skip(r) {
        if row[..k].iter().all(Zero::is_zero) && !row[k].is_zero() {
            return None;
        }
    }
    Some(
        (0..k)
            .map(|c| match pivot_of_col[c] {
                Some(row) => a[row][k].clone(),
                None => Rational::zero(),
            })
            .collect(),
    )
}

/// Basis of the solution space of the homogeneous system `rows · x = 0`
/// with `cols` unknowns. Gauss–Jordan over the rationals; one basis vector
/// per free column in ascending column order, with the free variable set
/// to one — fully deterministic.
pub fn rational_nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    debug_assert!(rows.iter().all(|r| r.len() == cols));
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for j in c..cols {
            a[r][j] = &a[r][j] / &pivot;
        }
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for j in c..cols {
                let delta = &factor * &a[r][j];
                a[i][j] = &a[i][j] - &delta;
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let pivot_cols: BTreeSet<usize> = pivots.iter().map(|&(_, c)| c).collect();
    (0..cols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = num_traits::One::one();
            for &(pr, pc) in &pivots {
                v[pc] = -a[pr][f].clone();
            }
            v
        })
        .collect()
}

/// Turn fields into rational coordinate vectors in a shared monomial basis.
///
/// All fields must have the same component count and live on one chart.
/// Returns one vector per input field; vectors are empty when every field
/// is zero.
pub fn vectorize_fields(fields: &[Vec<RationalFunction>]) -> Result<Vec<Vec<Rational>>, Error> {
    let Some(first) = fields.first() else {
        return Ok(Vec::new());
    };
    let ncomp = first.len();
    let Some(sample) = first.first() else {
        return Ok(vec![Vec::new(); fields.len()]);
    };
    let vars = sample.vars().clone();
    for f in fields {
        if f.len() != ncomp {
            return Err(Error::DimensionMismatch(
                "fields have different component counts".into(),
            ));
        }
        if f.iter().any(|e| e.vars() != &vars) {
            return Err(Error::MixedCharts);
        }
    }
    // One global common denominator keeps the coordinates comparable.
    let mut lcd = Polynomial::one(&vars);
    for f in fields {
        for e in f {
            lcd = poly_lcm(&lcd, e.den());
        }
    }
    let cleared: Vec<Vec<Polynomial>> = fields
        .iter()
        .map(|f| {
            f.iter()
                .map(|e| e.num().mul(&exact_div(&lcd, e.den()).expect("lcd is a common multiple")))
                .collect()
        })
        .collect();
    let mut coords: BTreeSet<(usize, Monomial)> = BTreeSet::new();
    for f in &cleared {
        for (i, p) in f.iter().enumerate() {
            for (m, _) in p.terms() {
                coords.insert((i, m.clone()));
            }
        }
    }
    let coords: Vec<(usize, Monomial)> = coords.into_iter().collect();
    Ok(cleared
        .iter()
        .map(|f| coords.iter().map(|(i, m)| f[*i].coefficient(m)).collect())
        .collect())
}

/// Dimension of the rational span of the given fields.
pub fn span_dimension(fields: &[Vec<RationalFunction>]) -> Result<usize, Error> {
    Ok(rational_rank(&vectorize_fields(fields)?))
}

/// Whether the fields are linearly independent over the constants.
pub fn independent_over_constants(fields: &[Vec<RationalFunction>]) -> Result<bool, Error> {
    Ok(span_dimension(fields)? == fields.len())
}

/// Coefficients expressing `target` as a constant combination of `fields`,
/// or `None` when it lies outside their span.
pub fn coords_in_span(
    fields: &[Vec<RationalFunction>],
    target: &[RationalFunction],
) -> Result<Option<Vec<Rational>>, Error> {
    let mut all: Vec<Vec<RationalFunction>> = fields.to_vec();
    all.push(target.to_vec());
    let mut vectors = vectorize_fields(&all)?;
    let t = vectors.pop().expect("target vector present");
    Ok(rational_coords(&vectors, &t))
}
