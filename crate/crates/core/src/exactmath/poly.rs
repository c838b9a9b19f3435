//! Multivariate polynomials over exact rationals.
//!
//! A polynomial carries its ordered variable list and a term map keyed by
//! exponent vectors in graded-lexicographic order. Zero coefficients are
//! never stored, so representation equality is functional equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exactmath::ratfunc::RationalFunction;
use crate::exactmath::Rational;

/// Ordered list of variable names shared by a family of polynomials.
///
/// Cheap to clone; equality is content equality with a pointer fast path.
#[derive(Clone, Debug)]
pub struct VarSet {
    names: Arc<Vec<String>>,
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        debug_assert!(
            names.iter().collect::<std::collections::BTreeSet<_>>().len() == names.len(),
            "variable names must be pairwise distinct"
        );
        VarSet { names: Arc::new(names) }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn index_or_err(&self, name: &str) -> Result<usize, Error> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VarSet {}

/// Exponent vector; the length always equals the ambient variable count.
///
/// Ordered graded-lexicographically: first by total degree, then
/// lexicographically with earlier variables weighing more.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
        } else {
            None
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with rational coefficients in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(vars: &VarSet) -> Self {
        Polynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &VarSet, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(vars.len(), i), Rational::one());
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn term(vars: &VarSet, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.exponents().len(), vars.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn from_terms<I>(vars: &VarSet, it: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(vars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map_or(false, |c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// The constant value, when the polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    /// Leading term in graded-lex order; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// Whether the variable occurs with positive exponent anywhere.
    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, other.vars, "polynomial variable lists differ");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, other.vars, "polynomial variable lists differ");
        let mut out = Polynomial::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Exact partial derivative with respect to the given variable index.
    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.vars.len(), "variable index out of range");
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                let mut exps = m.exponents().to_vec();
                exps[var] = e - 1;
                out.add_term(Monomial::from_exponents(exps), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Evaluate at a rational point (one value per variable).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute a rational function for every variable. All images must
    /// share one variable list; the result lives there.
    pub fn substitute(&self, images: &[RationalFunction]) -> Result<RationalFunction, Error> {
        assert_eq!(images.len(), self.vars.len());
        let target = match images.first() {
            Some(f) => f.vars().clone(),
            None => self.vars.clone(),
        };
        if images.iter().any(|f| f.vars() != &target) {
            return Err(Error::MixedCharts);
        }
        // Power tables keep repeated exponents cheap.
        let mut powers: Vec<Vec<RationalFunction>> = images
            .iter()
            .map(|f| vec![RationalFunction::one(&target), f.clone()])
            .collect();
        for (i, f) in images.iter().enumerate() {
            let need = self.degree_in(i) as usize;
            while powers[i].len() <= need {
                let last = powers[i].last().unwrap().clone();
                powers[i].push(last.mul(f));
            }
        }
        let mut acc = RationalFunction::zero(&target);
        for (m, c) in &self.terms {
            let mut t = RationalFunction::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Re-express over a larger variable list, matching variables by name.
    pub fn embed(&self, target: &VarSet) -> Result<Polynomial, Error> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_or_err(n))
            .collect::<Result<_, _>>()?;
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[map[i]] = e;
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        Ok(out)
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero for the zero polynomial.
    pub fn rational_content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rational::new(num_gcd, den_lcm)
    }

    /// Sign of the leading coefficient: -1, 0, or 1.
    pub fn leading_sign(&self) -> i32 {
        match self.leading() {
            None => 0,
            Some((_, c)) => {
                if c.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    /// Divide out the rational content and make the leading coefficient
    /// positive. The zero polynomial stays zero.
    pub fn integer_primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.rational_content();
        if self.leading_sign() < 0 {
            c = -c;
        }
        self.scale(&c.recip())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Leading term first: iterate in descending graded-lex order.
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut printed_coeff = false;
            if m.is_one() || !mag.is_one() {
                write!(f, "{}", mag)?;
                printed_coeff = !m.is_one();
            }
            let mut printed_var = false;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if printed_coeff || printed_var {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars.name(i))?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                printed_var = true;
            }
            let _ = printed_coeff;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};

    fn xy() -> VarSet {
        VarSet::new(["x", "y"])
    }

    fn x(vs: &VarSet) -> Polynomial {
        Polynomial::var(vs, 0)
    }

    fn y(vs: &VarSet) -> Polynomial {
        Polynomial::var(vs, 1)
    }

    #[test]
    fn grlex_order() {
        // x^2 > x*y > y^2 > x > y > 1
        let m = |a, b| Monomial::from_exponents(vec![a, b]);
        assert!(m(2, 0) > m(1, 1));
        assert!(m(1, 1) > m(0, 2));
        assert!(m(0, 2) > m(1, 0));
        assert!(m(1, 0) > m(0, 1));
        assert!(m(0, 1) > m(0, 0));
    }

    #[test]
    fn arithmetic_and_canonical_form() {
        let vs = xy();
        let p = x(&vs).add(&y(&vs));
        let q = x(&vs).sub(&y(&vs));
        let prod = p.mul(&q);
        let expect = x(&vs).mul(&x(&vs)).sub(&y(&vs).mul(&y(&vs)));
        assert_eq!(prod, expect);
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn derivative_of_x2y() {
        let vs = xy();
        let p = x(&vs).pow(2).mul(&y(&vs));
        let d = p.partial_derivative(0);
        let expect = x(&vs).mul(&y(&vs)).scale(&rat(2));
        assert_eq!(d, expect);
    }

    #[test]
    fn content_and_primitive() {
        let vs = xy();
        // -4/3 x + 2/3 y has content 2/3; primitive with positive lead: 2x - y
        let p = x(&vs).scale(&ratio(-4, 3)).add(&y(&vs).scale(&ratio(2, 3)));
        assert_eq!(p.rational_content(), ratio(2, 3));
        let prim = p.integer_primitive();
        let expect = x(&vs).scale(&rat(2)).sub(&y(&vs));
        assert_eq!(prim, expect);
    }

    #[test]
    fn display_canonical() {
        let vs = xy();
        let p = x(&vs)
            .pow(2)
            .scale(&rat(3))
            .sub(&x(&vs).scale(&ratio(1, 2)))
            .add(&Polynomial::one(&vs));
        assert_eq!(p.to_string(), "3*x^2 - 1/2*x + 1");
        let q = x(&vs).mul(&y(&vs)).neg();
        assert_eq!(q.to_string(), "-x*y");
    }

    #[test]
    fn embed_into_larger_varset() {
        let vs = xy();
        let big = VarSet::new(["a", "x", "y"]);
        let p = x(&vs).mul(&y(&vs));
        let e = p.embed(&big).unwrap();
        assert_eq!(e.to_string(), "x*y");
        assert!(p.embed(&VarSet::new(["x"])).is_err());
    }
}
