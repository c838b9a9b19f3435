//! Rational functions as reduced fractions of polynomials.
//!
//! Every value is kept in a canonical form: numerator and denominator are
//! coprime, and the denominator has coprime integer coefficients with a
//! positive leading coefficient. Under rescaling by a nonzero rational the
//! canonical denominator is unique, so structural equality is equality of
//! functions and a zero numerator is the only representation of zero.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::exactmath::gcd::{exact_div, poly_gcd};
use crate::exactmath::poly::{Polynomial, VarSet};
use crate::exactmath::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Build `num/den` in canonical form. Fails only when `den` is zero.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert_eq!(num.vars(), den.vars(), "numerator and denominator charts differ");
        if num.is_zero() {
            return Ok(RationalFunction { den: Polynomial::one(num.vars()), num });
        }
        let g = poly_gcd(&num, &den);
        let mut num = exact_div(&num, &g).expect("gcd divides");
        let mut den = exact_div(&den, &g).expect("gcd divides");
        // Unique scaling: denominator becomes integer-primitive with
        // positive leading coefficient.
        let mut scale = den.rational_content();
        if den.leading_sign() < 0 {
            scale = -scale;
        }
        let inv = scale.recip();
        den = den.scale(&inv);
        num = num.scale(&inv);
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.vars());
        RationalFunction { num: p, den }
    }

    pub fn zero(vars: &VarSet) -> Self {
        Self::from_poly(Polynomial::zero(vars))
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::from_poly(Polynomial::one(vars))
    }

    pub fn constant(vars: &VarSet, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(vars, c))
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        Self::from_poly(Polynomial::var(vars, i))
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The underlying polynomial when the denominator is trivial.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::new(num, den).expect("denominator product is nonzero")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("denominator product is nonzero")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: if c.is_zero() { Polynomial::one(self.vars()) } else { self.den.clone() },
        }
    }

    pub fn recip(&self) -> Result<Self, Error> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, Error> {
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Quotient-rule partial derivative with respect to a variable index.
    pub fn partial_derivative(&self, var: usize) -> Self {
        let dn = self.num.partial_derivative(var);
        let dd = self.den.partial_derivative(var);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let den = self.den.mul(&self.den);
        Self::new(num, den).expect("denominator square is nonzero")
    }

    /// Evaluate at a rational point; fails where the denominator vanishes.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, Error> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Compose: substitute one rational function per variable.
    pub fn substitute(&self, images: &[RationalFunction]) -> Result<Self, Error> {
        let n = self.num.substitute(images)?;
        let d = self.den.substitute(images)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        n.div(&d)
    }

    /// Re-express over a larger variable list, matching variables by name.
    pub fn embed(&self, target: &VarSet) -> Result<Self, Error> {
        Ok(RationalFunction { num: self.num.embed(target)?, den: self.den.embed(target)? })
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        // Numerator needs parentheses only when it is a sum.
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/")?;
        // Denominator can go bare only when it is a single power of a single
        // variable with unit coefficient (canonical form rules out bare
        // constants here).
        let atomic = match self.den.terms().next() {
            Some((m, c)) if self.den.term_count() == 1 => {
                c.is_one() && m.exponents().iter().filter(|&&e| e > 0).count() == 1
            }
            _ => false,
        };
        if atomic {
            write!(f, "{}", self.den)
        } else {
            write!(f, "({})", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
