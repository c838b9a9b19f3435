//! Exact division and multivariate GCD via primitive pseudo-remainder
//! sequences.
//!
//! GCDs are computed recursively: pick the last variable that actually
//! occurs as the main variable, take contents with respect to it (which are
//! GCDs in fewer variables), and run a primitive PRS on the primitive parts.
//! Every returned GCD is in integer-primitive form with positive leading
//! coefficient, which makes it unique.

use crate::exactmath::poly::{Monomial, Polynomial};
use crate::exactmath::Rational;

/// Exact quotient `num / den`, or `None` when `den` does not divide `num`.
///
/// Long division on leading terms: each step cancels the graded-lex leading
/// term of the remainder, which strictly decreases it, so the loop ends.
pub fn exact_div(num: &Polynomial, den: &Polynomial) -> Option<Polynomial> {
    assert!(!den.is_zero(), "division by zero polynomial");
    let vars = num.vars().clone();
    let mut rem = num.clone();
    let mut quot = Polynomial::zero(&vars);
    let (dm, dc) = {
        let (m, c) = den.leading().unwrap();
        (m.clone(), c.clone())
    };
    while let Some((rm, rc)) = rem.leading() {
        let qm = dm.quotient_into(rm)?;
        let qc = rc / &dc;
        let t = Polynomial::term(&vars, qm, qc);
        rem = rem.sub(&t.mul(den));
        quot = quot.add(&t);
    }
    Some(quot)
}

/// Coefficients of `p` viewed as a univariate polynomial in `var`, indexed
/// by the power of `var`; each entry is free of `var`.
fn coefficients_in(p: &Polynomial, var: usize) -> Vec<Polynomial> {
    let vars = p.vars().clone();
    let d = p.degree_in(var) as usize;
    let mut out = vec![Polynomial::zero(&vars); d + 1];
    for (m, c) in p.terms() {
        let e = m.exponent(var) as usize;
        let mut exps = m.exponents().to_vec();
        exps[var] = 0;
        out[e] = out[e].add(&Polynomial::term(&vars, Monomial::from_exponents(exps), c.clone()));
    }
    out
}

/// Pseudo-remainder of `a` by `b` in the main variable `var`:
/// lc(b)^(da-db+1) * a = q*b + r with deg_var(r) < deg_var(b).
fn pseudo_rem(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let vars = a.vars().clone();
    let db = b.degree_in(var);
    let bc = coefficients_in(b, var);
    let lb = bc.last().unwrap().clone();
    let mut r = a.clone();
    let mut da = r.degree_in(var);
    while !r.is_zero() && da >= db {
        let rc = coefficients_in(&r, var);
        let lr = rc.last().unwrap().clone();
        // r <- lb*r - lr * x^(da-db) * b ; kills the degree-da coefficient.
        let shift = Polynomial::var(&vars, var).pow(da - db);
        r = lb.mul(&r).sub(&lr.mul(&shift).mul(b));
        let nd = r.degree_in(var);
        debug_assert!(r.is_zero() || nd < da || !r.depends_on(var) && da == 0);
        if r.is_zero() || nd < db {
            break;
        }
        da = nd;
    }
    r
}

/// Content of `p` with respect to `var`: the GCD of its coefficients as a
/// univariate polynomial in `var`.
fn content_wrt(p: &Polynomial, var: usize) -> Polynomial {
    let coeffs = coefficients_in(p, var);
    let mut acc = Polynomial::zero(p.vars());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = poly_gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// GCD of two polynomials, integer-primitive with positive leading
/// coefficient (so `poly_gcd(p, p) == p.integer_primitive()`).
/// `gcd(0, 0) = 0`, and `gcd(p, 0) = primitive(p)`.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert_eq!(a.vars(), b.vars(), "polynomial variable lists differ");
    if a.is_zero() {
        return b.integer_primitive();
    }
    if b.is_zero() {
        return a.integer_primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.vars());
    }
    // Main variable: the last one either polynomial depends on.
    let var = (0..a.vars().len())
        .rev()
        .find(|&v| a.depends_on(v) || b.depends_on(v))
        .expect("non-constant polynomial depends on some variable");
    if !a.depends_on(var) || !b.depends_on(var) {
        // One side is free of the main variable: gcd divides that side's
        // coefficients and the other side's content.
        let (free, mixed) = if a.depends_on(var) { (b, a) } else { (a, b) };
        return poly_gcd(free, &content_wrt(mixed, var));
    }
    let ca = content_wrt(a, var);
    let cb = content_wrt(b, var);
    let cont = poly_gcd(&ca, &cb);
    let pa = exact_div(a, &ca).expect("content divides");
    let pb = exact_div(b, &cb).expect("content divides");

    // Primitive PRS on the primitive parts.
    let (mut f, mut g) = if pa.degree_in(var) >= pb.degree_in(var) { (pa, pb) } else { (pb, pa) };
    loop {
        let r = pseudo_rem(&f, &g, var);
        if r.is_zero() {
            break;
        }
        if !r.depends_on(var) {
            // Degree in var hit zero: the primitive parts are coprime in var.
            g = Polynomial::one(a.vars());
            break;
        }
        let rc = content_wrt(&r, var);
        f = g;
        g = exact_div(&r, &rc).expect("content divides");
    }
    let gp = exact_div(&g, &content_wrt(&g, var)).expect("content divides");
    cont.mul(&gp).integer_primitive()
}

/// Least common multiple, integer-primitive with positive leading
/// coefficient; zero if either input is zero.
pub fn poly_lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero(a.vars());
    }
    let g = poly_gcd(a, b);
    let q = exact_div(a, &g).expect("gcd divides");
    q.mul(b).integer_primitive()
}

/// Strip from `den` every factor it shares with `allowed`, iterating until
/// coprime; returns the residual factor. Used to decide whether a
/// denominator vanishes only where a declared product of polynomials does.
pub fn strip_factors_of(den: &Polynomial, allowed: &Polynomial) -> Polynomial {
    let mut rem = den.integer_primitive();
    if rem.is_constant() {
        return Polynomial::one(den.vars());
    }
    loop {
        let g = poly_gcd(&rem, allowed);
        if g.is_constant() {
            return rem;
        }
        rem = exact_div(&rem, &g).expect("gcd divides").integer_primitive();
        if rem.is_constant() {
            return Polynomial::one(den.vars());
        }
    }
}

/// A rational multiple of a monomial, or `None`: used when canonicalizing
/// rational functions whose denominator is a pure term.
pub fn as_single_term(p: &Polynomial) -> Option<(Monomial, Rational)> {
    if p.term_count() == 1 {
        let (m, c) = p.terms().next().unwrap();
        Some((m.clone(), c.clone()))
    } else {
        None
    }
}

/// `true` when `den` divides some power of `allowed` (all its irreducible
/// factors are among those of `allowed`).
pub fn divides_power_of(den: &Polynomial, allowed: &Polynomial) -> bool {
    strip_factors_of(den, allowed).is_constant()
}
