//! Named example structures shared by the test suites and the CLI.
//!
//! Everything here is data: small left-symmetric algebras, the connections
//! they induce on concrete charts, and the field families whose products
//! and envelopes the rest of the crate computes. Each constructor is exact
//! and deterministic.

use num_traits::One;

use crate::connection::{Chart, Connection, VectorField};
use crate::error::Error;
use crate::exactmath::poly::{Monomial, Polynomial, VarSet};
use crate::exactmath::{rat, ratio, Rational, RationalFunction};
use crate::lsa::StructureConstants;

/// Coordinate names for low dimensions: x, y, z, then x1..xn.
pub fn coordinate_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

/// Euclidean chart on n variables, nothing declared nonvanishing.
pub fn euclidean_chart(n: usize) -> Chart {
    let vars = VarSet::new(coordinate_names(n));
    Chart::new(vars, Vec::new()).expect("distinct coordinate names")
}

/// The flat coordinate connection on n variables.
pub fn flat_space(n: usize) -> Connection {
    Connection::flat(euclidean_chart(n))
}

/// Plane chart with x declared nonvanishing (the half-plane component).
pub fn punctured_line_chart() -> Chart {
    Chart::parse(&["x", "y"], &["x"]).expect("valid chart")
}

/// Product of the affine-line group's frame algebra: e₁e₁ = 2e₁,
/// e₁e₂ = e₂, e₂e₁ = 0, e₂e₂ = e₁.
pub fn affine_line_algebra() -> StructureConstants {
    StructureConstants::from_sparse(
        vec!["e1".into(), "e2".into()],
        [(0, 0, 0, rat(2)), (0, 1, 1, rat(1)), (1, 1, 0, rat(1))],
    )
    .expect("well-formed constants")
}

/// One-parameter family on the same group: e₁e₁ = αe₁, e₁e₂ = e₂,
/// e₂e₁ = 0, e₂e₂ = 0.
pub fn affine_line_family(alpha: i64) -> StructureConstants {
    StructureConstants::from_sparse(
        vec!["e1".into(), "e2".into()],
        [(0, 0, 0, rat(alpha)), (0, 1, 1, rat(1))],
    )
    .expect("well-formed constants")
}

/// n×n matrix units under composition: E_ab · E_cd = δ_bc E_ad. Labels
/// E11, E12, … in row-major order.
pub fn composition_algebra(n: usize) -> StructureConstants {
    let idx = |a: usize, b: usize| a * n + b;
    let mut labels = Vec::with_capacity(n * n);
    for a in 1..=n {
        for b in 1..=n {
            labels.push(format!("E{a}{b}"));
        }
    }
    let mut entries = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                entries.push((idx(a, b), idx(b, d), idx(a, d), Rational::one()));
            }
        }
    }
    StructureConstants::from_sparse(labels, entries).expect("well-formed constants")
}

/// Named left-symmetric algebras exercised across the suites.
pub fn left_symmetric_catalogue() -> Vec<(String, StructureConstants)> {
    vec![
        ("affine_line".into(), affine_line_algebra()),
        ("affine_line_family_1".into(), affine_line_family(1)),
        ("affine_line_family_2".into(), affine_line_family(2)),
        ("affine_line_family_3".into(), affine_line_family(3)),
        ("composition_2".into(), composition_algebra(2)),
        ("abelian_3".into(), StructureConstants::zero(3)),
    ]
}

/// Γˣₓₓ = Γˣ_yy = 1/x on the x ≠ 0 chart: the invariant connection the
/// affine-line algebra induces there.
pub fn half_plane_connection() -> Connection {
    Connection::from_sparse(punctured_line_chart(), &[(0, 0, 0, "1/x"), (0, 1, 1, "1/x")])
        .expect("valid connection")
}

/// Γˣₓₓ = (α−1)/x on the x ≠ 0 chart, from the α-family product.
pub fn affine_line_family_connection(alpha: i64) -> Connection {
    let chart = punctured_line_chart();
    let expr = format!("({alpha} - 1)/x");
    Connection::from_sparse(chart, &[(0, 0, 0, &expr)]).expect("valid connection")
}

/// Γˣ_yy = x on the plane: torsion-free but curved (R(∂x,∂y)∂y = ∂x).
pub fn curved_plane_connection() -> Connection {
    Connection::from_sparse(euclidean_chart(2), &[(0, 1, 1, "x")]).expect("valid connection")
}

/// Γˣₓ_y = 1 on the plane: flat curvature but torsionful.
pub fn torsionful_plane_connection() -> Connection {
    Connection::from_sparse(euclidean_chart(2), &[(0, 0, 1, "1")]).expect("valid connection")
}

/// The six fields spanning the infinitesimal affine transformations of the
/// half-plane connection, with their conventional labels.
pub fn half_plane_affine_fields() -> Vec<(String, VectorField)> {
    let chart = punctured_line_chart();
    let f = |exprs: &[&str]| VectorField::parse(&chart, exprs).expect("valid field");
    vec![
        ("e1-".into(), f(&["x", "y"])),
        ("e2-".into(), f(&["0", "1"])),
        ("C3".into(), f(&["1/x", "0"])),
        ("C4".into(), f(&["y/x", "0"])),
        ("C5".into(), f(&["x + y^2/x", "0"])),
        ("C6".into(), f(&["-x*y - y^3/x", "x^2 + y^2"])),
    ]
}

/// The four fields C₁..C₄ attached to the α-family connection:
/// C₁ = x∂x + y∂y, C₂ = ∂y, C₃ = y∂y, C₄ = (1/α)(xᵅ − 1)∂y. Positive
/// integer α keeps all components rational.
pub fn affine_line_family_fields(alpha: i64) -> Result<Vec<(String, VectorField)>, Error> {
    if alpha <= 0 {
        return Err(Error::DimensionMismatch(
            "family parameter must be a positive integer".into(),
        ));
    }
    let chart = punctured_line_chart();
    let vars = chart.vars().clone();
    let f = |exprs: &[&str]| VectorField::parse(&chart, exprs);
    // (1/α)(xᵅ − 1) built directly: exponent α as a monomial power.
    let x_pow = Polynomial::term(
        &vars,
        Monomial::from_exponents(vec![alpha as u32, 0]),
        Rational::one(),
    );
    let c4_y = RationalFunction::from_poly(x_pow.sub(&Polynomial::one(&vars)))
        .scale(&ratio(1, alpha));
    let c4 = VectorField::new(&chart, vec![RationalFunction::zero(&vars), c4_y])?;
    Ok(vec![
        ("C1".into(), f(&["x", "y"])?),
        ("C2".into(), f(&["0", "1"])?),
        ("C3".into(), f(&["0", "y"])?),
        ("C4".into(), c4),
    ])
}

/// The linear fields x∂x, y∂x, x∂y, y∂y on the plane, labeled by the
/// matrix units they correspond to under f_A = (A·(x,y)ᵀ)·∂.
pub fn linear_matrix_fields() -> Vec<(String, VectorField)> {
    let chart = euclidean_chart(2);
    let f = |exprs: &[&str]| VectorField::parse(&chart, exprs).expect("valid field");
    vec![
        ("E11".into(), f(&["x", "0"])),
        ("E12".into(), f(&["y", "0"])),
        ("E21".into(), f(&["0", "x"])),
        ("E22".into(), f(&["0", "y"])),
    ]
}

/// The pair x∂x, x∂y on the plane: independent exactly where x ≠ 0.
pub fn column_scaling_fields() -> Vec<(String, VectorField)> {
    let chart = euclidean_chart(2);
    let f = |exprs: &[&str]| VectorField::parse(&chart, exprs).expect("valid field");
    vec![("X1".into(), f(&["x", "0"])), ("X2".into(), f(&["0", "x"]))]
}
