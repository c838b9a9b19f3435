//! Linear connections on coordinate charts.
//!
//! A chart is an ordered list of variables together with polynomials
//! declared nonvanishing on the domain; a connection is a Christoffel array
//! Γᵏᵢⱼ of rational functions valid on that chart. On top of the covariant
//! derivative sit the torsion/curvature/flatness tests, the infinitesimal
//! affine criterion, multiplication tables of fields, the associative
//! envelope of affine fields, and a polynomial affine-field solver.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::exactmath::gcd::divides_power_of;
use crate::exactmath::parse::parse_expression;
use crate::exactmath::poly::{Monomial, Polynomial, VarSet};
use crate::exactmath::span::{
    coords_in_span, independent_over_constants, rational_nullspace, vectorize_fields,
};
use crate::exactmath::{Rational, RationalFunction};
use crate::lsa::{close_under_product, ClosureResult};
use crate::Verdict;

/// A coordinate domain: ordered variables plus polynomials that are nonzero
/// everywhere on it (so their reciprocals are admissible coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    vars: VarSet,
    nonvanishing: Vec<Polynomial>,
}

impl Chart {
    pub fn new(vars: VarSet, nonvanishing: Vec<Polynomial>) -> Result<Self, Error> {
        let distinct: std::collections::BTreeSet<_> = vars.names().iter().collect();
        if distinct.len() != vars.len() {
            return Err(Error::DimensionMismatch("chart variables must be distinct".into()));
        }
        for p in &nonvanishing {
            if p.vars() != &vars {
                return Err(Error::MixedCharts);
            }
            if p.is_zero() {
                return Err(Error::InvalidOnChart { expr: "0".into() });
            }
        }
        Ok(Chart { vars, nonvanishing })
    }

    /// Build a chart from variable names and nonvanishing expressions.
    pub fn parse(variables: &[&str], nonvanishing: &[&str]) -> Result<Self, Error> {
        let vars = VarSet::new(variables.iter().copied());
        let polys = nonvanishing
            .iter()
            .map(|s| {
                let f = parse_expression(s, &vars)?;
                f.as_polynomial().cloned().ok_or_else(|| Error::InvalidOnChart {
                    expr: s.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Chart::new(vars, polys)
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn nonvanishing(&self) -> &[Polynomial] {
        &self.nonvanishing
    }

    /// Product of the declared nonvanishing polynomials (1 when none).
    fn allowed_denominator(&self) -> Polynomial {
        self.nonvanishing
            .iter()
            .fold(Polynomial::one(&self.vars), |acc, p| acc.mul(p))
    }

    /// A function is valid on the chart when its denominator vanishes only
    /// where a declared nonvanishing polynomial does.
    pub fn validate(&self, f: &RationalFunction) -> Result<(), Error> {
        if f.vars() != &self.vars {
            return Err(Error::MixedCharts);
        }
        if divides_power_of(f.den(), &self.allowed_denominator()) {
            Ok(())
        } else {
            Err(Error::InvalidOnChart { expr: f.to_string() })
        }
    }

    /// Parse an expression and validate it on the chart.
    pub fn function(&self, expr: &str) -> Result<RationalFunction, Error> {
        let f = parse_expression(expr, &self.vars)?;
        self.validate(&f)?;
        Ok(f)
    }
}

/// A vector field on a chart, stored as one component function per variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    chart: Chart,
    components: Vec<RationalFunction>,
}

impl VectorField {
    pub fn new(chart: &Chart, components: Vec<RationalFunction>) -> Result<Self, Error> {
        if components.len() != chart.dim() {
            return Err(Error::DimensionMismatch(format!(
                "field has {} components on a {}-dimensional chart",
                components.len(),
                chart.dim()
            )));
        }
        for c in &components {
            chart.validate(c)?;
        }
        Ok(VectorField { chart: chart.clone(), components })
    }

    pub fn parse(chart: &Chart, exprs: &[&str]) -> Result<Self, Error> {
        let components =
            exprs.iter().map(|s| chart.function(s)).collect::<Result<Vec<_>, _>>()?;
        VectorField::new(chart, components)
    }

    pub fn zero(chart: &Chart) -> Self {
        let z = RationalFunction::zero(chart.vars());
        VectorField { chart: chart.clone(), components: vec![z; chart.dim()] }
    }

    /// The i-th coordinate field ∂ᵢ.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        let mut f = Self::zero(chart);
        f.components[i] = RationalFunction::one(chart.vars());
        f
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &RationalFunction {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RationalFunction::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        if self.chart != other.chart {
            return Err(Error::MixedCharts);
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(VectorField { chart: self.chart.clone(), components })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().map(RationalFunction::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Multiply by a scalar function valid on the chart.
    pub fn scale_fn(&self, f: &RationalFunction) -> Result<Self, Error> {
        self.chart.validate(f)?;
        let components = self.components.iter().map(|c| c.mul(f)).collect();
        Ok(VectorField { chart: self.chart.clone(), components })
    }

    /// Directional derivative X(f) = Σᵢ Xⁱ ∂ᵢf.
    pub fn apply(&self, f: &RationalFunction) -> Result<RationalFunction, Error> {
        if f.vars() != self.chart.vars() {
            return Err(Error::MixedCharts);
        }
        let mut acc = RationalFunction::zero(self.chart.vars());
        for (i, xi) in self.components.iter().enumerate() {
            if !xi.is_zero() {
                acc = acc.add(&xi.mul(&f.partial_derivative(i)));
            }
        }
        Ok(acc)
    }
}

/// A linear connection: Christoffel symbols Γᵏᵢⱼ indexed `[k][i][j]`, each
/// valid on the chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    chart: Chart,
    gamma: Vec<Vec<Vec<RationalFunction>>>,
}

impl Connection {
    pub fn new(chart: Chart, gamma: Vec<Vec<Vec<RationalFunction>>>) -> Result<Self, Error> {
        let n = chart.dim();
        if gamma.len() != n
            || gamma.iter().any(|p| p.len() != n || p.iter().any(|q| q.len() != n))
        {
            return Err(Error::DimensionMismatch(format!(
                "Christoffel array must be {n}×{n}×{n}"
            )));
        }
        for plane in &gamma {
            for row in plane {
                for g in row {
                    chart.validate(g)?;
                }
            }
        }
        Ok(Connection { chart, gamma })
    }

    /// The flat coordinate connection: all Christoffel symbols zero.
    pub fn flat(chart: Chart) -> Self {
        let n = chart.dim();
        let z = RationalFunction::zero(chart.vars());
        Connection { chart, gamma: vec![vec![vec![z; n]; n]; n] }
    }

    /// Build from sparse entries (k, i, j, expression) for Γᵏᵢⱼ.
    pub fn from_sparse(
        chart: Chart,
        entries: &[(usize, usize, usize, &str)],
    ) -> Result<Self, Error> {
        let n = chart.dim();
        let z = RationalFunction::zero(chart.vars());
        let mut gamma = vec![vec![vec![z; n]; n]; n];
        for &(k, i, j, expr) in entries {
            if k >= n || i >= n || j >= n {
                return Err(Error::DimensionMismatch(format!(
                    "Christoffel index ({k},{i},{j}) out of range for dimension {n}"
                )));
            }
            gamma[k][i][j] = chart.function(expr)?;
        }
        Ok(Connection { chart, gamma })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// Γᵏᵢⱼ.
    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &RationalFunction {
        &self.gamma[k][i][j]
    }

    /// Whether every Christoffel symbol is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.gamma
            .iter()
            .all(|p| p.iter().all(|r| r.iter().all(|g| g.as_polynomial().is_some())))
    }
}

/// (∇_X Y)ᵏ = Σᵢ Xⁱ ∂ᵢYᵏ + Σᵢⱼ Γᵏᵢⱼ Xⁱ Yʲ.
pub fn covariant_derivative(
    conn: &Connection,
    x: &VectorField,
    y: &VectorField,
) -> Result<VectorField, Error> {
    if x.chart() != conn.chart() || y.chart() != conn.chart() {
        return Err(Error::MixedCharts);
    }
    let n = conn.dim();
    let mut components = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = x.apply(y.component(k))?;
        for i in 0..n {
            if x.component(i).is_zero() {
                continue;
            }
            for j in 0..n {
                let g = conn.christoffel(k, i, j);
                if !g.is_zero() && !y.component(j).is_zero() {
                    acc = acc.add(&g.mul(x.component(i)).mul(y.component(j)));
                }
            }
        }
        components.push(acc);
    }
    VectorField::new(conn.chart(), components)
}

/// Torsion tensor Tᵏᵢⱼ = Γᵏᵢⱼ − Γᵏⱼᵢ, indexed `[k][i][j]`.
pub fn torsion(conn: &Connection) -> Vec<Vec<Vec<RationalFunction>>> {
    let n = conn.dim();
    (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| conn.christoffel(k, i, j).sub(conn.christoffel(k, j, i)))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Curvature tensor with the convention R(∂ᵢ,∂ⱼ)∂ₖ = ∇ᵢ∇ⱼ∂ₖ − ∇ⱼ∇ᵢ∂ₖ:
/// Rˡᵢⱼₖ = ∂ᵢΓˡⱼₖ − ∂ⱼΓˡᵢₖ + Σₘ (Γˡᵢₘ Γᵐⱼₖ − Γˡⱼₘ Γᵐᵢₖ), indexed `[l][i][j][k]`.
pub fn curvature(conn: &Connection) -> Vec<Vec<Vec<Vec<RationalFunction>>>> {
    let n = conn.dim();
    let mut r = vec![
        vec![
            vec![vec![RationalFunction::zero(conn.chart().vars()); n]; n];
            n
        ];
        n
    ];
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = conn
                        .christoffel(l, j, k)
                        .partial_derivative(i)
                        .sub(&conn.christoffel(l, i, k).partial_derivative(j));
                    for m in 0..n {
                        acc = acc
                            .add(&conn.christoffel(l, i, m).mul(conn.christoffel(m, j, k)))
                            .sub(&conn.christoffel(l, j, m).mul(conn.christoffel(m, i, k)));
                    }
                    r[l][i][j][k] = acc;
                }
            }
        }
    }
    r
}

/// First nonzero entry of the torsion or curvature tensor, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatnessWitness {
    Torsion { upper: usize, lower: (usize, usize), value: RationalFunction },
    Curvature { upper: usize, args: (usize, usize, usize), value: RationalFunction },
}

/// Flat affine ⇔ torsion and curvature both vanish identically.
pub fn is_flat_affine(conn: &Connection) -> Verdict<FlatnessWitness> {
    let t = torsion(conn);
    let n = conn.dim();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if !t[k][i][j].is_zero() {
                    return Verdict::Violation(FlatnessWitness::Torsion {
                        upper: k,
                        lower: (i, j),
                        value: t[k][i][j].clone(),
                    });
                }
            }
        }
    }
    let r = curvature(conn);
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !r[l][i][j][k].is_zero() {
                        return Verdict::Violation(FlatnessWitness::Curvature {
                            upper: l,
                            args: (i, j, k),
                            value: r[l][i][j][k].clone(),
                        });
                    }
                }
            }
        }
    }
    Verdict::Holds
}

/// The affine criterion for a flat connection: ∇_{∇_Y Z} X = ∇_Y ∇_Z X for
/// all coordinate pairs (Y,Z) = (∂ᵢ,∂ⱼ), which suffices on the chart
/// because the residual is function-linear in both slots (see the
/// derivation note in the repository docs). Witness: the first failing
/// coordinate pair.
pub fn is_infinitesimal_affine(
    conn: &Connection,
    x: &VectorField,
) -> Result<Verdict<(usize, usize)>, Error> {
    if !is_flat_affine(conn).holds() {
        return Err(Error::NotFlat);
    }
    if x.chart() != conn.chart() {
        return Err(Error::MixedCharts);
    }
    let n = conn.dim();
    let coord: Vec<VectorField> =
        (0..n).map(|i| VectorField::coordinate(conn.chart(), i)).collect();
    // ∇_{∂j} X once per j.
    let dj_x: Vec<VectorField> = (0..n)
        .map(|j| covariant_derivative(conn, &coord[j], x))
        .collect::<Result<_, _>>()?;
    for i in 0..n {
        for j in 0..n {
            // ∇_{∂i}∂j has components Γᵏᵢⱼ.
            let gamma_field = VectorField::new(
                conn.chart(),
                (0..n).map(|k| conn.christoffel(k, i, j).clone()).collect(),
            )?;
            let lhs = covariant_derivative(conn, &gamma_field, x)?;
            let rhs = covariant_derivative(conn, &coord[i], &dj_x[j])?;
            if lhs != rhs {
                return Ok(Verdict::Violation((i, j)));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Outcome of tabulating pairwise ∇-products over a list of fields: either
/// every product lies in the constant span (with its coordinates), or the
/// first product escaping the span, in row-major pair order.
#[derive(Clone, Debug)]
pub enum TableOutcome {
    Closed { table: Vec<Vec<Vec<Rational>>> },
    Escapes { pair: (usize, usize), product: VectorField },
}

/// Multiplication table of ∇_{fᵢ}fⱼ in the constant span of the given
/// fields. Requires a flat affine connection and independent fields.
pub fn product_table(conn: &Connection, fields: &[VectorField]) -> Result<TableOutcome, Error> {
    if !is_flat_affine(conn).holds() {
        return Err(Error::NotFlat);
    }
    let comps: Vec<Vec<RationalFunction>> =
        fields.iter().map(|f| f.components().to_vec()).collect();
    if !independent_over_constants(&comps)? {
        return Err(Error::DependentFields);
    }
    let mut table = Vec::with_capacity(fields.len());
    for (i, fi) in fields.iter().enumerate() {
        let mut row = Vec::with_capacity(fields.len());
        for (j, fj) in fields.iter().enumerate() {
            let p = covariant_derivative(conn, fi, fj)?;
            match coords_in_span(&comps, p.components())? {
                Some(coords) => row.push(coords),
                None => return Ok(TableOutcome::Escapes { pair: (i, j), product: p }),
            }
        }
        table.push(row);
    }
    Ok(TableOutcome::Closed { table })
}

/// Smallest ∇-product-closed subspace containing the generators. The
/// connection must be flat affine and every generator must satisfy the
/// affine criterion — that is what bounds the closure (by n²+n) and makes
/// termination a theorem rather than a hope.
pub fn envelope_fields(
    conn: &Connection,
    generators: &[VectorField],
    cap: usize,
) -> Result<ClosureResult<VectorField>, Error> {
    if !is_flat_affine(conn).holds() {
        return Err(Error::NotFlat);
    }
    for (index, g) in generators.iter().enumerate() {
        if !is_infinitesimal_affine(conn, g)?.holds() {
            return Err(Error::NotInfinitesimalAffine { index });
        }
    }
    close_under_product(
        generators,
        cap,
        &|x: &VectorField, y: &VectorField| covariant_derivative(conn, x, y),
        &|fs: &[VectorField]| {
            let comps: Vec<Vec<RationalFunction>> =
                fs.iter().map(|f| f.components().to_vec()).collect();
            vectorize_fields(&comps)
        },
    )
}

/// All monomials of total degree ≤ d, ascending in the term order.
fn monomials_up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == nvars {
            out.push(Monomial::from_exponents(prefix.clone()));
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(nvars, budget - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Basis of polynomial vector fields of degree ≤ d satisfying the affine
/// criterion, found by exact linear algebra on the ansatz coefficients.
/// Requires a flat connection with polynomial Christoffel symbols.
pub fn solve_polynomial_affine_fields(
    conn: &Connection,
    degree: u32,
) -> Result<Vec<VectorField>, Error> {
    if !conn.is_polynomial() {
        return Err(Error::NonPolynomialConnection);
    }
    if !is_flat_affine(conn).holds() {
        return Err(Error::NotFlat);
    }
    let n = conn.dim();
    let vars = conn.chart().vars().clone();
    let monos = monomials_up_to_degree(n, degree);
    // Ansatz basis: one field per (component k, monomial m).
    let ansatz: Vec<VectorField> = (0..n)
        .flat_map(|k| {
            let vars = vars.clone();
            let chart = conn.chart().clone();
            monos.iter().map(move |m| {
                let mut components = vec![RationalFunction::zero(&vars); n];
                components[k] =
                    RationalFunction::from_poly(Polynomial::term(&vars, m.clone(), Rational::one()));
                VectorField::new(&chart, components).expect("monomial field is valid")
            })
        })
        .collect::<Vec<_>>();

    // The criterion residual ∇_{∂i}∇_{∂j}X − ∇_{∇_{∂i}∂j}X is linear in X,
    // so the system matrix has one column per ansatz field and one row per
    // (pair, component, monomial) coordinate of the residual.
    let coord: Vec<VectorField> =
        (0..n).map(|i| VectorField::coordinate(conn.chart(), i)).collect();
    let gamma_fields: Vec<Vec<VectorField>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    VectorField::new(
                        conn.chart(),
                        (0..n).map(|k| conn.christoffel(k, i, j).clone()).collect(),
                    )
                    .expect("christoffels are valid")
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let mut rows_by_key: std::collections::BTreeMap<(usize, usize, usize, Monomial), Vec<Rational>> =
        std::collections::BTreeMap::new();
    for (col, e) in ansatz.iter().enumerate() {
        for i in 0..n {
            let di_e = covariant_derivative(conn, &coord[i], e)?;
            for j in 0..n {
                // Residual of the pair (j,i): ∇_{∂j}∇_{∂i}e − ∇_{∇_{∂j}∂i}e.
                let rhs = covariant_derivative(conn, &coord[j], &di_e)?;
                let lhs = covariant_derivative(conn, &gamma_fields[j][i], e)?;
                let residual = rhs.sub(&lhs)?;
                for (comp, f) in residual.components().iter().enumerate() {
                    let p = f.as_polynomial().expect("polynomial data stays polynomial");
                    for (m, c) in p.terms() {
                        rows_by_key
                            .entry((j, i, comp, m.clone()))
                            .or_insert_with(|| vec![Rational::zero(); ansatz.len()])[col] =
                            c.clone();
                    }
                }
            }
        }
    }
    let rows: Vec<Vec<Rational>> = rows_by_key.into_values().collect();
    let nullspace = rational_nullspace(&rows, ansatz.len());

    let mut basis = Vec::with_capacity(nullspace.len());
    for coeffs in nullspace {
        let mut field = VectorField::zero(conn.chart());
        for (c, e) in coeffs.iter().zip(&ansatz) {
            if !c.is_zero() {
                field = field.add(&e.scale(c))?;
            }
        }
        basis.push(normalize_field(field));
    }
    Ok(basis)
}

/// Scale a field by a positive rational so its nonzero coefficients are
/// coprime integers and the first one is positive. Presentation only.
fn normalize_field(f: VectorField) -> VectorField {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut numers: Vec<BigInt> = Vec::new();
    let mut denoms: Vec<BigInt> = Vec::new();
    let mut first_sign: Option<bool> = None;
    for c in f.components() {
        if let Some(p) = c.as_polynomial() {
            for (_, r) in p.terms() {
                numers.push(r.numer().clone());
                denoms.push(r.denom().clone());
                if first_sign.is_none() {
                    first_sign = Some(r.numer() >= &BigInt::from(0));
                }
            }
        } else {
            return f; // non-polynomial components: leave untouched
        }
    }
    if numers.is_empty() {
        return f;
    }
    let g = numers.iter().fold(BigInt::from(0), |a, b| a.gcd(b));
    let l = denoms.iter().fold(BigInt::from(1), |a, b| a.lcm(b));
    let mut scale = Rational::new(l, g);
    if first_sign == Some(false) {
        scale = -scale;
    }
    f.scale(&scale)
}

/// Lie bracket [X,Y]ᵏ = Σᵢ (Xⁱ ∂ᵢYᵏ − Yⁱ ∂ᵢXᵏ).
pub fn commutator_field(x: &VectorField, y: &VectorField) -> Result<VectorField, Error> {
    if x.chart() != y.chart() {
        return Err(Error::MixedCharts);
    }
    let n = x.chart().dim();
    let mut components = Vec::with_capacity(n);
    for k in 0..n {
        let a = x.apply(y.component(k))?;
        let b = y.apply(x.component(k))?;
        components.push(a.sub(&b));
    }
    VectorField::new(x.chart(), components)
}

/// For torsion-free connections the ∇-commutator agrees with the Lie
/// bracket: checks ∇_X Y − ∇_Y X = [X,Y] exactly. Witness: the first
/// component where the two sides differ.
pub fn check_bracket_compat(
    conn: &Connection,
    x: &VectorField,
    y: &VectorField,
) -> Result<Verdict<usize>, Error> {
    let nabla = covariant_derivative(conn, x, y)?.sub(&covariant_derivative(conn, y, x)?)?;
    let bracket = commutator_field(x, y)?;
    for (k, (a, b)) in nabla.components().iter().zip(bracket.components()).enumerate() {
        if a != b {
            return Ok(Verdict::Violation(k));
        }
    }
    Ok(Verdict::Holds)
}
