//! The linear frame bundle over a coordinate chart.
//!
//! Points of the bundle are (base point, frame matrix X) with det X ≠ 0;
//! the chart gets n² extra variables Xᵢⱼ, where Xᵢⱼ is the i-th coordinate
//! of the j-th frame vector (columns are frame vectors). On top sit the
//! fundamental form θ = X⁻¹·dx, the connection form ω of a connection on
//! the base, standard horizontal and fundamental vertical fields, natural
//! lifts, Lie derivatives of the forms, and the bracket/structure-equation
//! residuals whose vanishing characterizes flat affine connections.

use num_traits::{One, Zero};

use crate::connection::{
    commutator_field, is_infinitesimal_affine, Chart, Connection, VectorField,
};
use crate::error::Error;
use crate::exactmath::poly::VarSet;
use crate::exactmath::span::rational_rank;
use crate::exactmath::{ExactMatrix, Rational, RationalFunction};
use crate::lsa::RationalMatrix;

/// Chart of the frame bundle: base variables followed by the n² frame
/// variables Xᵢⱼ (row-major), with det X adjoined as nonvanishing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameBundleChart {
    base: Chart,
    bundle: Chart,
}

impl FrameBundleChart {
    pub fn new(base: &Chart) -> Result<Self, Error> {
        let n = base.dim();
        let mut names: Vec<String> = base.vars().names().to_vec();
        for i in 1..=n {
            for j in 1..=n {
                names.push(format!("X{i}{j}"));
            }
        }
        let vars = VarSet::new(names);
        let mut nonvanishing = base
            .nonvanishing()
            .iter()
            .map(|p| p.embed(&vars))
            .collect::<Result<Vec<_>, _>>()?;
        let x = ExactMatrix::from_rows(
            &vars,
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| RationalFunction::var(&vars, n + i * n + j))
                        .collect()
                })
                .collect(),
        )?;
        let det = x
            .determinant()
            .as_polynomial()
            .cloned()
            .expect("determinant of a variable matrix is polynomial");
        nonvanishing.push(det);
        let bundle = Chart::new(vars, nonvanishing)?;
        Ok(FrameBundleChart { base: base.clone(), bundle })
    }

    pub fn base(&self) -> &Chart {
        &self.base
    }

    pub fn bundle_chart(&self) -> &Chart {
        &self.bundle
    }

    /// Base dimension n; the bundle chart has n² + n variables.
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Variable index of Xᵢⱼ (0-based i, j).
    pub fn frame_var(&self, i: usize, j: usize) -> usize {
        let n = self.dim();
        n + i * n + j
    }

    /// The frame matrix X as functions on the bundle chart.
    pub fn frame_matrix(&self) -> ExactMatrix {
        let n = self.dim();
        ExactMatrix::from_rows(
            self.bundle.vars(),
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| RationalFunction::var(self.bundle.vars(), self.frame_var(i, j)))
                        .collect()
                })
                .collect(),
        )
        .expect("square variable matrix")
    }

    /// Reinterpret a base-chart function on the bundle chart.
    pub fn lift_function(&self, f: &RationalFunction) -> Result<RationalFunction, Error> {
        if f.vars() != self.base.vars() {
            return Err(Error::MixedCharts);
        }
        f.embed(self.bundle.vars())
    }
}

/// A vector field on the bundle chart, with the component order
/// (base₁ … base_n, frame₁₁ … frame_nn).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleField {
    field: VectorField,
    n: usize,
}

impl BundleField {
    pub fn new(
        fb: &FrameBundleChart,
        base_components: Vec<RationalFunction>,
        frame_components: Vec<Vec<RationalFunction>>,
    ) -> Result<Self, Error> {
        let n = fb.dim();
        if base_components.len() != n
            || frame_components.len() != n
            || frame_components.iter().any(|r| r.len() != n)
        {
            return Err(Error::DimensionMismatch(
                "bundle field needs n base and n×n frame components".into(),
            ));
        }
        let mut components = base_components;
        components.extend(frame_components.into_iter().flatten());
        Ok(BundleField { field: VectorField::new(fb.bundle_chart(), components)?, n })
    }

    pub fn zero(fb: &FrameBundleChart) -> Self {
        BundleField { field: VectorField::zero(fb.bundle_chart()), n: fb.dim() }
    }

    /// Coefficient of ∂/∂xᵢ.
    pub fn base_component(&self, i: usize) -> &RationalFunction {
        self.field.component(i)
    }

    /// Coefficient of ∂/∂Xᵢⱼ.
    pub fn frame_component(&self, i: usize, j: usize) -> &RationalFunction {
        self.field.component(self.n + i * self.n + j)
    }

    /// The underlying field on the bundle chart.
    pub fn as_field(&self) -> &VectorField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        Ok(BundleField { field: self.field.add(&other.field)?, n: self.n })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BundleField { field: self.field.scale(c), n: self.n }
    }

    /// Directional derivative of a bundle-chart function along the field.
    pub fn apply(&self, f: &RationalFunction) -> Result<RationalFunction, Error> {
        self.field.apply(f)
    }

    /// Entrywise directional derivative of a matrix of functions.
    fn apply_matrix(&self, m: &ExactMatrix) -> Result<ExactMatrix, Error> {
        let rows = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| self.apply(m.get(i, j))).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        ExactMatrix::from_rows(m.vars(), rows)
    }
}

/// Lie bracket of bundle fields (they are plain fields on the bundle chart).
pub fn bundle_bracket(z1: &BundleField, z2: &BundleField) -> Result<BundleField, Error> {
    Ok(BundleField { field: commutator_field(&z1.field, &z2.field)?, n: z1.n })
}

/// A matrix of functions attached linearly to bundle fields: the
/// fundamental form θ (an n×1 column) or the connection form ω of a base
/// connection (an n×n matrix).
#[derive(Clone, Debug)]
pub struct MatrixValuedForm {
    fb: FrameBundleChart,
    x_inv: ExactMatrix,
    kind: FormKind,
}

#[derive(Clone, Debug)]
enum FormKind {
    Theta,
    /// Christoffel symbols of the base connection, lifted to bundle vars.
    Omega(Vec<Vec<Vec<RationalFunction>>>),
}

/// θ(Z) = X⁻¹ · (base components of Z).
pub fn theta(fb: &FrameBundleChart) -> MatrixValuedForm {
    MatrixValuedForm {
        fb: fb.clone(),
        x_inv: fb.frame_matrix().inverse().expect("det X is a chart unit"),
        kind: FormKind::Theta,
    }
}

/// ω(Z)ᵃᵦ = (X⁻¹)ᵃₖ (Zᶠʳᵃᵐᵉₖᵦ + Σᵢⱼ Γᵏᵢⱼ Zᵇᵃˢᵉᵢ Xⱼᵦ).
pub fn omega(fb: &FrameBundleChart, conn: &Connection) -> Result<MatrixValuedForm, Error> {
    if conn.chart() != fb.base() {
        return Err(Error::MixedCharts);
    }
    let n = fb.dim();
    let mut lifted = vec![vec![Vec::with_capacity(n); n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                lifted[k][i].push(fb.lift_function(conn.christoffel(k, i, j))?);
            }
        }
    }
    Ok(MatrixValuedForm {
        fb: fb.clone(),
        x_inv: fb.frame_matrix().inverse().expect("det X is a chart unit"),
        kind: FormKind::Omega(lifted),
    })
}

impl MatrixValuedForm {
    /// Evaluate on a bundle field: n×1 for θ, n×n for ω.
    pub fn eval(&self, z: &BundleField) -> Result<ExactMatrix, Error> {
        let n = self.fb.dim();
        let vars = self.fb.bundle_chart().vars();
        match &self.kind {
            FormKind::Theta => {
                let col = ExactMatrix::from_rows(
                    vars,
                    (0..n).map(|i| vec![z.base_component(i).clone()]).collect(),
                )?;
                Ok(self.x_inv.mul(&col))
            }
            FormKind::Omega(gamma) => {
                let x = self.fb.frame_matrix();
                let mut inner = ExactMatrix::zero(vars, n, n);
                for k in 0..n {
                    for b in 0..n {
                        let mut acc = z.frame_component(k, b).clone();
                        for i in 0..n {
                            if z.base_component(i).is_zero() {
                                continue;
                            }
                            for j in 0..n {
                                let g = &gamma[k][i][j];
                                if !g.is_zero() {
                                    acc = acc.add(
                                        &g.mul(z.base_component(i)).mul(x.get(j, b)),
                                    );
                                }
                            }
                        }
                        inner.set(k, b, acc);
                    }
                }
                Ok(self.x_inv.mul(&inner))
            }
        }
    }
}

/// Fundamental vertical field A* of a constant matrix A: base part zero,
/// frame part X·A (the infinitesimal right action of A).
pub fn fundamental_vertical(fb: &FrameBundleChart, a: &RationalMatrix) -> BundleField {
    let n = fb.dim();
    assert_eq!(a.size(), n, "matrix size must match the base dimension");
    let vars = fb.bundle_chart().vars();
    let base = vec![RationalFunction::zero(vars); n];
    let mut frame = vec![vec![RationalFunction::zero(vars); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = RationalFunction::zero(vars);
            for m in 0..n {
                let c = a.get(m, j);
                if !c.is_zero() {
                    acc = acc
                        .add(&RationalFunction::var(vars, fb.frame_var(i, m)).scale(c));
                }
            }
            frame[i][j] = acc;
        }
    }
    BundleField::new(fb, base, frame).expect("vertical field is valid")
}

/// Standard horizontal field B(ξ) of a constant vector ξ: base part X·ξ,
/// frame part −Γ(X·ξ)·X, so that θ(B(ξ)) = ξ and ω(B(ξ)) = 0.
pub fn standard_horizontal(
    fb: &FrameBundleChart,
    conn: &Connection,
    xi: &[Rational],
) -> Result<BundleField, Error> {
    if conn.chart() != fb.base() {
        return Err(Error::MixedCharts);
    }
    let n = fb.dim();
    if xi.len() != n {
        return Err(Error::DimensionMismatch("direction must have base dimension".into()));
    }
    let vars = fb.bundle_chart().vars();
    let x = fb.frame_matrix();
    // (X·ξ)ᵢ = Σ_m Xᵢₘ ξₘ.
    let base: Vec<RationalFunction> = (0..n)
        .map(|i| {
            let mut acc = RationalFunction::zero(vars);
            for (m, c) in xi.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&x.get(i, m).scale(c));
                }
            }
            acc
        })
        .collect();
    let mut frame = vec![vec![RationalFunction::zero(vars); n]; n];
    for k in 0..n {
        for b in 0..n {
            let mut acc = RationalFunction::zero(vars);
            for i in 0..n {
                if base[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let g = fb.lift_function(conn.christoffel(k, i, j))?;
                    if !g.is_zero() {
                        acc = acc.add(&g.mul(&base[i]).mul(x.get(j, b)));
                    }
                }
            }
            frame[k][b] = acc.neg();
        }
    }
    BundleField::new(fb, base, frame)
}

/// Natural lift L(X) of a base field: base part X, frame part J·X_col with
/// J the Jacobian ∂ⱼXᵏ — the infinitesimal version of lifting the flow of
/// X to frames by its derivative.
pub fn natural_lift(fb: &FrameBundleChart, x: &VectorField) -> Result<BundleField, Error> {
    if x.chart() != fb.base() {
        return Err(Error::MixedCharts);
    }
    let n = fb.dim();
    let base = x
        .components()
        .iter()
        .map(|c| fb.lift_function(c))
        .collect::<Result<Vec<_>, _>>()?;
    let xm = fb.frame_matrix();
    let mut frame = vec![vec![RationalFunction::zero(fb.bundle_chart().vars()); n]; n];
    for k in 0..n {
        for b in 0..n {
            let mut acc = RationalFunction::zero(fb.bundle_chart().vars());
            for j in 0..n {
                let dj = fb.lift_function(&x.component(k).partial_derivative(j))?;
                if !dj.is_zero() {
                    acc = acc.add(&dj.mul(xm.get(j, b)));
                }
            }
            frame[k][b] = acc;
        }
    }
    BundleField::new(fb, base, frame)
}

/// The spanning probe set: standard horizontals of the coordinate
/// directions followed by fundamental verticals of the elementary
/// matrices. Every bundle field is a function combination of these, so
/// identities between tensorial expressions need only be checked here.
pub fn spanning_probes(
    fb: &FrameBundleChart,
    conn: &Connection,
) -> Result<Vec<BundleField>, Error> {
    let n = fb.dim();
    let mut probes = Vec::with_capacity(n + n * n);
    for i in 0..n {
        let mut xi = vec![Rational::zero(); n];
        xi[i] = Rational::one();
        probes.push(standard_horizontal(fb, conn, &xi)?);
    }
    for i in 0..n {
        for j in 0..n {
            let mut e = RationalMatrix::zero(n);
            e.set(i, j, Rational::one());
            probes.push(fundamental_vertical(fb, &e));
        }
    }
    Ok(probes)
}

/// (𝓛_Z α)(W) = Z(α(W)) − α([Z, W]) for each probe W.
pub fn lie_derivative_form(
    z: &BundleField,
    form: &MatrixValuedForm,
    probes: &[BundleField],
) -> Result<Vec<ExactMatrix>, Error> {
    probes
        .iter()
        .map(|w| {
            let derived = z.apply_matrix(&form.eval(w)?)?;
            let bracket_value = form.eval(&bundle_bracket(z, w)?)?;
            Ok(derived.sub(&bracket_value))
        })
        .collect()
}

/// Residuals of the bracket identity characterizing flat affine
/// connections: θ([Z₁,Z₂]) − (ω(Z₁)θ(Z₂) − ω(Z₂)θ(Z₁)) and
/// ω([Z₁,Z₂]) − [ω(Z₁), ω(Z₂)].
pub fn eta_residual(
    fb: &FrameBundleChart,
    conn: &Connection,
    z1: &BundleField,
    z2: &BundleField,
) -> Result<(ExactMatrix, ExactMatrix), Error> {
    let th = theta(fb);
    let om = omega(fb, conn)?;
    let bracket = bundle_bracket(z1, z2)?;
    let th1 = th.eval(z1)?;
    let th2 = th.eval(z2)?;
    let om1 = om.eval(z1)?;
    let om2 = om.eval(z2)?;
    let vector = th.eval(&bracket)?.sub(&om1.mul(&th2).sub(&om2.mul(&th1)));
    let matrix = om.eval(&bracket)?.sub(&om1.mul(&om2).sub(&om2.mul(&om1)));
    Ok((vector, matrix))
}

/// Exterior derivative of a form on a pair, with the ½-convention:
/// dα(Z₁,Z₂) = ½(Z₁(α(Z₂)) − Z₂(α(Z₁)) − α([Z₁,Z₂])).
fn d_on_pair(
    form: &MatrixValuedForm,
    z1: &BundleField,
    z2: &BundleField,
) -> Result<ExactMatrix, Error> {
    let a2 = form.eval(z2)?;
    let a1 = form.eval(z1)?;
    let t = z1
        .apply_matrix(&a2)?
        .sub(&z2.apply_matrix(&a1)?)
        .sub(&form.eval(&bundle_bracket(z1, z2)?)?);
    Ok(t.scale(&RationalFunction::constant(
        t.vars(),
        Rational::new(1.into(), 2.into()),
    )))
}

/// Torsion and curvature forms on a pair of bundle fields:
/// Θ(Z₁,Z₂) = dθ(Z₁,Z₂) + ½(ω(Z₁)θ(Z₂) − ω(Z₂)θ(Z₁)) and
/// Ω(Z₁,Z₂) = dω(Z₁,Z₂) + ½[ω(Z₁), ω(Z₂)] − ½[ω(Z₂), ω(Z₁)] collapsed to
/// dω + [ω(Z₁), ω(Z₂)] is *not* used; the ½-convention keeps
/// Ω(Z₁,Z₂) = dω(Z₁,Z₂) + ½(ω(Z₁)ω(Z₂) − ω(Z₂)ω(Z₁)).
pub fn structure_residuals(
    fb: &FrameBundleChart,
    conn: &Connection,
    z1: &BundleField,
    z2: &BundleField,
) -> Result<(ExactMatrix, ExactMatrix), Error> {
    let th = theta(fb);
    let om = omega(fb, conn)?;
    let half = RationalFunction::constant(
        fb.bundle_chart().vars(),
        Rational::new(1.into(), 2.into()),
    );
    let om1 = om.eval(z1)?;
    let om2 = om.eval(z2)?;
    let torsion_form = d_on_pair(&th, z1, z2)?
        .add(&om1.mul(&th.eval(z2)?).sub(&om2.mul(&th.eval(z1)?)).scale(&half));
    let curvature_form = d_on_pair(&om, z1, z2)?
        .add(&om1.mul(&om2).sub(&om2.mul(&om1)).scale(&half));
    Ok((torsion_form, curvature_form))
}

/// Residual of R_a-equivariance under a symbolic right translation
/// X ↦ X·a with fresh variables a₁₁ … a_nn (det a adjoined nonvanishing):
/// returns base residuals Zᵇᵃˢᵉ(x, X·a) − Zᵇᵃˢᵉ(x, X) and frame residuals
/// Zᶠʳᵃᵐᵉ(x, X·a) − Zᶠʳᵃᵐᵉ(x, X)·a. All zero iff Z is invariant under
/// every right translation, any component of GL_n included.
pub fn right_invariance_residual(
    fb: &FrameBundleChart,
    z: &BundleField,
) -> Result<(Vec<RationalFunction>, Vec<Vec<RationalFunction>>), Error> {
    let n = fb.dim();
    let bundle_vars = fb.bundle_chart().vars();
    let mut names: Vec<String> = bundle_vars.names().to_vec();
    for i in 1..=n {
        for j in 1..=n {
            names.push(format!("a{i}{j}"));
        }
    }
    let ext = VarSet::new(names);
    let a_var = |i: usize, j: usize| {
        RationalFunction::var(&ext, bundle_vars.len() + i * n + j)
    };
    // Substitution images: base variables map to themselves, Xᵢⱼ ↦ Σ Xᵢₘaₘⱼ.
    let mut images: Vec<RationalFunction> = (0..n).map(|i| RationalFunction::var(&ext, i)).collect();
    for i in 0..n {
        for j in 0..n {
            let mut acc = RationalFunction::zero(&ext);
            for m in 0..n {
                acc = acc.add(
                    &RationalFunction::var(&ext, fb.frame_var(i, m)).mul(&a_var(m, j)),
                );
            }
            images.push(acc);
        }
    }
    let translate = |f: &RationalFunction| f.substitute(&images);
    let base = (0..n)
        .map(|i| {
            Ok(translate(z.base_component(i))?.sub(&z.base_component(i).embed(&ext)?))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut frame = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut expected = RationalFunction::zero(&ext);
            for m in 0..n {
                expected =
                    expected.add(&z.frame_component(i, m).embed(&ext)?.mul(&a_var(m, j)));
            }
            row.push(translate(z.frame_component(i, j))?.sub(&expected));
        }
        frame.push(row);
    }
    Ok((base, frame))
}

/// Same residual specialized at a fixed constant a (used with a reflection
/// to cover the det < 0 component explicitly).
pub fn right_invariance_residual_at(
    fb: &FrameBundleChart,
    z: &BundleField,
    a: &RationalMatrix,
) -> Result<(Vec<RationalFunction>, Vec<Vec<RationalFunction>>), Error> {
    let n = fb.dim();
    assert_eq!(a.size(), n);
    let vars = fb.bundle_chart().vars();
    let mut images: Vec<RationalFunction> =
        (0..n).map(|i| RationalFunction::var(vars, i)).collect();
    for i in 0..n {
        for j in 0..n {
            let mut acc = RationalFunction::zero(vars);
            for m in 0..n {
                let c = a.get(m, j);
                if !c.is_zero() {
                    acc = acc.add(&RationalFunction::var(vars, fb.frame_var(i, m)).scale(c));
                }
            }
            images.push(acc);
        }
    }
    let translate = |f: &RationalFunction| f.substitute(&images);
    let base = (0..n)
        .map(|i| Ok(translate(z.base_component(i))?.sub(z.base_component(i))))
        .collect::<Result<Vec<_>, Error>>()?;
    let mut frame = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut expected = RationalFunction::zero(vars);
            for m in 0..n {
                let c = a.get(m, j);
                if !c.is_zero() {
                    expected = expected.add(&z.frame_component(i, m).scale(c));
                }
            }
            row.push(translate(z.frame_component(i, j))?.sub(&expected));
        }
        frame.push(row);
    }
    Ok((base, frame))
}

/// Rank at a bundle point of the matrix whose columns are θ evaluated on
/// the natural lifts of the given affine fields. Full rank means the
/// fields still frame the base tangent space seen from that point.
pub fn orbit_map_rank(
    fb: &FrameBundleChart,
    conn: &Connection,
    fields: &[VectorField],
    point: &[Rational],
) -> Result<usize, Error> {
    for (index, f) in fields.iter().enumerate() {
        if !is_infinitesimal_affine(conn, f)?.holds() {
            return Err(Error::NotInfinitesimalAffine { index });
        }
    }
    let bundle = fb.bundle_chart();
    if point.len() != bundle.dim() {
        return Err(Error::InvalidPoint);
    }
    for p in bundle.nonvanishing() {
        if p.eval(point).is_zero() {
            return Err(Error::InvalidPoint);
        }
    }
    let th = theta(fb);
    let columns = fields
        .iter()
        .map(|f| {
            let value = th.eval(&natural_lift(fb, f)?)?;
            (0..fb.dim())
                .map(|i| value.get(i, 0).eval(point))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rational_rank(&columns))
}

/// Convenience: the identity-frame bundle point over a base point.
pub fn identity_frame_point(fb: &FrameBundleChart, base_point: &[Rational]) -> Vec<Rational> {
    let n = fb.dim();
    let mut point = base_point.to_vec();
    for i in 0..n {
        for j in 0..n {
            point.push(if i == j { Rational::one() } else { Rational::zero() });
        }
    }
    point
}

/// All-zero test for matrices produced by the residual operations.
pub fn matrix_is_zero(m: &ExactMatrix) -> bool {
    m.is_zero()
}
