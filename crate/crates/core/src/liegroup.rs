//! Chart presentations of Lie groups with invariant frames.
//!
//! A group enters the library as a coordinate chart together with its left-
//! and right-invariant frames and the identity point — every computation in
//! scope needs only the frames, never the multiplication map. From a
//! left-symmetric product on the left frame, the invariant connection's
//! Christoffel symbols are derived by exact frame-matrix inversion.

use num_traits::Zero;

use crate::catalog::composition_algebra;
use crate::connection::{covariant_derivative, Chart, Connection, VectorField};
use crate::error::Error;
use crate::exactmath::poly::VarSet;
use crate::exactmath::{ExactMatrix, Rational, RationalFunction};
use crate::lsa::StructureConstants;
use crate::Verdict;

/// A Lie group presented by a chart, the identity point, and the two
/// invariant frames (which must agree at the identity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupChart {
    chart: Chart,
    identity: Vec<Rational>,
    left_frame: Vec<VectorField>,
    right_frame: Vec<VectorField>,
}

impl GroupChart {
    pub fn new(
        chart: Chart,
        identity: Vec<Rational>,
        left_frame: Vec<VectorField>,
        right_frame: Vec<VectorField>,
    ) -> Result<Self, Error> {
        let n = chart.dim();
        if identity.len() != n || left_frame.len() != n || right_frame.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "identity and frames must match the chart dimension {n}"
            )));
        }
        for f in left_frame.iter().chain(&right_frame) {
            if f.chart() != &chart {
                return Err(Error::MixedCharts);
            }
        }
        for p in chart.nonvanishing() {
            if p.eval(&identity).is_zero() {
                return Err(Error::InvalidPoint);
            }
        }
        // Frames must be generically invertible…
        for frame in [&left_frame, &right_frame] {
            if frame_matrix(&chart, frame)?.determinant().is_zero() {
                return Err(Error::SingularFrame);
            }
        }
        // …and agree at the identity.
        for (l, r) in left_frame.iter().zip(&right_frame) {
            for (lc, rc) in l.components().iter().zip(r.components()) {
                if lc.eval(&identity)? != rc.eval(&identity)? {
                    return Err(Error::DimensionMismatch(
                        "frames must agree at the identity point".into(),
                    ));
                }
            }
        }
        Ok(GroupChart { chart, identity, left_frame, right_frame })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn identity(&self) -> &[Rational] {
        &self.identity
    }

    pub fn left_frame(&self) -> &[VectorField] {
        &self.left_frame
    }

    pub fn right_frame(&self) -> &[VectorField] {
        &self.right_frame
    }
}

/// Matrix whose column a holds the components of the a-th frame field.
fn frame_matrix(chart: &Chart, frame: &[VectorField]) -> Result<ExactMatrix, Error> {
    let n = chart.dim();
    let rows = (0..n)
        .map(|k| frame.iter().map(|f| f.component(k).clone()).collect())
        .collect();
    ExactMatrix::from_rows(chart.vars(), rows)
}

/// The x ≠ 0 component of the affine line's symmetry group, charted as
/// (x, y) ↦ (t ↦ xt + y): left frame (x∂x, x∂y), right frame
/// (x∂x + y∂y, ∂y), identity (1, 0).
pub fn affine_line_group() -> GroupChart {
    let chart = Chart::parse(&["x", "y"], &["x"]).expect("valid chart");
    let f = |exprs: &[&str]| VectorField::parse(&chart, exprs).expect("valid field");
    GroupChart::new(
        chart.clone(),
        vec![Rational::from_integer(1.into()), Rational::zero()],
        vec![f(&["x", "0"]), f(&["0", "x"])],
        vec![f(&["x", "y"]), f(&["0", "1"])],
    )
    .expect("valid group chart")
}

/// ℝⁿ under addition: both frames are the coordinate fields.
pub fn abelian_group(n: usize) -> GroupChart {
    let chart = crate::catalog::euclidean_chart(n);
    let coords: Vec<VectorField> =
        (0..n).map(|i| VectorField::coordinate(&chart, i)).collect();
    GroupChart::new(chart, vec![Rational::zero(); n], coords.clone(), coords)
        .expect("valid group chart")
}

/// Invertible n×n matrices, charted by their entries x₁₁ … x_nn with the
/// determinant nonvanishing. Left frame E⁺ᵣₛ = Σᵢ x_ir ∂/∂x_is, right
/// frame E⁻ᵣₛ = Σᵢ x_si ∂/∂x_ri, identity the unit matrix.
pub fn general_linear_group(n: usize) -> GroupChart {
    let names: Vec<String> =
        (1..=n).flat_map(|i| (1..=n).map(move |j| format!("x{i}{j}"))).collect();
    let vars = VarSet::new(names);
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let entry = |i: usize, j: usize| {
        crate::exactmath::poly::Polynomial::var(&vars, idx(i, j))
    };
    // Leibniz expansion of det over permutations is fine at these sizes,
    // but the cofactor route reuses exact matrix arithmetic.
    let matrix = ExactMatrix::from_rows(
        &vars,
        (1..=n)
            .map(|i| (1..=n).map(|j| RationalFunction::from_poly(entry(i, j))).collect())
            .collect(),
    )
    .expect("square entry matrix");
    let det = matrix
        .determinant()
        .as_polynomial()
        .cloned()
        .expect("determinant of a polynomial matrix");
    let chart = Chart::new(vars.clone(), vec![det]).expect("valid chart");

    let mut left = Vec::with_capacity(n * n);
    let mut right = Vec::with_capacity(n * n);
    for r in 1..=n {
        for s in 1..=n {
            let mut lc = vec![RationalFunction::zero(&vars); n * n];
            let mut rc = vec![RationalFunction::zero(&vars); n * n];
            for i in 1..=n {
                lc[idx(i, s)] = RationalFunction::from_poly(entry(i, r));
                rc[idx(r, i)] = RationalFunction::from_poly(entry(s, i));
            }
            left.push(VectorField::new(&chart, lc).expect("valid field"));
            right.push(VectorField::new(&chart, rc).expect("valid field"));
        }
    }
    let mut identity = vec![Rational::zero(); n * n];
    for i in 1..=n {
        identity[idx(i, i)] = Rational::from_integer(1.into());
    }
    GroupChart::new(chart, identity, left, right).expect("valid group chart")
}

/// Look up a built-in group by name: `aff_r`, `abelian(n)`, or `gl(2)`.
pub fn builtin(name: &str) -> Result<GroupChart, Error> {
    let name = name.trim();
    if name == "aff_r" {
        return Ok(affine_line_group());
    }
    if name == "gl(2)" {
        return Ok(general_linear_group(2));
    }
    if let Some(arg) = name.strip_prefix("abelian(").and_then(|s| s.strip_suffix(')')) {
        if let Ok(n) = arg.trim().parse::<usize>() {
            if n >= 1 {
                return Ok(abelian_group(n));
            }
        }
    }
    Err(Error::UnknownName(name.to_string()))
}

/// Christoffel symbols of the unique connection with
/// ∇_{eᵢ⁺}eⱼ⁺ = Σₖ c[i][j][k] eₖ⁺, by expanding coordinate fields in the
/// left frame: with F the frame matrix and G = F⁻¹,
/// Γᵏᵢⱼ = Σ_b ∂ᵢ(G[b][j])·F[k][b] + Σ_{a,b} G[a][i]·G[b][j]·(Σ_l c[a][b][l]·F[k][l]).
pub fn christoffels_from_lsa(
    g: &GroupChart,
    a: &StructureConstants,
) -> Result<Connection, Error> {
    let n = g.dim();
    if a.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "product has dimension {}, group chart has dimension {n}",
            a.dim()
        )));
    }
    let f = frame_matrix(g.chart(), g.left_frame())?;
    let ginv = f.inverse()?;
    // Coordinate expansion of the frame products: cf[a][b][k] = (e_a⁺ e_b⁺)ᵏ.
    let zero = RationalFunction::zero(g.chart().vars());
    let mut cf = vec![vec![vec![zero.clone(); n]; n]; n];
    for ai in 0..n {
        for b in 0..n {
            for k in 0..n {
                let mut acc = zero.clone();
                for l in 0..n {
                    let c = a.coefficient(ai, b, l);
                    if !c.is_zero() {
                        acc = acc.add(&f.get(k, l).scale(c));
                    }
                }
                cf[ai][b][k] = acc;
            }
        }
    }
    let mut gamma = vec![vec![vec![zero.clone(); n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero.clone();
                for b in 0..n {
                    let dg = ginv.get(b, j).partial_derivative(i);
                    if !dg.is_zero() {
                        acc = acc.add(&dg.mul(f.get(k, b)));
                    }
                }
                for ai in 0..n {
                    if ginv.get(ai, i).is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        if ginv.get(b, j).is_zero() || cf[ai][b][k].is_zero() {
                            continue;
                        }
                        acc = acc.add(
                            &ginv.get(ai, i).mul(ginv.get(b, j)).mul(&cf[ai][b][k]),
                        );
                    }
                }
                gamma[k][i][j] = acc;
            }
        }
    }
    Connection::new(g.chart().clone(), gamma)
}

/// Round-trip check: recompute every ∇_{eᵢ⁺}eⱼ⁺ with the covariant
/// derivative and compare against Σₖ c[i][j][k] eₖ⁺. Witness: first
/// failing frame pair.
pub fn verify_left_invariance(
    g: &GroupChart,
    conn: &Connection,
    a: &StructureConstants,
) -> Result<Verdict<(usize, usize)>, Error> {
    let n = g.dim();
    if a.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "product has dimension {}, group chart has dimension {n}",
            a.dim()
        )));
    }
    for i in 0..n {
        for j in 0..n {
            let actual =
                covariant_derivative(conn, &g.left_frame()[i], &g.left_frame()[j])?;
            let mut expected = VectorField::zero(g.chart());
            for (k, ek) in g.left_frame().iter().enumerate() {
                let c = a.coefficient(i, j, k);
                if !c.is_zero() {
                    expected = expected.add(&ek.scale(c))?;
                }
            }
            if actual != expected {
                return Ok(Verdict::Violation((i, j)));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// The 16 products ∇_{E⁺ₚq}E⁻ᵣₛ on GL₂ with the composition-derived
/// connection, plus the verdict of comparing each against the closed form
/// x_sp ∂/∂x_rq. Indices into the two frames (row-major over (p,q), (r,s)).
pub struct MixedProductsGl2 {
    pub products: Vec<Vec<VectorField>>,
    pub verdict: Verdict<(usize, usize)>,
}

pub fn mixed_products_gl2() -> Result<MixedProductsGl2, Error> {
    let n = 2usize;
    let g = general_linear_group(n);
    let conn = christoffels_from_lsa(&g, &composition_algebra(n))?;
    let vars = g.chart().vars().clone();
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut products = Vec::with_capacity(n * n);
    let mut verdict = Verdict::Holds;
    for p in 1..=n {
        for q in 1..=n {
            let mut row = Vec::with_capacity(n * n);
            for r in 1..=n {
                for s in 1..=n {
                    let product = covariant_derivative(
                        &conn,
                        &g.left_frame()[idx(p, q)],
                        &g.right_frame()[idx(r, s)],
                    )?;
                    let mut closed = vec![RationalFunction::zero(&vars); n * n];
                    closed[idx(r, q)] = RationalFunction::var(&vars, idx(s, p));
                    let closed = VectorField::new(g.chart(), closed)?;
                    if product != closed && verdict.holds() {
                        verdict = Verdict::Violation((idx(p, q), idx(r, s)));
                    }
                    row.push(product);
                }
            }
            products.push(row);
        }
    }
    Ok(MixedProductsGl2 { products, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{
        affine_line_algebra, affine_line_family, affine_line_family_connection,
        half_plane_connection,
    };
    use crate::connection::{is_flat_affine, is_infinitesimal_affine};
    use crate::lsa::StructureConstants;

    #[test]
    fn builtin_lookup() {
        assert_eq!(builtin("aff_r").unwrap(), affine_line_group());
        assert_eq!(builtin("abelian(2)").unwrap(), abelian_group(2));
        assert_eq!(builtin("gl(2)").unwrap(), general_linear_group(2));
        assert!(matches!(builtin("so(3)"), Err(Error::UnknownName(_))));
        assert!(matches!(builtin("abelian(0)"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn abelian_frames_are_coordinates() {
        let g = abelian_group(2);
        for (i, f) in g.left_frame().iter().enumerate() {
            assert_eq!(f, &VectorField::coordinate(g.chart(), i));
        }
        assert_eq!(g.left_frame(), g.right_frame());
        let conn = christoffels_from_lsa(&g, &StructureConstants::zero(2)).unwrap();
        assert_eq!(conn, Connection::flat(g.chart().clone()));
        assert!(verify_left_invariance(&g, &conn, &StructureConstants::zero(2))
            .unwrap()
            .holds());
    }

    #[test]
    fn affine_line_connection_derivation() {
        let g = affine_line_group();
        let conn = christoffels_from_lsa(&g, &affine_line_algebra()).unwrap();
        assert_eq!(conn, half_plane_connection());
        assert!(verify_left_invariance(&g, &conn, &affine_line_algebra()).unwrap().holds());

        for alpha in 1..=3 {
            let conn = christoffels_from_lsa(&g, &affine_line_family(alpha)).unwrap();
            assert_eq!(conn, affine_line_family_connection(alpha));
        }
    }

    #[test]
    fn perturbed_connection_fails_round_trip() {
        let g = affine_line_group();
        let perturbed = Connection::from_sparse(
            g.chart().clone(),
            &[(0, 0, 0, "2/x"), (0, 1, 1, "1/x")],
        )
        .unwrap();
        assert_eq!(
            verify_left_invariance(&g, &perturbed, &affine_line_algebra())
                .unwrap()
                .witness(),
            Some(&(0, 0))
        );
    }

    #[test]
    fn general_linear_frames() {
        let g = general_linear_group(2);
        assert_eq!(g.dim(), 4);
        // E⁺₁₂ = x₁₁ ∂/∂x₁₂ + x₂₁ ∂/∂x₂₂ (frame index 1, row-major).
        let expected = VectorField::parse(g.chart(), &["0", "x11", "0", "x21"]).unwrap();
        assert_eq!(&g.left_frame()[1], &expected);
        // E⁻₁₂ = x₂₁ ∂/∂x₁₁ + x₂₂ ∂/∂x₁₂.
        let expected = VectorField::parse(g.chart(), &["x21", "x22", "0", "0"]).unwrap();
        assert_eq!(&g.right_frame()[1], &expected);
    }

    #[test]
    fn composition_connection_is_coordinate_flat() {
        let g = general_linear_group(2);
        let conn = christoffels_from_lsa(&g, &composition_algebra(2)).unwrap();
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    assert!(conn.christoffel(k, i, j).is_zero());
                }
            }
        }
        assert!(is_flat_affine(&conn).holds());
        assert!(verify_left_invariance(&g, &conn, &composition_algebra(2)).unwrap().holds());
    }

    #[test]
    fn mixed_products_match_closed_form() {
        let m = mixed_products_gl2().unwrap();
        assert!(m.verdict.holds());
        // Spot checks: (p,q,r,s) = (1,1,1,1) → x₁₁ ∂/∂x₁₁ and
        // (1,2,2,1) → x₁₁ ∂/∂x₂₂.
        let g = general_linear_group(2);
        let e = |exprs: &[&str]| VectorField::parse(g.chart(), exprs).unwrap();
        assert_eq!(m.products[0][0], e(&["x11", "0", "0", "0"]));
        assert_eq!(m.products[1][2], e(&["0", "0", "0", "x11"]));
    }

    #[test]
    fn right_fields_are_affine_for_derived_connections() {
        let g = affine_line_group();
        let conn = christoffels_from_lsa(&g, &affine_line_algebra()).unwrap();
        for f in g.right_frame() {
            assert!(is_infinitesimal_affine(&conn, f).unwrap().holds());
        }
        let g = abelian_group(3);
        let conn = christoffels_from_lsa(&g, &StructureConstants::zero(3)).unwrap();
        for f in g.right_frame() {
            assert!(is_infinitesimal_affine(&conn, f).unwrap().holds());
        }
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let g = affine_line_group();
        assert!(matches!(
            christoffels_from_lsa(&g, &StructureConstants::zero(3)),
            Err(Error::DimensionMismatch(_))
        ));
        // A frame that is generically singular.
        let chart = Chart::parse(&["x", "y"], &[]).unwrap();
        let f = |exprs: &[&str]| VectorField::parse(&chart, exprs).unwrap();
        assert!(matches!(
            GroupChart::new(
                chart.clone(),
                vec![Rational::zero(), Rational::zero()],
                vec![f(&["1", "0"]), f(&["2", "0"])],
                vec![f(&["1", "0"]), f(&["2", "0"])],
            ),
            Err(Error::SingularFrame)
        ));
        // Identity where a nonvanishing polynomial vanishes.
        let half = Chart::parse(&["x", "y"], &["x"]).unwrap();
        let h = |exprs: &[&str]| VectorField::parse(&half, exprs).unwrap();
        assert!(matches!(
            GroupChart::new(
                half.clone(),
                vec![Rational::zero(), Rational::zero()],
                vec![h(&["1", "0"]), h(&["0", "1"])],
                vec![h(&["1", "0"]), h(&["0", "1"])],
            ),
            Err(Error::InvalidPoint)
        ));
    }

    #[test]
    fn frames_must_agree_at_identity() {
        let chart = Chart::parse(&["x", "y"], &[]).unwrap();
        let f = |exprs: &[&str]| VectorField::parse(&chart, exprs).unwrap();
        assert!(GroupChart::new(
            chart.clone(),
            vec![Rational::zero(), Rational::zero()],
            vec![f(&["1", "0"]), f(&["0", "1"])],
            vec![f(&["1", "0"]), f(&["1", "1"])],
        )
        .is_err());
    }
}
