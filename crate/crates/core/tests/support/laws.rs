//! Randomized law checks shared between the property suite and the
//! acceptance gate. Every runner draws its inputs from a deterministic
//! seeded generator, exercises exactly `cases` samples, and returns how
//! many it ran — or a description of the first violation. Infrastructure
//! failures (bad chart, mixed dimensions) panic: they mean the harness
//! itself is wrong, not the law.

use flatlab::catalog::{
    affine_line_algebra, euclidean_chart, flat_space, half_plane_connection,
    left_symmetric_catalogue, punctured_line_chart,
};
use flatlab::connection::{
    check_bracket_compat, commutator_field, covariant_derivative, is_flat_affine, torsion,
    Chart, Connection, VectorField,
};
use flatlab::exactmath::span::{rational_coords, vectorize_fields};
use flatlab::exactmath::{rat, Rational, RationalFunction};
use flatlab::framebundle::{
    bundle_bracket, fundamental_vertical, matrix_is_zero, natural_lift, omega,
    standard_horizontal, theta, FrameBundleChart,
};
use flatlab::liegroup::{
    abelian_group, affine_line_group, christoffels_from_lsa, verify_left_invariance, GroupChart,
};
use flatlab::lsa::{
    affine_rep, check_left_symmetric, check_lie_homomorphism, commutator_algebra,
    matrix_envelope, RationalMatrix, StructureConstants,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default sample count per law; the acceptance gate requires at least 200.
pub const CASES: usize = 250;

type Law = fn(usize) -> Result<usize, String>;

/// Every law runner, for gates that sweep the whole suite.
pub fn all() -> Vec<(&'static str, Law)> {
    vec![
        ("direction slot is function-linear", direction_slot_is_function_linear),
        ("argument slot obeys the Leibniz rule", argument_slot_obeys_the_leibniz_rule),
        ("covariant derivative is additive", covariant_derivative_is_additive),
        ("commutator is antisymmetric and Jacobi", commutator_is_antisymmetric_and_jacobi),
        ("flat connections satisfy the curvature identity", flat_connections_satisfy_the_curvature_identity),
        ("flat affine products are left-symmetric", flat_affine_products_are_left_symmetric),
        ("torsion-free products match the bracket", torsion_free_products_match_the_bracket),
        ("affine fields multiply associatively", affine_fields_multiply_associatively),
        ("left-symmetry survives change of basis", left_symmetry_survives_change_of_basis),
        ("matrix closure is a fixed point", matrix_closure_is_a_fixed_point),
        ("field closure is a fixed point", field_closure_is_a_fixed_point),
        ("derived connections reproduce their products", derived_connections_reproduce_their_products),
        ("derived torsion tracks the bracket mismatch", derived_torsion_tracks_the_bracket_mismatch),
        ("derived flatness tracks left-symmetry", derived_flatness_tracks_left_symmetry),
        ("connection forms pair with the special fields", connection_forms_pair_with_the_special_fields),
        ("natural lifts commute with brackets", natural_lifts_commute_with_brackets),
    ]
}

fn rng_for(law: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x466c_6174_4c61_6273 ^ law)
}

fn small(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.random_range(-3..=3))
}

/// Zero half the time, so that sums stay short and sparse cases occur.
fn sparse(rng: &mut ChaCha8Rng) -> Rational {
    if rng.random_range(0..2) == 0 {
        rat(0)
    } else {
        small(rng)
    }
}

/// Exponent vectors over `n` variables with total degree at most `d`.
fn exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(n, budget - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Random polynomial on the chart, total degree ≤ `degree`, small sparse
/// integer coefficients.
fn random_function(rng: &mut ChaCha8Rng, chart: &Chart, degree: u32) -> RationalFunction {
    let vars = chart.vars();
    let mut acc = RationalFunction::zero(vars);
    for exps in exponents(chart.dim(), degree) {
        let c = sparse(rng);
        if c.is_zero() {
            continue;
        }
        let mut term = RationalFunction::constant(vars, c);
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = term.mul(&RationalFunction::var(vars, i).pow(e));
            }
        }
        acc = acc.add(&term);
    }
    acc
}

pub fn random_field(rng: &mut ChaCha8Rng, chart: &Chart, degree: u32) -> VectorField {
    let comps = (0..chart.dim()).map(|_| random_function(rng, chart, degree)).collect();
    VectorField::new(chart, comps).expect("components live on the chart")
}

/// Random polynomial connection on the plane; `symmetric` forces
/// Γᵏᵢⱼ = Γᵏⱼᵢ, i.e. zero torsion.
fn random_connection(rng: &mut ChaCha8Rng, symmetric: bool) -> Connection {
    let chart = euclidean_chart(2);
    let n = chart.dim();
    let mut gamma = vec![vec![vec![RationalFunction::zero(chart.vars()); n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if symmetric && j < i {
                    gamma[k][i][j] = gamma[k][j][i].clone();
                } else if rng.random_range(0..2) == 1 {
                    gamma[k][i][j] = random_function(rng, &chart, 1);
                }
            }
        }
    }
    Connection::new(chart, gamma).expect("valid connection")
}

/// Random unimodular change of basis: (I + strictly upper)(I + strictly
/// lower), so invertibility is structural rather than filtered for.
fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    let mut u = RationalMatrix::identity(n);
    let mut l = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if j > i {
                u.set(i, j, small(rng));
            }
            if j < i {
                l.set(i, j, small(rng));
            }
        }
    }
    u.mul(&l)
}

/// Structure constants of the same product in the basis given by the
/// columns of `p`.
fn change_of_basis(a: &StructureConstants, p: &RationalMatrix) -> StructureConstants {
    let n = a.dim();
    let columns: Vec<Vec<Rational>> =
        (0..n).map(|d| (0..n).map(|i| p.get(i, d).clone()).collect()).collect();
    let mut cube = vec![vec![vec![rat(0); n]; n]; n];
    for (ai, ca) in columns.iter().enumerate() {
        for (bi, cb) in columns.iter().enumerate() {
            let v = a.product(ca, cb);
            cube[ai][bi] =
                rational_coords(&columns, &v).expect("the new basis is invertible");
        }
    }
    let labels = (1..=n).map(|i| format!("f{i}")).collect();
    StructureConstants::new(labels, cube).expect("well-formed constants")
}

/// A random left-symmetric product: a catalogue algebra rewritten in a
/// random basis (left-symmetry is basis-independent).
fn random_left_symmetric(rng: &mut ChaCha8Rng) -> StructureConstants {
    let catalogue = left_symmetric_catalogue();
    let pick = rng.random_range(0..catalogue.len());
    let a = &catalogue[pick].1;
    let p = random_invertible(rng, a.dim());
    change_of_basis(a, &p)
}

/// Arbitrary (usually not left-symmetric) structure constants.
fn random_constants(rng: &mut ChaCha8Rng, n: usize) -> StructureConstants {
    let mut cube = vec![vec![vec![rat(0); n]; n]; n];
    for row in cube.iter_mut() {
        for cell in row.iter_mut() {
            for entry in cell.iter_mut() {
                *entry = sparse(rng);
            }
        }
    }
    let labels = (1..=n).map(|i| format!("f{i}")).collect();
    StructureConstants::new(labels, cube).expect("well-formed constants")
}

/// The affine-line product perturbed only in its symmetric part, so the
/// commutator (hence the bracket match with the frame) is untouched.
/// Roughly one case in six keeps the product unperturbed.
fn bracket_matched_perturbation(rng: &mut ChaCha8Rng) -> StructureConstants {
    let base = affine_line_algebra();
    let n = base.dim();
    let keep = rng.random_range(0..6) == 0;
    let mut cube = vec![vec![vec![rat(0); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                cube[i][j][k] = base.coefficient(i, j, k).clone();
            }
        }
    }
    if !keep {
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let s = sparse(rng);
                    cube[i][j][k] += s.clone();
                    if j != i {
                        cube[j][i][k] += s;
                    }
                }
            }
        }
    }
    let labels = (1..=n).map(|i| format!("f{i}")).collect();
    StructureConstants::new(labels, cube).expect("well-formed constants")
}

/// ∇_(fX)Y = f·∇_X Y for arbitrary connections.
pub fn direction_slot_is_function_linear(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(1);
    for case in 0..cases {
        let conn = random_connection(&mut rng, false);
        let f = random_function(&mut rng, conn.chart(), 2);
        let x = random_field(&mut rng, conn.chart(), 2);
        let y = random_field(&mut rng, conn.chart(), 2);
        let fx = x.scale_fn(&f).expect("same chart");
        let lhs = covariant_derivative(&conn, &fx, &y).expect("same chart");
        let rhs = covariant_derivative(&conn, &x, &y)
            .expect("same chart")
            .scale_fn(&f)
            .expect("same chart");
        if lhs != rhs {
            return Err(format!("case {case}: scaling the direction did not factor out"));
        }
    }
    Ok(cases)
}

/// ∇_X(gY) = X(g)·Y + g·∇_X Y for arbitrary connections.
pub fn argument_slot_obeys_the_leibniz_rule(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(2);
    for case in 0..cases {
        let conn = random_connection(&mut rng, false);
        let g = random_function(&mut rng, conn.chart(), 2);
        let x = random_field(&mut rng, conn.chart(), 2);
        let y = random_field(&mut rng, conn.chart(), 2);
        let gy = y.scale_fn(&g).expect("same chart");
        let lhs = covariant_derivative(&conn, &x, &gy).expect("same chart");
        let xg = x.apply(&g).expect("same chart");
        let rhs = y
            .scale_fn(&xg)
            .expect("same chart")
            .add(&covariant_derivative(&conn, &x, &y).expect("same chart").scale_fn(&g).expect("same chart"))
            .expect("same chart");
        if lhs != rhs {
            return Err(format!("case {case}: Leibniz rule failed"));
        }
    }
    Ok(cases)
}

/// ∇ is additive in both slots.
pub fn covariant_derivative_is_additive(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(3);
    for case in 0..cases {
        let conn = random_connection(&mut rng, false);
        let x1 = random_field(&mut rng, conn.chart(), 2);
        let x2 = random_field(&mut rng, conn.chart(), 2);
        let y1 = random_field(&mut rng, conn.chart(), 2);
        let y2 = random_field(&mut rng, conn.chart(), 2);
        let d = |a: &VectorField, b: &VectorField| covariant_derivative(&conn, a, b).expect("same chart");
        let sum = |a: &VectorField, b: &VectorField| a.add(b).expect("same chart");
        if d(&sum(&x1, &x2), &y1) != sum(&d(&x1, &y1), &d(&x2, &y1)) {
            return Err(format!("case {case}: direction slot not additive"));
        }
        if d(&x1, &sum(&y1, &y2)) != sum(&d(&x1, &y1), &d(&x1, &y2)) {
            return Err(format!("case {case}: argument slot not additive"));
        }
    }
    Ok(cases)
}

/// [X,Y] = −[Y,X] and the Jacobi identity for vector fields.
pub fn commutator_is_antisymmetric_and_jacobi(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(4);
    let chart = euclidean_chart(2);
    for case in 0..cases {
        let x = random_field(&mut rng, &chart, 2);
        let y = random_field(&mut rng, &chart, 2);
        let z = random_field(&mut rng, &chart, 2);
        let br = |a: &VectorField, b: &VectorField| commutator_field(a, b).expect("same chart");
        if !br(&x, &y).add(&br(&y, &x)).expect("same chart").is_zero() {
            return Err(format!("case {case}: bracket not antisymmetric"));
        }
        let cyclic = br(&br(&x, &y), &z)
            .add(&br(&br(&y, &z), &x))
            .expect("same chart")
            .add(&br(&br(&z, &x), &y))
            .expect("same chart");
        if !cyclic.is_zero() {
            return Err(format!("case {case}: Jacobi identity failed"));
        }
    }
    Ok(cases)
}

/// For flat connections, ∇_X ∇_Y Z − ∇_Y ∇_X Z = ∇_[X,Y] Z.
pub fn flat_connections_satisfy_the_curvature_identity(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(5);
    let conns = [flat_space(2), half_plane_connection()];
    for case in 0..cases {
        let conn = &conns[case % conns.len()];
        let x = random_field(&mut rng, conn.chart(), 2);
        let y = random_field(&mut rng, conn.chart(), 2);
        let z = random_field(&mut rng, conn.chart(), 2);
        let d = |a: &VectorField, b: &VectorField| covariant_derivative(conn, a, b).expect("same chart");
        let lhs = d(&x, &d(&y, &z)).sub(&d(&y, &d(&x, &z))).expect("same chart");
        let rhs = d(&commutator_field(&x, &y).expect("same chart"), &z);
        if lhs != rhs {
            return Err(format!("case {case}: curvature identity failed"));
        }
    }
    Ok(cases)
}

/// For flat affine connections the ∇-product is left-symmetric on all
/// fields: the associator (XY)Z − X(YZ) is symmetric in X and Y.
pub fn flat_affine_products_are_left_symmetric(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(6);
    let conns = [flat_space(2), half_plane_connection()];
    for case in 0..cases {
        let conn = &conns[case % conns.len()];
        let x = random_field(&mut rng, conn.chart(), 2);
        let y = random_field(&mut rng, conn.chart(), 2);
        let z = random_field(&mut rng, conn.chart(), 2);
        let d = |a: &VectorField, b: &VectorField| covariant_derivative(conn, a, b).expect("same chart");
        let assoc = |a: &VectorField, b: &VectorField| {
            d(&d(a, b), &z).sub(&d(a, &d(b, &z))).expect("same chart")
        };
        if assoc(&x, &y) != assoc(&y, &x) {
            return Err(format!("case {case}: associator not symmetric"));
        }
    }
    Ok(cases)
}

/// For torsion-free connections, ∇_X Y − ∇_Y X = [X,Y].
pub fn torsion_free_products_match_the_bracket(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(7);
    for case in 0..cases {
        let conn = random_connection(&mut rng, true);
        let x = random_field(&mut rng, conn.chart(), 2);
        let y = random_field(&mut rng, conn.chart(), 2);
        if !check_bracket_compat(&conn, &x, &y).expect("same chart").holds() {
            return Err(format!("case {case}: symmetric Christoffels left torsion behind"));
        }
    }
    Ok(cases)
}

/// Under the standard flat connection, fields with affine components
/// multiply associatively: (XY)Z = X(YZ).
pub fn affine_fields_multiply_associatively(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(8);
    let conn = flat_space(2);
    for case in 0..cases {
        let x = random_field(&mut rng, conn.chart(), 1);
        let y = random_field(&mut rng, conn.chart(), 1);
        let z = random_field(&mut rng, conn.chart(), 1);
        let d = |a: &VectorField, b: &VectorField| covariant_derivative(&conn, a, b).expect("same chart");
        if d(&d(&x, &y), &z) != d(&x, &d(&y, &z)) {
            return Err(format!("case {case}: affine product not associative"));
        }
    }
    Ok(cases)
}

/// Left-symmetry is basis-independent, its commutator always satisfies
/// Jacobi, and left multiplications plus translations represent that Lie
/// algebra faithfully as a homomorphism.
pub fn left_symmetry_survives_change_of_basis(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(9);
    for case in 0..cases {
        let a = random_left_symmetric(&mut rng);
        if !check_left_symmetric(&a).holds() {
            return Err(format!("case {case}: change of basis broke left-symmetry"));
        }
        let lie = match commutator_algebra(&a) {
            Ok(l) => l,
            Err(e) => return Err(format!("case {case}: commutator not a Lie bracket: {e}")),
        };
        let reps = affine_rep(&a).expect("left-symmetric input");
        if !check_lie_homomorphism(&reps, &lie).holds() {
            return Err(format!("case {case}: affine representation not a homomorphism"));
        }
    }
    Ok(cases)
}

/// Closing a matrix set twice adds nothing, and the recorded table really
/// is the multiplication table of the closure basis.
pub fn matrix_closure_is_a_fixed_point(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(10);
    for case in 0..cases {
        // 3×3 closures routinely saturate the full 9-dimensional matrix
        // algebra and re-closing that is costly, so sample them sparsely.
        let n = if case % 8 == 7 { 3 } else { 2 };
        let cap = n * n + 1;
        let count = rng.random_range(1..=2);
        let generators: Vec<RationalMatrix> = (0..count)
            .map(|_| {
                let mut m = RationalMatrix::zero(n);
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, j, sparse(&mut rng));
                    }
                }
                m
            })
            .collect();
        let closed = matrix_envelope(&generators, cap).expect("matrix algebras are bounded");
        let again = matrix_envelope(&closed.basis, cap).expect("still bounded");
        if again.dim() != closed.dim() {
            return Err(format!(
                "case {case}: reclosing went from {} to {}",
                closed.dim(),
                again.dim()
            ));
        }
        // Spot-check the recorded multiplication table on a few entries;
        // re-closing above already guarantees the span is right. All-zero
        // generators close to the empty basis, which has no table.
        for _ in 0..4 * usize::from(closed.dim() > 0) {
            let i = rng.random_range(0..closed.dim());
            let j = rng.random_range(0..closed.dim());
            let mut combo = RationalMatrix::zero(n);
            for (k, c) in closed.product_coords(i, j).iter().enumerate() {
                combo = combo.add(&closed.basis[k].scale(c));
            }
            if combo != closed.basis[i].mul(&closed.basis[j]) {
                return Err(format!("case {case}: table entry ({i},{j}) wrong"));
            }
        }
    }
    Ok(cases)
}

/// The same fixed-point and table checks for ∇-closures of vector fields.
pub fn field_closure_is_a_fixed_point(cases: usize) -> Result<usize, String> {
    use flatlab::connection::envelope_fields;
    let mut rng = rng_for(11);
    let conn = flat_space(2);
    for case in 0..cases {
        let count = rng.random_range(1..=2);
        let generators: Vec<VectorField> =
            (0..count).map(|_| random_field(&mut rng, conn.chart(), 1)).collect();
        let closed = match envelope_fields(&conn, &generators, 7) {
            Ok(c) => c,
            Err(e) => return Err(format!("case {case}: closure failed: {e}")),
        };
        let again = envelope_fields(&conn, &closed.basis, 7).expect("already closed");
        if again.dim() != closed.dim() {
            return Err(format!(
                "case {case}: reclosing went from {} to {}",
                closed.dim(),
                again.dim()
            ));
        }
        for _ in 0..4 * usize::from(closed.dim() > 0) {
            let i = rng.random_range(0..closed.dim());
            let j = rng.random_range(0..closed.dim());
            let mut combo = VectorField::zero(conn.chart());
            for (k, c) in closed.product_coords(i, j).iter().enumerate() {
                combo = combo.add(&closed.basis[k].scale(c)).expect("same chart");
            }
            let product = covariant_derivative(&conn, &closed.basis[i], &closed.basis[j])
                .expect("same chart");
            if combo != product {
                return Err(format!("case {case}: table entry ({i},{j}) wrong"));
            }
        }
    }
    Ok(cases)
}

/// The connection derived from frame products reproduces those products,
/// whatever the structure constants are.
pub fn derived_connections_reproduce_their_products(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(12);
    let groups = [affine_line_group(), abelian_group(2)];
    for case in 0..cases {
        let g = &groups[case % groups.len()];
        let a = random_constants(&mut rng, g.dim());
        let conn = christoffels_from_lsa(g, &a).expect("frame is invertible");
        if !verify_left_invariance(g, &conn, &a).expect("matched dimensions").holds() {
            return Err(format!("case {case}: round trip lost the products"));
        }
    }
    Ok(cases)
}

/// Coordinates of the frame brackets [eᵢ⁺, eⱼ⁺] in the frame itself.
fn frame_bracket_constants(g: &GroupChart) -> Vec<Vec<Vec<Rational>>> {
    let n = g.dim();
    let mut all: Vec<Vec<RationalFunction>> =
        g.left_frame().iter().map(|f| f.components().to_vec()).collect();
    let mut out = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let br = commutator_field(&g.left_frame()[i], &g.left_frame()[j]).expect("same chart");
            all.push(br.components().to_vec());
            let vecs = vectorize_fields(&all).expect("polynomial frames");
            out[i][j] = rational_coords(&vecs[..n], &vecs[n])
                .expect("left frames close under brackets");
            all.pop();
        }
    }
    out
}

/// The derived connection is torsion-free exactly when the product's
/// commutator equals the frame's own bracket constants.
pub fn derived_torsion_tracks_the_bracket_mismatch(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(13);
    let g = affine_line_group();
    let frame_brackets = frame_bracket_constants(&g);
    let n = g.dim();
    for case in 0..cases {
        let a = if case % 2 == 0 {
            random_constants(&mut rng, n)
        } else {
            bracket_matched_perturbation(&mut rng)
        };
        let conn = christoffels_from_lsa(&g, &a).expect("frame is invertible");
        let torsion_free = torsion(&conn)
            .iter()
            .all(|p| p.iter().all(|q| q.iter().all(|f| f.is_zero())));
        let brackets_match = (0..n).all(|i| {
            (0..n).all(|j| {
                let xy = a.basis_product(i, j);
                let yx = a.basis_product(j, i);
                (0..n).all(|k| xy[k].clone() - yx[k].clone() == frame_brackets[i][j][k])
            })
        });
        if torsion_free != brackets_match {
            return Err(format!(
                "case {case}: torsion-free={torsion_free} but brackets-match={brackets_match}"
            ));
        }
    }
    Ok(cases)
}

/// Among products whose commutator matches the frame bracket, the derived
/// connection is flat affine exactly when the product is left-symmetric.
pub fn derived_flatness_tracks_left_symmetry(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(14);
    let g = affine_line_group();
    for case in 0..cases {
        let a = bracket_matched_perturbation(&mut rng);
        let conn = christoffels_from_lsa(&g, &a).expect("frame is invertible");
        let flat = is_flat_affine(&conn).holds();
        let left_symmetric = check_left_symmetric(&a).holds();
        if flat != left_symmetric {
            return Err(format!(
                "case {case}: flat={flat} but left-symmetric={left_symmetric}"
            ));
        }
    }
    Ok(cases)
}

/// θ reads the horizontal direction back off and kills verticals; ω reads
/// the vertical generator back off and kills horizontals.
pub fn connection_forms_pair_with_the_special_fields(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(15);
    let setups: Vec<_> = [flat_space(2), half_plane_connection()]
        .into_iter()
        .map(|conn| {
            let fb = FrameBundleChart::new(conn.chart()).expect("frame bundle chart");
            let theta_form = theta(&fb);
            let omega_form = omega(&fb, &conn).expect("same base chart");
            (fb, conn, theta_form, omega_form)
        })
        .collect();
    for case in 0..cases {
        let (fb, conn, theta_form, omega_form) = &setups[case % setups.len()];
        let vars = fb.bundle_chart().vars();
        let n = fb.dim();

        let xi: Vec<Rational> = (0..n).map(|_| small(&mut rng)).collect();
        let h = standard_horizontal(fb, conn, &xi).expect("same base chart");
        let th = theta_form.eval(&h).expect("bundle field");
        for (i, v) in xi.iter().enumerate() {
            if th.get(i, 0) != &RationalFunction::constant(vars, v.clone()) {
                return Err(format!("case {case}: horizontal direction misread by the frame form"));
            }
        }
        if !matrix_is_zero(&omega_form.eval(&h).expect("bundle field")) {
            return Err(format!("case {case}: horizontal field not in the connection kernel"));
        }

        let mut a = RationalMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, small(&mut rng));
            }
        }
        let v = fundamental_vertical(fb, &a);
        if !matrix_is_zero(&theta_form.eval(&v).expect("bundle field")) {
            return Err(format!("case {case}: vertical field seen by the frame form"));
        }
        let ov = omega_form.eval(&v).expect("bundle field");
        for i in 0..n {
            for j in 0..n {
                if ov.get(i, j) != &RationalFunction::constant(vars, a.get(i, j).clone()) {
                    return Err(format!("case {case}: vertical generator misread"));
                }
            }
        }
    }
    Ok(cases)
}

/// The natural lift of base fields is a bracket homomorphism:
/// L([X,Y]) = [L(X), L(Y)].
pub fn natural_lifts_commute_with_brackets(cases: usize) -> Result<usize, String> {
    let mut rng = rng_for(16);
    let chart = punctured_line_chart();
    let fb = FrameBundleChart::new(&chart).expect("frame bundle chart");
    for case in 0..cases {
        let x = random_field(&mut rng, &chart, 2);
        let y = random_field(&mut rng, &chart, 2);
        let lifted_bracket = natural_lift(
            &fb,
            &commutator_field(&x, &y).expect("same chart"),
        )
        .expect("same base chart");
        let bracket_of_lifts = bundle_bracket(
            &natural_lift(&fb, &x).expect("same base chart"),
            &natural_lift(&fb, &y).expect("same base chart"),
        )
        .expect("same bundle chart");
        if lifted_bracket.as_field() != bracket_of_lifts.as_field() {
            return Err(format!("case {case}: lift is not a bracket homomorphism"));
        }
    }
    Ok(cases)
}
