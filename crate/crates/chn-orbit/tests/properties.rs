//! Property-based invariants over randomly sampled vectors.

use chn_orbit::scalar::{rat_int, Rat};
use chn_orbit::subalg::lie_span;
use chn_orbit::*;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

fn ctx2() -> &'static Arc<AlgebraContext> {
    static CTX: OnceLock<Arc<AlgebraContext>> = OnceLock::new();
    CTX.get_or_init(|| build_algebra(2).unwrap())
}

fn ctx3() -> &'static Arc<AlgebraContext> {
    static CTX: OnceLock<Arc<AlgebraContext>> = OnceLock::new();
    CTX.get_or_init(|| build_algebra(3).unwrap())
}

fn vector_from(ctx: &AlgebraContext, coeffs: &[i64]) -> LieVector {
    let mut v = LieVector::zero(ctx.n);
    let dim = v.coeffs.len();
    for (i, c) in coeffs.iter().enumerate() {
        v.coeffs[i % dim] += rat_int(*c);
    }
    v
}

fn an_vector_from(ctx: &AlgebraContext, coeffs: &[i64]) -> LieVector {
    let an: Vec<Rat> = (0..2 * ctx.n)
        .map(|i| rat_int(*coeffs.get(i).unwrap_or(&0)))
        .collect();
    ctx.from_an_coords(&an)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric_and_bilinear(
        a in proptest::collection::vec(-3i64..=3, 8),
        b in proptest::collection::vec(-3i64..=3, 8),
        c in -3i64..=3,
    ) {
        let ctx = ctx2();
        let x = vector_from(ctx, &a);
        let y = vector_from(ctx, &b);
        let xy = ctx.bracket(&x, &y).unwrap();
        let yx = ctx.bracket(&y, &x).unwrap();
        prop_assert_eq!(xy.clone(), yx.neg());
        let scaled = ctx.bracket(&x.scale(&rat_int(c)), &y).unwrap();
        prop_assert_eq!(scaled, xy.scale(&rat_int(c)));
    }

    #[test]
    fn jacobi_identity_holds(
        a in proptest::collection::vec(-2i64..=2, 8),
        b in proptest::collection::vec(-2i64..=2, 8),
        c in proptest::collection::vec(-2i64..=2, 8),
    ) {
        let ctx = ctx2();
        let x = vector_from(ctx, &a);
        let y = vector_from(ctx, &b);
        let z = vector_from(ctx, &c);
        let t1 = ctx.bracket(&x, &ctx.bracket(&y, &z).unwrap()).unwrap();
        let t2 = ctx.bracket(&y, &ctx.bracket(&z, &x).unwrap()).unwrap();
        let t3 = ctx.bracket(&z, &ctx.bracket(&x, &y).unwrap()).unwrap();
        prop_assert!(t1.add(&t2).add(&t3).is_zero());
    }

    #[test]
    fn killing_form_is_ad_invariant(
        a in proptest::collection::vec(-2i64..=2, 8),
        b in proptest::collection::vec(-2i64..=2, 8),
        c in proptest::collection::vec(-2i64..=2, 8),
    ) {
        let ctx = ctx2();
        let x = vector_from(ctx, &a);
        let y = vector_from(ctx, &b);
        let w = vector_from(ctx, &c);
        let lhs = ctx.killing(&ctx.bracket(&x, &y).unwrap(), &w).unwrap();
        let rhs = ctx.killing(&y, &ctx.bracket(&x, &w).unwrap()).unwrap();
        prop_assert!((lhs + rhs).is_zero());
    }

    #[test]
    fn metric_is_symmetric_and_positive(
        a in proptest::collection::vec(-4i64..=4, 6),
        b in proptest::collection::vec(-4i64..=4, 6),
    ) {
        let ctx = ctx3();
        let x = an_vector_from(ctx, &a);
        let y = an_vector_from(ctx, &b);
        prop_assert_eq!(ctx.metric(&x, &y).unwrap(), ctx.metric(&y, &x).unwrap());
        let n2 = ctx.metric(&x, &x).unwrap();
        if x.is_zero() {
            prop_assert!(n2.is_zero());
        } else {
            prop_assert!(n2.is_positive());
        }
    }

    #[test]
    fn complex_structure_is_orthogonal_and_skew(
        a in proptest::collection::vec(-4i64..=4, 6),
        b in proptest::collection::vec(-4i64..=4, 6),
    ) {
        let ctx = ctx3();
        let x = an_vector_from(ctx, &a);
        let y = an_vector_from(ctx, &b);
        let jx = ctx.complex_structure(&x).unwrap();
        let jy = ctx.complex_structure(&y).unwrap();
        prop_assert_eq!(ctx.metric(&jx, &jy).unwrap(), ctx.metric(&x, &y).unwrap());
        prop_assert_eq!(
            ctx.metric(&jx, &y).unwrap(),
            -ctx.metric(&x, &jy).unwrap()
        );
        prop_assert_eq!(
            ctx.complex_structure(&jx).unwrap(),
            x.neg()
        );
    }

    #[test]
    fn psi_is_an_isometry_with_trivial_k_component(
        a in proptest::collection::vec(-4i64..=4, 6),
        b in proptest::collection::vec(-4i64..=4, 6),
    ) {
        let ctx = ctx3();
        let x = an_vector_from(ctx, &a);
        let y = an_vector_from(ctx, &b);
        let px = ctx.psi(&x).unwrap();
        let py = ctx.psi(&y).unwrap();
        prop_assert_eq!(ctx.qtheta(&px, &py).unwrap(), ctx.metric(&x, &y).unwrap());
        // (1 - theta)/2 lands in p: theta acts as -1 on the image
        let tpx = ctx.cartan_involution(&px).unwrap();
        prop_assert_eq!(tpx, px.neg());
        prop_assert_eq!(ctx.psi_inverse(&px).unwrap(), x);
    }

    #[test]
    fn sff_is_symmetric_on_horosphere_tangents(
        a in proptest::collection::vec(-3i64..=3, 5),
        b in proptest::collection::vec(-3i64..=3, 5),
    ) {
        let ctx = ctx3();
        let mut gens = ctx.adapted_galpha();
        gens.push(ctx.z());
        let h = Subalgebra::new(ctx.clone(), gens).unwrap();
        // tangent = g_a + g_2a: coordinates [0, a.., b_last]
        let mut an = vec![Rat::zero(); 6];
        for (i, c) in a.iter().enumerate() {
            an[1 + i] = rat_int(*c);
        }
        let x = ctx.from_an_coords(&an);
        let mut an = vec![Rat::zero(); 6];
        for (i, c) in b.iter().enumerate() {
            an[1 + i] = rat_int(*c);
        }
        let y = ctx.from_an_coords(&an);
        let ii_xy = sff_an(&h, &x, &y).unwrap();
        let ii_yx = sff_an(&h, &y, &x).unwrap();
        prop_assert_eq!(ii_xy.clone(), ii_yx);
        prop_assert_eq!(sff_p(&h, &x, &y).unwrap(), ii_xy);
    }
}

#[test]
fn diagonal_sff_matches_the_reduced_formula() {
    // On the diagonal the general formula collapses to
    // ((|U|^2/2 + x^2) B - (a/2) U - x JU + [T,U] - a x Z)^perp.
    let ctx = ctx3();
    let gens = vec![
        ctx.b().add(&ctx.t(0)),
        ctx.e(0),
        ctx.f(0),
        ctx.e(1),
        ctx.f(1),
        ctx.z(),
    ];
    let h = lie_span(ctx, &gens).unwrap();
    let split = tangent_normal(&h).unwrap();
    let samples = [
        ctx.b().add(&ctx.e(0).scale(&rat_int(2))),
        ctx.z().add(&ctx.f(1)),
        ctx.b().add(&ctx.z()).add(&ctx.e(1)),
    ];
    for x in samples {
        let an = ctx.an_coords(&x).unwrap();
        let a = an[0].clone();
        let zc = an[2 * ctx.n - 1].clone();
        let mut u_an = an.clone();
        u_an[0] = Rat::zero();
        u_an[2 * ctx.n - 1] = Rat::zero();
        let u = ctx.from_an_coords(&u_an);
        let t = h.phi(&x).unwrap();
        let ju = ctx.complex_structure(&u).unwrap();
        let u2 = ctx.metric(&u, &u).unwrap();
        let term = ctx
            .b()
            .scale(&(u2 / rat_int(2) + &zc * &zc))
            .sub(&u.scale(&(&a / rat_int(2))))
            .sub(&ju.scale(&zc))
            .add(&ctx.bracket(&t, &u).unwrap())
            .sub(&ctx.z().scale(&(&a * &zc)));
        let reduced = split.project_normal(&term).unwrap();
        assert_eq!(sff_an(&h, &x, &x).unwrap(), reduced);
    }
}

#[test]
fn context_is_shareable_across_threads() {
    let ctx = build_algebra(3).unwrap();
    let handles: Vec<_> = (0..4)
        .map(|i| {
            let ctx = ctx.clone();
            std::thread::spawn(move || {
                let h = if i % 2 == 0 {
                    Subalgebra::new(ctx.clone(), vec![ctx.e(0)]).unwrap()
                } else {
                    let mut gens = ctx.adapted_galpha();
                    gens.push(ctx.z());
                    Subalgebra::new(ctx.clone(), gens).unwrap()
                };
                mean_curvature(&h).unwrap()
            })
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert_eq!(results[0], ctx.b().scale(&chn_orbit::scalar::rat(1, 2)));
    assert_eq!(results[1], ctx.b().scale(&rat_int(3)));
}

#[test]
fn sandwich_outcome_survives_enlarging_q() {
    // twisted complex-plane family, then the same orbit data with an extra
    // central k0 direction adjoined to q
    let ctx = ctx3();
    let spec = SubspaceSpec::Complex { dim: 2 };
    let m = realize_subspace(ctx, &spec).unwrap();
    let t = solve_twist(ctx, &m).unwrap().unwrap();
    let h = build_twisted(ctx, &spec, &t, true).unwrap();
    let h_prime = build_family_b(ctx, &spec).unwrap();
    assert!(verify_sandwich(&h, &h_prime).unwrap());

    // central element of k0: acts complex-linearly, commutes with T,
    // normalizes the complex plane
    let s = solve_k0_action(
        ctx,
        &[
            (ctx.e(0), ctx.f(0)),
            (ctx.f(0), ctx.e(0).neg()),
            (ctx.e(1), ctx.f(1)),
            (ctx.f(1), ctx.e(1).neg()),
        ],
    )
    .unwrap()
    .expect("the central rotation exists in k0");
    let mut gens = h.generators().to_vec();
    gens.push(s);
    let enlarged = lie_span(ctx, &gens).unwrap();
    assert!(enlarged.decomposition().q.len() > h.decomposition().q.len());
    assert!(verify_sandwich(&enlarged, &h_prime).unwrap());
}

#[test]
fn corpus_classification_is_exhaustive_and_certified() {
    // every closed subalgebra in the corpus classifies: minimal orbits land
    // in one of the two canonical families (or are points), and everything
    // else carries an exact positive certificate
    for n in 2..=3 {
        let ctx = build_algebra(n).unwrap();
        let corpus = generate_corpus(&ctx, 11, 40).unwrap();
        for (idx, h) in corpus.iter().enumerate() {
            let v = match_classification(h).unwrap();
            if v.minimal {
                match v.label {
                    Label::Point => {}
                    _ => {
                        assert!(
                            matches!(v.family, Family::A | Family::B),
                            "minimal corpus #{idx} at n = {n} outside the families"
                        );
                        let red = v.reduction.expect("reduction recorded");
                        assert!(red.sandwich_verified, "corpus #{idx} at n = {n}");
                    }
                }
            } else {
                let cert = v.certificate.expect("certificate for non-minimal");
                assert!(
                    cert.value.is_positive(),
                    "non-positive certificate on corpus #{idx} at n = {n}"
                );
                // the certificate pairing is the actual inner product
                let mean = mean_curvature(h).unwrap();
                assert_eq!(ctx.metric(&mean, &cert.xi).unwrap(), cert.value);
            }
        }
    }
}

#[test]
fn conjugation_moves_between_leaves_of_the_solvable_foliation() {
    // h = a + m + g_2a with m a hyperplane: the group acts with one minimal
    // orbit; conjugating by one of its own elements keeps the orbit (and
    // the verdict), while conjugating by an outside direction lands on a
    // different, non-minimal leaf.
    let ctx = ctx2();
    let h = build_family_b(ctx, &SubspaceSpec::Hyperplane).unwrap();
    let v = match_classification(&h).unwrap();
    assert_eq!(v.label, Label::Lohnherr);

    // E1 generates a one-parameter subgroup inside H: same orbit
    let inside = GroupElement::n_exp(ctx, &ctx.e(0)).unwrap();
    let h_same = conjugate_to_base_point(&h, &inside).unwrap();
    let v_same = match_classification(&h_same).unwrap();
    assert!(v_same.minimal);
    assert_eq!(v_same.label, Label::Lohnherr);

    // F1 is normal to the orbit: a genuinely different leaf
    let outside = GroupElement::n_exp(ctx, &ctx.f(0)).unwrap();
    let h_leaf = conjugate_to_base_point(&h, &outside).unwrap();
    let v_leaf = match_classification(&h_leaf).unwrap();
    assert!(!v_leaf.minimal, "other leaves of the foliation bend");
    let cert = v_leaf.certificate.unwrap();
    assert!(cert.value.is_positive());
    // the conjugated algebra picked up a g_a-component on its a-direction
    let dc = h_leaf.decomposition();
    assert!(dc.a && dc.x && !dc.u.is_zero());
    // and the identity suite still closes exactly on it
    assert!(verify_identities(&h_leaf).unwrap().all_pass());
}
