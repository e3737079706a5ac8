//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line. Every assertion here is exact (zero tolerance) unless a
//! wall-clock bound is part of the criterion.

use chn_orbit::algebra::{RootSpace, ROOT_SPACES};
use chn_orbit::scalar::{rat, rat_int, Rat};
use chn_orbit::*;
use num_traits::One;
use std::sync::Arc;
use std::time::Instant;

const CORPUS_SEED: u64 = 7;

fn unit_vector(n: usize, dim: usize, i: usize) -> LieVector {
    let mut v = LieVector::zero(n);
    let _ = dim;
    v.coeffs[i] = Rat::one();
    v
}

fn horosphere(ctx: &Arc<AlgebraContext>) -> Subalgebra {
    let mut gens = ctx.adapted_galpha();
    gens.push(ctx.z());
    Subalgebra::new(ctx.clone(), gens).unwrap()
}

#[test]
fn criterion_1_structure_suite() {
    let start = Instant::now();
    for n in 2..=6 {
        let ctx = build_algebra(n).unwrap();
        let rep = ctx.verify_an_brackets();
        assert!(
            rep.all_pass(),
            "bracket relations failed at n = {n}: {:?}",
            rep.failures()
        );
        let rep = ctx.verify_involution_identities();
        assert!(
            rep.all_pass(),
            "involution identities failed at n = {n}: {:?}",
            rep.failures()
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "structure suite took {elapsed:?} (budget 10 s)"
    );
    println!("criterion 1 (structure suite, n = 2..6, exact, {elapsed:?}): PASS");
}

#[test]
fn criterion_2_grading_and_jacobi() {
    for n in 2..=4 {
        let ctx = build_algebra(n).unwrap();
        // root-space grading: [g_l, g_m] inside g_{l+m}
        for s1 in ROOT_SPACES {
            for s2 in ROOT_SPACES {
                let sum = s1.twice_eigenvalue() + s2.twice_eigenvalue();
                let allowed: Vec<RootSpace> = ROOT_SPACES
                    .into_iter()
                    .filter(|s| s.twice_eigenvalue() == sum)
                    .collect();
                for x in ctx.root_space_basis(s1) {
                    for y in ctx.root_space_basis(s2) {
                        let br = ctx.bracket(&x, &y).unwrap();
                        if allowed.is_empty() {
                            assert!(br.is_zero(), "grading violated at n = {n}");
                        } else {
                            assert!(
                                ctx.in_root_spaces(&br, &allowed).unwrap(),
                                "grading violated at n = {n}: [{s1:?}, {s2:?}]"
                            );
                        }
                    }
                }
            }
        }
        // Jacobi identity on all ambient basis triples
        let dim = ctx.dim;
        let basis: Vec<LieVector> = (0..dim).map(|i| unit_vector(n, dim, i)).collect();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let bij = ctx.bracket(&basis[i], &basis[j]).unwrap();
                for k in (j + 1)..dim {
                    let t1 = ctx
                        .bracket(&basis[i], &ctx.bracket(&basis[j], &basis[k]).unwrap())
                        .unwrap();
                    let t2 = ctx
                        .bracket(&basis[j], &ctx.bracket(&basis[k], &basis[i]).unwrap())
                        .unwrap();
                    let t3 = ctx.bracket(&basis[k], &bij).unwrap();
                    assert!(
                        t1.add(&t2).add(&t3).is_zero(),
                        "Jacobi failed at n = {n}, triple ({i},{j},{k})"
                    );
                }
            }
        }
    }
    println!("criterion 2 (grading + Jacobi, n = 2..4, exact): PASS");
}

#[test]
fn criterion_3_oracle_equivalence() {
    for n in 2..=4 {
        let ctx = build_algebra(n).unwrap();
        let corpus = generate_corpus(&ctx, CORPUS_SEED, 100).unwrap();
        assert!(corpus.len() >= 100);
        let mut koszul_checked = 0usize;
        for (idx, h) in corpus.iter().enumerate() {
            let tg = h.decomposition().tangent_generators();
            let inside_an = h.is_inside_an();
            for i in 0..tg.len() {
                for j in i..tg.len() {
                    let via_an = sff_an(h, &tg[i].0, &tg[j].0).unwrap();
                    let via_p = sff_p(h, &tg[i].0, &tg[j].0).unwrap();
                    assert_eq!(
                        via_an, via_p,
                        "sff_p != sff_an at n = {n}, corpus #{idx}, pair ({i},{j})"
                    );
                    if inside_an {
                        let via_k = koszul_sff(h, &tg[i].0, &tg[j].0).unwrap();
                        assert_eq!(
                            via_an, via_k,
                            "koszul != sff_an at n = {n}, corpus #{idx}, pair ({i},{j})"
                        );
                        koszul_checked += 1;
                    }
                }
            }
        }
        assert!(
            koszul_checked > 0,
            "no a+n subalgebras in corpus at n = {n}"
        );
    }
    println!("criterion 3 (oracle equivalence, >= 100 subalgebras per n = 2..4, exact): PASS");
}

#[test]
fn criterion_4_minimal_families_forward() {
    let mut family_b_count = 0usize;
    let mut saw_zero = false;
    let mut saw_hyperplane = false;
    for n in 2..=5 {
        let ctx = build_algebra(n).unwrap();
        let m = n - 1;

        // family (a): totally geodesic, hence II = 0 exactly
        for dim in 0..=m {
            let h = build_family_a(&ctx, &SubspaceSpec::TotallyReal { dim }).unwrap();
            assert!(sff_tensor(&h).unwrap().is_zero(), "family (a) curved");
        }

        // family (b): minimal for every m; totally geodesic iff J m = m
        let mut specs: Vec<SubspaceSpec> = Vec::new();
        for k in 0..=m {
            specs.push(SubspaceSpec::Complex { dim: 2 * k });
        }
        for dim in 0..=2 * m {
            specs.push(SubspaceSpec::Prefix { dim });
        }
        specs.push(SubspaceSpec::Hyperplane);
        if m >= 2 {
            specs.push(SubspaceSpec::ConstantAngle {
                cos: rat(3, 5),
                sin: rat(4, 5),
                dim: 2,
            });
        }
        for spec in &specs {
            let mvecs = realize_subspace(&ctx, spec).unwrap();
            let h = build_family_b(&ctx, spec).unwrap();
            assert!(
                mean_curvature(&h).unwrap().is_zero(),
                "family (b) not minimal for {spec:?} at n = {n}"
            );
            let angles = kaehler_angles(&ctx, &mvecs).unwrap();
            assert_eq!(
                is_totally_geodesic(&h).unwrap(),
                angles.is_complex,
                "total geodesy mismatch for {spec:?} at n = {n}"
            );
            family_b_count += 1;
            if mvecs.is_empty() {
                saw_zero = true;
            }
            if angles.dim == 2 * m - 1 {
                saw_hyperplane = true;
            }
        }
    }
    assert!(
        family_b_count >= 20,
        "only {family_b_count} family (b) instances"
    );
    assert!(saw_zero && saw_hyperplane);
    println!(
        "criterion 4 (families: a totally geodesic, b minimal, geodesy iff complex, {family_b_count} instances): PASS"
    );
}

#[test]
fn criterion_5_negative_controls() {
    for n in 2..=6 {
        let ctx = build_algebra(n).unwrap();
        let h = horosphere(&ctx);
        let mean = mean_curvature(&h).unwrap();
        assert_eq!(mean, ctx.b().scale(&rat_int(n as i64)), "H(n) != n B");
        let rep = minimality_report(&h).unwrap();
        assert!(!rep.is_minimal);
        let cert = rep.certificate.unwrap();
        assert_eq!(cert.value, rat_int(n as i64));
        check_a0_certificate(&ctx, &h, &cert);
    }
    let ctx = build_algebra(3).unwrap();
    for (gens, expected) in [
        (vec![ctx.e(0)], ctx.b().scale(&rat(1, 2))),
        (vec![ctx.z()], ctx.b()),
    ] {
        let h = Subalgebra::new(ctx.clone(), gens).unwrap();
        assert_eq!(mean_curvature(&h).unwrap(), expected);
        let rep = minimality_report(&h).unwrap();
        assert!(!rep.is_minimal);
        check_a0_certificate(&ctx, &h, &rep.certificate.unwrap());
    }
    println!("criterion 5 (negative controls with positivity certificates, exact): PASS");
}

/// The certificate for decompositions without an `a`-direction must equal
/// the case expression `dim s / 2 + x (|V|^2/2 + 1 + b^2) / |X2|^2` exactly.
fn check_a0_certificate(
    ctx: &Arc<AlgebraContext>,
    h: &Subalgebra,
    cert: &NonminimalityCertificate,
) {
    let dc = h.decomposition();
    assert!(!dc.a, "controls are a = 0 cases");
    let expected_xi = ctx.b().sub(&ctx.z().scale(&dc.b));
    assert_eq!(cert.xi, expected_xi);
    let mut expected = rat_int(dc.dim_s as i64) / rat_int(2);
    if dc.x {
        let v2 = ctx.metric(&dc.v, &dc.v).unwrap();
        expected += (v2 / rat_int(2) + Rat::one() + &dc.b * &dc.b) / &dc.x2_norm2;
    }
    assert_eq!(cert.value, expected);
    assert_eq!(
        ctx.metric(&mean_curvature(h).unwrap(), &cert.xi).unwrap(),
        cert.value
    );
}

#[test]
fn criterion_6_pairing_and_trace_identities() {
    let mut branch_counts = [0usize; 3];
    for n in 2..=4 {
        let ctx = build_algebra(n).unwrap();
        let corpus = generate_corpus(&ctx, CORPUS_SEED, 100).unwrap();
        for (idx, h) in corpus.iter().enumerate() {
            let suite = verify_identities(h).unwrap();
            assert!(
                suite.all_pass(),
                "identity failure at n = {n}, corpus #{idx}: {:?}",
                suite.failures()
            );
            if let Some(b) = suite.trace_branch {
                branch_counts[b as usize - 1] += 1;
            }
        }
    }
    assert!(branch_counts[0] > 0, "trace identity branch 1 unexercised");
    assert!(branch_counts[1] > 0, "trace identity branch 2 unexercised");
    let b3 = if branch_counts[2] > 0 {
        format!("exercised {} times", branch_counts[2])
    } else {
        "unreached by the generated corpus".to_string()
    };
    println!(
        "criterion 6 (pairing + trace identities, branches 1/2/3 = {}/{}/{}; branch 3 {}): PASS",
        branch_counts[0], branch_counts[1], branch_counts[2], b3
    );
}

#[test]
fn criterion_7_sandwich_replacement() {
    for n in 2..=4 {
        let ctx = build_algebra(n).unwrap();
        let mut instances = 0usize;
        let scalings = [rat_int(1), rat_int(2), rat_int(3), rat(1, 2), rat_int(-1)];
        let mut specs: Vec<(SubspaceSpec, bool)> = vec![
            (SubspaceSpec::TotallyReal { dim: 0 }, false),
            (SubspaceSpec::TotallyReal { dim: 0 }, true),
            (SubspaceSpec::Complex { dim: 2 * (n - 1) }, true),
        ];
        if n >= 3 {
            specs.push((SubspaceSpec::TotallyReal { dim: 2 }, false));
            specs.push((SubspaceSpec::Complex { dim: 2 }, true));
            specs.push((SubspaceSpec::TotallyReal { dim: 2 }, true));
        }
        for (spec, with_z) in &specs {
            let mvecs = realize_subspace(&ctx, spec).unwrap();
            let Some(t) = solve_twist(&ctx, &mvecs).unwrap() else {
                continue;
            };
            for c in &scalings {
                let tc = t.scale(c);
                let Ok(h) = build_twisted(&ctx, spec, &tc, *with_z) else {
                    continue;
                };
                if h.decomposition().t.is_zero() {
                    continue; // not actually twisted
                }
                let h_prime = if *with_z {
                    build_family_b(&ctx, spec).unwrap()
                } else {
                    build_family_a(&ctx, spec).unwrap()
                };
                assert!(
                    verify_sandwich(&h, &h_prime).unwrap(),
                    "sandwich disagreement at n = {n}, {spec:?}, scale {c}"
                );
                instances += 1;
            }
        }
        assert!(
            instances >= 10,
            "only {instances} twisted instances at n = {n}"
        );
    }
    println!("criterion 7 (twisted orbits match untwisted ones exactly, >= 10 per n): PASS");
}

#[test]
fn criterion_8_mean_curvature_pairing_regression() {
    let mut case2 = 0usize;
    let mut case4 = 0usize;
    for n in 2..=4 {
        let ctx = build_algebra(n).unwrap();
        let corpus = generate_corpus(&ctx, CORPUS_SEED, 100).unwrap();
        for (idx, h) in corpus.iter().enumerate() {
            let suite = verify_identities(h).unwrap();
            for check in &suite.checks {
                if check.name.contains("case formula (a=1, x=0)") && check.applicable {
                    assert!(check.pass, "case formula a=1,x=0 failed at n={n} #{idx}");
                    case2 += 1;
                }
                if check.name.contains("case formula (a=1, x=1)") && check.applicable {
                    assert!(check.pass, "case formula a=1,x=1 failed at n={n} #{idx}");
                    case4 += 1;
                }
            }
        }
    }
    assert!(case2 > 0 && case4 > 0, "regression cases unexercised");
    println!(
        "criterion 8 (mean-curvature pairing formulas, {case2} + {case4} corpus instances, exact): PASS"
    );
}
