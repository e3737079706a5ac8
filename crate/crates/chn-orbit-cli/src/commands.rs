//! The five subcommands. Each returns its process exit code.

use crate::file::{vector_terms, SubalgebraFile, Term};
use crate::report::{build_report, render_text};
use crate::CliError;
use chn_orbit::algebra::{RootSpace, ROOT_SPACES};
use chn_orbit::scalar::Rat;
use chn_orbit::*;
use serde::Serialize;
use std::fmt::Write as _;

type CmdResult<T> = std::result::Result<T, CliError>;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

pub fn cmd_basis(n: usize, json: bool) -> CmdResult<String> {
    let ctx = build_algebra(n).map_err(|e| CliError::Usage(e.to_string()))?;
    let labels = ctx.label_names();

    #[derive(Serialize)]
    struct BracketRow {
        lhs: String,
        rhs: String,
        result: Vec<Term>,
    }
    #[derive(Serialize)]
    struct BasisReport {
        n: usize,
        dim_g: usize,
        dim_g_alpha: usize,
        dim_k0: usize,
        labels: Vec<String>,
        matrices: Vec<(String, Vec<String>)>,
        brackets: Vec<BracketRow>,
        metric_gram_is_identity: bool,
    }

    let mut brackets = Vec::new();
    for (i, li) in labels.iter().enumerate() {
        for lj in labels.iter().skip(i + 1) {
            let vi = ctx.vector_for_label(li).unwrap();
            let vj = ctx.vector_for_label(lj).unwrap();
            let br = ctx.bracket(&vi, &vj).map_err(internal)?;
            if !br.is_zero() {
                brackets.push(BracketRow {
                    lhs: li.clone(),
                    rhs: lj.clone(),
                    result: vector_terms(&ctx, &br),
                });
            }
        }
    }

    // the adapted a+n basis is orthonormal by construction; verify it here
    // so the claim in the output is checked, not assumed
    let an_labels: Vec<&String> = labels.iter().filter(|l| !l.starts_with('T')).collect();
    let mut gram_identity = true;
    for (i, li) in an_labels.iter().enumerate() {
        for (j, lj) in an_labels.iter().enumerate() {
            let vi = ctx.vector_for_label(li).unwrap();
            let vj = ctx.vector_for_label(lj).unwrap();
            let g = ctx.metric(&vi, &vj).map_err(internal)?;
            let expected = if i == j { "1" } else { "0" };
            if g.to_string() != expected {
                gram_identity = false;
            }
        }
    }

    let matrices: Vec<(String, Vec<String>)> = labels
        .iter()
        .map(|l| {
            let v = ctx.vector_for_label(l).unwrap();
            let m = ctx.matrix_of(&v);
            (l.clone(), m.iter().map(|e| e.to_string()).collect())
        })
        .collect();

    if json {
        let rep = BasisReport {
            n,
            dim_g: ctx.dim,
            dim_g_alpha: ctx.galpha_dim(),
            dim_k0: ctx.k0_basis().len(),
            labels,
            matrices,
            brackets,
            metric_gram_is_identity: gram_identity,
        };
        Ok(serde_json::to_string_pretty(&rep).expect("serializable"))
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "n = {n}");
        let _ = writeln!(
            out,
            "dim g = {}, dim g_a = {}, dim k0 = {}",
            ctx.dim,
            ctx.galpha_dim(),
            ctx.k0_basis().len()
        );
        let _ = writeln!(out, "labels: {}", labels.join(" "));
        let s = ctx.matrix_size();
        let _ = writeln!(out, "matrix model ({s} x {s}, rows separated by ;):");
        for (l, m) in &matrices {
            let rows: Vec<String> = (0..s)
                .map(|i| m[i * s..(i + 1) * s].to_vec().join(", "))
                .collect();
            let _ = writeln!(out, "  {l} = [{}]", rows.join(" ; "));
        }
        let _ = writeln!(out, "nonzero brackets on labels:");
        for row in &brackets {
            let terms = row
                .result
                .iter()
                .map(|t| format!("{} {}", t.coeff, t.basis))
                .collect::<Vec<_>>()
                .join(" + ");
            let _ = writeln!(out, "  [{}, {}] = {}", row.lhs, row.rhs, terms);
        }
        let _ = writeln!(
            out,
            "metric Gram on (B, E.., F.., Z): {}",
            if gram_identity {
                "identity (orthonormal adapted basis)"
            } else {
                "NOT the identity"
            }
        );
        Ok(out)
    }
}

pub struct AnalyzeOpts {
    pub json: bool,
    pub float: bool,
    pub span: bool,
}

pub fn cmd_analyze(path: &PathBuf, opts: &AnalyzeOpts) -> CmdResult<String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let file = SubalgebraFile::from_json(&text)?;
    let (ctx, gens) = file.resolve()?;
    let (h, auto_span) = close_or_fail(&ctx, &gens, opts.span)?;
    let report = build_report(&ctx, &h, &file, auto_span, opts.float).map_err(internal)?;
    if opts.json {
        Ok(serde_json::to_string_pretty(&report).expect("serializable"))
    } else {
        Ok(render_text(&report))
    }
}

fn close_or_fail(
    ctx: &Arc<AlgebraContext>,
    gens: &[LieVector],
    span: bool,
) -> CmdResult<(Subalgebra, bool)> {
    let outcome = closure_check(ctx, gens).map_err(|e| CliError::Parse(e.to_string()))?;
    if outcome.closed {
        let h = Subalgebra::new(ctx.clone(), gens.to_vec()).map_err(internal)?;
        Ok((h, false))
    } else if span {
        let h = lie_span(ctx, gens).map_err(internal)?;
        Ok((h, true))
    } else {
        let (i, j, resid) = outcome.witness.expect("witness accompanies failure");
        Err(CliError::Closure(format!(
            "generators do not close: [g{}, g{}] leaves the span by {}; rerun with --span to close automatically",
            i,
            j,
            ctx.format_vector(&resid)
        )))
    }
}

pub struct GenerateOpts {
    pub family: String,
    pub n: usize,
    pub spec: Option<String>,
    pub with_z: bool,
    pub out: Option<PathBuf>,
}

fn parse_spec(spec: &str) -> CmdResult<SubspaceSpec> {
    let usage = || {
        CliError::Usage(format!(
            "unrecognized subspace spec `{spec}`; expected totally-real:K, complex:K, \
             constant-angle:COS:SIN:K, hyperplane, or dim:K"
        ))
    };
    if spec == "hyperplane" {
        return Ok(SubspaceSpec::Hyperplane);
    }
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["totally-real", k] => Ok(SubspaceSpec::TotallyReal {
            dim: k.parse().map_err(|_| usage())?,
        }),
        ["complex", k] => Ok(SubspaceSpec::Complex {
            dim: k.parse().map_err(|_| usage())?,
        }),
        ["dim", k] => Ok(SubspaceSpec::Prefix {
            dim: k.parse().map_err(|_| usage())?,
        }),
        ["constant-angle", c, s, k] => Ok(SubspaceSpec::ConstantAngle {
            cos: Rat::from_str(c).map_err(|_| usage())?,
            sin: Rat::from_str(s).map_err(|_| usage())?,
            dim: k.parse().map_err(|_| usage())?,
        }),
        _ => Err(usage()),
    }
}

pub fn cmd_generate(opts: &GenerateOpts) -> CmdResult<String> {
    let ctx = build_algebra(opts.n).map_err(|e| CliError::Usage(e.to_string()))?;
    let spec = parse_spec(opts.spec.as_deref().unwrap_or("totally-real:0"))?;
    let reject = |e: Error| CliError::Usage(format!("spec is not realizable: {e}"));
    let h = match opts.family.as_str() {
        "a" => build_family_a(&ctx, &spec).map_err(reject)?,
        "b" => build_family_b(&ctx, &spec).map_err(reject)?,
        "twisted" => {
            let m = realize_subspace(&ctx, &spec).map_err(reject)?;
            let t = solve_twist(&ctx, &m).map_err(internal)?.ok_or_else(|| {
                CliError::Usage("no nonzero twist normalizes the requested subspace".to_string())
            })?;
            build_twisted(&ctx, &spec, &t, opts.with_z).map_err(reject)?
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown family `{other}` (expected a, b, or twisted)"
            )))
        }
    };
    let file = SubalgebraFile {
        n: opts.n,
        generators: h
            .generators()
            .iter()
            .map(|g| vector_terms(&ctx, g))
            .collect(),
    };
    let text = file.to_json();
    if let Some(path) = &opts.out {
        std::fs::write(path, &text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        Ok(format!("wrote {}\n", path.display()))
    } else {
        Ok(text)
    }
}

pub struct SelfcheckOpts {
    pub n_lo: usize,
    pub n_hi: usize,
    pub seed: u64,
    pub json: bool,
}

#[derive(Serialize)]
struct CheckLine {
    name: String,
    pass: bool,
    detail: String,
}

pub fn cmd_selfcheck(opts: &SelfcheckOpts) -> CmdResult<(String, bool)> {
    let mut lines: Vec<CheckLine> = Vec::new();
    let mut push = |name: String, pass: bool, detail: String| {
        lines.push(CheckLine { name, pass, detail });
    };

    for n in opts.n_lo..=opts.n_hi {
        let ctx = build_algebra(n).map_err(internal)?;

        // structure suites
        let rep = ctx.verify_an_brackets();
        push(
            format!("n={n} bracket relations"),
            rep.all_pass(),
            fail_names(&rep),
        );
        let rep = ctx.verify_involution_identities();
        push(
            format!("n={n} involution identities"),
            rep.all_pass(),
            fail_names(&rep),
        );

        // grading and Jacobi (bounded to keep the run short)
        if n <= 4 {
            let (g_ok, j_ok) = grading_and_jacobi(&ctx).map_err(internal)?;
            push(format!("n={n} root grading"), g_ok, String::new());
            push(format!("n={n} Jacobi identity"), j_ok, String::new());
        }

        // corpus checks
        let target = if n <= 4 { 100 } else { 30 };
        let corpus = generate_corpus(&ctx, opts.seed, target).map_err(internal)?;
        let mut oracle_ok = true;
        let mut identities_ok = true;
        let mut first_failure = String::new();
        let mut branch_counts = [0usize; 3];
        for (idx, h) in corpus.iter().enumerate() {
            let rep = minimality_report(h).map_err(internal)?;
            if !rep.formulas_agree || rep.koszul_agrees == Some(false) {
                oracle_ok = false;
                if first_failure.is_empty() {
                    first_failure = format!("corpus #{idx}: formula disagreement");
                }
            }
            let suite = verify_identities(h).map_err(internal)?;
            if !suite.all_pass() {
                identities_ok = false;
                if first_failure.is_empty() {
                    let names: Vec<_> = suite.failures().iter().map(|c| c.name.clone()).collect();
                    first_failure = format!("corpus #{idx}: {}", names.join(", "));
                }
            }
            if let Some(b) = suite.trace_branch {
                branch_counts[b as usize - 1] += 1;
            }
        }
        push(
            format!("n={n} oracle equivalence ({} subalgebras)", corpus.len()),
            oracle_ok,
            first_failure.clone(),
        );
        push(
            format!("n={n} structural identities"),
            identities_ok,
            first_failure.clone(),
        );
        let b3 = if branch_counts[2] > 0 {
            format!("{}", branch_counts[2])
        } else {
            "unreached".to_string()
        };
        push(
            format!("n={n} trace-identity branch coverage"),
            branch_counts[0] > 0 && branch_counts[1] > 0,
            format!(
                "branch1={} branch2={} branch3={}",
                branch_counts[0], branch_counts[1], b3
            ),
        );

        // family round trips
        let mut rt_ok = true;
        let mut rt_detail = String::new();
        for (file_args, expected) in enumerate_specs(n) {
            let got = roundtrip_label(&ctx, &file_args).map_err(internal)?;
            if got != expected {
                rt_ok = false;
                if rt_detail.is_empty() {
                    rt_detail = format!("{file_args:?}: got {got}, expected {expected}");
                }
            }
        }
        push(format!("n={n} family round trips"), rt_ok, rt_detail);

        // negative controls
        let mut gens = ctx.adapted_galpha();
        gens.push(ctx.z());
        let h = Subalgebra::new(ctx.clone(), gens).map_err(internal)?;
        let mean = mean_curvature(&h).map_err(internal)?;
        let nb = ctx.b().scale(&Rat::from_integer((n as i64).into()));
        push(
            format!("n={n} horosphere mean curvature"),
            mean == nb,
            ctx.format_vector(&mean),
        );
    }

    let all_pass = lines.iter().all(|l| l.pass);
    let output = if opts.json {
        #[derive(Serialize)]
        struct SelfcheckReport {
            seed: u64,
            n_range: (usize, usize),
            all_pass: bool,
            checks: Vec<CheckLine>,
        }
        serde_json::to_string_pretty(&SelfcheckReport {
            seed: opts.seed,
            n_range: (opts.n_lo, opts.n_hi),
            all_pass,
            checks: lines,
        })
        .expect("serializable")
    } else {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "selfcheck: n in {}..{}, seed {}",
            opts.n_lo, opts.n_hi, opts.seed
        );
        for l in &lines {
            let _ = writeln!(
                out,
                "{} {}{}",
                if l.pass { "ok  " } else { "FAIL" },
                l.name,
                if l.detail.is_empty() {
                    String::new()
                } else {
                    format!(" [{}]", l.detail)
                }
            );
        }
        let _ = writeln!(
            out,
            "{}",
            if all_pass {
                "all checks passed"
            } else {
                "FAILURES PRESENT"
            }
        );
        out
    };
    Ok((output, all_pass))
}

fn fail_names(rep: &IdentityReport) -> String {
    rep.failures()
        .iter()
        .map(|c| c.name.clone())
        .collect::<Vec<_>>()
        .join(", ")
}

fn grading_and_jacobi(ctx: &Arc<AlgebraContext>) -> std::result::Result<(bool, bool), Error> {
    let mut g_ok = true;
    for s1 in ROOT_SPACES {
        for s2 in ROOT_SPACES {
            let sum = s1.twice_eigenvalue() + s2.twice_eigenvalue();
            let allowed: Vec<RootSpace> = ROOT_SPACES
                .into_iter()
                .filter(|s| s.twice_eigenvalue() == sum)
                .collect();
            for x in ctx.root_space_basis(s1) {
                for y in ctx.root_space_basis(s2) {
                    let br = ctx.bracket(&x, &y)?;
                    let ok = if allowed.is_empty() {
                        br.is_zero()
                    } else {
                        ctx.in_root_spaces(&br, &allowed)?
                    };
                    if !ok {
                        g_ok = false;
                    }
                }
            }
        }
    }
    let dim = ctx.dim;
    let mut basis = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut v = LieVector::zero(ctx.n);
        v.coeffs[i] = Rat::from_integer(1.into());
        basis.push(v);
    }
    let mut j_ok = true;
    for i in 0..dim {
        for j in (i + 1)..dim {
            let bij = ctx.bracket(&basis[i], &basis[j])?;
            for k in (j + 1)..dim {
                let t1 = ctx.bracket(&basis[i], &ctx.bracket(&basis[j], &basis[k])?)?;
                let t2 = ctx.bracket(&basis[j], &ctx.bracket(&basis[k], &basis[i])?)?;
                let t3 = ctx.bracket(&basis[k], &bij)?;
                if !t1.add(&t2).add(&t3).is_zero() {
                    j_ok = false;
                }
            }
        }
    }
    Ok((g_ok, j_ok))
}

/// All legal generator specs for the round-trip suite at a given `n`, with
/// the expected classification label.
pub fn enumerate_specs(n: usize) -> Vec<((String, String, bool), String)> {
    let m = n - 1;
    let mut out = Vec::new();
    for k in 0..=m {
        let expected = if k == m {
            "RH^n-focal".to_string()
        } else {
            format!("RH^{}", k + 1)
        };
        out.push((("a".into(), format!("totally-real:{k}"), false), expected));
    }
    for k in 0..=m {
        out.push((
            ("b".into(), format!("complex:{}", 2 * k), false),
            format!("CH^{}", k + 1),
        ));
    }
    out.push((("b".into(), "hyperplane".into(), false), "Lohnherr".into()));
    for dim in 0..=2 * m {
        // prefix subspaces: complex for even dims, else hyperplane/generic
        let expected = if dim % 2 == 0 {
            format!("CH^{}", dim / 2 + 1)
        } else if dim == 2 * m - 1 {
            "Lohnherr".to_string()
        } else {
            "generic-focal".to_string()
        };
        out.push((("b".into(), format!("dim:{dim}"), false), expected));
    }
    if m >= 2 {
        out.push((
            ("b".into(), "constant-angle:3/5:4/5:2".into(), false),
            "generic-focal".into(),
        ));
    }
    // twisted families round-trip to the untwisted label (when a twist exists)
    if m >= 3 {
        out.push((
            ("twisted".into(), "totally-real:2".into(), false),
            "RH^3".into(),
        ));
    }
    if m >= 2 {
        out.push((("twisted".into(), "complex:2".into(), true), "CH^2".into()));
    }
    out
}

fn roundtrip_label(
    ctx: &Arc<AlgebraContext>,
    (family, spec, with_z): &(String, String, bool),
) -> std::result::Result<String, Error> {
    let spec = parse_spec(spec).map_err(|e| Error::Constructor(e.to_string()))?;
    let h = match family.as_str() {
        "a" => build_family_a(ctx, &spec)?,
        "b" => build_family_b(ctx, &spec)?,
        _ => {
            let m = realize_subspace(ctx, &spec)?;
            let t = solve_twist(ctx, &m)?.ok_or_else(|| Error::Constructor("no twist".into()))?;
            build_twisted(ctx, &spec, &t, *with_z)?
        }
    };
    // round trip through the file format
    let file = SubalgebraFile {
        n: ctx.n,
        generators: h
            .generators()
            .iter()
            .map(|g| vector_terms(ctx, g))
            .collect(),
    };
    let reparsed =
        SubalgebraFile::from_json(&file.to_json()).map_err(|e| Error::Internal(e.to_string()))?;
    let (ctx2, gens) = reparsed
        .resolve()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let h2 = Subalgebra::new(ctx2, gens)?;
    Ok(match_classification(&h2)?.label.to_string())
}

pub fn cmd_oracle_compare(path: &PathBuf, json: bool, span: bool) -> CmdResult<(String, bool)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let file = SubalgebraFile::from_json(&text)?;
    let (ctx, gens) = file.resolve()?;
    let (h, _) = close_or_fail(&ctx, &gens, span)?;

    #[derive(Serialize)]
    struct PairRow {
        i: usize,
        j: usize,
        sff_p_equals_sff_an: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        koszul_equals: Option<bool>,
    }

    let tg = h.decomposition().tangent_generators();
    let koszul_applicable = h.is_inside_an();
    let mut rows = Vec::new();
    let mut all_equal = true;
    for i in 0..tg.len() {
        for j in i..tg.len() {
            let via_an = sff_an(&h, &tg[i].0, &tg[j].0).map_err(internal)?;
            let via_p = sff_p(&h, &tg[i].0, &tg[j].0).map_err(internal)?;
            let p_eq = via_p == via_an;
            let k_eq = if koszul_applicable {
                Some(koszul_sff(&h, &tg[i].0, &tg[j].0).map_err(internal)? == via_an)
            } else {
                None
            };
            if !p_eq || k_eq == Some(false) {
                all_equal = false;
            }
            rows.push(PairRow {
                i,
                j,
                sff_p_equals_sff_an: p_eq,
                koszul_equals: k_eq,
            });
        }
    }

    let output = if json {
        #[derive(Serialize)]
        struct CompareReport {
            tangent_dim: usize,
            koszul_applicable: bool,
            all_equal: bool,
            pairs: Vec<PairRow>,
        }
        serde_json::to_string_pretty(&CompareReport {
            tangent_dim: tg.len(),
            koszul_applicable,
            all_equal,
            pairs: rows,
        })
        .expect("serializable")
    } else {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "tangent dim {}, koszul {}",
            tg.len(),
            if koszul_applicable {
                "applicable"
            } else {
                "not-applicable (k0-component present)"
            }
        );
        for r in &rows {
            let _ = writeln!(
                out,
                "  pair ({}, {}): sff_p == sff_an: {}{}",
                r.i,
                r.j,
                r.sff_p_equals_sff_an,
                match r.koszul_equals {
                    Some(v) => format!(", koszul == sff_an: {v}"),
                    None => String::new(),
                }
            );
        }
        let _ = writeln!(out, "all equal: {all_equal}");
        out
    };
    Ok((output, all_equal))
}

fn internal(e: Error) -> CliError {
    CliError::Internal(e.to_string())
}
