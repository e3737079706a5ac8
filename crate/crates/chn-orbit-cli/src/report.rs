//! Serializable analysis report: exact data as rational strings, floating
//! point only inside the opt-in `float` block.

use crate::file::{vector_terms, SubalgebraFile, Term};
use chn_orbit::{
    kaehler_angles, minimality_report, verify_identities, AlgebraContext, Family, KaehlerLabel,
    Label, Subalgebra,
};
use num_traits::ToPrimitive;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionSummary {
    pub a: bool,
    pub x: bool,
    pub b: String,
    pub dim_h: usize,
    pub dim_q: usize,
    pub dim_m: usize,
    pub dim_s_d: usize,
    pub x1: Vec<Term>,
    pub x2: Vec<Term>,
    pub u: Vec<Term>,
    pub v: Vec<Term>,
    pub t: Vec<Term>,
    pub r: Vec<Term>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityLine {
    pub name: String,
    pub applicable: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityBlock {
    pub all_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_branch: Option<u8>,
    pub checks: Vec<IdentityLine>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateBlock {
    pub case: String,
    pub xi: Vec<Term>,
    pub pairing: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionBlock {
    pub applied: bool,
    pub sandwich_verified: bool,
    pub reduced_generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationBlock {
    pub minimal: bool,
    pub family: String,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateBlock>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleBlock {
    pub sff_p_equals_sff_an: bool,
    pub koszul_applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub koszul_equals: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct KaehlerBlock {
    pub dim: usize,
    pub label: String,
    pub is_totally_real: bool,
    pub is_complex: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_cos2: Option<String>,
    /// Angle values in radians; present only in float mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angles: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FloatBlock {
    pub epsilon: f64,
    pub mean_curvature_norm: f64,
    pub minimal_at_epsilon: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub n: usize,
    pub generators: Vec<Vec<Term>>,
    pub auto_span: bool,
}

/// Full machine-readable analysis of one subalgebra.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub input: InputEcho,
    pub decomposition: DecompositionSummary,
    pub tangent_dim: usize,
    pub normal_dim: usize,
    pub mean_curvature: Vec<Term>,
    pub minimal: bool,
    pub totally_geodesic: bool,
    pub degenerate: bool,
    pub classification: ClassificationBlock,
    pub kaehler_of_s: KaehlerBlock,
    pub identities: IdentityBlock,
    pub oracles: OracleBlock,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub float: Option<FloatBlock>,
}

pub const FLOAT_EPSILON: f64 = 1e-12;

pub fn family_str(f: Family) -> &'static str {
    match f {
        Family::A => "a",
        Family::B => "b",
        Family::None => "none",
    }
}

pub fn label_str(l: &Label) -> String {
    l.to_string()
}

pub fn kaehler_label_str(l: &KaehlerLabel) -> &'static str {
    match l {
        KaehlerLabel::TotallyReal => "totally-real",
        KaehlerLabel::Complex => "complex",
        KaehlerLabel::ConstantAngle => "constant-angle",
        KaehlerLabel::Mixed => "mixed",
    }
}

/// Builds the full report; exact everywhere, with the float block only when
/// requested.
pub fn build_report(
    ctx: &AlgebraContext,
    h: &Subalgebra,
    echo: &SubalgebraFile,
    auto_span: bool,
    float_mode: bool,
) -> Result<AnalysisReport, chn_orbit::Error> {
    let dc = h.decomposition();
    let decomposition = DecompositionSummary {
        a: dc.a,
        x: dc.x,
        b: dc.b.to_string(),
        dim_h: dc.dim_h,
        dim_q: dc.q.len(),
        dim_m: dc.dim_s,
        dim_s_d: dc.d,
        x1: vector_terms(ctx, &dc.x1),
        x2: vector_terms(ctx, &dc.x2),
        u: vector_terms(ctx, &dc.u),
        v: vector_terms(ctx, &dc.v),
        t: vector_terms(ctx, &dc.t),
        r: vector_terms(ctx, &dc.r),
    };

    let min_rep = minimality_report(h)?;
    let verdict = chn_orbit::match_classification(h)?;
    let suite = verify_identities(h)?;

    let s_vectors: Vec<_> = dc.w.iter().map(|e| e.vec.clone()).collect();
    let kr = kaehler_angles(ctx, &s_vectors)?;

    let tangent = dc.tangent_generators();
    let normal_dim = 2 * ctx.n - tangent.len();

    let float = if float_mode {
        let norm2 = ctx
            .metric(&min_rep.mean_curvature, &min_rep.mean_curvature)?
            .to_f64()
            .unwrap_or(f64::INFINITY);
        let norm = norm2.sqrt();
        Some(FloatBlock {
            epsilon: FLOAT_EPSILON,
            mean_curvature_norm: norm,
            minimal_at_epsilon: norm <= FLOAT_EPSILON,
        })
    } else {
        None
    };

    Ok(AnalysisReport {
        input: InputEcho {
            n: echo.n,
            generators: echo.generators.clone(),
            auto_span,
        },
        decomposition,
        tangent_dim: tangent.len(),
        normal_dim,
        mean_curvature: vector_terms(ctx, &min_rep.mean_curvature),
        minimal: min_rep.is_minimal,
        totally_geodesic: min_rep.is_totally_geodesic,
        degenerate: min_rep.degenerate,
        classification: ClassificationBlock {
            minimal: verdict.minimal,
            family: family_str(verdict.family).to_string(),
            label: label_str(&verdict.label),
            reduction: verdict.reduction.map(|r| ReductionBlock {
                applied: r.applied,
                sandwich_verified: r.sandwich_verified,
                reduced_generators: r.reduced_generators,
            }),
            certificate: verdict.certificate.map(|c| CertificateBlock {
                case: c.case,
                xi: vector_terms(ctx, &c.xi),
                pairing: c.value.to_string(),
            }),
        },
        kaehler_of_s: KaehlerBlock {
            dim: kr.dim,
            label: kaehler_label_str(&kr.label).to_string(),
            is_totally_real: kr.is_totally_real,
            is_complex: kr.is_complex,
            constant_cos2: kr.constant_cos2.map(|c| c.to_string()),
            angles: float_mode.then_some(kr.angles),
        },
        identities: IdentityBlock {
            all_pass: suite.all_pass(),
            trace_branch: suite.trace_branch,
            checks: suite
                .checks
                .iter()
                .map(|c| IdentityLine {
                    name: c.name.clone(),
                    applicable: c.applicable,
                    pass: c.pass,
                    residual: c.residual.as_ref().map(|r| r.to_string()),
                })
                .collect(),
        },
        oracles: OracleBlock {
            sff_p_equals_sff_an: min_rep.formulas_agree,
            koszul_applicable: min_rep.koszul_agrees.is_some(),
            koszul_equals: min_rep.koszul_agrees,
        },
        float,
    })
}

/// Human-readable rendering (stable line order).
pub fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    use std::fmt::Write;
    let terms = |ts: &[Term]| -> String {
        if ts.is_empty() {
            "0".to_string()
        } else {
            ts.iter()
                .map(|t| format!("{} {}", t.coeff, t.basis))
                .collect::<Vec<_>>()
                .join(" + ")
        }
    };
    let _ = writeln!(out, "n = {}", report.input.n);
    let _ = writeln!(
        out,
        "subalgebra: dim {} (q {}, m {}, s_d {}), a = {}, x = {}, b = {}",
        report.decomposition.dim_h,
        report.decomposition.dim_q,
        report.decomposition.dim_m,
        report.decomposition.dim_s_d,
        u8::from(report.decomposition.a),
        u8::from(report.decomposition.x),
        report.decomposition.b
    );
    let _ = writeln!(out, "X1 = {}", terms(&report.decomposition.x1));
    let _ = writeln!(out, "X2 = {}", terms(&report.decomposition.x2));
    let _ = writeln!(
        out,
        "tangent dim = {}, normal dim = {}",
        report.tangent_dim, report.normal_dim
    );
    let _ = writeln!(out, "mean curvature = {}", terms(&report.mean_curvature));
    let _ = writeln!(
        out,
        "minimal = {}, totally geodesic = {}, point orbit = {}",
        report.minimal, report.totally_geodesic, report.degenerate
    );
    let _ = writeln!(
        out,
        "classification: family {}, label {}",
        report.classification.family, report.classification.label
    );
    if let Some(red) = &report.classification.reduction {
        let _ = writeln!(
            out,
            "reduction: applied = {}, verified = {}, reduced generators: {}",
            red.applied,
            red.sandwich_verified,
            red.reduced_generators.join("; ")
        );
    }
    if let Some(cert) = &report.classification.certificate {
        let _ = writeln!(
            out,
            "non-minimality certificate ({}): <H, xi> = {} with xi = {}",
            cert.case,
            cert.pairing,
            terms(&cert.xi)
        );
    }
    let _ = writeln!(
        out,
        "m-part of the tangent space: dim {}, {}{}",
        report.kaehler_of_s.dim,
        report.kaehler_of_s.label,
        report
            .kaehler_of_s
            .constant_cos2
            .as_ref()
            .map(|c| format!(" (cos^2 = {c})"))
            .unwrap_or_default()
    );
    let _ = writeln!(
        out,
        "identities: all_pass = {}{}",
        report.identities.all_pass,
        report
            .identities
            .trace_branch
            .map(|b| format!(", trace branch {b}"))
            .unwrap_or_default()
    );
    for c in &report.identities.checks {
        if c.applicable {
            let _ = writeln!(
                out,
                "  {} {}{}",
                if c.pass { "ok  " } else { "FAIL" },
                c.name,
                c.residual
                    .as_ref()
                    .map(|r| format!(" (residual {r})"))
                    .unwrap_or_default()
            );
        }
    }
    let _ = writeln!(
        out,
        "oracles: sff_p == sff_an: {}, koszul: {}",
        report.oracles.sff_p_equals_sff_an,
        match report.oracles.koszul_equals {
            Some(v) => v.to_string(),
            None => "not-applicable".to_string(),
        }
    );
    if let Some(f) = &report.float {
        let _ = writeln!(
            out,
            "float mode: epsilon = {:e}, |H| = {:e}, minimal at epsilon = {}",
            f.epsilon, f.mean_curvature_norm, f.minimal_at_epsilon
        );
        if let Some(angles) = &report.kaehler_of_s.angles {
            let _ = writeln!(
                out,
                "kaehler angles (radians): {}",
                angles
                    .iter()
                    .map(|a| format!("{a:.12}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            );
        }
    }
    out
}
