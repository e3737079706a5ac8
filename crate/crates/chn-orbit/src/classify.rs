//! Construction of the canonical minimal-orbit families, verification of the
//! structural identities behind the classification, and the classification
//! verdict for a given subalgebra.
//!
//! The two canonical families are `h = a + m` with `m` totally real in `g_a`
//! (orbits: totally geodesic real hyperbolic subspaces) and
//! `h = a + m + g_2a` with `m` arbitrary (orbits: minimal, totally geodesic
//! exactly when `m` is complex). Twisted versions replace `B` by `B + T` for
//! a `k0`-element `T` normalizing `m`; their orbits coincide with the
//! untwisted ones, which `verify_sandwich` checks exactly.

use crate::algebra::{AlgebraContext, LieVector, RootSpace};
use crate::error::{Error, Result};
use crate::geometry::{
    kaehler_angles, mean_curvature, minimality_report, sff_an, NonminimalityCertificate,
};
use crate::linalg::{solve_linear, Mat, SpanBasis};
use crate::scalar::{rat, rat_int, Rat};
use crate::subalg::Subalgebra;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

/// Recipe for a subspace `m` of `g_a`.
#[derive(Clone, Debug)]
pub enum SubspaceSpec {
    /// Explicit basis vectors (must lie in `g_a`).
    Explicit(Vec<LieVector>),
    /// `span{E_1, .., E_k}`: totally real of real dimension `k <= n-1`.
    TotallyReal { dim: usize },
    /// `span{E_1, F_1, .., E_k, F_k}`: complex of real dimension `2k`.
    Complex { dim: usize },
    /// Pairs `{E_i, cos*F_i + sin*E_{k+i}}`, `i = 1..k`: constant Kaehler
    /// angle with exact rational cosine/sine (`cos^2 + sin^2 = 1`).
    ConstantAngle { cos: Rat, sin: Rat, dim: usize },
    /// A hyperplane of `g_a` (dimension `2n-3`).
    Hyperplane,
    /// The first `dim` vectors of `E_1, F_1, E_2, F_2, ..`.
    Prefix { dim: usize },
}

/// Realizes a subspace recipe inside `g_a` for the given context.
pub fn realize_subspace(ctx: &AlgebraContext, spec: &SubspaceSpec) -> Result<Vec<LieVector>> {
    let m = ctx.n - 1;
    let interleaved: Vec<LieVector> = (0..m).flat_map(|i| [ctx.e(i), ctx.f(i)]).collect();
    match spec {
        SubspaceSpec::Explicit(vs) => {
            for v in vs {
                if !ctx.in_root_spaces(v, &[RootSpace::Alpha])? {
                    return Err(Error::Constructor(
                        "explicit subspace vectors must lie in g_a".into(),
                    ));
                }
            }
            Ok(vs.clone())
        }
        SubspaceSpec::TotallyReal { dim } => {
            if *dim > m {
                return Err(Error::Constructor(format!(
                    "totally real dimension {dim} exceeds n-1 = {m}"
                )));
            }
            Ok((0..*dim).map(|i| ctx.e(i)).collect())
        }
        SubspaceSpec::Complex { dim } => {
            if dim % 2 != 0 || *dim > 2 * m {
                return Err(Error::Constructor(format!(
                    "complex subspaces need even real dimension at most {}",
                    2 * m
                )));
            }
            Ok(interleaved[..*dim].to_vec())
        }
        SubspaceSpec::ConstantAngle { cos, sin, dim } => {
            if cos * cos + sin * sin != Rat::one() {
                return Err(Error::Constructor(
                    "constant-angle recipe needs cos^2 + sin^2 = 1 exactly".into(),
                ));
            }
            if dim % 2 != 0 {
                return Err(Error::Constructor(
                    "constant-angle subspaces have even dimension".into(),
                ));
            }
            let k = dim / 2;
            if 2 * k > m {
                return Err(Error::Constructor(format!(
                    "constant-angle dimension {dim} needs 2*{k} <= n-1 = {m}"
                )));
            }
            let mut out = Vec::new();
            for i in 0..k {
                out.push(ctx.e(i));
                out.push(ctx.f(i).scale(cos).add(&ctx.e(k + i).scale(sin)));
            }
            Ok(out)
        }
        SubspaceSpec::Hyperplane => Ok(interleaved[..2 * m - 1].to_vec()),
        SubspaceSpec::Prefix { dim } => {
            if *dim > 2 * m {
                return Err(Error::Constructor(format!(
                    "requested dimension {dim} exceeds dim g_a = {}",
                    2 * m
                )));
            }
            Ok(interleaved[..*dim].to_vec())
        }
    }
}

fn check_totally_real(ctx: &AlgebraContext, m: &[LieVector]) -> Result<()> {
    for (i, wi) in m.iter().enumerate() {
        for (j, wj) in m.iter().enumerate().skip(i) {
            let jw = ctx.complex_structure(wi)?;
            let val = ctx.metric(&jw, wj)?;
            if !val.is_zero() {
                return Err(Error::NotTotallyReal {
                    i,
                    j,
                    value: val.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// `h = a + m` with `m` totally real: the orbit is a totally geodesic real
/// hyperbolic subspace of dimension `dim m + 1`.
pub fn build_family_a(ctx: &Arc<AlgebraContext>, spec: &SubspaceSpec) -> Result<Subalgebra> {
    let m = realize_subspace(ctx, spec)?;
    check_totally_real(ctx, &m)?;
    let mut gens = vec![ctx.b()];
    gens.extend(m);
    Subalgebra::new(ctx.clone(), gens)
}

/// `h = a + m + g_2a` with `m` arbitrary: the orbit is always minimal.
pub fn build_family_b(ctx: &Arc<AlgebraContext>, spec: &SubspaceSpec) -> Result<Subalgebra> {
    let m = realize_subspace(ctx, spec)?;
    let mut gens = vec![ctx.b()];
    gens.extend(m);
    gens.push(ctx.z());
    Subalgebra::new(ctx.clone(), gens)
}

/// `h = span{B + T} + m (+ g_2a)` for a `k0`-element `T` with `[T, m]` inside
/// `m`. Closure additionally needs `m` totally real when `g_2a` is omitted.
pub fn build_twisted(
    ctx: &Arc<AlgebraContext>,
    spec: &SubspaceSpec,
    t: &LieVector,
    with_z: bool,
) -> Result<Subalgebra> {
    if !ctx.in_root_spaces(t, &[RootSpace::KZero])? {
        return Err(Error::Constructor("twist vector must lie in k0".into()));
    }
    let m = realize_subspace(ctx, spec)?;
    let span = SpanBasis::new(
        ctx.dim,
        &m.iter().map(|v| v.coeffs.clone()).collect::<Vec<_>>(),
    );
    for (i, w) in m.iter().enumerate() {
        let br = ctx.bracket(t, w)?;
        if !span.contains(&br.coeffs) {
            return Err(Error::Constructor(format!(
                "twist does not normalize the subspace: [T, w{i}] leaves it"
            )));
        }
    }
    if !with_z {
        check_totally_real(ctx, &m).map_err(|e| {
            Error::Constructor(format!(
                "without g_2a the subspace must be totally real ({e})"
            ))
        })?;
    }
    let mut gens = vec![ctx.b().add(t)];
    gens.extend(m);
    if with_z {
        gens.push(ctx.z());
    }
    Subalgebra::new(ctx.clone(), gens)
}

/// Finds a nonzero `k0`-element normalizing `span(m)`, if one exists
/// (deterministic choice).
pub fn solve_twist(ctx: &AlgebraContext, m: &[LieVector]) -> Result<Option<LieVector>> {
    let k0 = ctx.k0_basis();
    let span = SpanBasis::new(
        ctx.dim,
        &m.iter().map(|v| v.coeffs.clone()).collect::<Vec<_>>(),
    );
    let rows = ctx.dim * m.len().max(1);
    let mut a = Mat::zero(rows, k0.len());
    for (p, w) in m.iter().enumerate() {
        for (j, t) in k0.iter().enumerate() {
            let br = ctx.bracket(t, w)?;
            let resid = span.reduce(&br.coeffs);
            for (i, c) in resid.iter().enumerate() {
                a.set(p * ctx.dim + i, j, c.clone());
            }
        }
    }
    let kernel = a.kernel();
    let Some(first) = kernel.first() else {
        return Ok(None);
    };
    let mut out = LieVector::zero(ctx.n);
    for (c, t) in first.iter().zip(k0) {
        if !c.is_zero() {
            out = out.add(&t.scale(c));
        }
    }
    Ok((!out.is_zero()).then_some(out))
}

/// Solves for a `k0`-element with the prescribed brackets against the given
/// vectors, if one exists.
pub fn solve_k0_action(
    ctx: &AlgebraContext,
    pairs: &[(LieVector, LieVector)],
) -> Result<Option<LieVector>> {
    let k0 = ctx.k0_basis();
    let rows = ctx.dim * pairs.len();
    let mut a = Mat::zero(rows, k0.len());
    let mut rhs = vec![Rat::zero(); rows];
    for (p, (u, target)) in pairs.iter().enumerate() {
        for (j, t) in k0.iter().enumerate() {
            let br = ctx.bracket(t, u)?;
            for (i, c) in br.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    a.set(p * ctx.dim + i, j, c.clone());
                }
            }
        }
        for (i, c) in target.coeffs.iter().enumerate() {
            rhs[p * ctx.dim + i] = c.clone();
        }
    }
    let Some(sol) = solve_linear(&a, &rhs) else {
        return Ok(None);
    };
    let mut out = LieVector::zero(ctx.n);
    for (c, t) in sol.iter().zip(k0) {
        if !c.is_zero() {
            out = out.add(&t.scale(c));
        }
    }
    for (u, target) in pairs {
        if &ctx.bracket(&out, u)? != target {
            return Ok(None);
        }
    }
    Ok(Some(out))
}

/// A two-dimensional closed subalgebra with `a = x = 1` whose `X2`-correction
/// `R` is nonzero while `s` is empty: it exercises the second branch of the
/// structural trace identity. Concretely
/// `h = span{B + E_1, Z - F_1 + R}` with `R` acting on the first complex
/// line of `g_a` by `[R, E_1] = -F_1/2`, `[R, F_1] = E_1/2`.
pub fn branch2_subalgebra(ctx: &Arc<AlgebraContext>) -> Result<Subalgebra> {
    let m = ctx.n - 1;
    let mut pairs = vec![
        (ctx.e(0), ctx.f(0).scale(&Rat::new((-1).into(), 2.into()))),
        (ctx.f(0), ctx.e(0).scale(&Rat::new(1.into(), 2.into()))),
    ];
    for i in 1..m {
        pairs.push((ctx.e(i), LieVector::zero(ctx.n)));
        pairs.push((ctx.f(i), LieVector::zero(ctx.n)));
    }
    let r = solve_k0_action(ctx, &pairs)?
        .ok_or_else(|| Error::Internal("no k0 element acts as the required rotation".into()))?;
    let gens = vec![ctx.b().add(&ctx.e(0)), ctx.z().sub(&ctx.f(0)).add(&r)];
    Subalgebra::new(ctx.clone(), gens)
}

/// A three-dimensional closed subalgebra with `a = x = 1` and a
/// one-dimensional diagonal part whose correction equals `R`: it exercises
/// the third branch of the structural trace identity. The data below is an
/// exact rational solution of the branch-3 compatibility equations
/// (`<JU, W_1> = 1/2 + <JU, V>`, full complex orthogonality of `V` and
/// `W_1`, and the skew-pairing conditions that make the `k0`-correction
/// solvable); it needs three complex `g_a`-coordinates, hence `n >= 4`.
pub fn branch3_subalgebra(ctx: &Arc<AlgebraContext>) -> Result<Subalgebra> {
    if ctx.n < 4 {
        return Err(Error::Constructor(
            "the branch-3 instance needs n >= 4".into(),
        ));
    }
    let u = ctx.e(0);
    let v = ctx
        .f(0)
        .scale(&rat(-3, 5))
        .add(&ctx.e(1).scale(&rat(9, 5)))
        .add(&ctx.f(1).scale(&rat(3, 5)))
        .add(&ctx.e(2).scale(&rat(1, 5)));
    let w1 = ctx
        .f(0)
        .scale(&rat(-1, 10))
        .add(&ctx.e(1).scale(&rat(9, 130)))
        .add(&ctx.f(1).scale(&rat(3, 130)))
        .add(&ctx.e(2).scale(&rat(-129, 130)));
    // p = rho (w1 - v) + v/2 with rho = 2/5
    let p = ctx
        .f(0)
        .scale(&rat(-1, 10))
        .add(&ctx.e(1).scale(&rat(27, 130)))
        .add(&ctx.f(1).scale(&rat(9, 130)))
        .add(&ctx.e(2).scale(&rat(-49, 130)));
    let kernel_dir = w1.sub(&v);
    let r = solve_k0_action(ctx, &[(u.clone(), p), (kernel_dir, LieVector::zero(ctx.n))])?
        .ok_or_else(|| Error::Internal("branch-3 correction is not solvable in k0".into()))?;
    let gens = vec![ctx.b().add(&u), v.add(&ctx.z()).add(&r), w1.add(&r)];
    Subalgebra::new(ctx.clone(), gens)
}

// ---- sandwich ------------------------------------------------------------------

/// Checks that the orbits of `h` and its untwisted counterpart `h'` carry
/// identical data at the base point: equal tangent spaces and equal second
/// fundamental forms on all tangent pairs (exact). `h'` must be a subalgebra
/// of `a + n` equal to the tangent projection of `h`.
pub fn verify_sandwich(h: &Subalgebra, h_prime: &Subalgebra) -> Result<bool> {
    let ctx = h.context();
    if h_prime.context().n != ctx.n {
        return Err(Error::ContextMismatch {
            left: ctx.n,
            right: h_prime.context().n,
        });
    }
    if !h_prime.is_inside_an() {
        return Err(Error::Precondition(
            "the untwisted algebra must lie inside a + n".into(),
        ));
    }
    let tg = h.decomposition().tangent_generators();
    if h_prime.dim() != tg.len() || !tg.iter().all(|(t, _)| h_prime.contains(t)) {
        return Err(Error::Precondition(
            "the untwisted algebra must equal the tangent projection of h".into(),
        ));
    }
    for i in 0..tg.len() {
        for j in i..tg.len() {
            let lhs = sff_an(h, &tg[i].0, &tg[j].0)?;
            let rhs = sff_an(h_prime, &tg[i].0, &tg[j].0)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---- identity suite --------------------------------------------------------------

/// One identity evaluation: applicable when its hypotheses hold, passing
/// when the exact residual vanishes.
#[derive(Clone, Debug)]
pub struct IdentityOutcome {
    pub name: String,
    pub applicable: bool,
    pub pass: bool,
    pub residual: Option<Rat>,
}

impl IdentityOutcome {
    fn not_applicable(name: &str) -> Self {
        IdentityOutcome {
            name: name.into(),
            applicable: false,
            pass: true,
            residual: None,
        }
    }

    fn from_residual(name: &str, residual: Rat) -> Self {
        IdentityOutcome {
            name: name.into(),
            applicable: true,
            pass: residual.is_zero(),
            residual: Some(residual),
        }
    }

    fn from_flag(name: &str, pass: bool) -> Self {
        IdentityOutcome {
            name: name.into(),
            applicable: true,
            pass,
            residual: None,
        }
    }
}

/// Exact residues of the structural identities evaluated on a subalgebra.
#[derive(Clone, Debug)]
pub struct IdentitySuiteResult {
    pub checks: Vec<IdentityOutcome>,
    /// Which branch of the trace identity applied (1, 2 or 3), when `a = 1`.
    pub trace_branch: Option<u8>,
}

impl IdentitySuiteResult {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&IdentityOutcome> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Evaluates the decomposition invariants, the bracket-pairing identities
/// (applicable when `a = x = 1`), the three-branch trace identity
/// (applicable when `a = 1`), and the mean-curvature pairing formulas for
/// each case of the decomposition. All residuals are exact.
pub fn verify_identities(h: &Subalgebra) -> Result<IdentitySuiteResult> {
    let ctx = h.context();
    let dc = h.decomposition();
    let mut checks = Vec::new();

    // decomposition invariants
    {
        let a_val = if dc.a { Rat::one() } else { Rat::zero() };
        let uv = ctx.metric(&dc.u, &dc.v)?;
        checks.push(IdentityOutcome::from_residual(
            "a*b + <U,V> = 0",
            a_val * &dc.b + uv,
        ));

        let mut ortho = true;
        let tg = dc.tangent_generators();
        for i in 0..tg.len() {
            for j in (i + 1)..tg.len() {
                if !ctx.metric(&tg[i].0, &tg[j].0)?.is_zero() {
                    ortho = false;
                }
            }
        }
        checks.push(IdentityOutcome::from_flag(
            "tangent generating set is orthogonal",
            ortho,
        ));

        let mut u_perp_s = true;
        for e in &dc.w {
            if !ctx.metric(&dc.u, &e.vec)?.is_zero() || !ctx.metric(&dc.v, &e.vec)?.is_zero() {
                u_perp_s = false;
            }
        }
        checks.push(IdentityOutcome::from_flag("U, V orthogonal to s", u_perp_s));

        let support_ok =
            dc.w.iter()
                .enumerate()
                .all(|(i, e)| (i < dc.d) == !e.phi.is_zero());
        checks.push(IdentityOutcome::from_flag(
            "Phi vanishes exactly off s_d",
            support_ok,
        ));

        let dims_ok = dc.dim_h == dc.q.len() + dc.dim_s + usize::from(dc.a) + usize::from(dc.x);
        checks.push(IdentityOutcome::from_flag("direct sum dimensions", dims_ok));

        // Phi restricted to s_d is injective: the corrections are independent
        let inj = if dc.d == 0 {
            true
        } else {
            let rows: Vec<Vec<Rat>> = dc.w[..dc.d].iter().map(|e| e.phi.coeffs.clone()).collect();
            SpanBasis::new(ctx.dim, &rows).dim() == dc.d
        };
        checks.push(IdentityOutcome::from_flag("Phi injective on s_d", inj));
    }

    let u_norm2 = ctx.metric(&dc.u, &dc.u)?;
    let v_norm2 = ctx.metric(&dc.v, &dc.v)?;
    let ju = ctx.complex_structure(&dc.u)?;
    let juv = ctx.metric(&ju, &dc.v)?;

    // bracket-pairing identities (a = x = 1)
    if dc.a && dc.x {
        let tv_u = ctx.metric(&ctx.bracket(&dc.t, &dc.v)?, &dc.u)?;
        let rhs1 =
            -(&dc.b / rat_int(2)) * (Rat::one() + &u_norm2) * (Rat::one() + rat_int(2) * &juv);
        checks.push(IdentityOutcome::from_residual(
            "<[T,V],U> pairing",
            tv_u - rhs1,
        ));

        let ur_v = ctx.metric(&ctx.bracket(&dc.u, &dc.r)?, &dc.v)?;
        let rhs2 = (&dc.b * &dc.b + &v_norm2) * (Rat::one() + rat_int(2) * &juv) / rat_int(2);
        checks.push(IdentityOutcome::from_residual(
            "<[U,R],V> pairing",
            ur_v - rhs2,
        ));
    } else {
        checks.push(IdentityOutcome::not_applicable("<[T,V],U> pairing"));
        checks.push(IdentityOutcome::not_applicable("<[U,R],V> pairing"));
    }

    // trace identity over the diagonal part (a = 1), with branch selection
    // driven by R - bT
    let mut trace_branch = None;
    if dc.a {
        let r_bt = dc.r.sub(&dc.t.scale(&dc.b));
        let branch = if r_bt.is_zero() {
            1u8
        } else {
            let phi_rows: Vec<Vec<Rat>> =
                dc.w[..dc.d].iter().map(|e| e.phi.coeffs.clone()).collect();
            let phi_span = SpanBasis::new(ctx.dim, &phi_rows);
            if phi_span.contains(&r_bt.coeffs) {
                3
            } else {
                2
            }
        };
        trace_branch = Some(branch);
        let mut sum = Rat::zero();
        for e in dc.w.iter().take(dc.d) {
            sum += ctx.metric(&ctx.bracket(&e.phi, &e.vec)?, &dc.u)? / &e.norm2;
        }
        let d_rat = rat_int(dc.d as i64);
        let rhs = match branch {
            1 => -&d_rat / rat_int(2),
            2 => -&juv - (rat_int(2) + &d_rat) / rat_int(2),
            _ => -&juv - (Rat::one() + &d_rat) / rat_int(2),
        };
        checks.push(IdentityOutcome::from_residual(
            &format!("trace identity (branch {branch})"),
            sum - rhs,
        ));
    } else {
        checks.push(IdentityOutcome::not_applicable("trace identity"));
    }

    // mean-curvature pairings per case
    let mean = mean_curvature(h)?;
    if !dc.a {
        // <H, B - bZ> = (dim s)/2 + x (|V|^2/2 + 1 + b^2) / |X2|^2
        let xi = ctx.b().sub(&ctx.z().scale(&dc.b));
        let lhs = ctx.metric(&mean, &xi)?;
        let mut rhs = rat_int(dc.dim_s as i64) / rat_int(2);
        if dc.x {
            rhs += (&v_norm2 / rat_int(2) + Rat::one() + &dc.b * &dc.b) / &dc.x2_norm2;
        }
        checks.push(IdentityOutcome::from_residual(
            "<H, B - bZ> case formula (a=0)",
            lhs - rhs,
        ));
    } else {
        checks.push(IdentityOutcome::not_applicable(
            "<H, B - bZ> case formula (a=0)",
        ));
    }

    if dc.a && !dc.x && !dc.u.is_zero() {
        // <H, |U|^2 B - U> = |U|^2 (dim s + 1)/2 + d/2
        let xi = ctx.b().scale(&u_norm2).sub(&dc.u);
        let lhs = ctx.metric(&mean, &xi)?;
        let rhs = &u_norm2 * rat_int(dc.dim_s as i64 + 1) / rat_int(2)
            + rat_int(dc.d as i64) / rat_int(2);
        checks.push(IdentityOutcome::from_residual(
            "<H, xi> case formula (a=1, x=0)",
            lhs - rhs,
        ));
    } else {
        checks.push(IdentityOutcome::not_applicable(
            "<H, xi> case formula (a=1, x=0)",
        ));
    }

    if dc.a && dc.x {
        // xi = |U|^2 B - U - b(1+|U|^2) Z against the expanded pairing
        let xi = ctx
            .b()
            .scale(&u_norm2)
            .sub(&dc.u)
            .sub(&ctx.z().scale(&(&dc.b * (Rat::one() + &u_norm2))));
        let lhs = ctx.metric(&mean, &xi)?;
        let mut sum = Rat::zero();
        for e in dc.w.iter().take(dc.d) {
            sum += ctx.metric(&ctx.bracket(&e.phi, &e.vec)?, &dc.u)? / &e.norm2;
        }
        let rv_u = ctx.metric(&ctx.bracket(&dc.r, &dc.v)?, &dc.u)?;
        let b2 = &dc.b * &dc.b;
        let denom = rat_int(2) * (&b2 + &v_norm2 + Rat::one());
        let rhs = rat_int(dc.dim_s as i64 + 2) / rat_int(2) * &u_norm2 - sum
            + (&b2 + &u_norm2 * (Rat::one() + &b2) - rat_int(2) * &juv - rat_int(2) * rv_u) / denom;
        checks.push(IdentityOutcome::from_residual(
            "<H, xi> case formula (a=1, x=1)",
            lhs - rhs,
        ));
    } else {
        checks.push(IdentityOutcome::not_applicable(
            "<H, xi> case formula (a=1, x=1)",
        ));
    }

    Ok(IdentitySuiteResult {
        checks,
        trace_branch,
    })
}

// ---- classification ---------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    A,
    B,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    /// Totally geodesic real hyperbolic subspace of dimension `k <= n-1`.
    RealHyperbolic {
        k: usize,
    },
    /// Totally geodesic real hyperbolic subspace of maximal dimension `n`
    /// (the focal set of a homogeneous isoparametric family).
    RealHyperbolicFocal,
    /// Totally geodesic complex hyperbolic subspace of complex dimension `k`.
    ComplexHyperbolic {
        k: usize,
    },
    /// The minimal homogeneous hypersurface (`m` a hyperplane of `g_a`).
    Lohnherr,
    /// Focal submanifold of an isoparametric family (`m` neither complex nor
    /// a hyperplane).
    GenericFocal,
    /// Non-minimal orbit with the tangent space of a horosphere.
    HorosphereLike,
    OtherNonminimal,
    /// The orbit is the base point (dimension zero).
    Point,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::RealHyperbolic { k } => write!(f, "RH^{k}"),
            Label::RealHyperbolicFocal => write!(f, "RH^n-focal"),
            Label::ComplexHyperbolic { k } => write!(f, "CH^{k}"),
            Label::Lohnherr => write!(f, "Lohnherr"),
            Label::GenericFocal => write!(f, "generic-focal"),
            Label::HorosphereLike => write!(f, "horosphere-like-nonminimal"),
            Label::OtherNonminimal => write!(f, "other-nonminimal"),
            Label::Point => write!(f, "point"),
        }
    }
}

/// Record of the reduction to canonical position.
#[derive(Clone, Debug)]
pub struct ReductionTrail {
    /// Whether the reduction changed the algebra (`q` or `T` nontrivial).
    pub applied: bool,
    /// Exact agreement of tangent space and second fundamental form between
    /// `h` and its reduced counterpart.
    pub sandwich_verified: bool,
    /// Generators of the reduced algebra, formatted over the labels.
    pub reduced_generators: Vec<String>,
}

/// Classification verdict for the orbit of a subalgebra.
#[derive(Clone, Debug)]
pub struct ClassificationVerdict {
    pub minimal: bool,
    pub family: Family,
    pub label: Label,
    pub reduction: Option<ReductionTrail>,
    pub certificate: Option<NonminimalityCertificate>,
}

/// Classifies the orbit: computes minimality, reduces minimal orbits to
/// canonical position, and attaches the family/label of the classification
/// (or a positivity certificate for non-minimal orbits).
pub fn match_classification(h: &Subalgebra) -> Result<ClassificationVerdict> {
    let ctx = h.context().clone();
    let dc = h.decomposition().clone();
    let report = minimality_report(h)?;

    if dc.tangent_dim() == 0 {
        return Ok(ClassificationVerdict {
            minimal: true,
            family: Family::None,
            label: Label::Point,
            reduction: None,
            certificate: None,
        });
    }

    if !report.is_minimal {
        let label = if !dc.a && dc.x && dc.dim_s == 2 * (ctx.n - 1) {
            Label::HorosphereLike
        } else {
            Label::OtherNonminimal
        };
        return Ok(ClassificationVerdict {
            minimal: false,
            family: Family::None,
            label,
            reduction: None,
            certificate: report.certificate,
        });
    }

    // Minimality forces the canonical shape; these are consequences of the
    // classification, so violations indicate a bug.
    if !dc.a {
        return Err(Error::Internal(
            "minimal positive-dimensional orbit without an a-direction".into(),
        ));
    }
    if !dc.u.is_zero() || !dc.v.is_zero() || !dc.r.is_zero() || !dc.b.is_zero() || dc.d != 0 {
        return Err(Error::Internal(
            "minimal orbit outside canonical shape".into(),
        ));
    }

    let m: Vec<LieVector> = dc.w.iter().map(|e| e.vec.clone()).collect();
    let mut hp_gens = vec![ctx.b()];
    hp_gens.extend(m.iter().cloned());
    if dc.x {
        hp_gens.push(ctx.z());
    }
    let h_prime = Subalgebra::new(ctx.clone(), hp_gens.clone())
        .map_err(|e| Error::Internal(format!("reduced algebra failed to close: {e}")))?;
    let sandwich_verified = verify_sandwich(h, &h_prime)?;
    let applied = !dc.q.is_empty() || !dc.t.is_zero();
    let reduction = ReductionTrail {
        applied,
        sandwich_verified,
        reduced_generators: hp_gens.iter().map(|g| ctx.format_vector(g)).collect(),
    };

    let angles = kaehler_angles(&ctx, &m)?;
    let dim_m = dc.dim_s;
    let verdict = if !dc.x {
        if !angles.is_totally_real {
            return Err(Error::Internal(
                "minimal orbit with x = 0 but m not totally real".into(),
            ));
        }
        let label = if dim_m == ctx.n - 1 {
            Label::RealHyperbolicFocal
        } else {
            Label::RealHyperbolic { k: dim_m + 1 }
        };
        ClassificationVerdict {
            minimal: true,
            family: Family::A,
            label,
            reduction: Some(reduction),
            certificate: None,
        }
    } else {
        let label = if angles.is_complex {
            Label::ComplexHyperbolic { k: dim_m / 2 + 1 }
        } else if dim_m == 2 * ctx.n - 3 {
            Label::Lohnherr
        } else {
            Label::GenericFocal
        };
        ClassificationVerdict {
            minimal: true,
            family: Family::B,
            label,
            reduction: Some(reduction),
            certificate: None,
        }
    };
    Ok(verdict)
}
