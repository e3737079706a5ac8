//! Extrinsic geometry of orbits at the base point: tangent/normal splitting,
//! second fundamental form, mean curvature, minimality, total geodesy, and
//! Kaehler angles.
//!
//! The second fundamental form is computed along two independent routes that
//! must agree exactly:
//!
//! * `sff_an` evaluates the closed formula for subgroups of the parabolic
//!   group, expressed entirely inside `a + n`;
//! * `sff_p` lifts tangent vectors through `Psi` into `p` and applies the
//!   general orbit formula `II(X,Y) = [X_k, Y]` projected onto the normal
//!   space.
//!
//! For subalgebras of `a + n` a third route, `koszul_sff`, recovers the same
//! values from the Levi-Civita connection of the left-invariant metric via
//! the six-term formula.

use crate::algebra::{AlgebraContext, LieVector, RootSpace};
use crate::error::{Error, Result};
use crate::linalg::{dot, gram_schmidt, Mat};
use crate::scalar::{rat, rat_int, Rat};
use crate::subalg::Subalgebra;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::Arc;

/// Orthogonal splitting of `a + n` into the tangent and normal spaces of an
/// orbit at the base point.
#[derive(Clone, Debug)]
pub struct TangentNormalSplit {
    ctx: Arc<AlgebraContext>,
    /// Orthogonal tangent generating set with squared norms.
    pub tangent: Vec<(LieVector, Rat)>,
    /// Orthogonal basis of the normal space with squared norms.
    pub normal: Vec<(LieVector, Rat)>,
}

impl TangentNormalSplit {
    pub fn tangent_dim(&self) -> usize {
        self.tangent.len()
    }

    pub fn normal_dim(&self) -> usize {
        self.normal.len()
    }

    /// Orthogonal projection of a vector of `a + n` onto the tangent space.
    pub fn project_tangent(&self, v: &LieVector) -> Result<LieVector> {
        let _ = self.ctx.an_coords(v)?;
        let mut out = LieVector::zero(self.ctx.n);
        for (t, n2) in &self.tangent {
            let c = self.ctx.metric(v, t)? / n2;
            if !c.is_zero() {
                out = out.add(&t.scale(&c));
            }
        }
        Ok(out)
    }

    /// Orthogonal projection onto the normal space.
    pub fn project_normal(&self, v: &LieVector) -> Result<LieVector> {
        Ok(v.sub(&self.project_tangent(v)?))
    }
}

/// Tangent/normal splitting of `a + n` for the orbit of `h`.
pub fn tangent_normal(h: &Subalgebra) -> Result<TangentNormalSplit> {
    let ctx = h.context().clone();
    let an_dim = 2 * ctx.n;
    let tangent = h.decomposition().tangent_generators();
    // normal space: kernel of pairing against the tangent generators
    let mut m = Mat::zero(tangent.len(), an_dim);
    for (r, (t, _)) in tangent.iter().enumerate() {
        let tc = ctx.an_coords(t)?;
        for j in 0..an_dim {
            m.set(r, j, tc[j].clone());
        }
    }
    let normal_rows = m.kernel();
    let normal = gram_schmidt(&normal_rows, dot)
        .into_iter()
        .map(|(v, n2)| (ctx.from_an_coords(&v), n2))
        .collect();
    Ok(TangentNormalSplit {
        ctx,
        tangent,
        normal,
    })
}

fn require_tangent(h: &Subalgebra, v: &LieVector) -> Result<()> {
    if h.tangent_contains(v) {
        Ok(())
    } else {
        Err(Error::Domain(
            "argument is not tangent to the orbit at the base point".into(),
        ))
    }
}

fn project_normal_via(h: &Subalgebra, v: &LieVector) -> Result<LieVector> {
    let ctx = h.context();
    let mut out = v.clone();
    for (t, n2) in h.decomposition().tangent_generators() {
        let c = ctx.metric(v, &t)? / n2;
        if !c.is_zero() {
            out = out.sub(&t.scale(&c));
        }
    }
    Ok(out)
}

/// Second fundamental form via the parabolic formula: with
/// `X = aB + U + xZ`, `Y = bB + V + yZ` tangent and `T` the `k0`-correction
/// of `X`,
/// `II(X,Y) = ((<U,V>/2 + xy)B - (b/2)U - (y/2)JU - (x/2)JV + [T,V]
///            - (bx + <JV,U>/2)Z)^perp`.
pub fn sff_an(h: &Subalgebra, x: &LieVector, y: &LieVector) -> Result<LieVector> {
    require_tangent(h, x)?;
    require_tangent(h, y)?;
    let ctx = h.context();
    let an_dim = 2 * ctx.n;
    let xc = ctx.an_coords(x)?;
    let yc = ctx.an_coords(y)?;
    let galpha = |c: &[Rat]| -> LieVector {
        let mut c = c.to_vec();
        c[0] = Rat::zero();
        c[an_dim - 1] = Rat::zero();
        ctx.from_an_coords(&c)
    };
    let u = galpha(&xc);
    let v = galpha(&yc);
    let xz = &xc[an_dim - 1];
    let yz = &yc[an_dim - 1];
    let by = &yc[0];
    let t = h.phi(x)?;

    let ju = ctx.complex_structure(&u)?;
    let jv = ctx.complex_structure(&v)?;
    let uv = ctx.metric(&u, &v)?;
    let jvu = ctx.metric(&jv, &u)?;

    let mut term = ctx.b().scale(&(&uv / rat_int(2) + xz * yz));
    term = term.sub(&u.scale(&(by / rat_int(2))));
    term = term.sub(&ju.scale(&(yz / rat_int(2))));
    term = term.sub(&jv.scale(&(xz / rat_int(2))));
    term = term.add(&ctx.bracket(&t, &v)?);
    term = term.sub(&ctx.z().scale(&(by * xz + jvu / rat_int(2))));
    project_normal_via(h, &term)
}

/// Second fundamental form via the symmetric-space route: lift `X` into `h`,
/// split off its `k`-part, bracket against `Psi(Y)`, project onto the normal
/// space inside `p`, and pull back through `Psi`.
pub fn sff_p(h: &Subalgebra, x: &LieVector, y: &LieVector) -> Result<LieVector> {
    sff_p_with_shift(h, x, y, None)
}

/// Same as `sff_p` but with an extra shift of the `k`-lift by an element of
/// `h /\ k`; the output must not depend on it.
pub(crate) fn sff_p_with_shift(
    h: &Subalgebra,
    x: &LieVector,
    y: &LieVector,
    shift: Option<&LieVector>,
) -> Result<LieVector> {
    require_tangent(h, x)?;
    require_tangent(h, y)?;
    let ctx = h.context();
    let lifted = h.lift(x)?;
    let theta_l = ctx.cartan_involution(&lifted)?;
    let mut xk = lifted.add(&theta_l).scale(&rat(1, 2));
    if let Some(q) = shift {
        xk = xk.add(q);
    }
    let yp = ctx.psi(y)?;
    let w = ctx.bracket(&xk, &yp)?;
    // project onto the Q_theta-orthocomplement of h_p inside p; Psi carries
    // the orthogonal tangent set to an orthogonal set of h_p with the same
    // squared norms
    let mut wperp = w;
    for (t, n2) in h.decomposition().tangent_generators() {
        let tp = ctx.psi(&t)?;
        let c = ctx.qtheta(&wperp, &tp)? / n2;
        if !c.is_zero() {
            wperp = wperp.sub(&tp.scale(&c));
        }
    }
    ctx.psi_inverse(&wperp)
}

/// Independent oracle for subalgebras of `a + n`: the normal part of the
/// Levi-Civita connection of the left-invariant metric, computed from
/// `2<nabla_X Y, W> = <[X,Y],W> - <[Y,W],X> + <[W,X],Y>` over an orthonormal
/// basis of `a + n`.
pub fn koszul_sff(h: &Subalgebra, x: &LieVector, y: &LieVector) -> Result<LieVector> {
    if !h.is_inside_an() {
        return Err(Error::UnsupportedDomain);
    }
    require_tangent(h, x)?;
    require_tangent(h, y)?;
    let ctx = h.context();
    let mut basis = vec![ctx.b()];
    basis.extend(ctx.adapted_galpha());
    basis.push(ctx.z());
    let br_xy = ctx.bracket(x, y)?;
    let mut nabla = LieVector::zero(ctx.n);
    for w in &basis {
        let t1 = ctx.metric(&br_xy, w)?;
        let t2 = ctx.metric(&ctx.bracket(y, w)?, x)?;
        let t3 = ctx.metric(&ctx.bracket(w, x)?, y)?;
        let c = (t1 - t2 + t3) / rat_int(2);
        if !c.is_zero() {
            nabla = nabla.add(&w.scale(&c));
        }
    }
    project_normal_via(h, &nabla)
}

/// The second fundamental form as a stored symmetric tensor on the
/// orthogonal tangent generating set, with a bilinear evaluator.
#[derive(Clone, Debug)]
pub struct SffTensor {
    ctx: Arc<AlgebraContext>,
    pub basis: Vec<(LieVector, Rat)>,
    /// `values[i][j] = II(t_i, t_j)`, symmetric.
    pub values: Vec<Vec<LieVector>>,
}

impl SffTensor {
    /// Bilinear evaluation at arbitrary tangent vectors.
    pub fn evaluate(&self, x: &LieVector, y: &LieVector) -> Result<LieVector> {
        let cx = self.tangent_coords(x)?;
        let cy = self.tangent_coords(y)?;
        let mut out = LieVector::zero(self.ctx.n);
        for (i, ci) in cx.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in cy.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                out = out.add(&self.values[i][j].scale(&(ci * cj)));
            }
        }
        Ok(out)
    }

    fn tangent_coords(&self, v: &LieVector) -> Result<Vec<Rat>> {
        let mut coords = Vec::with_capacity(self.basis.len());
        let mut recon = LieVector::zero(self.ctx.n);
        for (t, n2) in &self.basis {
            let c = self.ctx.metric(v, t)? / n2;
            if !c.is_zero() {
                recon = recon.add(&t.scale(&c));
            }
            coords.push(c);
        }
        if &recon != v {
            return Err(Error::Domain(
                "argument is not tangent to the orbit at the base point".into(),
            ));
        }
        Ok(coords)
    }

    pub fn is_zero(&self) -> bool {
        self.values
            .iter()
            .all(|row| row.iter().all(|v| v.is_zero()))
    }
}

/// Computes the full tensor on the tangent generating set via `sff_an`.
pub fn sff_tensor(h: &Subalgebra) -> Result<SffTensor> {
    let ctx = h.context().clone();
    let basis = h.decomposition().tangent_generators();
    let k = basis.len();
    let mut values = vec![vec![LieVector::zero(ctx.n); k]; k];
    for i in 0..k {
        for j in i..k {
            let v = sff_an(h, &basis[i].0, &basis[j].0)?;
            values[i][j] = v.clone();
            values[j][i] = v;
        }
    }
    Ok(SffTensor { ctx, basis, values })
}

/// Mean curvature vector `sum_i II(X_i, X_i) / |X_i|^2` over the orthogonal
/// tangent generating set. The zero-dimensional orbit contributes an empty
/// sum (degeneracy is reported, not an error).
pub fn mean_curvature(h: &Subalgebra) -> Result<LieVector> {
    let mut out = LieVector::zero(h.context().n);
    for (t, n2) in h.decomposition().tangent_generators() {
        let ii = sff_an(h, &t, &t)?;
        out = out.add(&ii.scale(&(Rat::one() / n2)));
    }
    Ok(out)
}

pub fn is_minimal(h: &Subalgebra) -> Result<bool> {
    Ok(mean_curvature(h)?.is_zero())
}

pub fn is_totally_geodesic(h: &Subalgebra) -> Result<bool> {
    Ok(sff_tensor(h)?.is_zero())
}

/// A distinguished normal vector along which the mean curvature provably
/// pairs positively, certifying non-minimality.
#[derive(Clone, Debug)]
pub struct NonminimalityCertificate {
    pub xi: LieVector,
    /// Exact value of `<H, xi>` (positive).
    pub value: Rat,
    /// Which case of the decomposition produced `xi`.
    pub case: String,
}

/// Minimality verdict with cross-checked formulas and certificates.
#[derive(Clone, Debug)]
pub struct MinimalityReport {
    pub mean_curvature: LieVector,
    pub is_minimal: bool,
    pub is_totally_geodesic: bool,
    /// Orbit of dimension zero (a point).
    pub degenerate: bool,
    /// `sff_p` agreed with `sff_an` on every tangent generating pair.
    pub formulas_agree: bool,
    /// Koszul route agreement, when `h` is inside `a + n`.
    pub koszul_agrees: Option<bool>,
    pub certificate: Option<NonminimalityCertificate>,
}

/// Full minimality analysis with oracle cross-checks.
pub fn minimality_report(h: &Subalgebra) -> Result<MinimalityReport> {
    let ctx = h.context();
    let dc = h.decomposition();
    let tensor = sff_tensor(h)?;
    let tg = &tensor.basis;

    let mut mean = LieVector::zero(ctx.n);
    for (i, (_, n2)) in tg.iter().enumerate() {
        mean = mean.add(&tensor.values[i][i].scale(&(Rat::one() / n2)));
    }
    let minimal = mean.is_zero();
    let totally_geodesic = tensor.is_zero();

    let mut formulas_agree = true;
    let koszul_applicable = h.is_inside_an();
    let mut koszul_agrees = koszul_applicable.then_some(true);
    for i in 0..tg.len() {
        for j in i..tg.len() {
            let via_p = sff_p(h, &tg[i].0, &tg[j].0)?;
            if via_p != tensor.values[i][j] {
                formulas_agree = false;
            }
            if koszul_applicable {
                let via_k = koszul_sff(h, &tg[i].0, &tg[j].0)?;
                if via_k != tensor.values[i][j] {
                    koszul_agrees = Some(false);
                }
            }
        }
    }

    let certificate = if minimal {
        None
    } else {
        Some(certificate_for(ctx, dc, &mean)?)
    };

    Ok(MinimalityReport {
        mean_curvature: mean,
        is_minimal: minimal,
        is_totally_geodesic: totally_geodesic,
        degenerate: tg.is_empty(),
        formulas_agree,
        koszul_agrees,
        certificate,
    })
}

fn certificate_for(
    ctx: &AlgebraContext,
    dc: &crate::subalg::CanonicalDecomposition,
    mean: &LieVector,
) -> Result<NonminimalityCertificate> {
    let u_norm2 = ctx.metric(&dc.u, &dc.u)?;
    let (xi, case) = if !dc.a {
        // xi = B - b Z
        (ctx.b().sub(&ctx.z().scale(&dc.b)), "a=0".to_string())
    } else if !dc.x {
        if dc.u.is_zero() {
            (mean.clone(), "a=1, x=0, U=0 (fallback H)".to_string())
        } else {
            (ctx.b().scale(&u_norm2).sub(&dc.u), "a=1, x=0".to_string())
        }
    } else {
        let xi = ctx
            .b()
            .scale(&u_norm2)
            .sub(&dc.u)
            .sub(&ctx.z().scale(&(&dc.b * (Rat::one() + &u_norm2))));
        if xi.is_zero() {
            (mean.clone(), "a=1, x=1 (fallback H)".to_string())
        } else {
            (xi, "a=1, x=1".to_string())
        }
    };
    let value = ctx.metric(mean, &xi)?;
    if !value.is_positive() {
        // the case vector must certify positivity for closed subalgebras;
        // fall back to the mean curvature itself
        let value = ctx.metric(mean, mean)?;
        return Ok(NonminimalityCertificate {
            xi: mean.clone(),
            value,
            case: "fallback |H|^2".to_string(),
        });
    }
    Ok(NonminimalityCertificate { xi, value, case })
}

// ---- Kaehler angles ------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KaehlerLabel {
    TotallyReal,
    Complex,
    ConstantAngle,
    Mixed,
}

/// Kaehler angle data of a subspace `m` of `g_a`.
#[derive(Clone, Debug)]
pub struct KaehlerReport {
    pub dim: usize,
    pub is_totally_real: bool,
    pub is_complex: bool,
    pub label: KaehlerLabel,
    /// When the restricted endomorphism `-(P_m J)^2` is a scalar `c * Id`,
    /// the exact `cos^2` of the constant angle.
    pub constant_cos2: Option<Rat>,
    /// Angle multiset in radians (floating point; one value per dimension).
    pub angles: Vec<f64>,
}

/// Kaehler angle analysis of `span(m)` inside `g_a`. Exact tests decide the
/// labels; float values are reporting only.
pub fn kaehler_angles(ctx: &AlgebraContext, m: &[LieVector]) -> Result<KaehlerReport> {
    for v in m {
        if !ctx.in_root_spaces(v, &[RootSpace::Alpha])? {
            return Err(Error::Domain("subspace must lie inside g_a".into()));
        }
    }
    let an_rows: Vec<Vec<Rat>> = m.iter().map(|v| ctx.an_coords(v)).collect::<Result<_>>()?;
    let orth = gram_schmidt(&an_rows, dot);
    let k = orth.len();
    let vecs: Vec<LieVector> = orth.iter().map(|(v, _)| ctx.from_an_coords(v)).collect();
    let norms: Vec<Rat> = orth.iter().map(|(_, n2)| n2.clone()).collect();

    // pairing matrix A_ij = <J w_j, w_i>
    let mut a = Mat::zero(k, k);
    for j in 0..k {
        let jw = ctx.complex_structure(&vecs[j])?;
        for i in 0..k {
            a.set(i, j, ctx.metric(&jw, &vecs[i])?);
        }
    }
    let is_totally_real = (0..k).all(|i| (0..k).all(|j| a.get(i, j).is_zero()));
    let is_complex = {
        let span = crate::linalg::SpanBasis::new(
            2 * ctx.n,
            &orth.iter().map(|(v, _)| v.clone()).collect::<Vec<_>>(),
        );
        let mut ok = true;
        for v in &vecs {
            let jw = ctx.complex_structure(v)?;
            let jc = ctx.an_coords(&jw)?;
            if !span.contains(&jc) {
                ok = false;
                break;
            }
        }
        ok
    };

    // M = -(G^{-1} A)^2 over the orthogonal basis; its spectrum is the
    // cos^2 multiset of the angles
    let mut ka = Mat::zero(k, k); // K = G^{-1} A
    for i in 0..k {
        for j in 0..k {
            ka.set(i, j, a.get(i, j) / &norms[i]);
        }
    }
    let m2 = ka.mul(&ka);
    let constant_cos2 = if k == 0 {
        None
    } else {
        let c = -m2.get(0, 0).clone();
        let mut is_scalar = true;
        for i in 0..k {
            for j in 0..k {
                let expected = if i == j { -c.clone() } else { Rat::zero() };
                if m2.get(i, j) != &expected {
                    is_scalar = false;
                }
            }
        }
        is_scalar.then_some(c)
    };

    let label = if is_totally_real {
        KaehlerLabel::TotallyReal
    } else if is_complex {
        KaehlerLabel::Complex
    } else if constant_cos2.is_some() {
        KaehlerLabel::ConstantAngle
    } else {
        KaehlerLabel::Mixed
    };

    // float angles from the symmetric matrix -S^2, S = G^{-1/2} A G^{-1/2}
    let mut s = vec![vec![0.0f64; k]; k];
    for i in 0..k {
        for j in 0..k {
            let denom = (norms[i].to_f64().unwrap_or(f64::NAN)
                * norms[j].to_f64().unwrap_or(f64::NAN))
            .sqrt();
            s[i][j] = a.get(i, j).to_f64().unwrap_or(f64::NAN) / denom;
        }
    }
    let mut neg_s2 = vec![vec![0.0f64; k]; k];
    for i in 0..k {
        for j in 0..k {
            let mut acc = 0.0;
            for l in 0..k {
                acc += s[i][l] * s[l][j];
            }
            neg_s2[i][j] = -acc;
        }
    }
    let mut angles: Vec<f64> = sym_eigenvalues(neg_s2)
        .into_iter()
        .map(|lambda| lambda.clamp(0.0, 1.0).sqrt().acos())
        .collect();
    angles.sort_by(|p, q| p.partial_cmp(q).unwrap());

    Ok(KaehlerReport {
        dim: k,
        is_totally_real,
        is_complex: is_complex || k == 0,
        label,
        constant_cos2,
        angles,
    })
}

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
fn sym_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-18 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let api = a[p][i];
                    let aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

/// Float-mode minimality: `|H| <= eps` on the floating image of the exact
/// mean curvature (the exact test is authoritative; this mirrors it at the
/// requested tolerance).
pub fn is_minimal_float(h: &Subalgebra, eps: f64) -> Result<bool> {
    let ctx = h.context();
    let mean = mean_curvature(h)?;
    let n2 = ctx.metric(&mean, &mean)?;
    Ok(n2.to_f64().unwrap_or(f64::INFINITY) <= eps * eps)
}
