//! Lie subalgebras of the parabolic subalgebra `k0 + a + n`, their canonical
//! decomposition, and conjugation by elements of `AN`.
//!
//! The canonical decomposition splits a subalgebra `h` as
//! `h = q + R X1 + R X2 + m` where `q = h /\ k0`, `X1 = aB + U + T` carries
//! the `a`-direction (with `a` normalized to 1 when present), `X2 =
//! bB + V + xZ + R` carries the `g_{2a}`-direction (with `x` normalized to
//! 1), and `m` consists of "diagonal" vectors `W + Phi(W)` over an orthogonal
//! basis of `s = g_a /\ h_{a+n}`. The correction map `Phi` assigns to each
//! tangent direction its unique `k0`-component inside `h`.

use crate::algebra::{AlgebraContext, LieVector, RootSpace};
use crate::error::{Error, Result};
use crate::linalg::{dot, gram_schmidt, CoordSolver, Mat, SpanBasis};
use crate::scalar::{GaussRat, Rat};
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// Result of a closure test, with a witness when the test fails.
#[derive(Clone, Debug)]
pub struct ClosureOutcome {
    pub closed: bool,
    /// `(i, j, residual)`: `[gens[i], gens[j]]` reduced against the span.
    pub witness: Option<(usize, usize, LieVector)>,
}

/// Checks whether the span of the generators is closed under the bracket.
pub fn closure_check(ctx: &AlgebraContext, gens: &[LieVector]) -> Result<ClosureOutcome> {
    for g in gens {
        if !ctx.in_parabolic(g) {
            return Err(Error::OutsideParabolic);
        }
    }
    let span = SpanBasis::new(ctx.dim, &coeff_rows(gens));
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let br = ctx.bracket(&gens[i], &gens[j])?;
            let resid = span.reduce(&br.coeffs);
            if !resid.iter().all(|c| c.is_zero()) {
                return Ok(ClosureOutcome {
                    closed: false,
                    witness: Some((
                        i,
                        j,
                        LieVector {
                            n: ctx.n,
                            coeffs: resid,
                        },
                    )),
                });
            }
        }
    }
    Ok(ClosureOutcome {
        closed: true,
        witness: None,
    })
}

/// One diagonal generator of the canonical decomposition: a tangent vector
/// `W` in `s`, its `k0`-correction `Phi(W)`, and its squared norm.
#[derive(Clone, Debug, PartialEq)]
pub struct WEntry {
    pub vec: LieVector,
    pub phi: LieVector,
    pub norm2: Rat,
}

/// Canonical decomposition of a subalgebra of `k0 + a + n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalDecomposition {
    pub q: Vec<LieVector>,
    /// Whether the `a`-coefficient of `X1` is 1 (otherwise `X1 = 0`).
    pub a: bool,
    /// Whether the `g_{2a}`-coefficient of `X2` is 1 (otherwise `X2 = 0`).
    pub x: bool,
    pub x1: LieVector,
    pub x2: LieVector,
    pub x1_an: LieVector,
    pub x2_an: LieVector,
    /// `g_a`-components of `X1` and `X2`.
    pub u: LieVector,
    pub v: LieVector,
    /// `B`-coefficient of `X2`.
    pub b: Rat,
    /// `k0`-components of `X1` and `X2`.
    pub t: LieVector,
    pub r: LieVector,
    /// Squared norms of `(X1)_{a+n}` and `(X2)_{a+n}` (zero when absent).
    pub x1_norm2: Rat,
    pub x2_norm2: Rat,
    /// Orthogonal basis of `s` with corrections; the first `d` entries span
    /// `s_d` (nonzero corrections), the rest span `ker Phi` on `s`.
    pub w: Vec<WEntry>,
    pub d: usize,
    pub dim_s: usize,
    pub dim_h: usize,
}

impl CanonicalDecomposition {
    /// The orthogonal generating set of the tangent space `h_{a+n}` with
    /// squared norms: `(X1)_{a+n}`, `(X2)_{a+n}`, then the `W_i`.
    pub fn tangent_generators(&self) -> Vec<(LieVector, Rat)> {
        let mut out = Vec::new();
        if self.a {
            out.push((self.x1_an.clone(), self.x1_norm2.clone()));
        }
        if self.x {
            out.push((self.x2_an.clone(), self.x2_norm2.clone()));
        }
        for e in &self.w {
            out.push((e.vec.clone(), e.norm2.clone()));
        }
        out
    }

    pub fn tangent_dim(&self) -> usize {
        self.dim_s + usize::from(self.a) + usize::from(self.x)
    }
}

/// A Lie subalgebra of `k0 + a + n`, given by generators, with its canonical
/// span and (eagerly computed) canonical decomposition.
#[derive(Clone)]
pub struct Subalgebra {
    ctx: Arc<AlgebraContext>,
    gens: Vec<LieVector>,
    basis: Vec<LieVector>,
    span: SpanBasis,
    htilde: Vec<LieVector>,
    phi_solver: CoordSolver,
    decomp: CanonicalDecomposition,
}

impl std::fmt::Debug for Subalgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subalgebra")
            .field("n", &self.ctx.n)
            .field("dim", &self.basis.len())
            .finish()
    }
}

impl Subalgebra {
    /// Builds a subalgebra from generators; fails if the span is not closed
    /// under the bracket.
    pub fn new(ctx: Arc<AlgebraContext>, gens: Vec<LieVector>) -> Result<Self> {
        let outcome = closure_check(&ctx, &gens)?;
        if let Some((i, j, _)) = outcome.witness {
            return Err(Error::NotClosed { i, j });
        }
        let span = SpanBasis::new(ctx.dim, &coeff_rows(&gens));
        Self::from_span(ctx, gens, span)
    }

    fn from_span(ctx: Arc<AlgebraContext>, gens: Vec<LieVector>, span: SpanBasis) -> Result<Self> {
        let basis: Vec<LieVector> = span
            .basis
            .iter()
            .map(|c| LieVector {
                n: ctx.n,
                coeffs: c.clone(),
            })
            .collect();
        let (decomp, htilde, phi_solver) = decompose_span(&ctx, &basis)?;
        Ok(Subalgebra {
            ctx,
            gens,
            basis,
            span,
            htilde,
            phi_solver,
            decomp,
        })
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[LieVector] {
        &self.gens
    }

    /// RREF-canonical basis of the span.
    pub fn basis(&self) -> &[LieVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &LieVector) -> bool {
        v.n == self.ctx.n && self.span.contains(&v.coeffs)
    }

    pub fn decomposition(&self) -> &CanonicalDecomposition {
        &self.decomp
    }

    /// Whether `h` is contained in `a + n` (no `k0`-components anywhere).
    pub fn is_inside_an(&self) -> bool {
        self.basis.iter().all(|v| self.ctx.an_coords(v).is_ok())
    }

    /// The unique element of `htilde_{k0}` with `x + phi(x)` in `h`, for
    /// `x` in the tangent projection `h_{a+n}`.
    pub fn phi(&self, x: &LieVector) -> Result<LieVector> {
        Ok(self.lift(x)?.sub(x))
    }

    /// The unique lift `x + phi(x)` of a tangent vector into `htilde`.
    pub fn lift(&self, x: &LieVector) -> Result<LieVector> {
        let an = self.ctx.an_coords(x)?;
        let coords = self.phi_solver.solve(&an).ok_or_else(|| {
            Error::Domain("vector is not in the tangent projection of the subalgebra".into())
        })?;
        let mut out = LieVector::zero(self.ctx.n);
        for (c, ht) in coords.iter().zip(&self.htilde) {
            if !c.is_zero() {
                out = out.add(&ht.scale(c));
            }
        }
        Ok(out)
    }

    /// Membership test for the tangent projection `h_{a+n}`.
    pub fn tangent_contains(&self, x: &LieVector) -> bool {
        self.ctx
            .an_coords(x)
            .ok()
            .and_then(|an| self.phi_solver.solve(&an))
            .is_some()
    }
}

/// Smallest bracket-closed subspace containing the generators, by iterated
/// bracket augmentation to a fixed point.
pub fn lie_span(ctx: &Arc<AlgebraContext>, gens: &[LieVector]) -> Result<Subalgebra> {
    for g in gens {
        if !ctx.in_parabolic(g) {
            return Err(Error::OutsideParabolic);
        }
    }
    let mut span = SpanBasis::new(ctx.dim, &coeff_rows(gens));
    loop {
        let basis: Vec<LieVector> = span
            .basis
            .iter()
            .map(|c| LieVector {
                n: ctx.n,
                coeffs: c.clone(),
            })
            .collect();
        let mut new_rows: Vec<Vec<Rat>> = Vec::new();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let br = ctx.bracket(&basis[i], &basis[j])?;
                let resid = span.reduce(&br.coeffs);
                if !resid.iter().all(|c| c.is_zero()) {
                    new_rows.push(br.coeffs);
                }
            }
        }
        if new_rows.is_empty() {
            let final_basis: Vec<LieVector> = basis;
            for v in &final_basis {
                if !ctx.in_parabolic(v) {
                    return Err(Error::OutsideParabolic);
                }
            }
            return Subalgebra::from_span(ctx.clone(), gens.to_vec(), span);
        }
        let mut all = span.basis.clone();
        all.extend(new_rows);
        span = SpanBasis::new(ctx.dim, &all);
    }
}

/// Canonical decomposition of a closed subalgebra (accessor form).
pub fn decompose(h: &Subalgebra) -> &CanonicalDecomposition {
    h.decomposition()
}

fn coeff_rows(vs: &[LieVector]) -> Vec<Vec<Rat>> {
    vs.iter().map(|v| v.coeffs.clone()).collect()
}

fn decompose_span(
    ctx: &AlgebraContext,
    basis: &[LieVector],
) -> Result<(CanonicalDecomposition, Vec<LieVector>, CoordSolver)> {
    let n = ctx.n;
    let an_dim = 2 * n;
    let dim_h = basis.len();

    let para: Vec<(Vec<Rat>, Vec<Rat>)> = basis
        .iter()
        .map(|v| ctx.para_coords(v))
        .collect::<Result<_>>()?;

    // q = h /\ k0: kernel of the a+n projection restricted to h.
    let mut proj = Mat::zero(an_dim, dim_h);
    for (i, (_, an)) in para.iter().enumerate() {
        for r in 0..an_dim {
            proj.set(r, i, an[r].clone());
        }
    }
    let q_vecs = combos(ctx, basis, &proj.kernel());
    let q = SpanBasis::new(ctx.dim, &coeff_rows(&q_vecs))
        .basis
        .iter()
        .map(|c| LieVector {
            n,
            coeffs: c.clone(),
        })
        .collect::<Vec<_>>();

    // htilde: Q_theta-orthogonal complement of q inside h.
    let mut orth = Mat::zero(q.len(), dim_h);
    for (r, qv) in q.iter().enumerate() {
        for (i, hv) in basis.iter().enumerate() {
            orth.set(r, i, ctx.qtheta(qv, hv)?);
        }
    }
    let htilde_raw = combos(ctx, basis, &orth.kernel());
    let htilde: Vec<LieVector> = SpanBasis::new(ctx.dim, &coeff_rows(&htilde_raw))
        .basis
        .iter()
        .map(|c| LieVector {
            n,
            coeffs: c.clone(),
        })
        .collect();
    if htilde.len() + q.len() != dim_h {
        return Err(Error::Internal("q + htilde does not split h".into()));
    }

    // Tangent projection h_{a+n}, coordinatized over a+n; the projection is
    // injective on htilde.
    let an_parts: Vec<Vec<Rat>> = htilde
        .iter()
        .map(|v| ctx.para_coords(v).map(|(_, an)| an))
        .collect::<Result<_>>()?;
    let phi_solver = CoordSolver::new(an_dim, &an_parts);

    let lift = |x_an: &[Rat]| -> Result<LieVector> {
        let coords = phi_solver
            .solve(x_an)
            .ok_or_else(|| Error::Internal("tangent vector has no lift".into()))?;
        let mut out = LieVector::zero(n);
        for (c, ht) in coords.iter().zip(&htilde) {
            if !c.is_zero() {
                out = out.add(&ht.scale(c));
            }
        }
        Ok(out)
    };
    let phi_of =
        |x_an: &[Rat]| -> Result<LieVector> { Ok(lift(x_an)?.sub(&ctx.from_an_coords(x_an))) };

    // s = g_a /\ h_{a+n}: tangent vectors with no B or Z coefficient.
    let dim_t = an_parts.len();
    let mut bz = Mat::zero(2, dim_t);
    for (i, an) in an_parts.iter().enumerate() {
        bz.set(0, i, an[0].clone());
        bz.set(1, i, an[an_dim - 1].clone());
    }
    let s_rows: Vec<Vec<Rat>> = bz
        .kernel()
        .iter()
        .map(|c| combo_rows(&an_parts, c, an_dim))
        .collect();
    let s_span = SpanBasis::new(an_dim, &s_rows);
    let dim_s = s_span.dim();

    // ker Phi on s, via the k0-coordinates of the corrections.
    let k0_dim = (n - 1) * (n - 1);
    let mut phi_mat = Mat::zero(k0_dim, dim_s);
    for (i, srow) in s_span.basis.iter().enumerate() {
        let p = phi_of(srow)?;
        let (k0c, _) = ctx.para_coords(&p)?;
        for r in 0..k0_dim {
            phi_mat.set(r, i, k0c[r].clone());
        }
    }
    let mnd_rows: Vec<Vec<Rat>> = phi_mat
        .kernel()
        .iter()
        .map(|c| combo_rows(&s_span.basis, c, an_dim))
        .collect();
    let mnd_span = SpanBasis::new(an_dim, &mnd_rows);

    // s_d: orthogonal complement of ker Phi inside s (the metric on adapted
    // a+n coordinates is the standard dot product).
    let mut orth_s = Mat::zero(mnd_span.dim(), dim_s);
    for (r, w) in mnd_span.basis.iter().enumerate() {
        for (i, srow) in s_span.basis.iter().enumerate() {
            orth_s.set(r, i, dot(w, srow));
        }
    }
    let sd_rows: Vec<Vec<Rat>> = orth_s
        .kernel()
        .iter()
        .map(|c| combo_rows(&s_span.basis, c, an_dim))
        .collect();
    let d = sd_rows.len();
    if d + mnd_span.dim() != dim_s {
        return Err(Error::Internal("s_d + ker Phi does not split s".into()));
    }

    // Orthogonal W basis: s_d part first, then ker Phi part.
    let mut w_entries: Vec<WEntry> = Vec::new();
    for rows in [&sd_rows, &mnd_span.basis] {
        for (w, n2) in gram_schmidt(rows, dot) {
            let phi = phi_of(&w)?;
            w_entries.push(WEntry {
                vec: ctx.from_an_coords(&w),
                phi,
                norm2: n2,
            });
        }
    }
    if w_entries.len() != dim_s {
        return Err(Error::Internal("orthogonal basis of s is short".into()));
    }
    for (i, e) in w_entries.iter().enumerate() {
        let phi_zero = e.phi.is_zero();
        if (i < d && phi_zero) || (i >= d && !phi_zero) {
            return Err(Error::Internal("Phi support does not match s_d".into()));
        }
    }

    // Complement of s inside the tangent projection; carries X1 and X2.
    let mut orth_w = Mat::zero(dim_s, dim_t);
    for (r, srow) in s_span.basis.iter().enumerate() {
        for (i, an) in an_parts.iter().enumerate() {
            orth_w.set(r, i, dot(srow, an));
        }
    }
    let wspace_rows: Vec<Vec<Rat>> = orth_w
        .kernel()
        .iter()
        .map(|c| combo_rows(&an_parts, c, an_dim))
        .collect();
    let wspace = SpanBasis::new(an_dim, &wspace_rows);
    let k = wspace.dim();
    if k > 2 {
        return Err(Error::Internal("a + g_2a block has rank > 2".into()));
    }

    // Split off the zero-Z-coefficient line (X1 direction).
    let mut zrow = Mat::zero(1, k);
    for (i, w) in wspace.basis.iter().enumerate() {
        zrow.set(0, i, w[an_dim - 1].clone());
    }
    let w0_rows: Vec<Vec<Rat>> = zrow
        .kernel()
        .iter()
        .map(|c| combo_rows(&wspace.basis, c, an_dim))
        .collect();

    let zero_an = vec![Rat::zero(); an_dim];
    let mut x1_an_coords = zero_an.clone();
    let mut a_flag = false;
    match w0_rows.len() {
        0 => {}
        1 => {
            let w0 = &w0_rows[0];
            let beta = w0[0].clone();
            if beta.is_zero() {
                return Err(Error::Internal("X1 direction has no a-component".into()));
            }
            for (dst, c) in x1_an_coords.iter_mut().zip(w0) {
                *dst = c / &beta;
            }
            a_flag = true;
        }
        _ => return Err(Error::Internal("more than one X1 direction".into())),
    }

    let mut x2_an_coords = zero_an.clone();
    let mut x_flag = false;
    if k > w0_rows.len() {
        let wz = wspace
            .basis
            .iter()
            .find(|w| !w[an_dim - 1].is_zero())
            .ok_or_else(|| Error::Internal("missing Z-direction generator".into()))?;
        let mut cand = wz.clone();
        if a_flag {
            let c = dot(&cand, &x1_an_coords) / dot(&x1_an_coords, &x1_an_coords);
            for (dst, s) in cand.iter_mut().zip(&x1_an_coords) {
                *dst -= &c * s;
            }
        }
        let zeta = cand[an_dim - 1].clone();
        if zeta.is_zero() {
            return Err(Error::Internal("X2 lost its Z-component".into()));
        }
        for dst in cand.iter_mut() {
            *dst /= &zeta;
        }
        x2_an_coords = cand;
        x_flag = true;
    }

    let x1_an = ctx.from_an_coords(&x1_an_coords);
    let x2_an = ctx.from_an_coords(&x2_an_coords);
    let (x1, t) = if a_flag {
        let l = lift(&x1_an_coords)?;
        let t = l.sub(&x1_an);
        (l, t)
    } else {
        (LieVector::zero(n), LieVector::zero(n))
    };
    let (x2, r) = if x_flag {
        let l = lift(&x2_an_coords)?;
        let r = l.sub(&x2_an);
        (l, r)
    } else {
        (LieVector::zero(n), LieVector::zero(n))
    };

    let galpha_part = |an: &[Rat]| -> LieVector {
        let mut c = an.to_vec();
        c[0] = Rat::zero();
        c[an_dim - 1] = Rat::zero();
        ctx.from_an_coords(&c)
    };
    let u = galpha_part(&x1_an_coords);
    let v = galpha_part(&x2_an_coords);
    let b = x2_an_coords[0].clone();

    // Exact consistency checks; these are consequences of the construction,
    // so a failure is a bug, not bad input.
    let a_val = if a_flag { Rat::one() } else { Rat::zero() };
    let uv = dot(
        &ctx.an_coords(&u).unwrap_or_else(|_| zero_an.clone()),
        &ctx.an_coords(&v).unwrap_or_else(|_| zero_an.clone()),
    );
    if !(a_val * &b + uv).is_zero() {
        return Err(Error::Internal("a*b + <U,V> != 0".into()));
    }
    if dim_h != q.len() + dim_s + k {
        return Err(Error::Internal("direct sum dimensions".into()));
    }

    let decomp = CanonicalDecomposition {
        q,
        a: a_flag,
        x: x_flag,
        x1,
        x2,
        x1_an,
        x2_an,
        u,
        v,
        b,
        t,
        r,
        x1_norm2: dot(&x1_an_coords, &x1_an_coords),
        x2_norm2: dot(&x2_an_coords, &x2_an_coords),
        w: w_entries,
        d,
        dim_s,
        dim_h,
    };
    Ok((decomp, htilde, phi_solver))
}

fn combos(ctx: &AlgebraContext, basis: &[LieVector], coeffs: &[Vec<Rat>]) -> Vec<LieVector> {
    coeffs
        .iter()
        .map(|c| {
            let mut out = LieVector::zero(ctx.n);
            for (ci, v) in c.iter().zip(basis) {
                if !ci.is_zero() {
                    out = out.add(&v.scale(ci));
                }
            }
            out
        })
        .collect()
}

fn combo_rows(rows: &[Vec<Rat>], coeffs: &[Rat], len: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); len];
    for (c, row) in coeffs.iter().zip(rows) {
        if !c.is_zero() {
            for (o, r) in out.iter_mut().zip(row) {
                *o += c * r;
            }
        }
    }
    out
}

// ---- AN group elements -------------------------------------------------------

#[derive(Clone, Debug)]
enum Factor {
    /// `exp(t B)` parametrized by the rational multiplier `lambda = e^{t/2}`,
    /// which keeps the adjoint action (eigenvalues `lambda^{+-1}`,
    /// `lambda^{+-2}`) exactly rational.
    A { lambda: Rat },
    /// `exp(X)` for nilpotent `X` in `n`; the matrix exponential terminates.
    N { x: LieVector },
}

/// An element of the solvable group `AN`, kept as a product of exact factors
/// together with its matrix representative.
#[derive(Clone, Debug)]
pub struct GroupElement {
    n: usize,
    factors: Vec<Factor>,
    matrix: Vec<GaussRat>,
    inverse: Vec<GaussRat>,
}

impl GroupElement {
    pub fn identity(ctx: &AlgebraContext) -> Self {
        let s = ctx.matrix_size();
        GroupElement {
            n: ctx.n,
            factors: Vec::new(),
            matrix: identity_mat(s),
            inverse: identity_mat(s),
        }
    }

    /// `exp(t B)` with `e^{t/2} = lambda`; requires `lambda > 0`.
    pub fn a_factor(ctx: &AlgebraContext, lambda: Rat) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::Domain("A-factor multiplier must be positive".into()));
        }
        let matrix = a_matrix(ctx, &lambda);
        let inverse = a_matrix(ctx, &(Rat::one() / &lambda));
        Ok(GroupElement {
            n: ctx.n,
            factors: vec![Factor::A { lambda }],
            matrix,
            inverse,
        })
    }

    /// `exp(X)` for `X` in `n = g_a + g_{2a}` (exact polynomial exponential).
    pub fn n_exp(ctx: &AlgebraContext, x: &LieVector) -> Result<Self> {
        if !ctx.in_root_spaces(x, &[RootSpace::Alpha, RootSpace::TwoAlpha])? {
            return Err(Error::Domain("N-factor argument must lie in n".into()));
        }
        let matrix = nilpotent_exp(ctx, x)?;
        let inverse = nilpotent_exp(ctx, &x.neg())?;
        Ok(GroupElement {
            n: ctx.n,
            factors: vec![Factor::N { x: x.clone() }],
            matrix,
            inverse,
        })
    }

    /// Group product `self * other`.
    pub fn compose(&self, ctx: &AlgebraContext, other: &GroupElement) -> Result<Self> {
        if self.n != other.n || self.n != ctx.n {
            return Err(Error::ContextMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let s = ctx.matrix_size();
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(GroupElement {
            n: self.n,
            factors,
            matrix: mat_mul(s, &self.matrix, &other.matrix),
            inverse: mat_mul(s, &other.inverse, &self.inverse),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut factors = Vec::with_capacity(self.factors.len());
        for f in self.factors.iter().rev() {
            factors.push(match f {
                Factor::A { lambda } => Factor::A {
                    lambda: Rat::one() / lambda,
                },
                Factor::N { x } => Factor::N { x: x.neg() },
            });
        }
        GroupElement {
            n: self.n,
            factors,
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// Adjoint action `Ad(g) X = g X g^{-1}` (exact).
    pub fn ad(&self, ctx: &AlgebraContext, v: &LieVector) -> Result<LieVector> {
        let s = ctx.matrix_size();
        let m = ctx.matrix_of(v);
        let gm = mat_mul(s, &self.matrix, &m);
        let gmg = mat_mul(s, &gm, &self.inverse);
        ctx.vector_of_matrix(&gmg)
    }
}

fn identity_mat(s: usize) -> Vec<GaussRat> {
    let mut m = vec![GaussRat::zero(); s * s];
    for i in 0..s {
        m[i * s + i] = GaussRat::one();
    }
    m
}

fn mat_mul(s: usize, a: &[GaussRat], b: &[GaussRat]) -> Vec<GaussRat> {
    let mut out = vec![GaussRat::zero(); s * s];
    for i in 0..s {
        for k in 0..s {
            let aik = &a[i * s + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..s {
                let bkj = &b[k * s + j];
                if !bkj.is_zero() {
                    out[i * s + j] = &out[i * s + j] + &(aik * bkj);
                }
            }
        }
    }
    out
}

fn a_matrix(ctx: &AlgebraContext, lambda: &Rat) -> Vec<GaussRat> {
    let s = ctx.matrix_size();
    let half = Rat::new(1.into(), 2.into());
    let cosh = (lambda + Rat::one() / lambda) * &half;
    let sinh = (lambda - Rat::one() / lambda) * &half;
    let mut m = identity_mat(s);
    m[0] = GaussRat::from_rat(cosh.clone());
    m[1] = GaussRat::from_rat(sinh.clone());
    m[s] = GaussRat::from_rat(sinh);
    m[s + 1] = GaussRat::from_rat(cosh);
    m
}

fn nilpotent_exp(ctx: &AlgebraContext, x: &LieVector) -> Result<Vec<GaussRat>> {
    let s = ctx.matrix_size();
    let m = ctx.matrix_of(x);
    let m2 = mat_mul(s, &m, &m);
    let m3 = mat_mul(s, &m2, &m);
    if m3.iter().any(|e| !e.is_zero()) {
        return Err(Error::Internal("N-factor is not 3-step nilpotent".into()));
    }
    let half = Rat::new(1.into(), 2.into());
    let mut out = identity_mat(s);
    for i in 0..s * s {
        out[i] = &(&out[i] + &m[i]) + &m2[i].scale(&half);
    }
    Ok(out)
}

/// `Ad(g^{-1}) h` for `g` in `AN`: the subalgebra whose orbit through the
/// base point is congruent (via `g`) to the orbit of `h` through `g . o`.
pub fn conjugate_to_base_point(h: &Subalgebra, g: &GroupElement) -> Result<Subalgebra> {
    let ctx = h.context().clone();
    let ginv = g.inverse();
    let new_gens: Vec<LieVector> = h
        .basis()
        .iter()
        .map(|v| ginv.ad(&ctx, v))
        .collect::<Result<_>>()?;
    for v in &new_gens {
        if !ctx.in_parabolic(v) {
            return Err(Error::Internal(
                "AN-conjugation left the parabolic subalgebra".into(),
            ));
        }
    }
    match Subalgebra::new(ctx, new_gens) {
        Ok(s) => Ok(s),
        Err(Error::NotClosed { .. }) => Err(Error::Internal(
            "AN-conjugation broke bracket closure".into(),
        )),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::linalg::solve_linear;
    use crate::scalar::{rat, rat_int};

    /// Solves for an element of k0 with prescribed brackets against the
    /// given g_a vectors (test helper).
    fn k0_with_action(ctx: &AlgebraContext, pairs: &[(LieVector, LieVector)]) -> Option<LieVector> {
        let k0 = ctx.k0_basis();
        let rows = ctx.dim * pairs.len();
        let mut a = Mat::zero(rows, k0.len());
        let mut rhs = vec![Rat::zero(); rows];
        for (p, (u, target)) in pairs.iter().enumerate() {
            for (j, t) in k0.iter().enumerate() {
                let br = ctx.bracket(t, u).unwrap();
                for i in 0..ctx.dim {
                    a.set(p * ctx.dim + i, j, br.coeffs[i].clone());
                }
            }
            for i in 0..ctx.dim {
                rhs[p * ctx.dim + i] = target.coeffs[i].clone();
            }
        }
        let sol = solve_linear(&a, &rhs)?;
        let mut out = LieVector::zero(ctx.n);
        for (c, t) in sol.iter().zip(k0) {
            if !c.is_zero() {
                out = out.add(&t.scale(c));
            }
        }
        // solve_linear can return a least-structure phantom; verify
        for (u, target) in pairs {
            if &ctx.bracket(&out, u).unwrap() != target {
                return None;
            }
        }
        Some(out)
    }

    #[test]
    fn closure_examples() {
        let ctx = build_algebra(3).unwrap();
        let b = ctx.b();
        let e1 = ctx.e(0);
        let f1 = ctx.f(0);

        let ok = closure_check(&ctx, &[b.clone(), e1.clone()]).unwrap();
        assert!(ok.closed);

        let bad = closure_check(&ctx, &[b.clone(), e1.clone(), f1.clone()]).unwrap();
        assert!(!bad.closed);
        let (i, j, resid) = bad.witness.unwrap();
        assert_eq!((i, j), (1, 2));
        assert_eq!(resid, ctx.z()); // [E1, F1] = Z is the escape

        // totally real span with B is closed
        let gens = vec![ctx.e(0), ctx.e(1), b.clone()];
        assert!(closure_check(&ctx, &gens).unwrap().closed);

        // generators outside the parabolic subalgebra are rejected
        let theta_e1 = ctx.cartan_involution(&e1).unwrap();
        assert!(matches!(
            closure_check(&ctx, &[theta_e1]),
            Err(Error::OutsideParabolic)
        ));
    }

    #[test]
    fn lie_span_examples() {
        let ctx = build_algebra(3).unwrap();
        let b = ctx.b();
        let e1 = ctx.e(0);
        let f1 = ctx.f(0);

        // one augmentation step adds Z, the next is stable
        let h = lie_span(&ctx, &[b.clone(), e1.clone(), f1.clone()]).unwrap();
        assert_eq!(h.dim(), 4);
        assert!(h.contains(&ctx.z()));

        let hz = lie_span(&ctx, &[ctx.z()]).unwrap();
        assert_eq!(hz.dim(), 1);

        // a rotation twist drags E2 into the span
        let t = k0_with_action(&ctx, &[(ctx.e(0), ctx.e(1)), (ctx.e(1), ctx.e(0).neg())])
            .expect("rotation generator exists in k0");
        let h = lie_span(&ctx, &[b.add(&t), e1]).unwrap();
        assert!(h.contains(&ctx.e(1)));
    }

    #[test]
    fn subalgebra_new_rejects_open_spans() {
        let ctx = build_algebra(2).unwrap();
        let err = Subalgebra::new(ctx.clone(), vec![ctx.b(), ctx.e(0), ctx.f(0)]).unwrap_err();
        assert!(matches!(err, Error::NotClosed { i: 1, j: 2 }));
    }

    #[test]
    fn decompose_b_e1() {
        let ctx = build_algebra(3).unwrap();
        let h = Subalgebra::new(ctx.clone(), vec![ctx.b(), ctx.e(0)]).unwrap();
        let d = h.decomposition();
        assert!(d.q.is_empty());
        assert!(d.a && !d.x);
        assert_eq!(d.x1, ctx.b());
        assert!(d.u.is_zero() && d.t.is_zero());
        assert!(d.x2.is_zero());
        assert_eq!(d.dim_s, 1);
        assert_eq!(d.d, 0);
        assert_eq!(d.w[0].vec, ctx.e(0));
        assert_eq!(d.x1_norm2, rat_int(1));
    }

    #[test]
    fn decompose_horosphere() {
        let ctx = build_algebra(3).unwrap();
        let mut gens = ctx.adapted_galpha();
        gens.push(ctx.z());
        let h = Subalgebra::new(ctx.clone(), gens).unwrap();
        let d = h.decomposition();
        assert!(d.q.is_empty());
        assert!(!d.a && d.x);
        assert_eq!(d.x2, ctx.z());
        assert!(d.v.is_zero() && d.r.is_zero() && d.b.is_zero());
        assert_eq!(d.dim_s, 4);
        assert_eq!(d.d, 0);
        assert_eq!(d.tangent_dim(), 5);
    }

    #[test]
    fn decompose_twisted_keeps_correction() {
        let ctx = build_algebra(3).unwrap();
        // T acting as a rotation of the complex plane spanned by E1, F1
        let t = k0_with_action(
            &ctx,
            &[
                (ctx.e(0), ctx.f(0)),
                (ctx.f(0), ctx.e(0).neg()),
                (ctx.e(1), LieVector::zero(3)),
                (ctx.f(1), LieVector::zero(3)),
            ],
        )
        .expect("plane rotation exists in k0");
        let gens = vec![ctx.b().add(&t), ctx.e(0), ctx.f(0), ctx.z()];
        let h = Subalgebra::new(ctx.clone(), gens).unwrap();
        let d = h.decomposition();
        assert!(d.a);
        assert_eq!(d.t, t);
        assert_eq!(d.x1, ctx.b().add(&t));
        assert!(d.u.is_zero());
        assert_eq!(d.d, 0); // the corrections on s vanish here
        assert_eq!(d.dim_s, 2);

        // Phi on the tangent projection
        assert_eq!(h.phi(&ctx.b()).unwrap(), t);
        assert!(h.phi(&ctx.e(0)).unwrap().is_zero());
        assert!(h.phi(&ctx.z()).unwrap().is_zero());
        // outside the tangent projection: domain error
        assert!(h.phi(&ctx.e(1)).is_err());
    }

    #[test]
    fn phi_vanishes_inside_an() {
        let ctx = build_algebra(2).unwrap();
        let h = Subalgebra::new(ctx.clone(), vec![ctx.b(), ctx.e(0)]).unwrap();
        let x = ctx.b().add(&ctx.e(0).scale(&rat(3, 7)));
        assert!(h.phi(&x).unwrap().is_zero());
        assert_eq!(h.lift(&x).unwrap(), x);
    }

    #[test]
    fn decompose_is_deterministic_and_idempotent() {
        let ctx = build_algebra(3).unwrap();
        let t = ctx.t(0);
        let gens = vec![ctx.b().add(&t.scale(&rat(1, 2))), ctx.z()];
        let h = lie_span(&ctx, &gens).unwrap();
        let d1 = h.decomposition().clone();
        // rebuild from the canonical basis; everything must coincide
        let h2 = Subalgebra::new(ctx.clone(), h.basis().to_vec()).unwrap();
        assert_eq!(&d1, h2.decomposition());
    }

    #[test]
    fn degenerate_subalgebras() {
        let ctx = build_algebra(2).unwrap();
        let zero = Subalgebra::new(ctx.clone(), vec![]).unwrap();
        assert_eq!(zero.dim(), 0);
        assert_eq!(zero.decomposition().tangent_dim(), 0);

        let q_only = Subalgebra::new(ctx.clone(), vec![ctx.t(0)]).unwrap();
        assert_eq!(q_only.dim(), 1);
        let d = q_only.decomposition();
        assert_eq!(d.q.len(), 1);
        assert_eq!(d.tangent_dim(), 0);
    }

    #[test]
    fn direct_sum_dimension_formula() {
        let ctx = build_algebra(3).unwrap();
        let cases: Vec<Vec<LieVector>> = vec![
            vec![ctx.b(), ctx.e(0)],
            vec![ctx.z()],
            vec![ctx.b(), ctx.e(0), ctx.e(1), ctx.z(), ctx.f(0), ctx.f(1)],
            vec![ctx.t(0), ctx.t(1), ctx.b()],
        ];
        for gens in cases {
            let h = lie_span(&ctx, &gens).unwrap();
            let d = h.decomposition();
            assert_eq!(
                d.dim_h,
                d.q.len() + d.dim_s + usize::from(d.a) + usize::from(d.x)
            );
            // orthogonality of the tangent generating set
            let tg = d.tangent_generators();
            for i in 0..tg.len() {
                for j in (i + 1)..tg.len() {
                    assert!(ctx.metric(&tg[i].0, &tg[j].0).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let ctx = build_algebra(2).unwrap();

        // identity leaves everything alone
        let h = Subalgebra::new(ctx.clone(), vec![ctx.b()]).unwrap();
        let id = GroupElement::identity(&ctx);
        let hc = conjugate_to_base_point(&h, &id).unwrap();
        assert_eq!(hc.basis(), h.basis());

        // a is abelian: exp(tB) fixes span{B}
        let g = GroupElement::a_factor(&ctx, rat_int(2)).unwrap();
        let hc = conjugate_to_base_point(&h, &g).unwrap();
        assert_eq!(hc.basis(), h.basis());

        // g_{2a} is central in n: exp(E1) fixes span{Z}
        let hz = Subalgebra::new(ctx.clone(), vec![ctx.z()]).unwrap();
        let g = GroupElement::n_exp(&ctx, &ctx.e(0)).unwrap();
        let hc = conjugate_to_base_point(&hz, &g).unwrap();
        assert_eq!(hc.basis(), hz.basis());
    }

    #[test]
    fn ad_preserves_brackets_exactly() {
        let ctx = build_algebra(3).unwrap();
        let g1 = GroupElement::a_factor(&ctx, rat(2, 3)).unwrap();
        let g2 = GroupElement::n_exp(
            &ctx,
            &ctx.e(0).add(&ctx.f(1).scale(&rat_int(2))).add(&ctx.z()),
        )
        .unwrap();
        let g = g1.compose(&ctx, &g2).unwrap();
        let samples = [
            ctx.b(),
            ctx.e(0),
            ctx.f(1),
            ctx.z(),
            ctx.t(2),
            ctx.b().add(&ctx.t(1)).add(&ctx.e(1)),
        ];
        for x in &samples {
            for y in &samples {
                let lhs = g.ad(&ctx, &ctx.bracket(x, y).unwrap()).unwrap();
                let rhs = ctx
                    .bracket(&g.ad(&ctx, x).unwrap(), &g.ad(&ctx, y).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        // and g * g^{-1} acts trivially
        let gg = g.compose(&ctx, &g.inverse()).unwrap();
        for x in &samples {
            assert_eq!(&gg.ad(&ctx, x).unwrap(), x);
        }
    }

    #[test]
    fn a_factor_rejects_nonpositive_multiplier() {
        let ctx = build_algebra(2).unwrap();
        assert!(GroupElement::a_factor(&ctx, rat_int(0)).is_err());
        assert!(GroupElement::a_factor(&ctx, rat_int(-1)).is_err());
    }

    #[test]
    fn n_exp_rejects_non_nilpotent_argument() {
        let ctx = build_algebra(2).unwrap();
        assert!(GroupElement::n_exp(&ctx, &ctx.b()).is_err());
        assert!(GroupElement::n_exp(&ctx, &ctx.t(0)).is_err());
    }
}
