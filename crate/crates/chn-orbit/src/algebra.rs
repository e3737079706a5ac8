//! The matrix model of `g = su(1,n)` and its restricted root space
//! decomposition.
//!
//! The ambient algebra is realized with the Hermitian form
//! `diag(-1, 1, ..., 1)`, which keeps every structure constant inside the
//! Gaussian rationals. The context fixes, once and deterministically:
//!
//! * an ambient real basis of `g` with exact coordinatization,
//! * the Cartan involution `theta(X) = -X^H` and the Killing form computed
//!   as `tr(ad X . ad Y)` (no closed-form constant is assumed),
//! * `a = R B` with `ad(B)` acting with eigenvalue `1/2` on `g_a`,
//! * the inner product `<.,.>` on `a + n` normalized by `<B,B> = 1`,
//! * a unit `Z` spanning `g_{2a}`, the complex structure `J` with `JB = Z`,
//!   and an orthonormal adapted basis `E_1..E_{n-1}, F_i = J E_i` of `g_a`,
//! * a labeled basis `T_1..T_{(n-1)^2}` of `k_0`.

use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt, CoordSolver, Mat};
use crate::scalar::{rat, rat_int, rat_sqrt, GaussRat, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;
use std::sync::Arc;

/// An element of `g = su(1,n)` as exact coefficients over the fixed ambient
/// basis. This is the universal currency of the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieVector {
    pub n: usize,
    pub coeffs: Vec<Rat>,
}

impl LieVector {
    pub fn zero(n: usize) -> Self {
        let dim = (n + 1) * (n + 1) - 1;
        LieVector {
            n,
            coeffs: vec![Rat::zero(); dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &LieVector) -> LieVector {
        assert_eq!(self.n, other.n);
        LieVector {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &LieVector) -> LieVector {
        assert_eq!(self.n, other.n);
        LieVector {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> LieVector {
        LieVector {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> LieVector {
        self.scale(&-Rat::one())
    }
}

type CMat = Vec<GaussRat>; // flattened (n+1) x (n+1), row-major

/// One identity check with an optional failure witness.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

/// Pass/fail report for a family of exact identities.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Named restricted root spaces, used for grading checks and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootSpace {
    NegTwoAlpha,
    NegAlpha,
    KZero,
    A,
    Alpha,
    TwoAlpha,
}

impl RootSpace {
    /// Eigenvalue of `ad(B)` on the space, times two (so it stays integral).
    pub fn twice_eigenvalue(self) -> i64 {
        match self {
            RootSpace::NegTwoAlpha => -2,
            RootSpace::NegAlpha => -1,
            RootSpace::KZero | RootSpace::A => 0,
            RootSpace::Alpha => 1,
            RootSpace::TwoAlpha => 2,
        }
    }
}

pub const ROOT_SPACES: [RootSpace; 6] = [
    RootSpace::NegTwoAlpha,
    RootSpace::NegAlpha,
    RootSpace::KZero,
    RootSpace::A,
    RootSpace::Alpha,
    RootSpace::TwoAlpha,
];

/// Fully built algebra context for a fixed `n`: matrix model, bracket table,
/// Killing data, root space decomposition, adapted basis and coordinates.
pub struct AlgebraContext {
    pub n: usize,
    /// Real dimension of `g`, i.e. `(n+1)^2 - 1`.
    pub dim: usize,
    msize: usize,
    basis_mats: Vec<CMat>,
    /// `bracket_tab[i][j]` holds `[b_i, b_j]` as a sparse coefficient list.
    bracket_tab: Vec<Vec<Vec<(usize, Rat)>>>,
    theta_mat: Mat,
    killing_mat: Mat,
    /// `kappa = 1 / Killing(B, B)`; the rescaled form is `Q = kappa * Killing`.
    pub kappa: Rat,
    qtheta_mat: Mat,
    // adapted data
    k0_vecs: Vec<LieVector>,
    b_vec: LieVector,
    e_vecs: Vec<LieVector>,
    f_vecs: Vec<LieVector>,
    z_vec: LieVector,
    neg_alpha_vecs: Vec<LieVector>,
    neg_two_alpha_vec: LieVector,
    k_basis: Vec<Vec<Rat>>,
    p_basis: Vec<Vec<Rat>>,
    /// Inverse change of basis: ambient coefficients -> adapted coefficients.
    adapt_inv: Mat,
    psi_solver: CoordSolver,
}

impl std::fmt::Debug for AlgebraContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlgebraContext")
            .field("n", &self.n)
            .field("dim", &self.dim)
            .finish()
    }
}

// Layout of the adapted coordinate vector:
//   [ T_1 .. T_K | B | E_1 .. E_{n-1} | F_1 .. F_{n-1} | Z | thE.. thF.. thZ ]
impl AlgebraContext {
    fn k0_dim(&self) -> usize {
        (self.n - 1) * (self.n - 1)
    }

    fn an_dim(&self) -> usize {
        2 * self.n
    }

    fn idx_z(&self) -> usize {
        self.k0_dim() + 2 * self.n - 1
    }
}

/// Builds the algebra context for `CH^n`. Fails for `n < 2` and on any
/// violated structural invariant.
pub fn build_algebra(n: usize) -> Result<Arc<AlgebraContext>> {
    if n < 2 {
        return Err(Error::InvalidDimension { n });
    }
    let msize = n + 1;
    let dim = msize * msize - 1;

    let basis_mats = ambient_basis(n);
    debug_assert_eq!(basis_mats.len(), dim);

    // Bracket table from matrix commutators.
    let mut bracket_tab: Vec<Vec<Vec<(usize, Rat)>>> = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in (i + 1)..dim {
            let comm = commutator(msize, &basis_mats[i], &basis_mats[j]);
            let coeffs = coordinatize(n, &basis_mats, &comm)?;
            let sparse = to_sparse(&coeffs);
            bracket_tab[j][i] = sparse.iter().map(|(k, c)| (*k, -c.clone())).collect();
            bracket_tab[i][j] = sparse;
        }
    }

    // Cartan involution theta(X) = -X^H, as a matrix over ambient coords.
    let mut theta_mat = Mat::zero(dim, dim);
    for (j, bm) in basis_mats.iter().enumerate() {
        let td = neg_dagger(msize, bm);
        let coeffs = coordinatize(n, &basis_mats, &td)?;
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                theta_mat.set(i, j, c.clone());
            }
        }
    }

    // Killing form Killing(X, Y) = tr(ad X . ad Y), computed from the table.
    let mut killing_mat = Mat::zero(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            let mut acc = Rat::zero();
            for l in 0..dim {
                for (k, a) in &bracket_tab[i][l] {
                    for (l2, b) in &bracket_tab[j][*k] {
                        if l2 == &l {
                            acc += a * b;
                        }
                    }
                }
            }
            killing_mat.set(i, j, acc.clone());
            killing_mat.set(j, i, acc);
        }
    }

    // a = R B with B = (E_01 + E_10) / 2; ad(B) then has eigenvalue 1/2 on
    // g_a and 1 on g_{2a}. The ambient index of E_01 + E_10 is n.
    let mut b_coeffs = vec![Rat::zero(); dim];
    b_coeffs[n] = rat(1, 2);

    let kbb = {
        let mut acc = Rat::zero();
        for (i, ci) in b_coeffs.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in b_coeffs.iter().enumerate() {
                if !cj.is_zero() {
                    acc += ci * cj * killing_mat.get(i, j);
                }
            }
        }
        acc
    };
    if !kbb.is_positive() {
        return Err(Error::Internal("Killing(B,B) must be positive".into()));
    }
    let kappa = Rat::one() / kbb;

    // Q_theta(X, Y) = -kappa * Killing(theta X, Y), positive definite.
    let qtheta_mat = {
        let tk = theta_mat.transpose().mul(&killing_mat);
        let mut q = Mat::zero(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                q.set(i, j, -(&kappa * tk.get(i, j)));
            }
        }
        q
    };

    let qtheta = |x: &[Rat], y: &[Rat]| -> Rat {
        let mut acc = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    acc += xi * yj * qtheta_mat.get(i, j);
                }
            }
        }
        acc
    };

    // Eigenspaces of ad(B).
    let ad_b = ad_matrix(dim, &bracket_tab, &b_coeffs);
    let eigenspace = |lambda: Rat| -> Vec<Vec<Rat>> {
        let mut m = ad_b.clone();
        for i in 0..dim {
            let v = m.get(i, i) - &lambda;
            m.set(i, i, v);
        }
        m.kernel()
    };
    let galpha_raw = eigenspace(rat(1, 2));
    let g2alpha_raw = eigenspace(Rat::one());
    let gneg_alpha_raw = eigenspace(rat(-1, 2));
    let gneg_2alpha_raw = eigenspace(-Rat::one());
    let g0_raw = eigenspace(Rat::zero());
    if galpha_raw.len() != 2 * (n - 1)
        || g2alpha_raw.len() != 1
        || gneg_alpha_raw.len() != 2 * (n - 1)
        || gneg_2alpha_raw.len() != 1
        || g0_raw.len() != (n - 1) * (n - 1) + 1
    {
        return Err(Error::Internal("restricted root space dimensions".into()));
    }

    // k and p from the Cartan involution.
    let fixed_space = |sign: i64| -> Vec<Vec<Rat>> {
        let mut m = theta_mat.clone();
        for i in 0..dim {
            let v = m.get(i, i) - rat_int(sign);
            m.set(i, i, v);
        }
        m.kernel()
    };
    let k_basis = fixed_space(1);
    let p_basis = fixed_space(-1);
    if k_basis.len() != n * n || p_basis.len() != 2 * n {
        return Err(Error::Internal("Cartan decomposition dimensions".into()));
    }

    // k0 = centralizer of a in k: kernel of [ad(B); theta - 1] stacked.
    let k0_raw = {
        let mut stacked = Mat::zero(2 * dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                stacked.set(i, j, ad_b.get(i, j).clone());
                let tv = theta_mat.get(i, j) - if i == j { Rat::one() } else { Rat::zero() };
                stacked.set(dim + i, j, tv);
            }
        }
        stacked.kernel()
    };
    if k0_raw.len() != (n - 1) * (n - 1) {
        return Err(Error::Internal("k0 dimension".into()));
    }

    // Metric on a + n per the normalization <B,B> = 1 and Q_theta = 2<.,.>
    // on n. Root spaces for distinct eigenvalues are Q_theta-orthogonal, so
    // on n the form Q_theta/2 is all we need while building.
    let ip_n = |x: &[Rat], y: &[Rat]| qtheta(x, y) / rat_int(2);

    // Unit Z spanning g_{2a}.
    let z_raw = &g2alpha_raw[0];
    let z_norm2 = ip_n(z_raw, z_raw);
    let z_scale = rat_sqrt(&z_norm2)
        .ok_or_else(|| Error::Internal("g_2a norm is not a perfect square".into()))?;
    let z_coeffs: Vec<Rat> = z_raw.iter().map(|c| c / &z_scale).collect();

    // J on g_a via the bracket pairing: <JU, V> = (Z-coefficient of [U, V]).
    let galpha_orth = gram_schmidt(&galpha_raw, ip_n);
    let bracket_vec = |x: &[Rat], y: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in &bracket_tab[i][j] {
                    out[*k] += &c * v;
                }
            }
        }
        out
    };
    let j_galpha = |u: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); dim];
        for (w, n2) in &galpha_orth {
            let br = bracket_vec(u, w);
            let zc = ip_n(&br, &z_coeffs);
            if !zc.is_zero() {
                let c = zc / n2;
                for (o, wi) in out.iter_mut().zip(w) {
                    *o += &c * wi;
                }
            }
        }
        out
    };

    // Adapted orthonormal basis of g_a paired as (E_i, F_i = J E_i).
    let mut adapted_pairs: Vec<(Vec<Rat>, Vec<Rat>)> = Vec::new();
    for (w, _) in &galpha_orth {
        let mut v = w.clone();
        for (e, f) in &adapted_pairs {
            for prev in [e, f] {
                let c = ip_n(&v, prev); // prev is unit
                if !c.is_zero() {
                    for (vi, pi) in v.iter_mut().zip(prev) {
                        *vi -= &c * pi;
                    }
                }
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let n2 = ip_n(&v, &v);
        let s = rat_sqrt(&n2)
            .ok_or_else(|| Error::Internal("g_a norm is not a perfect square".into()))?;
        let e: Vec<Rat> = v.iter().map(|c| c / &s).collect();
        let f = j_galpha(&e);
        if !ip_n(&f, &f).is_one() || !ip_n(&e, &f).is_zero() {
            return Err(Error::Internal("J is not an isometry on g_a".into()));
        }
        adapted_pairs.push((e, f));
    }
    if adapted_pairs.len() != n - 1 {
        return Err(Error::Internal("adapted pairing of g_a failed".into()));
    }
    for (e, _) in &adapted_pairs {
        let jje = j_galpha(&j_galpha(e));
        let neg_e: Vec<Rat> = e.iter().map(|c| -c.clone()).collect();
        if jje != neg_e {
            return Err(Error::Internal("J^2 != -1 on g_a".into()));
        }
    }

    let theta_vec = |v: &[Rat]| theta_mat.mul_vec(v);

    let lv = |coeffs: Vec<Rat>| LieVector { n, coeffs };
    let k0_vecs: Vec<LieVector> = k0_raw.into_iter().map(lv).collect();
    let b_vec = lv(b_coeffs);
    let e_vecs: Vec<LieVector> = adapted_pairs.iter().map(|(e, _)| lv(e.clone())).collect();
    let f_vecs: Vec<LieVector> = adapted_pairs.iter().map(|(_, f)| lv(f.clone())).collect();
    let z_vec = lv(z_coeffs);
    let neg_alpha_vecs: Vec<LieVector> = e_vecs
        .iter()
        .chain(&f_vecs)
        .map(|v| lv(theta_vec(&v.coeffs)))
        .collect();
    let neg_two_alpha_vec = lv(theta_vec(&z_vec.coeffs));

    // Change of basis to adapted coordinates.
    let mut adapted_cols: Vec<Vec<Rat>> = Vec::with_capacity(dim);
    for t in &k0_vecs {
        adapted_cols.push(t.coeffs.clone());
    }
    adapted_cols.push(b_vec.coeffs.clone());
    for e in &e_vecs {
        adapted_cols.push(e.coeffs.clone());
    }
    for f in &f_vecs {
        adapted_cols.push(f.coeffs.clone());
    }
    adapted_cols.push(z_vec.coeffs.clone());
    for v in &neg_alpha_vecs {
        adapted_cols.push(v.coeffs.clone());
    }
    adapted_cols.push(neg_two_alpha_vec.coeffs.clone());
    if adapted_cols.len() != dim {
        return Err(Error::Internal("adapted basis is not complete".into()));
    }
    let adapt_solver = CoordSolver::new(dim, &adapted_cols);
    let mut adapt_inv = Mat::zero(dim, dim);
    for j in 0..dim {
        let mut unit = vec![Rat::zero(); dim];
        unit[j] = Rat::one();
        let col = adapt_solver
            .solve(&unit)
            .ok_or_else(|| Error::Internal("adapted basis must be invertible".into()))?;
        for (i, c) in col.into_iter().enumerate() {
            if !c.is_zero() {
                adapt_inv.set(i, j, c);
            }
        }
    }

    // Psi = (1 - theta)/2 restricted to a + n, with a precomputed inverse.
    let an_vectors: Vec<Vec<Rat>> = {
        let mut v = vec![b_vec.coeffs.clone()];
        v.extend(e_vecs.iter().map(|e| e.coeffs.clone()));
        v.extend(f_vecs.iter().map(|f| f.coeffs.clone()));
        v.push(z_vec.coeffs.clone());
        v
    };
    let psi_cols: Vec<Vec<Rat>> = an_vectors
        .iter()
        .map(|v| {
            let tv = theta_vec(v);
            v.iter()
                .zip(&tv)
                .map(|(a, b)| (a - b) / rat_int(2))
                .collect()
        })
        .collect();
    let psi_solver = CoordSolver::new(dim, &psi_cols);

    let ctx = AlgebraContext {
        n,
        dim,
        msize,
        basis_mats,
        bracket_tab,
        theta_mat,
        killing_mat,
        kappa,
        qtheta_mat,
        k0_vecs,
        b_vec,
        e_vecs,
        f_vecs,
        z_vec,
        neg_alpha_vecs,
        neg_two_alpha_vec,
        k_basis,
        p_basis,
        adapt_inv,
        psi_solver,
    };

    // The sign convention is self-consistent by construction: J is defined
    // through the chosen Z and JB := Z, so the Z-coefficient of [E_1, JE_1]
    // is <JE_1, JE_1> = 1. Verify the bracket relations that pin it down.
    let e1 = ctx.e_vecs[0].clone();
    let f1 = ctx.f_vecs[0].clone();
    let bez = ctx.bracket(&e1, &f1)?;
    if bez != ctx.z_vec {
        return Err(Error::Internal("[E1, JE1] != Z".into()));
    }
    let bbz = ctx.bracket(&ctx.b_vec.clone(), &ctx.z_vec.clone())?;
    if bbz != ctx.z_vec {
        return Err(Error::Internal("[B, Z] != Z".into()));
    }

    Ok(Arc::new(ctx))
}

impl AlgebraContext {
    fn check(&self, v: &LieVector) -> Result<()> {
        if v.n != self.n {
            return Err(Error::ContextMismatch {
                left: self.n,
                right: v.n,
            });
        }
        if v.coeffs.len() != self.dim {
            return Err(Error::Internal("coefficient vector length".into()));
        }
        Ok(())
    }

    /// Lie bracket `[X, Y]`, exact.
    pub fn bracket(&self, x: &LieVector, y: &LieVector) -> Result<LieVector> {
        self.check(x)?;
        self.check(y)?;
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.coeffs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coeffs.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in &self.bracket_tab[i][j] {
                    out[*k] += &c * v;
                }
            }
        }
        Ok(LieVector {
            n: self.n,
            coeffs: out,
        })
    }

    /// Cartan involution `theta(X) = -X^H`.
    pub fn cartan_involution(&self, x: &LieVector) -> Result<LieVector> {
        self.check(x)?;
        Ok(LieVector {
            n: self.n,
            coeffs: self.theta_mat.mul_vec(&x.coeffs),
        })
    }

    /// Killing form `tr(ad X . ad Y)`.
    pub fn killing(&self, x: &LieVector, y: &LieVector) -> Result<Rat> {
        self.check(x)?;
        self.check(y)?;
        Ok(bilinear(&self.killing_mat, &x.coeffs, &y.coeffs))
    }

    /// The positive definite form `Q_theta(X,Y) = -kappa Killing(theta X, Y)`.
    pub fn qtheta(&self, x: &LieVector, y: &LieVector) -> Result<Rat> {
        self.check(x)?;
        self.check(y)?;
        Ok(bilinear(&self.qtheta_mat, &x.coeffs, &y.coeffs))
    }

    /// The inner product on `a + n` (the left-invariant metric of the
    /// solvable model): `Q_theta` on `a`, `Q_theta/2` on `n`.
    pub fn metric(&self, x: &LieVector, y: &LieVector) -> Result<Rat> {
        let xc = self.an_coords(x)?;
        let yc = self.an_coords(y)?;
        let xa = self.b_vec.scale(&xc[0]);
        let ya = self.b_vec.scale(&yc[0]);
        let xn = self.nilpotent_component(&xc);
        let yn = self.nilpotent_component(&yc);
        let qa = bilinear(&self.qtheta_mat, &xa.coeffs, &ya.coeffs);
        let qn = bilinear(&self.qtheta_mat, &xn.coeffs, &yn.coeffs);
        Ok(qa + qn / rat_int(2))
    }

    fn nilpotent_component(&self, an: &[Rat]) -> LieVector {
        let mut an = an.to_vec();
        an[0] = Rat::zero();
        self.from_an_coords(&an)
    }

    /// The complex structure on `a + n`: `JB = Z`, `JZ = -B`, and on `g_a`
    /// the endomorphism defined by `<JU, V> = (Z-coefficient of [U, V])`.
    pub fn complex_structure(&self, x: &LieVector) -> Result<LieVector> {
        let c = self.an_coords(x)?;
        let m = self.n - 1;
        let mut out = vec![Rat::zero(); 2 * self.n];
        out[2 * self.n - 1] = c[0].clone(); // JB = Z
        out[0] = -c[2 * self.n - 1].clone(); // JZ = -B
        for i in 0..m {
            out[1 + m + i] = c[1 + i].clone(); // J E_i = F_i
            out[1 + i] = -c[1 + m + i].clone(); // J F_i = -E_i
        }
        Ok(self.from_an_coords(&out))
    }

    /// `Psi = (1 - theta)/2` restricted to `a + n`, an isometry onto `p`.
    pub fn psi(&self, x: &LieVector) -> Result<LieVector> {
        let _ = self.an_coords(x)?; // domain check
        let tv = self.theta_mat.mul_vec(&x.coeffs);
        Ok(LieVector {
            n: self.n,
            coeffs: x
                .coeffs
                .iter()
                .zip(&tv)
                .map(|(a, b)| (a - b) / rat_int(2))
                .collect(),
        })
    }

    /// Inverse of `Psi` on `p`.
    pub fn psi_inverse(&self, p: &LieVector) -> Result<LieVector> {
        self.check(p)?;
        let coords = self
            .psi_solver
            .solve(&p.coeffs)
            .ok_or_else(|| Error::Domain("vector is not in the image of Psi".into()))?;
        Ok(self.from_an_coords(&coords))
    }

    // ---- root decomposition accessors -------------------------------------

    pub fn b(&self) -> LieVector {
        self.b_vec.clone()
    }

    pub fn z(&self) -> LieVector {
        self.z_vec.clone()
    }

    pub fn e(&self, i: usize) -> LieVector {
        self.e_vecs[i].clone()
    }

    pub fn f(&self, i: usize) -> LieVector {
        self.f_vecs[i].clone()
    }

    pub fn t(&self, i: usize) -> LieVector {
        self.k0_vecs[i].clone()
    }

    pub fn galpha_dim(&self) -> usize {
        2 * (self.n - 1)
    }

    pub fn k0_basis(&self) -> &[LieVector] {
        &self.k0_vecs
    }

    pub fn adapted_galpha(&self) -> Vec<LieVector> {
        self.e_vecs.iter().chain(&self.f_vecs).cloned().collect()
    }

    pub fn k_basis_vectors(&self) -> Vec<LieVector> {
        self.k_basis
            .iter()
            .map(|c| LieVector {
                n: self.n,
                coeffs: c.clone(),
            })
            .collect()
    }

    pub fn p_basis_vectors(&self) -> Vec<LieVector> {
        self.p_basis
            .iter()
            .map(|c| LieVector {
                n: self.n,
                coeffs: c.clone(),
            })
            .collect()
    }

    pub fn root_space_basis(&self, space: RootSpace) -> Vec<LieVector> {
        match space {
            RootSpace::NegTwoAlpha => vec![self.neg_two_alpha_vec.clone()],
            RootSpace::NegAlpha => self.neg_alpha_vecs.clone(),
            RootSpace::KZero => self.k0_vecs.clone(),
            RootSpace::A => vec![self.b_vec.clone()],
            RootSpace::Alpha => self.adapted_galpha(),
            RootSpace::TwoAlpha => vec![self.z_vec.clone()],
        }
    }

    /// Exact membership of `v` in the direct sum of the given root spaces.
    pub fn in_root_spaces(&self, v: &LieVector, spaces: &[RootSpace]) -> Result<bool> {
        self.check(v)?;
        let ad = self.adapted_coords_raw(v);
        let k = self.k0_dim();
        let m = self.n - 1;
        let allowed = |idx: usize| -> RootSpace {
            if idx < k {
                RootSpace::KZero
            } else if idx == k {
                RootSpace::A
            } else if idx < k + 1 + 2 * m {
                RootSpace::Alpha
            } else if idx == self.idx_z() {
                RootSpace::TwoAlpha
            } else if idx < self.dim - 1 {
                RootSpace::NegAlpha
            } else {
                RootSpace::NegTwoAlpha
            }
        };
        for (idx, c) in ad.iter().enumerate() {
            if !c.is_zero() && !spaces.contains(&allowed(idx)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // ---- coordinates -------------------------------------------------------

    fn adapted_coords_raw(&self, v: &LieVector) -> Vec<Rat> {
        self.adapt_inv.mul_vec(&v.coeffs)
    }

    /// Coordinates over `[B, E_1.., F_1.., Z]`; errors if `v` is outside
    /// `a + n`.
    pub fn an_coords(&self, v: &LieVector) -> Result<Vec<Rat>> {
        self.check(v)?;
        let ad = self.adapted_coords_raw(v);
        let k = self.k0_dim();
        let an = self.an_dim();
        for (idx, c) in ad.iter().enumerate() {
            if (idx < k || idx >= k + an) && !c.is_zero() {
                return Err(Error::Domain("vector has components outside a + n".into()));
            }
        }
        Ok(ad[k..k + an].to_vec())
    }

    pub fn from_an_coords(&self, an: &[Rat]) -> LieVector {
        assert_eq!(an.len(), self.an_dim());
        let m = self.n - 1;
        let mut out = self.b_vec.scale(&an[0]);
        for i in 0..m {
            if !an[1 + i].is_zero() {
                out = out.add(&self.e_vecs[i].scale(&an[1 + i]));
            }
            if !an[1 + m + i].is_zero() {
                out = out.add(&self.f_vecs[i].scale(&an[1 + m + i]));
            }
        }
        if !an[2 * self.n - 1].is_zero() {
            out = out.add(&self.z_vec.scale(&an[2 * self.n - 1]));
        }
        out
    }

    /// Splits `v` as (k0 coefficients over the `T` labels, `a+n` coordinates);
    /// errors if `v` has negative root space components.
    pub fn para_coords(&self, v: &LieVector) -> Result<(Vec<Rat>, Vec<Rat>)> {
        self.check(v)?;
        let ad = self.adapted_coords_raw(v);
        let k = self.k0_dim();
        let an = self.an_dim();
        if ad[k + an..].iter().any(|c| !c.is_zero()) {
            return Err(Error::OutsideParabolic);
        }
        Ok((ad[..k].to_vec(), ad[k..k + an].to_vec()))
    }

    pub fn in_parabolic(&self, v: &LieVector) -> bool {
        self.para_coords(v).is_ok()
    }

    pub fn from_para_coords(&self, k0: &[Rat], an: &[Rat]) -> LieVector {
        let mut out = self.from_an_coords(an);
        for (c, t) in k0.iter().zip(&self.k0_vecs) {
            if !c.is_zero() {
                out = out.add(&t.scale(c));
            }
        }
        out
    }

    /// The `k0`-component of a parabolic vector.
    pub fn k0_component(&self, v: &LieVector) -> Result<LieVector> {
        let (k0, _) = self.para_coords(v)?;
        Ok(self.from_para_coords(&k0, &vec![Rat::zero(); self.an_dim()]))
    }

    /// The `a+n`-component of a parabolic vector.
    pub fn an_component(&self, v: &LieVector) -> Result<LieVector> {
        let (_, an) = self.para_coords(v)?;
        Ok(self.from_an_coords(&an))
    }

    // ---- labels ------------------------------------------------------------

    /// Label names in canonical order: `B, Z, E1.., F1.., T1..`.
    pub fn label_names(&self) -> Vec<String> {
        let m = self.n - 1;
        let mut out = vec!["B".to_string(), "Z".to_string()];
        for i in 1..=m {
            out.push(format!("E{i}"));
        }
        for i in 1..=m {
            out.push(format!("F{i}"));
        }
        for i in 1..=self.k0_dim() {
            out.push(format!("T{i}"));
        }
        out
    }

    pub fn vector_for_label(&self, label: &str) -> Option<LieVector> {
        let m = self.n - 1;
        match label {
            "B" => Some(self.b()),
            "Z" => Some(self.z()),
            _ => {
                let (kind, idx) = label.split_at(1);
                let i: usize = idx.parse().ok()?;
                match kind {
                    "E" if (1..=m).contains(&i) => Some(self.e(i - 1)),
                    "F" if (1..=m).contains(&i) => Some(self.f(i - 1)),
                    "T" if (1..=self.k0_dim()).contains(&i) => Some(self.t(i - 1)),
                    _ => None,
                }
            }
        }
    }

    /// Formats a parabolic vector over the labels; falls back to ambient
    /// indices otherwise.
    pub fn format_vector(&self, v: &LieVector) -> String {
        match self.para_coords(v) {
            Ok((k0, an)) => {
                let m = self.n - 1;
                let mut terms: Vec<String> = Vec::new();
                let mut push = |c: &Rat, label: String| {
                    if !c.is_zero() {
                        terms.push(format!("{c} {label}"));
                    }
                };
                push(&an[0], "B".into());
                for i in 0..m {
                    push(&an[1 + i], format!("E{}", i + 1));
                }
                for i in 0..m {
                    push(&an[1 + m + i], format!("F{}", i + 1));
                }
                push(&an[2 * self.n - 1], "Z".into());
                for (i, c) in k0.iter().enumerate() {
                    push(c, format!("T{}", i + 1));
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            }
            Err(_) => {
                let mut s = String::new();
                for (i, c) in v.coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        let _ = write!(s, "{c} g[{i}] ");
                    }
                }
                if s.is_empty() {
                    "0".into()
                } else {
                    s.trim_end().to_string()
                }
            }
        }
    }

    /// Parses a linear combination of labels into a vector.
    pub fn from_labeled_terms(&self, terms: &[(String, Rat)]) -> Result<LieVector> {
        let mut out = LieVector::zero(self.n);
        for (label, coeff) in terms {
            let v = self
                .vector_for_label(label)
                .ok_or_else(|| Error::Domain(format!("unknown basis label `{label}`")))?;
            out = out.add(&v.scale(coeff));
        }
        Ok(out)
    }

    // ---- matrix representation ----------------------------------------------

    /// The defining `(n+1) x (n+1)` matrix of a vector.
    pub fn matrix_of(&self, v: &LieVector) -> Vec<GaussRat> {
        let mut m = vec![GaussRat::zero(); self.msize * self.msize];
        for (i, c) in v.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, entry) in m.iter_mut().zip(&self.basis_mats[i]) {
                *slot = &*slot + &entry.scale(c);
            }
        }
        m
    }

    /// Exact coordinatization of a matrix in `su(1,n)`.
    pub fn vector_of_matrix(&self, m: &[GaussRat]) -> Result<LieVector> {
        let coeffs = coordinatize(self.n, &self.basis_mats, m)?;
        Ok(LieVector { n: self.n, coeffs })
    }

    pub fn matrix_size(&self) -> usize {
        self.msize
    }

    // ---- identity suites -----------------------------------------------------

    /// Exact verification of the five bracket identities tying the Cartan
    /// involution to the adapted basis.
    pub fn verify_involution_identities(&self) -> IdentityReport {
        let mut checks = Vec::new();
        let galpha = self.adapted_galpha();
        let theta = |v: &LieVector| self.cartan_involution(v).expect("ctx");
        let b = self.b();
        let z = self.z();

        // (a) [theta U, B] = (1/2) theta U
        {
            let mut witness = None;
            for (i, u) in galpha.iter().enumerate() {
                let lhs = self.bracket(&theta(u), &b).unwrap();
                let rhs = theta(u).scale(&rat(1, 2));
                if lhs != rhs {
                    witness = Some(format!("failed at adapted vector #{i}"));
                    break;
                }
            }
            checks.push(IdentityCheck {
                name: "[theta U, B] = (1/2) theta U".into(),
                pass: witness.is_none(),
                witness,
            });
        }
        // (b) [theta Z, B] = theta Z
        {
            let lhs = self.bracket(&theta(&z), &b).unwrap();
            let pass = lhs == theta(&z);
            checks.push(IdentityCheck {
                name: "[theta Z, B] = theta Z".into(),
                pass,
                witness: (!pass).then(|| self.format_vector(&lhs)),
            });
        }
        // (c) [theta U, V] - <U,V> B lies in k0
        {
            let mut witness = None;
            'outer: for (i, u) in galpha.iter().enumerate() {
                for (j, v) in galpha.iter().enumerate() {
                    let br = self.bracket(&theta(u), v).unwrap();
                    let uv = self.metric(u, v).unwrap();
                    let resid = br.sub(&b.scale(&uv));
                    if !self
                        .in_root_spaces(&resid, &[RootSpace::KZero])
                        .unwrap_or(false)
                    {
                        witness = Some(format!("failed at adapted pair (#{i}, #{j})"));
                        break 'outer;
                    }
                }
            }
            checks.push(IdentityCheck {
                name: "[theta U, V] = <U,V> B (mod k0)".into(),
                pass: witness.is_none(),
                witness,
            });
        }
        // (d) [theta U, Z] = -J U
        {
            let mut witness = None;
            for (i, u) in galpha.iter().enumerate() {
                let lhs = self.bracket(&theta(u), &z).unwrap();
                let rhs = self.complex_structure(u).unwrap().neg();
                if lhs != rhs {
                    witness = Some(format!("failed at adapted vector #{i}"));
                    break;
                }
            }
            checks.push(IdentityCheck {
                name: "[theta U, Z] = -J U".into(),
                pass: witness.is_none(),
                witness,
            });
        }
        // (e) [theta Z, Z] = 2 B
        {
            let lhs = self.bracket(&theta(&z), &z).unwrap();
            let rhs = b.scale(&rat_int(2));
            let pass = lhs == rhs;
            checks.push(IdentityCheck {
                name: "[theta Z, Z] = 2 B".into(),
                pass,
                witness: (!pass).then(|| self.format_vector(&lhs)),
            });
        }
        IdentityReport { checks }
    }

    /// Exact verification of the bracket relations of `a + n` on the adapted
    /// basis: `[B,U] = U/2`, `[B,Z] = Z`, `[Z,U] = 0`, `[U,V] = <JU,V> Z`.
    pub fn verify_an_brackets(&self) -> IdentityReport {
        let mut checks = Vec::new();
        let galpha = self.adapted_galpha();
        let b = self.b();
        let z = self.z();
        {
            let mut witness = None;
            for (i, u) in galpha.iter().enumerate() {
                if self.bracket(&b, u).unwrap() != u.scale(&rat(1, 2)) {
                    witness = Some(format!("failed at adapted vector #{i}"));
                    break;
                }
            }
            checks.push(IdentityCheck {
                name: "[B, U] = U/2".into(),
                pass: witness.is_none(),
                witness,
            });
        }
        {
            let pass = self.bracket(&b, &z).unwrap() == z;
            checks.push(IdentityCheck {
                name: "[B, Z] = Z".into(),
                pass,
                witness: None,
            });
        }
        {
            let mut witness = None;
            for (i, u) in galpha.iter().enumerate() {
                if !self.bracket(&z, u).unwrap().is_zero() {
                    witness = Some(format!("failed at adapted vector #{i}"));
                    break;
                }
            }
            checks.push(IdentityCheck {
                name: "[Z, U] = 0".into(),
                pass: witness.is_none(),
                witness,
            });
        }
        {
            let mut witness = None;
            'outer: for (i, u) in galpha.iter().enumerate() {
                for (j, v) in galpha.iter().enumerate() {
                    let ju = self.complex_structure(u).unwrap();
                    let c = self.metric(&ju, v).unwrap();
                    if self.bracket(u, v).unwrap() != z.scale(&c) {
                        witness = Some(format!("failed at adapted pair (#{i}, #{j})"));
                        break 'outer;
                    }
                }
            }
            checks.push(IdentityCheck {
                name: "[U, V] = <JU, V> Z".into(),
                pass: witness.is_none(),
                witness,
            });
        }
        IdentityReport { checks }
    }
}

fn bilinear(m: &Mat, x: &[Rat], y: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() {
                acc += xi * yj * m.get(i, j);
            }
        }
    }
    acc
}

fn to_sparse(coeffs: &[Rat]) -> Vec<(usize, Rat)> {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

fn ad_matrix(dim: usize, tab: &[Vec<Vec<(usize, Rat)>>], x: &[Rat]) -> Mat {
    let mut m = Mat::zero(dim, dim);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for j in 0..dim {
            for (k, v) in &tab[i][j] {
                let cur = m.get(*k, j) + &(xi * v);
                m.set(*k, j, cur);
            }
        }
    }
    m
}

// ---- the fixed ambient basis -------------------------------------------------

/// Ambient real basis of `su(1,n)` over the Hermitian form
/// `diag(-1, 1, .., 1)`. Order:
/// diagonal `D_j = i(E_{j-1,j-1} - E_{jj})` for `j = 1..n`, then first
/// row/column pairs `P_j = E_{0j} + E_{j0}`, `Q_j = i(E_{j0} - E_{0j})`, then
/// interior pairs `R_{jk} = E_{jk} - E_{kj}`, `S_{jk} = i(E_{jk} + E_{kj})`.
fn ambient_basis(n: usize) -> Vec<CMat> {
    let s = n + 1;
    let mut out = Vec::new();
    let mat = |entries: &[(usize, usize, GaussRat)]| -> CMat {
        let mut m = vec![GaussRat::zero(); s * s];
        for (i, j, v) in entries {
            m[i * s + j] = v.clone();
        }
        m
    };
    for j in 1..=n {
        out.push(mat(&[
            (j - 1, j - 1, GaussRat::i()),
            (j, j, &GaussRat::zero() - &GaussRat::i()),
        ]));
    }
    for j in 1..=n {
        out.push(mat(&[(0, j, GaussRat::one()), (j, 0, GaussRat::one())]));
        out.push(mat(&[
            (j, 0, GaussRat::i()),
            (0, j, &GaussRat::zero() - &GaussRat::i()),
        ]));
    }
    for j in 1..=n {
        for k in (j + 1)..=n {
            out.push(mat(&[
                (j, k, GaussRat::one()),
                (k, j, &GaussRat::zero() - &GaussRat::one()),
            ]));
            out.push(mat(&[(j, k, GaussRat::i()), (k, j, GaussRat::i())]));
        }
    }
    out
}

fn commutator(s: usize, a: &CMat, b: &CMat) -> CMat {
    let mut out = vec![GaussRat::zero(); s * s];
    for i in 0..s {
        for k in 0..s {
            let aik = &a[i * s + k];
            let bik = &b[i * s + k];
            if aik.is_zero() && bik.is_zero() {
                continue;
            }
            for j in 0..s {
                let ab = aik * &b[k * s + j];
                let ba = bik * &a[k * s + j];
                out[i * s + j] = &(&out[i * s + j] + &ab) - &ba;
            }
        }
    }
    out
}

fn neg_dagger(s: usize, a: &CMat) -> CMat {
    let mut out = vec![GaussRat::zero(); s * s];
    for i in 0..s {
        for j in 0..s {
            out[i * s + j] = -&a[j * s + i].conj();
        }
    }
    out
}

/// Exact coordinates of a matrix over the ambient basis; validates
/// membership in `su(1,n)`.
fn coordinatize(n: usize, _basis: &[CMat], m: &[GaussRat]) -> Result<Vec<Rat>> {
    let s = n + 1;
    let dim = s * s - 1;
    let entry = |i: usize, j: usize| -> &GaussRat { &m[i * s + j] };

    // membership checks
    let mut trace = Rat::zero();
    for i in 0..s {
        let d = entry(i, i);
        if !d.re.is_zero() {
            return Err(Error::NotInAmbientAlgebra(format!(
                "diagonal entry ({i},{i}) is not purely imaginary"
            )));
        }
        trace += &d.im;
    }
    if !trace.is_zero() {
        return Err(Error::NotInAmbientAlgebra("nonzero trace".into()));
    }
    for j in 1..s {
        if entry(0, j) != &entry(j, 0).conj() {
            return Err(Error::NotInAmbientAlgebra(format!(
                "entries (0,{j}) and ({j},0) are not Hermitian-paired"
            )));
        }
    }
    for j in 1..s {
        for k in (j + 1)..s {
            if entry(k, j) != &(-&entry(j, k).conj()) {
                return Err(Error::NotInAmbientAlgebra(format!(
                    "entries ({j},{k}) and ({k},{j}) are not skew-paired"
                )));
            }
        }
    }

    let mut coeffs = vec![Rat::zero(); dim];
    // diagonal block: c_{D_j} = sum_{l<j} Im(m_ll)
    let mut partial = Rat::zero();
    for j in 1..=n {
        partial += &entry(j - 1, j - 1).im;
        coeffs[j - 1] = partial.clone();
    }
    // first row/column block
    for j in 1..=n {
        coeffs[n + 2 * (j - 1)] = entry(j, 0).re.clone();
        coeffs[n + 2 * (j - 1) + 1] = entry(j, 0).im.clone();
    }
    // interior block
    let mut idx = 3 * n;
    for j in 1..=n {
        for k in (j + 1)..=n {
            coeffs[idx] = entry(j, k).re.clone();
            coeffs[idx + 1] = entry(j, k).im.clone();
            idx += 2;
        }
    }
    Ok(coeffs)
}
