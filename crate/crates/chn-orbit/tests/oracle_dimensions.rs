//! Independent dimension oracle: every space dimension asserted here is
//! computed by solving the defining linear systems over raw matrix entries,
//! without touching the context builder's own basis enumeration.

use chn_orbit::linalg::Mat;
use chn_orbit::scalar::{rat, rat_int, Rat};
use chn_orbit::{build_algebra, AlgebraContext};
use num_traits::Zero;

/// Linear-system view of `su(1,n)` inside `gl(n+1, C)`: unknowns are the
/// real and imaginary parts of all matrix entries; rows constrain
/// `X^H eta + eta X = 0` (entrywise) and `tr X = 0`.
struct EntrySystem {
    s: usize,
    rows: Vec<Vec<Rat>>,
}

impl EntrySystem {
    fn new(s: usize) -> Self {
        EntrySystem {
            s,
            rows: Vec::new(),
        }
    }

    fn unknowns(&self) -> usize {
        2 * self.s * self.s
    }

    fn re(&self, i: usize, j: usize) -> usize {
        2 * (i * self.s + j)
    }

    fn im(&self, i: usize, j: usize) -> usize {
        2 * (i * self.s + j) + 1
    }

    fn push(&mut self, row: Vec<(usize, Rat)>) {
        let mut r = vec![Rat::zero(); self.unknowns()];
        for (idx, c) in row {
            r[idx] += c;
        }
        self.rows.push(r);
    }

    /// `X^H eta + eta X = 0` with `eta = diag(-1, 1, .., 1)`, plus zero
    /// trace. Entry `(i,j)` of the condition reads
    /// `eta_i conj(X_ji) + eta_i X_ij = 0` .. written out over re/im parts:
    /// `eta_j X_ji^H = conj(X_ij)` bookkeeping is done directly below.
    fn membership(&mut self) {
        let s = self.s;
        let eta = |k: usize| if k == 0 { rat_int(-1) } else { rat_int(1) };
        for i in 0..s {
            for j in 0..s {
                // (X^H eta)_{ij} = conj(X_{ji}) eta_j ; (eta X)_{ij} = eta_i X_{ij}
                // real part: eta_j Re X_ji + eta_i Re X_ij = 0
                self.push(vec![(self.re(j, i), eta(j)), (self.re(i, j), eta(i))]);
                // imaginary part: -eta_j Im X_ji + eta_i Im X_ij = 0
                self.push(vec![(self.im(j, i), -eta(j)), (self.im(i, j), eta(i))]);
            }
        }
        // trace zero (real and imaginary)
        let mut re_row = Vec::new();
        let mut im_row = Vec::new();
        for k in 0..s {
            re_row.push((self.re(k, k), rat_int(1)));
            im_row.push((self.im(k, k), rat_int(1)));
        }
        self.push(re_row);
        self.push(im_row);
    }

    /// `[H0/2, X] = lambda X` entrywise, with `H0 = E_01 + E_10`:
    /// `(1/2)(X_{1j} - X_{i1? ...})` written per entry:
    /// `[H0, X]_{ij} = H0_{i0} X_{0j} + H0_{i1} X_{1j} - X_{i0} H0_{0j} - X_{i1} H0_{1j}`.
    fn eigen(&mut self, lambda: Rat) {
        let s = self.s;
        for i in 0..s {
            for j in 0..s {
                // contributions of (1/2)[H0, X]_{ij} - lambda X_{ij} = 0
                let mut re_row: Vec<(usize, Rat)> = Vec::new();
                let mut im_row: Vec<(usize, Rat)> = Vec::new();
                let half = rat(1, 2);
                if i == 0 {
                    re_row.push((self.re(1, j), half.clone()));
                    im_row.push((self.im(1, j), half.clone()));
                }
                if i == 1 {
                    re_row.push((self.re(0, j), half.clone()));
                    im_row.push((self.im(0, j), half.clone()));
                }
                if j == 0 {
                    re_row.push((self.re(i, 1), -half.clone()));
                    im_row.push((self.im(i, 1), -half.clone()));
                }
                if j == 1 {
                    re_row.push((self.re(i, 0), -half.clone()));
                    im_row.push((self.im(i, 0), -half.clone()));
                }
                re_row.push((self.re(i, j), -lambda.clone()));
                im_row.push((self.im(i, j), -lambda.clone()));
                self.push(re_row);
                self.push(im_row);
            }
        }
    }

    /// `X^H = X` entrywise (the anti-fixed space of `theta(X) = -X^H`).
    fn hermitian(&mut self) {
        let s = self.s;
        for i in 0..s {
            for j in 0..s {
                self.push(vec![
                    (self.re(j, i), rat_int(1)),
                    (self.re(i, j), rat_int(-1)),
                ]);
                self.push(vec![
                    (self.im(j, i), rat_int(-1)),
                    (self.im(i, j), rat_int(-1)),
                ]);
            }
        }
    }

    fn kernel_dim(&self) -> usize {
        if self.rows.is_empty() {
            return self.unknowns();
        }
        let m = Mat::from_rows(self.rows.clone());
        self.unknowns() - m.rank()
    }
}

fn oracle_dim_g(n: usize) -> usize {
    let mut sys = EntrySystem::new(n + 1);
    sys.membership();
    sys.kernel_dim()
}

fn oracle_dim_eigenspace(n: usize, lambda: Rat) -> usize {
    let mut sys = EntrySystem::new(n + 1);
    sys.membership();
    sys.eigen(lambda);
    sys.kernel_dim()
}

fn oracle_dim_p(n: usize) -> usize {
    let mut sys = EntrySystem::new(n + 1);
    sys.membership();
    sys.hermitian();
    sys.kernel_dim()
}

#[test]
fn ambient_dimension_matches_the_membership_oracle() {
    for n in 2..=4 {
        let expected = oracle_dim_g(n);
        assert_eq!(expected, (n + 1) * (n + 1) - 1);
        let ctx = build_algebra(n).unwrap();
        assert_eq!(ctx.dim, expected);
    }
}

#[test]
fn root_space_dimensions_match_the_eigenspace_oracle() {
    for n in 2..=3 {
        let ctx = build_algebra(n).unwrap();
        assert_eq!(
            ctx.galpha_dim(),
            oracle_dim_eigenspace(n, rat(1, 2)),
            "g_a at n = {n}"
        );
        assert_eq!(ctx.galpha_dim(), 2 * (n - 1));
        assert_eq!(oracle_dim_eigenspace(n, rat_int(1)), 1, "g_2a at n = {n}");
        // ad(B)-kernel = k0 + a
        assert_eq!(
            oracle_dim_eigenspace(n, rat_int(0)),
            ctx.k0_basis().len() + 1,
            "g_0 at n = {n}"
        );
        assert_eq!(ctx.k0_basis().len(), (n - 1) * (n - 1));
    }
}

#[test]
fn p_dimension_matches_the_hermitian_oracle() {
    for n in 2..=4 {
        let expected = oracle_dim_p(n);
        assert_eq!(expected, 2 * n, "real dimension of the tangent model");
        let ctx: std::sync::Arc<AlgebraContext> = build_algebra(n).unwrap();
        assert_eq!(ctx.p_basis_vectors().len(), expected);
    }
}
