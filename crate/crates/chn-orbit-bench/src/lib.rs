//! Shared fixtures for the criterion benches.

use chn_orbit::{build_algebra, AlgebraContext, Subalgebra, SubspaceSpec};
use std::sync::Arc;

pub fn context(n: usize) -> Arc<AlgebraContext> {
    build_algebra(n).expect("n >= 2")
}

/// The horosphere algebra `n = g_a + g_2a`.
pub fn horosphere(ctx: &Arc<AlgebraContext>) -> Subalgebra {
    let mut gens = ctx.adapted_galpha();
    gens.push(ctx.z());
    Subalgebra::new(ctx.clone(), gens).expect("closed")
}

/// The minimal homogeneous hypersurface (hyperplane family).
pub fn lohnherr(ctx: &Arc<AlgebraContext>) -> Subalgebra {
    chn_orbit::build_family_b(ctx, &SubspaceSpec::Hyperplane).expect("closed")
}

/// A twisted complex-plane family with a nonzero `k0`-correction.
pub fn twisted(ctx: &Arc<AlgebraContext>) -> Subalgebra {
    let spec = SubspaceSpec::Complex { dim: 2 };
    let m = chn_orbit::realize_subspace(ctx, &spec).expect("realizable");
    let t = chn_orbit::solve_twist(ctx, &m)
        .expect("solver")
        .expect("twist exists");
    chn_orbit::build_twisted(ctx, &spec, &t, true).expect("closed")
}
