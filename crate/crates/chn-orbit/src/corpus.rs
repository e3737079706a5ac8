//! Seeded generation of test subalgebras: canonical families, twisted
//! variants, conjugates under the solvable group, and random bracket-closed
//! spans. The corpus drives the oracle-equivalence and identity suites.

use crate::algebra::{AlgebraContext, LieVector};
use crate::classify::{
    branch2_subalgebra, branch3_subalgebra, build_family_a, build_family_b, build_twisted,
    realize_subspace, solve_twist, verify_identities, SubspaceSpec,
};
use crate::error::Result;
use crate::scalar::{rat, Rat};
use crate::subalg::{conjugate_to_base_point, lie_span, GroupElement, Subalgebra};
use num_traits::Zero;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Deterministic small-integer random source.
struct SmallRng(ChaCha8Rng);

impl SmallRng {
    fn new(seed: u64) -> Self {
        SmallRng(ChaCha8Rng::seed_from_u64(seed))
    }

    fn below(&mut self, k: usize) -> usize {
        (self.0.next_u64() % k as u64) as usize
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.0.next_u64() % (hi - lo + 1) as u64) as i64
    }

    fn rat(&mut self) -> Rat {
        rat(self.int(-2, 2), self.int(1, 2))
    }

    fn flag(&mut self) -> bool {
        self.0.next_u64() % 2 == 0
    }
}

/// Aggregate statistics of a generated corpus.
#[derive(Clone, Debug, Default)]
pub struct CorpusStats {
    pub total: usize,
    /// How many instances selected each branch of the trace identity.
    pub trace_branch_counts: [usize; 3],
    /// Instances entirely inside `a + n`.
    pub inside_an: usize,
    /// Case counts by the decomposition flags `(a, x)`.
    pub case_a0: usize,
    pub case_a1_x0: usize,
    pub case_a1_x1: usize,
}

impl CorpusStats {
    pub fn collect(instances: &[Subalgebra]) -> Result<Self> {
        let mut stats = CorpusStats {
            total: instances.len(),
            ..Default::default()
        };
        for h in instances {
            let dc = h.decomposition();
            match (dc.a, dc.x) {
                (false, _) => stats.case_a0 += 1,
                (true, false) => stats.case_a1_x0 += 1,
                (true, true) => stats.case_a1_x1 += 1,
            }
            if h.is_inside_an() {
                stats.inside_an += 1;
            }
            if let Some(branch) = verify_identities(h)?.trace_branch {
                stats.trace_branch_counts[branch as usize - 1] += 1;
            }
        }
        Ok(stats)
    }
}

fn random_galpha_vector(ctx: &AlgebraContext, rng: &mut SmallRng, real_only: bool) -> LieVector {
    let m = ctx.n - 1;
    let mut out = LieVector::zero(ctx.n);
    for i in 0..m {
        let c = rng.rat();
        if !c.is_zero() {
            out = out.add(&ctx.e(i).scale(&c));
        }
        if !real_only {
            let c = rng.rat();
            if !c.is_zero() {
                out = out.add(&ctx.f(i).scale(&c));
            }
        }
    }
    out
}

fn random_parabolic_vector(ctx: &AlgebraContext, rng: &mut SmallRng) -> LieVector {
    let mut out = random_galpha_vector(ctx, rng, false);
    if rng.flag() {
        out = out.add(&ctx.b().scale(&rng.rat()));
    }
    if rng.flag() {
        out = out.add(&ctx.z().scale(&rng.rat()));
    }
    // sparse k0 part
    let k = ctx.k0_basis().len();
    for _ in 0..rng.below(3) {
        let i = rng.below(k);
        out = out.add(&ctx.t(i).scale(&rng.rat()));
    }
    out
}

fn random_group_element(ctx: &AlgebraContext, rng: &mut SmallRng) -> Result<GroupElement> {
    let mut g = GroupElement::identity(ctx);
    if rng.flag() {
        let lambda = match rng.below(4) {
            0 => rat(2, 1),
            1 => rat(1, 2),
            2 => rat(3, 2),
            _ => rat(2, 3),
        };
        g = g.compose(ctx, &GroupElement::a_factor(ctx, lambda)?)?;
    }
    if rng.flag() {
        let mut x = random_galpha_vector(ctx, rng, false);
        if rng.flag() {
            x = x.add(&ctx.z().scale(&rng.rat()));
        }
        if !x.is_zero() {
            g = g.compose(ctx, &GroupElement::n_exp(ctx, &x)?)?;
        }
    }
    Ok(g)
}

fn random_spec(ctx: &AlgebraContext, rng: &mut SmallRng, totally_real: bool) -> SubspaceSpec {
    let m = ctx.n - 1;
    if totally_real {
        SubspaceSpec::TotallyReal {
            dim: rng.below(m + 1),
        }
    } else {
        match rng.below(4) {
            0 => SubspaceSpec::Complex {
                dim: 2 * rng.below(m + 1),
            },
            1 => SubspaceSpec::Prefix {
                dim: rng.below(2 * m + 1),
            },
            2 => SubspaceSpec::Hyperplane,
            _ => {
                let dim = rng.below(2 * m + 1);
                let mut vs = Vec::new();
                for _ in 0..dim {
                    let v = random_galpha_vector(ctx, rng, false);
                    if !v.is_zero() {
                        vs.push(v);
                    }
                }
                SubspaceSpec::Explicit(vs)
            }
        }
    }
}

/// Generates a reproducible corpus of at least `target` closed subalgebras:
/// canonical families, twisted variants, `AN`-conjugates of both, and random
/// bracket-closed spans.
pub fn generate_corpus(
    ctx: &Arc<AlgebraContext>,
    seed: u64,
    target: usize,
) -> Result<Vec<Subalgebra>> {
    let mut rng = SmallRng::new(seed);
    let mut out: Vec<Subalgebra> = Vec::new();

    // deterministic seeds: the controls every corpus must contain
    {
        let mut gens = ctx.adapted_galpha();
        gens.push(ctx.z());
        out.push(Subalgebra::new(ctx.clone(), gens)?); // horosphere algebra
        out.push(Subalgebra::new(ctx.clone(), vec![ctx.e(0)])?);
        out.push(Subalgebra::new(ctx.clone(), vec![ctx.z()])?);
        out.push(branch2_subalgebra(ctx)?);
        if ctx.n >= 4 {
            out.push(branch3_subalgebra(ctx)?);
        }
        out.push(build_family_b(ctx, &SubspaceSpec::Hyperplane)?);
        out.push(build_family_a(
            ctx,
            &SubspaceSpec::TotallyReal { dim: ctx.n - 1 },
        )?);
    }

    while out.len() < target {
        let pick = rng.below(6);
        let candidate: Result<Option<Subalgebra>> = (|| {
            match pick {
                0 => {
                    let spec = random_spec(ctx, &mut rng, true);
                    Ok(Some(build_family_a(ctx, &spec)?))
                }
                1 => {
                    let spec = random_spec(ctx, &mut rng, false);
                    Ok(Some(build_family_b(ctx, &spec)?))
                }
                2 => {
                    // twisted family over a normalizable subspace
                    let with_z = rng.flag();
                    let spec = random_spec(ctx, &mut rng, !with_z);
                    let m = realize_subspace(ctx, &spec)?;
                    match solve_twist(ctx, &m)? {
                        Some(t) => {
                            let t = t.scale(&rat(rng.int(1, 3), 1));
                            Ok(build_twisted(ctx, &spec, &t, with_z).ok())
                        }
                        None => Ok(None),
                    }
                }
                3 => {
                    // conjugate of an earlier instance
                    let base = &out[rng.below(out.len())];
                    let g = random_group_element(ctx, &mut rng)?;
                    Ok(Some(conjugate_to_base_point(base, &g)?))
                }
                4 => {
                    // random closed span of one to three parabolic vectors
                    let k = 1 + rng.below(3);
                    let gens: Vec<LieVector> = (0..k)
                        .map(|_| random_parabolic_vector(ctx, &mut rng))
                        .collect();
                    Ok(Some(lie_span(ctx, &gens)?))
                }
                _ => {
                    // conjugated branch-2 instance keeps its case structure
                    let base = branch2_subalgebra(ctx)?;
                    let g = random_group_element(ctx, &mut rng)?;
                    Ok(Some(conjugate_to_base_point(&base, &g)?))
                }
            }
        })();
        if let Some(h) = candidate? {
            out.push(h);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;

    #[test]
    fn corpus_is_reproducible() {
        let ctx = build_algebra(2).unwrap();
        let c1 = generate_corpus(&ctx, 42, 20).unwrap();
        let c2 = generate_corpus(&ctx, 42, 20).unwrap();
        assert_eq!(c1.len(), c2.len());
        for (a, b) in c1.iter().zip(&c2) {
            assert_eq!(a.basis(), b.basis());
        }
        // a different seed gives a different corpus
        let c3 = generate_corpus(&ctx, 43, 20).unwrap();
        let same = c1.iter().zip(&c3).all(|(a, b)| a.basis() == b.basis());
        assert!(!same);
    }

    #[test]
    fn corpus_stats_count_cases_and_branches() {
        let ctx = build_algebra(3).unwrap();
        let corpus = generate_corpus(&ctx, 7, 30).unwrap();
        let stats = CorpusStats::collect(&corpus).unwrap();
        assert_eq!(stats.total, corpus.len());
        assert!(stats.trace_branch_counts[0] > 0, "branch 1 must occur");
        assert!(stats.trace_branch_counts[1] > 0, "branch 2 must occur");
        assert!(stats.case_a0 > 0 && stats.case_a1_x1 > 0);
    }
}
