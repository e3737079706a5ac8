//! On-disk subalgebra description: exact rational coefficients over the
//! labeled basis `B, Z, E1.., F1.., T1..` of the parabolic subalgebra.

use chn_orbit::scalar::Rat;
use chn_orbit::{build_algebra, AlgebraContext, LieVector};
use serde::{Deserialize, Serialize};
use std::str::FromStr;
use std::sync::Arc;

use crate::CliError;

/// One term of a linear combination: a basis label and an exact rational
/// coefficient such as `"3"` or `"-1/2"`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Term {
    pub basis: String,
    pub coeff: String,
}

/// A subalgebra given by generators over the labeled basis.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubalgebraFile {
    pub n: usize,
    pub generators: Vec<Vec<Term>>,
}

impl SubalgebraFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid input file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Builds the context and resolves the generators; validates labels and
    /// coefficients.
    pub fn resolve(&self) -> Result<(Arc<AlgebraContext>, Vec<LieVector>), CliError> {
        let ctx = build_algebra(self.n)
            .map_err(|e| CliError::Parse(format!("cannot build the algebra: {e}")))?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (gi, terms) in self.generators.iter().enumerate() {
            let mut parsed = Vec::with_capacity(terms.len());
            for t in terms {
                let coeff = Rat::from_str(&t.coeff).map_err(|_| {
                    CliError::Parse(format!(
                        "generator {gi}: coefficient `{}` is not an exact rational",
                        t.coeff
                    ))
                })?;
                parsed.push((t.basis.clone(), coeff));
            }
            let v = ctx.from_labeled_terms(&parsed).map_err(|e| {
                CliError::Parse(format!("generator {gi}: {e} (for n = {})", self.n))
            })?;
            gens.push(v);
        }
        Ok((ctx, gens))
    }
}

/// Formats a parabolic vector as label terms (deterministic label order).
pub fn vector_terms(ctx: &AlgebraContext, v: &LieVector) -> Vec<Term> {
    let (k0, an) = ctx
        .para_coords(v)
        .expect("report vectors stay inside the parabolic subalgebra");
    let m = ctx.n - 1;
    let mut out = Vec::new();
    let mut push = |coeff: &Rat, label: String| {
        use num_traits::Zero;
        if !coeff.is_zero() {
            out.push(Term {
                basis: label,
                coeff: coeff.to_string(),
            });
        }
    };
    push(&an[0], "B".into());
    for i in 0..m {
        push(&an[1 + i], format!("E{}", i + 1));
    }
    for i in 0..m {
        push(&an[1 + m + i], format!("F{}", i + 1));
    }
    push(&an[2 * ctx.n - 1], "Z".into());
    for (i, c) in k0.iter().enumerate() {
        push(c, format!("T{}", i + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_json() {
        let f = SubalgebraFile {
            n: 3,
            generators: vec![
                vec![
                    Term {
                        basis: "B".into(),
                        coeff: "1".into(),
                    },
                    Term {
                        basis: "T2".into(),
                        coeff: "-1/2".into(),
                    },
                ],
                vec![Term {
                    basis: "E1".into(),
                    coeff: "2/3".into(),
                }],
            ],
        };
        let text = f.to_json();
        let g = SubalgebraFile::from_json(&text).unwrap();
        assert_eq!(f, g);
        let (ctx, gens) = g.resolve().unwrap();
        assert_eq!(gens.len(), 2);
        let terms = vector_terms(&ctx, &gens[0]);
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].basis, "B");
        assert_eq!(terms[1].coeff, "-1/2");
    }

    #[test]
    fn rejects_bad_labels_and_floats() {
        let f = SubalgebraFile {
            n: 2,
            generators: vec![vec![Term {
                basis: "E5".into(),
                coeff: "1".into(),
            }]],
        };
        assert!(f.resolve().is_err());
        let f = SubalgebraFile {
            n: 2,
            generators: vec![vec![Term {
                basis: "B".into(),
                coeff: "0.5".into(),
            }]],
        };
        assert!(f.resolve().is_err());
    }
}
