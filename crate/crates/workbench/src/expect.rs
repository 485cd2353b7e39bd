//! Example-specific assertions carried in a scene's `metadata.expect` list.

use hkt_core::exact::Scalar;
use hkt_core::hermitian::LaplacianKind;
use hkt_core::hypercomplex::{contained_in, same_span, Which};
use hkt_core::lie::{lie_derivative_metric, InvariantForm};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::report::{num_vec, CheckResult};
use crate::suite::Context;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    Center,
    #[serde(rename = "center_10")]
    Center10,
    HyperholomorphicReal,
    #[serde(rename = "hyperholomorphic_10")]
    Hyperholomorphic10,
    Killing,
    #[serde(rename = "killing_10")]
    Killing10,
    ObataParallel,
    #[serde(rename = "obata_parallel_10")]
    ObataParallel10,
    #[serde(rename = "bismut_parallel_10")]
    BismutParallel10,
}

impl Space {
    pub const ALL: [Space; 9] = [
        Space::Center,
        Space::Center10,
        Space::HyperholomorphicReal,
        Space::Hyperholomorphic10,
        Space::Killing,
        Space::Killing10,
        Space::ObataParallel,
        Space::ObataParallel10,
        Space::BismutParallel10,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Space::Center => "center",
            Space::Center10 => "center_10",
            Space::HyperholomorphicReal => "hyperholomorphic_real",
            Space::Hyperholomorphic10 => "hyperholomorphic_10",
            Space::Killing => "killing",
            Space::Killing10 => "killing_10",
            Space::ObataParallel => "obata_parallel",
            Space::ObataParallel10 => "obata_parallel_10",
            Space::BismutParallel10 => "bismut_parallel_10",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Hkt,
    Balanced,
    HktEinstein,
    SlCertified,
    HolomorphicPhi,
    Abelian,
    Integrable,
    Unimodular,
    Nilpotent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormOp {
    Del,
    DelBar,
    DelJ,
    D,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case", deny_unknown_fields)]
pub enum Expectation {
    Flag {
        flag: Flag,
        value: bool,
    },
    Lambda {
        value: Scalar,
    },
    ChernScalar {
        value: Scalar,
    },
    /// Lee form over the real coframe.
    Theta {
        value: InvariantForm,
    },
    Harmonic {
        kind: LaplacianKind,
        bidegree: (usize, usize),
        dim: usize,
    },
    /// ker Δ on a pure bidegree equals the span of the given real-coframe forms.
    HarmonicSpan {
        kind: LaplacianKind,
        bidegree: (usize, usize),
        forms: Vec<InvariantForm>,
    },
    /// Each form's harmonicity.
    HarmonicForms {
        kind: LaplacianKind,
        forms: Vec<InvariantForm>,
        harmonic: bool,
    },
    /// `op` applied to each real-coframe form vanishes (or not).
    Closed {
        op: FormOp,
        forms: Vec<InvariantForm>,
        closed: bool,
    },
    Span {
        space: Space,
        basis: Vec<Vec<Scalar>>,
    },
    Contains {
        space: Space,
        vectors: Vec<Vec<Scalar>>,
    },
    /// No vector of the list lies in the space.
    Excludes {
        space: Space,
        vectors: Vec<Vec<Scalar>>,
    },
    Empty {
        space: Space,
    },
    StrictlyContains {
        space: Space,
        subspace: Space,
    },
    /// (L_{e_x} g)(e_a, e_b), 1-based; `value` absent means "nonzero".
    LieDerivativeMetric {
        x: usize,
        entry: (usize, usize),
        #[serde(default)]
        value: Option<Scalar>,
    },
    /// [e_x, L e_y] − L[e_x, e_y].
    AbelianDefect {
        which: Which,
        x: usize,
        y: usize,
        value: Vec<Scalar>,
    },
}

fn real_in_frame(ctx: &Context, forms: &[InvariantForm]) -> Option<Vec<InvariantForm>> {
    let h = ctx.hermitian()?;
    Some(forms.iter().map(|f| h.frame().to_frame(f)).collect())
}

fn bd((p, q): (usize, usize)) -> String {
    format!("({p},{q})")
}

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

impl Expectation {
    pub fn label(&self) -> String {
        match self {
            Expectation::Flag { flag, .. } => format!("flag {}", serde_json::to_value(flag).unwrap().as_str().unwrap()),
            Expectation::Lambda { .. } => "lambda".into(),
            Expectation::ChernScalar { .. } => "chern_scalar".into(),
            Expectation::Theta { .. } => "theta".into(),
            Expectation::Harmonic { kind, bidegree, .. } => format!("harmonic {kind} {}", bd(*bidegree)),
            Expectation::HarmonicSpan { kind, bidegree, .. } => format!("harmonic_span {kind} {}", bd(*bidegree)),
            Expectation::HarmonicForms { kind, harmonic, .. } => {
                format!("{} {kind}", if *harmonic { "harmonic_forms" } else { "non_harmonic_forms" })
            }
            Expectation::Closed { op, closed, .. } => {
                let op = serde_json::to_value(op).unwrap();
                format!("{} {}", if *closed { "closed" } else { "not_closed" }, op.as_str().unwrap())
            }
            Expectation::Span { space, .. } => format!("span {}", space.name()),
            Expectation::Contains { space, .. } => format!("contains {}", space.name()),
            Expectation::Excludes { space, .. } => format!("excludes {}", space.name()),
            Expectation::Empty { space } => format!("empty {}", space.name()),
            Expectation::StrictlyContains { space, subspace } => {
                format!("strictly_contains {} {}", space.name(), subspace.name())
            }
            Expectation::LieDerivativeMetric { x, entry, .. } => {
                format!("lie_derivative_metric e{x} ({},{})", entry.0, entry.1)
            }
            Expectation::AbelianDefect { which, x, y, .. } => format!("abelian_defect {which} e{x} e{y}"),
        }
    }

    pub fn evaluate(&self, ctx: &Context) -> CheckResult {
        let name = format!("expect {}", self.label());
        let scene = ctx.scene();
        let dim = scene.dim();
        let skipped = |why: &str| CheckResult::skipped(&name, why);
        let metric_skip = || skipped(&ctx.limitation_reason());
        let c = ctx.classification();
        match self {
            Expectation::Flag { flag, value } => {
                let got = match flag {
                    Flag::Abelian => Some(scene.abelian()),
                    Flag::Integrable => Some(scene.integrable()),
                    Flag::Unimodular => Some(scene.lie.unimodular),
                    Flag::Nilpotent => Some(scene.lie.nilpotent),
                    Flag::Hkt => c.map(|c| c.hkt),
                    Flag::Balanced => c.map(|c| c.balanced),
                    Flag::HktEinstein => c.map(|c| c.hkt_einstein),
                    Flag::SlCertified => c.map(|c| c.sl.certified),
                    Flag::HolomorphicPhi => ctx.hermitian().map(|h| h.has_holomorphic_phi()),
                };
                match got {
                    Some(g) => CheckResult::from_bool(&name, g == *value, Some(json!({ "value": g }))),
                    None => metric_skip(),
                }
            }
            Expectation::Lambda { value } => match c {
                Some(c) => CheckResult::from_bool(
                    &name,
                    c.lambda.as_ref() == Some(value),
                    Some(json!({ "value": c.lambda.clone().map(crate::report::Num) })),
                ),
                None => metric_skip(),
            },
            Expectation::ChernScalar { value } => match c {
                Some(c) => CheckResult::from_bool(
                    &name,
                    c.chern_scalar == *value,
                    Some(json!({ "value": crate::report::Num(c.chern_scalar.clone()) })),
                ),
                None => metric_skip(),
            },
            Expectation::Theta { value } => match c {
                Some(c) => CheckResult::from_bool(&name, c.theta == *value, Some(json!({ "value": c.theta }))),
                None => metric_skip(),
            },
            Expectation::Harmonic { kind, bidegree, dim: want } => {
                let Some(h) = ctx.hermitian() else { return metric_skip() };
                match h.harmonic_space(*kind, bidegree.0, bidegree.1) {
                    Ok(sp) => CheckResult::from_bool(&name, sp.len() == *want, Some(json!({ "dim": sp.len() }))),
                    Err(e) => CheckResult::fail(&name, Some(json!({ "error": e.to_string() }))),
                }
            }
            Expectation::HarmonicSpan { kind, bidegree: (p, q), forms } => {
                let (Some(h), Some(forms)) = (ctx.hermitian(), real_in_frame(ctx, forms)) else { return metric_skip() };
                let f = h.frame();
                let want: Vec<_> = forms.iter().map(|a| f.vector_pq(a, *p, *q)).collect();
                let pure = forms.iter().all(|a| a.is_zero() || f.pure_bidegree(a) == Some((*p, *q)));
                match h.harmonic_space(*kind, *p, *q) {
                    Ok(sp) => {
                        let got: Vec<_> = sp.iter().map(|a| f.vector_pq(a, *p, *q)).collect();
                        let n = f.basis_pq(*p, *q).len();
                        CheckResult::from_bool(
                            &name,
                            pure && same_span(n, &got, &want),
                            Some(json!({ "dim": sp.len() })),
                        )
                    }
                    Err(e) => CheckResult::fail(&name, Some(json!({ "error": e.to_string() }))),
                }
            }
            Expectation::HarmonicForms { kind, forms, harmonic } => {
                let (Some(h), Some(forms)) = (ctx.hermitian(), real_in_frame(ctx, forms)) else { return metric_skip() };
                let got: Result<Vec<bool>, _> = forms.iter().map(|a| h.is_harmonic(*kind, a)).collect();
                match got {
                    Ok(v) => {
                        CheckResult::from_bool(&name, v.iter().all(|b| b == harmonic), Some(json!({ "harmonic": v })))
                    }
                    Err(e) => CheckResult::fail(&name, Some(json!({ "error": e.to_string() }))),
                }
            }
            Expectation::Closed { op, forms, closed } => {
                let (Some(h), Some(forms)) = (ctx.hermitian(), real_in_frame(ctx, forms)) else { return metric_skip() };
                let f = h.frame();
                let v: Vec<bool> = forms
                    .iter()
                    .map(|a| {
                        match op {
                            FormOp::Del => f.del(a),
                            FormOp::DelBar => f.delbar(a),
                            FormOp::DelJ => h.del_j_form(a),
                            FormOp::D => f.d(a),
                        }
                        .is_zero()
                    })
                    .collect();
                CheckResult::from_bool(&name, v.iter().all(|b| b == closed), Some(json!({ "closed": v })))
            }
            Expectation::Span { space, basis } => match ctx.field(*space) {
                Some(got) => {
                    CheckResult::from_bool(&name, same_span(dim, got, basis), Some(json!({ "dim": got.len() })))
                }
                None => skipped(&ctx.field_unavailable(*space)),
            },
            Expectation::Contains { space, vectors } => match ctx.field(*space) {
                Some(got) => CheckResult::from_bool(&name, contained_in(dim, vectors, got), None),
                None => skipped(&ctx.field_unavailable(*space)),
            },
            Expectation::Excludes { space, vectors } => match ctx.field(*space) {
                Some(got) => {
                    let ok = vectors.iter().all(|v| !contained_in(dim, std::slice::from_ref(v), got));
                    CheckResult::from_bool(&name, ok, None)
                }
                None => skipped(&ctx.field_unavailable(*space)),
            },
            Expectation::Empty { space } => match ctx.field(*space) {
                Some(got) => CheckResult::from_bool(&name, got.is_empty(), Some(json!({ "dim": got.len() }))),
                None => skipped(&ctx.field_unavailable(*space)),
            },
            Expectation::StrictlyContains { space, subspace } => match (ctx.field(*space), ctx.field(*subspace)) {
                (Some(big), Some(small)) => {
                    let ok = contained_in(dim, small, big) && big.len() > small.len();
                    CheckResult::from_bool(
                        &name,
                        ok,
                        Some(
                            json!({ "dims": [big.len(), small.len()], "subspace_basis": small.iter().map(|v| num_vec(v)).collect::<Vec<_>>() }),
                        ),
                    )
                }
                (None, _) => skipped(&ctx.field_unavailable(*space)),
                (_, None) => skipped(&ctx.field_unavailable(*subspace)),
            },
            Expectation::LieDerivativeMetric { x, entry: (a, b), value } => {
                let Some(g) = scene.metric.as_ref() else { return skipped("no metric") };
                if [*x, *a, *b].iter().any(|&k| k == 0 || k > dim) {
                    return CheckResult::fail(&name, Some(json!({ "error": "index out of range" })));
                }
                let lg = lie_derivative_metric(&scene.algebra, &unit(dim, x - 1), g);
                let got = lg[(a - 1, b - 1)].clone();
                let ok = match value {
                    Some(v) => got == *v,
                    None => !got.is_zero(),
                };
                CheckResult::from_bool(&name, ok, Some(json!({ "value": crate::report::Num(got) })))
            }
            Expectation::AbelianDefect { which, x, y, value } => {
                if [*x, *y].iter().any(|&k| k == 0 || k > dim) || value.len() != dim {
                    return CheckResult::fail(&name, Some(json!({ "error": "index or length out of range" })));
                }
                let l = scene.triple.get(*which);
                let (ex, ey) = (unit(dim, x - 1), unit(dim, y - 1));
                let lhs = scene.algebra.bracket(&ex, &l.mul_vec(&ey));
                let rhs = l.mul_vec(&scene.algebra.bracket(&ex, &ey));
                let got: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                CheckResult::from_bool(&name, got == *value, Some(json!({ "value": num_vec(&got) })))
            }
        }
    }
}
