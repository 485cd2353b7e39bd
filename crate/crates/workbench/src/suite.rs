use std::time::Instant;

use hkt_core::exact::{span_basis, ExactMatrix, Scalar};
use hkt_core::hermitian::{Classification, Dolbeault, HermitianError, Hyperhermitian, LaplacianKind};
use hkt_core::hypercomplex::{
    bismut_connection, check_parallel_obata_equivalences, hyperholomorphic_10, hyperholomorphic_real, killing_fields,
    killing_fields_10, obata_connection, parallel_fields, parallel_fields_10, same_span, ConnectionTable, Which,
};
use hkt_core::operator::GradedOperator;
use serde_json::{json, Value};

use crate::expect::Space;
use crate::report::{
    self, num_vec, CheckResult, DimensionEntry, FieldSpace, HermitianRecord, HypercomplexRecord, LieRecord, Meta, Num,
    Report,
};
use crate::scene::Scene;

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub timing: bool,
}

type Basis = Vec<Vec<Scalar>>;

/// Everything the checks share for one scene, computed once.
pub struct Context<'a> {
    scene: &'a Scene,
    classification: Option<Result<Classification, HermitianError>>,
    obata: Option<ConnectionTable>,
    fields: Vec<(Space, Result<Basis, String>)>,
}

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

fn nonzero(op: &GradedOperator) -> usize {
    op.matrix.entries().iter().filter(|c| !c.is_zero()).count()
}

fn center_10(scene: &Scene) -> Vec<Vec<Scalar>> {
    let n = scene.dim();
    let center = scene.algebra.center();
    if center.is_empty() {
        return Vec::new();
    }
    let c = ExactMatrix::from_columns(n, &center);
    let shifted = scene.triple.i().sub(&ExactMatrix::identity(n).scale(&Scalar::i()));
    let sols: Vec<Vec<Scalar>> = shifted.mul(&c).kernel_basis().iter().map(|y| c.mul_vec(y)).collect();
    span_basis(n, &sols)
}

impl<'a> Context<'a> {
    pub fn new(scene: &'a Scene) -> Self {
        let h = scene.hermitian();
        let classification = h.map(|h| h.classify());
        let obata = if scene.integrable() { obata_connection(&scene.algebra, &scene.triple).ok() } else { None };
        let mut ctx = Context { scene, classification, obata, fields: Vec::new() };
        ctx.fields = Space::ALL.iter().map(|&s| (s, ctx.compute_field(s))).collect();
        ctx
    }

    fn compute_field(&self, space: Space) -> Result<Vec<Vec<Scalar>>, String> {
        let s = self.scene;
        let (alg, t) = (&s.algebra, &s.triple);
        let metric = || s.metric.as_ref().ok_or_else(|| "no metric".to_string());
        let obata = || self.obata.as_ref().ok_or_else(|| "not integrable".to_string());
        Ok(match space {
            Space::Center => span_basis(s.dim(), &alg.center()),
            Space::Center10 => center_10(s),
            Space::HyperholomorphicReal => hyperholomorphic_real(alg, t),
            Space::Hyperholomorphic10 => hyperholomorphic_10(alg, t),
            Space::Killing => killing_fields(alg, metric()?),
            Space::Killing10 => killing_fields_10(alg, t, metric()?),
            Space::ObataParallel => parallel_fields(obata()?),
            Space::ObataParallel10 => parallel_fields_10(obata()?, t),
            Space::BismutParallel10 => {
                let h = self.hermitian().ok_or_else(|| self.limitation_reason())?;
                let b = bismut_connection(alg, t, h.metric(), Which::I).map_err(|e| e.to_string())?;
                parallel_fields_10(&b.table, t)
            }
        })
    }

    pub fn scene(&self) -> &Scene {
        self.scene
    }

    pub fn hermitian(&self) -> Option<&Hyperhermitian> {
        self.scene.hermitian()
    }

    pub fn classification(&self) -> Option<&Classification> {
        self.classification.as_ref().and_then(|c| c.as_ref().ok())
    }

    pub fn limitation_reason(&self) -> String {
        self.scene.limitation().map_or_else(String::new, |l| l.reason())
    }

    pub fn field(&self, space: Space) -> Option<&Vec<Vec<Scalar>>> {
        self.fields.iter().find(|(s, _)| *s == space).and_then(|(_, r)| r.as_ref().ok())
    }

    pub fn field_unavailable(&self, space: Space) -> String {
        self.fields.iter().find(|(s, _)| *s == space).and_then(|(_, r)| r.as_ref().err().cloned()).unwrap_or_default()
    }

    /// Z_k = e_k − i·Ie_k for every basis vector, then the hyperholomorphic (1,0) basis.
    fn spanning_10(&self) -> Vec<Vec<Scalar>> {
        let n = self.scene.dim();
        let i = self.scene.triple.i();
        let mut out: Vec<Vec<Scalar>> = (0..n)
            .map(|k| {
                let x = unit(n, k);
                let ix = i.mul_vec(&x);
                x.iter().zip(&ix).map(|(a, b)| a - &(b * &Scalar::i())).collect()
            })
            .collect();
        if let Some(hh) = self.field(Space::Hyperholomorphic10) {
            out.extend(hh.iter().cloned());
        }
        out
    }
}

#[derive(Clone, Copy)]
enum Need {
    Integrable,
    Metric,
    Abelian,
    Hkt,
    BalancedHkt,
    Sl,
    EinsteinNonzero,
}

impl Context<'_> {
    fn unmet(&self, needs: &[Need]) -> Option<String> {
        for need in needs {
            let c = self.classification();
            let missing = match need {
                Need::Integrable => (!self.scene.integrable()).then(|| "not integrable".to_string()),
                Need::Metric => self.hermitian().is_none().then(|| self.limitation_reason()),
                Need::Abelian => (!self.scene.abelian()).then(|| "hypothesis unmet: abelian".to_string()),
                Need::Hkt => (!c.is_some_and(|c| c.hkt)).then(|| "hypothesis unmet: HKT".to_string()),
                Need::BalancedHkt => {
                    (!c.is_some_and(|c| c.hkt && c.balanced)).then(|| "hypothesis unmet: balanced HKT".to_string())
                }
                Need::Sl => (!c.is_some_and(|c| c.sl.certified)).then(|| "hypothesis unmet: SL-certified".to_string()),
                Need::EinsteinNonzero => (!c
                    .is_some_and(|c| c.hkt_einstein && c.lambda.as_ref().is_some_and(|l| !l.is_zero())))
                .then(|| "hypothesis unmet: HKT-Einstein with λ ≠ 0".to_string()),
            };
            if missing.is_some() {
                return missing;
            }
        }
        None
    }

    fn check<F>(&self, name: &str, needs: &[Need], body: F) -> CheckResult
    where
        F: FnOnce(&Hyperhermitian) -> Result<(bool, Value), HermitianError>,
    {
        if let Some(why) = self.unmet(needs) {
            return CheckResult::skipped(name, &why);
        }
        let h = self.hermitian().expect("metric checks declare Need::Metric");
        match body(h) {
            Ok((ok, residual)) => CheckResult::from_bool(name, ok, Some(residual)),
            Err(e) => CheckResult::fail(name, Some(json!({ "error": e.to_string() }))),
        }
    }
}

fn obata_checks(ctx: &Context) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let Some(obata) = ctx.obata.as_ref() else {
        out.push(CheckResult::skipped("obata_connection", "not integrable"));
        out.push(CheckResult::skipped("parallel_obata", "not integrable"));
        return out;
    };
    let s = ctx.scene();
    let torsion = obata.torsion_failures(&s.algebra);
    let preserves: Vec<bool> = Which::ALL.iter().map(|&w| obata.preserves(s.triple.get(w))).collect();
    out.push(CheckResult::from_bool(
        "obata_connection",
        torsion.is_empty() && preserves.iter().all(|&b| b),
        Some(json!({ "torsion_failures": torsion.len(), "preserves_IJK": preserves })),
    ));
    let family = ctx.spanning_10();
    let disagree: Vec<usize> = family
        .iter()
        .enumerate()
        .filter(|(_, z)| !check_parallel_obata_equivalences(&s.algebra, &s.triple, obata, z).agree())
        .map(|(k, _)| k)
        .collect();
    out.push(CheckResult::from_bool(
        "parallel_obata",
        disagree.is_empty(),
        Some(json!({ "vectors": family.len(), "disagreements": disagree })),
    ));
    out
}

fn abelian_center(ctx: &Context) -> CheckResult {
    let name = "abelian_center_fields";
    if let Some(why) = ctx.unmet(&[Need::Integrable, Need::Abelian]) {
        return CheckResult::skipped(name, &why);
    }
    let hh = ctx.field(Space::Hyperholomorphic10).expect("always computed");
    let c10 = ctx.field(Space::Center10).expect("always computed");
    let basis = |v: &Vec<Vec<Scalar>>| v.iter().map(|x| num_vec(x)).collect::<Vec<_>>();
    CheckResult::from_bool(
        name,
        same_span(ctx.scene().dim(), hh, c10),
        Some(json!({ "hyperholomorphic_10": basis(hh), "center_10": basis(c10) })),
    )
}

fn metric_checks(ctx: &Context) -> Vec<CheckResult> {
    use Need::*;
    let mut out = Vec::new();
    let theta = || ctx.classification().map(|c| c.theta.clone()).expect("classified");
    let c = || ctx.classification().expect("classified");

    if let Some(Err(e)) = &ctx.classification {
        out.push(CheckResult::fail("classify", Some(json!({ "error": e.to_string() }))));
    }

    out.push(ctx.check("lee", &[Metric], |h| {
        let r = h.lee_report()?;
        Ok((
            r.coincide() && r.eq_lee_residual.is_zero(),
            json!({ "residual": r.eq_lee_residual, "lee_forms_coincide": r.coincide() }),
        ))
    }));
    out.push(ctx.check("del_star_omega", &[Metric], |h| {
        let r = h.lee_report()?;
        Ok((r.del_star_omega_residual.is_zero(), json!({ "residual": r.del_star_omega_residual })))
    }));
    out.push(ctx.check("chern_scalar", &[Metric], |h| {
        let c = c();
        Ok((
            c.consistent(h.n()),
            json!({
                "wedge_formula": Num(c.chern_scalar.clone()),
                "trace_formula": Num(c.chern_scalar_trace.clone()),
                "lambda": c.lambda.clone().map(Num),
            }),
        ))
    }));
    out.push(ctx.check("hkt_identities", &[Metric, Hkt], |h| {
        let mut rows = Vec::new();
        let mut ok = true;
        for p in 1..=h.half() {
            let r = h.hkt_identity_residuals(p)?;
            ok &= r.vanish();
            rows.push(json!({ "p": p, "lambda_del": nonzero(&r.lambda_del), "delj_lambda": nonzero(&r.delj_lambda) }));
        }
        Ok((ok, json!({ "nonzero_entries": rows })))
    }));
    out.push(if ctx.hermitian().is_some_and(|h| !h.has_holomorphic_phi()) && ctx.unmet(&[Metric, Hkt]).is_none() {
        CheckResult::skipped("hkt_identities_l2", "hypothesis unmet: holomorphic Φ")
    } else {
        ctx.check("hkt_identities_l2", &[Metric, Hkt], |h| {
            let mut ok = true;
            let mut rows = Vec::new();
            for p in 1..=h.half() {
                let r = h.hkt_identity_residuals_l2(p)?;
                ok &= r.vanish();
                rows.push(
                    json!({ "p": p, "lambda_del": nonzero(&r.lambda_del), "delj_lambda": nonzero(&r.delj_lambda) }),
                );
            }
            Ok((ok, json!({ "nonzero_entries": rows })))
        })
    });
    out.push(ctx.check("laplacians_coincide", &[Metric, BalancedHkt], |h| {
        let mut rows = Vec::new();
        for p in 0..=h.half() {
            rows.push(nonzero(&h.laplacian_difference(p)?));
        }
        Ok((rows.iter().all(|&n| n == 0), json!({ "nonzero_entries_by_p": rows })))
    }));
    out.push(ctx.check("star_adjoints", &[Metric, BalancedHkt], |h| {
        let mut ok = true;
        let mut rows = Vec::new();
        for p in 1..=h.half() {
            for kind in [Dolbeault::Del, Dolbeault::DelJ] {
                let cmp = h.adjoint_comparison(kind, p)?;
                let (a, b) = (cmp.star_matches_gram(), cmp.stars_coincide());
                ok &= a && b;
                let kind = if kind == Dolbeault::Del { "del" } else { "delJ" };
                rows.push(json!({ "kind": kind, "p": p, "star_is_l2": a, "stars_coincide": b }));
            }
        }
        Ok((ok, Value::Array(rows)))
    }));
    out.push(ctx.check("delta_identity", &[Metric, Hkt, Integrable], |h| {
        let obata = ctx.obata.as_ref().expect("integrable");
        let theta = theta();
        let mut ok = true;
        let mut rows = Vec::new();
        for k in 0..h.dim() {
            let l = h.delta_identity(obata, &theta, &unit(h.dim(), k))?;
            ok &= l.residual().is_zero();
            rows.push(json!({
                "x": format!("e{}", k + 1),
                "divergence": Num(l.divergence.clone()),
                "trace": Num(l.trace.clone()),
                "theta_x": Num(l.theta_x.clone()),
                "residual": Num(l.residual()),
                "opposite_sign_residual": Num(l.opposite_sign_residual()),
            }));
        }
        Ok((ok, Value::Array(rows)))
    }));
    out.push(ctx.check("einstein_emptiness", &[Metric, EinsteinNonzero], |h| {
        let c = c();
        let lambda = c.lambda.clone().expect("gated on λ");
        let hh = ctx.field(Space::Hyperholomorphic10).expect("always computed");
        let two = Scalar::from_int(2);
        let mut pairing_ok = true;
        for z in ctx.spanning_10() {
            let pairing = h.q_ricci_pairing(&c.theta, &z);
            pairing_ok &= pairing == &(&two * &lambda) * &h.vector_norm_sqr(&z);
            pairing_ok &= pairing.is_positive_real() == lambda.is_positive_real();
        }
        Ok((
            hh.is_empty() && pairing_ok,
            json!({ "lambda": Num(lambda), "hyperholomorphic_10_dim": hh.len(), "pairing_is_2_lambda_norm": pairing_ok }),
        ))
    }));
    out.push(ctx.check("jbar_closure", &[Metric, BalancedHkt], |h| {
        let mut ok = true;
        let mut dims = Vec::new();
        for p in 0..=h.half() {
            let (closed, dim) = h.jbar_closure(p)?;
            ok &= closed;
            dims.push(dim);
        }
        Ok((ok, json!({ "harmonic_dims_by_p": dims })))
    }));
    out.push(ctx.check("odd_harmonic_dims_even", &[Metric, BalancedHkt], |h| {
        let mut dims = Vec::new();
        for p in (1..=h.half()).step_by(2) {
            dims.push(h.harmonic_space(LaplacianKind::Del, p, 0)?.len());
        }
        Ok((dims.iter().all(|d| d % 2 == 0), json!({ "odd_p_dims": dims })))
    }));
    out.push(ctx.check("omega_powers_harmonic", &[Metric, BalancedHkt], |h| {
        let mut v = Vec::new();
        for p in 0..=h.n() {
            v.push(h.omega_power_harmonic(p)?);
        }
        Ok((v.iter().all(|&b| b), json!({ "harmonic_by_p": v })))
    }));
    out.push(ctx.check("bc_trace", &[Metric, BalancedHkt], |h| {
        let r = h.bc_trace_check(&theta())?;
        Ok((
            r.holds(),
            json!({ "closed_dim": r.closed.len(), "violations": r.violations, "omega_harmonic": r.omega_harmonic }),
        ))
    }));
    out.push(ctx.check("bc_characterization", &[Metric, BalancedHkt], |h| {
        let r = h.bott_chern_harmonic()?;
        Ok((r.agree(), json!({ "kernel_dim": r.kernel.len(), "characterized_dim": r.characterized.len() })))
    }));
    out.push(ctx.check("coclosed", &[Metric, Sl], |h| {
        let xs = ctx.field(Space::HyperholomorphicReal).expect("always computed");
        let mut ok = true;
        let mut rows = Vec::new();
        for x in xs {
            let r = h.coclosed_check(x)?;
            ok &= r.holds();
            rows.push(
                json!({ "lambda_lie_omega": Num(r.lambda_lie_omega.clone()), "divergence": Num(r.divergence.clone()) }),
            );
        }
        Ok((ok, Value::Array(rows)))
    }));
    out.push(ctx.check("parallel_harmonic", &[Metric, Hkt, Sl, Integrable], |h| {
        let obata = ctx.obata.as_ref().expect("integrable");
        let forms = h.obata_parallel_10(obata);
        let mut ok = true;
        for a in &forms {
            ok &= h.is_harmonic(LaplacianKind::DelPhi, a)?;
        }
        Ok((ok, json!({ "obata_parallel_10_forms": forms.len() })))
    }));
    out.push(ctx.check("bochner", &[Metric, BalancedHkt], |h| {
        let theta = theta();
        let mut ok = true;
        let mut rows = Vec::new();
        for z in ctx.field(Space::Hyperholomorphic10).expect("always computed") {
            let r = h.bochner_report(&theta, z)?;
            let terms = r.del_star_alpha.is_zero()
                && r.del_star_j_alpha_bar.is_zero()
                && r.pairing.is_zero()
                && r.residual.is_zero();
            ok &= terms && r.alpha_harmonic && r.j_alpha_bar_harmonic;
            rows.push(json!({
                "del_star_alpha": Num(r.del_star_alpha.clone()),
                "del_star_j_alpha_bar": Num(r.del_star_j_alpha_bar.clone()),
                "pairing": Num(r.pairing.clone()),
                "residual": Num(r.residual.clone()),
            }));
        }
        Ok((ok, Value::Array(rows)))
    }));
    out.push(ctx.check("norm_constancy", &[Metric, BalancedHkt], |h| {
        let zs = ctx.field(Space::Hyperholomorphic10).expect("always computed");
        let norms: Vec<Scalar> = zs.iter().map(|z| h.vector_norm_sqr(z)).collect();
        Ok((norms.iter().all(Scalar::is_positive_real), json!({ "norm_sqr": num_vec(&norms) })))
    }));
    out.push(ctx.check("equivalences", &[Metric, BalancedHkt], |h| {
        let n = h.dim();
        let get = |s| ctx.field(s).ok_or_else(|| HermitianError::Consistency(ctx.field_unavailable(s)));
        let hh = get(Space::Hyperholomorphic10)?;
        let killing = get(Space::Killing10)?;
        let bismut = get(Space::BismutParallel10)?;
        Ok((
            same_span(n, hh, killing) && same_span(n, hh, bismut),
            json!({ "dims": { "hyperholomorphic_10": hh.len(), "killing_10": killing.len(), "bismut_parallel_10": bismut.len() } }),
        ))
    }));
    out
}

pub fn run_checks(ctx: &Context) -> Vec<CheckResult> {
    let mut out = obata_checks(ctx);
    out.push(abelian_center(ctx));
    out.extend(metric_checks(ctx));
    out.extend(ctx.scene().expect.iter().map(|e| e.evaluate(ctx)));
    out
}

fn dimensions(ctx: &Context) -> Vec<DimensionEntry> {
    let Some(h) = ctx.hermitian() else {
        let note = Some(ctx.limitation_reason());
        return vec![DimensionEntry { kind: LaplacianKind::Del, bidegree: (1, 0), dim: None, note }];
    };
    let mut out = Vec::new();
    for kind in [LaplacianKind::Del, LaplacianKind::DelJ, LaplacianKind::DelPhi] {
        for p in 0..=h.half() {
            let entry = match h.harmonic_space(kind, p, 0) {
                Ok(sp) => DimensionEntry { kind, bidegree: (p, 0), dim: Some(sp.len()), note: None },
                Err(HermitianError::NoHolomorphicPhi) => {
                    DimensionEntry { kind, bidegree: (p, 0), dim: None, note: Some("no holomorphic Φ".into()) }
                }
                Err(e) => DimensionEntry { kind, bidegree: (p, 0), dim: None, note: Some(e.to_string()) },
            };
            out.push(entry);
        }
    }
    let bc = match h.harmonic_space(LaplacianKind::BottChern, 2, 0) {
        Ok(sp) => DimensionEntry { kind: LaplacianKind::BottChern, bidegree: (2, 0), dim: Some(sp.len()), note: None },
        Err(e) => {
            DimensionEntry { kind: LaplacianKind::BottChern, bidegree: (2, 0), dim: None, note: Some(e.to_string()) }
        }
    };
    out.push(bc);
    out
}

fn classification(ctx: &Context) -> report::Classification {
    let s = ctx.scene();
    let lie = LieRecord {
        dim: s.dim(),
        unimodular: s.lie.unimodular,
        nilpotent: s.lie.nilpotent,
        solvable: s.lie.solvable,
        center_dim: ctx.field(Space::Center).map_or(0, Vec::len),
    };
    let hypercomplex = HypercomplexRecord {
        integrable: s.integrable(),
        abelian: s.abelian(),
        nijenhuis_failures: s
            .validation
            .nijenhuis_failures
            .iter()
            .map(|f| format!("N_{}(e{}, e{}) ≠ 0", f.which, f.pair.0, f.pair.1))
            .collect(),
    };
    let hermitian = match (ctx.hermitian(), ctx.classification()) {
        (Some(h), Some(c)) => Some(HermitianRecord {
            hkt: c.hkt,
            balanced: c.balanced,
            theta: c.theta.clone(),
            chern_scalar: Num(c.chern_scalar.clone()),
            lambda: c.lambda.clone().map(Num),
            hkt_einstein: c.hkt_einstein,
            sl_certified: c.sl.certified,
            holomorphic_phi: h.has_holomorphic_phi(),
            omega: h.frame().to_real(h.omega()),
        }),
        _ => None,
    };
    let metric = match s.limitation() {
        None => "enabled".to_string(),
        Some(l) => format!("skipped: {}", l.reason()),
    };
    report::Classification { lie, hypercomplex, metric, hermitian }
}

fn fields(ctx: &Context) -> Vec<FieldSpace> {
    ctx.fields
        .iter()
        .map(|(space, r)| match r {
            Ok(b) => FieldSpace {
                name: space.name().to_string(),
                basis: Some(b.iter().map(|v| num_vec(v)).collect()),
                note: None,
            },
            Err(why) => FieldSpace { name: space.name().to_string(), basis: None, note: Some(why.clone()) },
        })
        .collect()
}

pub fn run_report(scene: &Scene, opts: RunOptions) -> Report {
    let start = Instant::now();
    let ctx = Context::new(scene);
    let checks = run_checks(&ctx);
    let mut metadata = serde_json::Map::new();
    for (k, v) in &scene.metadata {
        if k != "expect" {
            metadata.insert(k.clone(), v.clone());
        }
    }
    Report {
        scene: scene.name.clone(),
        classification: classification(&ctx),
        dimensions: dimensions(&ctx),
        fields: fields(&ctx),
        checks,
        meta: Meta {
            tool: "hktw".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            metadata,
            timing_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
        },
    }
}
