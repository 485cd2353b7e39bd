use std::fmt::Write as _;

use hkt_core::exact::Scalar;
use hkt_core::hermitian::LaplacianKind;
use hkt_core::lie::InvariantForm;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

/// A scalar that serializes as a bare rational string when it is real.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Num(pub Scalar);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_real() {
            s.serialize_str(&hkt_core::exact::format_rational(&self.0.re))
        } else {
            self.0.serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Scalar::deserialize(d).map(Num)
    }
}

pub fn num_vec(v: &[Scalar]) -> Vec<Num> {
    v.iter().cloned().map(Num).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<Value>,
    /// Why a check was skipped.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn from_bool(name: &str, ok: bool, residual: Option<Value>) -> Self {
        CheckResult {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual,
            note: None,
        }
    }

    pub fn fail(name: &str, residual: Option<Value>) -> Self {
        Self::from_bool(name, false, residual)
    }

    pub fn skipped(name: &str, why: &str) -> Self {
        CheckResult { name: name.to_string(), status: Status::Skipped, residual: None, note: Some(why.to_string()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LieRecord {
    pub dim: usize,
    pub unimodular: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    pub center_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypercomplexRecord {
    pub integrable: bool,
    pub abelian: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nijenhuis_failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HermitianRecord {
    pub hkt: bool,
    pub balanced: bool,
    /// Lee form over the real coframe.
    pub theta: InvariantForm,
    pub chern_scalar: Num,
    pub lambda: Option<Num>,
    pub hkt_einstein: bool,
    pub sl_certified: bool,
    pub holomorphic_phi: bool,
    /// Ω over the real coframe.
    pub omega: InvariantForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub lie: LieRecord,
    pub hypercomplex: HypercomplexRecord,
    /// "enabled", or "skipped: <reason>".
    pub metric: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hermitian: Option<HermitianRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionEntry {
    pub kind: LaplacianKind,
    pub bidegree: (usize, usize),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSpace {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Num>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    #[serde(default)]
    pub metadata: serde_json::Map<String, Value>,
    /// Wall-clock time; never part of a golden comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scene: String,
    pub classification: Classification,
    pub dimensions: Vec<DimensionEntry>,
    pub fields: Vec<FieldSpace>,
    pub checks: Vec<CheckResult>,
    pub meta: Meta,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// The report with timing removed, as compared against golden files.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        r.meta.timing_ms = None;
        r
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.classification;
        let yes = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(out, "scene {}", self.scene);
        let _ = writeln!(
            out,
            "  algebra     dim {}  unimodular {}  nilpotent {}  solvable {}  center dim {}",
            c.lie.dim,
            yes(c.lie.unimodular),
            yes(c.lie.nilpotent),
            yes(c.lie.solvable),
            c.lie.center_dim
        );
        let _ = writeln!(
            out,
            "  triple      integrable {}  abelian {}",
            yes(c.hypercomplex.integrable),
            yes(c.hypercomplex.abelian)
        );
        for f in &c.hypercomplex.nijenhuis_failures {
            let _ = writeln!(out, "    {f}");
        }
        let _ = writeln!(out, "  metric      {}", c.metric);
        if let Some(h) = &c.hermitian {
            let _ = writeln!(
                out,
                "  hermitian   HKT {}  balanced {}  HKT-Einstein {}  SL certified {}  holomorphic Φ {}",
                yes(h.hkt),
                yes(h.balanced),
                yes(h.hkt_einstein),
                yes(h.sl_certified),
                yes(h.holomorphic_phi)
            );
            let lambda = h.lambda.as_ref().map_or("none".to_string(), |l| l.0.to_string());
            let _ = writeln!(out, "  theta       {}", render_form(&h.theta));
            let _ = writeln!(out, "  omega       {}", render_form(&h.omega));
            let _ = writeln!(out, "  s_Ch {}  lambda {}", h.chern_scalar.0, lambda);
        }
        let _ = writeln!(out, "dimensions");
        for d in &self.dimensions {
            let val = match (&d.dim, &d.note) {
                (Some(n), _) => n.to_string(),
                (None, Some(note)) => format!("skipped: {note}"),
                (None, None) => "-".into(),
            };
            let _ = writeln!(out, "  {:<7}({},{})  {}", d.kind.name(), d.bidegree.0, d.bidegree.1, val);
        }
        let _ = writeln!(out, "fields");
        for f in &self.fields {
            match (&f.basis, &f.note) {
                (Some(b), _) => {
                    let _ = writeln!(out, "  {} (dim {})", f.name, b.len());
                    for v in b {
                        let _ = writeln!(out, "    {}", render_vector(v));
                    }
                }
                (None, note) => {
                    let _ = writeln!(out, "  {} skipped: {}", f.name, note.as_deref().unwrap_or("-"));
                }
            }
        }
        let _ = writeln!(out, "checks");
        for ch in &self.checks {
            let mut line = format!("  {:<8}{}", ch.status.as_str(), ch.name);
            if let Some(n) = &ch.note {
                let _ = write!(line, " ({n})");
            }
            let _ = writeln!(out, "{line}");
            if ch.status == Status::Fail {
                if let Some(r) = &ch.residual {
                    let _ = writeln!(out, "          {}", serde_json::to_string(r).expect("value serializes"));
                }
            }
        }
        let pass = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        let fail = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        let skip = self.checks.len() - pass - fail;
        let _ = writeln!(out, "summary {pass} pass, {fail} fail, {skip} skipped");
        out
    }
}

/// `c·e^{i j}` terms over the real coframe.
pub fn render_form(f: &InvariantForm) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.terms()
        .map(|(m, c)| {
            let idx: Vec<String> = m.indices().map(|i| (i + 1).to_string()).collect();
            term(c, &format!("e^{}", idx.join(",")))
        })
        .collect::<Vec<_>>()
        .join(" + ")
        .replace(" + -", " - ")
}

fn term(c: &Scalar, unit: &str) -> String {
    if c.is_one() {
        unit.to_string()
    } else if (-c).is_one() {
        format!("-{unit}")
    } else {
        format!("{c}·{unit}")
    }
}

fn render_vector(v: &[Num]) -> String {
    let parts: Vec<String> =
        v.iter().enumerate().filter(|(_, c)| !c.0.is_zero()).map(|(i, c)| term(&c.0, &format!("e{}", i + 1))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace(" + -", " - ")
    }
}
