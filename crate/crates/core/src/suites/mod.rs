//! Seeded verification suites and their JSON reports.

use std::time::Instant;

use serde_json::{json, Value};

use crate::algebra::scalar::{format_scalar, frac, int, Scalar};
use crate::algebra::ModVec;
use crate::error::{Error, Result};
use crate::finite::GlFrame;
use crate::weyl::WhittakerFrame;

mod algebra;
mod fields;
mod finite;
mod quotient;

pub use algebra::{central_scalar, cocycle_pattern};
pub use fields::{pbw_generators, pbw_images, rel_pattern, typical_span, RelPattern};

pub const SUITES: [&str; 11] = ["weyl", "glhat", "casimir", "lemmas", "whittaker", "quotient", "hvir", "singlet", "spectral", "gl2l", "crosscheck"];

/// Inputs shared by every suite.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub frame: WhittakerFrame,
    pub d: Scalar,
    pub gl_frames: Vec<GlFrame>,
    pub seed: u64,
    /// Largest weight of sampled vectors.
    pub max_weight: u64,
    /// Random vectors per property.
    pub samples: usize,
    /// Random quotient vectors per (frame, d) in the cyclicity probe.
    pub probe_samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            frame: WhittakerFrame::default_frame(),
            d: int(3),
            gl_frames: vec![GlFrame::from_ints(&[1], &[2]).expect("valid"), GlFrame::from_ints(&[1, 2], &[2, 1]).expect("valid")],
            seed: 7,
            max_weight: 6,
            samples: 20,
            probe_samples: 50,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub id: String,
    pub pass: bool,
    /// Canonical text of the residual; "0" when the identity holds.
    pub residual: String,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub frame: String,
    pub seed: u64,
    pub params: Value,
    pub cases: Vec<Case>,
    pub wall_ms: u128,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.pass).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// Versioned JSON; cases sorted by id.
    pub fn to_json(&self) -> Value {
        let mut cases = self.cases.clone();
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        json!({
            "schema": "1",
            "suite": self.suite,
            "frame": self.frame,
            "seed": self.seed,
            "params": self.params,
            "caseCount": cases.len(),
            "failures": self.failures(),
            "cases": cases.iter().map(|c| json!({"id": c.id, "pass": c.pass, "residual": c.residual, "note": c.note})).collect::<Vec<_>>(),
            "wallTimeMs": self.wall_ms as u64,
        })
    }

    pub fn from_json(v: &Value) -> Result<SuiteReport> {
        let bad = |m: &str| Error::Parse { pos: 0, msg: format!("malformed report: {m}") };
        if v.get("schema").and_then(Value::as_str) != Some("1") {
            return Err(bad("missing schema \"1\""));
        }
        let s = |k: &str| v.get(k).and_then(Value::as_str).map(str::to_string).ok_or_else(|| bad(k));
        let cases = v.get("cases").and_then(Value::as_array).ok_or_else(|| bad("cases"))?;
        let mut out = Vec::new();
        for c in cases {
            let f = |k: &str| c.get(k).and_then(Value::as_str).map(str::to_string).ok_or_else(|| bad(k));
            out.push(Case {
                id: f("id")?,
                pass: c.get("pass").and_then(Value::as_bool).ok_or_else(|| bad("pass"))?,
                residual: f("residual")?,
                note: f("note").unwrap_or_default(),
            });
        }
        Ok(SuiteReport {
            suite: s("suite")?,
            frame: s("frame")?,
            seed: v.get("seed").and_then(Value::as_u64).ok_or_else(|| bad("seed"))?,
            params: v.get("params").cloned().unwrap_or(Value::Null),
            cases: out,
            wall_ms: v.get("wallTimeMs").and_then(Value::as_u64).unwrap_or(0) as u128,
        })
    }
}

/// Case collector used by the suite bodies.
pub(crate) struct Cases {
    prefix: String,
    cases: Vec<Case>,
}

impl Cases {
    fn new(prefix: &str) -> Self {
        Cases { prefix: prefix.to_string(), cases: Vec::new() }
    }

    pub(crate) fn push(&mut self, id: impl AsRef<str>, pass: bool, residual: impl Into<String>, note: impl Into<String>) {
        self.cases.push(Case { id: format!("{}/{}", self.prefix, id.as_ref()), pass, residual: residual.into(), note: note.into() });
    }

    pub(crate) fn zero(&mut self, id: impl AsRef<str>, residual: &ModVec, note: impl Into<String>) {
        self.push(id, residual.is_zero(), residual.to_string(), note);
    }

    pub(crate) fn flag(&mut self, id: impl AsRef<str>, pass: bool, note: impl Into<String>) {
        self.push(id, pass, if pass { "0" } else { "1" }, note);
    }

    /// Records the first nonzero residual of a family, or success.
    pub(crate) fn all_zero(&mut self, id: impl AsRef<str>, residuals: impl IntoIterator<Item = (String, Result<ModVec>)>) {
        for (label, r) in residuals {
            match r {
                Ok(v) if v.is_zero() => {}
                Ok(v) => return self.push(id, false, v.to_string(), label),
                Err(e) => return self.push(id, false, "error", format!("{label}: {e}")),
            }
        }
        self.push(id, true, "0", "");
    }

    pub(crate) fn error(&mut self, id: impl AsRef<str>, e: &Error) {
        self.push(id, false, "error", e.to_string());
    }
}

pub(crate) fn d_values(d: &Scalar) -> [Scalar; 3] {
    [d.clone(), d - int(3), d + frac(1, 2)]
}

pub(crate) fn scalar_text(c: &Scalar) -> String {
    format_scalar(c)
}

/// Runs one suite by name, or every suite for "all".
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut cases = Vec::new();
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name] };
    for n in names {
        let mut c = Cases::new(n);
        match n {
            "weyl" => algebra::weyl(cfg, &mut c),
            "glhat" => algebra::glhat(cfg, &mut c),
            "casimir" => algebra::casimir(cfg, &mut c),
            "lemmas" => quotient::lemmas(cfg, &mut c),
            "whittaker" => quotient::whittaker(cfg, &mut c),
            "quotient" => quotient::quotient(cfg, &mut c),
            "hvir" => fields::hvir(cfg, &mut c),
            "singlet" => fields::singlet(cfg, &mut c),
            "spectral" => fields::spectral(cfg, &mut c),
            "crosscheck" => fields::crosscheck(cfg, &mut c),
            "gl2l" => finite::gl2l(cfg, &mut c),
            other => return Err(Error::Unsupported(format!("unknown suite `{other}`"))),
        }
        cases.extend(c.cases);
    }
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(SuiteReport {
        suite: name.to_string(),
        frame: cfg.frame.to_string(),
        seed: cfg.seed,
        params: json!({
            "d": scalar_text(&cfg.d),
            "maxWeight": cfg.max_weight,
            "samples": cfg.samples,
            "probeSamples": cfg.probe_samples,
            "glFrames": cfg.gl_frames.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        }),
        cases,
        wall_ms: start.elapsed().as_millis(),
    })
}
