use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use rfx::matrix::Matrix;
use rfx::quotmod::{FPModule, HilbertSeries, QuotientRing};
use rfx::reflexivity::{Certificate, Verdict, Witness};

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub elapsed_ms: f64,
}

/// Outcome of one command: human-readable lines plus the machine-readable record.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub timings: Timings,
    pub result: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: String) -> Report {
        Report {
            command,
            inputs: BTreeMap::new(),
            verdict: Verdict::Holds,
            witnesses: Vec::new(),
            timings: Timings { elapsed_ms: 0.0 },
            result: Value::Null,
            lines: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn certificate(&mut self, c: &Certificate) {
        self.verdict = self.verdict.and(c.verdict);
        self.witnesses.extend(c.witnesses.iter().cloned());
    }

    pub fn render(&self) -> String {
        let mut s = format!(">> {}\n", self.command);
        for l in &self.lines {
            s.push_str("   ");
            s.push_str(l);
            s.push('\n');
        }
        for w in self.witnesses.iter().filter(|w| w.verdict != Verdict::Holds) {
            s.push_str(&format!("   [{}] {} {}: {}\n", w.verdict, w.check, w.subject, w.detail));
        }
        s.push_str(&format!("   verdict: {}\n", self.verdict));
        s
    }
}

pub fn matrix_json(ring: &QuotientRing, m: &Matrix) -> Value {
    json!(m.to_strings(&ring.poly))
}

/// Numerator coefficients from `t^shift` upward over `∏ (1 - t^w)`, in lowest terms.
pub fn hilbert_json(h: &HilbertSeries) -> Value {
    let h = h.reduced();
    let num = h.numerator_vec();
    let shift = num.first().map_or(0, |t| t.0);
    let top = num.last().map_or(0, |t| t.0);
    let mut coeffs = vec![0i64; (top - shift + 1).max(0) as usize];
    for (e, c) in num {
        coeffs[(e - shift) as usize] = c;
    }
    json!({ "numerator": coeffs, "shift": shift, "weights": h.weights })
}

pub fn module_json(m: &FPModule) -> Value {
    let mut v = json!({
        "generators": m.ngens(),
        "presentation": matrix_json(&m.ring, &m.pres),
        "zero": m.is_zero(),
    });
    if let Some(g) = m.gen_degrees() {
        v["degrees"] = json!(g);
    }
    if let Ok(h) = m.hilbert_series() {
        v["hilbert"] = hilbert_json(&h);
    }
    v
}

/// One-line description, with the Hilbert series when graded.
pub fn module_line(m: &FPModule) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let base = format!("{} generators, {} relations", m.ngens(), m.nrels());
    match m.hilbert_series() {
        Ok(h) => format!("{base}; H(t) = {h}"),
        Err(_) => base,
    }
}

pub fn matrix_lines(ring: &QuotientRing, m: &Matrix) -> Vec<String> {
    m.to_strings(&ring.poly).into_iter().map(|r| format!("[{}]", r.join(", "))).collect()
}
