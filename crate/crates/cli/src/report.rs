//! Command reports and their text, JSON and LaTeX renderings.

use std::fmt::Write as _;

use lambdag::QPoly;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// A reported value; polynomials keep their structure for LaTeX output.
#[derive(Debug, Clone, PartialEq)]
pub enum Val {
    Poly(QPoly),
    Json(Value),
}

impl Val {
    fn text(&self) -> String {
        match self {
            Val::Poly(p) => p.to_string(),
            Val::Json(Value::String(s)) => s.clone(),
            Val::Json(v) => v.to_string(),
        }
    }
}

impl Serialize for Val {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Val::Poly(p) => p.serialize(s),
            Val::Json(v) => v.serialize(s),
        }
    }
}

impl From<QPoly> for Val {
    fn from(p: QPoly) -> Self {
        Val::Poly(p)
    }
}

impl From<Value> for Val {
    fn from(v: Value) -> Self {
        Val::Json(v)
    }
}

macro_rules! val_from_json {
    ($($t:ty),*) => {$(
        impl From<$t> for Val {
            fn from(v: $t) -> Self {
                Val::Json(serde_json::json!(v))
            }
        }
    )*};
}
val_from_json!(bool, i64, u64, u128, i128, usize, String, &str);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub lhs: Val,
    pub rhs: Val,
}

/// Key-value pairs serialized as a JSON object in insertion order.
#[derive(Debug, Clone)]
pub struct Fields<T>(pub Vec<(String, T)>);

impl<T> Default for Fields<T> {
    fn default() -> Self {
        Fields(Vec::new())
    }
}

impl<T> Fields<T> {
    pub fn push(&mut self, key: impl Into<String>, v: impl Into<T>) {
        self.0.push((key.into(), v.into()));
    }
}

impl<T: Serialize> Serialize for Fields<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Fields<Value>,
    pub results: Fields<Val>,
    pub checks: Vec<Check>,
    pub runtime_ms: u64,
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Fields::default(),
            results: Fields::default(),
            checks: Vec::new(),
            runtime_ms: 0,
            seed: None,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.inputs
            .push(key, serde_json::to_value(v).expect("serializable input"));
        self
    }

    pub fn result(&mut self, key: &str, v: impl Into<Val>) -> &mut Self {
        self.results.push(key, v);
        self
    }

    /// Equality check between two values.
    pub fn check_eq(&mut self, name: &str, lhs: impl Into<Val>, rhs: impl Into<Val>) -> bool {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let ok = lhs == rhs;
        self.check(name, ok, lhs, rhs)
    }

    pub fn check(
        &mut self,
        name: &str,
        ok: bool,
        lhs: impl Into<Val>,
        rhs: impl Into<Val>,
    ) -> bool {
        self.checks.push(Check {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            lhs: lhs.into(),
            rhs: rhs.into(),
        });
        ok
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable report") + "\n",
            Format::Text => self.render_text(),
            Format::Latex => self.render_latex(),
        }
    }

    fn inputs_line(&self) -> String {
        self.inputs
            .0
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                v => format!("{k}={v}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.command, self.inputs_line()).unwrap();
        if let Some(seed) = self.seed {
            writeln!(out, "seed: {seed}").unwrap();
        }
        for (k, v) in &self.results.0 {
            writeln!(out, "  {k}: {}", v.text()).unwrap();
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            writeln!(
                out,
                "[{tag}] {}: {} | {}",
                c.name,
                c.lhs.text(),
                c.rhs.text()
            )
            .unwrap();
        }
        let failed = self
            .checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count();
        writeln!(
            out,
            "{} checks, {} failed, {} ms",
            self.checks.len(),
            failed,
            self.runtime_ms
        )
        .unwrap();
        out
    }

    fn render_latex(&self) -> String {
        let mut out = String::new();
        writeln!(out, "% {} {}", self.command, self.inputs_line()).unwrap();
        let mut lines = Vec::new();
        for (k, v) in &self.results.0 {
            match v {
                Val::Poly(p) => lines.push(format!(
                    "\\text{{{}}} &= {}",
                    k.replace('_', "\\_"),
                    p.to_latex()
                )),
                other => writeln!(out, "% {k}: {}", other.text()).unwrap(),
            }
        }
        for c in &self.checks {
            writeln!(
                out,
                "% check {}: {}",
                c.name,
                if c.status == Status::Pass {
                    "pass"
                } else {
                    "fail"
                }
            )
            .unwrap();
            if let (Val::Poly(a), Val::Poly(b)) = (&c.lhs, &c.rhs) {
                let rel = if c.status == Status::Pass {
                    "="
                } else {
                    "\\neq"
                };
                lines.push(format!("{} &{rel} {}", a.to_latex(), b.to_latex()));
            }
        }
        if !lines.is_empty() {
            out.push_str("\\begin{align*}\n");
            out.push_str(&lines.join(" \\\\\n"));
            out.push_str("\n\\end{align*}\n");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keeps_field_order_and_poly_pairs() {
        let mut r = Report::new("gm");
        r.input("type", "A").input("rank", 1);
        r.result("gm", QPoly::from_terms([(1, 1), (2, 1)]));
        r.check_eq("same", 1i64, 1i64);
        let s = r.render(Format::Json);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["results"]["gm"], serde_json::json!([[1, 1], [2, 1]]));
        assert_eq!(v["checks"][0]["status"], "pass");
        assert!(s.find("\"type\"").unwrap() < s.find("\"rank\"").unwrap());
    }

    #[test]
    fn latex_renders_polynomials() {
        let mut r = Report::new("bazlov");
        let p = QPoly::from_terms([(5, 1), (6, 1)]);
        r.check_eq("eq", p.clone(), p);
        assert!(r
            .render(Format::Latex)
            .contains("q^{5} + q^{6} &= q^{5} + q^{6}"));
    }
}
