//! Versioned report documents: runs, verdicts, embedded certificates and error records.

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::bounds::{ChainVerdict, Claim, ExactChainCertificate};
use crate::formats::FormatError;
use crate::modules::{ModuleHom, ModuleRep};

pub const FORMAT: &str = "bocal-report/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Verdict {
        Verdict { name: name.into(), pass, detail: detail.into() }
    }
}

/// One command and everything it produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Run {
    pub command: String,
    pub inputs_digest: String,
    pub outputs: Map<String, Value>,
    pub certificates: Vec<Value>,
    pub verdicts: Vec<Verdict>,
}

impl Run {
    pub fn new(command: impl Into<String>, inputs_digest: String) -> Run {
        Run { command: command.into(), inputs_digest, outputs: Map::new(), certificates: Vec::new(), verdicts: Vec::new() }
    }

    pub fn output(&mut self, key: &str, value: impl Serialize) {
        self.outputs.insert(key.to_string(), serde_json::to_value(value).expect("outputs serialize"));
    }

    pub fn verdict(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict::new(name, pass, detail));
    }

    pub fn certificate(&mut self, value: Value) {
        self.certificates.push(value);
    }

    pub fn ok(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

impl ErrorRecord {
    pub fn new(kind: impl Into<String>, message: impl Into<String>) -> ErrorRecord {
        ErrorRecord { kind: kind.into(), message: message.into(), line: None, column: None, path: None }
    }

    pub fn from_format(file: &str, e: &FormatError) -> ErrorRecord {
        match e {
            FormatError::Parse { line, column, message } => ErrorRecord {
                kind: "parse".into(),
                message: format!("{file}: {message}"),
                line: Some(*line),
                column: Some(*column),
                path: None,
            },
            FormatError::Invalid { path, message } => ErrorRecord {
                kind: "invalid".into(),
                message: format!("{file}: {message}"),
                line: None,
                column: None,
                path: Some(path.clone()),
            },
            other => ErrorRecord::new("build", format!("{file}: {other}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub format: String,
    pub seed: u64,
    pub runs: Vec<Run>,
    pub errors: Vec<ErrorRecord>,
}

impl ReportDocument {
    pub fn new(seed: u64) -> ReportDocument {
        ReportDocument { format: FORMAT.into(), seed, runs: Vec::new(), errors: Vec::new() }
    }

    pub fn ok(&self) -> bool {
        self.errors.is_empty() && !self.runs.is_empty() && self.runs.iter().all(Run::ok)
    }

    pub fn exit_code(&self) -> i32 {
        if !self.errors.is_empty() {
            2
        } else if self.ok() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} seed={}\n", self.format, self.seed);
        for run in &self.runs {
            out.push_str(&format!("\n== {} ==\n", run.command));
            out.push_str(&format!("inputs {}\n", run.inputs_digest));
            for (k, v) in &run.outputs {
                render(&mut out, k, v, 1);
            }
            if !run.certificates.is_empty() {
                out.push_str(&format!("  ({} certificates embedded in the JSON report)\n", run.certificates.len()));
            }
            for v in &run.verdicts {
                let tag = if v.pass { "PASS" } else { "FAIL" };
                if v.detail.is_empty() {
                    out.push_str(&format!("{tag} {}\n", v.name));
                } else {
                    out.push_str(&format!("{tag} {}: {}\n", v.name, v.detail));
                }
            }
        }
        for e in &self.errors {
            let pos = match (e.line, e.column) {
                (Some(l), Some(c)) => format!(" (line {l}, column {c})"),
                _ => String::new(),
            };
            let path = e.path.as_ref().map(|p| format!(" at {p}")).unwrap_or_default();
            out.push_str(&format!("ERROR {}{pos}{path}: {}\n", e.kind, e.message));
        }
        out.push_str(&format!("\noverall: {}\n", if self.ok() { "PASS" } else { "FAIL" }));
        out
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && (!x.is_array() || x.as_array().unwrap().iter().all(|y| !y.is_array() && !y.is_object()))),
        Value::Object(_) => false,
        _ => true,
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::String(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
        _ if is_flat(v) => out.push_str(&format!("{pad}{key}: {v}\n")),
        Value::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, x) in m {
                render(out, k, x, depth + 1);
            }
        }
        Value::Array(xs) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, x) in xs.iter().enumerate() {
                render(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}

/// `sha256:` digest of the concatenated parts, each length-prefixed.
pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    format!("sha256:{}", hex::encode(h.finalize()))
}

/// Dimensions and the action of every layer-one generator.
pub fn module_record(m: &ModuleRep) -> Value {
    let a = m.algebra();
    let mut action = Map::new();
    for g in a.generators() {
        action.insert(a.label(g).to_string(), serde_json::to_value(m.block(g)).expect("matrices serialize"));
    }
    json!({ "algebra": a.name(), "dims": m.dims(), "generators": action })
}

pub fn hom_record(h: &ModuleHom) -> Value {
    json!({ "source_dims": h.source.dims(), "target_dims": h.target.dims(), "matrix": h.matrix() })
}

pub fn claim_record(c: &Claim) -> Value {
    let mut v = json!({ "tag": c.tag() });
    let m = v.as_object_mut().unwrap();
    match c {
        Claim::ProjectiveOver { level, summands, .. } => {
            m.insert("level".into(), json!(level));
            m.insert("summands".into(), json!(summands));
        }
        Claim::StableOver { level, .. } => {
            m.insert("level".into(), json!(level));
        }
        Claim::SplitInto { copies, mono, retraction } => {
            m.insert("copies".into(), json!(copies));
            m.insert("mono".into(), hom_record(mono));
            m.insert("retraction".into(), hom_record(retraction));
        }
        Claim::HomImage { of, inner } => {
            m.insert("of".into(), module_record(of));
            m.insert("inner".into(), claim_record(inner));
        }
        Claim::SumOf(parts) => {
            let ps: Vec<Value> = parts.iter().map(|(x, c)| json!({ "dims": x.dims(), "claim": claim_record(c) })).collect();
            m.insert("parts".into(), Value::Array(ps));
        }
        Claim::Syzygy { n } => {
            m.insert("n".into(), json!(n));
        }
        Claim::Resolves => {}
    }
    v
}

/// Terms, maps, claims and (when given) the verdict of an exact chain.
pub fn chain_record(name: &str, c: &ExactChainCertificate, verdict: Option<&ChainVerdict>) -> Value {
    let terms: Vec<Value> = c
        .terms
        .iter()
        .map(|t| json!({ "module": module_record(&t.module), "claim": claim_record(&t.claim) }))
        .collect();
    let maps: Vec<Value> = c.maps.iter().map(hom_record).collect();
    let mut v = json!({
        "kind": "exact-chain",
        "name": name,
        "algebra": c.algebra,
        "terms": terms,
        "end": module_record(&c.end),
        "end_claim": claim_record(&c.end_claim),
        "maps": maps,
    });
    if let Some(verdict) = verdict {
        v.as_object_mut().unwrap().insert("verdict".into(), serde_json::to_value(verdict).expect("verdicts serialize"));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digests_separate_parts() {
        assert_ne!(digest(&[b"ab", b"c"]), digest(&[b"a", b"bc"]));
        assert!(digest(&[]).starts_with("sha256:"));
    }

    #[test]
    fn exit_codes() {
        let mut d = ReportDocument::new(0);
        assert_eq!(d.exit_code(), 1);
        let mut r = Run::new("x", digest(&[]));
        r.verdict("a", true, "");
        d.runs.push(r.clone());
        assert_eq!(d.exit_code(), 0);
        r.verdict("b", false, "why");
        d.runs.push(r);
        assert_eq!(d.exit_code(), 1);
        assert!(d.to_text().contains("FAIL b: why"));
        d.errors.push(ErrorRecord::new("parse", "bad"));
        assert_eq!(d.exit_code(), 2);
    }

    #[test]
    fn output_keys_keep_insertion_order() {
        let mut r = Run::new("x", digest(&[]));
        r.output("zeta", 1);
        r.output("alpha", 2);
        let keys: Vec<&String> = r.outputs.keys().collect();
        assert_eq!(keys, ["zeta", "alpha"]);
    }
}
