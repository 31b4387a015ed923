//! Check results. Every checker returns a [`Report`]; a report passes when
//! no finding failed and none was left undecided.

use serde::Serialize;
use sha2::{Digest, Sha256};

/// First line of every rendered report.
pub const REPORT_HEADER: &str = "cohcat-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Unknown,
    Fail,
}

impl Verdict {
    /// Combined verdict: any failure dominates, then any unknown.
    pub fn combine(self, other: Verdict) -> Verdict {
        self.max(other)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Unknown => "unknown",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub check: String,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
}

impl Finding {
    fn new(check: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Self {
        Finding {
            check: check.into(),
            verdict,
            detail: detail.into(),
            witness: Vec::new(),
        }
    }

    pub fn pass(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(check, Verdict::Pass, detail)
    }

    pub fn fail(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(check, Verdict::Fail, detail)
    }

    pub fn unknown(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(check, Verdict::Unknown, detail)
    }

    pub fn with_witness<I, S>(mut self, witness: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.witness = witness.into_iter().map(Into::into).collect();
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    /// Ordered key/value annotations (caps, routes, counts).
    pub notes: Vec<(String, String)>,
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, f: Finding) {
        self.findings.push(f);
    }

    pub fn extend<I: IntoIterator<Item = Finding>>(&mut self, it: I) {
        self.findings.extend(it);
    }

    /// Appends the findings and notes of `other`, prefixing check names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for (k, v) in other.notes {
            self.notes.push((format!("{prefix}.{k}"), v));
        }
        for mut f in other.findings {
            f.check = format!("{prefix}.{}", f.check);
            self.findings.push(f);
        }
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl ToString) {
        self.notes.push((key.into(), value.to_string()));
    }

    pub fn get_note(&self, key: &str) -> Option<&str> {
        self.notes
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.verdict == Verdict::Fail)
    }

    pub fn unknowns(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.verdict == Verdict::Unknown)
    }

    pub fn verdict(&self) -> Verdict {
        self.findings
            .iter()
            .fold(Verdict::Pass, |v, f| v.combine(f.verdict))
    }

    pub fn is_pass(&self) -> bool {
        self.verdict() == Verdict::Pass
    }

    /// First failing finding, if any.
    pub fn first_failure(&self) -> Option<&Finding> {
        self.failures().next()
    }
}

/// Bounds a run was performed under.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<i64>,
    pub depth: usize,
    pub seed: u64,
}

/// `sha256:<hex>` over the inputs, each prefixed by its length.
pub fn inputs_digest<I, B>(inputs: I) -> String
where
    I: IntoIterator<Item = B>,
    B: AsRef<[u8]>,
{
    let mut h = Sha256::new();
    for b in inputs {
        let b = b.as_ref();
        h.update((b.len() as u64).to_le_bytes());
        h.update(b);
    }
    let hex: String = h.finalize().iter().map(|x| format!("{x:02x}")).collect();
    format!("sha256:{hex}")
}

#[derive(Serialize)]
struct Head<'a> {
    command: &'a str,
    inputs: &'a str,
    params: &'a RunParams,
}

#[derive(Serialize)]
struct Tail {
    verdict: Verdict,
    findings: usize,
    failures: usize,
    unknowns: usize,
    wall_ms: u128,
}

impl Report {
    /// Line-delimited rendering: header, run line, notes, one line per
    /// finding, then the verdict line carrying the wall time.
    pub fn render(&self, inputs: &str, params: &RunParams, wall_ms: u128) -> String {
        let mut out = String::new();
        out.push_str(REPORT_HEADER);
        out.push('\n');
        out.push_str(&json_line(&Head {
            command: &self.command,
            inputs,
            params,
        }));
        out.push_str(&json_line(&serde_json::json!({ "notes": self.notes })));
        for f in &self.findings {
            out.push_str(&json_line(&serde_json::json!({ "finding": f })));
        }
        out.push_str(&json_line(&Tail {
            verdict: self.verdict(),
            findings: self.findings.len(),
            failures: self.failures().count(),
            unknowns: self.unknowns().count(),
            wall_ms,
        }));
        out
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("report lines serialize");
    s.push('\n');
    s
}

/// Drops the `wall_ms` field so two renderings can be compared.
pub fn strip_timing(rendered: &str) -> String {
    rendered
        .lines()
        .map(|line| match line.find(",\"wall_ms\":") {
            Some(i) => format!("{}}}", &line[..i]),
            None => line.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}
