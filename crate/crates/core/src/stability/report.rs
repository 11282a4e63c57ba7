use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Irreducible,
    Reducible,
    Untested,
}

impl Verdict {
    fn symbol(self) -> char {
        match self {
            Verdict::Irreducible => 'I',
            Verdict::Reducible => 'R',
            Verdict::Untested => '-',
        }
    }
}

/// How a verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum MethodTag {
    Generic,
    Theorem(String),
    Oracle,
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodTag::Generic => f.write_str("generic"),
            MethodTag::Theorem(name) => write!(f, "theorem:{name}"),
            MethodTag::Oracle => f.write_str("oracle"),
        }
    }
}

impl From<MethodTag> for String {
    fn from(m: MethodTag) -> String {
        m.to_string()
    }
}

impl TryFrom<String> for MethodTag {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        match s.as_str() {
            "generic" => Ok(MethodTag::Generic),
            "oracle" => Ok(MethodTag::Oracle),
            _ => s
                .strip_prefix("theorem:")
                .map(|n| MethodTag::Theorem(n.to_string()))
                .ok_or_else(|| format!("unknown method tag `{s}`")),
        }
    }
}

/// Verdict at one Capelli level: whether `f_n` is irreducible over the level
/// of `α_n`, equivalently whether `f^{(n+1)}` is irreducible over F_q.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub depth: usize,
    pub verdict: Verdict,
    pub method: MethodTag,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    /// Field descriptor of F_q.
    pub field: String,
    pub q: String,
    pub poly: String,
    pub degree: usize,
    pub depth: usize,
    /// `generic` or `theorem-driven`.
    pub method: String,
    pub levels: Vec<LevelRecord>,
    pub first_reducible: Option<usize>,
    /// Family theorem proving stability at every depth, when one applies.
    pub certificate: Option<String>,
}

impl StabilityReport {
    /// No reducible level up to the requested depth.
    pub fn stable_to_depth(&self) -> bool {
        self.first_reducible.is_none()
    }

    pub fn verdicts(&self) -> Vec<Verdict> {
        self.levels.iter().map(|l| l.verdict).collect()
    }

    /// Verdict symbols `I`, `R`, `-` per depth.
    pub fn verdict_string(&self) -> String {
        self.levels.iter().map(|l| l.verdict.symbol()).collect()
    }

    /// Human summary: a proof only when a certificate is present.
    pub fn conclusion(&self) -> String {
        match (self.first_reducible, &self.certificate) {
            (Some(n), _) => format!("reducible: f^({}) is reducible", n + 1),
            (None, Some(c)) => format!("stable (certificate {c})"),
            (None, None) => format!("stable to depth {} (depth-limited evidence)", self.depth),
        }
    }

    /// One line, without timing fields, so reruns compare byte for byte.
    pub fn to_line(&self) -> String {
        let verdicts = self.verdict_string();
        let mut tags: Vec<String> = self.levels.iter().map(|l| l.method.to_string()).collect();
        tags.dedup();
        format!(
            "q={} poly={} d={} depth={} method={} verdicts={} tags={} first_reducible={} certificate={}",
            self.q,
            self.poly,
            self.degree,
            self.depth,
            self.method,
            verdicts,
            tags.join("|"),
            self.first_reducible.map_or("-".to_string(), |n| n.to_string()),
            self.certificate.as_deref().unwrap_or("-"),
        )
    }

    /// The same report with timing fields zeroed.
    pub fn without_timing(&self) -> StabilityReport {
        let mut r = self.clone();
        for l in &mut r.levels {
            l.millis = 0.0;
        }
        r
    }
}
