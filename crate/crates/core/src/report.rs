//! Machine-readable verification reports.
//!
//! Every claim carries one verdict. `Refuted` is reserved for claims the suite
//! asserts; discrepancies with published constants that are audited rather
//! than asserted are `ReportedOnly`, with `matches` recording the outcome.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::exterior::{Form, VField};
use crate::polyring::Poly;
use crate::Rat;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    Refuted,
    ReportedOnly,
}

/// Where the expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Stated in the source being audited.
    Published,
    /// Computed independently by this crate.
    Derived,
    /// Follows from a definition.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub anchor: String,
    pub statement: String,
    pub computed: Value,
    pub expected: Value,
    pub provenance: Provenance,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub suite: String,
    pub engine_version: String,
    pub parameters: BTreeMap<String, Value>,
    pub claims: Vec<Claim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl VerifyReport {
    pub fn new(suite: &str) -> Self {
        VerifyReport {
            schema: SCHEMA,
            suite: suite.to_string(),
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            parameters: BTreeMap::new(),
            claims: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    /// An asserted claim: confirmed when `ok`, refuted otherwise.
    pub fn assert_claim(
        &mut self,
        anchor: &str,
        statement: &str,
        computed: Value,
        expected: Value,
        provenance: Provenance,
        ok: bool,
    ) -> bool {
        self.claims.push(Claim {
            anchor: anchor.to_string(),
            statement: statement.to_string(),
            computed,
            expected,
            provenance,
            verdict: if ok { Verdict::Confirmed } else { Verdict::Refuted },
            matches: None,
        });
        ok
    }

    /// An audited claim that never fails the run.
    pub fn report_claim(
        &mut self,
        anchor: &str,
        statement: &str,
        computed: Value,
        expected: Value,
        provenance: Provenance,
        matches: Option<bool>,
    ) {
        self.claims.push(Claim {
            anchor: anchor.to_string(),
            statement: statement.to_string(),
            computed,
            expected,
            provenance,
            verdict: Verdict::ReportedOnly,
            matches,
        });
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.verdict != Verdict::Refuted)
    }

    pub fn claim(&self, anchor: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.anchor == anchor)
    }

    pub fn refuted(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.verdict == Verdict::Refuted)
    }

    /// Append another suite's claims and parameters, prefixing them with
    /// its suite name.
    pub fn absorb(&mut self, other: VerifyReport) {
        for (k, v) in other.parameters {
            self.parameters.insert(format!("{}/{}", other.suite, k), v);
        }
        for mut c in other.claims {
            c.anchor = format!("{}/{}", other.suite, c.anchor);
            self.claims.push(c);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One line per claim.
    pub fn summary(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for c in &self.claims {
            let tag = match (c.verdict, c.matches) {
                (Verdict::Confirmed, _) => "confirmed",
                (Verdict::Refuted, _) => "REFUTED",
                (Verdict::ReportedOnly, Some(false)) => "reported (differs)",
                (Verdict::ReportedOnly, Some(true)) => "reported (agrees)",
                (Verdict::ReportedOnly, None) => "reported",
            };
            out.push_str(&format!("  [{tag}] {}: {}\n", c.anchor, c.statement));
            let computed = compact(&c.computed);
            if c.verdict != Verdict::Confirmed {
                out.push_str(&format!("      computed {computed}\n      expected {}\n", compact(&c.expected)));
            } else if computed.chars().count() <= 60 {
                out.push_str(&format!("      computed {computed}\n"));
            }
        }
        out
    }
}

fn compact(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.len() > 200 {
        format!("{}…", &s[..s.char_indices().nth(200).map_or(s.len(), |(i, _)| i)])
    } else {
        s
    }
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

/// `[[coefficient, [[row, col, exp], …]], …]` in ascending monomial order.
pub fn poly_json(p: &Poly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                let exps: Vec<Value> = m.exponents().iter().map(|(v, e)| json!([v.row, v.col, e])).collect();
                json!([c.to_string(), exps])
            })
            .collect(),
    )
}

/// `[[[[row, col], …], poly], …]`.
pub fn form_json(f: &Form) -> Value {
    Value::Array(
        f.terms()
            .map(|(gens, p)| {
                let g: Vec<Value> = gens.iter().map(|v| json!([v.row, v.col])).collect();
                json!([g, poly_json(p)])
            })
            .collect(),
    )
}

pub fn vfield_json(x: &VField) -> Value {
    Value::Array(x.components().map(|(v, p)| json!([[v.row, v.col], poly_json(p)])).collect())
}
