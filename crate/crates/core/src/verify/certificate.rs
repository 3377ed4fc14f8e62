use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use super::{GnGroup, GnParams, MalcevOnTReport, MnWitness};
use crate::matrix::MatrixHeader;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

/// Everything computed for one `G_n`.
#[derive(Clone, Debug)]
pub struct GnCertificate {
    pub params: GnParams,
    pub group: GnGroup,
    /// Check outcomes in pipeline order.
    pub checks: Vec<CheckResult>,
    /// One verified `M_n` failure per `e` for which condition (iii) held.
    pub witnesses: Vec<MnWitness>,
    pub nilpotency_class: usize,
    pub malcev_on_t: MalcevOnTReport,
}

impl GnCertificate {
    pub fn c(&self) -> u32 {
        self.params.c
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn d(&self) -> usize {
        self.group.dim()
    }

    pub fn valid(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Name of the first failing check.
    pub fn failing_stage(&self) -> Option<&str> {
        self.checks.iter().find(|c| !c.pass).map(|c| c.name.as_str())
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn witness(&self, e: u32) -> Option<&MnWitness> {
        self.witnesses.iter().find(|w| w.e == e)
    }

    /// The certificate as JSON with fields
    /// `{c, n, d, checks, matrices, witness, seed}`. `witness` holds the
    /// witness for the first `e` that produced one, or `null`.
    pub fn to_json(&self) -> Value {
        let matrices: Vec<String> = self
            .group
            .generators()
            .iter()
            .enumerate()
            .map(|(i, t)| t.to_certificate_text(self.group.algebra().header(i as u32 + 1)))
            .collect();
        let header = MatrixHeader {
            n: self.n(),
            c: self.c(),
            index: 0,
        };
        let witness = self.witnesses.first().map(|w| {
            WitnessJson {
                e: w.e,
                a: w.a.iter().map(json_int).collect(),
                b: w.b.iter().map(json_int).collect(),
                alpha_val: w.alpha_val.to_text(header),
                beta_val: w.beta_val.to_text(header),
            }
        });
        serde_json::to_value(CertificateJson {
            c: self.c(),
            n: self.n(),
            d: self.d(),
            checks: &self.checks,
            matrices,
            witness,
            seed: self.params.seed,
        })
        .expect("certificate is serialisable")
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("valid JSON value");
        s.push('\n');
        s
    }
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    c: u32,
    n: u32,
    d: usize,
    checks: &'a [CheckResult],
    matrices: Vec<String>,
    witness: Option<WitnessJson>,
    seed: u64,
}

#[derive(Serialize)]
struct WitnessJson {
    e: u32,
    a: Vec<Value>,
    b: Vec<Value>,
    alpha_val: String,
    beta_val: String,
}

/// A JSON number when it fits in `i64`, otherwise its decimal string.
pub(crate) fn json_int(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}
