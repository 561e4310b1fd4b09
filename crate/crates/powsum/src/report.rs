//! Human- and machine-readable reports. The JSON form is stable and
//! round-trips: parsing a serialized report reproduces it field for field.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::criteria::{Certificate, Verdict};
use crate::reduction::{FullReduction, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputEcho,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<Vec<u64>>>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub n: u32,
    pub m: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    pub mode: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub theorem: String,
    pub params: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub original: String,
    pub reduced: String,
    pub stripped: Vec<StripEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripEntry {
    pub p: u64,
    /// phi-divisor degree that justified the strip.
    pub degree: u32,
    /// how many p^n factors were divided out
    pub steps: u32,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let i = &self.input;
        let rhs = i
            .rhs
            .clone()
            .or_else(|| {
                i.b.as_ref()
                    .zip(i.c.as_ref())
                    .map(|(b, c)| format!("{b} * {c}^{}", i.n))
            })
            .unwrap_or_default();
        out.push_str(&format!(
            "equation: x1^{n} + ... + x{m}^{n} = {rhs}   [{mode} solutions]\n",
            n = i.n,
            m = i.m,
            mode = i.mode,
        ));
        if let Some(trace) = &self.trace {
            out.push_str(&format!(
                "reduction: {} -> {}\n",
                trace.original, trace.reduced
            ));
            for s in &trace.stripped {
                out.push_str(&format!(
                    "  stripped {p}^{e} (phi-divisor of degree {k}, {steps} step{plural} of {p}^{n})\n",
                    p = s.p,
                    e = s.steps * i.n,
                    k = s.degree,
                    steps = s.steps,
                    plural = if s.steps == 1 { "" } else { "s" },
                    n = i.n,
                ));
            }
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        if let Some(cert) = &self.certificate {
            out.push_str(&format!("certificate: {}\n", cert.theorem));
            for (key, value) in &cert.params {
                out.push_str(&format!("  {key} = {value}\n"));
            }
        }
        if let Some(count) = &self.count {
            out.push_str(&format!("count: {count}\n"));
        }
        if let Some(solutions) = &self.solutions {
            out.push_str("solutions:\n");
            for tuple in solutions {
                let parts: Vec<String> = tuple.iter().map(u64::to_string).collect();
                out.push_str(&format!("  ({})\n", parts.join(", ")));
            }
        }
        out.push_str(&format!("elapsed: {} ms\n", self.elapsed_ms));
        out
    }
}

/// Flatten a certificate into its report form. Reduction wrappers contribute
/// the trace; the innermost certificate supplies theorem and parameters.
pub fn certificate_report(cert: &Certificate) -> (CertificateReport, Option<TraceReport>) {
    match cert {
        Certificate::ReducedBy {
            original_rhs,
            reduced_rhs,
            stripped,
            inner,
        } => {
            let (inner_report, _) = certificate_report(inner);
            let trace = TraceReport {
                original: original_rhs.to_string(),
                reduced: reduced_rhs.to_string(),
                stripped: stripped
                    .iter()
                    .map(|s| StripEntry {
                        p: s.divisor.p,
                        degree: s.divisor.degree,
                        steps: s.steps,
                    })
                    .collect(),
            };
            (inner_report, Some(trace))
        }
        other => {
            let mut params = BTreeMap::new();
            match other {
                Certificate::TrivialSolvable {
                    copies,
                    value,
                    slots,
                } => {
                    params.insert("copies".into(), copies.to_string());
                    params.insert("value".into(), value.to_string());
                    params.insert("slots".into(), slots.to_string());
                }
                Certificate::GapInterval { l } => {
                    params.insert("l".into(), l.to_string());
                }
                Certificate::ResidueZeroOne {
                    modulus,
                    remainder,
                    terms,
                    ..
                } => {
                    params.insert("modulus".into(), modulus.to_string());
                    params.insert("remainder".into(), remainder.to_string());
                    params.insert("terms".into(), terms.to_string());
                }
                Certificate::ResiduePlusMinus {
                    p,
                    k,
                    modulus,
                    remainder,
                    terms,
                } => {
                    params.insert("p".into(), p.to_string());
                    params.insert("k".into(), k.to_string());
                    params.insert("modulus".into(), modulus.to_string());
                    params.insert("remainder".into(), remainder.to_string());
                    params.insert("terms".into(), terms.to_string());
                }
                Certificate::GeneralResidue {
                    modulus,
                    remainder,
                    attainable,
                } => {
                    params.insert("modulus".into(), modulus.to_string());
                    params.insert("remainder".into(), remainder.to_string());
                    params.insert("attainable".into(), attainable.to_string());
                }
                Certificate::StandardNaturalBound { b, m } => {
                    params.insert("b".into(), b.to_string());
                    params.insert("m".into(), m.to_string());
                }
                Certificate::PrimePowerFermat { p, s, n } => {
                    params.insert("p".into(), p.to_string());
                    params.insert("s".into(), s.to_string());
                    params.insert("n".into(), n.to_string());
                }
                Certificate::PhiAugmentedFermat { p, s, stripped } => {
                    params.insert("p".into(), p.to_string());
                    params.insert("s".into(), s.to_string());
                    let stripped_str = stripped
                        .iter()
                        .map(|(q, e)| format!("{q}^{e}"))
                        .collect::<Vec<_>>()
                        .join("*");
                    params.insert("stripped".into(), stripped_str);
                }
                Certificate::ExhaustiveCount { rhs } => {
                    params.insert("rhs".into(), rhs.to_string());
                }
                Certificate::ReducedBy { .. } => unreachable!("handled above"),
            }
            (
                CertificateReport {
                    theorem: other.theorem().to_string(),
                    params,
                },
                None,
            )
        }
    }
}

/// Assemble the analyze report: verdict plus certificate, merged with the
/// reduction trace (shown even when no certificate fired).
pub fn verdict_report(
    input: InputEcho,
    verdict: &Verdict,
    reduction: Option<&FullReduction>,
    elapsed_ms: u64,
) -> Report {
    let (certificate, cert_trace) = match verdict.certificate() {
        Some(cert) => {
            let (c, t) = certificate_report(cert);
            (Some(c), t)
        }
        None => (None, None),
    };
    let trace = cert_trace.or_else(|| {
        reduction.and_then(|red| {
            if red.steps.is_empty() {
                return None;
            }
            Some(TraceReport {
                original: red.original_rhs.to_string(),
                reduced: red.effective_rhs.to_string(),
                stripped: red
                    .steps
                    .iter()
                    .map(|s| StripEntry {
                        p: s.divisor.p,
                        degree: s.divisor.degree,
                        steps: s.steps,
                    })
                    .collect(),
            })
        })
    });
    let count = match verdict {
        Verdict::Solvable { count, .. } => count.as_ref().map(|c| c.to_string()),
        _ => None,
    };
    Report {
        input,
        verdict: verdict.label().to_string(),
        certificate,
        trace,
        count,
        solutions: None,
        elapsed_ms,
    }
}

pub fn input_echo(
    n: u32,
    m: u32,
    b: Option<&num_bigint::BigUint>,
    c: Option<&num_bigint::BigUint>,
    rhs: Option<&num_bigint::BigUint>,
    mode: Mode,
) -> InputEcho {
    InputEcho {
        n,
        m,
        b: b.map(|v| v.to_string()),
        c: c.map(|v| v.to_string()),
        rhs: rhs.map(|v| v.to_string()),
        mode: mode.label().to_string(),
    }
}
