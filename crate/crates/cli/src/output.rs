//! Machine-readable documents and their text/CSV renderings.
//!
//! Floats are rendered with Rust's shortest-round-trip formatting, so a
//! parsed-back document reproduces the original values bit for bit; rational
//! values travel as exact `numerator/denominator` strings.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::fmt::Display;

/// Trace document: the fixed schema of `trace-quad` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDoc<V> {
    pub params: TraceParams<V>,
    pub rows: Vec<TraceRowDoc<V>>,
    /// Final leading coefficient (the limit approximant).
    pub limit: Option<V>,
    /// ½√(4ac − b²) where the backend can take square roots.
    pub closed_form: Option<V>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceParams<V> {
    pub a: V,
    pub b: V,
    pub c: V,
    pub tol: f64,
    pub max_iter: usize,
    /// Step count when running a fixed number of steps instead of to
    /// tolerance.
    pub iters: Option<usize>,
    pub backend: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRowDoc<V> {
    pub n: usize,
    pub a: V,
    pub b: V,
    pub c: V,
    pub residual: V,
}

impl<V: Display + Serialize + DeserializeOwned> TraceDoc<V> {
    /// CSV body with the fixed header `n,a,b,c,residual`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,a,b,c,residual\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.n, row.a, row.b, row.c, row.residual
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "trace of (a, b, c) = ({}, {}, {}), backend {}\n",
            self.params.a, self.params.b, self.params.c, self.params.backend
        );
        out.push_str(&format!(
            "{:<4} {:<24} {:<24} {:<24} {:<24}\n",
            "n", "a", "b", "c", "residual"
        ));
        for row in &self.rows {
            out.push_str(&format!(
                "{:<4} {:<24} {:<24} {:<24} {:<24}\n",
                row.n,
                row.a.to_string(),
                row.b.to_string(),
                row.c.to_string(),
                row.residual.to_string()
            ));
        }
        if let Some(limit) = &self.limit {
            out.push_str(&format!("limit     {limit}\n"));
        }
        if let Some(closed) = &self.closed_form {
            out.push_str(&format!("closed    {closed}\n"));
        }
        out
    }
}

/// Sextic iteration document: schema of `degree6` output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SexticDoc {
    pub params: SexticParams,
    pub rows: Vec<SexticRowDoc>,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SexticParams {
    pub a: f64,
    pub b: f64,
    pub tol: f64,
    pub max_iter: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SexticRowDoc {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub residual: f64,
}

impl SexticDoc {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,a,b,residual\n");
        for row in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", row.n, row.a, row.b, row.residual));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "sextic parameter iteration from (a, b) = ({}, {})\n",
            self.params.a, self.params.b
        );
        out.push_str(&format!(
            "{:<4} {:<24} {:<24} {:<24}\n",
            "n", "a", "b", "residual"
        ));
        for row in &self.rows {
            out.push_str(&format!(
                "{:<4} {:<24} {:<24} {:<24}\n",
                row.n, row.a, row.b, row.residual
            ));
        }
        out.push_str(if self.converged {
            "converged to (3, 3)\n"
        } else {
            "did not converge within the step budget\n"
        });
        out
    }
}

/// Serializes any document as a single JSON line.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string(doc).expect("documents serialize infallibly");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TraceDoc<f64> {
        TraceDoc {
            params: TraceParams {
                a: 4.0,
                b: 3.0,
                c: 1.0,
                tol: 1e-12,
                max_iter: 30,
                iters: Some(1),
                backend: "float".into(),
            },
            rows: vec![TraceRowDoc {
                n: 0,
                a: 4.0,
                b: 3.0,
                c: 1.0,
                residual: 6.0,
            }],
            limit: Some(4.0),
            closed_form: Some(7f64.sqrt() / 2.0),
        }
    }

    #[test]
    fn csv_has_the_fixed_header() {
        let csv = sample().to_csv();
        assert!(csv.starts_with("n,a,b,c,residual\n"));
        assert!(csv.ends_with('\n'));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn json_round_trips_bit_exactly() {
        let doc = sample();
        let text = to_json(&doc);
        let parsed: TraceDoc<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, doc);
        assert_eq!(
            parsed.closed_form.unwrap().to_bits(),
            doc.closed_form.unwrap().to_bits()
        );
        // and serializing again is byte-identical
        assert_eq!(to_json(&parsed), text);
    }
}
