//! Structured reports: JSON schemas (field order is canonical), human
//! rendering, and CSV rendering.
//!
//! Rationals are serialized as exact `p/q` strings, never floats. Emitted
//! JSON round-trips byte-identically: parsing a report and re-emitting it
//! reproduces the input.

use serde::{Deserialize, Serialize};

use qgenus_core::search::{AmbientSpec, SweepReport};
use qgenus_core::{QSeries, Rat, StringCertificate};

use crate::CliError;

/// Exact `q`-expansion: `coeffs[n]` is the coefficient of `q^{2n}` as a
/// rational string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeriesJson {
    pub q_order: usize,
    pub coeffs: Vec<String>,
}

impl QSeriesJson {
    pub fn from_series(s: &QSeries) -> Self {
        Self {
            q_order: s.trunc_order(),
            coeffs: s.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn to_series(&self) -> Result<QSeries, CliError> {
        let coeffs: Result<Vec<Rat>, _> = self.coeffs.iter().map(|c| c.parse::<Rat>()).collect();
        let coeffs = coeffs.map_err(|e| CliError::Input(format!("bad rational: {e}")))?;
        if coeffs.len() != self.q_order + 1 {
            return Err(CliError::Input("coefficient count != q_order + 1".into()));
        }
        Ok(QSeries::from_coeffs(coeffs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusEntry {
    pub kind: String,
    pub value: QSeriesJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusCmdReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub n: Vec<usize>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<i64>>,
    pub complex_dim: usize,
    pub real_dim: usize,
    pub q_order: usize,
    pub string: StringCertificate,
    pub genera: Vec<GenusEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckStringReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub n: Vec<usize>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<i64>>,
    pub certificate: StringCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundMatrix {
    pub n: Vec<usize>,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCmdReport {
    pub s: usize,
    pub t_max: usize,
    pub ambient: AmbientSpec,
    pub count: usize,
    pub matrices: Vec<FoundMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyCmdReport {
    pub ambient: AmbientSpec,
    pub sweep: SweepReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleCmdReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub n: Vec<usize>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<i64>>,
    pub kind: String,
    pub q_re: f64,
    pub q_im: f64,
    pub q_order: usize,
    pub exact_series: QSeriesJson,
    pub exact_re: f64,
    pub exact_im: f64,
    pub numeric_re: f64,
    pub numeric_im: f64,
    /// "absolute" when the exact value is zero, "relative" otherwise.
    pub comparison: String,
    pub error: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
}

/// Canonical JSON emission: pretty-printed, trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

/// RFC-4180-ish field escaping: quote when the field contains a comma,
/// quote, or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn fmt_rows(rows: &[Vec<i64>]) -> String {
    let inner: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    format!("[{}]", inner.join(","))
}

pub fn fmt_dims(n: &[usize]) -> String {
    format!(
        "[{}]",
        n.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    )
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn certificate_human(c: &StringCertificate) -> String {
    format!(
        "string: {}  [lefschetz: {}, matrix criterion: {}, pushforward p1 zero: {}, w2 zero mod 2: {}]{}",
        yesno(c.is_string),
        yesno(c.lefschetz_ok),
        yesno(c.matrix_criterion_ok),
        yesno(c.pushforward_p1_zero),
        yesno(c.w2_zero_mod2),
        if c.lefschetz_ok {
            ""
        } else {
            "\n  caveat: lefschetz condition fails; the matrix criterion does not decide string-ness here"
        }
    )
}

impl GenusCmdReport {
    pub fn human(&self) -> String {
        let mut out = String::new();
        if let Some(label) = &self.label {
            out.push_str(&format!("instance: {label}\n"));
        }
        out.push_str(&format!(
            "n = {}  D = {}\ncomplex dimension {} (real {})\n{}\n",
            fmt_dims(&self.n),
            fmt_rows(&self.d),
            self.complex_dim,
            self.real_dim,
            certificate_human(&self.string)
        ));
        for g in &self.genera {
            let series = g.value.to_series().expect("self-produced series");
            let order_note = if g.value.q_order > 0 {
                format!("   (exact through q^{})", 2 * g.value.q_order)
            } else {
                String::new()
            };
            out.push_str(&format!("{:<16} = {}{}\n", g.kind, series, order_note));
        }
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("label,n,D,kind,q_order,value\n");
        for g in &self.genera {
            let series = g.value.to_series().expect("self-produced series");
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_field(self.label.as_deref().unwrap_or("")),
                csv_field(&fmt_dims(&self.n)),
                csv_field(&fmt_rows(&self.d)),
                g.kind,
                g.value.q_order,
                csv_field(&series.to_string()),
            ));
        }
        out
    }
}

impl CheckStringReport {
    pub fn human(&self) -> String {
        format!(
            "n = {}  D = {}\n{}\n",
            fmt_dims(&self.n),
            fmt_rows(&self.d),
            certificate_human(&self.certificate)
        )
    }

    pub fn csv(&self) -> String {
        let c = &self.certificate;
        format!(
            "label,n,D,is_string,lefschetz_ok,matrix_criterion_ok,pushforward_p1_zero,w2_zero_mod2\n{},{},{},{},{},{},{},{}\n",
            csv_field(self.label.as_deref().unwrap_or("")),
            csv_field(&fmt_dims(&self.n)),
            csv_field(&fmt_rows(&self.d)),
            c.is_string,
            c.lefschetz_ok,
            c.matrix_criterion_ok,
            c.pushforward_p1_zero,
            c.w2_zero_mod2,
        )
    }
}

impl SearchCmdReport {
    pub fn human(&self) -> String {
        let mut out = format!(
            "search s={} t_max={} {}\n",
            self.s,
            self.t_max,
            match &self.ambient {
                AmbientSpec::Exact(n) => format!("n={}", fmt_dims(n)),
                AmbientSpec::UpTo(m) => format!("n_q<={m}"),
            }
        );
        for m in &self.matrices {
            out.push_str(&format!("  n={}  D={}\n", fmt_dims(&m.n), fmt_rows(&m.rows)));
        }
        out.push_str(&format!("{} matrices\n", self.count));
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("n,rows\n");
        for m in &self.matrices {
            out.push_str(&format!(
                "{},{}\n",
                csv_field(&fmt_dims(&m.n)),
                csv_field(&fmt_rows(&m.rows))
            ));
        }
        out
    }
}

impl VerifyCmdReport {
    pub fn human(&self) -> String {
        let s = &self.sweep;
        let mut out = format!(
            "verify s={} t_max={} {} q-order {} (series exact through q^{})\n",
            s.s,
            s.t_max,
            match &self.ambient {
                AmbientSpec::Exact(n) => format!("n={}", fmt_dims(n)),
                AmbientSpec::UpTo(m) => format!("n_q<={m}"),
            },
            s.q_order,
            2 * s.q_order
        );
        if s.single_factor {
            out.push_str("single projective factor family\n");
        }
        for i in &s.instances {
            out.push_str(&format!(
                "  n={} D={}  dim {}  witten {}  ({} ms)\n",
                fmt_dims(&i.n),
                fmt_rows(&i.rows),
                i.complex_dim,
                if i.witten_is_zero {
                    "= 0".to_string()
                } else {
                    format!("NONZERO: {}", i.counterexample.as_deref().unwrap_or("?"))
                },
                i.elapsed_ms
            ));
        }
        if !s.odd_dim_instances.is_empty() {
            out.push_str("odd complex dimension (separate section):\n");
            for i in &s.odd_dim_instances {
                out.push_str(&format!(
                    "  n={} D={}  dim {}  witten {}  ({} ms)\n",
                    fmt_dims(&i.n),
                    fmt_rows(&i.rows),
                    i.complex_dim,
                    if i.witten_is_zero { "= 0" } else { "NONZERO" },
                    i.elapsed_ms
                ));
            }
        }
        if s.skipped_odd_dim > 0 {
            out.push_str(&format!(
                "{} odd-dimensional instances skipped (enable with --allow-odd-dim)\n",
                s.skipped_odd_dim
            ));
        }
        out.push_str(&format!(
            "{} instances, {} failures, {} ms\n",
            s.instance_count(),
            s.failures,
            s.total_ms
        ));
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("section,n,rows,complex_dim,witten_is_zero,elapsed_ms\n");
        for (section, list) in [
            ("even", &self.sweep.instances),
            ("odd", &self.sweep.odd_dim_instances),
        ] {
            for i in list {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    section,
                    csv_field(&fmt_dims(&i.n)),
                    csv_field(&fmt_rows(&i.rows)),
                    i.complex_dim,
                    i.witten_is_zero,
                    i.elapsed_ms
                ));
            }
        }
        out
    }
}

impl OracleCmdReport {
    pub fn human(&self) -> String {
        format!(
            "n = {}  D = {}\nkind: {}   q = {}{}{}i   (exact series through q^{})\n\
             exact   = {} + {}i\nnumeric = {} + {}i\n{} error = {:.3e} (tolerance {:.1e}) -> {}\n",
            fmt_dims(&self.n),
            fmt_rows(&self.d),
            self.kind,
            self.q_re,
            if self.q_im < 0.0 { "" } else { "+" },
            self.q_im,
            2 * self.q_order,
            self.exact_re,
            self.exact_im,
            self.numeric_re,
            self.numeric_im,
            self.comparison,
            self.error,
            self.tolerance,
            if self.within_tolerance { "ok" } else { "MISMATCH" }
        )
    }

    pub fn csv(&self) -> String {
        format!(
            "n,D,kind,q_re,q_im,exact_re,exact_im,numeric_re,numeric_im,comparison,error,tolerance,within_tolerance\n{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            csv_field(&fmt_dims(&self.n)),
            csv_field(&fmt_rows(&self.d)),
            self.kind,
            self.q_re,
            self.q_im,
            self.exact_re,
            self.exact_im,
            self.numeric_re,
            self.numeric_im,
            self.comparison,
            self.error,
            self.tolerance,
            self.within_tolerance
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qseries_json_roundtrip() {
        let s = QSeries::from_coeffs(vec![
            qgenus_core::rat(-1, 8),
            qgenus_core::rat(3, 1),
            qgenus_core::rat(153, 8),
        ]);
        let j = QSeriesJson::from_series(&s);
        assert_eq!(j.coeffs, vec!["-1/8", "3", "153/8"]);
        assert_eq!(j.to_series().unwrap(), s);
    }

    #[test]
    fn csv_escaping() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
