//! JSON and CSV file formats for the command-line interface.
//!
//! Complex numbers are always `[re, im]` pairs and matrices are row-major
//! nested lists of such pairs, so files stay language- and locale-neutral.
//! Input specs reject unknown fields. All reports carry
//! `schema_version = "1"`; floats round-trip losslessly through
//! serde_json's shortest-representation encoding.

use crate::channels::{
    LinearMapOnOperators, MapClassification, OperatorMap, PositivityVerdict, QuantumChannel,
};
use crate::feasibility::{FeasibilityStatus, FeasibilityVerdict};
use crate::numkit::{matrix_from_rows, ComplexMatrix};
use crate::povm::{build_minimal_ic, tetrahedral_sic, Povm};
use crate::preorder::{KernelCertificate, PreorderReport};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Version tag carried by every report file.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("failed to read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("failed to write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON in {path}: {message}")]
    Json { path: String, message: String },
    #[error("invalid field `{field}`: {message}")]
    Field { field: String, message: String },
}

/// Row-major matrix of `[re, im]` pairs.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_json(m: &ComplexMatrix) -> MatrixJson {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

pub fn matrix_from_json(rows: &MatrixJson, field: &str) -> Result<ComplexMatrix, IoError> {
    let complex_rows: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
        .collect();
    matrix_from_rows(&complex_rows).map_err(|e| IoError::Field {
        field: field.to_string(),
        message: e.to_string(),
    })
}

/// Channel input file: exactly one of `kraus` or `builtin`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpecFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kraus: Option<Vec<MatrixJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub builtin: Option<BuiltinChannel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Named channel constructors exposed to files.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinChannel {
    /// `identity`, `depolarizing`, or `dephasing`.
    pub name: String,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

impl ChannelSpecFile {
    pub fn into_channel(self) -> Result<QuantumChannel, IoError> {
        match (self.kraus, self.builtin) {
            (Some(kraus), None) => {
                let ops = kraus
                    .iter()
                    .enumerate()
                    .map(|(k, m)| matrix_from_json(m, &format!("kraus[{k}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let label = self.label.unwrap_or_else(|| "kraus channel".into());
                QuantumChannel::from_kraus(ops, label).map_err(|e| IoError::Field {
                    field: "kraus".into(),
                    message: e.to_string(),
                })
            }
            (None, Some(builtin)) => {
                let chan = match builtin.name.as_str() {
                    "identity" => Ok(QuantumChannel::identity(builtin.d)),
                    "depolarizing" => {
                        let t = builtin.t.ok_or_else(|| IoError::Field {
                            field: "builtin.t".into(),
                            message: "depolarizing requires t".into(),
                        })?;
                        QuantumChannel::depolarizing(builtin.d, t).map_err(|e| IoError::Field {
                            field: "builtin.t".into(),
                            message: e.to_string(),
                        })
                    }
                    "dephasing" => {
                        QuantumChannel::dephasing(builtin.d).map_err(|e| IoError::Field {
                            field: "builtin.d".into(),
                            message: e.to_string(),
                        })
                    }
                    other => Err(IoError::Field {
                        field: "builtin.name".into(),
                        message: format!(
                            "unknown builtin `{other}` (expected identity, depolarizing, dephasing)"
                        ),
                    }),
                }?;
                Ok(chan)
            }
            (Some(_), Some(_)) => Err(IoError::Field {
                field: "kraus/builtin".into(),
                message: "exactly one of kraus or builtin must be present, found both".into(),
            }),
            (None, None) => Err(IoError::Field {
                field: "kraus/builtin".into(),
                message: "exactly one of kraus or builtin must be present, found neither".into(),
            }),
        }
    }
}

/// Measurement input file: exactly one of `elements` or `builtin`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PovmSpecFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<MatrixJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub builtin: Option<BuiltinPovm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinPovm {
    /// `sic` (qubit tetrahedral) or `minimal_ic`.
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
}

impl PovmSpecFile {
    pub fn into_povm(self) -> Result<Povm, IoError> {
        match (self.elements, self.builtin) {
            (Some(elements), None) => {
                let mats = elements
                    .iter()
                    .enumerate()
                    .map(|(x, m)| matrix_from_json(m, &format!("elements[{x}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let label = self.label.unwrap_or_else(|| "measurement".into());
                Povm::new(mats, label).map_err(|e| IoError::Field {
                    field: "elements".into(),
                    message: e.to_string(),
                })
            }
            (None, Some(builtin)) => match builtin.name.as_str() {
                "sic" => Ok(tetrahedral_sic()),
                "minimal_ic" => {
                    let d = builtin.d.ok_or_else(|| IoError::Field {
                        field: "builtin.d".into(),
                        message: "minimal_ic requires d".into(),
                    })?;
                    build_minimal_ic(d).map_err(|e| IoError::Field {
                        field: "builtin.d".into(),
                        message: e.to_string(),
                    })
                }
                other => Err(IoError::Field {
                    field: "builtin.name".into(),
                    message: format!("unknown builtin `{other}` (expected sic, minimal_ic)"),
                }),
            },
            _ => Err(IoError::Field {
                field: "elements/builtin".into(),
                message: "exactly one of elements or builtin must be present".into(),
            }),
        }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| IoError::Json {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    std::fs::write(path, text).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ChannelSummaryJson {
    pub label: String,
    pub din: usize,
    pub dout: usize,
}

pub fn channel_summary(chan: &impl OperatorMap) -> ChannelSummaryJson {
    ChannelSummaryJson {
        label: chan.label().to_string(),
        din: chan.din(),
        dout: chan.dout(),
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct KernelJson {
    pub dim_ker_1: usize,
    pub dim_ker_2: usize,
    pub max_leak: f64,
    pub threshold: f64,
}

impl From<&KernelCertificate> for KernelJson {
    fn from(cert: &KernelCertificate) -> Self {
        Self {
            dim_ker_1: cert.dim_ker_1,
            dim_ker_2: cert.dim_ker_2,
            max_leak: cert.max_leak,
            threshold: cert.threshold,
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FeasibilityJson {
    Feasible {
        iterations: usize,
        final_residual: f64,
    },
    Infeasible {
        gap: f64,
        iterations: usize,
        final_residual: f64,
    },
    Undecided {
        residual: f64,
        iterations: usize,
    },
}

impl From<&FeasibilityVerdict> for FeasibilityJson {
    fn from(v: &FeasibilityVerdict) -> Self {
        match &v.status {
            FeasibilityStatus::Feasible { .. } => FeasibilityJson::Feasible {
                iterations: v.iterations,
                final_residual: v.final_residual,
            },
            FeasibilityStatus::Infeasible { gap } => FeasibilityJson::Infeasible {
                gap: *gap,
                iterations: v.iterations,
                final_residual: v.final_residual,
            },
            FeasibilityStatus::Undecided { residual } => FeasibilityJson::Undecided {
                residual: *residual,
                iterations: v.iterations,
            },
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PositivityJson {
    CertifiedViolation {
        witness: MatrixJson,
        min_eigenvalue: f64,
    },
    NoViolationFound {
        probes: usize,
    },
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassificationJson {
    pub hermitian_preserving: bool,
    pub trace_preserving: bool,
    pub completely_positive: bool,
    pub positivity: PositivityJson,
}

impl From<&MapClassification> for ClassificationJson {
    fn from(cls: &MapClassification) -> Self {
        Self {
            hermitian_preserving: cls.hermitian_preserving,
            trace_preserving: cls.trace_preserving,
            completely_positive: cls.completely_positive,
            positivity: match &cls.positivity {
                PositivityVerdict::CertifiedViolation {
                    witness,
                    min_eigenvalue,
                } => PositivityJson::CertifiedViolation {
                    witness: matrix_to_json(witness),
                    min_eigenvalue: *min_eigenvalue,
                },
                PositivityVerdict::NoViolationFound { probes } => {
                    PositivityJson::NoViolationFound { probes: *probes }
                }
            },
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct PovmJson {
    pub dim: usize,
    pub label: String,
    pub elements: Vec<MatrixJson>,
}

pub fn povm_to_json(povm: &Povm) -> PovmJson {
    PovmJson {
        dim: povm.dim(),
        label: povm.label().to_string(),
        elements: povm.elements().iter().map(matrix_to_json).collect(),
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ThetaJson {
    pub din: usize,
    pub dout: usize,
    pub choi: MatrixJson,
    pub classification: ClassificationJson,
    pub residual: f64,
}

pub fn theta_to_json(
    theta: &LinearMapOnOperators,
    classification: &MapClassification,
    residual: f64,
) -> ThetaJson {
    ThetaJson {
        din: theta.din(),
        dout: theta.dout(),
        choi: matrix_to_json(theta.choi()),
        classification: classification.into(),
        residual,
    }
}

/// Report written by the `compare` subcommand.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CompareReportJson {
    pub schema_version: String,
    pub kind: String,
    pub a: ChannelSummaryJson,
    pub b: ChannelSummaryJson,
    pub asymp_1geq2: bool,
    pub asymp_2geq1: bool,
    pub kernel_12: KernelJson,
    pub kernel_21: KernelJson,
    pub postproc_1geq2: FeasibilityJson,
    pub postproc_2geq1: FeasibilityJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_12: Option<ThetaJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<(PovmJson, PovmJson)>,
}

pub fn compare_report_to_json(
    a: &QuantumChannel,
    b: &QuantumChannel,
    report: &PreorderReport,
) -> CompareReportJson {
    CompareReportJson {
        schema_version: SCHEMA_VERSION.into(),
        kind: "compare".into(),
        a: channel_summary(a),
        b: channel_summary(b),
        asymp_1geq2: report.asymp_1geq2,
        asymp_2geq1: report.asymp_2geq1,
        kernel_12: (&report.kernel_12).into(),
        kernel_21: (&report.kernel_21).into(),
        postproc_1geq2: (&report.postproc_1geq2).into(),
        postproc_2geq1: (&report.postproc_2geq1).into(),
        theta_12: match (&report.theta_12, &report.theta_12_class, report.residual_12) {
            (Some(theta), Some(cls), Some(residual)) => Some(theta_to_json(theta, cls, residual)),
            _ => None,
        },
        witnesses: report
            .witnesses
            .as_ref()
            .map(|(m1, m2)| (povm_to_json(m1), povm_to_json(m2))),
    }
}

/// Report written by the `theta` subcommand.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ThetaReportJson {
    pub schema_version: String,
    pub kind: String,
    pub a: ChannelSummaryJson,
    pub b: ChannelSummaryJson,
    pub theta: ThetaJson,
}

/// Report written by the `reconstruct` subcommand.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ReconstructReportJson {
    pub schema_version: String,
    pub kind: String,
    pub estimate: MatrixJson,
    pub psd: bool,
    pub trace: [f64; 2],
}

/// Report written by the `compat` subcommand.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CompatReportJson {
    pub schema_version: String,
    pub kind: String,
    pub mode: String,
    pub compatible: bool,
    pub verdict: FeasibilityJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mirrored_verdict: Option<FeasibilityJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recovered_measurement: Option<PovmJson>,
}

/// Writes the per-run CSV (`shots,seed,error`).
pub fn write_runs_csv(path: &std::path::Path, runs: &[(u64, u64, f64)]) -> Result<(), IoError> {
    let mut text = String::from("shots,seed,error\n");
    for (shots, seed, error) in runs {
        text.push_str(&format!("{shots},{seed},{error:e}\n"));
    }
    std::fs::write(path, text).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}

/// Writes the summary CSV (`shots,median_error,q25,q75`).
pub fn write_summary_csv(
    path: &std::path::Path,
    rows: &[crate::tomosim::ConvergenceRow],
) -> Result<(), IoError> {
    let mut text = String::from("shots,median_error,q25,q75\n");
    for row in rows {
        text.push_str(&format!(
            "{},{:e},{:e},{:e}\n",
            row.shots, row.median_error, row.q25, row.q75
        ));
    }
    std::fs::write(path, text).map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })
}
