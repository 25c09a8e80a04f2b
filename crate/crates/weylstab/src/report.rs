//! JSON report documents. Field order is the declaration order below and is
//! part of the published schema (`schema/report.schema.json`).

use serde::Serialize;
use weylstab_core::charvar::CharData;
use weylstab_core::hilbert::HilbertData;
use weylstab_core::stab::{LevelOutcome, ScanReport};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub version: &'static str,
    pub input_hash: String,
    pub prime: u64,
    pub d: usize,
    pub rank: usize,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Body {
    Nf(NfBody),
    Gb(GbBody),
    Char(CharBody),
    Ideal(IdealBody),
    Scan(ScanBody),
    LengthBound(LengthBoundBody),
}

#[derive(Debug, Clone, Serialize)]
pub struct NfResult {
    pub input: String,
    pub normal_form: String,
    /// Power of `p` applied to make the rebased element primitive.
    pub p_power: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NfBody {
    pub level: u32,
    pub results: Vec<NfResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GbBody {
    pub level: u32,
    pub grading: &'static str,
    pub basis: Vec<Vec<String>>,
    pub initial: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharBody {
    pub char_data: CharJson,
}

/// Output of `hilbert`, `dim`, `mult` and `holonomic`.
#[derive(Debug, Clone, Serialize)]
pub struct IdealBody {
    /// `null` when the ideal came from the problem file.
    pub level: Option<u32>,
    pub source: &'static str,
    pub ideal: Vec<String>,
    pub hilbert: HilbertJson,
    pub dimension: Option<usize>,
    pub multiplicity: u64,
    pub holonomic: bool,
    pub radical_verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HilbertJson {
    pub binomial_coeffs: Vec<i64>,
    pub degree: Option<usize>,
    pub multiplicity: u64,
    pub stability_index: u64,
}

impl From<&HilbertData> for HilbertJson {
    fn from(h: &HilbertData) -> Self {
        HilbertJson {
            binomial_coeffs: h.binomial_coeffs.clone(),
            degree: h.degree,
            multiplicity: h.multiplicity,
            stability_index: h.stability_index,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CharJson {
    pub level: u32,
    pub ideal: Vec<String>,
    pub hilbert: HilbertJson,
    pub dimension: Option<usize>,
    pub multiplicity: u64,
    pub holonomic: bool,
    pub radical_verified: bool,
}

impl From<&CharData> for CharJson {
    fn from(c: &CharData) -> Self {
        CharJson {
            level: c.level,
            ideal: c.ideal.iter().map(|f| f.to_string()).collect(),
            hilbert: (&c.hilbert).into(),
            dimension: c.dimension,
            multiplicity: c.multiplicity,
            holonomic: c.holonomic,
            radical_verified: c.radical_verified,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelJson {
    pub level: u32,
    /// `ok`, `degenerate` or `failed`.
    pub status: &'static str,
    pub char_data: Option<CharJson>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundJson {
    pub bound: u64,
    pub status: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanBody {
    pub window: [u32; 2],
    pub levels: Vec<LevelJson>,
    pub detected_n0: Option<u32>,
    pub certified_n0: Option<u32>,
    pub certificate_error: Option<String>,
    pub tower_dimension: Option<usize>,
    pub length_bound: Option<BoundJson>,
    pub length_bound_error: Option<String>,
}

impl From<&ScanReport> for ScanBody {
    fn from(r: &ScanReport) -> Self {
        let levels = r
            .levels
            .iter()
            .map(|e| match &e.outcome {
                LevelOutcome::Char(c) => LevelJson {
                    level: e.level,
                    status: "ok",
                    char_data: Some(c.into()),
                    error: None,
                },
                LevelOutcome::Degenerate => LevelJson {
                    level: e.level,
                    status: "degenerate",
                    char_data: None,
                    error: None,
                },
                LevelOutcome::Failed(err) => LevelJson {
                    level: e.level,
                    status: "failed",
                    char_data: None,
                    error: Some(err.to_string()),
                },
            })
            .collect();
        ScanBody {
            window: [r.n_lo, r.n_hi],
            levels,
            detected_n0: r.detected_n0,
            certified_n0: r.certified_n0,
            certificate_error: r.certificate_error.as_ref().map(|e| e.to_string()),
            tower_dimension: r.tower_dimension,
            length_bound: r.length_bound.map(|b| BoundJson {
                bound: b.bound,
                status: b.status.as_str(),
            }),
            length_bound_error: r.length_bound_error.as_ref().map(|e| e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LengthBoundBody {
    pub window: [u32; 2],
    pub detected_n0: Option<u32>,
    pub certified_n0: Option<u32>,
    pub length_bound: Option<BoundJson>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorJson {
    pub kind: &'static str,
    pub exit_code: i32,
    pub message: String,
}

/// Emitted instead of a report when a command fails.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub command: &'static str,
    pub version: &'static str,
    pub error: ErrorJson,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}
