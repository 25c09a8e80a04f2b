//! Deformation scans: per-level characteristic data, the level from which
//! it stabilises, the torsion certificate, and the finite-length bound.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use sha2::{Digest, Sha256};

use crate::charvar::{char_data, integral_initial_module, CharData, ModulePresentation};
use crate::cpoly::torsion_exponent;
use crate::error::{Error, Result};
use crate::gb::Limits;
use crate::weyl::Grading;

/// Highest level a scan may reach.
pub const MAX_LEVEL: u32 = 64;
/// Default scan window.
pub const DEFAULT_WINDOW: (u32, u32) = (0, 6);

/// Result of the pipeline at one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelOutcome {
    Char(CharData),
    /// The slice is zero.
    Degenerate,
    /// The computation failed (for instance a resource cap).
    Failed(Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelEntry {
    pub level: u32,
    pub outcome: LevelOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateStatus {
    /// The plateau is proven for every level beyond the window.
    Certified,
    /// The plateau was only observed on the scanned window.
    Empirical,
}

impl CertificateStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateStatus::Certified => "CERTIFIED",
            CertificateStatus::Empirical => "EMPIRICAL",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LengthBound {
    pub bound: u64,
    pub status: CertificateStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    /// SHA-256 of the canonical presentation text, hex encoded.
    pub input_hash: String,
    pub prime: u64,
    pub d: usize,
    pub rank: usize,
    pub n_lo: u32,
    pub n_hi: u32,
    pub levels: Vec<LevelEntry>,
    pub detected_n0: Option<u32>,
    pub certified_n0: Option<u32>,
    /// Why the certificate is absent, when it is.
    pub certificate_error: Option<Error>,
    pub tower_dimension: Option<usize>,
    pub length_bound: Option<LengthBound>,
    /// Why no bound was emitted, when none was.
    pub length_bound_error: Option<Error>,
}

/// Hex SHA-256 of the canonical presentation.
pub fn input_hash(pres: &ModulePresentation) -> String {
    let digest = Sha256::digest(pres.canonical_text().as_bytes());
    let mut out = String::with_capacity(64);
    for b in digest.iter() {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// Checks `level ≤ n_lo ≤ n_hi ≤ 64`.
pub fn check_window(pres: &ModulePresentation, n_lo: u32, n_hi: u32) -> Result<()> {
    if n_lo > n_hi || n_hi > MAX_LEVEL {
        return Err(Error::InvalidInput(alloc::format!(
            "scan window {n_lo}..{n_hi} must satisfy lo <= hi <= {MAX_LEVEL}"
        )));
    }
    if n_lo < pres.level() {
        return Err(Error::InvalidInput(alloc::format!(
            "scan window starts below the presentation level {}",
            pres.level()
        )));
    }
    Ok(())
}

/// Runs the pipeline at one level, recording failures instead of aborting.
pub fn level_entry(pres: &ModulePresentation, n: u32, limits: &Limits) -> LevelEntry {
    let outcome = match char_data(pres, n, limits) {
        Ok(c) => LevelOutcome::Char(c),
        Err(Error::DegenerateLattice { .. }) => LevelOutcome::Degenerate,
        Err(e) => LevelOutcome::Failed(e),
    };
    LevelEntry { level: n, outcome }
}

/// Level from which the characteristic data provably stop changing.
///
/// Let `e` be the `p`-torsion exponent of the order-graded module of the
/// saturated lattice and `n0 = level + e`. For `n ≥ n0` the order-graded
/// deformations are torsion free, so the slice at level `n + 1` is the
/// order-initial module of the slice at level `n`. That module is
/// homogeneous in the derivations, hence a fixed point: everything from
/// `n0 + 1` on agrees. Level `n0` itself joins the plateau when its data
/// equal those of `n0 + 1`.
pub fn certified_n0(pres: &ModulePresentation, limits: &Limits) -> Result<u32> {
    let init = integral_initial_module(pres, Grading::Order, limits)?;
    let base = pres.level() + torsion_exponent(&init, limits)?;
    if base >= MAX_LEVEL {
        return Ok(base);
    }
    let here = level_entry(pres, base, limits).outcome;
    let next = level_entry(pres, base + 1, limits).outcome;
    let joins = match (&here, &next) {
        (LevelOutcome::Char(a), LevelOutcome::Char(b)) => same_data(a, b),
        (LevelOutcome::Degenerate, LevelOutcome::Degenerate) => true,
        _ => false,
    };
    Ok(if joins { base } else { base + 1 })
}

fn same_data(a: &CharData, b: &CharData) -> bool {
    a.ideal == b.ideal
        && a.hilbert == b.hilbert
        && a.dimension == b.dimension
        && a.multiplicity == b.multiplicity
        && a.holonomic == b.holonomic
        && a.radical_verified == b.radical_verified
}

/// Least level from which all levels through the end of the window carry
/// identical characteristic data.
pub fn detect_plateau(levels: &[LevelEntry]) -> Option<u32> {
    let last = match levels.last()?.outcome {
        LevelOutcome::Char(ref c) => c,
        _ => return None,
    };
    let mut start = levels.last()?.level;
    for entry in levels.iter().rev().skip(1) {
        match &entry.outcome {
            LevelOutcome::Char(c) if same_data(c, last) => start = entry.level,
            _ => break,
        }
    }
    Some(start)
}

/// Maximum dimension over nondegenerate levels.
pub fn tower_dimension(report: &ScanReport) -> Result<usize> {
    tower_dim_of(&report.levels)
}

fn tower_dim_of(levels: &[LevelEntry]) -> Result<usize> {
    let mut best: Option<usize> = None;
    let mut any = false;
    for e in levels {
        if let LevelOutcome::Char(c) = &e.outcome {
            any = true;
            if let Some(k) = c.dimension {
                best = Some(best.map_or(k, |b| b.max(k)));
            }
        }
    }
    if !any {
        return Err(Error::AllLevelsDegenerate);
    }
    Ok(best.unwrap_or(0))
}

/// The finite-length bound from the plateau, with its certificate level.
pub fn length_bound(report: &ScanReport) -> Result<LengthBound> {
    let n0 = report.detected_n0.ok_or(Error::NoPlateau)?;
    let mut m = None;
    let mut verified = true;
    for e in report.levels.iter().filter(|e| e.level >= n0) {
        if let LevelOutcome::Char(c) = &e.outcome {
            if !c.holonomic || c.dimension.is_none() {
                return Err(Error::NotHolonomicAtSomeLevel { level: e.level });
            }
            verified &= c.radical_verified;
            m = Some(c.multiplicity);
        }
    }
    let bound = m.ok_or(Error::NoPlateau)?;
    let certified = match report.certified_n0 {
        Some(c) => c <= n0 && c <= report.n_hi && verified,
        None => false,
    };
    Ok(LengthBound {
        bound,
        status: if certified {
            CertificateStatus::Certified
        } else {
            CertificateStatus::Empirical
        },
    })
}

/// Builds a report from per-level entries computed elsewhere (possibly in
/// parallel); entries are sorted by level.
pub fn assemble(
    pres: &ModulePresentation,
    n_lo: u32,
    n_hi: u32,
    mut levels: Vec<LevelEntry>,
    certified: Result<u32>,
) -> ScanReport {
    levels.sort_by_key(|e| e.level);
    let detected_n0 = detect_plateau(&levels);
    let (certified_n0, certificate_error) = match certified {
        Ok(c) => (Some(c), None),
        Err(e) => (None, Some(e)),
    };
    let mut report = ScanReport {
        input_hash: input_hash(pres),
        prime: pres.prime(),
        d: pres.d(),
        rank: pres.rank(),
        n_lo,
        n_hi,
        tower_dimension: tower_dim_of(&levels).ok(),
        levels,
        detected_n0,
        certified_n0,
        certificate_error,
        length_bound: None,
        length_bound_error: None,
    };
    match length_bound(&report) {
        Ok(b) => report.length_bound = Some(b),
        Err(e) => report.length_bound_error = Some(e),
    }
    report
}

/// Scans levels `n_lo..=n_hi` sequentially.
pub fn scan(pres: &ModulePresentation, n_lo: u32, n_hi: u32, limits: &Limits) -> Result<ScanReport> {
    check_window(pres, n_lo, n_hi)?;
    let levels = (n_lo..=n_hi).map(|n| level_entry(pres, n, limits)).collect();
    Ok(assemble(pres, n_lo, n_hi, levels, certified_n0(pres, limits)))
}
