//! Command dispatch: problem in, JSON document and exit code out.

use rayon::prelude::*;
use weylstab_core::charvar::{char_data, char_data_of_slice, slice, weyl_gb, CharData, SliceModule};
use weylstab_core::coeff::PrimeField;
use weylstab_core::cpoly::Poly;
use weylstab_core::hilbert::{dim_and_mult, leading_ideal};
use weylstab_core::stab::{assemble, certified_n0, check_window, level_entry, ScanReport, DEFAULT_WINDOW};
use weylstab_core::weyl::{Grading, WeylElement};
use weylstab_core::Error as CoreError;

use crate::problem::{Coefficients, ProblemFile};
use crate::report::*;
use crate::{CliError, EXIT_OK, EXIT_UNSUPPORTED_RADICAL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Nf,
    Gb,
    CharIdeal,
    Hilbert,
    Dim,
    Mult,
    Holonomic,
    Scan,
    LengthBound,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Nf => "nf",
            Command::Gb => "gb",
            Command::CharIdeal => "char-ideal",
            Command::Hilbert => "hilbert",
            Command::Dim => "dim",
            Command::Mult => "mult",
            Command::Holonomic => "holonomic",
            Command::Scan => "scan",
            Command::LengthBound => "length-bound",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Invocation {
    pub command: Command,
    pub problem: ProblemFile,
    /// Target level; defaults to the ambient level of the problem.
    pub level: Option<u32>,
    /// Scan window; defaults to the problem options, then to six levels
    /// starting at the ambient level.
    pub window: Option<(u32, u32)>,
}

impl Invocation {
    pub fn target_level(&self) -> u32 {
        self.level.unwrap_or(self.problem.level)
    }

    pub fn scan_window(&self) -> (u32, u32) {
        if let Some(w) = self.window {
            return w;
        }
        if let Some([a, b]) = self.problem.options.scan {
            return (a, b);
        }
        let base = self.problem.level;
        (base + DEFAULT_WINDOW.0, base + DEFAULT_WINDOW.1)
    }

    /// Everything besides the problem that influences the output.
    pub fn cache_args(&self) -> String {
        let (a, b) = self.scan_window();
        let limits = self.problem.limits();
        let mut s = format!(
            "command={}\nlevel={}\nwindow={a}..{b}\nmax_gb_steps={}\nmax_degree={}\n",
            self.command.name(),
            self.target_level(),
            limits.max_gb_steps,
            limits.max_degree
        );
        if self.command == Command::Nf {
            // nf reports one result per input, in input order
            s.push_str(&serde_json::to_string(&self.problem.relations).unwrap_or_default());
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub json: String,
    pub exit_code: i32,
}

/// Runs a command and renders its JSON document.
pub fn execute(inv: &Invocation) -> Outcome {
    match dispatch(inv) {
        Ok((report, code)) => Outcome {
            json: to_json(&report),
            exit_code: code,
        },
        Err(e) => error_outcome(inv.command, &e),
    }
}

pub fn error_outcome(command: Command, e: &CliError) -> Outcome {
    let code = e.exit_code();
    Outcome {
        json: to_json(&ErrorReport {
            command: command.name(),
            version: VERSION,
            error: ErrorJson {
                kind: e.kind(),
                exit_code: code,
                message: e.to_string(),
            },
        }),
        exit_code: code,
    }
}

fn dispatch(inv: &Invocation) -> Result<(Report, i32), CliError> {
    let p = &inv.problem;
    let input_hash = p.hash()?;
    let (body, code) = match inv.command {
        Command::Nf => (Body::Nf(nf(inv)?), EXIT_OK),
        Command::Gb => (Body::Gb(gb(inv)?), EXIT_OK),
        Command::CharIdeal => {
            let c = level_char_data(inv)?;
            let code = radical_code(c.radical_verified);
            (Body::Char(CharBody { char_data: (&c).into() }), code)
        }
        Command::Hilbert | Command::Dim | Command::Mult | Command::Holonomic => {
            let b = ideal_body(inv)?;
            let code = radical_code(b.radical_verified);
            (Body::Ideal(b), code)
        }
        Command::Scan => (Body::Scan((&scan(inv)?).into()), EXIT_OK),
        Command::LengthBound => {
            let r = scan(inv)?;
            (
                Body::LengthBound(LengthBoundBody {
                    window: [r.n_lo, r.n_hi],
                    detected_n0: r.detected_n0,
                    certified_n0: r.certified_n0,
                    length_bound: r.length_bound.map(|b| BoundJson {
                        bound: b.bound,
                        status: b.status.as_str(),
                    }),
                    error: r.length_bound_error.as_ref().map(|e| e.to_string()),
                }),
                EXIT_OK,
            )
        }
    };
    Ok((
        Report {
            command: inv.command.name(),
            version: VERSION,
            input_hash,
            prime: p.prime,
            d: p.d,
            rank: p.rank,
            body,
        },
        code,
    ))
}

fn radical_code(verified: bool) -> i32 {
    if verified {
        EXIT_OK
    } else {
        EXIT_UNSUPPORTED_RADICAL
    }
}

fn nf(inv: &Invocation) -> Result<NfBody, CliError> {
    let p = &inv.problem;
    let n = inv.target_level();
    let mut results = Vec::new();
    let raw = p.relations.iter().flat_map(|r| match r {
        crate::problem::Relation::Single(s) => vec![s.clone()],
        crate::problem::Relation::Vector(v) => v.clone(),
    });
    let alg = p.algebra()?;
    for text in raw {
        let e = crate::parse::parse_expression(&alg, &text)?;
        let (e, k) = if n == p.level { (e, 0) } else { e.rebase(n)? };
        let normal_form = match p.coefficients {
            Coefficients::Local => e.to_string(),
            Coefficients::Residue => e.reduce_mod_p()?.to_string(),
        };
        results.push(NfResult {
            input: text,
            normal_form,
            p_power: k,
        });
    }
    Ok(NfBody { level: n, results })
}

/// The slice at the target level, either computed from the lattice or,
/// for residue problems, taken as given.
fn level_slice(inv: &Invocation) -> Result<SliceModule, CliError> {
    let p = &inv.problem;
    let n = inv.target_level();
    let limits = p.limits();
    match p.coefficients {
        Coefficients::Local => Ok(slice(&p.presentation()?, n, &limits)?),
        Coefficients::Residue => {
            if n != p.level {
                return Err(CliError::Usage("residue problems live at their own level only".into()));
            }
            let alg = weylstab_core::weyl::WeylAlgebra::residue(p.d, n, p.prime)?;
            let rels = p.residue_relations()?;
            let gb = weyl_gb(&alg, p.rank, &rels, Grading::Bernstein, &limits)?;
            let whole = (0..p.rank).all(|i| gb.elements.iter().any(|g| g[0].0.pos == i && g[0].0.mono.is_one()));
            if whole {
                return Err(CoreError::DegenerateLattice { level: n }.into());
            }
            let relations = gb
                .elements
                .iter()
                .map(|v| {
                    (0..p.rank)
                        .map(|i| alg.from_terms(v.iter().filter(|(t, _)| t.pos == i).map(|(t, c)| (t.mono.clone(), *c))))
                        .collect()
                })
                .collect();
            Ok(SliceModule {
                level: n,
                algebra: alg,
                rank: p.rank,
                relations,
            })
        }
    }
}

fn vector_text(v: &[WeylElement<PrimeField>]) -> Vec<String> {
    v.iter().map(|e| e.to_string()).collect()
}

fn gb(inv: &Invocation) -> Result<GbBody, CliError> {
    let s = level_slice(inv)?;
    let limits = inv.problem.limits();
    let w = weyl_gb(&s.algebra, s.rank, &s.relations, Grading::Bernstein, &limits)?;
    let initial = w
        .initial
        .iter()
        .map(|v| v.iter().map(|f| f.to_string()).collect())
        .collect();
    Ok(GbBody {
        level: s.level,
        grading: "bernstein",
        basis: s.relations.iter().map(|v| vector_text(v)).collect(),
        initial,
    })
}

fn level_char_data(inv: &Invocation) -> Result<CharData, CliError> {
    let limits = inv.problem.limits();
    match inv.problem.coefficients {
        Coefficients::Local => Ok(char_data(&inv.problem.presentation()?, inv.target_level(), &limits)?),
        Coefficients::Residue => Ok(char_data_of_slice(&level_slice(inv)?, &limits)?),
    }
}

fn ideal_body(inv: &Invocation) -> Result<IdealBody, CliError> {
    let p = &inv.problem;
    let limits = p.limits();
    if let Some(ideal) = p.parsed_ideal()? {
        let ring = p.field()?;
        let nv = 2 * p.d;
        let lead = leading_ideal(&ring, nv, &ideal, &limits)?;
        let hilbert = lead.hilbert_polynomial()?;
        let (dimension, multiplicity) = dim_and_mult(&ring, nv, &ideal, &limits)?;
        let basis = weylstab_core::cpoly::ideal_gb(&ring, nv, &ideal, &limits)?.polys();
        return Ok(IdealBody {
            level: None,
            source: "ideal",
            ideal: basis.iter().map(|f: &Poly<PrimeField>| f.normalized().to_string()).collect(),
            hilbert: (&hilbert).into(),
            dimension,
            multiplicity,
            holonomic: dimension == Some(p.d) && multiplicity > 0,
            radical_verified: true,
        });
    }
    let c = level_char_data(inv)?;
    Ok(IdealBody {
        level: Some(c.level),
        source: "characteristic_ideal",
        ideal: c.ideal.iter().map(|f| f.to_string()).collect(),
        hilbert: (&c.hilbert).into(),
        dimension: c.dimension,
        multiplicity: c.multiplicity,
        holonomic: c.holonomic,
        radical_verified: c.radical_verified,
    })
}

/// Scan with the levels and the certificate computed in parallel.
pub fn scan(inv: &Invocation) -> Result<ScanReport, CliError> {
    let p = &inv.problem;
    if p.coefficients != Coefficients::Local {
        return Err(CliError::Usage("scan needs a lattice over the local field".into()));
    }
    let pres = p.presentation()?;
    let limits = p.limits();
    let (lo, hi) = inv.scan_window();
    check_window(&pres, lo, hi)?;
    let (levels, cert) = rayon::join(
        || (lo..=hi).into_par_iter().map(|n| level_entry(&pres, n, &limits)).collect::<Vec<_>>(),
        || certified_n0(&pres, &limits),
    );
    Ok(assemble(&pres, lo, hi, levels, cert))
}
