//! Problem files: JSON documents holding the algebra, the relations as
//! expression strings and run options.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use weylstab_core::charvar::ModulePresentation;
use weylstab_core::coeff::{PrimeField, RationalField};
use weylstab_core::cpoly::{ideal_gb, Poly};
use weylstab_core::gb::Limits;
use weylstab_core::weyl::{WeylAlgebra, WeylElement};

use crate::parse::{parse_expression, parse_symbol_poly, ParseError};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    /// Relations over `Q`, read as a lattice over `Z_(p)`.
    #[default]
    Local,
    /// Relations already living in the slice over `F_p`.
    Residue,
}

/// A relation is one expression (rank 1) or one expression per component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Relation {
    Single(String),
    Vector(Vec<String>),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub scan: Option<[u32; 2]>,
    #[serde(default)]
    pub max_degree: Option<u64>,
    #[serde(default)]
    pub max_gb_steps: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub prime: u64,
    pub d: usize,
    #[serde(default)]
    pub coefficients: Coefficients,
    /// Ambient level of the relations; `dk` means `∂_k` at this level.
    #[serde(default)]
    pub level: u32,
    #[serde(default = "one")]
    pub rank: usize,
    #[serde(default)]
    pub relations: Vec<Relation>,
    /// An ideal of `F_p[X, Y]` for the ideal-level commands.
    #[serde(default)]
    pub ideal: Option<Vec<String>>,
    #[serde(default)]
    pub options: Options,
}

fn one() -> usize {
    1
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Problem(e.to_string()))
    }

    pub fn limits(&self) -> Limits {
        let base = Limits::default();
        Limits {
            max_gb_steps: self.options.max_gb_steps.unwrap_or(base.max_gb_steps),
            max_degree: self.options.max_degree.unwrap_or(base.max_degree),
        }
    }

    pub fn algebra(&self) -> Result<WeylAlgebra<RationalField>, CliError> {
        if self.d == 0 {
            return Err(CliError::Problem("d must be at least 1".into()));
        }
        Ok(WeylAlgebra::local(self.d, self.level, self.prime)?)
    }

    fn components(&self, r: &Relation) -> Result<Vec<String>, CliError> {
        let v = match r {
            Relation::Single(s) => vec![s.clone()],
            Relation::Vector(v) => v.clone(),
        };
        if v.len() != self.rank {
            return Err(CliError::Problem(format!(
                "relation has {} components but the rank is {}",
                v.len(),
                self.rank
            )));
        }
        Ok(v)
    }

    /// Parsed relations, one vector per relation.
    pub fn parsed_relations(&self) -> Result<Vec<Vec<WeylElement<RationalField>>>, CliError> {
        let alg = self.algebra()?;
        let mut out = Vec::with_capacity(self.relations.len());
        for r in &self.relations {
            let v = self
                .components(r)?
                .iter()
                .map(|s| parse_expression(&alg, s))
                .collect::<Result<Vec<_>, ParseError>>()?;
            out.push(v);
        }
        Ok(out)
    }

    /// The module `A^r / N` over the local field.
    pub fn presentation(&self) -> Result<ModulePresentation, CliError> {
        let rels = self.parsed_relations()?;
        Ok(ModulePresentation::new(self.algebra()?, self.rank, rels)?)
    }

    pub fn field(&self) -> Result<PrimeField, CliError> {
        Ok(PrimeField::new(self.prime)?)
    }

    pub fn parsed_ideal(&self) -> Result<Option<Vec<Poly<PrimeField>>>, CliError> {
        let Some(gens) = &self.ideal else {
            return Ok(None);
        };
        let ring = self.field()?;
        let polys = gens
            .iter()
            .map(|s| parse_symbol_poly(ring, self.d, s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(polys))
    }

    /// Order-independent text identifying the mathematical problem.
    pub fn canonical_text(&self) -> Result<String, CliError> {
        let mode = match self.coefficients {
            Coefficients::Local => "local",
            Coefficients::Residue => "residue",
        };
        let mut s = format!(
            "prime={}\nd={}\ncoefficients={mode}\nlevel={}\nrank={}\n",
            self.prime, self.d, self.level, self.rank
        );
        s.push_str("relations=");
        s.push_str(&self.presentation()?.canonical_text());
        s.push('\n');
        if let Some(ideal) = self.parsed_ideal()? {
            let ring = self.field()?;
            let gb = ideal_gb(&ring, 2 * self.d, &ideal, &self.limits())?;
            let mut parts: Vec<String> = gb.polys().iter().map(|f| f.normalized().to_string()).collect();
            parts.sort();
            s.push_str(&format!("ideal=({})\n", parts.join(", ")));
        }
        Ok(s)
    }

    pub fn hash(&self) -> Result<String, CliError> {
        Ok(hex(&Sha256::digest(self.canonical_text()?.as_bytes())))
    }

    /// Presentation of the slice data when the relations are given over `F_p`:
    /// the relations must be integral and are used without saturation.
    pub fn residue_relations(&self) -> Result<Vec<Vec<WeylElement<PrimeField>>>, CliError> {
        let alg = WeylAlgebra::residue(self.d, self.level, self.prime)?;
        let mut out = Vec::new();
        for r in self.presentation()?.relations() {
            let v = r
                .iter()
                .map(|e| e.reduce_mod_p().map(|x| x.change_algebra(&alg)))
                .collect::<Result<Vec<_>, _>>()?;
            if v.iter().any(|e| !e.is_zero()) {
                out.push(v);
            }
        }
        Ok(out)
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
