//! Degree-by-degree verification of the structural statements about `R`, `S` and `I`.
//!
//! Each check produces a [`CheckReport`] with one [`DegreeResult`] per degree;
//! failures carry a witness. The statement that `RI³ ∩ S = I³` is open and is
//! reported with status `evidence`, never as pass or fail.

pub mod checks;
pub mod exterior;
mod family;
pub mod identities;
mod report;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;

pub use family::{DegreeSlice, GradedIdealFamily};
pub use report::{CheckReport, DegreeResult, Status};

use crate::error::{Error, Result};
use crate::presentation::{verify_presentation, Presentation};

/// Largest truncation the verifier accepts; graded pieces grow like `p(N)`.
pub const MAX_VERIFY_DEGREE: u32 = 20;

/// Highest power of `I` and `RI` any check needs.
const FAMILY_POWER: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Involution,
    FormalSeries,
    ThickLeibniz,
    PowerSums,
    StandardForm,
    Schur,
    SquareGrowth,
    QEqualsRi,
    Normality,
    Ses,
    Transversality1,
    Transversality2,
    ConjectureN3,
    Preimage1,
    Preimage2,
    Exterior,
    OmegaBasis,
    TopForm,
    DimensionOracle,
    Presentation,
}

impl Check {
    pub const ALL: [Check; 20] = [
        Check::Involution,
        Check::FormalSeries,
        Check::ThickLeibniz,
        Check::PowerSums,
        Check::StandardForm,
        Check::Schur,
        Check::SquareGrowth,
        Check::QEqualsRi,
        Check::Normality,
        Check::Ses,
        Check::Transversality1,
        Check::Transversality2,
        Check::ConjectureN3,
        Check::Preimage1,
        Check::Preimage2,
        Check::Exterior,
        Check::OmegaBasis,
        Check::TopForm,
        Check::DimensionOracle,
        Check::Presentation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Involution => "involution",
            Check::FormalSeries => "formal-series",
            Check::ThickLeibniz => "thick-leibniz",
            Check::PowerSums => "power-sums",
            Check::StandardForm => "standard-form",
            Check::Schur => "schur",
            Check::SquareGrowth => "square-growth",
            Check::QEqualsRi => "q-equals-ri",
            Check::Normality => "normality",
            Check::Ses => "ses",
            Check::Transversality1 => "transversality-1",
            Check::Transversality2 => "transversality-2",
            Check::ConjectureN3 => "conjecture-n3",
            Check::Preimage1 => "preimage-1",
            Check::Preimage2 => "preimage-2",
            Check::Exterior => "exterior",
            Check::OmegaBasis => "omega-basis",
            Check::TopForm => "top-form",
            Check::DimensionOracle => "dimension-oracle",
            Check::Presentation => "presentation",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown check {s:?}; expected one of: all, {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_degree: u32,
    pub presentation_degree: u32,
    pub conjecture_degree: u32,
}

impl VerifyConfig {
    /// Defaults for a truncation bound: presentation and conjecture checks up to `min(10, N)`.
    pub fn new(max_degree: u32) -> Self {
        VerifyConfig {
            max_degree,
            presentation_degree: max_degree.min(10),
            conjecture_degree: max_degree.min(10),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_degree > MAX_VERIFY_DEGREE {
            return Err(Error::ResourceLimit(format!(
                "verification supports max degree up to {MAX_VERIFY_DEGREE}, got {}",
                self.max_degree
            )));
        }
        if self.presentation_degree > self.max_degree {
            return Err(Error::InvalidArgument(format!(
                "presentation degree {} exceeds max degree {}",
                self.presentation_degree, self.max_degree
            )));
        }
        if self.conjecture_degree > self.max_degree {
            return Err(Error::InvalidArgument(format!(
                "conjecture degree {} exceeds max degree {}",
                self.conjecture_degree, self.max_degree
            )));
        }
        Ok(())
    }
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig::new(12)
    }
}

/// Runs checks, building the shared ideal family at most once.
pub struct Verifier {
    config: VerifyConfig,
    family: OnceLock<GradedIdealFamily>,
}

impl Verifier {
    pub fn new(config: VerifyConfig) -> Result<Self> {
        config.validate()?;
        Ok(Verifier {
            config,
            family: OnceLock::new(),
        })
    }

    pub fn config(&self) -> &VerifyConfig {
        &self.config
    }

    pub fn family(&self) -> &GradedIdealFamily {
        self.family
            .get_or_init(|| GradedIdealFamily::build(self.config.max_degree, FAMILY_POWER))
    }

    pub fn run_all(&self) -> Result<Vec<CheckReport>> {
        Check::ALL.iter().map(|&c| self.run(c)).collect()
    }

    pub fn run(&self, check: Check) -> Result<CheckReport> {
        let n = self.config.max_degree;
        let name = check.name();
        let per_degree = |f: &(dyn Fn(&GradedIdealFamily, u32) -> Result<DegreeResult> + Sync),
                          degrees: std::ops::RangeInclusive<u32>| {
            let fam = self.family();
            degrees
                .into_par_iter()
                .map(|d| f(fam, d))
                .collect::<Result<Vec<_>>>()
        };
        let results = match check {
            Check::Involution => identities::involution(n)?,
            Check::FormalSeries => identities::formal_series(n)?,
            Check::ThickLeibniz => identities::thick_leibniz(n)?,
            Check::PowerSums => identities::power_sum_identities(n)?,
            Check::StandardForm => identities::standard_forms(n)?,
            Check::Schur => identities::schur_facts(n)?,
            Check::SquareGrowth => identities::square_growth(n.min(10))?,
            Check::QEqualsRi => per_degree(&checks::q_equals_ri, 0..=n)?,
            Check::Normality => {
                let fam = self.family();
                (1..=n / 2)
                    .into_par_iter()
                    .map(|j| checks::normality(fam, j))
                    .collect::<Result<Vec<_>>>()?
            }
            Check::Ses => per_degree(&checks::ses, 0..=n)?,
            Check::Transversality1 => {
                per_degree(&|f, d| checks::transversality(f, 1, d, name), 0..=n)?
            }
            Check::Transversality2 => {
                per_degree(&|f, d| checks::transversality(f, 2, d, name), 0..=n)?
            }
            Check::ConjectureN3 => {
                let results = per_degree(
                    &|f, d| checks::transversality(f, 3, d, name),
                    0..=self.config.conjecture_degree,
                )?;
                return Ok(CheckReport::evidence(
                    name,
                    results,
                    "open statement: per-degree outcomes are evidence, not a proof",
                ));
            }
            Check::Preimage1 => per_degree(&|f, d| checks::preimage(f, 1, d, name), 0..=n)?,
            Check::Preimage2 => per_degree(&|f, d| checks::preimage(f, 2, d, name), 0..=n)?,
            Check::Exterior => per_degree(&checks::exterior, 0..=n)?,
            Check::OmegaBasis => {
                let fam = self.family();
                (0..=2usize)
                    .flat_map(|k| (0..=n).map(move |d| (k, d)))
                    .collect::<Vec<_>>()
                    .into_par_iter()
                    .map(|(k, d)| checks::omega_basis(fam, k, d))
                    .collect::<Result<Vec<_>>>()?
            }
            Check::TopForm => (1..=exterior::MAX_GENERATORS)
                .into_par_iter()
                .map(exterior::top_form_divisibility)
                .collect(),
            Check::DimensionOracle => per_degree(&checks::dimension_oracle, 0..=n)?,
            Check::Presentation => {
                let pres = Presentation::build(self.config.presentation_degree)?;
                verify_presentation(&pres, self.family())?
            }
        };
        Ok(CheckReport::from_results(name, results))
    }
}
