//! Scenario files: a potential plus `key = value` run settings.
//!
//! ```text
//! piece [0, 1/2]: 3.3 + x^2/2 + sin(3*x)
//! piece [1/2, 1]: 3.5 - x
//! jump at 1/2 side right
//!
//! epsilon = 1
//! n = 10..200              # or: n = 10..3000 step 23   or: n = 5, 10, 20
//! checks = ratio, predict, fit
//! output = ff_half.csv
//! format = csv
//! ```

use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::potential::PiecewisePotential;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NSet {
    List(Vec<usize>),
    Range { min: usize, max: usize, stride: usize },
}

impl NSet {
    pub fn range(min: usize, max: usize, stride: usize) -> Result<Self> {
        let set = NSet::Range { min, max, stride };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            NSet::List(v) if v.is_empty() => Err(Error::InvalidArgument("empty n set".into())),
            NSet::List(v) if v.contains(&0) => {
                Err(Error::InvalidArgument("n must be >= 1".into()))
            }
            NSet::Range { min, max, stride } => {
                if *stride == 0 {
                    Err(Error::InvalidArgument("stride must be >= 1".into()))
                } else if *min == 0 {
                    Err(Error::InvalidArgument("n must be >= 1".into()))
                } else if min > max {
                    Err(Error::InvalidArgument("empty n range".into()))
                } else {
                    Ok(())
                }
            }
            NSet::List(_) => Ok(()),
        }
    }

    pub fn values(&self) -> Vec<usize> {
        match self {
            NSet::List(v) => v.clone(),
            NSet::Range { min, max, stride } => (*min..=*max).step_by(*stride).collect(),
        }
    }
}

impl FromStr for NSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse n set '{s}'"));
        let s = s.trim();
        let set = if let Some((lo, rest)) = s.split_once("..") {
            let (hi, stride) = match rest.split_once("step") {
                Some((hi, st)) => (hi, st.trim().parse().map_err(|_| bad())?),
                None => (rest, 1),
            };
            NSet::Range {
                min: lo.trim().parse().map_err(|_| bad())?,
                max: hi.trim().parse().map_err(|_| bad())?,
                stride,
            }
        } else {
            NSet::List(
                s.split(',')
                    .map(|t| t.trim().parse().map_err(|_| bad()))
                    .collect::<Result<_>>()?,
            )
        };
        set.validate()?;
        Ok(set)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    Ratio,
    Predict,
    Fit,
    Kms,
    EigsInvariance,
    Em,
    Ms,
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "ratio" => Check::Ratio,
            "predict" => Check::Predict,
            "fit" => Check::Fit,
            "kms" => Check::Kms,
            "eigs-invariance" => Check::EigsInvariance,
            "em" => Check::Em,
            "ms" => Check::Ms,
            other => return Err(Error::InvalidArgument(format!("unknown check '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidArgument(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub source: String,
    pub potential: PiecewisePotential,
    pub epsilon: f64,
    pub n_set: NSet,
    pub checks: Vec<Check>,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

const SETTING_KEYS: [&str; 5] = ["epsilon", "n", "checks", "output", "format"];

fn setting(line: &str) -> Option<(&str, &str)> {
    let (key, value) = line.split_once('=')?;
    let key = key.trim();
    SETTING_KEYS.contains(&key).then_some((key, value.trim()))
}

impl Scenario {
    /// The potential part of a scenario file, with setting lines blanked so
    /// line numbers still match the original.
    pub fn potential_text(text: &str) -> String {
        text.lines()
            .map(|raw| match setting(raw.split('#').next().unwrap_or("")) {
                Some(_) => "",
                None => raw,
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut potential_lines = Vec::new();
        let mut epsilon = 1.0;
        let mut n_set = None;
        let mut checks = vec![Check::Ratio, Check::Predict];
        let mut output = None;
        let mut format = OutputFormat::Csv;

        for (i, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("");
            match setting(content) {
                Some((key, value)) => {
                    let wrap = |e: Error| Error::Syntax {
                        line: i + 1,
                        column: 1,
                        message: e.to_string(),
                    };
                    match key {
                        "epsilon" => {
                            epsilon = crate::expr::parse_constant_at(value, i + 1, 1)?;
                        }
                        "n" => n_set = Some(value.parse::<NSet>().map_err(wrap)?),
                        "checks" => {
                            checks = value
                                .split(',')
                                .map(str::parse)
                                .collect::<Result<_>>()
                                .map_err(wrap)?;
                        }
                        "output" => output = Some(PathBuf::from(value)),
                        "format" => format = value.parse().map_err(wrap)?,
                        _ => unreachable!(),
                    }
                    // Keep line numbers aligned for potential syntax errors.
                    potential_lines.push("");
                }
                None => potential_lines.push(raw),
            }
        }
        let source = potential_lines.join("\n");
        let potential = PiecewisePotential::parse(&source)?;
        let n_set = n_set.ok_or_else(|| Error::InvalidArgument("scenario has no 'n = ...' line".into()))?;
        Ok(Self {
            source,
            potential,
            epsilon,
            n_set,
            checks,
            output,
            format,
        })
    }

    pub fn from_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn has(&self, check: Check) -> bool {
        self.checks.contains(&check)
    }
}
