use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{is_prime, FieldDesc};

pub const DEFAULT_P: u64 = 3;
pub const DEFAULT_PREC: i64 = 24;
/// Truncation degree for series on `X_n` and in `B_Sen`.
pub const DEFAULT_DEGREE: usize = 64;
/// Number of stored moments of a distribution.
pub const DEFAULT_MOMENTS: usize = 64;
pub const DEFAULT_M_MAX: u32 = 3;

/// Effective parameters of a computation; echoed in every CLI envelope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub p: u64,
    #[serde(rename = "N")]
    pub prec: i64,
    #[serde(rename = "D")]
    pub degree: usize,
    #[serde(rename = "M")]
    pub moments: usize,
    pub gamma: String,
    pub m_max: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            p: DEFAULT_P,
            prec: DEFAULT_PREC,
            degree: DEFAULT_DEGREE,
            moments: DEFAULT_MOMENTS,
            gamma: "1+p".to_string(),
            m_max: DEFAULT_M_MAX,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        if self.p < 3 || !is_prime(self.p) {
            return Err(Error::InvalidField(format!("p = {} is not an odd prime", self.p)));
        }
        if self.prec < 1 || self.degree < 1 || self.moments < 1 || self.m_max < 1 {
            return Err(Error::InvalidField("N, D, M and m_max must be positive".into()));
        }
        Ok(())
    }

    pub fn field(&self, m: u32) -> Result<FieldDesc> {
        FieldDesc::new(self.p, m, self.prec)
    }
}
