//! JSON job files.

use crate::error::{Error, Result};
use crate::field::{PrimeField, DEFAULT_PRIME};
use crate::pipeline::Options;
use crate::syzygy::SurfaceInput;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub a: usize,
    pub b: usize,
    #[serde(default = "default_prime")]
    pub prime: u64,
    pub generators: Vec<String>,
    #[serde(default)]
    pub options: Options,
}

fn default_prime() -> u64 {
    DEFAULT_PRIME
}

impl Job {
    pub fn input(&self) -> Result<SurfaceInput> {
        let f = PrimeField::new(self.prime)?;
        if self.generators.len() != 4 {
            return Err(Error::InvalidInput(format!("expected 4 generators, got {}", self.generators.len())));
        }
        SurfaceInput::parse(f, self.a, self.b, &self.generators)
    }

    pub fn from_input(input: &SurfaceInput, options: Options) -> Job {
        Job {
            a: input.a,
            b: input.b,
            prime: input.field.modulus(),
            generators: input.gens.iter().map(|g| g.to_st_uv_string(&input.field)).collect(),
            options,
        }
    }
}
