use crate::{Error, Result};

/// Interpretations and guesses are `u64` bitsets.
pub const HARD_MAX_ATOMS: usize = 63;

/// Size guards for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_atoms: usize,
    pub max_eliterals: usize,
    /// Ignore `max_atoms` / `max_eliterals`. [`HARD_MAX_ATOMS`] still applies.
    pub force: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_atoms: 20,
            max_eliterals: 12,
            force: false,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            force: true,
            ..Limits::default()
        }
    }

    pub fn check_atoms(&self, n: usize) -> Result<()> {
        check("atom universe", n, self.max_atoms, self.force)
    }

    pub fn check_eliterals(&self, n: usize) -> Result<()> {
        check("epistemic literal domain", n, self.max_eliterals, self.force)
    }
}

fn check(what: &'static str, size: usize, limit: usize, force: bool) -> Result<()> {
    if size > HARD_MAX_ATOMS || (!force && size > limit) {
        return Err(Error::GuardExceeded {
            what,
            size,
            limit: if size > HARD_MAX_ATOMS {
                HARD_MAX_ATOMS
            } else {
                limit
            },
            estimate: format!("2^{size}"),
        });
    }
    Ok(())
}
