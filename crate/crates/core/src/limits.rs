use crate::error::{Error, Result};

/// Largest truth table built or parsed by default (2²⁰ entries).
pub const DEFAULT_MAX_TABLE_LEN: usize = 1 << 20;

/// Largest memo table for the optimal-tree oracle by default: 3¹², i.e.
/// n ≤ 12 for binary alphabets.
pub const DEFAULT_MAX_ORACLE_STATES: usize = 531_441;

/// Size limits. Exceeding one is a hard [`Error::Capacity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_table_len: usize,
    pub max_oracle_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_table_len: DEFAULT_MAX_TABLE_LEN,
            max_oracle_states: DEFAULT_MAX_ORACLE_STATES,
        }
    }
}

fn checked_power(base: usize, exp: usize) -> Option<usize> {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e))
}

impl Limits {
    /// `kⁿ`, or a capacity error.
    pub fn table_len(&self, arity: usize, alphabet: usize) -> Result<usize> {
        match checked_power(alphabet, arity) {
            Some(len) if len <= self.max_table_len => Ok(len),
            _ => Err(Error::Capacity {
                what: "truth table",
                needed: format!("{alphabet}^{arity} entries"),
                limit: self.max_table_len,
            }),
        }
    }

    /// `(k+1)ⁿ` restriction states, or a capacity error.
    pub fn oracle_states(&self, arity: usize, alphabet: usize) -> Result<usize> {
        match checked_power(alphabet + 1, arity) {
            Some(len) if len <= self.max_oracle_states => Ok(len),
            _ => Err(Error::Capacity {
                what: "optimal-tree oracle",
                needed: format!("{}^{arity} restriction states", alphabet + 1),
                limit: self.max_oracle_states,
            }),
        }
    }
}
