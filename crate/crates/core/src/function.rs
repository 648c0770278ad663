//! Explicit truth tables for functions `f : {0,…,k−1}ⁿ → Z`.

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A function given by its full table of values.
///
/// Inputs are vectors `x = (x₁,…,xₙ)` with `xⱼ ∈ {0,…,k−1}`. The table index of
/// `x` is `Σⱼ xⱼ·k^{n−j}`: coordinate 1 is the most significant digit. The
/// table stores indices into `labels`, the ordered output set `Z`.
///
/// For ±1-valued Boolean functions the convention is symbol 1 ↔ −1 and
/// symbol 0 ↔ +1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteFunction {
    arity: usize,
    alphabet: usize,
    labels: Vec<i64>,
    table: Vec<usize>,
}

impl FiniteFunction {
    pub fn new(arity: usize, alphabet: usize, labels: Vec<i64>, table: Vec<usize>) -> Result<Self> {
        Self::with_limits(arity, alphabet, labels, table, &Limits::default())
    }

    pub fn with_limits(
        arity: usize,
        alphabet: usize,
        labels: Vec<i64>,
        table: Vec<usize>,
        limits: &Limits,
    ) -> Result<Self> {
        if arity == 0 {
            return Err(Error::Shape("arity must be positive".into()));
        }
        if alphabet < 2 {
            return Err(Error::Shape(format!(
                "alphabet size must be at least 2, got {alphabet}"
            )));
        }
        let len = limits.table_len(arity, alphabet)?;
        if labels.is_empty() {
            return Err(Error::Shape("output label set is empty".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Shape(format!("duplicate output label {l}")));
            }
        }
        if table.len() != len {
            return Err(Error::Shape(format!(
                "table has {} entries, expected {alphabet}^{arity} = {len}",
                table.len()
            )));
        }
        if let Some((pos, bad)) = table.iter().enumerate().find(|(_, &v)| v >= labels.len()) {
            return Err(Error::Shape(format!(
                "table entry {pos} is label index {bad}, only {} labels",
                labels.len()
            )));
        }
        Ok(FiniteFunction {
            arity,
            alphabet,
            labels,
            table,
        })
    }

    /// Builds a table by calling `rule` on every input in index order. `rule`
    /// returns a label index.
    pub fn from_rule<F>(arity: usize, alphabet: usize, labels: Vec<i64>, limits: &Limits, mut rule: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> usize,
    {
        let len = limits.table_len(arity, alphabet)?;
        let mut x = vec![0; arity];
        let mut table = Vec::with_capacity(len);
        for idx in 0..len {
            decode_into(idx, alphabet, &mut x);
            table.push(rule(&x));
        }
        Self::with_limits(arity, alphabet, labels, table, limits)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// Label indices in table order.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn label_index(&self, label: i64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Index of `x` in the table, after checking its shape.
    pub fn index_of(&self, x: &[usize]) -> Result<usize> {
        if x.len() != self.arity {
            return Err(Error::Shape(format!(
                "input has length {}, expected {}",
                x.len(),
                self.arity
            )));
        }
        if let Some((j, s)) = x.iter().enumerate().find(|(_, &s)| s >= self.alphabet) {
            return Err(Error::Shape(format!(
                "symbol {s} at coordinate {} is outside alphabet of size {}",
                j + 1,
                self.alphabet
            )));
        }
        Ok(encode(x, self.alphabet))
    }

    /// `f(x)` as an output label.
    pub fn evaluate(&self, x: &[usize]) -> Result<i64> {
        let idx = self.index_of(x)?;
        Ok(self.labels[self.table[idx]])
    }

    /// Label index of the entry at table position `idx`.
    pub fn value_at(&self, idx: usize) -> usize {
        self.table[idx]
    }

    /// Table stride of coordinate `i` (0-based): `k^{n−1−i}`.
    pub fn stride(&self, i: usize) -> usize {
        self.alphabet.pow((self.arity - 1 - i) as u32)
    }

    /// Symbol at coordinate `i` (0-based) of the input with table index `idx`.
    pub fn symbol_at(&self, idx: usize, i: usize) -> usize {
        (idx / self.stride(i)) % self.alphabet
    }

    /// The table index obtained from `idx` by setting coordinate `i` to `a`.
    pub fn with_symbol(&self, idx: usize, i: usize, a: usize) -> usize {
        let stride = self.stride(i);
        let cur = (idx / stride) % self.alphabet;
        idx - cur * stride + a * stride
    }

    pub fn is_constant(&self) -> bool {
        self.table.windows(2).all(|w| w[0] == w[1])
    }

    pub(crate) fn same_shape(&self, other: &FiniteFunction) -> Result<()> {
        if self.arity != other.arity || self.alphabet != other.alphabet {
            return Err(Error::Shape(format!(
                "functions have shapes (n={}, k={}) and (n={}, k={})",
                self.arity, self.alphabet, other.arity, other.alphabet
            )));
        }
        Ok(())
    }
}

/// Table index of `x` under the most-significant-first convention.
pub fn encode(x: &[usize], alphabet: usize) -> usize {
    x.iter().fold(0, |acc, &s| acc * alphabet + s)
}

/// Inverse of [`encode`]; `x.len()` fixes the arity.
pub fn decode_into(mut idx: usize, alphabet: usize, x: &mut [usize]) {
    for slot in x.iter_mut().rev() {
        *slot = idx % alphabet;
        idx /= alphabet;
    }
}

pub fn decode(idx: usize, arity: usize, alphabet: usize) -> Vec<usize> {
    let mut x = vec![0; arity];
    decode_into(idx, alphabet, &mut x);
    x
}
