//! Reed-Solomon codes, the baseline evaluation code.

use super::{LabeledCode, Labeling};
use crate::error::{Error, Result};
use crate::galois::{Fe, Field};
use crate::matrix::Matrix;

/// Evaluations of 1, x, ..., x^{k-1} at the first n field elements.
pub fn rs_build(q: u32, n: usize, k: usize) -> Result<LabeledCode> {
    let f = Field::of_order(q as u64)?;
    if k == 0 || k > n || n > q as usize {
        return Err(Error::ParameterOutOfRange(format!(
            "Reed-Solomon needs 1 ≤ k ≤ n ≤ q, got k={k}, n={n}, q={q}"
        )));
    }
    let mut g = Matrix::zeros(&f, k, n);
    for i in 0..k {
        for c in 0..n {
            g.set(i, c, f.pow(Fe(c as u32), i as u64));
        }
    }
    LabeledCode::new(g, Labeling::identity(n))
}
