use super::{mask_members, HssScheme, Subsets};
use crate::codes::LabeledCode;
use crate::error::{Error, Result};
use crate::galois::Fe;
use crate::limits;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsLikeReport {
    pub checked: usize,
    /// Server sets Λ (0-based) whose restriction lost rank.
    pub failures: Vec<Vec<usize>>,
}

impl MdsLikeReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Rank of G(Λ) for every Λ with |Λ| = s − dt.
pub fn check_mds_like(code: &LabeledCode, dt: usize) -> Result<MdsLikeReport> {
    let s = code.s();
    if dt >= s {
        return Err(Error::ParameterOutOfRange(format!("need dt < s, got dt={dt}, s={s}")));
    }
    let budget = limits::budget(limits::DEFAULT_BUDGET);
    let count = binomial(s as u128, dt as u128);
    if count > budget {
        return Err(Error::EnumerationBudgetExceeded { what: "restriction rank check", needed: count, budget });
    }
    let mut failures = Vec::new();
    let lambdas = Subsets::new(s, s - dt)?;
    for &mask in lambdas.masks() {
        let labels = mask_members(mask);
        let sub = code.generator().restrict_columns(code.labeling(), &labels)?;
        if sub.rank() != code.dimension() {
            failures.push(labels);
        }
    }
    Ok(MdsLikeReport { checked: lambdas.len(), failures })
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// The linear system S·e = g that an Eval table must satisfy, written out in full.
///
/// Rows are indexed by (instance i, monomial m): the coefficient of m in output i.
/// Columns are indexed by (coordinate r, monomial m) for m computable by L(r).
/// `S[(i,m), (r,m')] = G[i][r]` if m = m', and `g[(i,m)] = 1` iff m belongs to instance i.
#[derive(Clone, Debug)]
pub struct BlockSystem {
    pub s_matrix: Matrix,
    pub g: Vec<Fe>,
    pub e: Vec<Fe>,
}

impl BlockSystem {
    pub fn satisfied(&self) -> Result<bool> {
        Ok(self.s_matrix.mul_vec(&self.e)? == self.g)
    }
}

pub fn materialize_block_system(scheme: &HssScheme) -> Result<BlockSystem> {
    let ms = &scheme.monomials;
    let code = &scheme.code;
    let ell = scheme.params.ell;
    let mut columns: Vec<(usize, usize)> = Vec::new();
    let local: Vec<Vec<usize>> = (0..scheme.params.s).map(|j| ms.local_to(j)).collect();
    for r in 0..code.n() {
        for &m in &local[code.labeling().label(r)] {
            columns.push((r, m));
        }
    }
    let rows = ell * ms.len();
    let cells = rows as u128 * columns.len() as u128;
    let budget = limits::budget(limits::DEFAULT_BUDGET) * 4;
    if cells > budget {
        return Err(Error::EnumerationBudgetExceeded { what: "block system cells", needed: cells, budget });
    }
    let f = scheme.field();
    let g_code = code.generator();
    let mut s_matrix = Matrix::zeros(f, rows, columns.len());
    let mut e = vec![Fe::ZERO; columns.len()];
    for (col, &(r, m)) in columns.iter().enumerate() {
        for i in 0..ell {
            s_matrix.set(i * ms.len() + m, col, g_code.get(i, r));
        }
        if let Ok(pos) = scheme.eval[r].binary_search_by_key(&(m as u32), |&(k, _)| k) {
            e[col] = scheme.eval[r][pos].1;
        }
    }
    let g = (0..rows)
        .map(|row| {
            let (i, m) = (row / ms.len(), row % ms.len());
            if ms.decode(m).instance == i {
                Fe::ONE
            } else {
                Fe::ZERO
            }
        })
        .collect();
    Ok(BlockSystem { s_matrix, g, e })
}
