use std::collections::BTreeMap;

use super::{cnf_share_from, mask_members, Subsets};
use crate::error::{Error, Result};
use crate::galois::{Fe, Field};
use crate::limits;

/// Distribution comparison for one coalition and one pair of secrets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrivacyComparison {
    /// 0-based server indices.
    pub coalition: Vec<usize>,
    pub x: Fe,
    pub x_prime: Fe,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrivacyReport {
    pub s: usize,
    pub t: usize,
    pub q: u32,
    /// Randomness strings enumerated per secret.
    pub randomness_space: u128,
    pub comparisons: Vec<PrivacyComparison>,
}

impl PrivacyReport {
    pub fn all_equal(&self) -> bool {
        self.comparisons.iter().all(|c| c.equal)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PrivacyComparison> {
        self.comparisons.iter().filter(|c| !c.equal)
    }
}

/// Exhaustive check of CNF t-privacy over `field`.
pub fn privacy_audit(field: &Field, s: usize, t: usize) -> Result<PrivacyReport> {
    if t == 0 || t >= s {
        return Err(Error::ParameterOutOfRange(format!("need 1 ≤ t < s, got t={t}, s={s}")));
    }
    let subsets = Subsets::new(s, t)?;
    let held: Vec<Vec<usize>> = (0..s).map(|j| subsets.held_by(j)).collect();
    audit_sharing(field, s, t, subsets.len() - 1, |x, r| {
        let sh = cnf_share_from(field, x, &subsets, r).expect("randomness length matches");
        held.iter().map(|h| h.iter().map(|&i| sh.values[i]).collect()).collect()
    })
}

/// Exhaustive privacy check for an arbitrary sharing function.
///
/// `share(x, r)` returns every server's view for secret `x` and randomness `r`
/// (a vector of `randomness_len` field elements). For every size-t coalition and
/// every pair of secrets, the exact multisets of joint views are compared.
pub fn audit_sharing<F>(
    field: &Field,
    s: usize,
    t: usize,
    randomness_len: usize,
    share: F,
) -> Result<PrivacyReport>
where
    F: Fn(Fe, &[Fe]) -> Vec<Vec<Fe>>,
{
    let q = field.order();
    let budget = limits::budget(limits::PRIVACY_BUDGET);
    let space = (q as u128).checked_pow(randomness_len as u32);
    let needed = space.and_then(|v| v.checked_mul(q as u128));
    match needed {
        Some(n) if n <= budget => {}
        _ => {
            return Err(Error::EnumerationBudgetExceeded {
                what: "privacy audit randomness",
                needed: needed.unwrap_or(u128::MAX),
                budget,
            })
        }
    }
    let coalitions: Vec<Vec<usize>> =
        Subsets::new(s, t)?.masks().iter().map(|&m| mask_members(m)).collect();
    // dist[x][coalition]: joint view -> multiplicity
    let mut dist: Vec<Vec<BTreeMap<Vec<Fe>, u64>>> = vec![vec![BTreeMap::new(); coalitions.len()]; q as usize];
    let mut r = vec![Fe::ZERO; randomness_len];
    for x in field.elements() {
        r.iter_mut().for_each(|v| *v = Fe::ZERO);
        loop {
            let views = share(x, &r);
            for (ci, coalition) in coalitions.iter().enumerate() {
                let joint: Vec<Fe> = coalition.iter().flat_map(|&j| views[j].iter().copied()).collect();
                *dist[x.0 as usize][ci].entry(joint).or_insert(0) += 1;
            }
            let mut pos = 0;
            while pos < randomness_len {
                r[pos].0 += 1;
                if r[pos].0 < q {
                    break;
                }
                r[pos].0 = 0;
                pos += 1;
            }
            if pos == randomness_len {
                break;
            }
        }
    }
    let mut comparisons = Vec::new();
    for (ci, coalition) in coalitions.iter().enumerate() {
        for a in 0..q {
            for b in a + 1..q {
                comparisons.push(PrivacyComparison {
                    coalition: coalition.clone(),
                    x: Fe(a),
                    x_prime: Fe(b),
                    equal: dist[a as usize][ci] == dist[b as usize][ci],
                });
            }
        }
    }
    Ok(PrivacyReport { s, t, q, randomness_space: space.unwrap(), comparisons })
}
