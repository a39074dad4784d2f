//! Linear HSS from labelweight codes: CNF sharing, Eval synthesis, reconstruction
//! and the exhaustive checks around them.
//!
//! Servers, instances and variables are 0-based in the API. A size-t subset of
//! servers is a `u64` bitmask, which caps s at 64.

mod privacy;
mod scheme;
pub mod serialize;
mod verify;

pub use privacy::{audit_sharing, privacy_audit, PrivacyComparison, PrivacyReport};
pub use scheme::{
    run_end_to_end, synthesize_eval, synthesize_eval_with, EndToEnd, HssScheme, LabelweightCheck,
    LabelweightStatus,
};
pub use verify::{check_mds_like, materialize_block_system, BlockSystem, MdsLikeReport};

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::galois::{Fe, Field};

/// Largest supported server count.
pub const MAX_SERVERS: usize = 64;

/// Scheme parameters: s servers, privacy t, degree d, ℓ instances of m variables each.
///
/// Instance i evaluates the product of its variables `targets[0], ..., targets[d-1]`
/// (repetition allowed); the default targets are `0..d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HssParams {
    pub s: usize,
    pub t: usize,
    pub d: usize,
    pub ell: usize,
    pub m: usize,
    pub targets: Vec<usize>,
}

impl HssParams {
    pub fn new(s: usize, t: usize, d: usize, ell: usize, m: usize) -> Result<HssParams> {
        HssParams::with_targets(s, t, d, ell, m, (0..d).collect())
    }

    pub fn with_targets(
        s: usize,
        t: usize,
        d: usize,
        ell: usize,
        m: usize,
        targets: Vec<usize>,
    ) -> Result<HssParams> {
        if t == 0 || d == 0 {
            return Err(Error::Degenerate(format!("need t ≥ 1 and d ≥ 1, got t={t}, d={d}")));
        }
        if s <= d * t {
            return Err(Error::ParameterOutOfRange(format!("need s > dt, got s={s}, dt={}", d * t)));
        }
        if s > MAX_SERVERS {
            return Err(Error::ParameterOutOfRange(format!("at most {MAX_SERVERS} servers, got {s}")));
        }
        if ell == 0 {
            return Err(Error::ParameterOutOfRange("need ℓ ≥ 1".into()));
        }
        if m < d {
            return Err(Error::ParameterOutOfRange(format!("need m ≥ d, got m={m}, d={d}")));
        }
        if targets.len() != d {
            return Err(Error::DimensionMismatch { expected: d, actual: targets.len() });
        }
        if let Some(&bad) = targets.iter().find(|&&k| k >= m) {
            return Err(Error::ParameterOutOfRange(format!("target variable {} exceeds m = {m}", bad + 1)));
        }
        Ok(HssParams { s, t, d, ell, m, targets })
    }

    pub fn dt(&self) -> usize {
        self.d * self.t
    }

    /// Secrets are numbered instance-major: secret (i, k) has index `i·m + k`.
    pub fn secret_index(&self, i: usize, k: usize) -> usize {
        i * self.m + k
    }

    pub fn secret_count(&self) -> usize {
        self.ell * self.m
    }
}

pub(crate) fn full_mask(s: usize) -> u64 {
    if s == 64 {
        u64::MAX
    } else {
        (1u64 << s) - 1
    }
}

/// The size-t subsets of [s] in lexicographic order of their sorted element tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsets {
    s: usize,
    t: usize,
    masks: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl Subsets {
    pub fn new(s: usize, t: usize) -> Result<Subsets> {
        if t > s || s > MAX_SERVERS {
            return Err(Error::ParameterOutOfRange(format!("no size-{t} subsets of [{s}] fit a mask")));
        }
        let mut masks = Vec::new();
        let mut c: Vec<usize> = (0..t).collect();
        loop {
            masks.push(c.iter().fold(0u64, |m, &i| m | 1 << i));
            let Some(i) = (0..t).rev().find(|&i| c[i] < s - t + i) else {
                break;
            };
            c[i] += 1;
            for j in i + 1..t {
                c[j] = c[j - 1] + 1;
            }
        }
        let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(Subsets { s, t, masks, index })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, idx: usize) -> u64 {
        self.masks[idx]
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn position(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    /// Indices of the subsets not containing server `j`, which is what server j holds.
    pub fn held_by(&self, j: usize) -> Vec<usize> {
        (0..self.masks.len()).filter(|&i| self.masks[i] & (1 << j) == 0).collect()
    }
}

pub(crate) fn mask_members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask & (1 << i) != 0).collect()
}

/// CNF shares of one secret: `values[i]` is y_T for the i-th size-t subset T.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfShares {
    pub values: Vec<Fe>,
}

impl CnfShares {
    pub fn secret(&self, field: &Field) -> Fe {
        self.values.iter().fold(Fe::ZERO, |acc, &v| field.add(acc, v))
    }
}

/// Shares `x` using explicit randomness for every y_T except the last, which is fixed
/// so that the y_T sum to `x`.
pub fn cnf_share_from(field: &Field, x: Fe, subsets: &Subsets, randomness: &[Fe]) -> Result<CnfShares> {
    let count = subsets.len();
    if randomness.len() + 1 != count {
        return Err(Error::DimensionMismatch { expected: count - 1, actual: randomness.len() });
    }
    let partial = randomness.iter().fold(Fe::ZERO, |acc, &v| field.add(acc, v));
    let mut values = randomness.to_vec();
    values.push(field.sub(x, partial));
    Ok(CnfShares { values })
}

pub fn cnf_share<R: Rng + ?Sized>(field: &Field, x: Fe, subsets: &Subsets, rng: &mut R) -> CnfShares {
    let randomness: Vec<Fe> =
        (0..subsets.len() - 1).map(|_| Fe(rng.random_range(0..field.order()))).collect();
    cnf_share_from(field, x, subsets, &randomness).expect("randomness length matches")
}

/// The CNF sharing of all ℓ·m secrets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedInputs {
    pub shares: Vec<CnfShares>,
}

impl SharedInputs {
    /// Shares secrets `secrets[i][k]` in instance-major order from one stream.
    pub fn share<R: Rng + ?Sized>(
        field: &Field,
        params: &HssParams,
        subsets: &Subsets,
        secrets: &[Vec<Fe>],
        rng: &mut R,
    ) -> Result<SharedInputs> {
        if secrets.len() != params.ell {
            return Err(Error::DimensionMismatch { expected: params.ell, actual: secrets.len() });
        }
        let mut shares = Vec::with_capacity(params.secret_count());
        for row in secrets {
            if row.len() != params.m {
                return Err(Error::DimensionMismatch { expected: params.m, actual: row.len() });
            }
            for &x in row {
                field.element(x.0)?;
                shares.push(cnf_share(field, x, subsets, rng));
            }
        }
        Ok(SharedInputs { shares })
    }

    pub fn view(&self, subsets: &Subsets, server: usize) -> ServerView {
        let held = subsets.held_by(server);
        let mut shares = Vec::with_capacity(self.shares.len());
        for secret in &self.shares {
            let mut row = vec![None; subsets.len()];
            for &h in &held {
                row[h] = Some(secret.values[h]);
            }
            shares.push(row);
        }
        ServerView { server, shares }
    }
}

/// What one server receives: for each secret, the y_T with the server outside T.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ServerView {
    pub server: usize,
    /// `shares[secret][subset]`, `None` where the server holds nothing.
    pub shares: Vec<Vec<Option<Fe>>>,
}

impl ServerView {
    /// The held values in canonical order (secret-major, then subset order), as sent on the wire.
    pub fn flatten(&self) -> Vec<Fe> {
        self.shares.iter().flat_map(|row| row.iter().flatten().copied()).collect()
    }

    /// Inverse of [`ServerView::flatten`].
    pub fn from_flat(
        params: &HssParams,
        subsets: &Subsets,
        server: usize,
        values: &[Fe],
    ) -> Result<ServerView> {
        let held = subsets.held_by(server);
        let expected = held.len() * params.secret_count();
        if values.len() != expected {
            return Err(Error::DimensionMismatch { expected, actual: values.len() });
        }
        let shares = values
            .chunks(held.len().max(1))
            .take(params.secret_count())
            .map(|chunk| {
                let mut row = vec![None; subsets.len()];
                for (&h, &v) in held.iter().zip(chunk) {
                    row[h] = Some(v);
                }
                row
            })
            .collect();
        Ok(ServerView { server, shares })
    }
}

/// Monomials y^{(i,k_1)}_{T_1} ··· y^{(i,k_d)}_{T_d}, numbered instance-major and then
/// lexicographically on (T_1, ..., T_d), T_1 most significant.
#[derive(Clone, Debug)]
pub struct MonomialSpace {
    pub ell: usize,
    pub d: usize,
    pub subsets: Subsets,
    per_instance: u64,
}

/// A decoded monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialId {
    pub instance: usize,
    /// Subset indices of T_1, ..., T_d.
    pub tuple: Vec<usize>,
}

impl MonomialSpace {
    pub fn new(params: &HssParams, budget: u128) -> Result<MonomialSpace> {
        let subsets = Subsets::new(params.s, params.t)?;
        let per_instance = (subsets.len() as u128).checked_pow(params.d as u32);
        let total = per_instance.and_then(|p| p.checked_mul(params.ell as u128));
        match total {
            Some(n) if n <= budget && n <= u32::MAX as u128 => {}
            _ => {
                return Err(Error::EnumerationBudgetExceeded {
                    what: "monomial enumeration",
                    needed: total.unwrap_or(u128::MAX),
                    budget,
                })
            }
        }
        Ok(MonomialSpace {
            ell: params.ell,
            d: params.d,
            subsets,
            per_instance: per_instance.unwrap() as u64,
        })
    }

    pub fn len(&self) -> usize {
        (self.per_instance * self.ell as u64) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn per_instance(&self) -> usize {
        self.per_instance as usize
    }

    pub fn decode(&self, idx: usize) -> MonomialId {
        let c = self.subsets.len();
        let instance = idx / self.per_instance as usize;
        let mut rest = idx % self.per_instance as usize;
        let mut tuple = vec![0; self.d];
        for slot in tuple.iter_mut().rev() {
            *slot = rest % c;
            rest /= c;
        }
        MonomialId { instance, tuple }
    }

    pub fn encode(&self, id: &MonomialId) -> Result<usize> {
        let c = self.subsets.len();
        if id.instance >= self.ell || id.tuple.len() != self.d || id.tuple.iter().any(|&x| x >= c) {
            return Err(Error::ParameterOutOfRange(format!("{id:?} is not a monomial of this space")));
        }
        let within = id.tuple.iter().fold(0usize, |acc, &x| acc * c + x);
        Ok(id.instance * self.per_instance as usize + within)
    }

    /// ∪ T_k as a server mask.
    pub fn union(&self, id: &MonomialId) -> u64 {
        id.tuple.iter().fold(0, |m, &x| m | self.subsets.mask(x))
    }

    /// Λ = [s] \ ∪ T_k, the servers that can compute the monomial.
    pub fn lambda(&self, id: &MonomialId) -> u64 {
        full_mask(self.subsets.s()) & !self.union(id)
    }

    pub fn is_local(&self, id: &MonomialId, server: usize) -> bool {
        self.union(id) & (1 << server) == 0
    }

    /// Indices of the monomials server `j` can compute.
    pub fn local_to(&self, server: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_local(&self.decode(i), server)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn params_validation() {
        assert!(HssParams::new(2, 1, 1, 1, 1).is_ok());
        assert!(matches!(HssParams::new(2, 1, 2, 1, 2), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(HssParams::new(3, 0, 1, 1, 1), Err(Error::Degenerate(_))));
        assert!(HssParams::new(5, 1, 2, 1, 1).is_err());
        assert!(HssParams::with_targets(5, 1, 2, 1, 2, vec![1, 1]).is_ok());
        assert!(HssParams::new(65, 1, 1, 1, 1).is_err());
    }

    #[test]
    fn subsets_are_lexicographic() {
        let s = Subsets::new(4, 2).unwrap();
        let tuples: Vec<Vec<usize>> = s.masks().iter().map(|&m| mask_members(m)).collect();
        assert_eq!(
            tuples,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(s.held_by(0), vec![3, 4, 5]);
        assert_eq!(Subsets::new(64, 1).unwrap().len(), 64);
    }

    #[test]
    fn cnf_two_servers() {
        let f = Field::prime(2).unwrap();
        let sub = Subsets::new(2, 1).unwrap();
        let sh = cnf_share_from(&f, Fe(1), &sub, &[Fe(0)]).unwrap();
        // y_{1} = 0, y_{2} = 1; server 1 holds y_{2}, server 2 holds y_{1}
        assert_eq!(sh.values, vec![Fe(0), Fe(1)]);
        let inputs = SharedInputs { shares: vec![sh] };
        assert_eq!(inputs.view(&sub, 0).flatten(), vec![Fe(1)]);
        assert_eq!(inputs.view(&sub, 1).flatten(), vec![Fe(0)]);
    }

    #[test]
    fn cnf_sums_and_coverage() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (s, t) in [(3, 1), (5, 2), (6, 3)] {
            let sub = Subsets::new(s, t).unwrap();
            let sh = cnf_share(&f, Fe(7), &sub, &mut rng);
            assert_eq!(sh.secret(&f), Fe(7));
            // any t+1 servers jointly hold every y_T
            let coalition = full_mask(t + 1);
            for &m in sub.masks() {
                assert_ne!(coalition & !m, 0);
            }
            for j in 0..s {
                assert_eq!(sub.held_by(j).len(), Subsets::new(s - 1, t).unwrap().len());
            }
        }
    }

    #[test]
    fn monomial_counts() {
        let p = HssParams::new(2, 1, 1, 1, 1).unwrap();
        let ms = MonomialSpace::new(&p, 1 << 22).unwrap();
        assert_eq!(ms.len(), 2);
        // server 1 computes y_{2}, server 2 computes y_{1}
        assert_eq!(ms.local_to(0), vec![1]);
        assert_eq!(ms.local_to(1), vec![0]);

        let p = HssParams::new(5, 1, 2, 2, 2).unwrap();
        let ms = MonomialSpace::new(&p, 1 << 22).unwrap();
        assert_eq!(ms.len(), 50);
        for j in 0..5 {
            assert_eq!(ms.local_to(j).len(), 32);
        }
        let id = MonomialId { instance: 0, tuple: vec![0, 1] };
        assert_eq!(mask_members(ms.lambda(&id)), vec![2, 3, 4]);
        assert_eq!(ms.decode(ms.encode(&id).unwrap()), id);
    }

    #[test]
    fn monomial_budget() {
        let p = HssParams::new(64, 2, 2, 40, 2).unwrap();
        assert!(matches!(
            MonomialSpace::new(&p, 1 << 22),
            Err(Error::EnumerationBudgetExceeded { .. })
        ));
    }

    #[test]
    fn view_flat_round_trip() {
        let f = Field::prime(5).unwrap();
        let p = HssParams::new(4, 1, 2, 2, 3).unwrap();
        let sub = Subsets::new(4, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let secrets = vec![vec![Fe(1), Fe(2), Fe(3)], vec![Fe(4), Fe(0), Fe(1)]];
        let inputs = SharedInputs::share(&f, &p, &sub, &secrets, &mut rng).unwrap();
        for j in 0..4 {
            let v = inputs.view(&sub, j);
            assert_eq!(ServerView::from_flat(&p, &sub, j, &v.flatten()).unwrap(), v);
        }
    }
}
