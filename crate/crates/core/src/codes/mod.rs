//! Linear codes with labelings, and the concrete Goppa, Hermitian and Reed-Solomon families.
//!
//! Labels and coordinates are 0-based in the API; the text format and the CLI
//! print them 1-based.

pub mod goppa;
pub mod hermitian;
pub mod io;
pub mod rs;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::galois::{Fe, Field};
use crate::limits;
use crate::matrix::Matrix;

/// A surjective map from code coordinates onto servers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling {
    map: Vec<usize>,
    s: usize,
}

impl Labeling {
    pub fn new(map: Vec<usize>, s: usize) -> Result<Labeling> {
        if s == 0 {
            return Err(Error::ParameterOutOfRange("a labeling needs at least one label".into()));
        }
        let mut seen = vec![false; s];
        for &l in &map {
            if l >= s {
                return Err(Error::ParameterOutOfRange(format!("label {} outside [1, {s}]", l + 1)));
            }
            seen[l] = true;
        }
        if let Some(missing) = seen.iter().position(|&b| !b) {
            return Err(Error::ParameterOutOfRange(format!(
                "labeling is not surjective: label {} is unused",
                missing + 1
            )));
        }
        Ok(Labeling { map, s })
    }

    /// From 1-based labels, as written in the paper's examples and the text format.
    pub fn from_one_based(labels: &[usize], s: usize) -> Result<Labeling> {
        let map = labels
            .iter()
            .map(|&l| {
                l.checked_sub(1)
                    .ok_or_else(|| Error::ParameterOutOfRange("labels start at 1".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Labeling::new(map, s)
    }

    pub fn identity(n: usize) -> Labeling {
        Labeling { map: (0..n).collect(), s: n }
    }

    /// `n = s·w` coordinates in consecutive blocks of `w`, coordinate x getting label ⌈x/w⌉.
    pub fn balanced(s: usize, w: usize) -> Result<Labeling> {
        if w == 0 {
            return Err(Error::ParameterOutOfRange("block width must be at least 1".into()));
        }
        Labeling::new((0..s * w).map(|x| x / w).collect(), s)
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    #[inline]
    pub fn label(&self, coord: usize) -> usize {
        self.map[coord]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Coordinates carrying label `j`, increasing.
    pub fn class(&self, j: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&c| self.map[c] == j).collect()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.s];
        for &l in &self.map {
            sizes[l] += 1;
        }
        sizes
    }

    pub fn is_identity(&self) -> bool {
        self.s == self.map.len() && self.map.iter().enumerate().all(|(i, &l)| i == l)
    }

    /// Number of distinct labels on the support of `word`.
    pub fn labelweight(&self, word: &[Fe]) -> Result<usize> {
        if word.len() != self.map.len() {
            return Err(Error::DimensionMismatch { expected: self.map.len(), actual: word.len() });
        }
        let mut hit = vec![false; self.s];
        for (c, v) in word.iter().enumerate() {
            if !v.is_zero() {
                hit[self.map[c]] = true;
            }
        }
        Ok(hit.iter().filter(|&&b| b).count())
    }
}

/// A linear code given by a full-row-rank generator matrix, plus a labeling of its coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledCode {
    generator: Matrix,
    labeling: Labeling,
}

impl LabeledCode {
    pub fn new(generator: Matrix, labeling: Labeling) -> Result<LabeledCode> {
        if labeling.n() != generator.cols() {
            return Err(Error::DimensionMismatch { expected: generator.cols(), actual: labeling.n() });
        }
        if generator.rows() == 0 {
            return Err(Error::Degenerate("a code needs dimension at least 1".into()));
        }
        let rank = generator.rank();
        if rank != generator.rows() {
            return Err(Error::Degenerate(format!(
                "generator has {} rows but rank {rank}",
                generator.rows()
            )));
        }
        Ok(LabeledCode { generator, labeling })
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn labeling(&self) -> &Labeling {
        &self.labeling
    }

    pub fn with_labeling(&self, labeling: Labeling) -> Result<LabeledCode> {
        LabeledCode::new(self.generator.clone(), labeling)
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    /// ℓ, the dimension.
    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn s(&self) -> usize {
        self.labeling.s()
    }

    pub fn rate(&self) -> Ratio<u64> {
        Ratio::new(self.dimension() as u64, self.n() as u64)
    }

    pub fn encode(&self, message: &[Fe]) -> Result<Vec<Fe>> {
        self.generator.vec_mul(message)
    }

    pub fn labelweight(&self, word: &[Fe]) -> Result<usize> {
        self.labeling.labelweight(word)
    }

    /// Minimum labelweight over all nonzero codewords, by exhaustive enumeration.
    pub fn min_labelweight(&self) -> Result<usize> {
        min_labelweight(&self.generator, &self.labeling, limits::budget(limits::LABELWEIGHT_BUDGET))
    }

    /// Minimum Hamming distance, i.e. the labelweight under the identity labeling.
    pub fn min_distance(&self) -> Result<usize> {
        min_labelweight(
            &self.generator,
            &Labeling::identity(self.n()),
            limits::budget(limits::LABELWEIGHT_BUDGET),
        )
    }
}

/// Minimum labelweight of `xG` over nonzero messages `x`.
///
/// `G` need not have full rank; a nontrivial left kernel gives 0. Messages are
/// walked with an odometer over GF(p) digits so that each step adds a small
/// number of scaled generator rows to the running codeword.
pub fn min_labelweight(generator: &Matrix, labeling: &Labeling, budget: u128) -> Result<usize> {
    let f = generator.field();
    if labeling.n() != generator.cols() {
        return Err(Error::DimensionMismatch { expected: generator.cols(), actual: labeling.n() });
    }
    let p = f.characteristic();
    let k = f.degree() as usize;
    let digits = generator.rows() * k;
    let needed = (f.order() as u128).checked_pow(generator.rows() as u32);
    match needed {
        Some(n) if n <= budget => {}
        _ => {
            return Err(Error::EnumerationBudgetExceeded {
                what: "labelweight enumeration",
                needed: needed.unwrap_or(u128::MAX),
                budget,
            })
        }
    }
    if digits == 0 {
        return Err(Error::Degenerate("code of dimension 0 has no nonzero codeword".into()));
    }
    // basis[row * k + b] = x^b * G_row, stored sparsely
    let mut basis: Vec<Vec<(usize, Fe)>> = Vec::with_capacity(digits);
    for r in 0..generator.rows() {
        let mut scale = Fe::ONE;
        for _ in 0..k {
            let entries = (0..generator.cols())
                .filter_map(|c| {
                    let v = f.mul(scale, generator.get(r, c));
                    (!v.is_zero()).then_some((c, v))
                })
                .collect();
            basis.push(entries);
            scale = Fe(scale.0 * p);
        }
    }
    let mut word = vec![Fe::ZERO; generator.cols()];
    let mut per_label = vec![0usize; labeling.s()];
    let mut touched = 0usize;
    let mut counter = vec![0u32; digits];
    let mut best = usize::MAX;
    loop {
        let mut j = 0;
        loop {
            if j == digits {
                return Ok(best);
            }
            for &(c, v) in &basis[j] {
                let old = word[c];
                let new = f.add(old, v);
                word[c] = new;
                let l = labeling.label(c);
                match (old.is_zero(), new.is_zero()) {
                    (true, false) => {
                        per_label[l] += 1;
                        if per_label[l] == 1 {
                            touched += 1;
                        }
                    }
                    (false, true) => {
                        per_label[l] -= 1;
                        if per_label[l] == 0 {
                            touched -= 1;
                        }
                    }
                    _ => {}
                }
            }
            counter[j] += 1;
            if counter[j] == p {
                counter[j] = 0;
                j += 1;
            } else {
                break;
            }
        }
        if touched < best {
            best = touched;
            if best == 0 {
                return Ok(0);
            }
        }
    }
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Exact count of words in GF(q)^{s·w} with labelweight at most `r` under the balanced labeling.
pub fn ball_volume(s: u64, w: u64, q: u64, r: u64) -> Result<BigUint> {
    if r > s {
        return Err(Error::ParameterOutOfRange(format!("radius {r} exceeds s = {s}")));
    }
    if q < 2 || w == 0 {
        return Err(Error::ParameterOutOfRange("need q ≥ 2 and w ≥ 1".into()));
    }
    let block = BigUint::from(q).pow(w as u32) - BigUint::one();
    Ok((0..=r).map(|i| binomial(s, i) * block.pow(i as u32)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeling_validation() {
        assert!(Labeling::new(vec![0, 0, 1], 2).is_ok());
        assert!(Labeling::new(vec![0, 0], 2).is_err());
        assert!(Labeling::new(vec![0, 2], 2).is_err());
        assert!(Labeling::from_one_based(&[0, 1], 2).is_err());
    }

    #[test]
    fn balanced_classes_have_width_w() {
        let l = Labeling::balanced(4, 3).unwrap();
        assert_eq!(l.class_sizes(), vec![3; 4]);
        assert_eq!(l.class(1), vec![3, 4, 5]);
    }

    #[test]
    fn single_codeword_labelweight() {
        let f = Field::prime(2).unwrap();
        let g = Matrix::from_values(&f, &[&[1, 1, 0, 0]]).unwrap();
        let code = LabeledCode::new(g, Labeling::from_one_based(&[1, 1, 2, 2], 2).unwrap()).unwrap();
        assert_eq!(code.min_labelweight().unwrap(), 1);
        assert_eq!(code.min_distance().unwrap(), 2);
    }

    #[test]
    fn rank_deficient_generator_reports_zero() {
        let f = Field::prime(3).unwrap();
        let g = Matrix::from_values(&f, &[&[1, 2, 0], &[2, 1, 0]]).unwrap();
        assert_eq!(min_labelweight(&g, &Labeling::identity(3), 1 << 10).unwrap(), 0);
        assert!(LabeledCode::new(g, Labeling::identity(3)).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::prime(2).unwrap();
        let g = Matrix::identity(&f, 12);
        let err = min_labelweight(&g, &Labeling::identity(12), 1 << 10).unwrap_err();
        assert!(matches!(err, Error::EnumerationBudgetExceeded { needed: 4096, .. }));
    }

    #[test]
    fn ball_volume_examples() {
        assert_eq!(ball_volume(5, 2, 3, 0).unwrap(), BigUint::one());
        assert_eq!(ball_volume(2, 1, 2, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(ball_volume(3, 2, 2, 3).unwrap(), BigUint::from(64u32));
        assert!(ball_volume(3, 2, 2, 4).is_err());
    }
}
