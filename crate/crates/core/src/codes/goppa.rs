//! Binary Goppa codes Γ(V, g) over GF(2^u).

use num_bigint::BigUint;

use super::{LabeledCode, Labeling};
use crate::error::{Error, Result};
use crate::galois::{find_irreducible, Fe, Field, IrreducibleStrategy, Polynomial};
use crate::matrix::Matrix;

/// Which Goppa polynomial to use.
#[derive(Clone, Debug)]
pub enum GoppaPolynomial {
    /// Lexicographically smallest monic irreducible of degree r with no root in V.
    Auto,
    /// Like `Auto`, but drawn from a seeded random walk.
    Random(u64),
    Given(Polynomial),
}

/// The evaluation points V.
#[derive(Clone, Debug)]
pub enum SupportSet {
    /// All of GF(2^u), minus any root of g.
    AllOfField,
    Given(Vec<Fe>),
}

#[derive(Clone, Debug)]
pub struct GoppaCode {
    pub u: u32,
    pub r: usize,
    pub extension: Field,
    pub polynomial: Polynomial,
    pub support: Vec<Fe>,
    /// Binary expansion of the r×n parity-check matrix, (u·r)×n over GF(2).
    pub parity_check: Matrix,
    pub code: LabeledCode,
}

impl GoppaCode {
    /// The bound d ≥ r + 1 that holds for every Goppa polynomial of degree r.
    pub fn designed_distance(&self) -> usize {
        self.r + 1
    }

    /// The r×n parity-check matrix over GF(2^u), `H[j][i] = α_i^j / g(α_i)`.
    pub fn extension_parity_check(&self) -> Matrix {
        extension_parity_check(&self.extension, &self.polynomial, &self.support, self.r)
    }
}

fn extension_parity_check(ext: &Field, g: &Polynomial, support: &[Fe], r: usize) -> Matrix {
    let mut h = Matrix::zeros(ext, r, support.len());
    for (i, &a) in support.iter().enumerate() {
        let inv = ext.inv(g.eval(a)).expect("g has no root in the support");
        let mut pow = Fe::ONE;
        for j in 0..r {
            h.set(j, i, ext.mul(pow, inv));
            pow = ext.mul(pow, a);
        }
    }
    h
}

/// Whether `2r − 2 < (2^u − 1) / 2^{u/2}`, decided as `(2r−2)^2 · 2^u < (2^u − 1)^2` in integers.
pub fn goppa_condition(u: u32, r: u32) -> bool {
    let lhs = BigUint::from(2 * (r as u64).saturating_sub(1)).pow(2) << u as usize;
    let two_u = BigUint::from(1u32) << u as usize;
    let rhs = (two_u - BigUint::from(1u32)).pow(2);
    lhs < rhs
}

pub fn goppa_build(u: u32, r: usize, g: GoppaPolynomial, support: SupportSet) -> Result<GoppaCode> {
    if u == 0 || r == 0 {
        return Err(Error::ParameterOutOfRange("Goppa codes need u ≥ 1 and r ≥ 1".into()));
    }
    let ext = Field::binary(u)?;
    let explicit_support = match &support {
        SupportSet::AllOfField => None,
        SupportSet::Given(v) => {
            let mut sorted = v.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != v.len() {
                return Err(Error::ParameterOutOfRange("support points must be distinct".into()));
            }
            for a in v {
                ext.element(a.0)?;
            }
            Some(v.clone())
        }
    };
    let exclusion: &[Fe] = explicit_support.as_deref().unwrap_or(&[]);
    let poly = match g {
        GoppaPolynomial::Auto => find_irreducible(&ext, r, IrreducibleStrategy::Lexicographic, exclusion)?,
        GoppaPolynomial::Random(seed) => {
            find_irreducible(&ext, r, IrreducibleStrategy::SeededRandom(seed), exclusion)?
        }
        GoppaPolynomial::Given(p) => {
            if p.field() != &ext {
                return Err(Error::FieldMismatch);
            }
            if p.degree().finite() != Some(r) {
                return Err(Error::BadGoppaPolynomial(format!("{p} does not have degree {r}")));
            }
            if !p.is_monic() {
                return Err(Error::BadGoppaPolynomial(format!("{p} is not monic")));
            }
            if !p.is_irreducible() {
                return Err(Error::BadGoppaPolynomial(format!("{p} is reducible")));
            }
            p
        }
    };
    let support = match explicit_support {
        Some(v) => {
            if let Some(root) = poly.roots_in(&v).first() {
                return Err(Error::BadGoppaPolynomial(format!("{poly} vanishes at support point {root}")));
            }
            v
        }
        None => ext.elements().filter(|&a| !poly.eval(a).is_zero()).collect(),
    };
    if support.is_empty() {
        return Err(Error::Degenerate("empty support".into()));
    }
    let n = support.len();
    let h = extension_parity_check(&ext, &poly, &support, r);
    let f2 = Field::prime(2)?;
    let mut bits = Matrix::zeros(&f2, u as usize * r, n);
    for j in 0..r {
        for i in 0..n {
            let v = h.get(j, i).0;
            for b in 0..u as usize {
                bits.set(j * u as usize + b, i, Fe((v >> b) & 1));
            }
        }
    }
    let kernel = bits.kernel_basis();
    if kernel.is_empty() {
        return Err(Error::Degenerate(format!("Goppa code with u={u}, r={r} has dimension 0")));
    }
    let generator = Matrix::from_rows(&f2, kernel)?;
    let code = LabeledCode::new(generator, Labeling::identity(n))?;
    Ok(GoppaCode { u, r, extension: ext, polynomial: poly, support, parity_check: bits, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn condition_examples() {
        assert!(goppa_condition(4, 2));
        assert!(goppa_condition(6, 4));
        assert!(!goppa_condition(2, 4));
        assert!(goppa_condition(3, 2));
        assert!(goppa_condition(3, 1));
    }

    #[test]
    fn u4_r2_has_dimension_8() {
        let c = goppa_build(4, 2, GoppaPolynomial::Auto, SupportSet::AllOfField).unwrap();
        assert_eq!(c.code.n(), 16);
        assert_eq!(c.code.dimension(), 8);
        assert_eq!(c.parity_check.rows(), 8);
        assert!(c.code.min_distance().unwrap() >= 3);
    }

    #[test]
    fn degree_one_polynomial_drops_its_root() {
        let c = goppa_build(3, 1, GoppaPolynomial::Auto, SupportSet::AllOfField).unwrap();
        assert_eq!(c.polynomial.to_string(), "x");
        assert_eq!(c.code.n(), 7);
        assert!(!c.support.contains(&Fe::ZERO));
        assert!(c.code.dimension() >= 4);
        assert!(c.code.min_distance().unwrap() >= 2);
    }

    #[test]
    fn codewords_satisfy_the_parity_check() {
        let c = goppa_build(4, 2, GoppaPolynomial::Random(3), SupportSet::AllOfField).unwrap();
        let h = c.extension_parity_check();
        let ext = &c.extension;
        for r in 0..c.code.dimension() {
            let word = c.code.generator().row(r);
            for j in 0..h.rows() {
                let syndrome = (0..word.len())
                    .filter(|&i| word[i] == Fe::ONE)
                    .fold(Fe::ZERO, |acc, i| ext.add(acc, h.get(j, i)));
                assert!(syndrome.is_zero());
            }
        }
    }

    #[test]
    fn vanishing_polynomial_is_rejected() {
        let ext = Field::binary(3).unwrap();
        let x = Polynomial::new(&ext, vec![Fe(0), Fe(1)]);
        let all: Vec<Fe> = ext.elements().collect();
        let err = goppa_build(3, 1, GoppaPolynomial::Given(x.clone()), SupportSet::Given(all)).unwrap_err();
        assert!(matches!(err, Error::BadGoppaPolynomial(_)));
        let err = goppa_build(3, 2, GoppaPolynomial::Given(x), SupportSet::AllOfField).unwrap_err();
        assert!(matches!(err, Error::BadGoppaPolynomial(_)));
    }
}
