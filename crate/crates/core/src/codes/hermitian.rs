//! One-point Hermitian codes on the curve y^q + y = x^{q+1} over GF(q^2).

use super::{LabeledCode, Labeling};
use crate::error::{Error, Result};
use crate::galois::{prime_power, Fe, Field};
use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct HermitianCode {
    pub q: u32,
    pub field: Field,
    pub points: Vec<(Fe, Fe)>,
    /// Exponents (a, b) of the monomials x^a y^b spanning the code, by increasing pole order.
    pub monomials: Vec<(u32, u32)>,
    pub code: LabeledCode,
}

impl HermitianCode {
    pub fn designed_distance(&self) -> Option<usize> {
        hermitian_distance(self.q, self.code.dimension())
    }
}

/// `q^3 − k − q(q−1)/2 + 1`, when that is at least 1.
pub fn hermitian_distance(q: u32, k: usize) -> Option<usize> {
    let q = q as i64;
    let d = q.pow(3) - k as i64 - q * (q - 1) / 2 + 1;
    (d >= 1).then_some(d as usize)
}

fn curve_field(q: u32) -> Result<Field> {
    if prime_power(q as u64).is_none() {
        return Err(Error::ParameterOutOfRange(format!("q = {q} is not a prime power")));
    }
    Field::of_order(q as u64 * q as u64)
}

/// Affine points of the Hermitian curve, ordered by (x, y) in packed element order.
pub fn hermitian_points(q: u32) -> Result<(Field, Vec<(Fe, Fe)>)> {
    let f = curve_field(q)?;
    let mut pts = Vec::with_capacity((q as usize).pow(3));
    for x in f.elements() {
        let rhs = f.pow(x, q as u64 + 1);
        for y in f.elements() {
            if f.add(f.pow(y, q as u64), y) == rhs {
                pts.push((x, y));
            }
        }
    }
    Ok((f, pts))
}

/// The q^3 monomials x^a y^b with a < q^2, b < q, sorted by pole order aq + b(q+1).
pub fn pole_order_basis(q: u32) -> Vec<(u32, u32)> {
    let mut m: Vec<(u32, u32)> = (0..q * q).flat_map(|a| (0..q).map(move |b| (a, b))).collect();
    m.sort_by_key(|&(a, b)| a * q + b * (q + 1));
    m
}

pub fn hermitian_build(q: u32, k: usize) -> Result<HermitianCode> {
    let n = (q as usize).pow(3);
    if k == 0 || k > n {
        return Err(Error::ParameterOutOfRange(format!(
            "Hermitian code dimension k = {k} must lie in [1, {n}] for q = {q}"
        )));
    }
    let (f, points) = hermitian_points(q)?;
    let monomials: Vec<(u32, u32)> = pole_order_basis(q).into_iter().take(k).collect();
    let mut g = Matrix::zeros(&f, k, n);
    for (row, &(a, b)) in monomials.iter().enumerate() {
        for (col, &(x, y)) in points.iter().enumerate() {
            g.set(row, col, f.mul(f.pow(x, a as u64), f.pow(y, b as u64)));
        }
    }
    let code = LabeledCode::new(g, Labeling::identity(n))?;
    Ok(HermitianCode { q, field: f, points, monomials, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_counts() {
        assert_eq!(hermitian_points(2).unwrap().1.len(), 8);
        assert_eq!(hermitian_points(3).unwrap().1.len(), 27);
    }

    #[test]
    fn q2_fibre_over_zero() {
        let (_, pts) = hermitian_points(2).unwrap();
        let ys: Vec<Fe> = pts.iter().filter(|p| p.0 == Fe::ZERO).map(|p| p.1).collect();
        assert_eq!(ys, vec![Fe(0), Fe(1)]);
    }

    #[test]
    fn q2_distances() {
        let c = hermitian_build(2, 5).unwrap();
        assert_eq!(c.code.min_distance().unwrap(), 3);
        assert_eq!(c.designed_distance(), Some(3));
        let c = hermitian_build(2, 6).unwrap();
        assert_eq!(c.code.min_distance().unwrap(), 2);
        let c = hermitian_build(2, 8).unwrap();
        assert_eq!(c.code.min_distance().unwrap(), 1);
    }

    #[test]
    fn out_of_range_dimension() {
        assert!(matches!(hermitian_build(2, 99), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(hermitian_build(2, 0), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(hermitian_build(6, 3), Err(Error::ParameterOutOfRange(_))));
    }
}
