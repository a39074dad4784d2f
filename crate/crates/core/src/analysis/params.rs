//! Closed-form rate and amortization of the baseline and of the code-based constructions.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub const SLACK: f64 = 1e-9;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SchemeKind {
    /// Reed-Solomon-based baseline.
    Fikw,
    Hermitian,
    /// Goppa construction with the real-valued u*.
    GoppaTable,
    /// Goppa construction with u = log2(s).
    GoppaTheorem,
    /// Random labelweight codes at w = log_q(s).
    GvExample,
}

/// One point of a parameter comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamRow {
    pub s: u64,
    pub kind: SchemeKind,
    pub rate: f64,
    /// Present when rate and amortization are exact integers/rationals.
    pub exact_rate: Option<Ratio<u64>>,
    pub amortization: f64,
}

impl ParamRow {
    /// Amortization as printed: the ceiling of the real value.
    pub fn printed_amortization(&self) -> u64 {
        (self.amortization - SLACK).ceil().max(0.0) as u64
    }

    /// Rate in hundredths as printed: the baseline truncates, the constructions round.
    pub fn printed_rate_hundredths(&self) -> u64 {
        match self.kind {
            SchemeKind::Fikw => truncate_hundredths(self.rate),
            _ => round_hundredths(self.rate),
        }
    }

    pub fn printed_rate(&self) -> String {
        let h = self.printed_rate_hundredths();
        format!("{}.{:02}", h / 100, h % 100)
    }
}

pub fn truncate_hundredths(x: f64) -> u64 {
    (x * 100.0 + SLACK).floor().max(0.0) as u64
}

/// Half away from zero.
pub fn round_hundredths(x: f64) -> u64 {
    (x * 100.0).round().max(0.0) as u64
}

/// Base of the logarithm in the baseline multiplier j.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum FikwBase {
    /// A fixed field size b: j = log_b(s) when integral, else its ceiling.
    Fixed(f64),
    /// b = s^{2/3}, the Hermitian comparison field, so j = 3/2.
    CurveField,
}

fn multiplier(s: u64, base: FikwBase) -> Result<f64> {
    match base {
        FikwBase::CurveField => Ok(1.5),
        FikwBase::Fixed(b) => {
            if b <= 1.0 {
                return Err(Error::ParameterOutOfRange(format!("log base {b} must exceed 1")));
            }
            let j = (s as f64).ln() / b.ln();
            if (j - j.round()).abs() < SLACK {
                Ok(j.round())
            } else {
                Ok(j.ceil())
            }
        }
    }
}

/// Baseline: rate 1 − dt/s, amortization (s − dt)·j.
pub fn fikw_params(s: u64, dt: u64, base: FikwBase) -> Result<ParamRow> {
    if s <= dt {
        return Err(Error::ParameterOutOfRange(format!("need s > dt, got s={s}, dt={dt}")));
    }
    let j = multiplier(s, base)?;
    Ok(ParamRow {
        s,
        kind: SchemeKind::Fikw,
        rate: 1.0 - dt as f64 / s as f64,
        exact_rate: Some(Ratio::new(s - dt, s)),
        amortization: (s - dt) as f64 * j,
    })
}

/// Smallest e with q^e ≥ x.
fn ceil_log(q: u64, x: u64) -> u64 {
    let mut e = 0;
    let mut p: u128 = 1;
    while p < x as u128 {
        p *= q as u128;
        e += 1;
    }
    e
}

/// Lower bound (s − dt)·⌈max(log_q(s − dt + 1), log_q(dt + 1))⌉ on amortization.
pub fn bw23_amort_lower(s: u64, d: u64, t: u64, q: u64) -> Result<u64> {
    let dt = d * t;
    if s <= dt || q < 2 {
        return Err(Error::ParameterOutOfRange(format!("need s > dt and q ≥ 2, got s={s}, dt={dt}, q={q}")));
    }
    let j = ceil_log(q, s - dt + 1).max(ceil_log(q, dt + 1));
    Ok((s - dt) * j)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum HermitianMode {
    /// Real-valued formula for any s.
    Table,
    /// s = q^3; the scheme actually built from the one-point code.
    Exact,
}

pub fn exact_cube_root(s: u64) -> Option<u64> {
    let r = (s as f64).cbrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|c| c * c * c == s)
}

/// Hermitian construction. Table mode: ℓ = s − dt − (s^{2/3} − s^{1/3})/2 and
/// rate 1 − dt/s − (s^{1/3} + 1)/(2 s^{2/3}). Exact mode: ℓ as above with s = q^3
/// and rate ℓ/s.
pub fn hermitian_params(s: u64, dt: u64, mode: HermitianMode) -> Result<ParamRow> {
    if s <= dt {
        return Err(Error::ParameterOutOfRange(format!("need s > dt, got s={s}, dt={dt}")));
    }
    match mode {
        HermitianMode::Table => {
            let sf = s as f64;
            let c = sf.cbrt();
            let c2 = c * c;
            Ok(ParamRow {
                s,
                kind: SchemeKind::Hermitian,
                rate: 1.0 - dt as f64 / sf - (c + 1.0) / (2.0 * c2),
                exact_rate: None,
                amortization: sf - dt as f64 - (c2 - c) / 2.0,
            })
        }
        HermitianMode::Exact => {
            let q = exact_cube_root(s).ok_or(Error::NotACube(s))?;
            let genus = q * (q - 1) / 2;
            if s < dt + genus + 1 {
                return Err(Error::ParameterOutOfRange(format!(
                    "s = {s} leaves no room for dt = {dt} plus genus {genus}"
                )));
            }
            let ell = s - dt - genus;
            let exact = Ratio::new(ell, s);
            Ok(ParamRow {
                s,
                kind: SchemeKind::Hermitian,
                rate: ell as f64 / s as f64,
                exact_rate: Some(exact),
                amortization: ell as f64,
            })
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GoppaMode {
    /// u = log2(s), which must exceed u*.
    Theorem,
    /// The real-valued u*.
    Table,
}

/// u* = log2(2r² − 4r + 2(r+1)·√(r² − 2r + 2) + 3) for r = dt.
pub fn goppa_u_star(dt: u64) -> f64 {
    let r = dt as f64;
    (2.0 * r * r - 4.0 * r + 2.0 * (r + 1.0) * (r * r - 2.0 * r + 2.0).sqrt() + 3.0).log2()
}

pub fn goppa_params(s: u64, dt: u64, mode: GoppaMode) -> Result<ParamRow> {
    if s <= dt || dt == 0 {
        return Err(Error::ParameterOutOfRange(format!("need s > dt ≥ 1, got s={s}, dt={dt}")));
    }
    let u_star = goppa_u_star(dt);
    match mode {
        GoppaMode::Table => {
            let amort = s as f64 - u_star * dt as f64;
            if amort <= 0.0 {
                return Err(Error::ParameterOutOfRange(format!("s = {s} is below u*·dt")));
            }
            Ok(ParamRow {
                s,
                kind: SchemeKind::GoppaTable,
                rate: amort / s as f64,
                exact_rate: None,
                amortization: amort,
            })
        }
        GoppaMode::Theorem => {
            if !s.is_power_of_two() {
                return Err(Error::ParameterOutOfRange(format!("s = {s} is not a power of two")));
            }
            let u = s.trailing_zeros() as u64;
            if (u as f64) <= u_star + SLACK {
                return Err(Error::ConditionViolated(format!("u = {u} does not exceed u* = {u_star:.4}")));
            }
            if u * dt >= s {
                return Err(Error::ConditionViolated(format!("u·dt = {} leaves no amortization", u * dt)));
            }
            let ell = s - u * dt;
            Ok(ParamRow {
                s,
                kind: SchemeKind::GoppaTheorem,
                rate: ell as f64 / s as f64,
                exact_rate: Some(Ratio::new(ell, s)),
                amortization: ell as f64,
            })
        }
    }
}

/// Random-code example at w = log_q(s): rate ≤ 1 − (dt+1)/s − ε and
/// ℓ ≥ (1−ε)·s·log_q(s) − s·log_q(2) − (dt+1)·log_q(s).
pub fn gv_example_params(s: u64, dt: u64, q: u64, eps: f64) -> Result<ParamRow> {
    if s <= dt || q < 2 {
        return Err(Error::ParameterOutOfRange(format!("need s > dt and q ≥ 2, got s={s}, dt={dt}, q={q}")));
    }
    let lq = |x: f64| x.ln() / (q as f64).ln();
    let sf = s as f64;
    let amort = (1.0 - eps) * sf * lq(sf) - sf * lq(2.0) - (dt + 1) as f64 * lq(sf);
    Ok(ParamRow {
        s,
        kind: SchemeKind::GvExample,
        rate: 1.0 - (dt + 1) as f64 / sf - eps,
        exact_rate: None,
        amortization: amort,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fikw_examples() {
        let r = fikw_params(64, 4, FikwBase::Fixed(2.0)).unwrap();
        assert_eq!(r.printed_amortization(), 360);
        assert_eq!(r.printed_rate(), "0.93");
        let r = fikw_params(1000, 4, FikwBase::CurveField).unwrap();
        assert_eq!(r.printed_amortization(), 1494);
        let r = fikw_params(5, 4, FikwBase::Fixed(2.0)).unwrap();
        assert_eq!(r.amortization, 3.0);
        assert_eq!(r.exact_rate, Some(Ratio::new(1, 5)));
        assert!(fikw_params(4, 4, FikwBase::Fixed(2.0)).is_err());
    }

    #[test]
    fn bw23_examples() {
        assert_eq!(bw23_amort_lower(64, 4, 1, 2).unwrap(), 360);
        // q large enough: multiplier 1
        assert_eq!(bw23_amort_lower(10, 2, 2, 16).unwrap(), 6);
        assert_eq!(bw23_amort_lower(8, 2, 2, 2).unwrap(), 4 * 3);
    }

    #[test]
    fn hermitian_examples() {
        let r = hermitian_params(1000, 4, HermitianMode::Table).unwrap();
        assert_eq!(r.printed_amortization(), 951);
        assert_eq!(r.printed_rate(), "0.94");
        let r = hermitian_params(50, 4, HermitianMode::Table).unwrap();
        assert_eq!(r.printed_amortization(), 42);
        assert_eq!(r.printed_rate(), "0.75");
        let r = hermitian_params(8, 2, HermitianMode::Exact).unwrap();
        assert_eq!(r.amortization, 5.0);
        assert_eq!(r.exact_rate, Some(Ratio::new(5, 8)));
        assert_eq!(hermitian_params(50, 4, HermitianMode::Exact), Err(Error::NotACube(50)));
    }

    #[test]
    fn goppa_examples() {
        assert!((goppa_u_star(4) - 5.6618).abs() < 1e-4);
        let r = goppa_params(64, 4, GoppaMode::Table).unwrap();
        assert_eq!((r.printed_rate(), r.printed_amortization()), ("0.65".into(), 42));
        let r = goppa_params(2048, 4, GoppaMode::Table).unwrap();
        assert_eq!((r.printed_rate(), r.printed_amortization()), ("0.99".into(), 2026));
        let r = goppa_params(64, 4, GoppaMode::Theorem).unwrap();
        assert_eq!(r.exact_rate, Some(Ratio::new(5, 8)));
        assert_eq!(r.amortization, 40.0);
        assert!(matches!(goppa_params(32, 4, GoppaMode::Theorem), Err(Error::ConditionViolated(_))));
    }

    #[test]
    fn gv_example_at_64() {
        let r = gv_example_params(64, 4, 2, 0.05).unwrap();
        // 0.95·64·6 − 64 − 5·6
        assert!((r.amortization - 270.8).abs() < 1e-9);
    }
}
