use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, ValueEnum};
use labelweight_hss::codes::goppa::{goppa_build, GoppaPolynomial, SupportSet};
use labelweight_hss::codes::hermitian::{hermitian_build, hermitian_distance};
use labelweight_hss::codes::io::read_code;
use labelweight_hss::codes::rs::rs_build;
use labelweight_hss::codes::{LabeledCode, Labeling};
use labelweight_hss::error::Error;
use labelweight_hss::hss::HssParams;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Goppa,
    Hermitian,
    Rs,
}

/// Where a code comes from: a family with its parameters, or a saved file.
#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    #[arg(long, value_enum, default_value = "goppa")]
    pub code: Family,
    /// Read a `labelweight-code/v1` file instead of building one.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Goppa: extension degree, field GF(2^u).
    #[arg(long, default_value_t = 3)]
    pub u: u32,
    /// Goppa: degree of the Goppa polynomial.
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Pick a random irreducible Goppa polynomial with this seed instead of the first one.
    #[arg(long)]
    pub goppa_seed: Option<u64>,
    /// Hermitian: curve parameter (field GF(q^2)); RS: field order. Defaults 2 and 5.
    #[arg(long)]
    pub q: Option<u32>,
    /// Code dimension. Defaults: Hermitian 5, RS 2.
    #[arg(long)]
    pub k: Option<usize>,
    /// RS: length, at most q. Defaults to q.
    #[arg(long)]
    pub n: Option<usize>,
    /// Relabel with s servers holding n/s consecutive coordinates each.
    #[arg(long)]
    pub s: Option<usize>,
}

pub struct Built {
    pub code: LabeledCode,
    pub description: String,
    pub designed_distance: Option<usize>,
}

impl CodeArgs {
    pub fn build(&self) -> anyhow::Result<Built> {
        let mut built = match (&self.input, self.code) {
            (Some(path), _) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Built { code: read_code(&text)?, description: path.display().to_string(), designed_distance: None }
            }
            (None, Family::Goppa) => {
                let g = match self.goppa_seed {
                    Some(seed) => GoppaPolynomial::Random(seed),
                    None => GoppaPolynomial::Auto,
                };
                let c = goppa_build(self.u, self.r, g, SupportSet::AllOfField)?;
                Built {
                    description: format!("Goppa u={} r={} g={}", self.u, self.r, c.polynomial),
                    designed_distance: Some(c.designed_distance()),
                    code: c.code,
                }
            }
            (None, Family::Hermitian) => {
                let q = self.q.unwrap_or(2);
                let k = self.k.unwrap_or(5);
                let c = hermitian_build(q, k)?;
                Built {
                    description: format!("Hermitian q={q} k={k}"),
                    designed_distance: hermitian_distance(q, k),
                    code: c.code,
                }
            }
            (None, Family::Rs) => {
                let q = self.q.unwrap_or(5);
                let n = self.n.unwrap_or(q as usize);
                let k = self.k.unwrap_or(2);
                let code = rs_build(q, n, k)?;
                Built {
                    description: format!("Reed-Solomon [{n},{k}] over GF({q})"),
                    designed_distance: Some(n - k + 1),
                    code,
                }
            }
        };
        if let Some(s) = self.s {
            let n = built.code.n();
            if s == 0 || n % s != 0 {
                return Err(Error::ParameterOutOfRange(format!("--s {s} does not divide n = {n}")).into());
            }
            built.code = built.code.with_labeling(Labeling::balanced(s, n / s)?)?;
            built.description.push_str(&format!(", {s} servers x {} coordinates", n / s));
            built.designed_distance = None;
        }
        Ok(built)
    }
}

#[derive(Args, Debug, Clone)]
pub struct SchemeArgs {
    /// Privacy threshold.
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    /// Degree of the evaluated monomials.
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Variables per instance. Defaults to d.
    #[arg(long)]
    pub m: Option<usize>,
}

impl SchemeArgs {
    pub fn params(&self, code: &LabeledCode) -> anyhow::Result<HssParams> {
        let m = self.m.unwrap_or(self.d);
        Ok(HssParams::new(code.s(), self.t, self.d, code.dimension(), m)?)
    }
}
