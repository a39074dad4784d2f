//! The `labelweight-hss-scheme/v1` text format.
//!
//! ```text
//! labelweight-hss-scheme/v1
//! params s=2 t=1 d=1 ell=1 m=1
//! targets 1
//! labelweight verified 2
//! labelweight-code/v1
//! ...
//! end-code
//! eval 2
//! e 1 1 2 1
//! e 2 1 1 1
//! ```
//!
//! Each `e` row is: coordinate r, instance i, the subsets T_1..T_d (members joined
//! by `,`, subsets joined by `|`), and the coefficient. Everything is 1-based.

use std::fmt::Write as _;

use super::{mask_members, HssParams, HssScheme, LabelweightStatus, MonomialId, MonomialSpace};
use crate::codes::io::{read_code_from, write_code, Cursor};
use crate::error::{Error, Result};
use crate::galois::Fe;
use crate::limits;

pub const SCHEME_TAG: &str = "labelweight-hss-scheme/v1";

pub fn write_scheme(scheme: &HssScheme) -> String {
    let p = &scheme.params;
    let ms = &scheme.monomials;
    let mut out = String::new();
    writeln!(out, "{SCHEME_TAG}").unwrap();
    writeln!(out, "params s={} t={} d={} ell={} m={}", p.s, p.t, p.d, p.ell, p.m).unwrap();
    let targets: Vec<String> = p.targets.iter().map(|k| (k + 1).to_string()).collect();
    writeln!(out, "targets {}", targets.join(" ")).unwrap();
    match scheme.labelweight {
        LabelweightStatus::Verified(w) => writeln!(out, "labelweight verified {w}").unwrap(),
        LabelweightStatus::AssertedByConstruction => writeln!(out, "labelweight asserted").unwrap(),
        LabelweightStatus::Skipped => writeln!(out, "labelweight skipped").unwrap(),
    }
    out.push_str(&write_code(&scheme.code));
    writeln!(out, "end-code").unwrap();
    writeln!(out, "eval {}", scheme.eval_entries()).unwrap();
    for (r, entries) in scheme.eval.iter().enumerate() {
        for &(m, coeff) in entries {
            let id = ms.decode(m as usize);
            let tuple: Vec<String> = id
                .tuple
                .iter()
                .map(|&x| {
                    let members: Vec<String> =
                        mask_members(ms.subsets.mask(x)).iter().map(|j| (j + 1).to_string()).collect();
                    members.join(",")
                })
                .collect();
            writeln!(out, "e {} {} {} {}", r + 1, id.instance + 1, tuple.join("|"), coeff.0).unwrap();
        }
    }
    out
}

pub fn read_scheme(text: &str) -> Result<HssScheme> {
    let mut cur = Cursor::new(text);
    cur.expect_line(SCHEME_TAG)?;
    let params_line = cur.value("params")?;
    let mut vals = [None; 5];
    for tok in params_line.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| cur.err(format!("bad parameter `{tok}`")))?;
        let slot = ["s", "t", "d", "ell", "m"]
            .iter()
            .position(|&n| n == k)
            .ok_or_else(|| cur.err(format!("unknown parameter `{k}`")))?;
        vals[slot] = Some(v.parse::<usize>().map_err(|_| cur.err(format!("bad value `{v}`")))?);
    }
    let [Some(s), Some(t), Some(d), Some(ell), Some(m)] = vals else {
        return Err(cur.err("params needs s, t, d, ell and m"));
    };
    let targets: Vec<usize> = cur.numbers("targets")?;
    let targets = targets
        .iter()
        .map(|&k| k.checked_sub(1).ok_or_else(|| cur.err("targets start at 1")))
        .collect::<Result<Vec<_>>>()?;
    let params =
        HssParams::with_targets(s, t, d, ell, m, targets).map_err(|e| cur.err(e.to_string()))?;
    let status = cur.value("labelweight")?;
    let labelweight = match status.split_whitespace().collect::<Vec<_>>()[..] {
        ["verified", w] => LabelweightStatus::Verified(w.parse().map_err(|_| cur.err("bad labelweight"))?),
        ["asserted"] => LabelweightStatus::AssertedByConstruction,
        ["skipped"] => LabelweightStatus::Skipped,
        _ => return Err(cur.err(format!("bad labelweight status `{status}`"))),
    };
    let code = read_code_from(&mut cur)?;
    cur.expect_line("end-code")?;
    if code.dimension() != ell || code.s() != s {
        return Err(cur.err("embedded code does not match the parameters"));
    }
    let monomials = MonomialSpace::new(&params, limits::budget(limits::MONOMIAL_BUDGET))?;
    let count: usize = cur.number("eval")?;
    let field = code.field().clone();
    let mut eval: Vec<Vec<(u32, Fe)>> = vec![Vec::new(); code.n()];
    for _ in 0..count {
        let row = cur.value("e")?;
        let parts: Vec<&str> = row.split_whitespace().collect();
        let [r, i, tuple, coeff] = parts[..] else {
            return Err(cur.err(format!("eval row needs 4 fields, found {}", parts.len())));
        };
        let parse = |v: &str| v.parse::<usize>().map_err(|_| cur.err(format!("bad number `{v}`")));
        let r = parse(r)?.checked_sub(1).filter(|&r| r < code.n()).ok_or_else(|| cur.err("bad coordinate"))?;
        let i = parse(i)?.checked_sub(1).ok_or_else(|| cur.err("bad instance"))?;
        let mut subsets = Vec::with_capacity(d);
        for part in tuple.split('|') {
            let mut mask = 0u64;
            for member in part.split(',') {
                let j = parse(member)?;
                if j == 0 || j > s {
                    return Err(cur.err(format!("server {j} out of range")));
                }
                mask |= 1 << (j - 1);
            }
            let idx = monomials
                .subsets
                .position(mask)
                .ok_or_else(|| cur.err(format!("`{part}` is not a size-{t} subset")))?;
            subsets.push(idx);
        }
        let m_idx = monomials
            .encode(&MonomialId { instance: i, tuple: subsets })
            .map_err(|e| cur.err(e.to_string()))?;
        let coeff = field.element(parse(coeff)? as u32).map_err(|e| cur.err(e.to_string()))?;
        eval[r].push((m_idx as u32, coeff));
    }
    if !cur.at_end() {
        return Err(cur.err("trailing content after the eval table"));
    }
    for entries in eval.iter_mut() {
        entries.sort_by_key(|&(m, _)| m);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Parse { line: 0, msg: "duplicate eval entry".into() });
        }
    }
    let scheme = HssScheme { params, code, monomials, eval, labelweight };
    scheme.validate_locality()?;
    Ok(scheme)
}
