//! Distribution specs: `bernoulli:p`, `uniform:a:b`, `poisson:λ[:tail]`,
//! `pmf:@file.json`, `pb:p1,p2,…`, `sgeo:p`.

use std::fs;

use zrenyi::families::{bernoulli, poisson_binomial, poisson_truncated, symmetric_geometric_half, uniform};
use zrenyi::Pmf;

use crate::CliError;

/// Tail mass dropped by `poisson:λ` when none is given.
pub const DEFAULT_POISSON_TAIL: f64 = 1e-15;

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad {what} {s:?}")))
}

pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',').map(|x| num(x, "number")).collect()
}

pub fn parse_dist(spec: &str) -> Result<Pmf, CliError> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("distribution {spec:?} has no kind prefix")))?;
    let pmf = match kind {
        "bernoulli" => bernoulli(num(rest, "p")?)?,
        "uniform" => {
            let (a, b) = rest
                .split_once(':')
                .ok_or_else(|| CliError::Usage("uniform needs uniform:a:b".into()))?;
            uniform(num(a, "a")?, num(b, "b")?)?
        }
        "poisson" => match rest.split_once(':') {
            Some((l, eps)) => poisson_truncated(num(l, "lambda")?, num(eps, "tail")?)?,
            None => poisson_truncated(num(rest, "lambda")?, DEFAULT_POISSON_TAIL)?,
        },
        "pb" => poisson_binomial(&parse_list(rest)?)?,
        "sgeo" => symmetric_geometric_half(num(rest, "p")?)?,
        "pmf" => {
            let path = rest
                .strip_prefix('@')
                .ok_or_else(|| CliError::Usage("pmf needs pmf:@file.json".into()))?;
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_string(), e.to_string()))?;
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))?
        }
        other => return Err(CliError::Usage(format!("unknown distribution kind {other:?}"))),
    };
    Ok(pmf)
}
