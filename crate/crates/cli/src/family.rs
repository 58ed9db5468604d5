//! The "name:key=val,key=val" family-spec mini-grammar.
//!
//! List values use '+' between items, e.g. "pure_schmidt:mu=0.8944+0.4472".

use crate::CliError;
use skewcorr_core::{Family, FamilySpec};
use std::collections::HashMap;

fn parse_kv(body: &str) -> Result<HashMap<String, String>, CliError> {
    let mut map = HashMap::new();
    if body.trim().is_empty() {
        return Ok(map);
    }
    for pair in body.split(',') {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("expected key=value, got {pair:?}")))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn take_usize(map: &mut HashMap<String, String>, key: &str) -> Result<Option<usize>, CliError> {
    match map.remove(key) {
        Some(v) => v
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::usage(format!("{key} must be an integer, got {v:?}"))),
        None => Ok(None),
    }
}

fn take_f64(map: &mut HashMap<String, String>, key: &str) -> Result<Option<f64>, CliError> {
    match map.remove(key) {
        Some(v) => v
            .parse::<f64>()
            .map(Some)
            .map_err(|_| CliError::usage(format!("{key} must be a number, got {v:?}"))),
        None => Ok(None),
    }
}

fn take_u64(map: &mut HashMap<String, String>, key: &str) -> Result<Option<u64>, CliError> {
    match map.remove(key) {
        Some(v) => v
            .parse::<u64>()
            .map(Some)
            .map_err(|_| CliError::usage(format!("{key} must be a u64, got {v:?}"))),
        None => Ok(None),
    }
}

fn take_list(map: &mut HashMap<String, String>, key: &str) -> Result<Option<Vec<f64>>, CliError> {
    match map.remove(key) {
        Some(v) => {
            let items: Result<Vec<f64>, _> = v.split('+').map(|s| s.trim().parse::<f64>()).collect();
            items
                .map(Some)
                .map_err(|_| CliError::usage(format!("{key} must be numbers joined by '+', got {v:?}")))
        }
        None => Ok(None),
    }
}

fn require<T>(value: Option<T>, family: &str, key: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::usage(format!("family {family:?} requires {key}=...")))
}

/// Parse a family spec string; `default_seed` fills the seed of random
/// families when the spec does not carry one.
pub fn parse_family_spec(text: &str, default_seed: u64) -> Result<FamilySpec, CliError> {
    let (name, body) = match text.split_once(':') {
        Some((n, b)) => (n.trim(), b),
        None => (text.trim(), ""),
    };
    let mut kv = parse_kv(body)?;
    let spec = match name {
        "werner" => {
            let m = take_usize(&mut kv, "m")?.unwrap_or(2);
            let x = require(take_f64(&mut kv, "x")?, name, "x")?;
            FamilySpec { family: Family::Werner, m, n: m, param: x, extras: vec![], seed: 0 }
        }
        "isotropic" => {
            let m = take_usize(&mut kv, "m")?.unwrap_or(2);
            let x = require(take_f64(&mut kv, "x")?, name, "x")?;
            FamilySpec { family: Family::Isotropic, m, n: m, param: x, extras: vec![], seed: 0 }
        }
        "ppt" => {
            let alpha = require(take_f64(&mut kv, "alpha")?, name, "alpha")?;
            FamilySpec { family: Family::Ppt, m: 3, n: 3, param: alpha, extras: vec![], seed: 0 }
        }
        "max_entangled" | "bell" => {
            let m = take_usize(&mut kv, "m")?.unwrap_or(2);
            FamilySpec { family: Family::MaxEntangled, m, n: m, param: 0.0, extras: vec![], seed: 0 }
        }
        "pure_schmidt" => {
            let mu = require(take_list(&mut kv, "mu")?, name, "mu")?;
            let r = mu.len();
            FamilySpec { family: Family::PureSchmidt, m: r, n: r, param: 0.0, extras: mu, seed: 0 }
        }
        "cq" | "classical_quantum" => {
            let m = require(take_usize(&mut kv, "m")?, name, "m")?;
            let n = require(take_usize(&mut kv, "n")?, name, "n")?;
            let k = take_usize(&mut kv, "k")?.unwrap_or(m);
            let seed = take_u64(&mut kv, "seed")?.unwrap_or(default_seed);
            FamilySpec {
                family: Family::ClassicalQuantum,
                m,
                n,
                param: 0.0,
                extras: vec![k as f64],
                seed,
            }
        }
        "random" | "random_mixed" => {
            let m = require(take_usize(&mut kv, "m")?, name, "m")?;
            let n = require(take_usize(&mut kv, "n")?, name, "n")?;
            let rank = take_usize(&mut kv, "rank")?.unwrap_or(m * n);
            let seed = take_u64(&mut kv, "seed")?.unwrap_or(default_seed);
            FamilySpec {
                family: Family::RandomMixed,
                m,
                n,
                param: rank as f64,
                extras: vec![],
                seed,
            }
        }
        other => return Err(CliError::usage(format!("unknown family {other:?}"))),
    };
    if let Some(stray) = kv.keys().next() {
        return Err(CliError::usage(format!("unknown key {stray:?} for family {name:?}")));
    }
    Ok(spec)
}
