//! `key = value` config files and the setters shared with command-line flags.
//!
//! Keys match the long flag names: `criteria`, `k`, `lambda`, `tau-c1`..`tau-c5`,
//! `min-len-c1`..`min-len-c5`, `psi-target`, `eps`, `alpha`, `sg-window`,
//! `sg-order`, `flip`. Underscores are accepted in place of dashes. `#` starts
//! a comment.

use motionsimp::criterion::Criterion;
use motionsimp::simplify::{PsiTarget, SimplifyConfig};

use crate::CliError;

pub fn parse_file(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", n + 1)))?;
        out.push((k.trim().replace('_', "-"), v.trim().to_string()));
    }
    Ok(out)
}

pub fn set(cfg: &mut SimplifyConfig, key: &str, value: &str) -> Result<(), CliError> {
    let bad = || CliError::Usage(format!("invalid value {value:?} for {key}"));
    let float = || value.parse::<f64>().map_err(|_| bad());
    let count = || value.parse::<usize>().map_err(|_| bad());
    match key {
        "criteria" => cfg.criteria_enabled = parse_criteria(value)?,
        "k" => cfg.k = float()?,
        "lambda" => cfg.lambda_slow = count()?,
        "psi-target" => cfg.psi_target = value.parse::<PsiTarget>().map_err(|_| bad())?,
        "eps" | "epsilon" => cfg.epsilon = float()?,
        "alpha" => cfg.alpha = float()?,
        "sg-window" => cfg.sg_window = count()?,
        "sg-order" => cfg.sg_order = count()?,
        "flip" => cfg.flip_vector = parse_flip(value)?,
        _ => {
            if let Some(c) = key.strip_prefix("tau-") {
                let c: Criterion = c.parse().map_err(|_| unknown(key))?;
                cfg.tau[c.index()] = Some(float()?);
            } else if let Some(c) = key.strip_prefix("min-len-") {
                let c: Criterion = c.parse().map_err(|_| unknown(key))?;
                cfg.min_len[c.index()] = Some(count()?);
            } else {
                return Err(unknown(key));
            }
        }
    }
    Ok(())
}

fn unknown(key: &str) -> CliError {
    CliError::Usage(format!("unknown config key {key:?}"))
}

/// `all`, `none`, or a comma list such as `c1,c3` or `2,5`.
pub fn parse_criteria(s: &str) -> Result<[bool; 5], CliError> {
    match s.trim() {
        "all" => return Ok([true; 5]),
        "none" | "" => return Ok([false; 5]),
        _ => {}
    }
    let mut on = [false; 5];
    for part in s.split(',') {
        let c: Criterion = part.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
        on[c.index()] = true;
    }
    Ok(on)
}

pub fn parse_flip(s: &str) -> Result<[i8; 3], CliError> {
    let parts: Vec<i8> = s
        .split(',')
        .map(|p| p.trim().parse::<i8>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("flip must be three of -1/1, got {s:?}")))?;
    <[i8; 3]>::try_from(parts).map_err(|_| CliError::Usage(format!("flip must have three entries, got {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_with_comments() {
        let kv = parse_file("# defaults\nk = 0.25\n\ntau_c2=1.5  # tighter\ncriteria = c2,c4\n").unwrap();
        let mut cfg = SimplifyConfig::default();
        for (k, v) in &kv {
            set(&mut cfg, k, v).unwrap();
        }
        assert_eq!(cfg.k, 0.25);
        assert_eq!(cfg.tau[1], Some(1.5));
        assert_eq!(cfg.criteria_enabled, [false, true, false, true, false]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_file("k 0.5").is_err());
        let mut cfg = SimplifyConfig::default();
        assert!(set(&mut cfg, "tau-c9", "1").is_err());
        assert!(set(&mut cfg, "colour", "1").is_err());
        assert!(set(&mut cfg, "k", "half").is_err());
        assert!(parse_flip("1,1").is_err());
        assert_eq!(parse_flip("-1, 1, -1").unwrap(), [-1, 1, -1]);
        assert_eq!(parse_criteria("none").unwrap(), [false; 5]);
    }
}
