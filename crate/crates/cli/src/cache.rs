//! Text cache of cyclotomic polynomials: a header line, then `n: c0,c1,...`
//! with ascending integer coefficients.

use std::path::Path;

use qcongruence::qkit::{cyclotomic_z, preload_cyclotomic};
use qcongruence::Int;

use crate::CliError;

pub const HEADER: &str = "qcongruence-cyclo-v1";

pub fn render(n_max: u64) -> String {
    let mut s = String::from(HEADER);
    s.push('\n');
    for n in 1..=n_max {
        let p = cyclotomic_z(n);
        let cs: Vec<String> = p.coeffs().iter().map(Int::to_string).collect();
        s.push_str(&format!("{n}: {}\n", cs.join(",")));
    }
    s
}

/// Writes `Phi_1 .. Phi_{n_max}`; returns the number of entries.
pub fn write(path: &Path, n_max: u64) -> Result<u64, CliError> {
    if n_max == 0 {
        return Err(CliError::Usage("nmax must be positive".into()));
    }
    std::fs::write(path, render(n_max)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(n_max)
}

pub fn parse(text: &str) -> Result<Vec<(u64, Vec<Int>)>, CliError> {
    let bad = |line: usize| CliError::Io(format!("cyclotomic cache, line {line}: malformed"));
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(HEADER) {
        return Err(CliError::Io(format!("cyclotomic cache: missing header {HEADER}")));
    }
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (n, cs) = line.split_once(':').ok_or_else(|| bad(i + 2))?;
        let n: u64 = n.trim().parse().map_err(|_| bad(i + 2))?;
        let cs = cs.split(',').map(|c| c.trim().parse::<Int>().map_err(|_| bad(i + 2))).collect::<Result<Vec<_>, _>>()?;
        out.push((n, cs));
    }
    Ok(out)
}

/// Seeds the in-process memo from a cache file; each entry is validated.
pub fn load(path: &Path) -> Result<usize, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let entries = parse(&text)?;
    let count = entries.len();
    for (n, cs) in entries {
        preload_cyclotomic(n, cs).map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(count)
}
