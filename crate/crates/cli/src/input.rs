use std::path::Path;

use gbsiso::combinatorics::{orbits_up_to, DetectionEvent, Orbit};
use gbsiso::gbs::default_scaling;
use gbsiso::graphs::{graphs_from_json, parse_graph6_lines, spectrum, Graph};
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use crate::args::{InputFormat, RunArgs};
use crate::CliError;

pub fn read_graphs(path: &Path, format: InputFormat) -> Result<Vec<Graph>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    let json = match format {
        InputFormat::Json => true,
        InputFormat::Graph6 => false,
        InputFormat::Auto => path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")),
    };
    let mut graphs = if json {
        graphs_from_json(&text)?
    } else {
        parse_graph6_lines(&text)?
    };
    if graphs.is_empty() {
        return Err(CliError::Input(format!("{}: no graphs", path.display())));
    }
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let single = graphs.len() == 1;
    for (i, g) in graphs.iter_mut().enumerate() {
        if g.label().is_none() {
            g.set_label(Some(if single { stem.clone() } else { format!("{stem}-{i}") }));
        }
    }
    Ok(graphs)
}

/// Parses `p`, `p/q`, or decimals on either side of the slash.
pub fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Input(format!("invalid number {text:?}"));
    let decimal = |s: &str| -> Result<BigRational, CliError> {
        let s = s.trim();
        let (neg, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
        if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars())).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let numer = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let denom = BigRational::from_integer(10.into()).pow(frac.len() as i32);
        let v = BigRational::from_integer(numer) / denom;
        Ok(if neg { -v } else { v })
    };
    let value = match text.split_once('/') {
        Some((p, q)) => {
            let q = decimal(q)?;
            if q.is_zero() {
                return Err(bad());
            }
            decimal(p)? / q
        }
        None => decimal(text)?,
    };
    Ok(value)
}

/// Encoding parameters shared by every graph of a run.
pub fn scaling(run: &RunArgs, graphs: &[Graph]) -> Result<(Option<BigRational>, BigRational), CliError> {
    let k = parse_rational(&run.k)?;
    let c = match &run.c {
        Some(text) => Some(parse_rational(text)?),
        None if graphs.len() > 1 => {
            let norm = graphs.iter().map(|g| spectrum(g).spectral_norm).fold(0.0, f64::max);
            Some(default_scaling(norm, &k))
        }
        None => None,
    };
    Ok((c, k))
}

/// The orbit schedule for graphs on `modes` vertices.
pub fn schedule(run: &RunArgs, modes: usize) -> Result<Vec<Orbit>, CliError> {
    if run.orbits.is_empty() {
        if run.max_photons < 2 || run.max_photons % 2 == 1 {
            return Err(CliError::Input(format!(
                "--max-photons must be even and at least 2, got {}",
                run.max_photons
            )));
        }
        return Ok(orbits_up_to(run.max_photons, modes, true)?);
    }
    let mut out = Vec::new();
    for text in &run.orbits {
        let n = DetectionEvent::parse(text)?;
        if n.total() % 2 == 1 {
            return Err(CliError::Input(format!("orbit {text:?} has an odd photon total")));
        }
        out.push(Orbit::of(&n.padded(modes)?));
    }
    Ok(gbsiso::invariants::sorted_orbits(&out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("1/6.9").unwrap(), r(10, 69));
        assert_eq!(parse_rational("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_rational("3").unwrap(), r(3, 1));
        assert_eq!(parse_rational("-1/2").unwrap(), r(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        for bad in ["", "1/0", "a", "1/", "1.2.3", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
