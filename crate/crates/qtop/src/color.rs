//! Color strings: `S<n>`, `V<α>`, `tau`, `Omega<α>` and `OmegaRT<0|1>`,
//! where `α` is a complex literal such as `0.3`, `-1.4-0.2i` or `2i`.

use qtop_core::invariants::manifold::ComponentRole;
use qtop_core::{Color, Degree, QParams, Scalar, WeightModule};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum ColorSpec {
    Simple(u32),
    Typical(Scalar),
    Tau,
    /// Kirby color of the given degree.
    Kirby(Scalar),
    /// Kirby color `Ω^RT` of the given parity.
    KirbyRt(u8),
}

pub fn parse_complex(text: &str) -> Result<Scalar, CliError> {
    let s = text.trim();
    let bad = || CliError::Parse(format!("{text:?} is not a complex number"));
    let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Scalar::new(num(s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (&body[..j], &body[j..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => num(t)?,
    };
    Ok(Scalar::new(num(re)?, im))
}

pub fn parse_color(text: &str) -> Result<ColorSpec, CliError> {
    let s = text.trim();
    if s == "tau" {
        return Ok(ColorSpec::Tau);
    }
    if let Some(rest) = s.strip_prefix("OmegaRT") {
        return match rest {
            "0" => Ok(ColorSpec::KirbyRt(0)),
            "1" => Ok(ColorSpec::KirbyRt(1)),
            _ => Err(CliError::Parse(format!("{text:?}: OmegaRT takes parity 0 or 1"))),
        };
    }
    if let Some(rest) = s.strip_prefix("Omega") {
        return Ok(ColorSpec::Kirby(parse_complex(rest)?));
    }
    if let Some(rest) = s.strip_prefix('S') {
        return rest.parse().map(ColorSpec::Simple).map_err(|_| CliError::Parse(format!("{text:?}: bad simple color")));
    }
    if let Some(rest) = s.strip_prefix('V') {
        return Ok(ColorSpec::Typical(parse_complex(rest)?));
    }
    Err(CliError::Parse(format!("unknown color {text:?}")))
}

impl ColorSpec {
    pub fn module(&self, p: QParams) -> Result<Option<WeightModule>, CliError> {
        Ok(match *self {
            ColorSpec::Simple(n) => Some(WeightModule::simple(p, n)?),
            ColorSpec::Typical(a) => Some(WeightModule::typical(p, a)),
            ColorSpec::Tau => Some(WeightModule::tau(p)),
            ColorSpec::Kirby(_) | ColorSpec::KirbyRt(_) => None,
        })
    }

    /// The color placed on a component of a link invariant.
    pub fn color(&self, p: QParams) -> Result<Color, CliError> {
        if let Some(m) = self.module(p)? {
            return Ok(m.into());
        }
        Ok(match *self {
            ColorSpec::Kirby(a) => p.kirby_color(a)?.into(),
            ColorSpec::KirbyRt(par) => p.kirby_rt(par)?.into(),
            _ => unreachable!(),
        })
    }

    /// Kirby colors mark surgery components; module colors mark cargo.
    pub fn role(&self, p: QParams) -> Result<ComponentRole, CliError> {
        Ok(match *self {
            ColorSpec::Kirby(a) => ComponentRole::Surgery { degree: Degree::new(a) },
            ColorSpec::KirbyRt(par) => ComponentRole::Surgery { degree: Degree::integer(par as i64) },
            _ => ComponentRole::Cargo { color: self.module(p)?.expect("module color"), degree: None },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = |re, im| Scalar::new(re, im);
        assert_eq!(parse_complex("0.3").unwrap(), c(0.3, 0.0));
        assert_eq!(parse_complex("-1.4-0.2i").unwrap(), c(-1.4, -0.2));
        assert_eq!(parse_complex("0.3+0.1i").unwrap(), c(0.3, 0.1));
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2e-1i").unwrap(), c(1e-3, 0.2));
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("1+").is_err());
    }

    #[test]
    fn color_strings() {
        assert_eq!(parse_color("S2").unwrap(), ColorSpec::Simple(2));
        assert_eq!(parse_color("V0.5").unwrap(), ColorSpec::Typical(Scalar::new(0.5, 0.0)));
        assert_eq!(parse_color("tau").unwrap(), ColorSpec::Tau);
        assert_eq!(parse_color("OmegaRT1").unwrap(), ColorSpec::KirbyRt(1));
        assert_eq!(parse_color("Omega0.4+0.2i").unwrap(), ColorSpec::Kirby(Scalar::new(0.4, 0.2)));
        for bad in ["OmegaRT2", "S-1", "W1", ""] {
            assert!(parse_color(bad).is_err(), "{bad}");
        }
    }
}
