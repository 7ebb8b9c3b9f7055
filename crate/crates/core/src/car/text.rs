//! Line-oriented text form: one `coeff * word` term per line, e.g.
//!
//! ```text
//! 1 * c_-1
//! -2/3 * c*_1 c*_2 c_3
//! (1/2+1i) * 1
//! ```
//!
//! The word `1` is the identity and the zero polynomial is written `0`.
//! Parsed words may be in any order; they are normal-ordered on input.

use std::fmt;
use std::str::FromStr;

use super::{AlgebraError, CarPolynomial, Generator, SiteIndex};
use crate::coeff::Coeff;

impl<C: Coeff> fmt::Display for CarPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        for (m, c) in self.terms() {
            write!(f, "{} *", c.format())?;
            if m.is_identity() {
                write!(f, " 1")?;
            }
            for g in m.generators() {
                let star = if g.is_creation() { "*" } else { "" };
                write!(f, " c{star}_{}", g.site)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn parse_generator(tok: &str) -> Option<Generator> {
    let (creation, rest) = if let Some(r) = tok.strip_prefix("c*_") {
        (true, r)
    } else {
        (false, tok.strip_prefix("c_")?)
    };
    let rest = rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(rest);
    let site = SiteIndex::from_str(rest).ok()?;
    Some(if creation {
        Generator::creation(site)
    } else {
        Generator::annihilation(site)
    })
}

impl<C: Coeff> FromStr for CarPolynomial<C> {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = CarPolynomial::zero();
        for (idx, raw) in s.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line == "0" {
                continue;
            }
            let err = |reason: String| AlgebraError::Parse { line: idx + 1, reason };
            let (coeff, word) = line
                .split_once(" * ")
                .ok_or_else(|| err("expected `coeff * word`".into()))?;
            let coeff = C::parse(coeff).map_err(|e| err(e.to_string()))?;
            let mut gens = Vec::new();
            for tok in word.split_whitespace() {
                if tok == "1" {
                    continue;
                }
                gens.push(parse_generator(tok).ok_or_else(|| err(format!("bad generator {tok:?}")))?);
            }
            out = out.add(&CarPolynomial::word(&gens).scale(&coeff));
        }
        Ok(out)
    }
}
