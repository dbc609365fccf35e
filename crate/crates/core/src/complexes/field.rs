use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// Integers modulo 2.
    #[default]
    Gf2,
    /// Integers modulo an odd prime.
    Prime(u32),
    /// Exact rationals.
    Rational,
}

impl Field {
    /// GF(p) for any prime p.
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::invalid(format!(
                "field characteristic {p} is not prime"
            )));
        }
        Ok(if p == 2 { Field::Gf2 } else { Field::Prime(p) })
    }

    /// The characteristic, 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Gf2 => 2,
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    (2u64..)
        .take_while(|d| d * d <= p as u64)
        .all(|d| !(p as u64).is_multiple_of(d))
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "rational" | "rationals" | "q" => return Ok(Field::Rational),
            _ => {}
        }
        let digits = lower
            .strip_prefix("gf")
            .ok_or_else(|| Error::invalid(format!("unknown field '{s}'")))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::invalid(format!("unknown field '{s}'")))?;
        Field::prime(p)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            other => write!(f, "gf{}", other.characteristic()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!("gf2".parse::<Field>().unwrap(), Field::Gf2);
        assert_eq!("gf3".parse::<Field>().unwrap(), Field::Prime(3));
        assert_eq!("GF101".parse::<Field>().unwrap(), Field::Prime(101));
        assert_eq!("rational".parse::<Field>().unwrap(), Field::Rational);
        assert!("gf4".parse::<Field>().is_err());
        assert!("gf1".parse::<Field>().is_err());
        assert!("real".parse::<Field>().is_err());
        assert_eq!(Field::Prime(5).to_string(), "gf5");
    }
}
