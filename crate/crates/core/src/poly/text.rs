//! Text forms of [`IntegerPolynomial`]: the ascending coefficient list
//! `"[-5, 0, 1]"` used for I/O and a human-readable rendering `x^2 - 5`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::IntegerPolynomial;
use crate::error::Error;

impl IntegerPolynomial {
    /// Ascending coefficient list, e.g. `[-5, 0, 1]` for `x² − 5`.
    pub fn to_coefficient_list(&self) -> String {
        let parts: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }

    /// Parses an ascending coefficient list. Entries are decimal integers,
    /// optionally wrapped in double quotes.
    pub fn parse_coefficient_list(s: &str) -> Result<Self, Error> {
        Parser { src: s.as_bytes(), pos: 0 }.list()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), Error> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let quoted = self.src.get(self.pos) == Some(&b'"');
        if quoted {
            self.pos += 1;
        }
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err("expected a decimal integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let value = text
            .trim_start_matches('+')
            .parse::<BigInt>()
            .map_err(|e| self.err(e.to_string()))?;
        if quoted {
            self.expect(b'"')?;
        }
        Ok(value)
    }

    fn list(mut self) -> Result<IntegerPolynomial, Error> {
        self.expect(b'[')?;
        let mut coeffs = Vec::new();
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b']') {
            self.pos += 1;
        } else {
            loop {
                coeffs.push(self.integer()?);
                self.skip_ws();
                match self.src.get(self.pos) {
                    Some(b',') => self.pos += 1,
                    Some(b']') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ']'")),
                }
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.err("trailing characters"));
        }
        Ok(IntegerPolynomial::new(coeffs))
    }
}

impl FromStr for IntegerPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Self::parse_coefficient_list(s)
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = c.abs();
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs().len()))?;
        for c in self.coeffs() {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntegerPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct CoeffVisitor;
        impl<'de> Visitor<'de> for CoeffVisitor {
            type Value = IntegerPolynomial;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an ascending list of decimal-string coefficients")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(s) = seq.next_element::<String>()? {
                    coeffs.push(s.parse::<BigInt>().map_err(de::Error::custom)?);
                }
                Ok(IntegerPolynomial::new(coeffs))
            }
        }
        d.deserialize_seq(CoeffVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let f: IntegerPolynomial = "[-5, 0, 1]".parse().unwrap();
        assert_eq!(f, IntegerPolynomial::from_i64(&[-5, 0, 1]));
        assert_eq!(f.to_string(), "x^2 - 5");
        assert_eq!(f.to_coefficient_list(), "[-5, 0, 1]");
        let g: IntegerPolynomial = r#"["49", "0", 1764, "1624"]"#.parse().unwrap();
        assert_eq!(g.to_string(), "1624*x^3 + 1764*x^2 + 49");
        assert_eq!(IntegerPolynomial::from_i64(&[0, -1, -3]).to_string(), "-3*x^2 - x");
        assert!("[]".parse::<IntegerPolynomial>().unwrap().is_zero());
        let big: IntegerPolynomial = "[123456789012345678901234567890]".parse().unwrap();
        assert_eq!(big.coeffs()[0].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn parse_errors_name_position() {
        match "[1, x]".parse::<IntegerPolynomial>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            "[1, 2".parse::<IntegerPolynomial>(),
            Err(Error::Parse { position: 5, .. })
        ));
        assert!("1, 2]".parse::<IntegerPolynomial>().is_err());
        assert!("[1] x".parse::<IntegerPolynomial>().is_err());
    }

    #[test]
    fn json_is_decimal_strings() {
        let f = IntegerPolynomial::from_i64(&[-5, 0, 1]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"["-5","0","1"]"#);
        assert_eq!(serde_json::from_str::<IntegerPolynomial>(&json).unwrap(), f);
    }
}
