//! Canonical text and JSON forms of vectors.
//!
//! Grammar: `vector := term (('+'|'-') term)*`, `term := coeff ('*' var)* | var ('*' var)*`,
//! `coeff := integer | integer '/' positive-integer`, `var := 'a[' negint ']' ('^' posint)?
//! | 'as[' nonposint ']' ('^' posint)?`. A leading sign is accepted, and `0` is the
//! zero vector.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::monomial::{GenVar, Monomial, VarKind};
use super::scalar::{format_scalar, Scalar};
use super::vector::ModVec;
use crate::error::{Error, Result};

/// How variables are spelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarStyle {
    /// `a[-n]`, `as[-m]` for the infinite module.
    Modes,
    /// `as_i`, `a_i` for the finite gl(2l) module.
    Indexed,
}

pub fn format_var(x: GenVar, style: VarStyle) -> String {
    match style {
        VarStyle::Modes => x.to_string(),
        VarStyle::Indexed => match x.kind {
            VarKind::A => format!("a_{}", x.index),
            VarKind::S => format!("as_{}", x.index),
        },
    }
}

pub fn format_monomial(m: &Monomial, style: VarStyle) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.display_factors()
        .into_iter()
        .map(|(x, e)| {
            let v = format_var(x, style);
            if e == 1 {
                v
            } else {
                format!("{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn format_vec(v: &ModVec) -> String {
    format_vec_styled(v, VarStyle::Modes)
}

pub fn format_vec_styled(v: &ModVec, style: VarStyle) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in v.iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        if m.is_one() {
            out.push_str(&format_scalar(&a));
        } else if a.is_one() {
            out.push_str(&format_monomial(m, style));
        } else {
            out.push_str(&format_scalar(&a));
            out.push('*');
            out.push_str(&format_monomial(m, style));
        }
    }
    out
}

pub fn parse_vec(text: &str) -> Result<ModVec> {
    Parser::new(text, VarStyle::Modes).vector()
}

pub fn parse_vec_styled(text: &str, style: VarStyle) -> Result<ModVec> {
    Parser::new(text, style).vector()
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    style: VarStyle,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, style: VarStyle) -> Self {
        Parser { s: text.as_bytes(), pos: 0, style }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        self.ws();
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            self.err(format!("expected {lit:?}"))
        }
    }

    fn vector(&mut self) -> Result<ModVec> {
        let mut v = ModVec::zero();
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let mut sign = if self.eat(b'-') {
            -Scalar::one()
        } else {
            self.eat(b'+');
            Scalar::one()
        };
        loop {
            let (m, c) = self.term()?;
            v.add_term(m, c * &sign);
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = Scalar::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Scalar::one();
                }
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let mut m = Monomial::one();
        let mut c = Scalar::one();
        match self.peek() {
            Some(d) if d.is_ascii_digit() => {
                c = self.coeff()?;
                if !self.eat(b'*') {
                    return Ok((m, c));
                }
            }
            Some(b'a') => {}
            _ => return self.err("expected coefficient or variable"),
        }
        loop {
            let (x, e) = self.var()?;
            m = m.times_pow(x, e);
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((m, c))
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(t.parse().expect("digit run parses"))
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = self.eat(b'-');
        let d = self.digits()?;
        Ok(if neg { -d } else { d })
    }

    fn coeff(&mut self) -> Result<Scalar> {
        let n = self.digits()?;
        if self.eat(b'/') {
            let d = self.digits()?;
            if d.is_zero() {
                return self.err("denominator must be positive");
            }
            Ok(Scalar::new(n, d))
        } else {
            Ok(Scalar::from_integer(n))
        }
    }

    fn small(&self, n: &BigInt, at: usize) -> Result<i64> {
        i64::try_from(n).map_err(|_| Error::IndexRange { pos: at, msg: "index too large".into() })
    }

    fn var(&mut self) -> Result<(GenVar, u32)> {
        self.ws();
        let at = self.pos;
        let x = match self.style {
            VarStyle::Modes => {
                let star = if self.s[self.pos..].starts_with(b"as[") {
                    self.pos += 3;
                    true
                } else if self.s[self.pos..].starts_with(b"a[") {
                    self.pos += 2;
                    false
                } else {
                    return self.err("expected 'a[' or 'as['");
                };
                let k = self.signed_int()?;
                let k = self.small(&k, at)?;
                self.expect("]")?;
                if star {
                    if k > 0 {
                        return Err(Error::IndexRange { pos: at, msg: format!("S-index out of range: as[{k}]") });
                    }
                    GenVar::s((-k) as u32)
                } else {
                    if k > -1 {
                        return Err(Error::IndexRange { pos: at, msg: format!("A-index out of range: a[{k}]") });
                    }
                    GenVar::a((-k) as u32)
                }
            }
            VarStyle::Indexed => {
                let star = if self.s[self.pos..].starts_with(b"as_") {
                    self.pos += 3;
                    true
                } else if self.s[self.pos..].starts_with(b"a_") {
                    self.pos += 2;
                    false
                } else {
                    return self.err("expected 'a_' or 'as_'");
                };
                let k = self.digits()?;
                let k = self.small(&k, at)?;
                if k < 1 {
                    return Err(Error::IndexRange { pos: at, msg: "index must be at least 1".into() });
                }
                if star {
                    GenVar::s(k as u32)
                } else {
                    GenVar::a(k as u32)
                }
            }
        };
        let mut e = 1u32;
        if self.eat(b'^') {
            let p = self.digits()?;
            e = u32::try_from(&p).map_err(|_| Error::Parse { pos: self.pos, msg: "exponent too large".into() })?;
            if e == 0 {
                return self.err("exponent must be positive");
            }
        }
        Ok((x, e))
    }
}

fn var_json(x: GenVar, e: u32, style: VarStyle) -> Value {
    match (style, x.kind) {
        (VarStyle::Modes, VarKind::A) => json!(["a", -(x.index as i64), e]),
        (VarStyle::Modes, VarKind::S) => json!(["as", -(x.index as i64), e]),
        (VarStyle::Indexed, VarKind::A) => json!(["a", x.index, e]),
        (VarStyle::Indexed, VarKind::S) => json!(["as", x.index, e]),
    }
}

pub fn vec_to_json(v: &ModVec) -> Value {
    vec_to_json_styled(v, VarStyle::Modes)
}

pub fn vec_to_json_styled(v: &ModVec, style: VarStyle) -> Value {
    let terms: Vec<Value> = v
        .iter()
        .map(|(m, c)| {
            let vars: Vec<Value> = m.display_factors().into_iter().map(|(x, e)| var_json(x, e, style)).collect();
            json!({"coeff": format_scalar(c), "vars": vars})
        })
        .collect();
    json!({ "terms": terms })
}

pub fn vec_from_json(value: &Value) -> Result<ModVec> {
    let bad = |msg: &str| Error::Parse { pos: 0, msg: msg.to_string() };
    let terms = value.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms array"))?;
    let mut v = ModVec::zero();
    for t in terms {
        let c = t.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("missing coeff"))?;
        let c = super::scalar::parse_scalar(c)?;
        let mut m = Monomial::one();
        for var in t.get("vars").and_then(Value::as_array).ok_or_else(|| bad("missing vars"))? {
            let kind = var.get(0).and_then(Value::as_str).ok_or_else(|| bad("bad var kind"))?;
            let k = var.get(1).and_then(Value::as_i64).ok_or_else(|| bad("bad var index"))?;
            let e = var.get(2).and_then(Value::as_u64).ok_or_else(|| bad("bad exponent"))?;
            let x = match kind {
                "a" if k <= -1 => GenVar::a((-k) as u32),
                "as" if k <= 0 => GenVar::s((-k) as u32),
                _ => return Err(Error::IndexRange { pos: 0, msg: format!("bad variable {kind}[{k}]") }),
            };
            if e == 0 {
                return Err(bad("exponent must be positive"));
            }
            m = m.times_pow(x, e as u32);
        }
        v.add_term(m, c);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{frac, int};

    #[test]
    fn parse_examples() {
        assert_eq!(parse_vec("1").unwrap(), ModVec::one());
        let v = parse_vec("3/2*a[-1]^2*as[0]").unwrap();
        let m = Monomial::from_pairs([(GenVar::a(1), 2), (GenVar::s(0), 1)]);
        assert_eq!(v, ModVec::term(m, frac(3, 2)));
        assert!(matches!(parse_vec("a[0]"), Err(Error::IndexRange { pos: 0, .. })));
        assert!(matches!(parse_vec("as[1]"), Err(Error::IndexRange { .. })));
        assert!(matches!(parse_vec("1 + * a[-1]"), Err(Error::Parse { pos: 4, .. })));
        assert_eq!(parse_vec("0").unwrap(), ModVec::zero());
        assert_eq!(parse_vec("-a[-1] + a[-1]").unwrap(), ModVec::zero());
    }

    #[test]
    fn format_examples() {
        let v = parse_vec("a[-1] + 2*as[-1] + as[0]").unwrap();
        assert_eq!(format_vec(&v), "as[0] + 2*as[-1] + a[-1]");
        assert_eq!(format_vec(&ModVec::one().scaled(&int(-2))), "-2");
        assert_eq!(format_vec(&ModVec::zero()), "0");
    }

    #[test]
    fn json_form() {
        let v = parse_vec("3/2*a[-1]^2*as[0]").unwrap();
        let j = vec_to_json(&v);
        assert_eq!(j.to_string(), r#"{"terms":[{"coeff":"3/2","vars":[["a",-1,2],["as",0,1]]}]}"#);
        assert_eq!(vec_from_json(&j).unwrap(), v);
    }

    #[test]
    fn indexed_style() {
        let v = parse_vec_styled("as_1 + 2*a_2", VarStyle::Indexed).unwrap();
        assert_eq!(format_vec_styled(&v, VarStyle::Indexed), "as_1 + 2*a_2");
    }
}
