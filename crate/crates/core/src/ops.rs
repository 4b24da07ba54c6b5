//! Operator descriptors, their text syntax, and word application.
//!
//! Syntax: `a[k]`, `as[k]`, `E[i,j]`, `I`, `J<k>[n]`, `L[n]`, `Lw[n]`, `H[n]`.
//! A word is a whitespace-separated list, applied in the order written.

use std::fmt;
use std::str::FromStr;

use crate::algebra::ModVec;
use crate::error::{Error, Result};
use crate::weyl::{GlOp, WhittakerFrame};
use crate::winf::FieldOp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    A(i64),
    AStar(i64),
    E(GlOp),
    I,
    Field(FieldOp),
}

impl Op {
    pub fn apply(&self, v: &ModVec, frame: &WhittakerFrame) -> Result<ModVec> {
        match self {
            Op::A(k) => Ok(frame.act_a(*k, v)),
            Op::AStar(k) => Ok(frame.act_astar(*k, v)),
            Op::E(e) => Ok(frame.act_e(*e, v)),
            Op::I => Ok(frame.act_i(v)),
            Op::Field(f) => f.apply(v, frame),
        }
    }

    /// True for operators that commute with I, so descend to every quotient.
    pub fn commutes_with_i(&self) -> bool {
        !matches!(self, Op::A(_) | Op::AStar(_))
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::A(k) => write!(f, "a[{k}]"),
            Op::AStar(k) => write!(f, "as[{k}]"),
            Op::E(e) => write!(f, "E[{},{}]", e.i, e.j),
            Op::I => write!(f, "I"),
            Op::Field(x) => write!(f, "{x}"),
        }
    }
}

fn bracket_args(text: &str, head: &str, start: usize) -> Result<Vec<i64>> {
    let err = |msg: &str| Error::Parse { pos: start, msg: format!("{msg} in operator `{text}`") };
    let rest = &text[head.len()..];
    let inner = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(|| err("expected [..]"))?;
    inner.split(',').map(|p| p.trim().parse::<i64>().map_err(|_| err("expected integer"))).collect()
}

fn one_arg(text: &str, head: &str, start: usize) -> Result<i64> {
    match bracket_args(text, head, start)?.as_slice() {
        [n] => Ok(*n),
        _ => Err(Error::Parse { pos: start, msg: format!("expected one index in `{text}`") }),
    }
}

fn parse_at(text: &str, start: usize) -> Result<Op> {
    let t = text;
    if t == "I" {
        return Ok(Op::I);
    }
    if t.starts_with("as[") {
        return Ok(Op::AStar(one_arg(t, "as", start)?));
    }
    if t.starts_with("a[") {
        return Ok(Op::A(one_arg(t, "a", start)?));
    }
    if t.starts_with("E[") {
        return match bracket_args(t, "E", start)?.as_slice() {
            [i, j] => Ok(Op::E(GlOp::new(*i, *j))),
            _ => Err(Error::Parse { pos: start, msg: format!("expected two indices in `{t}`") }),
        };
    }
    if t.starts_with("Lw[") {
        return Ok(Op::Field(FieldOp::Lw(one_arg(t, "Lw", start)?)));
    }
    if t.starts_with("L[") {
        return Ok(Op::Field(FieldOp::L(one_arg(t, "L", start)?)));
    }
    if t.starts_with("H[") {
        return Ok(Op::Field(FieldOp::H(one_arg(t, "H", start)?)));
    }
    if let Some(rest) = t.strip_prefix('J') {
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        if let Ok(k) = digits.parse::<u32>() {
            let head = &t[..1 + digits.len()];
            return Ok(Op::Field(FieldOp::J { k, n: one_arg(t, head, start)? }));
        }
    }
    Err(Error::Parse { pos: start, msg: format!("unknown operator `{t}`") })
}

impl FromStr for Op {
    type Err = Error;

    fn from_str(s: &str) -> Result<Op> {
        parse_at(s.trim(), 0)
    }
}

/// Parses a whitespace-separated operator word.
pub fn parse_word(text: &str) -> Result<Vec<Op>> {
    let mut ops = Vec::new();
    let mut pos = 0;
    for piece in text.split_whitespace() {
        let start = pos + text[pos..].find(piece).unwrap_or(0);
        ops.push(parse_at(piece, start)?);
        pos = start + piece.len();
    }
    if ops.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty operator word".into() });
    }
    Ok(ops)
}

/// Applies the operators in order: the first listed acts first.
pub fn act_word(word: &[Op], v: &ModVec, frame: &WhittakerFrame) -> Result<ModVec> {
    let mut r = v.clone();
    for op in word {
        r = op.apply(&r, frame)?;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_vec;

    #[test]
    fn parse_all_forms() {
        let cases = ["a[0]", "as[-2]", "E[2,5]", "I", "J0[3]", "J1[-2]", "J3[0]", "L[0]", "Lw[-1]", "H[-4]"];
        for c in cases {
            let op: Op = c.parse().unwrap();
            assert_eq!(op.to_string(), c);
        }
        assert!("K[1]".parse::<Op>().is_err());
        assert!("E[1]".parse::<Op>().is_err());
        assert!(matches!(parse_word("I  Q[2]"), Err(Error::Parse { pos: 3, .. })));
    }

    #[test]
    fn word_examples() {
        let f = WhittakerFrame::default_frame();
        let w = ModVec::one();
        assert_eq!(act_word(&parse_word("a[0]").unwrap(), &w, &f).unwrap(), w);
        let ee = act_word(&parse_word("E[1,1] E[1,1]").unwrap(), &w, &f).unwrap();
        assert_eq!(ee, parse_vec("a[-1]^2 - a[-1]").unwrap());
        let ii = act_word(&parse_word("I I").unwrap(), &w, &f).unwrap();
        assert_eq!(ii, f.act_i(&f.act_i(&w)));
    }
}
