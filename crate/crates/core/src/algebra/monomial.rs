//! Creation variables and monomials in them.

use std::fmt;

/// `S` sorts before `A`, which fixes the canonical term order of vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    S,
    A,
}

/// `A(n)` is the creation generator a(-n), n >= 1; `S(m)` is a*(-m), m >= 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenVar {
    pub kind: VarKind,
    pub index: u32,
}

impl GenVar {
    pub fn a(n: u32) -> Self {
        assert!(n >= 1, "A-variable index must be at least 1");
        GenVar { kind: VarKind::A, index: n }
    }

    pub fn s(m: u32) -> Self {
        GenVar { kind: VarKind::S, index: m }
    }

    pub fn is_a(&self) -> bool {
        self.kind == VarKind::A
    }

    pub fn weight(&self) -> u64 {
        match self.kind {
            VarKind::A => self.index as u64,
            VarKind::S => self.index as u64 + 1,
        }
    }
}

impl fmt::Display for GenVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::A => write!(f, "a[-{}]", self.index),
            VarKind::S if self.index == 0 => write!(f, "as[0]"),
            VarKind::S => write!(f, "as[-{}]", self.index),
        }
    }
}

/// Sorted list of (variable, positive exponent).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(GenVar, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(x: GenVar) -> Self {
        Monomial(vec![(x, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (GenVar, u32)>) -> Self {
        let mut m = Monomial::one();
        for (x, e) in pairs {
            m = m.times_pow(x, e);
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(GenVar, u32)] {
        &self.0
    }

    pub fn exponent(&self, x: GenVar) -> u32 {
        match self.0.binary_search_by(|(y, _)| y.cmp(&x)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn times_pow(&self, x: GenVar, e: u32) -> Self {
        if e == 0 {
            return self.clone();
        }
        let mut v = self.0.clone();
        match v.binary_search_by(|(y, _)| y.cmp(&x)) {
            Ok(i) => v[i].1 += e,
            Err(i) => v.insert(i, (x, e)),
        }
        Monomial(v)
    }

    pub fn times(&self, x: GenVar) -> Self {
        self.times_pow(x, 1)
    }

    pub fn mul(&self, other: &Monomial) -> Self {
        let mut m = self.clone();
        for &(x, e) in &other.0 {
            m = m.times_pow(x, e);
        }
        m
    }

    /// Returns (exponent, monomial / x) when x divides the monomial.
    pub fn divide(&self, x: GenVar) -> Option<(u32, Monomial)> {
        let i = self.0.binary_search_by(|(y, _)| y.cmp(&x)).ok()?;
        let e = self.0[i].1;
        let mut v = self.0.clone();
        if e == 1 {
            v.remove(i);
        } else {
            v[i].1 -= 1;
        }
        Some((e, Monomial(v)))
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|(x, e)| x.weight() * *e as u64).sum()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn a_degree(&self) -> u32 {
        self.0.iter().filter(|(x, _)| x.is_a()).map(|(_, e)| e).sum()
    }

    pub fn s_degree(&self) -> u32 {
        self.degree() - self.a_degree()
    }

    /// Number of A-factors minus number of S-factors.
    pub fn charge(&self) -> i64 {
        self.a_degree() as i64 - self.s_degree() as i64
    }

    pub fn max_a_index(&self) -> Option<u32> {
        self.0.iter().filter(|(x, _)| x.is_a()).map(|(x, _)| x.index).max()
    }

    pub fn max_s_index(&self) -> Option<u32> {
        self.0.iter().filter(|(x, _)| !x.is_a()).map(|(x, _)| x.index).max()
    }

    pub fn contains(&self, x: GenVar) -> bool {
        self.exponent(x) > 0
    }

    /// Factors in display order: A-variables first, higher indices first.
    pub fn display_factors(&self) -> Vec<(GenVar, u32)> {
        let mut v = self.0.clone();
        v.sort_by(|(x, _), (y, _)| y.kind.cmp(&x.kind).then(y.index.cmp(&x.index)));
        v
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .display_factors()
            .into_iter()
            .map(|(x, e)| if e == 1 { x.to_string() } else { format!("{x}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// All monomials of weight at most `max_weight` over the allowed variables,
/// graded by weight and then in the canonical monomial order.
pub fn enumerate_monomials(max_weight: u64, allow: impl Fn(GenVar) -> bool) -> Vec<Monomial> {
    let mut vars = Vec::new();
    for w in 1..=max_weight as u32 {
        for x in [GenVar::s(w - 1), GenVar::a(w)] {
            if allow(x) {
                vars.push(x);
            }
        }
    }
    let mut out = Vec::new();
    fn rec(vars: &[GenVar], budget: u64, cur: Monomial, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => out.push(cur),
            Some((&x, rest)) => {
                let mut m = cur;
                let mut used = 0;
                loop {
                    rec(rest, budget - used, m.clone(), out);
                    used += x.weight();
                    if used > budget {
                        break;
                    }
                    m = m.times(x);
                }
            }
        }
    }
    rec(&vars, max_weight, Monomial::one(), &mut out);
    out.sort_by(|a, b| a.weight().cmp(&b.weight()).then(a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_monomials(0, |_| true), vec![Monomial::one()]);
        assert_eq!(
            enumerate_monomials(1, |_| true),
            vec![Monomial::one(), Monomial::var(GenVar::s(0)), Monomial::var(GenVar::a(1))]
        );
        assert_eq!(
            enumerate_monomials(1, |x| x != GenVar::s(0)),
            vec![Monomial::one(), Monomial::var(GenVar::a(1))]
        );
    }

    #[test]
    fn charge_and_weight() {
        let m = Monomial::from_pairs([(GenVar::a(1), 2), (GenVar::s(0), 1)]);
        assert_eq!(m.weight(), 3);
        assert_eq!(m.charge(), 1);
        assert_eq!(m.to_string(), "a[-1]^2*as[0]");
    }
}
