//! Sparse module vectors: finite combinations of monomials applied to w.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::monomial::{GenVar, Monomial};
use super::scalar::{int, Scalar};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModVec {
    terms: BTreeMap<Monomial, Scalar>,
}

impl ModVec {
    pub fn zero() -> Self {
        ModVec::default()
    }

    /// The distinguished vector w (or the vacuum 1).
    pub fn one() -> Self {
        ModVec::monomial(Monomial::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        ModVec::term(m, int(1))
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut v = ModVec::zero();
        v.add_term(m, c);
        v
    }

    pub fn var(x: GenVar) -> Self {
        ModVec::monomial(Monomial::var(x))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Largest monomial strictly below `bound`.
    pub fn last_below(&self, bound: &Monomial) -> Option<&Monomial> {
        self.terms.range(..bound).next_back().map(|(m, _)| m)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// self += c * other
    pub fn add_scaled(&mut self, other: &ModVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn add_assign(&mut self, other: &ModVec) {
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &ModVec) {
        for (m, a) in &other.terms {
            self.add_term(m.clone(), -a.clone());
        }
    }

    /// Returns u + c*v.
    pub fn arith(u: &ModVec, v: &ModVec, c: &Scalar) -> ModVec {
        let mut r = u.clone();
        r.add_scaled(v, c);
        r
    }

    pub fn scaled(&self, c: &Scalar) -> ModVec {
        if c.is_zero() {
            return ModVec::zero();
        }
        ModVec { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_var(&self, x: GenVar) -> ModVec {
        ModVec { terms: self.terms.iter().map(|(m, a)| (m.times(x), a.clone())).collect() }
    }

    pub fn mul_monomial(&self, y: &Monomial) -> ModVec {
        ModVec { terms: self.terms.iter().map(|(m, a)| (m.mul(y), a.clone())).collect() }
    }

    /// Polynomial product, treating both vectors as polynomials times w.
    pub fn mul_poly(&self, other: &ModVec) -> ModVec {
        let mut r = ModVec::zero();
        for (m, a) in &other.terms {
            for (n, b) in &self.terms {
                r.add_term(n.mul(m), a * b);
            }
        }
        r
    }

    pub fn derive_var(&self, x: GenVar) -> ModVec {
        let mut r = ModVec::zero();
        for (m, a) in &self.terms {
            if let Some((e, rest)) = m.divide(x) {
                r.add_term(rest, a * int(e as i64));
            }
        }
        r
    }

    pub fn max_a_index(&self) -> u32 {
        self.terms.keys().filter_map(|m| m.max_a_index()).max().unwrap_or(0)
    }

    pub fn max_s_index(&self) -> u32 {
        self.terms.keys().filter_map(|m| m.max_s_index()).max().unwrap_or(0)
    }

    pub fn max_weight(&self) -> u64 {
        self.terms.keys().map(|m| m.weight()).max().unwrap_or(0)
    }

    pub fn max_var_index(&self) -> u32 {
        self.max_a_index().max(self.max_s_index())
    }

    pub fn contains_var(&self, x: GenVar) -> bool {
        self.terms.keys().any(|m| m.contains(x))
    }

    /// Keeps only the terms whose monomial satisfies the predicate.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> ModVec {
        ModVec {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, a)| (m.clone(), a.clone())).collect(),
        }
    }

    /// Applies a linear map given on monomials.
    pub fn map_linear(&self, mut f: impl FnMut(&Monomial) -> ModVec) -> ModVec {
        let mut r = ModVec::zero();
        for (m, a) in &self.terms {
            r.add_scaled(&f(m), a);
        }
        r
    }

    /// Fallible variant of [`ModVec::map_linear`].
    pub fn try_map_linear<E>(&self, mut f: impl FnMut(&Monomial) -> Result<ModVec, E>) -> Result<ModVec, E> {
        let mut r = ModVec::zero();
        for (m, a) in &self.terms {
            r.add_scaled(&f(m)?, a);
        }
        Ok(r)
    }

    /// If the vector is c*w, returns c (zero for the zero vector).
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }
}

impl FromIterator<(Monomial, Scalar)> for ModVec {
    fn from_iter<I: IntoIterator<Item = (Monomial, Scalar)>>(iter: I) -> Self {
        let mut v = ModVec::zero();
        for (m, c) in iter {
            v.add_term(m, c);
        }
        v
    }
}

impl Add for &ModVec {
    type Output = ModVec;
    fn add(self, rhs: &ModVec) -> ModVec {
        let mut r = self.clone();
        r.add_assign(rhs);
        r
    }
}

impl Sub for &ModVec {
    type Output = ModVec;
    fn sub(self, rhs: &ModVec) -> ModVec {
        let mut r = self.clone();
        r.sub_assign(rhs);
        r
    }
}

impl Add for ModVec {
    type Output = ModVec;
    fn add(mut self, rhs: ModVec) -> ModVec {
        self.add_assign(&rhs);
        self
    }
}

impl Sub for ModVec {
    type Output = ModVec;
    fn sub(mut self, rhs: ModVec) -> ModVec {
        self.sub_assign(&rhs);
        self
    }
}

impl Neg for &ModVec {
    type Output = ModVec;
    fn neg(self) -> ModVec {
        self.scaled(&int(-1))
    }
}

impl fmt::Display for ModVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_vec(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::frac;

    fn w() -> ModVec {
        ModVec::one()
    }

    #[test]
    fn arith_examples() {
        assert_eq!(ModVec::arith(&w(), &w(), &int(1)), w().scaled(&int(2)));
        assert!(ModVec::arith(&w(), &w(), &int(-1)).is_zero());
        let a1 = ModVec::var(GenVar::a(1));
        let s0 = ModVec::var(GenVar::s(0));
        let r = ModVec::arith(&a1, &s0, &frac(1, 2));
        assert_eq!(r.coeff(&Monomial::var(GenVar::a(1))), int(1));
        assert_eq!(r.coeff(&Monomial::var(GenVar::s(0))), frac(1, 2));
    }

    #[test]
    fn mul_and_derive_examples() {
        let a1 = GenVar::a(1);
        assert_eq!(w().mul_var(a1), ModVec::var(a1));
        let sq = ModVec::var(a1).mul_var(a1);
        assert_eq!(sq.derive_var(a1), ModVec::var(a1).scaled(&int(2)));
        assert!(ModVec::var(GenVar::s(0)).derive_var(a1).is_zero());
        let m = ModVec::var(GenVar::a(2)).mul_var(GenVar::s(0));
        assert_eq!(m.derive_var(GenVar::s(0)), ModVec::var(GenVar::a(2)));
    }
}
