//! Generalized Whittaker modules W(alpha, beta) for gl(2l) realized on
//! C[a*_1..a*_l, a_(l+1)..a_(2l)], with symmetric normal ordering.
//!
//! a*_i is stored as S(i) and a_(l+j) as A(l+j), so one ModVec type serves both
//! the infinite and the finite module.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::scalar::{format_scalar, frac, int, Scalar};
use crate::algebra::text::{format_vec_styled, parse_vec_styled};
use crate::algebra::{Echelon, GenVar, ModVec, Monomial, VarKind, VarStyle};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlFrame {
    ell: u32,
    alpha: Vec<Scalar>,
    beta: Vec<Scalar>,
    i_a: Option<u32>,
    i_b: Option<u32>,
}

/// Polynomial vector of W(alpha, beta).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FinVec(pub ModVec);

impl fmt::Display for FinVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_vec_styled(&self.0, VarStyle::Indexed))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FinGen {
    A,
    AStar,
}

impl GlFrame {
    pub fn new(alpha: Vec<Scalar>, beta: Vec<Scalar>) -> Result<Self> {
        if alpha.is_empty() || alpha.len() != beta.len() {
            return Err(Error::Hypothesis(format!("alpha and beta need the same length l >= 1, got {} and {}", alpha.len(), beta.len())));
        }
        Ok(GlFrame { ell: alpha.len() as u32, alpha, beta, i_a: None, i_b: None })
    }

    pub fn from_ints(alpha: &[i64], beta: &[i64]) -> Result<Self> {
        GlFrame::new(alpha.iter().map(|&x| int(x)).collect(), beta.iter().map(|&x| int(x)).collect())
    }

    pub fn with_pivots(mut self, i_a: Option<u32>, i_b: Option<u32>) -> Self {
        self.i_a = i_a;
        self.i_b = i_b;
        self
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// alpha_i for 1 <= i <= l.
    pub fn alpha(&self, i: u32) -> Scalar {
        self.alpha[i as usize - 1].clone()
    }

    /// beta_j for 1 <= j <= l.
    pub fn beta(&self, j: u32) -> Scalar {
        self.beta[j as usize - 1].clone()
    }

    fn pivot(values: &[Scalar], chosen: Option<u32>, name: &str) -> Result<u32> {
        let p = match chosen {
            Some(p) => p,
            None => match values.iter().rposition(|c| !c.is_zero()) {
                Some(i) => i as u32 + 1,
                None => return Err(Error::Hypothesis(format!("{name} = 0: no pivot"))),
            },
        };
        if p == 0 || p as usize > values.len() || values[p as usize - 1].is_zero() {
            return Err(Error::Hypothesis(format!("{name}_{p} is not a valid nonzero pivot")));
        }
        Ok(p)
    }

    pub fn i_a(&self) -> Result<u32> {
        GlFrame::pivot(&self.alpha, self.i_a, "alpha")
    }

    pub fn i_b(&self) -> Result<u32> {
        GlFrame::pivot(&self.beta, self.i_b, "beta")
    }

    fn check_index(&self, i: u32) -> Result<()> {
        if i == 0 || i > 2 * self.ell {
            return Err(Error::IndexRange { pos: 0, msg: format!("index {i} outside 1..{}", 2 * self.ell) });
        }
        Ok(())
    }

    /// Rejects variables that do not belong to the module.
    pub fn check_vec(&self, v: &ModVec) -> Result<()> {
        for m in v.monomials() {
            for (x, _) in m.factors() {
                let ok = match x.kind {
                    VarKind::S => (1..=self.ell).contains(&x.index),
                    VarKind::A => (self.ell + 1..=2 * self.ell).contains(&x.index),
                };
                if !ok {
                    let name = crate::algebra::text::format_var(*x, VarStyle::Indexed);
                    return Err(Error::IndexRange { pos: 0, msg: format!("variable {name} is not in this module") });
                }
            }
        }
        Ok(())
    }

    pub fn parse(&self, text: &str) -> Result<FinVec> {
        let v = parse_vec_styled(text, VarStyle::Indexed)?;
        self.check_vec(&v)?;
        Ok(FinVec(v))
    }

    /// The 2l module variables: a*_1..a*_l, then a_(l+1)..a_(2l).
    pub fn variables(&self) -> Vec<GenVar> {
        let l = self.ell;
        (1..=l).map(GenVar::s).chain((l + 1..=2 * l).map(GenVar::a)).collect()
    }
}

impl fmt::Display for GlFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.alpha.iter().map(format_scalar).collect();
        let b: Vec<String> = self.beta.iter().map(format_scalar).collect();
        write!(f, "ell={} alpha=({}) beta=({})", self.ell, a.join(","), b.join(","))
    }
}

/// a_i or a*_i, 1 <= i <= 2l.
pub fn act_gen_fin(kind: FinGen, i: u32, v: &FinVec, g: &GlFrame) -> Result<FinVec> {
    g.check_index(i)?;
    let l = g.ell;
    let v = &v.0;
    Ok(FinVec(match (kind, i <= l) {
        (FinGen::A, true) => {
            let mut r = v.scaled(&g.alpha(i));
            r.add_assign(&v.derive_var(GenVar::s(i)));
            r
        }
        (FinGen::AStar, true) => v.mul_var(GenVar::s(i)),
        (FinGen::A, false) => v.mul_var(GenVar::a(i)),
        (FinGen::AStar, false) => {
            let mut r = v.scaled(&g.beta(i - l));
            r.sub_assign(&v.derive_var(GenVar::a(i)));
            r
        }
    }))
}

/// e_(i,j) = (1/2)(a_i a*_j + a*_j a_i).
pub fn act_e_fin(i: u32, j: u32, v: &FinVec, g: &GlFrame) -> Result<FinVec> {
    let x = act_gen_fin(FinGen::A, i, &act_gen_fin(FinGen::AStar, j, v, g)?, g)?;
    let y = act_gen_fin(FinGen::AStar, j, &act_gen_fin(FinGen::A, i, v, g)?, g)?;
    Ok(FinVec((x.0 + y.0).scaled(&frac(1, 2))))
}

/// I = sum_i e_(i,i).
pub fn act_i_fin(v: &FinVec, g: &GlFrame) -> Result<FinVec> {
    let mut r = ModVec::zero();
    for i in 1..=2 * g.ell {
        r.add_assign(&act_e_fin(i, i, v, g)?.0);
    }
    Ok(FinVec(r))
}

/// I w written out from alpha and beta.
pub fn iw_fin(g: &GlFrame) -> ModVec {
    let l = g.ell;
    let mut iw = ModVec::zero();
    for i in 1..=l {
        iw.add_scaled(&ModVec::var(GenVar::s(i)), &g.alpha(i));
        iw.add_scaled(&ModVec::var(GenVar::a(l + i)), &g.beta(i));
    }
    iw
}

/// Closed form of I: (#a* - #a) per term plus multiplication by I w.
pub fn act_i_fin_closed(v: &FinVec, g: &GlFrame) -> FinVec {
    let mut r = v.0.map_linear(|m| ModVec::term(m.clone(), int(-m.charge())));
    r.add_assign(&v.0.mul_poly(&iw_fin(g)));
    FinVec(r)
}

pub fn ipow_w_fin(k: u32, g: &GlFrame) -> FinVec {
    (0..k).fold(FinVec(ModVec::one()), |v, _| act_i_fin_closed(&v, g))
}

/// Pivot-free representative of v modulo (I - d), eliminating a*_(iA).
pub fn quotient_fin(v: &FinVec, d: &Scalar, g: &GlFrame) -> Result<FinVec> {
    let i_a = g.i_a()?;
    g.i_b()?;
    let l = g.ell;
    let piv = GenVar::s(i_a);
    let inv = Scalar::one() / g.alpha(i_a);
    let mut rest = v.0.clone();
    let mut out = ModVec::zero();
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        rest.add_term(m.clone(), -c.clone());
        let Some((_, u)) = m.divide(piv) else {
            out.add_term(m, c);
            continue;
        };
        let f = &c * &inv;
        rest.add_term(u.clone(), &f * (d + int(u.charge())));
        for i in 1..=l {
            if i != i_a {
                rest.add_term(u.times(GenVar::s(i)), -(&f * g.alpha(i)));
            }
            rest.add_term(u.times(GenVar::a(l + i)), -(&f * g.beta(i)));
        }
    }
    Ok(FinVec(out))
}

/// Der_a(p) = -(1/alpha_iA)(e_(iA, l+p) - alpha_iA beta_p).
pub fn der_a_fin(p: u32, v: &FinVec, g: &GlFrame) -> Result<FinVec> {
    let i_a = g.i_a()?;
    let a = g.alpha(i_a);
    let mut r = act_e_fin(i_a, g.ell + p, v, g)?.0;
    r.add_scaled(&v.0, &-(&a * g.beta(p)));
    Ok(FinVec(r.scaled(&-(Scalar::one() / a))))
}

/// Der_as(p) = (1/beta_iB)(e_(p, l+iB) - alpha_p beta_iB), p != iA.
pub fn der_s_fin(p: u32, v: &FinVec, g: &GlFrame) -> Result<FinVec> {
    let i_b = g.i_b()?;
    if p == g.i_a()? {
        return Err(Error::Hypothesis(format!("Der_as({p}) requires p != iA")));
    }
    let b = g.beta(i_b);
    let mut r = act_e_fin(p, g.ell + i_b, v, g)?.0;
    r.add_scaled(&v.0, &-(g.alpha(p) * &b));
    Ok(FinVec(r.scaled(&(Scalar::one() / b))))
}

fn probe_target(v: &ModVec) -> Option<Monomial> {
    v.monomials().max_by(|x, y| x.a_degree().cmp(&y.a_degree()).then(x.s_degree().cmp(&y.s_degree())).then(x.cmp(y))).cloned()
}

/// Reduces a nonzero quotient vector to sigma [w]; retries after multiplying
/// by a_(l+1) when the survivor vanishes.
pub fn cyclicity_probe_fin(q: &FinVec, d: &Scalar, g: &GlFrame, max_retries: u32) -> Result<Scalar> {
    g.i_a()?;
    g.i_b()?;
    let mut cur = quotient_fin(q, d, g)?;
    if cur.0.is_zero() {
        return Err(Error::Hypothesis("cyclicity probe needs a nonzero quotient vector".into()));
    }
    let l = g.ell;
    for _ in 0..=max_retries {
        let target = probe_target(&cur.0).expect("nonzero");
        let mut v = cur.clone();
        for (x, e) in target.factors().iter().filter(|(x, _)| x.is_a()) {
            for _ in 0..*e {
                v = quotient_fin(&der_a_fin(x.index - l, &v, g)?, d, g)?;
            }
        }
        if let Some(top) = probe_target(&v.0) {
            for (x, e) in top.factors().iter().filter(|(x, _)| !x.is_a()) {
                for _ in 0..*e {
                    v = quotient_fin(&der_s_fin(x.index, &v, g)?, d, g)?;
                }
            }
        }
        match v.0.as_scalar() {
            Some(s) if !s.is_zero() => return Ok(s),
            _ => cur = quotient_fin(&FinVec(cur.0.mul_var(GenVar::a(l + 1))), d, g)?,
        }
    }
    Err(Error::ProbeFailed(format!("no nonzero multiple of w from {}", q)))
}

/// All monomials of total degree at most `max_degree` in the module variables.
pub fn enumerate_fin(g: &GlFrame, max_degree: u32) -> Vec<Monomial> {
    fn rec(vars: &[GenVar], budget: u32, cur: Monomial, out: &mut Vec<Monomial>) {
        let Some((&x, rest)) = vars.split_first() else {
            out.push(cur);
            return;
        };
        for e in 0..=budget {
            rec(rest, budget - e, cur.times_pow(x, e), out);
        }
    }
    let mut out = Vec::new();
    rec(&g.variables(), max_degree, Monomial::one(), &mut out);
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.cmp(b)));
    out
}

/// Whittaker vectors of degree at most `max_degree` for the pair spanned by
/// e_(i, l+j), as a reduced echelon basis.
pub fn whittaker_space_fin(g: &GlFrame, max_degree: u32) -> Result<Vec<ModVec>> {
    g.i_a()?;
    g.i_b()?;
    let l = g.ell;
    let mut space: Vec<ModVec> = enumerate_fin(g, max_degree).into_iter().map(ModVec::monomial).collect();
    for i in 1..=2 * l {
        for j in 1..=l {
            let value = if i <= l { g.alpha(i) * g.beta(j) } else { continue };
            let mut images = Vec::with_capacity(space.len());
            for v in &space {
                let mut r = act_e_fin(i, l + j, &FinVec(v.clone()), g)?.0;
                r.add_scaled(v, &-value.clone());
                images.push(r);
            }
            let ker = crate::algebra::kernel_of_images(&images);
            space = ker
                .iter()
                .map(|c| {
                    let mut v = ModVec::zero();
                    for (b, x) in space.iter().zip(c) {
                        v.add_scaled(b, x);
                    }
                    v
                })
                .collect();
        }
    }
    let mut e = Echelon::new();
    for v in &space {
        e.insert(v);
    }
    Ok(e.reduced_basis())
}

/// Span of all e-words of length at most `len` applied to w.
pub fn word_span(g: &GlFrame, len: u32) -> Result<Echelon> {
    let n = 2 * g.ell;
    let mut span = Echelon::new();
    span.insert(&ModVec::one());
    let mut frontier = vec![ModVec::one()];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in &frontier {
            for i in 1..=n {
                for j in 1..=n {
                    let r = act_e_fin(i, j, &FinVec(v.clone()), g)?.0;
                    if span.insert(&r) {
                        next.push(r);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(span)
}

/// Number of monomials of degree at most `max_degree` lying in the span of
/// e-words of length at most `len` applied to w.
pub fn reachable_monomials(g: &GlFrame, len: u32, max_degree: u32) -> Result<usize> {
    let span = word_span(g, len)?;
    Ok(enumerate_fin(g, max_degree).into_iter().filter(|m| span.contains(&ModVec::monomial(m.clone()))).count())
}

/// Number of monomials of degree at most k in 2l variables.
pub fn truncation_dimension(g: &GlFrame, k: u32) -> usize {
    enumerate_fin(g, k).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g1() -> GlFrame {
        GlFrame::from_ints(&[1], &[2]).unwrap()
    }

    #[test]
    fn generator_examples() {
        let g = g1();
        let w = FinVec(ModVec::one());
        assert_eq!(act_gen_fin(FinGen::A, 1, &w, &g).unwrap(), w);
        assert_eq!(act_gen_fin(FinGen::AStar, 2, &w, &g).unwrap().0, ModVec::one().scaled(&int(2)));
        assert!(act_gen_fin(FinGen::A, 3, &w, &g).is_err());
    }

    #[test]
    fn gl_examples() {
        let g = g1();
        let w = FinVec(ModVec::one());
        assert_eq!(act_e_fin(1, 2, &w, &g).unwrap().0, ModVec::one().scaled(&int(2)));
        assert_eq!(act_e_fin(1, 1, &w, &g).unwrap().to_string(), "1/2 + as_1");
        assert_eq!(act_i_fin(&w, &g).unwrap().to_string(), "as_1 + 2*a_2");
        let z = GlFrame::from_ints(&[0], &[0]).unwrap();
        assert!(act_i_fin(&w, &z).unwrap().0.is_zero());
    }

    #[test]
    fn quotient_and_probe() {
        let g = g1();
        let d = int(3);
        let iw = FinVec(ipow_w_fin(1, &g).0 - ModVec::one().scaled(&d));
        assert!(quotient_fin(&iw, &d, &g).unwrap().0.is_zero());
        let q = g.parse("a_2").unwrap();
        assert!(!cyclicity_probe_fin(&q, &d, &g, 2).unwrap().is_zero());
    }

    #[test]
    fn solver_and_words() {
        let g = g1();
        let basis = whittaker_space_fin(&g, 3).unwrap();
        let expected: Vec<ModVec> = (0..=3).map(|k| ipow_w_fin(k, &g).0).collect();
        assert!(crate::algebra::same_span(&basis, &expected));
        assert_eq!(reachable_monomials(&g, 3, 3).unwrap(), truncation_dimension(&g, 3));
    }
}
