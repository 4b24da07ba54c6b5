//! The Whittaker module M1(lambda, mu) of the Weyl algebra, its spectral-flow
//! twists, and the gl-infinity operators E(i,j) = :a(-i) a*(j): acting on it.
//!
//! Vectors are polynomials in the creation variables applied to w. With shift s
//! the module is twisted by a(n) -> a(n+s), a*(n) -> a*(n-s); every frame-level
//! operator is reduced to the untwisted (raw) action on the same polynomial.

use std::fmt;

use num_traits::Zero;

use crate::algebra::scalar::{falling, format_scalar, int, Scalar};
use crate::algebra::{GenVar, ModVec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WhittakerFrame {
    lambda: Vec<Scalar>,
    mu: Vec<Scalar>,
    i0: Option<u32>,
    j0: Option<u32>,
    pub shift: i64,
}

/// E(i,j) = :a(-i) a*(j):
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlOp {
    pub i: i64,
    pub j: i64,
}

impl GlOp {
    pub fn new(i: i64, j: i64) -> Self {
        GlOp { i, j }
    }
}

fn trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

impl WhittakerFrame {
    /// `lambda` lists lambda_0..lambda_n, `mu` lists mu_1..mu_m.
    pub fn new(lambda: Vec<Scalar>, mu: Vec<Scalar>) -> Self {
        WhittakerFrame { lambda: trim(lambda), mu: trim(mu), i0: None, j0: None, shift: 0 }
    }

    pub fn from_ints(lambda: &[i64], mu: &[i64]) -> Self {
        WhittakerFrame::new(lambda.iter().map(|&x| int(x)).collect(), mu.iter().map(|&x| int(x)).collect())
    }

    /// lambda = (1, 2), mu = (1).
    pub fn default_frame() -> Self {
        WhittakerFrame::from_ints(&[1, 2], &[1])
    }

    /// lambda = mu = 0: the vacuum module of the Weyl vertex algebra.
    pub fn vacuum() -> Self {
        WhittakerFrame::new(vec![], vec![])
    }

    pub fn with_shift(mut self, s: i64) -> Self {
        self.shift = s;
        self
    }

    pub fn with_pivots(mut self, i0: Option<u32>, j0: Option<u32>) -> Self {
        self.i0 = i0;
        self.j0 = j0;
        self
    }

    pub fn untwisted(&self) -> Self {
        self.clone().with_shift(0)
    }

    pub fn lambda(&self) -> &[Scalar] {
        &self.lambda
    }

    pub fn mu(&self) -> &[Scalar] {
        &self.mu
    }

    pub fn lambda_at(&self, k: i64) -> Scalar {
        if k < 0 {
            return Scalar::zero();
        }
        self.lambda.get(k as usize).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn mu_at(&self, k: i64) -> Scalar {
        if k < 1 {
            return Scalar::zero();
        }
        self.mu.get(k as usize - 1).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest index with lambda nonzero (0 when lambda vanishes).
    pub fn n_max(&self) -> u32 {
        self.lambda.len().saturating_sub(1) as u32
    }

    /// Largest index with mu nonzero (0 when mu vanishes).
    pub fn m_max(&self) -> u32 {
        self.mu.len() as u32
    }

    pub fn lambda_is_zero(&self) -> bool {
        self.lambda.is_empty()
    }

    pub fn mu_is_zero(&self) -> bool {
        self.mu.is_empty()
    }

    pub fn is_vacuum(&self) -> bool {
        self.lambda.is_empty() && self.mu.is_empty()
    }

    pub fn i0(&self) -> Result<u32> {
        let i0 = match self.i0 {
            Some(i) => i,
            None if self.lambda.is_empty() => return Err(Error::Hypothesis("lambda = 0: no pivot i0 with lambda_i0 != 0".into())),
            None => self.n_max(),
        };
        if self.lambda_at(i0 as i64).is_zero() {
            return Err(Error::Hypothesis(format!("lambda_{i0} = 0, so i0 = {i0} is not a valid pivot")));
        }
        Ok(i0)
    }

    pub fn j0(&self) -> Result<u32> {
        let j0 = match self.j0 {
            Some(j) => j,
            None if self.mu.is_empty() => return Err(Error::Hypothesis("mu = 0: no pivot j0 with mu_j0 != 0".into())),
            None => self.m_max(),
        };
        if self.mu_at(j0 as i64).is_zero() {
            return Err(Error::Hypothesis(format!("mu_{j0} = 0, so j0 = {j0} is not a valid pivot")));
        }
        Ok(j0)
    }

    /// Requires lambda != 0 and mu != 0.
    pub fn require_nondegenerate(&self) -> Result<()> {
        self.i0()?;
        self.j0()?;
        Ok(())
    }

    /// Largest raw index n with a(n) acting nontrivially on v through lambda or a derivative.
    pub(crate) fn bound_a(&self, v: &ModVec) -> i64 {
        self.n_max().max(v.max_s_index()) as i64
    }

    /// Largest raw index m with a*(m) acting nontrivially on v.
    pub(crate) fn bound_astar(&self, v: &ModVec) -> i64 {
        self.m_max().max(v.max_a_index()) as i64
    }

    // ---- untwisted actions -------------------------------------------------

    pub fn raw_a(&self, k: i64, v: &ModVec) -> ModVec {
        if k <= -1 {
            v.mul_var(GenVar::a((-k) as u32))
        } else {
            let mut r = v.scaled(&self.lambda_at(k));
            r.add_assign(&v.derive_var(GenVar::s(k as u32)));
            r
        }
    }

    pub fn raw_astar(&self, k: i64, v: &ModVec) -> ModVec {
        if k <= 0 {
            v.mul_var(GenVar::s((-k) as u32))
        } else {
            let mut r = v.scaled(&self.mu_at(k));
            r.sub_assign(&v.derive_var(GenVar::a(k as u32)));
            r
        }
    }

    /// :a(-i) a*(j): with the annihilation factor applied first.
    pub fn raw_e(&self, i: i64, j: i64, v: &ModVec) -> ModVec {
        if j >= 1 {
            self.raw_a(-i, &self.raw_astar(j, v))
        } else {
            // a*(j) is a creation operator here, so a(-i) goes first; when both
            // factors create, they commute
            self.raw_astar(j, &self.raw_a(-i, v))
        }
    }

    // ---- frame actions -----------------------------------------------------

    pub fn act_a(&self, k: i64, v: &ModVec) -> ModVec {
        self.raw_a(k + self.shift, v)
    }

    pub fn act_astar(&self, k: i64, v: &ModVec) -> ModVec {
        self.raw_astar(k - self.shift, v)
    }

    pub fn act_e(&self, op: GlOp, v: &ModVec) -> ModVec {
        self.raw_e(op.i - self.shift, op.j - self.shift, v)
    }

    /// The Casimir I = sum_j E(j,j) as a finite window sum; `margin` widens the window.
    pub fn act_i_window(&self, v: &ModVec, margin: i64) -> ModVec {
        let lo = -self.bound_a(v) - margin;
        let hi = self.bound_astar(v) + margin;
        let mut r = ModVec::zero();
        for j in lo..=hi {
            r.add_assign(&self.raw_e(j, j, v));
        }
        r
    }

    /// Closed form of I: (#S - #A) per term plus multiplication by I w.
    pub fn act_i_closed(&self, v: &ModVec) -> ModVec {
        let mut r = v.map_linear(|m| ModVec::term(m.clone(), int(-m.charge())));
        let mut iw = ModVec::zero();
        for (k, l) in self.lambda.iter().enumerate() {
            iw.add_term(crate::algebra::Monomial::var(GenVar::s(k as u32)), l.clone());
        }
        for (k, c) in self.mu.iter().enumerate() {
            iw.add_term(crate::algebra::Monomial::var(GenVar::a(k as u32 + 1)), c.clone());
        }
        r.add_assign(&v.mul_poly(&iw));
        r
    }

    pub fn act_i(&self, v: &ModVec) -> ModVec {
        self.act_i_closed(v)
    }

    /// J^k(n) = sum_j f_k(-j) E(j-n, j) over the sufficient window; `margin` widens it.
    pub fn act_jk_window(&self, k: u32, n: i64, v: &ModVec, margin: i64) -> ModVec {
        // raw index jr = j - s, so E(j-n, j) is raw E(jr - n, jr) with weight f_k(-(jr + s))
        let lo = (n - self.bound_a(v)).min(n + 1).min(0) - margin;
        let hi = self.bound_astar(v).max(0) + margin;
        let mut r = ModVec::zero();
        for jr in lo..=hi {
            let c = falling(-(jr + self.shift), k);
            if c.is_zero() {
                continue;
            }
            r.add_scaled(&self.raw_e(jr - n, jr, v), &c);
        }
        r
    }

    pub fn act_jk(&self, k: u32, n: i64, v: &ModVec) -> ModVec {
        self.act_jk_window(k, n, v, 0)
    }

    /// Frame label of the pair element that acts as raw E(-i, j).
    pub fn pair_op(&self, i: i64, j: i64) -> GlOp {
        GlOp::new(-i + self.shift, j + self.shift)
    }

    /// Residuals (E(-i,j) - lambda_i mu_j) v for 0 <= i <= i_max, 1 <= j <= j_max,
    /// keyed by (i, j).
    pub fn whittaker_defect(&self, v: &ModVec, i_max: u32, j_max: u32) -> Vec<((u32, u32), ModVec)> {
        let mut out = Vec::new();
        for i in 0..=i_max as i64 {
            for j in 1..=j_max as i64 {
                let mut r = self.act_e(self.pair_op(i, j), v);
                r.add_scaled(v, &-(self.lambda_at(i) * self.mu_at(j)));
                out.push(((i as u32, j as u32), r));
            }
        }
        out
    }

    pub fn is_whittaker(&self, v: &ModVec, i_max: u32, j_max: u32) -> bool {
        self.whittaker_defect(v, i_max, j_max).iter().all(|(_, r)| r.is_zero())
    }

    /// I w written out from lambda and mu.
    pub fn iw_display(&self) -> ModVec {
        let mut r = ModVec::zero();
        for k in 0..=self.n_max() {
            r.add_scaled(&ModVec::var(GenVar::s(k)), &self.lambda_at(k as i64));
        }
        for k in 1..=self.m_max() {
            r.add_scaled(&ModVec::var(GenVar::a(k)), &self.mu_at(k as i64));
        }
        r
    }
}

impl fmt::Display for WhittakerFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.lambda.iter().map(format_scalar).collect();
        let m: Vec<String> = self.mu.iter().map(format_scalar).collect();
        write!(f, "lambda=({}) mu=({}) s={}", l.join(","), m.join(","), self.shift)?;
        if let Some(i) = self.i0 {
            write!(f, " i0={i}")?;
        }
        if let Some(j) = self.j0 {
            write!(f, " j0={j}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_vec;

    fn v(t: &str) -> ModVec {
        parse_vec(t).unwrap()
    }

    #[test]
    fn weyl_mode_examples() {
        let f = WhittakerFrame::default_frame();
        let w = ModVec::one();
        assert_eq!(f.act_a(0, &w), w);
        assert!(f.act_a(2, &w).is_zero());
        assert_eq!(f.act_a(1, &v("as[-1]")), v("2*as[-1] + 1"));
        assert_eq!(f.act_astar(1, &w), w);
        assert_eq!(f.act_astar(1, &v("a[-1]")), v("a[-1] - 1"));
        assert_eq!(f.act_astar(0, &w), v("as[0]"));
    }

    #[test]
    fn gl_examples() {
        let f = WhittakerFrame::default_frame();
        let w = ModVec::one();
        assert_eq!(f.act_e(GlOp::new(1, 1), &w), v("a[-1]"));
        assert_eq!(f.act_e(GlOp::new(0, 0), &w), v("as[0]"));
        assert!(f.act_e(GlOp::new(-1, 2), &w).is_zero());
    }

    #[test]
    fn casimir_examples() {
        let f = WhittakerFrame::default_frame();
        let w = ModVec::one();
        assert_eq!(f.act_i(&w), v("as[0] + 2*as[-1] + a[-1]"));
        assert_eq!(f.act_i_window(&w, 0), f.act_i(&w));
        assert!(WhittakerFrame::vacuum().act_i(&w).is_zero());
        let expected = v("-a[-1] + a[-1]*as[0] + 2*a[-1]*as[-1] + a[-1]^2");
        assert_eq!(f.act_i_window(&v("a[-1]"), 0), expected);
        assert_eq!(f.act_i_closed(&v("a[-1]")), expected);
    }

    #[test]
    fn defect_examples() {
        let f = WhittakerFrame::default_frame();
        let w = ModVec::one();
        assert!(f.is_whittaker(&w, 2, 2));
        assert!(f.is_whittaker(&f.act_i(&w), 2, 2));
        let d = f.whittaker_defect(&v("a[-1]"), 2, 2);
        assert_eq!(d[0], ((0, 1), v("-1")));
    }

    #[test]
    fn pivots() {
        let f = WhittakerFrame::default_frame();
        assert_eq!(f.i0().unwrap(), 1);
        assert_eq!(f.j0().unwrap(), 1);
        assert!(WhittakerFrame::vacuum().i0().is_err());
        assert!(WhittakerFrame::from_ints(&[1, 2], &[1]).with_pivots(Some(3), None).i0().is_err());
    }
}
