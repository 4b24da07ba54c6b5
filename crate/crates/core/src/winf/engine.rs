//! Vertex-operator modes of vacuum states acting on Whittaker modules.
//!
//! A state is a polynomial in the creation variables applied to the vacuum.
//! The generators are A = a(-1)1 with A_(j) = a(j) and S = a*(0)1 with
//! S_(j) = a*(j+1); a(-k) is A_(-k) and a*(-m) is S_(-m-1). Modes of products
//! are computed by the iterate identity
//!
//! (g_(-k) u)_(n) = sum_{j>=0} C(k+j-1, j) ( g_(-k-j) u_(n+j) - (-1)^k u_(n-k-j) g_(j) ).

use std::collections::HashMap;

use crate::algebra::scalar::{binomial, int, Scalar};
use crate::algebra::{GenVar, ModVec, Monomial, VarKind};
use crate::error::{Error, Result};
use crate::weyl::WhittakerFrame;

/// Largest mode window the engine will scan before reporting a bound violation.
const MAX_SPAN: i64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    A,
    S,
}

/// Mode evaluator tied to one frame, memoizing per instance.
pub struct Engine<'f> {
    frame: &'f WhittakerFrame,
    margin: i64,
    memo: HashMap<(Monomial, i64, Monomial), ModVec>,
}

impl<'f> Engine<'f> {
    pub fn new(frame: &'f WhittakerFrame) -> Self {
        Engine { frame, margin: 0, memo: HashMap::new() }
    }

    /// Widens every annihilation bound by `margin`; results must not change.
    pub fn with_margin(frame: &'f WhittakerFrame, margin: i64) -> Self {
        Engine { frame, margin, memo: HashMap::new() }
    }

    pub fn frame(&self) -> &WhittakerFrame {
        self.frame
    }

    fn gen_mode(&self, g: Gen, p: i64, v: &ModVec) -> ModVec {
        match g {
            Gen::A => self.frame.act_a(p, v),
            Gen::S => self.frame.act_astar(p + 1, v),
        }
    }

    /// Generator modes g_(p) with p above this value kill the monomial.
    fn gen_bound(&self, g: Gen, m: &Monomial) -> i64 {
        let f = self.frame;
        let s = f.shift;
        match g {
            Gen::A => f.n_max().max(m.max_s_index().unwrap_or(0)) as i64 - s,
            Gen::S => f.m_max().max(m.max_a_index().unwrap_or(0)) as i64 + s - 1,
        }
    }

    /// Every term of u_(n) is a normally ordered product of deg(u) generator
    /// modes whose indices sum to n + 1 - sum k; each index is at most the
    /// generator bound, so u_(n) m = 0 above the returned value.
    fn state_bound(&self, u: &Monomial, m: &Monomial) -> i64 {
        let b = self.gen_bound(Gen::A, m).max(self.gen_bound(Gen::S, m)).max(0) + self.margin;
        let r = u.degree() as i64;
        let ksum: i64 = u.factors().iter().map(|(x, e)| split(*x).1 * *e as i64).sum();
        r * b + ksum - 1
    }

    /// u_(n) applied to a vector, u a single state monomial.
    fn mono_state(&mut self, u: &Monomial, n: i64, v: &ModVec) -> Result<ModVec> {
        v.try_map_linear(|m| self.mono(u, n, m))
    }

    fn mono(&mut self, u: &Monomial, n: i64, m: &Monomial) -> Result<ModVec> {
        if u.is_one() {
            return Ok(if n == -1 { ModVec::monomial(m.clone()) } else { ModVec::zero() });
        }
        if n > self.state_bound(u, m) {
            return Ok(ModVec::zero());
        }
        let key = (u.clone(), n, m.clone());
        if let Some(r) = self.memo.get(&key) {
            return Ok(r.clone());
        }
        let (x, _) = u.factors()[0];
        let (_, rest) = u.divide(x).expect("factor divides its monomial");
        let (g, k) = split(x);
        let mv = ModVec::monomial(m.clone());
        let sign = if k % 2 == 0 { int(-1) } else { int(1) };
        let mut out = ModVec::zero();

        let top = self.state_bound(&rest, m) - n;
        if top > MAX_SPAN {
            return Err(Error::EngineBound(format!("mode window {top} for state {u} at mode {n}")));
        }
        let js: Vec<i64> = if rest.is_one() { vec![-1 - n] } else { (0..=top).collect() };
        for j in js.into_iter().filter(|&j| j >= 0) {
            let inner = self.mono_state(&rest, n + j, &mv)?;
            if inner.is_zero() {
                continue;
            }
            let c = binomial((k + j - 1) as u64, j as u64);
            out.add_scaled(&self.gen_mode(g, -k - j, &inner), &c);
        }

        let top = self.gen_bound(g, m) + self.margin;
        for j in 0..=top {
            if rest.is_one() && n - k - j != -1 {
                continue;
            }
            let gj = self.gen_mode(g, j, &mv);
            if gj.is_zero() {
                continue;
            }
            let inner = self.mono_state(&rest, n - k - j, &gj)?;
            let c: Scalar = binomial((k + j - 1) as u64, j as u64) * &sign;
            out.add_scaled(&inner, &c);
        }

        self.memo.insert(key, out.clone());
        Ok(out)
    }

    /// u_(n) v for a general state u.
    pub fn act(&mut self, u: &ModVec, n: i64, v: &ModVec) -> Result<ModVec> {
        let mut out = ModVec::zero();
        for (um, c) in u.iter() {
            let r = self.mono_state(um, n, v)?;
            out.add_scaled(&r, c);
        }
        Ok(out)
    }
}

/// Generator and k with the creation variable equal to g_(-k).
fn split(x: GenVar) -> (Gen, i64) {
    match x.kind {
        VarKind::A => (Gen::A, x.index as i64),
        VarKind::S => (Gen::S, x.index as i64 + 1),
    }
}

/// The n-th mode of the field of u applied to v on the given frame.
pub fn mode_act(u: &ModVec, n: i64, v: &ModVec, frame: &WhittakerFrame) -> Result<ModVec> {
    Engine::new(frame).act(u, n, v)
}

/// Translation T u = u_(-2) 1 in the vacuum module.
pub fn translation(u: &ModVec) -> ModVec {
    let vac = WhittakerFrame::vacuum();
    Engine::new(&vac).act(u, -2, &ModVec::one()).expect("vacuum modes are bounded")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_vec;

    #[test]
    fn generator_modes_match_weyl_modes() {
        let f = WhittakerFrame::default_frame();
        let v = parse_vec("a[-1]*as[-1] + as[0]^2").unwrap();
        let a = parse_vec("a[-1]").unwrap();
        let s = parse_vec("as[0]").unwrap();
        for k in -3..4 {
            assert_eq!(mode_act(&a, k, &v, &f).unwrap(), f.act_a(k, &v));
            assert_eq!(mode_act(&s, k, &v, &f).unwrap(), f.act_astar(k + 1, &v));
        }
    }

    #[test]
    fn vacuum_state_is_identity_at_minus_one() {
        let f = WhittakerFrame::default_frame();
        let v = parse_vec("a[-2] + 3").unwrap();
        assert_eq!(mode_act(&ModVec::one(), -1, &v, &f).unwrap(), v);
        assert!(mode_act(&ModVec::one(), 0, &v, &f).unwrap().is_zero());
    }

    #[test]
    fn translation_of_generators() {
        assert_eq!(translation(&parse_vec("a[-1]").unwrap()), parse_vec("a[-2]").unwrap());
        assert_eq!(translation(&parse_vec("as[0]").unwrap()), parse_vec("as[-1]").unwrap());
    }
}
