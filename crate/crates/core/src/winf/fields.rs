//! Field operators: J^k(n), the singlet Virasoro field L, the conformal field
//! L_omega of M, and the weight-3 field H.

use std::fmt;

use crate::algebra::scalar::{frac, int, Scalar};
use crate::algebra::ModVec;
use crate::error::Result;
use crate::weyl::WhittakerFrame;

use super::engine::Engine;
use super::states;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldOp {
    /// J^k(n), graded so that J^k(z) = sum J^k(n) z^(-n-k-1).
    J { k: u32, n: i64 },
    /// Singlet Virasoro mode L(n).
    L(i64),
    /// L_omega(n) = omega_(n+1).
    Lw(i64),
    /// H(n) = W3_(n+2).
    H(i64),
    /// u_(n) for an arbitrary vacuum state u.
    Mode(ModVec, i64),
}

impl fmt::Display for FieldOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldOp::J { k, n } => write!(f, "J{k}[{n}]"),
            FieldOp::L(n) => write!(f, "L[{n}]"),
            FieldOp::Lw(n) => write!(f, "Lw[{n}]"),
            FieldOp::H(n) => write!(f, "H[{n}]"),
            FieldOp::Mode(u, n) => write!(f, "Y({u})[{n}]"),
        }
    }
}

/// Coefficient of J0(n) in the mode expansion of L. Consistency of the
/// singlet Virasoro relations at central charge -2 forces (n+1)/2.
pub fn derivative_coefficient(n: i64) -> Scalar {
    frac(n + 1, 2)
}

/// L(n) with an explicit derivative coefficient, for probing the convention.
pub fn act_l_with(n: i64, v: &ModVec, frame: &WhittakerFrame, cd: impl Fn(i64) -> Scalar) -> ModVec {
    let mut r = frame.act_jk(1, n, v);
    // normal order: the smaller mode sits on the left, so the right factor is
    // J0(p) with p >= n/2; it kills v once p exceeds the J0 annihilation bound
    let p_max = frame.bound_a(v) + frame.bound_astar(v);
    let p_lo = n.div_euclid(2) + n.rem_euclid(2);
    for p in p_lo..=p_max.max(p_lo) {
        let q = n - p;
        let inner = frame.act_jk(0, p, v);
        if inner.is_zero() {
            continue;
        }
        let outer = frame.act_jk(0, q, &inner);
        let c = if p == q { frac(1, 2) } else { int(1) };
        r.add_scaled(&outer, &c);
    }
    r.add_scaled(&frame.act_jk(0, n, v), &cd(n));
    r
}

pub fn act_l(n: i64, v: &ModVec, frame: &WhittakerFrame) -> ModVec {
    act_l_with(n, v, frame, derivative_coefficient)
}

pub fn act_lw(n: i64, v: &ModVec, frame: &WhittakerFrame) -> Result<ModVec> {
    Engine::new(frame).act(&states::omega(), n + 1, v)
}

pub fn act_h(n: i64, v: &ModVec, frame: &WhittakerFrame) -> Result<ModVec> {
    Engine::new(frame).act(states::w3_state(), n + 2, v)
}

impl FieldOp {
    pub fn apply(&self, v: &ModVec, frame: &WhittakerFrame) -> Result<ModVec> {
        match self {
            FieldOp::J { k, n } => Ok(frame.act_jk(*k, *n, v)),
            FieldOp::L(n) => Ok(act_l(*n, v, frame)),
            FieldOp::Lw(n) => act_lw(*n, v, frame),
            FieldOp::H(n) => act_h(*n, v, frame),
            FieldOp::Mode(u, n) => Engine::new(frame).act(u, *n, v),
        }
    }

    /// Same operator with its mode index replaced.
    pub fn with_mode(&self, m: i64) -> FieldOp {
        match self {
            FieldOp::J { k, .. } => FieldOp::J { k: *k, n: m },
            FieldOp::L(_) => FieldOp::L(m),
            FieldOp::Lw(_) => FieldOp::Lw(m),
            FieldOp::H(_) => FieldOp::H(m),
            FieldOp::Mode(u, _) => FieldOp::Mode(u.clone(), m),
        }
    }

    pub fn mode(&self) -> i64 {
        match self {
            FieldOp::J { n, .. } | FieldOp::L(n) | FieldOp::Lw(n) | FieldOp::H(n) | FieldOp::Mode(_, n) => *n,
        }
    }
}
