//! The simple quotients L(d, lambda, mu) = M / (I - d) M in pivot-free
//! coordinates, the Whittaker-vector solver, the derivation-based cyclicity
//! probe, and the non-tensor-product witness.

use num_traits::{One, Zero};

use crate::algebra::scalar::{binomial, format_scalar, int, Scalar};
use crate::algebra::{enumerate_monomials, kernel_of_images, Echelon, GenVar, ModVec, Monomial};
use crate::error::{Error, Result};
use crate::ops::Op;
use crate::weyl::WhittakerFrame;

/// Polynomial sum c_k I^k in the Casimir, standing for sum c_k I^k w.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IPoly(pub Vec<Scalar>);

impl IPoly {
    /// (I + t)^k.
    pub fn shifted_power(k: u32, t: i64) -> Self {
        let tt = int(t);
        let mut c = Vec::with_capacity(k as usize + 1);
        for j in 0..=k as u64 {
            let mut x = binomial(k as u64, j);
            for _ in 0..(k as u64 - j) {
                x *= &tt;
            }
            c.push(x);
        }
        IPoly(c)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    /// The vector sum c_k I^k w.
    pub fn apply_w(&self, frame: &WhittakerFrame) -> ModVec {
        let mut out = ModVec::zero();
        let mut p = ModVec::one();
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                p = frame.act_i(&p);
            }
            out.add_scaled(&p, c);
        }
        out
    }
}

/// I^k w.
pub fn ipow_w(k: u32, frame: &WhittakerFrame) -> ModVec {
    (0..k).fold(ModVec::one(), |v, _| frame.act_i(&v))
}

/// A class in L(d, lambda, mu), stored as its pivot-free representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotVec {
    pub vec: ModVec,
    pub d: Scalar,
}

impl QuotVec {
    pub fn is_zero(&self) -> bool {
        self.vec.is_zero()
    }

    pub fn embed(&self) -> ModVec {
        self.vec.clone()
    }
}

/// Canonical pivot-free representative of v modulo (I - d) M. Each S(i0)
/// factor is rewritten using I u = d u, which lowers the S(i0)-degree.
pub fn project(v: &ModVec, d: &Scalar, frame: &WhittakerFrame) -> Result<QuotVec> {
    let i0 = frame.i0()?;
    let piv = GenVar::s(i0);
    let inv = Scalar::one() / frame.lambda_at(i0 as i64);
    let mut rest = v.clone();
    let mut out = ModVec::zero();
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        rest.add_term(m.clone(), -c.clone());
        let Some((_, u)) = m.divide(piv) else {
            out.add_term(m, c);
            continue;
        };
        // lambda_i0 S(i0) u = (d + charge(u)) u - sum' lambda_k S(k) u - sum mu_k A(k) u
        let f = &c * &inv;
        rest.add_term(u.clone(), &f * (d + int(u.charge())));
        for k in 0..=frame.n_max() {
            if k != i0 {
                rest.add_term(u.times(GenVar::s(k)), -(&f * frame.lambda_at(k as i64)));
            }
        }
        for k in 1..=frame.m_max() {
            rest.add_term(u.times(GenVar::a(k)), -(&f * frame.mu_at(k as i64)));
        }
    }
    Ok(QuotVec { vec: out, d: d.clone() })
}

/// Embed, act, project; I acts as d.
pub fn act_quot(op: &Op, q: &QuotVec, frame: &WhittakerFrame) -> Result<QuotVec> {
    if *op == Op::I {
        return Ok(QuotVec { vec: q.vec.scaled(&q.d), d: q.d.clone() });
    }
    project(&op.apply(&q.embed(), frame)?, &q.d, frame)
}

/// Weight of the top component of I w.
pub fn iw_weight(frame: &WhittakerFrame) -> u64 {
    let s = if frame.lambda_is_zero() { 0 } else { frame.n_max() as u64 + 1 };
    s.max(frame.m_max() as u64)
}

/// Defect window beyond which every residual on weight <= max_weight vanishes.
pub fn sufficient_window(frame: &WhittakerFrame, max_weight: u64) -> (u32, u32) {
    let w = max_weight as u32;
    (frame.n_max().max(w.saturating_sub(1)), frame.m_max().max(w))
}

#[derive(Clone, Debug)]
pub struct WhittakerSolution {
    pub max_weight: u64,
    pub window: (u32, u32),
    /// Reduced echelon basis of the solution space.
    pub basis: Vec<ModVec>,
    /// True when enlarging the window by one in both directions keeps the space.
    pub stable: bool,
    /// Number of I^k w (k <= max_ipow) fitting in the truncation.
    pub predicted: usize,
    /// True when the solution space equals the span of those I^k w.
    pub matches_prediction: bool,
}

impl WhittakerSolution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self, frame: &WhittakerFrame) -> serde_json::Value {
        serde_json::json!({
            "frame": frame.to_string(),
            "maxWeight": self.max_weight,
            "window": [self.window.0, self.window.1],
            "dimension": self.dimension(),
            "basis": self.basis.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "stable": self.stable,
            "predicted": self.predicted,
            "matchesPrediction": self.matches_prediction,
        })
    }
}

fn solve_window(frame: &WhittakerFrame, max_weight: u64, window: (u32, u32)) -> Vec<ModVec> {
    let mut space: Vec<ModVec> = enumerate_monomials(max_weight, |_| true).into_iter().map(ModVec::monomial).collect();
    for i in 0..=window.0 as i64 {
        for j in 1..=window.1 as i64 {
            let op = frame.pair_op(i, j);
            let value = frame.lambda_at(i) * frame.mu_at(j);
            let images: Vec<ModVec> = space
                .iter()
                .map(|v| {
                    let mut r = frame.act_e(op, v);
                    r.add_scaled(v, &-value.clone());
                    r
                })
                .collect();
            let ker = kernel_of_images(&images);
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
    e.reduced_basis()
}

/// All Whittaker vectors of weight at most `max_weight`, by exact kernel
/// computation on the given defect window.
pub fn whittaker_space(frame: &WhittakerFrame, max_weight: u64, max_ipow: u32, i_max: u32, j_max: u32) -> Result<WhittakerSolution> {
    frame.require_nondegenerate()?;
    let basis = solve_window(frame, max_weight, (i_max, j_max));
    let wider = solve_window(frame, max_weight, (i_max + 1, j_max + 1));
    let step = iw_weight(frame);
    let predicted_vecs: Vec<ModVec> = (0..=max_ipow).take_while(|&k| k as u64 * step <= max_weight).map(|k| ipow_w(k, frame)).collect();
    let matches = crate::algebra::same_span(&basis, &predicted_vecs);
    Ok(WhittakerSolution {
        max_weight,
        window: (i_max, j_max),
        stable: basis == wider,
        predicted: predicted_vecs.len(),
        matches_prediction: matches,
        basis,
    })
}

/// DerA(p) = -(1/lambda_i0) (E(-i0, p) - lambda_i0 mu_p), acting on M.
pub fn der_a(p: u32, v: &ModVec, frame: &WhittakerFrame) -> Result<ModVec> {
    let i0 = frame.i0()?;
    let l = frame.lambda_at(i0 as i64);
    let mut r = frame.act_e(frame.pair_op(i0 as i64, p as i64), v);
    r.add_scaled(v, &-(&l * frame.mu_at(p as i64)));
    Ok(r.scaled(&-(Scalar::one() / l)))
}

/// DerS(p) = (1/mu_j0) (E(-p, j0) - lambda_p mu_j0), acting on M; p != i0.
pub fn der_s(p: u32, v: &ModVec, frame: &WhittakerFrame) -> Result<ModVec> {
    let j0 = frame.j0()?;
    if p == frame.i0()? {
        return Err(Error::Hypothesis(format!("DerS({p}) requires p != i0")));
    }
    let m = frame.mu_at(j0 as i64);
    let mut r = frame.act_e(frame.pair_op(p as i64, j0 as i64), v);
    r.add_scaled(v, &-(frame.lambda_at(p as i64) * &m));
    Ok(r.scaled(&(Scalar::one() / m)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerStep {
    A(u32),
    S(u32),
}

impl std::fmt::Display for DerStep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DerStep::A(p) => write!(f, "DerA({p})"),
            DerStep::S(p) => write!(f, "DerS({p})"),
        }
    }
}

/// Witness that w lies in the submodule generated by a quotient vector.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub sigma: Scalar,
    pub retries: u32,
    pub target: Monomial,
    pub steps: Vec<DerStep>,
}

/// Monomial of largest A-degree, ties broken by largest S-degree then order.
fn probe_target(v: &ModVec) -> Option<Monomial> {
    v.monomials().max_by(|x, y| x.a_degree().cmp(&y.a_degree()).then(x.s_degree().cmp(&y.s_degree())).then(x.cmp(y))).cloned()
}

fn steps_for(m: &Monomial, kind: fn(u32) -> DerStep, a: bool) -> Vec<DerStep> {
    m.factors().iter().filter(|(x, _)| x.is_a() == a).flat_map(|(x, e)| std::iter::repeat_n(kind(x.index), *e as usize)).collect()
}

/// Retry bound: pivot-free representatives have I-degree 0.
pub fn default_retries(_q: &QuotVec) -> u32 {
    2
}

/// Reduces q to sigma [w] with DerA steps for the A-part of a target monomial
/// and then DerS steps for the S-part of the survivor's top monomial.
pub fn cyclicity_probe(q: &QuotVec, frame: &WhittakerFrame, max_retries: u32) -> Result<Certificate> {
    frame.require_nondegenerate()?;
    if q.is_zero() {
        return Err(Error::Hypothesis("cyclicity probe needs a nonzero vector".into()));
    }
    let mut cur = q.clone();
    for retry in 0..=max_retries {
        let target = probe_target(&cur.vec).expect("nonzero vector has a monomial");
        let mut steps = steps_for(&target, DerStep::A, true);
        let mut v = cur.clone();
        for s in &steps {
            let DerStep::A(p) = s else { unreachable!() };
            v = project(&der_a(*p, &v.embed(), frame)?, &q.d, frame)?;
        }
        if let Some(top) = probe_target(&v.vec) {
            let s_steps = steps_for(&top, DerStep::S, false);
            for s in &s_steps {
                let DerStep::S(p) = s else { unreachable!() };
                v = project(&der_s(*p, &v.embed(), frame)?, &q.d, frame)?;
            }
            steps.extend(s_steps);
        }
        match v.vec.as_scalar() {
            Some(sigma) if !sigma.is_zero() => return Ok(Certificate { sigma, retries: retry, target, steps }),
            _ => {
                cur = project(&cur.vec.mul_var(GenVar::a(1)), &q.d, frame)?;
            }
        }
    }
    Err(Error::ProbeFailed(format!("no nonzero multiple of w after {max_retries} retries from {}", q.vec)))
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub k0: u32,
    /// Rank of {J0(k0)^i [w] : i <= m_max}.
    pub rank: usize,
    /// Rank after adding J0(k0)^(m_max+1) [w].
    pub rank_next: usize,
    pub orbit: Vec<ModVec>,
}

/// Rank of the J0(n_max)-orbit of [w] in L(d, lambda, mu).
pub fn non_tensor_witness(frame: &WhittakerFrame, d: &Scalar) -> Result<WitnessReport> {
    frame.require_nondegenerate()?;
    let (n, m) = (frame.n_max(), frame.m_max());
    if n == 0 {
        return Err(Error::Hypothesis("the witness needs n_max > 0".into()));
    }
    if n < m {
        return Err(Error::Hypothesis(format!("the witness covers n_max >= m_max, got n_max = {n}, m_max = {m}")));
    }
    let mut q = project(&ModVec::one(), d, frame)?;
    let mut orbit = vec![q.vec.clone()];
    for _ in 0..=m {
        q = project(&frame.act_jk(0, n as i64, &q.embed()), d, frame)?;
        orbit.push(q.vec.clone());
    }
    let rank = crate::algebra::rank(&orbit[..m as usize + 1]);
    let rank_next = crate::algebra::rank(&orbit);
    Ok(WitnessReport { k0: n, rank, rank_next, orbit })
}

/// Text summary used by reports.
pub fn describe_certificate(c: &Certificate) -> String {
    let steps: Vec<String> = c.steps.iter().map(|s| s.to_string()).collect();
    format!("sigma={} retries={} target={} steps=[{}]", format_scalar(&c.sigma), c.retries, c.target, steps.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_vec;
    use crate::algebra::scalar::frac;

    fn v(t: &str) -> ModVec {
        parse_vec(t).unwrap()
    }

    #[test]
    fn ipow_examples() {
        let f = WhittakerFrame::default_frame();
        assert_eq!(ipow_w(0, &f), ModVec::one());
        assert_eq!(ipow_w(1, &f), v("as[0] + 2*as[-1] + a[-1]"));
        let i1 = ipow_w(1, &f);
        assert_eq!(ipow_w(2, &f), f.act_i_window(&i1, 0));
        assert_eq!(IPoly::shifted_power(2, 1), IPoly(vec![int(1), int(2), int(1)]));
    }

    #[test]
    fn projection_examples() {
        let f = WhittakerFrame::default_frame();
        let d = int(3);
        assert_eq!(project(&ModVec::one(), &d, &f).unwrap().vec, ModVec::one());
        let iw = ipow_w(1, &f) - ModVec::one().scaled(&d);
        assert!(project(&iw, &d, &f).unwrap().is_zero());
        let p = project(&v("as[-1]"), &d, &f).unwrap();
        let expected = (ModVec::one().scaled(&d) - v("as[0]") - v("a[-1]")).scaled(&frac(1, 2));
        assert_eq!(p.vec, expected);
        assert!(project(&v("1"), &d, &WhittakerFrame::vacuum()).is_err());
    }

    #[test]
    fn quotient_action_examples() {
        let f = WhittakerFrame::default_frame();
        let d = int(3);
        let w = project(&ModVec::one(), &d, &f).unwrap();
        assert_eq!(act_quot(&Op::I, &w, &f).unwrap().vec, ModVec::one().scaled(&d));
        assert_eq!(act_quot(&Op::A(0), &w, &f).unwrap().vec, ModVec::one());
        assert_eq!(act_quot(&"E[1,1]".parse().unwrap(), &w, &f).unwrap().vec, v("a[-1]"));
    }

    #[test]
    fn solver_examples() {
        let f = WhittakerFrame::default_frame();
        for (w, dim) in [(0, 1), (2, 2)] {
            let (i, j) = sufficient_window(&f, w);
            let s = whittaker_space(&f, w, 8, i, j).unwrap();
            assert_eq!(s.dimension(), dim);
            assert!(s.stable && s.matches_prediction);
        }
        assert!(matches!(whittaker_space(&WhittakerFrame::vacuum(), 2, 2, 2, 2), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn probe_examples() {
        let f = WhittakerFrame::default_frame();
        let d = int(3);
        for (t, n) in [("1", 0), ("a[-1]", 1), ("as[0]", 1)] {
            let q = project(&v(t), &d, &f).unwrap();
            let c = cyclicity_probe(&q, &f, 2).unwrap();
            assert_eq!(c.sigma, int(1));
            assert_eq!(c.steps.len(), n);
        }
    }

    #[test]
    fn witness_example() {
        let f = WhittakerFrame::default_frame();
        let r = non_tensor_witness(&f, &int(3)).unwrap();
        assert_eq!(r.rank, 2);
        assert!(non_tensor_witness(&WhittakerFrame::from_ints(&[1], &[1]), &int(0)).is_err());
    }
}
