//! Casimir-power lemmas, Whittaker completeness, and the simple quotients.

use num_traits::Zero;

use crate::algebra::{GenVar, ModVec};
use crate::ops::Op;
use crate::quotient::{act_quot, cyclicity_probe, default_retries, der_a, der_s, ipow_w, non_tensor_witness, project, sufficient_window, whittaker_space, IPoly};
use crate::random::VecSampler;
use crate::weyl::{GlOp, WhittakerFrame};
use crate::winf::FieldOp;

use super::{d_values, scalar_text, Cases, SuiteConfig};

fn pivot_free_sampler(cfg: &SuiteConfig, tag: u64, max_weight: u64, keep: impl Fn(GenVar) -> bool) -> Option<VecSampler> {
    let i0 = cfg.frame.i0().ok()?;
    let seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(tag);
    Some(VecSampler::new(seed, max_weight, 4, |m| m.factors().iter().all(|(x, _)| *x != GenVar::s(i0) && keep(*x))))
}

pub(super) fn lemmas(cfg: &SuiteConfig, c: &mut Cases) {
    let f = &cfg.frame;
    // operators are transported along the spectral flow, so a(n) below is raw a(n)
    let sh = f.shift;
    let powers: Vec<ModVec> = (0..=4).map(|k| ipow_w(k, f)).collect();
    for k in 0..=4u32 {
        let up = IPoly::shifted_power(k, 1).apply_w(f);
        let down = IPoly::shifted_power(k, -1).apply_w(f);
        let mut a_res = Vec::new();
        for n in 0..=f.n_max() as i64 + 1 {
            a_res.push((format!("a({n}) I^{k} w"), Ok(f.act_a(n - sh, &powers[k as usize]) - up.scaled(&f.lambda_at(n)))));
        }
        c.all_zero(format!("casimir-shift/a/k{k}"), a_res);
        let mut s_res = Vec::new();
        for n in 0..=f.m_max() as i64 {
            s_res.push((format!("a*({}) I^{k} w", n + 1), Ok(f.act_astar(n + 1 + sh, &powers[k as usize]) - down.scaled(&f.mu_at(n + 1)))));
        }
        c.all_zero(format!("casimir-shift/astar/k{k}"), s_res);
    }

    let (Ok(i0), Ok(_)) = (f.i0(), f.j0()) else {
        c.push("derivations", false, "error", "derivation identities need lambda != 0 and mu != 0");
        return;
    };
    let Some(mut phis) = pivot_free_sampler(cfg, 11, 4, |_| true) else { return };
    let Some(mut stars) = pivot_free_sampler(cfg, 12, 4, |x| !x.is_a()) else { return };
    for t in 0..cfg.samples {
        let phi = phis.vector();
        let star = stars.vector();
        let mut res_a = Vec::new();
        let mut res_s = Vec::new();
        for k in 0..=3u32 {
            let base = &powers[k as usize];
            let up = IPoly::shifted_power(k, 1).apply_w(f);
            let down = IPoly::shifted_power(k, -1).apply_w(f);
            for p in 1..=4u32 {
                let lhs = der_a(p, &base.mul_poly(&phi), f);
                let rhs = up.mul_poly(&phi.derive_var(GenVar::a(p)));
                res_a.push((format!("DerA({p}) k={k}"), lhs.map(|l| l - rhs)));
            }
            for p in (0..=3u32).filter(|&p| p != i0) {
                let lhs = der_s(p, &base.mul_poly(&star), f);
                let rhs = down.mul_poly(&star.derive_var(GenVar::s(p)));
                res_s.push((format!("DerS({p}) k={k}"), lhs.map(|l| l - rhs)));
            }
        }
        c.all_zero(format!("derivation/a/phi{t:03}"), res_a);
        c.all_zero(format!("derivation/astar/phi{t:03}"), res_s);
    }
}

pub(super) fn whittaker(cfg: &SuiteConfig, c: &mut Cases) {
    let f = &cfg.frame;
    for w in [0u64, 2, 4, 6] {
        let (i, j) = sufficient_window(f, w);
        match whittaker_space(f, w, 16, i, j) {
            Ok(s) => {
                let note = format!("dimension {} predicted {} window ({i},{j})", s.dimension(), s.predicted);
                c.flag(format!("complete/w{w}"), s.matches_prediction && s.dimension() == s.predicted, note);
                c.flag(format!("window-stable/w{w}"), s.stable, "");
            }
            Err(e) => c.error(format!("complete/w{w}"), &e),
        }
    }
}

fn soundness_ops() -> Vec<Op> {
    let mut ops = Vec::new();
    for i in -1..=2 {
        for j in -1..=2 {
            ops.push(Op::E(GlOp::new(i, j)));
        }
    }
    for n in -1..=1 {
        ops.push(Op::Field(FieldOp::J { k: 0, n }));
        ops.push(Op::Field(FieldOp::J { k: 1, n }));
        ops.push(Op::Field(FieldOp::L(n)));
    }
    ops
}

pub(super) fn quotient(cfg: &SuiteConfig, c: &mut Cases) {
    let base = &cfg.frame;
    if let Err(e) = base.require_nondegenerate() {
        c.error("hypothesis", &e);
        return;
    }
    let d = &cfg.d;
    let mut s = super::algebra::sampler(cfg, 21);
    let ops = soundness_ops();
    for t in 0..cfg.samples.min(10) {
        let v = s.vector();
        let pv = project(&v, d, base);
        let mut res = Vec::new();
        for op in &ops {
            let r = (|| {
                let left = project(&op.apply(&v, base)?, d, base)?;
                let right = act_quot(op, &pv.clone()?, base)?;
                Ok(left.vec - right.vec)
            })();
            res.push((op.to_string(), r));
        }
        c.all_zero(format!("soundness/v{t:03}"), res);
        let kill = (|| {
            let mut iv = base.act_i(&v);
            iv.add_scaled(&v, &-d.clone());
            Ok(project(&iv, d, base)?.vec)
        })();
        c.all_zero(format!("kills-submodule/v{t:03}"), [("(I-d)v".to_string(), kill)]);
        let cent = pv.clone().and_then(|q| act_quot(&Op::I, &q, base).map(|r| r.vec - q.vec.scaled(d)));
        c.all_zero(format!("i-central/v{t:03}"), [("I q - d q".to_string(), cent)]);
    }

    for shift in [0i64, 1, -1] {
        let f = base.clone().with_shift(shift + base.shift);
        for dd in d_values(d) {
            let Some(mut qs) = pivot_free_sampler(cfg, 31 + shift.unsigned_abs() * 7 + u64::from(shift < 0), 5, |_| true) else { return };
            let mut fails = Vec::new();
            let mut n = 0;
            while n < cfg.probe_samples {
                let q = match project(&qs.vector(), &dd, &f) {
                    Ok(q) if !q.is_zero() => q,
                    Ok(_) => continue,
                    Err(e) => {
                        fails.push(e.to_string());
                        break;
                    }
                };
                n += 1;
                match cyclicity_probe(&q, &f, default_retries(&q)) {
                    Ok(cert) if !cert.sigma.is_zero() => {}
                    Ok(_) => fails.push(format!("zero certificate for {}", q.vec)),
                    Err(e) => fails.push(e.to_string()),
                }
            }
            let id = format!("cyclicity/s{}/d{}", f.shift, scalar_text(&dd));
            c.push(id, fails.is_empty(), if fails.is_empty() { "0".into() } else { fails.len().to_string() }, fails.first().cloned().unwrap_or_default());
        }
    }

    if base.n_max() >= 1 && base.n_max() >= base.m_max() {
        match non_tensor_witness(base, d) {
            Ok(r) => {
                let note = format!("k0={} rank={} rank at m+1={}", r.k0, r.rank, r.rank_next);
                c.flag("non-tensor-witness", r.rank == base.m_max() as usize + 1, note);
            }
            Err(e) => c.error("non-tensor-witness", &e),
        }
    }
}

/// Whittaker spaces on shifted frames coincide with the unshifted ones.
pub(super) fn shifted_completeness(f: &WhittakerFrame, c: &mut Cases) {
    let (i, j) = sufficient_window(f, 4);
    let base = match whittaker_space(&f.untwisted(), 4, 16, i, j) {
        Ok(b) => b,
        Err(e) => return c.error("whittaker-transported", &e),
    };
    for s in [-1i64, 1] {
        let fs = f.untwisted().with_shift(s);
        match whittaker_space(&fs, 4, 16, i, j) {
            Ok(t) => c.flag(format!("whittaker-transported/s{s}"), base.basis == t.basis && t.matches_prediction, ""),
            Err(e) => c.error(format!("whittaker-transported/s{s}"), &e),
        }
    }
}
