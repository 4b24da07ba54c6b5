//! The finite analogue for gl(2l).

use num_traits::Zero;

use crate::algebra::linalg::same_span;
use crate::algebra::scalar::{int, Scalar};
use crate::algebra::ModVec;
use crate::finite::{
    act_e_fin, act_gen_fin, act_i_fin, act_i_fin_closed, cyclicity_probe_fin, enumerate_fin, ipow_w_fin, iw_fin, quotient_fin, reachable_monomials,
    truncation_dimension, whittaker_space_fin, FinGen, FinVec, GlFrame,
};
use crate::random::VecSampler;

use super::{d_values, Cases, SuiteConfig};

fn delta(a: u32, b: u32) -> Scalar {
    int(i64::from(a == b))
}

fn fin_sampler(cfg: &SuiteConfig, g: &GlFrame, tag: u64) -> VecSampler {
    VecSampler::from_pool(cfg.seed.wrapping_mul(1_000_003).wrapping_add(tag), enumerate_fin(g, 3), 4)
}

fn gen(kind: FinGen, i: u32, v: &ModVec, g: &GlFrame) -> crate::error::Result<ModVec> {
    Ok(act_gen_fin(kind, i, &FinVec(v.clone()), g)?.0)
}

fn e(i: u32, j: u32, v: &ModVec, g: &GlFrame) -> crate::error::Result<ModVec> {
    Ok(act_e_fin(i, j, &FinVec(v.clone()), g)?.0)
}

fn one_frame(cfg: &SuiteConfig, g: &GlFrame, tag: &str, c: &mut Cases) {
    let l = g.ell();
    let n = 2 * l;
    let mut s = fin_sampler(cfg, g, 71);
    for t in 0..cfg.samples {
        let v = s.vector();
        let mut weyl = Vec::new();
        let mut brackets = Vec::new();
        let mut central = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let r = (|| {
                    let mut r = gen(FinGen::A, i, &gen(FinGen::AStar, j, &v, g)?, g)? - gen(FinGen::AStar, j, &gen(FinGen::A, i, &v, g)?, g)?;
                    r.add_scaled(&v, &-delta(i, j));
                    Ok(r)
                })();
                weyl.push((format!("[a_{i},a*_{j}]"), r));
                for kind in [FinGen::A, FinGen::AStar] {
                    let r = (|| Ok(gen(kind, i, &gen(kind, j, &v, g)?, g)? - gen(kind, j, &gen(kind, i, &v, g)?, g)?))();
                    weyl.push((format!("[{kind:?}_{i},{kind:?}_{j}]"), r));
                }
                let r = (|| {
                    let iv = act_i_fin(&FinVec(v.clone()), g)?.0;
                    Ok(e(i, j, &iv, g)? - act_i_fin(&FinVec(e(i, j, &v, g)?), g)?.0)
                })();
                central.push((format!("[e_{i}{j},I]"), r));
                if t < 5 {
                    for k in 1..=n {
                        for m in 1..=n {
                            let r = (|| {
                                let mut r = e(i, j, &e(k, m, &v, g)?, g)? - e(k, m, &e(i, j, &v, g)?, g)?;
                                r.add_scaled(&e(k, j, &v, g)?, &-delta(m, i));
                                r.add_scaled(&e(i, m, &v, g)?, &delta(j, k));
                                Ok(r)
                            })();
                            brackets.push((format!("[e_{i}{j},e_{k}{m}]"), r));
                        }
                    }
                }
            }
        }
        c.all_zero(format!("{tag}/weyl/v{t:03}"), weyl);
        c.all_zero(format!("{tag}/i-central/v{t:03}"), central);
        if t < 5 {
            c.all_zero(format!("{tag}/brackets/v{t:03}"), brackets);
        }
        let closed = act_i_fin(&FinVec(v.clone()), g).map(|r| r.0 - act_i_fin_closed(&FinVec(v.clone()), g).0);
        c.all_zero(format!("{tag}/i-paths-agree/v{t:03}"), [("I v".to_string(), closed)]);
        for d in d_values(&cfg.d) {
            let r = (|| {
                let mut iv = act_i_fin(&FinVec(v.clone()), g)?.0;
                iv.add_scaled(&v, &-d.clone());
                Ok(quotient_fin(&FinVec(iv), &d, g)?.0)
            })();
            c.all_zero(format!("{tag}/kills-submodule/d{}/v{t:03}", super::scalar_text(&d)), [("(I-d)v".to_string(), r)]);
        }
    }

    let w = ModVec::one();
    let mut pair = Vec::new();
    for i in 1..=l {
        for j in 1..=l {
            let r = e(i, l + j, &w, g).map(|r| r - w.scaled(&(g.alpha(i) * g.beta(j))));
            pair.push((format!("e_({i},{}) w", l + j), r));
        }
    }
    c.all_zero(format!("{tag}/pair-eigen"), pair);
    let mut display = ModVec::zero();
    for i in 1..=l {
        display.add_scaled(&ModVec::var(crate::algebra::GenVar::s(i)), &g.alpha(i));
        display.add_scaled(&ModVec::var(crate::algebra::GenVar::a(l + i)), &g.beta(i));
    }
    c.all_zero(format!("{tag}/iw-display"), [("I w".to_string(), act_i_fin(&FinVec(w.clone()), g).map(|r| r.0 - display.clone())), ("closed".to_string(), Ok(iw_fin(g) - display))]);

    if g.i_a().is_ok() && g.i_b().is_ok() {
        let mut fails = Vec::new();
        for d in d_values(&cfg.d) {
            let mut s = fin_sampler(cfg, g, 72);
            let mut done = 0;
            while done < 25 {
                let q = match quotient_fin(&FinVec(s.vector()), &d, g) {
                    Ok(q) if !q.0.is_zero() => q,
                    Ok(_) => continue,
                    Err(e) => {
                        fails.push(e.to_string());
                        break;
                    }
                };
                done += 1;
                match cyclicity_probe_fin(&q, &d, g, 2) {
                    Ok(sigma) if !sigma.is_zero() => {}
                    Ok(_) => fails.push(format!("zero certificate for {q}")),
                    Err(e) => fails.push(e.to_string()),
                }
            }
        }
        let residual = if fails.is_empty() { "0".to_string() } else { fails.len().to_string() };
        c.push(format!("{tag}/cyclicity"), fails.is_empty(), residual, fails.first().cloned().unwrap_or_default());

        match whittaker_space_fin(g, 3) {
            Ok(basis) => {
                let powers: Vec<ModVec> = (0..=3).map(|k| ipow_w_fin(k, g).0).collect();
                let ok = same_span(&basis, &powers);
                c.flag(format!("{tag}/whittaker-complete"), ok, format!("dimension {} at degree <= 3", basis.len()));
            }
            Err(e) => c.error(format!("{tag}/whittaker-complete"), &e),
        }
    } else {
        c.push(format!("{tag}/cyclicity"), false, "error", "alpha and beta need nonzero pivots");
    }

    match reachable_monomials(g, 3, 3) {
        Ok(r) => {
            let total = truncation_dimension(g, 3);
            c.flag(format!("{tag}/reachable"), r == total, format!("{r} of {total} monomials of degree <= 3"));
        }
        Err(e) => c.error(format!("{tag}/reachable"), &e),
    }
}

pub(super) fn gl2l(cfg: &SuiteConfig, c: &mut Cases) {
    for (k, g) in cfg.gl_frames.iter().enumerate() {
        one_frame(cfg, g, &format!("frame{k}"), c);
    }
}
