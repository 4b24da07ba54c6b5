//! Weyl relations, gl-infinity brackets and the Casimir.

use num_traits::Zero;

use crate::algebra::scalar::{int, Scalar};
use crate::algebra::{enumerate_monomials, GenVar, ModVec};
use crate::random::VecSampler;
use crate::weyl::GlOp;

use super::{scalar_text, Cases, SuiteConfig};

pub(super) fn sampler(cfg: &SuiteConfig, tag: u64) -> VecSampler {
    VecSampler::new(cfg.seed.wrapping_mul(1_000_003).wrapping_add(tag), cfg.max_weight, 4, |_| true)
}

fn delta(a: i64, b: i64) -> Scalar {
    int(i64::from(a == b))
}

/// The scalar c with r = c v, if there is one.
pub fn central_scalar(r: &ModVec, v: &ModVec) -> Option<Scalar> {
    if r.is_zero() {
        return Some(Scalar::zero());
    }
    let (m, vc) = v.leading()?;
    let c = r.coeff(m) / vc;
    (*r == v.scaled(&c)).then_some(c)
}

/// Expected central scalar of [E(i,j), E(j,i)] on a frame with shift s:
/// K = -1 times +1 for i <= s < j and -1 for j <= s < i.
pub fn cocycle_pattern(i: i64, j: i64, s: i64) -> Scalar {
    let (i, j) = (i - s, j - s);
    let psi = if i <= 0 && j > 0 {
        1
    } else if j <= 0 && i > 0 {
        -1
    } else {
        0
    };
    int(-psi)
}

fn comm(x: impl Fn(&ModVec) -> ModVec, y: impl Fn(&ModVec) -> ModVec, v: &ModVec) -> ModVec {
    x(&y(v)) - y(&x(v))
}

pub(super) fn weyl(cfg: &SuiteConfig, c: &mut Cases) {
    let f = &cfg.frame;
    let mut s = sampler(cfg, 1);
    let mut literal_rejected = false;
    for t in 0..cfg.samples {
        let v = s.vector();
        let mut ccr = Vec::new();
        let mut commuting = Vec::new();
        for k in -3..=3i64 {
            for l in -3..=3i64 {
                let mut r = comm(|u| f.act_a(k, u), |u| f.act_astar(l, u), &v);
                r.add_scaled(&v, &-delta(k + l, 0));
                ccr.push((format!("[a({k}),a*({l})]"), Ok(r)));
                commuting.push((format!("[a({k}),a({l})]"), Ok(comm(|u| f.act_a(k, u), |u| f.act_a(l, u), &v))));
                commuting.push((format!("[a*({k}),a*({l})]"), Ok(comm(|u| f.act_astar(k, u), |u| f.act_astar(l, u), &v))));
            }
        }
        c.all_zero(format!("ccr/v{t:03}"), ccr);
        c.all_zero(format!("commuting/v{t:03}"), commuting);

        let mut gens = Vec::new();
        for i in -2..=2i64 {
            for j in -2..=2i64 {
                let e = GlOp::new(i, j);
                for m in -2..=2i64 {
                    let mut r = comm(|u| f.act_e(e, u), |u| f.act_a(-m, u), &v);
                    r.add_scaled(&f.act_a(-i, &v), &delta(j, m));
                    gens.push((format!("[E({i},{j}),a({})]", -m), Ok(r)));
                    let mut r = comm(|u| f.act_e(e, u), |u| f.act_astar(m, u), &v);
                    r.add_scaled(&f.act_astar(j, &v), &-delta(i, m));
                    gens.push((format!("[E({i},{j}),a*({m})]"), Ok(r)));
                    let mut lit = comm(|u| f.act_e(e, u), |u| f.act_a(-m, u), &v);
                    lit.add_scaled(&f.act_a(-i, &v), &-delta(j, m));
                    literal_rejected |= !lit.is_zero();
                }
            }
        }
        c.all_zero(format!("e-generator/v{t:03}"), gens);
    }
    c.flag("e-generator-opposite-sign-rejected", literal_rejected, "[E(i,j),a(-m)] = +delta a(-i) fails, confirming the sign used");
}

pub(super) fn glhat(cfg: &SuiteConfig, c: &mut Cases) {
    let f = &cfg.frame;
    let mut s = sampler(cfg, 2);
    let mut literal_rejected = false;
    for n in 0..cfg.samples {
        let v = s.vector();
        let mut bad: Option<(String, String)> = None;
        'outer: for i in -2..=2i64 {
            for j in -2..=2i64 {
                for p in -2..=2i64 {
                    for q in -2..=2i64 {
                        let (x, y) = (GlOp::new(i, j), GlOp::new(p, q));
                        let lhs = comm(|u| f.act_e(x, u), |u| f.act_e(y, u), &v);
                        let mut r = lhs.clone();
                        r.add_scaled(&f.act_e(GlOp::new(p, j), &v), &-delta(i, q));
                        r.add_scaled(&f.act_e(GlOp::new(i, q), &v), &delta(j, p));
                        let expected = if (p, q) == (j, i) { cocycle_pattern(i, j, f.shift) } else { Scalar::zero() };
                        let ok = central_scalar(&r, &v).is_some_and(|z| z == expected);
                        if !ok {
                            bad = Some((format!("[E({i},{j}),E({p},{q})]"), r.to_string()));
                            break 'outer;
                        }
                        if (i, j, p, q) == (1, 2, 2, 1) {
                            let mut lit = lhs;
                            lit.add_scaled(&f.act_e(GlOp::new(i, q), &v), &-delta(j, p));
                            lit.add_scaled(&f.act_e(GlOp::new(p, j), &v), &delta(i, q));
                            literal_rejected |= central_scalar(&lit, &v).is_none();
                        }
                    }
                }
            }
        }
        match bad {
            None => c.push(format!("bracket/v{n:03}"), true, "0", ""),
            Some((label, r)) => c.push(format!("bracket/v{n:03}"), false, r, label),
        }
    }
    c.flag("bracket-opposite-sign-rejected", literal_rejected, "delta_js E_it - delta_it E_sj leaves a non-central residual");

    let v = s.vector();
    let mut table_ok = true;
    let mut antisym = true;
    let mut note = String::new();
    let mut cells = Vec::new();
    for i in -3..=3i64 {
        for j in -3..=3i64 {
            let x = GlOp::new(i, j);
            let y = GlOp::new(j, i);
            let mut r = comm(|u| f.act_e(x, u), |u| f.act_e(y, u), &v);
            r.add_scaled(&f.act_e(GlOp::new(j, j), &v), &int(-1));
            r.add_scaled(&f.act_e(GlOp::new(i, i), &v), &int(1));
            let z = central_scalar(&r, &v);
            cells.push(((i, j), z.clone()));
            if z != Some(cocycle_pattern(i, j, f.shift)) {
                table_ok = false;
                note = format!("cell ({i},{j})");
            }
        }
    }
    for ((i, j), z) in &cells {
        let other = cells.iter().find(|((a, b), _)| a == j && b == i).map(|(_, z)| z.clone());
        antisym &= match (z, other.flatten()) {
            (Some(a), Some(b)) => *a == -b,
            _ => false,
        };
    }
    let rendered: Vec<String> = cells.iter().map(|((i, j), z)| format!("({i},{j}):{}", z.as_ref().map(scalar_text).unwrap_or("-".into()))).collect();
    c.push("cocycle-table", table_ok, if table_ok { "0".to_string() } else { rendered.join(" ") }, note);
    c.flag("cocycle-antisymmetric", antisym, "");
}

pub(super) fn casimir(cfg: &SuiteConfig, c: &mut Cases) {
    let f = &cfg.frame;
    let basis: Vec<ModVec> = enumerate_monomials(8, |_| true).into_iter().map(ModVec::monomial).collect();
    c.all_zero("i-paths-agree/weight-le-8", basis.iter().map(|b| (b.to_string(), Ok(f.act_i_window(b, 0) - f.act_i_closed(b)))));
    c.all_zero("i-equals-j0/weight-le-8", basis.iter().map(|b| (b.to_string(), Ok(f.act_jk(0, 0, b) - f.act_i(b)))));
    c.all_zero("i-window-stable/weight-le-8", basis.iter().map(|b| (b.to_string(), Ok(f.act_i_window(b, 3) - f.act_i_window(b, 0)))));

    let mut s = sampler(cfg, 3);
    for t in 0..cfg.samples {
        let v = s.vector();
        let mut gen = Vec::new();
        for n in -3..=3i64 {
            let mut r = comm(|u| f.act_a(n, u), |u| f.act_i(u), &v);
            r.sub_assign(&f.act_a(n, &v));
            gen.push((format!("[a({n}),I]"), Ok(r)));
            let mut r = comm(|u| f.act_astar(n, u), |u| f.act_i(u), &v);
            r.add_assign(&f.act_astar(n, &v));
            gen.push((format!("[a*({n}),I]"), Ok(r)));
        }
        c.all_zero(format!("generator-eigen/v{t:03}"), gen);
        let mut cent = Vec::new();
        for i in -2..=2i64 {
            for j in -2..=2i64 {
                let e = GlOp::new(i, j);
                cent.push((format!("[E({i},{j}),I]"), Ok(comm(|u| f.act_e(e, u), |u| f.act_i(u), &v))));
            }
        }
        c.all_zero(format!("e-central/v{t:03}"), cent);
    }

    let mut display = ModVec::zero();
    for (k, l) in f.lambda().iter().enumerate() {
        display.add_scaled(&ModVec::var(GenVar::s(k as u32)), l);
    }
    for (k, m) in f.mu().iter().enumerate() {
        display.add_scaled(&ModVec::var(GenVar::a(k as u32 + 1)), m);
    }
    let w = ModVec::one();
    c.zero("iw-display/window", &(f.act_i_window(&w, 0) - display.clone()), "");
    c.zero("iw-display/closed", &(f.act_i_closed(&w) - display), "");
}
