//! Heisenberg-Virasoro and singlet relations, spectral flow, and engine cross-checks.

use num_traits::Zero;

use crate::algebra::linalg::Echelon;
use crate::algebra::scalar::{factorial, frac, int, Scalar};
use crate::algebra::{enumerate_monomials, ModVec};
use crate::error::Result;
use crate::weyl::WhittakerFrame;
use crate::winf::engine::Engine;
use crate::winf::states::{e_state, j_state, omega, vacuum};
use crate::winf::twist::twisted_mode_via_delta;
use crate::winf::{act_h, act_l, delta_twist, mode_act, relation_probe, translation, FieldOp};

use super::algebra::{central_scalar, sampler};
use super::{scalar_text, Cases, SuiteConfig};

fn j(k: u32, n: i64) -> FieldOp {
    FieldOp::J { k, n }
}

/// Lowest modes N with J0(N) w and J1(N) w proportional to w.
fn scalar_floor(frame: &WhittakerFrame) -> (i64, i64) {
    let (n, m) = (frame.n_max() as i64, frame.m_max() as i64);
    ((n + 1).max(m), n.max(m))
}

/// PBW generators: the modes J0(r), J1(r) below the scalar floor, paired with
/// their distance from it.
pub fn pbw_generators(frame: &WhittakerFrame, max_weight: u64) -> Vec<(FieldOp, u64)> {
    let (a, b) = scalar_floor(frame);
    let mut out = Vec::new();
    for w in 1..=max_weight as i64 {
        out.push((j(0, a - w), w as u64));
        out.push((j(1, b - w), w as u64));
    }
    out
}

fn multisets(weights: &[u64], start: usize, budget: u64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(cur.clone());
    for i in start..weights.len() {
        if weights[i] <= budget {
            cur.push(i);
            multisets(weights, i, budget - weights[i], cur, out);
            cur.pop();
        }
    }
}

/// Ordered monomials in the PBW generators of total weight at most
/// `max_weight`, applied to w with the first-listed generator outermost.
pub fn pbw_images(frame: &WhittakerFrame, max_weight: u64) -> Result<Vec<ModVec>> {
    let gens = pbw_generators(frame, max_weight);
    let weights: Vec<u64> = gens.iter().map(|(_, w)| *w).collect();
    let mut words = Vec::new();
    multisets(&weights, 0, max_weight, &mut Vec::new(), &mut words);
    let mut out = Vec::with_capacity(words.len());
    for word in words {
        let mut v = ModVec::one();
        for &g in word.iter().rev() {
            v = gens[g].0.apply(&v, frame)?;
        }
        out.push(v);
    }
    Ok(out)
}

/// Scalars by which the top modes of J0 and J1 act on w.
#[derive(Clone, Debug, PartialEq)]
pub struct RelPattern {
    /// (N, c) with J0(N) w = c w, from max(n+1, m) up to n+m+2.
    pub j0: Vec<(i64, Option<Scalar>)>,
    /// (N, c) with J1(N) w = c w, from max(n, m) up to n+m+2.
    pub j1: Vec<(i64, Option<Scalar>)>,
    /// J0(N) w and J1(N) w one step below those ranges, which must not be scalar.
    pub below: (Option<Scalar>, Option<Scalar>),
}

pub fn rel_pattern(frame: &WhittakerFrame) -> RelPattern {
    let f = frame.untwisted();
    let (n, m) = (f.n_max() as i64, f.m_max() as i64);
    let (a, b) = scalar_floor(&f);
    let w = ModVec::one();
    let at = |k: u32, big: i64| central_scalar(&f.act_jk(k, big, &w), &w);
    let scan = |k: u32, lo: i64| (lo..=n + m + 2).map(|big| (big, at(k, big))).collect();
    RelPattern { j0: scan(0, a), j1: scan(1, b), below: (at(0, a - 1), at(1, b - 1)) }
}

/// sum_j f(j) lambda_(N-j) mu_j over 1 <= j <= N.
fn convolution(f: &WhittakerFrame, big: i64, weight: impl Fn(i64) -> Scalar) -> Scalar {
    (1..=big).map(|jj| weight(jj) * f.lambda_at(big - jj) * f.mu_at(jj)).fold(Scalar::zero(), |a, b| a + b)
}

fn probe_family(cfg: &SuiteConfig, c: &mut Cases, id: &str, tag: u64, count: usize, range: std::ops::RangeInclusive<i64>, make: impl Fn(i64, i64) -> (FieldOp, FieldOp)) {
    let f = &cfg.frame.untwisted();
    let mut s = sampler(cfg, tag);
    for t in 0..cfg.samples.min(count) {
        let v = s.vector();
        let mut res = Vec::new();
        for r in range.clone() {
            for q in range.clone() {
                let (a, b) = make(r, q);
                res.push((format!("[{a},{b}]"), relation_probe(&a, &b, &v, f)));
            }
        }
        c.all_zero(format!("{id}/v{t:03}"), res);
    }
}

/// Field relations are checked on the untwisted frame; on a twisted frame the
/// vertex operators are the Delta-transported ones, covered by `spectral`.
pub(super) fn hvir(cfg: &SuiteConfig, c: &mut Cases) {
    let f = &cfg.frame.untwisted();
    probe_family(cfg, c, "heisenberg", 41, 8, -2..=2, |r, s| (j(0, r), j(0, s)));
    probe_family(cfg, c, "virasoro-j1", 42, 8, -2..=2, |r, s| (j(1, r), j(1, s)));
    probe_family(cfg, c, "j1-j0", 43, 8, -2..=2, |r, s| (j(1, r), j(0, s)));
    probe_family(cfg, c, "singlet-virasoro", 44, 3, -2..=2, |r, s| (FieldOp::L(r), FieldOp::L(s)));
    probe_family(cfg, c, "l-j0", 45, 3, -2..=2, |r, s| (FieldOp::L(r), j(0, s)));
    probe_family(cfg, c, "omega-virasoro", 46, 6, -1..=1, |r, s| (FieldOp::Lw(r), FieldOp::Lw(s)));
    probe_family(cfg, c, "omega-j0", 47, 6, -1..=1, |r, s| (FieldOp::Lw(r), j(0, s)));

    let mut s = sampler(cfg, 48);
    let states = [("j0", j_state(0)), ("j1", j_state(1)), ("omega", omega()), ("e", e_state())];
    for t in 0..cfg.samples.min(5) {
        let v = s.vector();
        let mut res = Vec::new();
        for (name, u) in &states {
            let tu = translation(u);
            for n in -2..=2i64 {
                let r = (|| {
                    let lhs = mode_act(&tu, n, &v, f)?;
                    let rhs = mode_act(u, n - 1, &v, f)?;
                    Ok(lhs + rhs.scaled(&int(n)))
                })();
                res.push((format!("(T {name})_({n})"), r));
            }
        }
        c.all_zero(format!("translation-covariance/v{t:03}"), res);
    }

    let p = rel_pattern(f);
    let u = f.untwisted();
    let (n, m) = (u.n_max() as i64, u.m_max() as i64);
    let mut ok = true;
    let mut note = String::new();
    for (big, got) in &p.j0 {
        let want = if *big > n + m { Scalar::zero() } else { convolution(&u, *big, |_| int(1)) };
        if got.as_ref() != Some(&want) {
            ok = false;
            note = format!("J0({big}) w");
        }
    }
    for (big, got) in &p.j1 {
        let want = if *big > n + m { Scalar::zero() } else { convolution(&u, *big, |jj| int(-jj)) };
        if got.as_ref() != Some(&want) {
            ok = false;
            note = format!("J1({big}) w");
        }
    }
    let nonzero_at = |v: &[(i64, Option<Scalar>)]| v.iter().find(|(b, _)| *b == n + m).is_some_and(|(_, x)| x.as_ref().is_some_and(|x| !x.is_zero()));
    c.flag("top-mode-pattern", ok, note);
    if m >= 1 && n >= 0 {
        c.flag("top-mode-nonzero", nonzero_at(&p.j0) && nonzero_at(&p.j1), "J0(n+m) w and J1(n+m) w are nonzero multiples of w");
        c.flag("below-floor-not-scalar", p.below.0.is_none() && p.below.1.is_none(), "");
    }

    let max_w = 4;
    match pbw_images(&u, max_w) {
        Ok(images) => {
            let mut e = Echelon::new();
            for v in &images {
                e.insert(v);
            }
            c.flag("pbw-independent", e.rank() == images.len(), format!("{} ordered monomials, rank {}", images.len(), e.rank()));
        }
        Err(e) => c.error("pbw-independent", &e),
    }
    match typical_span(&u, max_w) {
        Ok((inside, dim)) => c.flag("typical-span", inside == dim, format!("{inside} of {dim} monomials of weight <= {max_w} in the span")),
        Err(e) => c.error("typical-span", &e),
    }
}

/// Monomials of weight at most `max_weight` lying in the span of PBW words of
/// weight at most twice that, and the size of the truncation.
pub fn typical_span(frame: &WhittakerFrame, max_weight: u64) -> Result<(usize, usize)> {
    let mut e = Echelon::new();
    for v in pbw_images(frame, 2 * max_weight)? {
        e.insert(&v);
    }
    let monos = enumerate_monomials(max_weight, |_| true);
    let inside = monos.iter().filter(|m| e.contains(&ModVec::monomial((*m).clone()))).count();
    Ok((inside, monos.len()))
}

pub(super) fn singlet(cfg: &SuiteConfig, c: &mut Cases) {
    let f = &cfg.frame;
    let u = f.untwisted();
    let w = ModVec::one();
    let top = 3 * (u.n_max() as i64 + u.m_max() as i64);
    match act_h(top, &w, &u) {
        Ok(r) => {
            let q = central_scalar(&r, &w);
            let ok = q.as_ref().is_some_and(|q| u.is_vacuum() || !q.is_zero());
            c.flag("h-top-scalar", ok, format!("q = {}", q.as_ref().map(scalar_text).unwrap_or_else(|| r.to_string())));
        }
        Err(e) => c.error("h-top-scalar", &e),
    }
    c.all_zero("h-above-top-vanishes", (1..=3).map(|s| (format!("H({})w", top + s), act_h(top + s, &w, &u))));

    let vac = WhittakerFrame::vacuum();
    let one = vacuum();
    let rel = (|| {
        let mut r = act_h(-6, &one, &vac)?.scaled(&frac(3, 4));
        r.add_scaled(&act_l(-2, &act_h(-4, &one, &vac)?, &vac), &int(-1));
        r.add_scaled(&act_l(-3, &act_h(-3, &one, &vac)?, &vac), &frac(3, 2));
        Ok(r)
    })();
    c.all_zero("singlet-relation", [("3/4 H(-6) - L(-2)H(-4) + 3/2 L(-3)H(-3)".to_string(), rel)]);
    c.all_zero("h-annihilates-vacuum", (1..=3).map(|n| (format!("H({n})1"), act_h(n, &one, &vac))));

    let mut res = Vec::new();
    for r in -1..=1 {
        for s in -1..=1 {
            res.push((format!("[L({r}),H({s})]"), relation_probe(&FieldOp::L(r), &FieldOp::H(s), &w, f)));
            res.push((format!("[J0({r}),H({s})]"), relation_probe(&j(0, r), &FieldOp::H(s), &w, f)));
        }
    }
    c.all_zero("h-relations-on-w", res);
}

pub(super) fn spectral(cfg: &SuiteConfig, c: &mut Cases) {
    let base = cfg.frame.untwisted();
    let mut smp = sampler(cfg, 51);
    for t in 0..cfg.samples.min(10) {
        let v = smp.vector();
        let mut res = Vec::new();
        for s in [-2i64, -1, 1, 2] {
            let fs = base.clone().with_shift(s);
            for k in -3..=3i64 {
                res.push((format!("s={s} a({k})"), Ok(fs.act_a(k, &v) - base.act_a(k + s, &v))));
                res.push((format!("s={s} a*({k})"), Ok(fs.act_astar(k, &v) - base.act_astar(k - s, &v))));
                for l in -2..=2i64 {
                    let e = crate::weyl::GlOp::new(k, l);
                    res.push((format!("s={s} E({k},{l})"), Ok(fs.act_e(e, &v) - base.act_e(crate::weyl::GlOp::new(k - s, l - s), &v))));
                }
            }
            res.push((format!("s={s} I"), Ok(fs.act_i(&v) - base.act_i(&v))));
        }
        c.all_zero(format!("shift-covariance/v{t:03}"), res);
    }

    let mut exact = true;
    for s in [-2i64, -1, 1, 2, 3] {
        exact &= delta_twist(&j_state(0), s) == vec![(-1, ModVec::one().scaled(&int(s))), (0, j_state(0))];
    }
    c.flag("delta-heisenberg", exact, "Delta(-s J0) J0 = J0 + s z^-1 1");

    let states = [("j0", j_state(0)), ("j1", j_state(1)), ("omega", omega())];
    for t in 0..cfg.samples.min(5) {
        let v = smp.vector();
        let mut res = Vec::new();
        for s in [-1i64, 1, 2] {
            let fs = base.clone().with_shift(s);
            for (name, u) in &states {
                for n in -1..=2i64 {
                    let r = (|| Ok(twisted_mode_via_delta(u, n, &v, &fs)? - mode_act(u, n, &v, &fs)?))();
                    res.push((format!("s={s} {name}_({n})"), r));
                }
            }
        }
        c.all_zero(format!("delta-twist/v{t:03}"), res);
    }

    // the twisted vertex operators still satisfy the Heisenberg-Virasoro table
    let (j0, j1) = (j_state(0), j_state(1));
    for t in 0..cfg.samples.min(3) {
        let v = smp.vector();
        let mut res = Vec::new();
        for s in [-1i64, 2] {
            let fs = base.clone().with_shift(s);
            let mut eng = Engine::new(&fs);
            for r in -2..=2i64 {
                for q in -2..=2i64 {
                    let r0 = (|| {
                        let (qv, rv) = (eng.act(&j0, q, &v)?, eng.act(&j0, r, &v)?);
                        let mut x = eng.act(&j0, r, &qv)? - eng.act(&j0, q, &rv)?;
                        x.add_scaled(&v, &-int(r * i64::from(r + q == 0) * crate::winf::relations::C2));
                        Ok(x)
                    })();
                    res.push((format!("s={s} [J0({r}),J0({q})]"), r0));
                    let r1 = (|| {
                        let (qv, rv) = (eng.act(&j0, q, &v)?, eng.act(&j1, r + 1, &v)?);
                        let mut x = eng.act(&j1, r + 1, &qv)? - eng.act(&j0, q, &rv)?;
                        x.add_scaled(&eng.act(&j0, r + q, &v)?, &int(q));
                        x.add_scaled(&v, &(frac(crate::winf::relations::C2 * (r * r + r) * i64::from(r + q == 0), 2)));
                        Ok(x)
                    })();
                    res.push((format!("s={s} [J1({r}),J0({q})]"), r1));
                }
            }
        }
        c.all_zero(format!("twisted-hvir/v{t:03}"), res);
    }

    super::quotient::shifted_completeness(&base, c);
}

pub(super) fn crosscheck(cfg: &SuiteConfig, c: &mut Cases) {
    let shifted = &cfg.frame;
    let f = &cfg.frame.untwisted();
    let basis: Vec<ModVec> = enumerate_monomials(5, |_| true).into_iter().map(ModVec::monomial).collect();
    let mut eng = Engine::new(f);
    for k in 0..=3u32 {
        let want = int(1) / factorial(k);
        let mut bad: Option<String> = None;
        'scan: for n in -4..=4i64 {
            for v in &basis {
                let direct = f.act_jk(k, n, v);
                let r = eng.act(&j_state(k), n + k as i64, v);
                match r {
                    Ok(viaeng) => {
                        if viaeng != direct.scaled(&want) {
                            bad = Some(format!("n={n} v={v}: engine {viaeng} window {direct}"));
                            break 'scan;
                        }
                    }
                    Err(e) => {
                        bad = Some(e.to_string());
                        break 'scan;
                    }
                }
            }
        }
        let note = format!("mode of J^{k} state is {} times the window sum", scalar_text(&want));
        match bad {
            None => c.push(format!("jk-normalization/k{k}"), true, "0", note),
            Some(b) => c.push(format!("jk-normalization/k{k}"), false, b, note),
        }
    }

    c.all_zero(
        "jk-window-stable/weight-le-5",
        basis.iter().flat_map(|v| (0..=3u32).flat_map(move |k| (-3..=3i64).map(move |n| (k, n, v)))).map(|(k, n, v)| (format!("J{k}({n}) {v}"), Ok(f.act_jk_window(k, n, v, 3) - f.act_jk(k, n, v)))),
    );

    let mut smp = sampler(cfg, 61);
    let states = [("j1", j_state(1)), ("omega", omega()), ("e", e_state()), ("j0j0", crate::winf::states::vac_mode(&j_state(0), -1, &j_state(0)))];
    for t in 0..cfg.samples.min(5) {
        let v = smp.vector();
        let mut wide = Engine::with_margin(shifted, 3);
        let mut eng = Engine::new(shifted);
        let mut res = Vec::new();
        for (name, u) in &states {
            for n in -2..=3i64 {
                let r = (|| Ok(wide.act(u, n, &v)? - eng.act(u, n, &v)?))();
                res.push((format!("{name}_({n})"), r));
            }
        }
        c.all_zero(format!("engine-margin/v{t:03}"), res);
    }
}
