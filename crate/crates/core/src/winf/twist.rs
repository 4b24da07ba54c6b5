//! The Delta-operator of the Heisenberg field h = -s J0, which transports
//! vertex operators of M to the spectral-flow twisted module.

use std::collections::BTreeMap;

use crate::algebra::scalar::{frac, int, Scalar};
use crate::algebra::ModVec;
use crate::weyl::WhittakerFrame;

use super::engine::Engine;

/// Laurent expansion of Delta(-s J0, z) u as (power of z, state) pairs in
/// increasing power, zero states omitted.
pub fn delta_twist(u: &ModVec, s: i64) -> Vec<(i64, ModVec)> {
    let vac = WhittakerFrame::vacuum();
    let mut by_charge: BTreeMap<i64, ModVec> = BTreeMap::new();
    for (m, c) in u.iter() {
        by_charge.entry(-m.charge()).or_default().add_term(m.clone(), c.clone());
    }
    let mut out: BTreeMap<i64, ModVec> = BTreeMap::new();
    for (eig, part) in by_charge {
        // h(0) = -s J0(0) acts by -s * eig on this component
        let base = -s * eig;
        let mut term: BTreeMap<i64, ModVec> = BTreeMap::from([(0, part)]);
        let mut k = 0i64;
        while !term.is_empty() {
            for (p, v) in &term {
                out.entry(base + p).or_default().add_assign(v);
            }
            k += 1;
            let mut next: BTreeMap<i64, ModVec> = BTreeMap::new();
            for (p, v) in &term {
                for n in 1..=(v.max_weight() as i64 + 1) {
                    // h(n)/(-n) (-z)^(-n) = s (-1)^n / n  J0(n) z^(-n)
                    let c: Scalar = frac(s * if n % 2 == 0 { 1 } else { -1 }, n) / int(k);
                    let jv = vac.act_jk(0, n, v);
                    if !jv.is_zero() {
                        next.entry(p - n).or_default().add_scaled(&jv, &c);
                    }
                }
            }
            next.retain(|_, v| !v.is_zero());
            term = next;
        }
    }
    out.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// Sum over the Delta-expansion: the n-th mode of u on the twisted frame
/// computed from untwisted modes, sum_p (u_p)_(n+p).
pub fn twisted_mode_via_delta(u: &ModVec, n: i64, v: &ModVec, frame: &WhittakerFrame) -> crate::error::Result<ModVec> {
    let base = frame.untwisted();
    let mut eng = Engine::new(&base);
    let mut out = ModVec::zero();
    for (p, up) in delta_twist(u, frame.shift) {
        out.add_assign(&eng.act(&up, n + p, v)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::winf::states::j_state;

    #[test]
    fn heisenberg_state_gains_vacuum_pole() {
        for s in [-2, -1, 1, 3] {
            let t = delta_twist(&j_state(0), s);
            assert_eq!(t, vec![(-1, ModVec::one().scaled(&int(s))), (0, j_state(0))]);
        }
        assert_eq!(delta_twist(&ModVec::one(), 5), vec![(0, ModVec::one())]);
    }
}
