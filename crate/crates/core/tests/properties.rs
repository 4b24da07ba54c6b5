use std::collections::BTreeSet;

use proptest::prelude::*;

use whittaker_core::algebra::linalg::{kernel_basis, rank_dense};
use whittaker_core::algebra::scalar::{frac, int};
use whittaker_core::algebra::{enumerate_monomials, format_vec, parse_vec, GenVar, ModVec, Monomial, Scalar};
use whittaker_core::random::VecSampler;
use whittaker_core::winf::states::{j_state, omega};
use whittaker_core::winf::Engine;
use whittaker_core::{GlOp, WhittakerFrame};

fn vector(seed: u64, max_weight: u64) -> ModVec {
    VecSampler::new(seed, max_weight, 4, |_| true).vector()
}

fn var() -> impl Strategy<Value = GenVar> {
    prop_oneof![(1u32..5).prop_map(GenVar::a), (0u32..4).prop_map(GenVar::s)]
}

fn frame() -> impl Strategy<Value = WhittakerFrame> {
    (prop::collection::vec(-3i64..=3, 1..3), prop::collection::vec(-3i64..=3, 1..3), -2i64..=2)
        .prop_map(|(l, m, s)| WhittakerFrame::from_ints(&l, &m).with_shift(s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn derivation_leibniz(a in any::<u64>(), b in any::<u64>(), x in var()) {
        let (p, q) = (vector(a, 5), vector(b, 5));
        let lhs = p.mul_poly(&q).derive_var(x);
        let rhs = p.derive_var(x).mul_poly(&q) + p.mul_poly(&q.derive_var(x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_derivatives_commute(a in any::<u64>(), x in var(), y in var()) {
        let p = vector(a, 6);
        prop_assert_eq!(p.derive_var(x).derive_var(y), p.derive_var(y).derive_var(x));
    }

    #[test]
    fn text_round_trip(a in any::<u64>()) {
        let v = vector(a, 6);
        prop_assert_eq!(parse_vec(&format_vec(&v)).unwrap(), v);
    }

    #[test]
    fn kernel_vectors_are_annihilated(entries in prop::collection::vec((-4i64..=4, 1i64..=3), 40)) {
        let rows: Vec<Vec<Scalar>> = entries.chunks(8).map(|r| r.iter().map(|&(n, d)| frac(n, d)).collect()).collect();
        let ker = kernel_basis(&rows, 8);
        for x in &ker {
            for r in &rows {
                let dot = r.iter().zip(x).fold(int(0), |acc, (a, b)| acc + a * b);
                prop_assert_eq!(dot, int(0));
            }
        }
        prop_assert_eq!(rank_dense(&rows, 8) + ker.len(), 8);
        prop_assert_eq!(rank_dense(&ker, 8), ker.len());
    }

    #[test]
    fn casimir_window_is_stable(f in frame(), a in any::<u64>(), margin in 1i64..4) {
        let v = vector(a, 5);
        prop_assert_eq!(f.act_i_window(&v, margin), f.act_i_closed(&v));
        for k in 0..3u32 {
            for n in -2..=2 {
                prop_assert_eq!(f.act_jk_window(k, n, &v, margin), f.act_jk(k, n, &v));
            }
        }
    }

    #[test]
    fn shift_covariance(f in frame(), a in any::<u64>(), k in -3i64..=3, l in -3i64..=3) {
        let v = vector(a, 5);
        let base = f.untwisted();
        let s = f.shift;
        prop_assert_eq!(f.act_a(k, &v), base.act_a(k + s, &v));
        prop_assert_eq!(f.act_astar(k, &v), base.act_astar(k - s, &v));
        prop_assert_eq!(f.act_e(GlOp::new(k, l), &v), base.act_e(GlOp::new(k - s, l - s), &v));
        prop_assert_eq!(f.act_i(&v), base.act_i(&v));
    }

    #[test]
    fn engine_margin_is_inert(f in frame(), a in any::<u64>(), n in -2i64..=3) {
        let v = vector(a, 4);
        for u in [j_state(0), j_state(1), omega()] {
            let narrow = Engine::new(&f).act(&u, n, &v).unwrap();
            let wide = Engine::with_margin(&f, 3).act(&u, n, &v).unwrap();
            prop_assert_eq!(narrow, wide);
        }
    }

    #[test]
    fn weyl_ccr(f in frame(), a in any::<u64>(), k in -3i64..=3, l in -3i64..=3) {
        let v = vector(a, 5);
        let mut r = f.act_a(k, &f.act_astar(l, &v)) - f.act_astar(l, &f.act_a(k, &v));
        if k + l == 0 {
            r.sub_assign(&v);
        }
        prop_assert!(r.is_zero());
    }
}

/// Every monomial of weight at most `w`, built from exponent vectors.
fn brute_force(w: u64) -> BTreeSet<Monomial> {
    let vars: Vec<GenVar> = (1..=w as u32).map(GenVar::a).chain((0..w as u32).map(GenVar::s)).collect();
    fn rec(vars: &[GenVar], budget: u64, cur: Monomial, out: &mut BTreeSet<Monomial>) {
        let Some((&x, rest)) = vars.split_first() else {
            out.insert(cur);
            return;
        };
        let mut m = cur;
        let mut left = budget;
        loop {
            rec(rest, left, m.clone(), out);
            if x.weight() > left {
                break;
            }
            left -= x.weight();
            m = m.times(x);
        }
    }
    let mut out = BTreeSet::new();
    rec(&vars, w, Monomial::one(), &mut out);
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for w in 0..=6 {
        let listed = enumerate_monomials(w, |_| true);
        let set: BTreeSet<Monomial> = listed.iter().cloned().collect();
        assert_eq!(set.len(), listed.len(), "duplicates at weight {w}");
        assert_eq!(set, brute_force(w), "weight {w}");
        assert!(listed.windows(2).all(|p| (p[0].weight(), &p[0]) < (p[1].weight(), &p[1])), "graded order at weight {w}");
    }
}
