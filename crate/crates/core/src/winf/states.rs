//! Distinguished states of the vacuum module.

use std::sync::OnceLock;

use crate::algebra::scalar::{frac, int};
use crate::algebra::{GenVar, ModVec, Monomial};
use crate::weyl::WhittakerFrame;

use super::engine::Engine;

fn mono(pairs: &[(GenVar, u32)]) -> Monomial {
    Monomial::from_pairs(pairs.iter().copied())
}

pub fn vacuum() -> ModVec {
    ModVec::one()
}

/// a*(-k) a(-1) 1, whose field is :(d^k a*) a: / k!.
pub fn j_state(k: u32) -> ModVec {
    ModVec::monomial(mono(&[(GenVar::s(k), 1), (GenVar::a(1), 1)]))
}

/// omega = 1/2 (a(-1) a*(-1) - a(-2) a*(0)) 1, central charge -1.
pub fn omega() -> ModVec {
    let mut v = ModVec::term(mono(&[(GenVar::a(1), 1), (GenVar::s(1), 1)]), frac(1, 2));
    v.add_term(mono(&[(GenVar::a(2), 1), (GenVar::s(0), 1)]), frac(-1, 2));
    v
}

pub fn e_state() -> ModVec {
    ModVec::term(mono(&[(GenVar::a(1), 2)]), frac(1, 2))
}

pub fn h_state() -> ModVec {
    j_state(0).scaled(&int(-1))
}

pub fn f_state() -> ModVec {
    ModVec::term(mono(&[(GenVar::s(0), 2)]), frac(-1, 2))
}

/// x_(n) y in the vacuum module.
pub fn vac_mode(x: &ModVec, n: i64, y: &ModVec) -> ModVec {
    let vac = WhittakerFrame::vacuum();
    Engine::new(&vac).act(x, n, y).expect("vacuum modes are bounded")
}

/// omega + 1/2 :J0 J0:, the singlet Virasoro vector of central charge -2.
pub fn singlet_l_state() -> ModVec {
    let j0 = j_state(0);
    let mut l = omega();
    l.add_scaled(&vac_mode(&j0, -1, &j0), &frac(1, 2));
    l
}

/// The weight-3 parafermion generator built from e, h, f at level k = -1/2;
/// it commutes with J0 and is primary of weight 3 for the singlet L.
pub fn w3_state() -> &'static ModVec {
    static W3: OnceLock<ModVec> = OnceLock::new();
    W3.get_or_init(|| {
        let k = frac(-1, 2);
        let k2 = &k * &k;
        let (e, h, f) = (e_state(), h_state(), f_state());
        let one = vacuum();
        let m = vac_mode;
        let mut w = ModVec::zero();
        w.add_scaled(&m(&h, -3, &one), &k2);
        w.add_scaled(&m(&h, -2, &h), &(int(3) * &k));
        w.add_scaled(&m(&h, -1, &m(&h, -1, &h)), &int(2));
        w.add_scaled(&m(&h, -1, &m(&e, -1, &f)), &(int(-6) * &k));
        w.add_scaled(&m(&e, -2, &f), &(int(3) * &k2));
        // e(-1) f(-2) 1; the ordering f(-2) e(-1) 1 differs by h(-3) 1 and
        // would spoil both primarity and the commutation with h
        w.add_scaled(&m(&e, -1, &m(&f, -2, &one)), &(int(-3) * &k2));
        w
    })
}
