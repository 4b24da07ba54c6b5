//! Commutator residuals for the Heisenberg-Virasoro, Virasoro and singlet
//! relation tables.

use crate::algebra::scalar::{frac, int, Scalar};
use crate::algebra::ModVec;
use crate::error::{Error, Result};
use crate::weyl::WhittakerFrame;

use super::fields::FieldOp;

/// Central charge of J1 in the Heisenberg-Virasoro algebra.
pub const C1: i64 = 2;
/// Level of the Heisenberg field J0.
pub const C2: i64 = -1;
/// Central charge of L_omega.
pub const C_OMEGA: i64 = -1;
/// Central charge of the singlet Virasoro field L.
pub const C_SINGLET: i64 = -2;

/// Right-hand side: a central scalar plus a combination of field modes.
struct Rhs {
    central: Scalar,
    fields: Vec<(Scalar, FieldOp)>,
}

impl Rhs {
    fn zero() -> Self {
        Rhs { central: int(0), fields: vec![] }
    }

    fn neg(self) -> Self {
        Rhs { central: -self.central, fields: self.fields.into_iter().map(|(c, f)| (-c, f)).collect() }
    }
}

fn delta(r: i64, s: i64) -> i64 {
    i64::from(r + s == 0)
}

fn virasoro(r: i64, s: i64, c: i64, make: fn(i64) -> FieldOp) -> Rhs {
    Rhs {
        central: frac(c * (r * r * r - r) * delta(r, s), 12),
        fields: vec![(int(r - s), make(r + s))],
    }
}

fn j(k: u32, n: i64) -> FieldOp {
    FieldOp::J { k, n }
}

fn rule(a: &FieldOp, b: &FieldOp) -> Option<Rhs> {
    use FieldOp::*;
    Some(match (a, b) {
        (J { k: 0, n: r }, J { k: 0, n: s }) => Rhs { central: int(r * delta(*r, *s) * C2), fields: vec![] },
        (J { k: 1, n: r }, J { k: 1, n: s }) => virasoro(*r, *s, C1, |n| j(1, n)),
        (J { k: 1, n: r }, J { k: 0, n: s }) => Rhs {
            central: frac(-C2 * (r * r + r) * delta(*r, *s), 2),
            fields: vec![(int(-s), j(0, r + s))],
        },
        (L(r), L(s)) => virasoro(*r, *s, C_SINGLET, L),
        (Lw(r), Lw(s)) => virasoro(*r, *s, C_OMEGA, Lw),
        (Lw(r), J { k: 0, n: s }) => Rhs { central: int(0), fields: vec![(int(-s), j(0, r + s))] },
        (L(_), J { k: 0, .. }) => Rhs::zero(),
        (L(r), H(s)) => Rhs { central: int(0), fields: vec![(int(2 * r - s), H(r + s))] },
        (J { k: 0, .. }, H(_)) => Rhs::zero(),
        _ => return None,
    })
}

/// [A, B] v minus the tabulated right-hand side applied to v.
pub fn relation_probe(a: &FieldOp, b: &FieldOp, v: &ModVec, frame: &WhittakerFrame) -> Result<ModVec> {
    let rhs = match rule(a, b) {
        Some(r) => r,
        None => match rule(b, a) {
            Some(r) => r.neg(),
            None => return Err(Error::Unsupported(format!("no relation tabulated for [{a}, {b}]"))),
        },
    };
    let ab = a.apply(&b.apply(v, frame)?, frame)?;
    let ba = b.apply(&a.apply(v, frame)?, frame)?;
    let mut res = ab - ba;
    res.add_scaled(v, &-rhs.central);
    for (c, f) in &rhs.fields {
        res.add_scaled(&f.apply(v, frame)?, &-c.clone());
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_vec;

    #[test]
    fn heisenberg_level() {
        let f = WhittakerFrame::default_frame();
        let w = ModVec::one();
        assert!(relation_probe(&j(0, 1), &j(0, -1), &w, &f).unwrap().is_zero());
        let v = parse_vec("a[-1]*as[-2] + as[0]").unwrap();
        for r in -2..3 {
            for s in -2..3 {
                assert!(relation_probe(&j(0, r), &j(0, s), &v, &f).unwrap().is_zero(), "J0 {r} {s}");
                assert!(relation_probe(&j(1, r), &j(0, s), &v, &f).unwrap().is_zero(), "J1J0 {r} {s}");
                assert!(relation_probe(&j(1, r), &j(1, s), &v, &f).unwrap().is_zero(), "J1 {r} {s}");
            }
        }
    }

    #[test]
    fn unsupported_pair() {
        let f = WhittakerFrame::default_frame();
        assert!(relation_probe(&j(2, 0), &j(3, 0), &ModVec::one(), &f).is_err());
    }
}
