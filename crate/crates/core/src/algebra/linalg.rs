//! Exact linear algebra over the rationals.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::scalar::Scalar;
use super::vector::ModVec;

/// Reduced row echelon form of a dense matrix; returns (rows, pivot columns).
pub fn rref(rows: &[Vec<Scalar>], ncols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for row in rows {
        assert_eq!(row.len(), ncols, "row length must match column count");
        let mut r = row.clone();
        for (b, &p) in basis.iter().zip(&pivots) {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { continue };
        let inv = Scalar::one() / &r[p];
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for b in basis.iter_mut() {
            if !b[p].is_zero() {
                let f = b[p].clone();
                for (x, y) in b.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        basis.push(r);
        pivots.push(p);
    }
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    (order.iter().map(|&i| basis[i].clone()).collect(), order.iter().map(|&i| pivots[i]).collect())
}

/// Basis of the common kernel of the rows, one vector per free column in
/// increasing column order.
pub fn kernel_basis(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let (r, pivots) = rref(rows, ncols);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

pub fn rank_dense(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Kernel of the linear map sending the i-th basis vector to `images[i]`.
pub fn kernel_of_images(images: &[ModVec]) -> Vec<Vec<Scalar>> {
    let mut index: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for v in images {
        for m in v.monomials() {
            let n = index.len();
            index.entry(m).or_insert(n);
        }
    }
    let mut rows = vec![vec![Scalar::zero(); images.len()]; index.len()];
    for (i, v) in images.iter().enumerate() {
        for (m, c) in v.iter() {
            rows[index[m]][i] = c.clone();
        }
    }
    kernel_basis(&rows, images.len())
}

/// Incremental sparse echelon basis keyed by leading monomial.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<Monomial, ModVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces v by leading terms; the result is zero iff v lies in the span.
    pub fn reduce(&self, v: &ModVec) -> ModVec {
        let mut r = v.clone();
        let mut bound: Option<Monomial> = None;
        loop {
            let lead = match &bound {
                None => r.leading().map(|(m, _)| m.clone()),
                Some(b) => r.last_below(b).cloned(),
            };
            let Some(lead) = lead else { return r };
            if let Some(row) = self.rows.get(&lead) {
                let c = r.coeff(&lead);
                r.add_scaled(row, &-c);
            }
            bound = Some(lead);
        }
    }

    pub fn contains(&self, v: &ModVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds v to the span; returns true when it was independent.
    pub fn insert(&mut self, v: &ModVec) -> bool {
        let mut r = self.reduce(v);
        let Some((lead, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) else { return false };
        r = r.scaled(&(Scalar::one() / c));
        self.rows.insert(lead, r);
        true
    }

    /// The fully reduced basis, ordered by increasing leading monomial: each
    /// vector has leading coefficient 1 and no other vector's leading term.
    pub fn reduced_basis(&self) -> Vec<ModVec> {
        let mut done: BTreeMap<&Monomial, ModVec> = BTreeMap::new();
        for (lead, row) in &self.rows {
            let mut r = row.clone();
            let mut bound = lead.clone();
            while let Some(m) = r.last_below(&bound).cloned() {
                if let Some(b) = done.get(&m) {
                    let c = r.coeff(&m);
                    r.add_scaled(b, &-c);
                }
                bound = m;
            }
            done.insert(lead, r);
        }
        done.into_values().collect()
    }
}

pub fn rank(vectors: &[ModVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// True when the two families span the same subspace.
pub fn same_span(a: &[ModVec], b: &[ModVec]) -> bool {
    let mut ea = Echelon::new();
    a.iter().for_each(|v| {
        ea.insert(v);
    });
    let mut eb = Echelon::new();
    b.iter().for_each(|v| {
        eb.insert(v);
    });
    ea.rank() == eb.rank() && b.iter().all(|v| ea.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::int;

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&[], 3).len(), 3);
        let k = kernel_basis(&[vec![int(1), int(-1), int(0)]], 3);
        assert_eq!(k, vec![vec![int(1), int(1), int(0)], vec![int(0), int(0), int(1)]]);
    }

    #[test]
    fn echelon_membership() {
        use crate::algebra::monomial::GenVar;
        let a = ModVec::var(GenVar::a(1));
        let s = ModVec::var(GenVar::s(0));
        let mut e = Echelon::new();
        assert!(e.insert(&(&a + &s)));
        assert!(!e.insert(&(&a + &s).scaled(&int(3))));
        assert!(!e.contains(&a));
        assert!(e.insert(&a));
        assert!(e.contains(&s));
        assert_eq!(e.rank(), 2);
    }
}
