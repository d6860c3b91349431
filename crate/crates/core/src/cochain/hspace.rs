use std::collections::BTreeMap;

use crate::cochain::{reynolds_over, Cochain, Form, Wedge};
use crate::error::Result;
use crate::exactnum::CycNum;
use crate::matgroup::{BasisTable, Group};
use crate::polyform::{Monomial, Poly};

/// Monomial basis of `H_g^p` up to a polynomial degree.
#[derive(Clone, Debug)]
pub struct HSpace {
    pub owner: usize,
    pub degree: usize,
    pub max_poly_degree: u32,
    /// Basis elements in standard coordinates.
    pub elements: Vec<Cochain>,
    /// The eigen-coordinate monomial and wedge behind each element.
    pub labels: Vec<(Monomial, Wedge)>,
}

impl HSpace {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Monomials in the variables `start..n` of total degree at most `d`.
pub(crate) fn monomials_from(n: usize, start: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::ONE];
    for i in start..n {
        let mut next = Vec::new();
        for m in &out {
            let room = d - m.degree();
            for k in 0..=room {
                let mut e = *m;
                e.0[i] = k as u16;
                next.push(e);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// `w^a ḡ ⊗ w_{1..c}^* ∧ w_S^*` for `S` a set of fixed directions with
/// `|S| = p - c` and `deg w^a <= d`, converted to standard coordinates.
pub fn h_space_basis(group: &Group, table: &BasisTable, g: usize, p: usize, d: u32) -> HSpace {
    let ed = table.get(group, g);
    let n = group.dim();
    let c = ed.perp_count;
    let mut elements = Vec::new();
    let mut labels = Vec::new();
    if p >= c && p - c <= n - c {
        let perp = Wedge::prefix(c);
        let fixed_wedges: Vec<Wedge> = Wedge::all(n, p - c).into_iter().filter(|w| w.0 & perp.0 == 0).collect();
        for m in monomials_from(n, c, d) {
            for s in &fixed_wedges {
                let w = Wedge(perp.0 | s.0);
                let mut form = Form::zero(n, ed.id);
                form.insert_raw(w, Poly::term(CycNum::one(), m, n, ed.id));
                elements.push(Cochain::from_frames(n, p, group, table, &[(g, form)]));
                labels.push((m, w));
            }
        }
    }
    HSpace { owner: g, degree: p, max_poly_degree: d, elements, labels }
}

type Key = (usize, Wedge, Monomial);

fn flatten(c: &Cochain) -> BTreeMap<Key, CycNum> {
    let mut out = BTreeMap::new();
    for (g, form) in c.components() {
        for (w, f) in form.terms() {
            for (m, x) in f.terms() {
                out.insert((g, *w, *m), x.clone());
            }
        }
    }
    out
}

fn unflatten(dim: usize, degree: usize, v: &BTreeMap<Key, CycNum>) -> Cochain {
    let mut out = Cochain::zero(dim, degree);
    for ((g, w, m), x) in v {
        out.add_term(*g, *w, &Poly::term(x.clone(), *m, dim, crate::matgroup::BasisId::Standard), &CycNum::one());
    }
    out
}

/// Reduced echelon basis of the span of the given cochains.
pub fn rref_cochains(items: &[Cochain]) -> Vec<Cochain> {
    let Some(first) = items.first() else {
        return vec![];
    };
    let (dim, degree) = (first.dim(), first.degree());
    let mut rows: Vec<BTreeMap<Key, CycNum>> = Vec::new();
    for c in items {
        let mut v = flatten(c);
        for r in &rows {
            let (pk, _) = r.iter().next().expect("rows are nonzero");
            if let Some(x) = v.get(pk).cloned() {
                axpy(&mut v, r, &x.neg_ref());
            }
        }
        let Some((pk, px)) = v.iter().next().map(|(k, x)| (*k, x.clone())) else {
            continue;
        };
        let inv = px.inverse().expect("pivot nonzero");
        for x in v.values_mut() {
            *x = x.mul_ref(&inv);
        }
        for r in rows.iter_mut() {
            if let Some(x) = r.get(&pk).cloned() {
                axpy(r, &v, &x.neg_ref());
            }
        }
        rows.push(v);
    }
    rows.sort_by(|a, b| a.keys().next().cmp(&b.keys().next()));
    rows.iter().map(|r| unflatten(dim, degree, r)).collect()
}

fn axpy(y: &mut BTreeMap<Key, CycNum>, x: &BTreeMap<Key, CycNum>, a: &CycNum) {
    for (k, v) in x {
        let t = v.mul_ref(a);
        let e = y.entry(*k).or_default();
        *e += &t;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

/// Basis of `(H^p)^G` up to polynomial degree `d`: for each conjugacy class
/// representative `g`, the `Z(g)`-invariants of `H_g^p`, spread over the
/// class.
pub fn invariant_basis(group: &Group, table: &BasisTable, p: usize, d: u32) -> Result<Vec<Cochain>> {
    let mut out = Vec::new();
    for class in group.classes() {
        let g = class.rep;
        let hs = h_space_basis(group, table, g, p, d);
        if hs.is_empty() {
            continue;
        }
        let z = group.centralizer(g);
        let averaged: Vec<Cochain> = hs.elements.iter().map(|e| reynolds_over(group, &z, e)).collect();
        for alpha in rref_cochains(&averaged) {
            let mut spread = Cochain::zero(group.dim(), p);
            for &a in &class.conjugators {
                spread.add_scaled(&crate::cochain::act(group, a, &alpha), &CycNum::one());
            }
            out.push(spread);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{is_in_h, is_invariant};
    use crate::matgroup::catalog;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_from(3, 0, 2).len(), 10);
        assert_eq!(monomials_from(3, 2, 3).len(), 4);
    }

    #[test]
    fn dihedral_h_spaces() {
        let g = catalog::dihedral8();
        let t = BasisTable::new();
        let x = g.parse_word("g").unwrap();
        let hs = h_space_basis(&g, &t, x, 2, 2);
        assert_eq!(hs.len(), 3);
        assert!(hs.elements.iter().all(|e| is_in_h(&g, &t, e)));
        assert!(h_space_basis(&g, &t, x, 1, 5).is_empty());
        assert_eq!(h_space_basis(&g, &t, 0, 0, 0).len(), 1);
        let inv = invariant_basis(&g, &t, 2, 0).unwrap();
        // every non-identity element is a determinant-one bireflection
        assert!(inv.iter().all(|a| is_invariant(&g, a) && is_in_h(&g, &t, a)));
    }

    #[test]
    fn degree_two_invariants_live_on_trivial_and_bireflection_supports() {
        let groups = [
            catalog::dihedral8(),
            catalog::cyclic_diagonal(2, &[1, 0, 0]),
            catalog::cyclic_diagonal(4, &[1, 2, 0]),
            catalog::cyclic_diagonal(3, &[1, 1, 1]),
        ];
        let mut reflections = 0;
        for g in &groups {
            let t = BasisTable::new();
            for x in g.elements().filter(|&x| g.codim(x) == 1) {
                assert!(!h_space_basis(g, &t, x, 2, 1).is_empty());
                reflections += 1;
            }
            for a in invariant_basis(g, &t, 2, 2).unwrap() {
                assert!(a.support().iter().all(|&x| matches!(g.codim(x), 0 | 2)));
            }
        }
        assert!(reflections > 0);
    }
}
