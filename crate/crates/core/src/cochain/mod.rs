//! Cochains `sum_g f ⊗ e_J^*` on `S(V) # G` and the spaces `H_g^p`.
//!
//! A [`Cochain`] stores each group component as a [`Form`] in standard
//! coordinates. Eigen-coordinate views are produced on demand; projections
//! and membership tests go through the basis table but do not depend on the
//! eigenbasis chosen.

mod form;
mod hspace;
mod wedge;

use std::collections::BTreeMap;
use std::fmt;

pub use form::{Form, MinorCache};
pub use hspace::{h_space_basis, invariant_basis, rref_cochains, HSpace};
pub use wedge::{permutation_sign, permutations, Indices, Wedge};

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Rat};
use crate::matgroup::{BasisId, BasisTable, Group};
use crate::polyform::Poly;

const STD: BasisId = BasisId::Standard;

#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    dim: usize,
    degree: usize,
    terms: BTreeMap<usize, Form>,
}

impl Cochain {
    pub fn zero(dim: usize, degree: usize) -> Cochain {
        Cochain { dim, degree, terms: BTreeMap::new() }
    }

    /// `f ḡ ⊗ e_{i_1}^* ∧ ... ∧ e_{i_p}^*` with 0-based indices in any order.
    pub fn monomial_term(g: usize, f: &Poly, indices: &[usize]) -> Result<Cochain> {
        if f.basis() != STD {
            return Err(Error::BasisMismatch("cochain coefficients must be in standard coordinates".into()));
        }
        let n = f.nvars();
        if indices.iter().any(|&i| i >= n) {
            return Err(Error::Precondition(format!("wedge index out of range for dimension {n}")));
        }
        let mut c = Cochain::zero(n, indices.len());
        if let Some((w, s)) = Wedge::from_indices(indices) {
            c.add_term(g, w, f, &CycNum::from_int(s as i64));
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    pub fn component(&self, g: usize) -> Option<&Form> {
        self.terms.get(&g)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Form)> {
        self.terms.iter().map(|(g, f)| (*g, f))
    }

    /// Largest polynomial degree appearing.
    pub fn poly_degree(&self) -> Option<u32> {
        self.terms.values().flat_map(|f| f.terms().filter_map(|(_, p)| p.degree())).max()
    }

    pub fn add_term(&mut self, g: usize, w: Wedge, f: &Poly, c: &CycNum) {
        assert_eq!(w.len(), self.degree, "wedge length must match cochain degree");
        let form = self.terms.entry(g).or_insert_with(|| Form::zero(self.dim, STD));
        form.add_term(w, f, c);
        if form.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add_form(&mut self, g: usize, form: &Form, c: &CycNum) {
        assert_eq!(form.basis(), STD, "cochain components are stored in standard coordinates");
        for (w, f) in form.terms() {
            self.add_term(g, *w, f, c);
        }
    }

    pub fn add_scaled(&mut self, other: &Cochain, c: &CycNum) {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree), "cochain shape mismatch");
        for (g, form) in &other.terms {
            self.add_form(*g, form, c);
        }
    }

    pub fn checked_add(&self, other: &Cochain) -> Result<Cochain> {
        if (self.dim, self.degree) != (other.dim, other.degree) {
            return Err(Error::Precondition(format!(
                "cannot add cochains of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        out.add_scaled(other, &CycNum::one());
        Ok(out)
    }

    pub fn scale(&self, c: &CycNum) -> Cochain {
        let mut out = Cochain::zero(self.dim, self.degree);
        out.add_scaled(self, c);
        out
    }

    pub fn scale_rat(&self, r: Rat) -> Cochain {
        self.scale(&CycNum::from_rat(r))
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&CycNum::from_int(-1))
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.add_scaled(other, &CycNum::from_int(-1));
        out
    }

    /// The part supported on a single element.
    pub fn restrict_to(&self, g: usize) -> Cochain {
        let mut out = Cochain::zero(self.dim, self.degree);
        if let Some(f) = self.terms.get(&g) {
            out.terms.insert(g, f.clone());
        }
        out
    }

    /// Each component written in the eigenbasis of its support element.
    pub fn in_frames(&self, group: &Group, table: &BasisTable) -> Vec<(usize, Form)> {
        self.terms
            .iter()
            .map(|(g, form)| {
                let ed = table.get(group, *g);
                (*g, form.change_frame(&ed.inverse, &ed.basis, ed.id))
            })
            .collect()
    }

    /// Inverse of [`Cochain::in_frames`].
    pub fn from_frames(dim: usize, degree: usize, group: &Group, table: &BasisTable, parts: &[(usize, Form)]) -> Cochain {
        let mut out = Cochain::zero(dim, degree);
        for (g, form) in parts {
            let ed = table.get(group, *g);
            assert_eq!(form.basis(), ed.id, "component is not in the table's eigenbasis");
            out.add_form(*g, &form.change_frame(&ed.basis, &ed.inverse, STD), &CycNum::one());
        }
        out
    }

    pub fn display(&self, group: &Group) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut lines = Vec::new();
        for (g, form) in &self.terms {
            for (w, f) in form.terms() {
                let cov: Vec<String> = w.indices().iter().map(|i| format!("x{}*", i + 1)).collect();
                let cov = if cov.is_empty() { "1".to_string() } else { cov.join(" ∧ ") };
                lines.push(format!("[{}] ({}) ⊗ {}", group.word(*g), f, cov));
            }
        }
        lines.join("\n")
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(deg {}) {{", self.degree)?;
        for (g, form) in &self.terms {
            for (w, p) in form.terms() {
                write!(f, " [{g}] ({p}) {w:?};")?;
            }
        }
        write!(f, " }}")
    }
}

/// `^a alpha`: support `g -> a g a^-1`, polynomials `e_j -> a e_j`, and
/// covectors `e_J^* -> sum_I det((a^-1)[J; I]) e_I^*`.
pub fn act(group: &Group, a: usize, alpha: &Cochain) -> Cochain {
    if a == group.identity() {
        return alpha.clone();
    }
    let m = group.action(a);
    let minv = group.action(group.inverse(a));
    let mut out = Cochain::zero(alpha.dim, alpha.degree);
    for (g, form) in &alpha.terms {
        out.add_form(group.conjugate(a, *g), &form.change_frame(m, minv, STD), &CycNum::one());
    }
    out
}

/// Average over the listed elements.
pub fn reynolds_over(group: &Group, elems: &[usize], alpha: &Cochain) -> Cochain {
    let mut out = Cochain::zero(alpha.dim, alpha.degree);
    for &a in elems {
        out.add_scaled(&act(group, a, alpha), &CycNum::one());
    }
    out.scale_rat(Rat::new(1, elems.len() as i64))
}

/// Reynolds operator `R = (1/|G|) sum_a ^a(-)`.
pub fn reynolds(group: &Group, alpha: &Cochain) -> Cochain {
    let all: Vec<usize> = group.elements().collect();
    reynolds_over(group, &all, alpha)
}

pub fn is_invariant(group: &Group, alpha: &Cochain) -> bool {
    group.generators().iter().all(|&s| act(group, s, alpha) == *alpha)
}

/// Keep the coefficients in `S(V^g)` of each component, all wedges.
pub fn proj_vg(group: &Group, table: &BasisTable, alpha: &Cochain) -> Cochain {
    project(group, table, alpha, false)
}

/// Projection onto `H = sum_g S(V^g) ⊗ Λ(V^g)^* ⊗ det((V^g)^perp)^*`.
pub fn proj_h(group: &Group, table: &BasisTable, alpha: &Cochain) -> Cochain {
    project(group, table, alpha, true)
}

fn project(group: &Group, table: &BasisTable, alpha: &Cochain, wedges: bool) -> Cochain {
    let parts: Vec<(usize, Form)> = alpha
        .in_frames(group, table)
        .into_iter()
        .map(|(g, form)| {
            let c = table.get(group, g).perp_count;
            (g, project_frame_form(&form, c, wedges))
        })
        .collect();
    Cochain::from_frames(alpha.dim, alpha.degree, group, table, &parts)
}

/// Projection of a form already written in an eigenbasis with `c` perp
/// directions.
pub(crate) fn project_frame_form(form: &Form, c: usize, wedges: bool) -> Form {
    let perp = Wedge::prefix(c);
    form.map_polys(form.basis(), |w, f| {
        if wedges && !w.contains_all(perp) {
            return None;
        }
        let r = f.restrict_from(c);
        (!r.is_zero()).then_some(r)
    })
}

pub fn is_in_h(group: &Group, table: &BasisTable, alpha: &Cochain) -> bool {
    proj_h(group, table, alpha) == *alpha
}

/// Koszul dual differential:
/// `(d* alpha)_g(e_{j_0} .. e_{j_p}) = sum_i (-1)^i (e_{j_i} - ^g e_{j_i}) alpha_g(.. omit j_i ..)`.
pub fn koszul_dual_diff(group: &Group, alpha: &Cochain) -> Cochain {
    let n = alpha.dim;
    let mut out = Cochain::zero(n, alpha.degree + 1);
    for (g, form) in &alpha.terms {
        let a = group.action(*g);
        let lin: Vec<Poly> = (0..n)
            .map(|j| {
                let mut col = a.column(j);
                for x in col.iter_mut() {
                    *x = x.neg_ref();
                }
                col[j] += &CycNum::one();
                Poly::linear(&col, STD)
            })
            .collect();
        for (w, f) in form.terms() {
            for j in (0..n).filter(|&j| !w.contains(j)) {
                let sign = if w.rank_of(j) % 2 == 0 { 1 } else { -1 };
                let term = f * &lin[j];
                out.add_term(*g, w.with(j), &term, &CycNum::from_int(sign));
            }
        }
    }
    out
}
