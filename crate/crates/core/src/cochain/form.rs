use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use crate::cochain::Wedge;
use crate::exactnum::CycNum;
use crate::matgroup::{BasisId, Matrix};
use crate::polyform::Poly;

/// `sum_J f_J u_J^*`: polynomial coefficients on exterior powers of `V^*`.
///
/// Polynomial variables and covectors refer to the same basis `basis`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form {
    basis: BasisId,
    nvars: usize,
    terms: BTreeMap<Wedge, Poly>,
}

impl Form {
    pub fn zero(nvars: usize, basis: BasisId) -> Form {
        Form { basis, nvars, terms: BTreeMap::new() }
    }

    pub fn basis(&self) -> BasisId {
        self.basis
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Wedge, &Poly)> {
        self.terms.iter()
    }

    pub fn get(&self, w: &Wedge) -> Option<&Poly> {
        self.terms.get(w)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self += c * f u_w^*`.
    pub fn add_term(&mut self, w: Wedge, f: &Poly, c: &CycNum) {
        assert_eq!(f.basis(), self.basis, "basis mismatch in form arithmetic");
        if f.is_zero() || c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(if c.is_one() { f.clone() } else { f.scale(c) });
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_scaled(f, c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Form, c: &CycNum) {
        for (w, f) in &other.terms {
            self.add_term(*w, f, c);
        }
    }

    pub fn scale(&self, c: &CycNum) -> Form {
        let mut out = Form::zero(self.nvars, self.basis);
        out.add_scaled(self, c);
        out
    }

    pub fn map_polys(&self, basis: BasisId, f: impl Fn(&Wedge, &Poly) -> Option<Poly>) -> Form {
        let mut out = Form::zero(self.nvars, basis);
        for (w, p) in &self.terms {
            if let Some(q) = f(w, p) {
                out.add_term(*w, &q, &CycNum::one());
            }
        }
        out
    }

    /// Change both polynomial variables and covectors to a new basis.
    ///
    /// `m` has the old basis vectors as columns in new coordinates and
    /// `m_inv` is its inverse. Covectors transform as
    /// `u_I^* = sum_J det(m_inv[I; J]) v_J^*`.
    pub fn change_frame(&self, m: &Matrix, m_inv: &Matrix, new_basis: BasisId) -> Form {
        let mut out = Form::zero(self.nvars, new_basis);
        let mut minors = MinorCache::new(m_inv);
        for (w, f) in &self.terms {
            let g = f.change_coords(m, new_basis);
            for (v, d) in minors.expand(*w) {
                out.add_term(*v, &g, d);
            }
        }
        out
    }

    /// Change only the polynomial variables.
    pub fn change_poly_coords(&self, m: &Matrix, new_basis: BasisId) -> Form {
        self.map_polys(new_basis, |_, f| Some(f.change_coords(m, new_basis)))
    }

    pub fn relabel(self, basis: BasisId) -> Form {
        Form {
            basis,
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(w, f)| (w, f.relabel(basis))).collect(),
        }
    }

    pub(crate) fn insert_raw(&mut self, w: Wedge, f: Poly) {
        if !f.is_zero() {
            self.terms.insert(w, f);
        }
    }
}

/// Caches `I -> sum_J det(m[I; J]) v_J^*` for a fixed matrix.
pub struct MinorCache<'a> {
    m: &'a Matrix,
    cache: HashMap<Wedge, Vec<(Wedge, CycNum)>>,
}

impl<'a> MinorCache<'a> {
    pub fn new(m: &'a Matrix) -> MinorCache<'a> {
        MinorCache { m, cache: HashMap::new() }
    }

    pub fn expand(&mut self, w: Wedge) -> &[(Wedge, CycNum)] {
        let m = self.m;
        self.cache.entry(w).or_insert_with(|| {
            let rows = w.indices();
            if m.is_monomial() {
                let cols: Vec<usize> =
                    rows.iter().map(|&r| (0..m.cols()).find(|&c| !m.get(r, c).is_zero()).unwrap()).collect();
                let Some((v, _)) = Wedge::from_indices(&cols) else {
                    return vec![];
                };
                let d = m.minor(&rows, &v.indices());
                return vec![(v, d)];
            }
            Wedge::all(m.cols(), rows.len())
                .into_iter()
                .filter_map(|v| {
                    let d = m.minor(&rows, &v.indices());
                    (!d.is_zero()).then_some((v, d))
                })
                .collect()
        })
    }
}
