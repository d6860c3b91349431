//! Eigenbases adapted to `V = (V^g)^perp + V^g`.

use std::collections::HashMap;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::exactnum::CycNum;
use crate::matgroup::{Group, Matrix};

/// Which coordinate system a polynomial or form is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisId {
    Standard,
    /// Eigenbasis of the given element.
    Eigen { owner: usize },
    /// `^a B_g`, an eigenbasis of `a g a^-1`.
    Conjugate { owner: usize, by: usize },
    /// A user-supplied basis or an ad hoc change of variables.
    Custom(u32),
}

/// An ordered eigenbasis `w_1, ..., w_n` of an element `g`.
///
/// The first `perp_count` vectors span `(V^g)^perp` and have eigenvalues
/// different from 1; the rest span `V^g`. Column `i` of `basis` is `w_i` in
/// standard coordinates and `inverse` is its inverse.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub owner: usize,
    pub id: BasisId,
    pub basis: Matrix,
    pub inverse: Matrix,
    pub eigenvalues: Vec<CycNum>,
    /// `eigenvalues[i] = zeta_N^exponents[i]` for the session conductor `N`.
    pub exponents: Vec<u32>,
    pub perp_count: usize,
}

impl EigenData {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn codim(&self) -> usize {
        self.perp_count
    }

    /// Matrix sending standard coordinates to eigen coordinates.
    pub fn to_standard(&self) -> &Matrix {
        &self.basis
    }

    pub fn from_standard(&self) -> &Matrix {
        &self.inverse
    }

    /// `^a B_g`: the basis `a w_1, ..., a w_n` of `a g a^-1`, with the same
    /// eigenvalues.
    pub fn conjugated(&self, group: &Group, a: usize) -> EigenData {
        if a == group.identity() {
            return self.clone();
        }
        let owner_g = match self.id {
            BasisId::Eigen { owner } => owner,
            _ => self.owner,
        };
        EigenData {
            owner: group.conjugate(a, self.owner),
            id: BasisId::Conjugate { owner: owner_g, by: a },
            basis: group.action(a).mul_ref(&self.basis),
            inverse: self.inverse.mul_ref(group.action(group.inverse(a))),
            eigenvalues: self.eigenvalues.clone(),
            exponents: self.exponents.clone(),
            perp_count: self.perp_count,
        }
    }

    pub(crate) fn compute(group: &Group, g: usize) -> EigenData {
        let a = group.action(g);
        let n = group.dim();
        let cond = group.conductor();
        let ord = group.order_of(g);
        let mut cols = Vec::new();
        let mut eig = Vec::new();
        let mut exps = Vec::new();
        let ks = (1..cond).chain(std::iter::once(0));
        for k in ks {
            if (k as u64 * ord as u64) % cond as u64 != 0 {
                continue;
            }
            let eps = CycNum::root_of_unity(k as i64, cond);
            let shifted = a.sub_ref(&Matrix::identity(n).scale(&eps));
            for v in shifted.kernel() {
                cols.push(v);
                eig.push(eps.clone());
                exps.push(k);
            }
        }
        assert_eq!(cols.len(), n, "finite-order matrices are diagonalisable");
        let perp = exps.iter().filter(|&&k| k != 0).count();
        let basis = Matrix::from_columns(&cols);
        let inverse = basis.inverse().expect("eigenvectors are independent");
        EigenData { owner: g, id: BasisId::Eigen { owner: g }, basis, inverse, eigenvalues: eig, exponents: exps, perp_count: perp }
    }

    /// Validate a user-chosen eigenbasis of `g` given by the columns of `basis`.
    pub fn custom(group: &Group, g: usize, basis: Matrix, id: BasisId) -> Result<EigenData> {
        let n = group.dim();
        if basis.rows() != n || basis.cols() != n {
            return Err(Error::Precondition(format!("basis must be {n}x{n}")));
        }
        let basis = basis.promote(group.conductor())?;
        let inverse = basis.inverse()?;
        let a = group.action(g);
        let cond = group.conductor();
        let mut eig = Vec::with_capacity(n);
        let mut exps = Vec::with_capacity(n);
        for j in 0..n {
            let col = basis.column(j);
            let img = a.mul_vec(&col);
            let p = col.iter().position(|x| !x.is_zero()).expect("invertible basis has nonzero columns");
            let eps = img[p].checked_div(&col[p])?;
            if img.iter().zip(&col).any(|(y, x)| *y != eps.mul_ref(x)) {
                return Err(Error::Precondition(format!("column {} is not an eigenvector", j + 1)));
            }
            let k = eps
                .unity_exponent(cond)
                .ok_or_else(|| Error::Precondition("eigenvalue is not a root of unity".into()))?;
            eig.push(eps);
            exps.push(k);
        }
        let perp = exps.iter().filter(|&&k| k != 0).count();
        if exps[..perp].contains(&0) {
            return Err(Error::Precondition("eigenvalue-1 vectors must come last".into()));
        }
        Ok(EigenData { owner: g, id, basis, inverse, eigenvalues: eig, exponents: exps, perp_count: perp })
    }
}

/// Choice of eigenbasis `B_g` for each group element.
///
/// Elements without an override use the group's default basis.
#[derive(Clone, Debug, Default)]
pub struct BasisTable {
    overrides: HashMap<usize, EigenData>,
}

impl BasisTable {
    pub fn new() -> BasisTable {
        BasisTable::default()
    }

    pub fn get<'a>(&'a self, group: &'a Group, g: usize) -> &'a EigenData {
        self.overrides.get(&g).unwrap_or_else(|| group.eigen_data(g))
    }

    pub fn set(&mut self, group: &Group, g: usize, basis: Matrix) -> Result<()> {
        let id = BasisId::Eigen { owner: g };
        let ed = EigenData::custom(group, g, basis, id)?;
        self.overrides.insert(g, ed);
        Ok(())
    }

    /// A table where each default basis vector is rescaled by a nonzero
    /// rational and the vectors within each eigenspace are mixed by a random
    /// unitriangular matrix, then shuffled within the perp and fixed blocks.
    pub fn randomized(group: &Group, rng: &mut impl rand::Rng) -> BasisTable {
        let mut t = BasisTable::new();
        for g in 0..group.order() {
            let ed = group.eigen_data(g);
            let n = ed.dim();
            let mut cols: Vec<Vec<CycNum>> = (0..n).map(|j| ed.basis.column(j)).collect();
            for j in 0..n {
                for i in 0..j {
                    if ed.exponents[i] == ed.exponents[j] && rng.random_bool(0.5) {
                        let c = CycNum::from_int(rng.random_range(-2..=2));
                        let ci = cols[i].clone();
                        for (x, y) in cols[j].iter_mut().zip(ci) {
                            *x += &c.mul_ref(&y);
                        }
                    }
                }
                let mut s = rng.random_range(1..=3i64);
                if rng.random_bool(0.5) {
                    s = -s;
                }
                let s = CycNum::from_frac(s, rng.random_range(1..=2));
                for x in cols[j].iter_mut() {
                    *x = x.mul_ref(&s);
                }
            }
            let (perp, fixed) = cols.split_at_mut(ed.perp_count);
            perp.shuffle(rng);
            fixed.shuffle(rng);
            t.set(group, g, Matrix::from_columns(&cols)).expect("random eigenbasis is valid");
        }
        t
    }
}
