//! Finite matrix groups, conjugacy data and adapted eigenbases.

mod eigen;
mod group;
mod matrix;

pub use eigen::{BasisId, BasisTable, EigenData};
pub use group::{ConjugacyClass, Group, GroupSpec};
pub use matrix::Matrix;

use crate::error::Result;
use crate::exactnum::CycNum;

/// `P_1^-1 P_2`: column `i` holds the `B_2` vector `i` in `B_1` coordinates.
pub fn change_of_basis(b1: &EigenData, b2: &EigenData) -> Matrix {
    b1.inverse.mul_ref(&b2.basis)
}

pub fn submatrix_det(m: &Matrix, rows: &[usize], cols: &[usize]) -> Result<CycNum> {
    m.submatrix_det(rows, cols)
}

/// Small groups used throughout the tests, benches and documentation.
pub mod catalog {
    use super::*;

    fn c(s: &str, n: u32) -> CycNum {
        CycNum::parse(s, n).expect("catalog entries parse")
    }

    fn mat(rows: &[&[&str]], n: u32) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| c(s, n)).collect()).collect()).expect("square")
    }

    /// Dihedral group of order 8 on `C^3` generated by
    /// `g = [[0,i,0],[i,0,0],[0,0,1]]` and `h = diag(1,-1,-1)`.
    pub fn dihedral8() -> Group {
        let g = mat(&[&["0", "i", "0"], &["i", "0", "0"], &["0", "0", "1"]], 4);
        let h = mat(&[&["1", "0", "0"], &["0", "-1", "0"], &["0", "0", "-1"]], 4);
        Group::generate(GroupSpec::new(3, 4, vec![g, h]).names(&["g", "h"])).expect("D8 is finite")
    }

    /// Cyclic group of order `m` acting diagonally by `zeta_m^weights[i]`.
    /// The order is `m` even when the action has a kernel.
    pub fn cyclic_diagonal(m: u32, weights: &[i64]) -> Group {
        let g = Matrix::diagonal(weights.iter().map(|&w| CycNum::root_of_unity(w, m)).collect());
        let aux = Matrix::diagonal(vec![CycNum::root_of_unity(1, m)]);
        Group::generate(GroupSpec::new(weights.len(), m, vec![g]).names(&["g"]).aux(vec![aux]))
            .expect("cyclic group is finite")
    }

    /// `Z/2 x Z/2` generated by `diag(-1,-1,1)` and `diag(1,-1,-1)`.
    pub fn klein_diagonal() -> Group {
        let a = Matrix::diagonal([-1, -1, 1].map(CycNum::from_int).to_vec());
        let b = Matrix::diagonal([1, -1, -1].map(CycNum::from_int).to_vec());
        Group::generate(GroupSpec::new(3, 1, vec![a, b]).names(&["a", "b"])).expect("finite")
    }

    /// Cyclic group of order `m` acting trivially on `C^dim`.
    pub fn cyclic_trivial(m: u32, dim: usize) -> Group {
        let aux = Matrix::diagonal(vec![CycNum::root_of_unity(1, m)]);
        Group::generate(GroupSpec::new(dim, m, vec![Matrix::identity(dim)]).names(&["g"]).aux(vec![aux]))
            .expect("finite")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_structure() {
        let g = catalog::dihedral8();
        assert_eq!(g.order(), 8);
        assert_eq!(g.conductor(), 4);
        assert_eq!(g.exponent(), 4);
        assert_eq!(g.classes().len(), 5);
        assert!(!g.is_abelian());
        let gi = g.parse_word("g").unwrap();
        let hi = g.parse_word("h").unwrap();
        assert_eq!(g.order_of(gi), 4);
        assert_eq!(g.parse_word("g^4").unwrap(), 0);
        assert_eq!(g.parse_word("g^-1").unwrap(), g.inverse(gi));
        assert_eq!(g.mul(gi, hi), g.parse_word("g*h").unwrap());
        for x in g.elements() {
            assert_eq!(g.parse_word(&g.word(x)).unwrap(), x);
            if x != 0 {
                assert_eq!(g.codim(x), 2);
                assert!(g.det(x).is_one());
            }
        }
        assert!(g.parse_word("k").is_err());
    }

    #[test]
    fn dihedral_default_eigenbasis() {
        let g = catalog::dihedral8();
        let gi = g.parse_word("g").unwrap();
        let ed = g.eigen_data(gi);
        let i = CycNum::i();
        assert_eq!(ed.perp_count, 2);
        assert_eq!(ed.eigenvalues, vec![i.clone(), i.neg_ref(), CycNum::one()]);
        let one = CycNum::one();
        let zero = CycNum::zero();
        assert_eq!(ed.basis.column(0), vec![one.clone(), one.clone(), zero.clone()]);
        assert_eq!(ed.basis.column(1), vec![one.neg_ref(), one.clone(), zero.clone()]);
        assert_eq!(ed.basis.column(2), vec![zero.clone(), zero, one]);
    }

    #[test]
    fn conjugated_frames_are_eigenbases() {
        let g = catalog::dihedral8();
        for x in g.elements() {
            for a in g.elements() {
                let f = g.eigen_data(x).conjugated(&g, a);
                let y = g.conjugate(a, x);
                assert_eq!(f.owner, y);
                let d = f.inverse.mul_ref(g.action(y)).mul_ref(&f.basis);
                assert_eq!(d, Matrix::diagonal(f.eigenvalues.clone()));
            }
        }
    }

    #[test]
    fn non_faithful_and_bad_inputs() {
        let t = catalog::cyclic_trivial(3, 2);
        assert_eq!(t.order(), 3);
        assert_eq!(t.kernel().len(), 3);
        let z = Matrix::diagonal(vec![CycNum::from_int(2)]);
        let e = Group::generate(GroupSpec { cap: 50, ..GroupSpec::new(1, 1, vec![z]) }).unwrap_err();
        assert!(matches!(e, crate::Error::Group(_)));
        let s = Matrix::diagonal(vec![CycNum::zero()]);
        assert!(Group::generate(GroupSpec::new(1, 1, vec![s])).is_err());
    }

    #[test]
    fn session_conductor_is_promoted() {
        // Rational generator of order 3 forces conductor 3.
        let m = Matrix::from_rows(vec![
            vec![CycNum::zero(), CycNum::from_int(-1)],
            vec![CycNum::one(), CycNum::from_int(-1)],
        ])
        .unwrap();
        let g = Group::generate(GroupSpec::new(2, 1, vec![m])).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.conductor(), 3);
        assert_eq!(g.eigen_data(1).perp_count, 2);
    }
}
