//! Graded Hecke algebras: parameter spaces, PBW relations and the first
//! multiplication map of the associated infinitesimal deformation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bracket::{gamma, AlgElem, BarArg};
use crate::cochain::{invariant_basis, is_invariant, Cochain, Wedge};
use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Rat};
use crate::matgroup::{BasisTable, Group, Matrix};
use crate::par::{map_collect, Execution};
use crate::polyform::Poly;

/// A skew form `κ: V x V -> CG`, stored on pairs `i < j` of standard basis
/// vectors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HeckeParam {
    pub kappa: BTreeMap<(usize, usize), BTreeMap<usize, CycNum>>,
    pub dim: usize,
}

impl HeckeParam {
    /// `κ(v_i, v_j) = α(v_i ∧ v_j)` for a constant degree-2 cochain.
    pub fn from_cochain(alpha: &Cochain) -> Result<HeckeParam> {
        if alpha.degree() != 2 {
            return Err(Error::Precondition(format!("Hecke parameters have degree 2, got {}", alpha.degree())));
        }
        let mut kappa: BTreeMap<(usize, usize), BTreeMap<usize, CycNum>> = BTreeMap::new();
        for (g, form) in alpha.components() {
            for (w, f) in form.terms() {
                if !f.is_constant() {
                    return Err(Error::Precondition("Hecke parameters must be constant cochains".into()));
                }
                let idx = w.indices();
                let c = f.coeff(&crate::polyform::Monomial::ONE);
                if !c.is_zero() {
                    kappa.entry((idx[0], idx[1])).or_default().insert(g, c);
                }
            }
        }
        Ok(HeckeParam { kappa, dim: alpha.dim() })
    }

    pub fn to_cochain(&self) -> Cochain {
        let mut out = Cochain::zero(self.dim, 2);
        for (&(i, j), coeffs) in &self.kappa {
            for (&g, c) in coeffs {
                out.add_term(g, Wedge::from_sorted(&[i, j]), &Poly::one(self.dim, crate::matgroup::BasisId::Standard), c);
            }
        }
        out
    }

    /// `κ(v_i, v_j)`, using skew-symmetry for `i > j`.
    pub fn value(&self, i: usize, j: usize) -> BTreeMap<usize, CycNum> {
        if i == j {
            return BTreeMap::new();
        }
        let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
        self.kappa
            .get(&(a, b))
            .map(|m| m.iter().map(|(g, c)| (*g, c.mul_ref(&CycNum::from_int(s)))).collect())
            .unwrap_or_default()
    }
}

/// `x_i*x_j - x_j*x_i = sum_g c_g g`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Relation {
    pub i: usize,
    pub j: usize,
    pub rhs: Vec<(String, String)>,
    pub text: String,
}

/// Sign and magnitude of `c * word` as printed in a relation.
fn relation_term(word: &str, c: &CycNum) -> (bool, String) {
    let (neg, mag) = if !c.is_compound() && c.to_string().starts_with('-') { (true, c.neg_ref()) } else { (false, c.clone()) };
    let coeff = if mag.is_compound() { format!("({mag})") } else { mag.to_string() };
    let term = match (coeff.as_str(), word) {
        (_, "1") => coeff,
        ("1", _) => word.to_string(),
        _ => format!("{coeff}*{word}"),
    };
    (neg, term)
}

pub fn pbw_relations(group: &Group, param: &HeckeParam) -> Vec<Relation> {
    let n = param.dim;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = param.value(i, j);
            let rhs: Vec<(String, String)> = v.iter().map(|(g, c)| (group.word(*g), c.to_string())).collect();
            let mut text = format!("x{}*x{} - x{}*x{} = ", i + 1, j + 1, j + 1, i + 1);
            if rhs.is_empty() {
                text.push('0');
            }
            for (k, (g, c)) in v.iter().enumerate() {
                let (neg, term) = relation_term(&group.word(*g), c);
                match (k, neg) {
                    (0, true) => text.push('-'),
                    (0, false) => {}
                    (_, true) => text.push_str(" - "),
                    (_, false) => text.push_str(" + "),
                }
                text.push_str(&term);
            }
            out.push(Relation { i: i + 1, j: j + 1, rhs, text });
        }
    }
    out
}

/// Basis of the constant part of `(H^2)^G`.
pub fn constant_cocycle_space(group: &Group) -> Result<Vec<Cochain>> {
    invariant_basis(group, &BasisTable::new(), 2, 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Summand {
    /// `C ḡ ⊗ vol_g^perp` for a bireflection.
    VolumeForm,
    /// `(ḡ ⊗ Λ^2 V^*)^{Z(g)}` for `g` acting trivially.
    Kernel,
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassContribution {
    pub rep: String,
    pub size: usize,
    pub codim: usize,
    pub summand: Summand,
    pub dim: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeckeReport {
    pub classes: Vec<ClassContribution>,
    pub total: usize,
}

fn trace(m: &Matrix) -> CycNum {
    m.trace()
}

/// `dim (Λ^2 V^*)^Z = (1/|Z|) sum_z (tr(z^-1)^2 - tr(z^-2)) / 2`.
fn kernel_dimension(group: &Group, centralizer: &[usize]) -> usize {
    let mut acc = CycNum::zero();
    for &z in centralizer {
        let zi = group.inverse(z);
        let t1 = trace(group.action(zi));
        let t2 = trace(group.action(group.mul(zi, zi)));
        acc += &t1.mul_ref(&t1).sub_ref(&t2);
    }
    let v = acc.scale(&Rat::new(1, 2 * centralizer.len() as i64));
    let r = v.as_rational().expect("character averages are rational");
    assert!(r.is_integer() && !r.is_negative(), "multiplicity must be a natural number");
    r.to_string().parse().expect("small multiplicity")
}

/// `det(h|_{(V^g)^perp})`, read off the eigenbasis of `g` (which `h` preserves
/// blockwise when it commutes with `g`).
fn perp_det(group: &Group, g: usize, h: usize) -> CycNum {
    let ed = group.eigen_data(g);
    let c = ed.perp_count;
    let local = ed.inverse.mul_ref(group.action(h)).mul_ref(&ed.basis);
    let idx: Vec<usize> = (0..c).collect();
    local.submatrix_det(&idx, &idx).expect("square block")
}

/// Per-class decomposition of the Hecke parameter space.
pub fn hecke_parameter_space(group: &Group) -> HeckeReport {
    let reps: Vec<usize> = group.classes().iter().map(|c| c.rep).collect();
    let classes = map_collect(Execution::default(), &reps, |&g| {
        let codim = group.codim(g);
        let z = group.centralizer(g);
        let size = group.class_of(g).members.len();
        let (summand, dim, reason) = match codim {
            0 => {
                let d = kernel_dimension(group, &z);
                (Summand::Kernel, d, "acts trivially".to_string())
            }
            2 => {
                if let Some(&h) = z.iter().find(|&&h| !perp_det(group, g, h).is_one()) {
                    (Summand::None, 0, format!("det of {} on the perp space is not 1", group.word(h)))
                } else {
                    (Summand::VolumeForm, 1, "bireflection".to_string())
                }
            }
            c => (Summand::None, 0, format!("codim {c}")),
        };
        ClassContribution { rep: group.word(g), size, codim, summand, dim, reason }
    });
    let total = classes.iter().map(|c| c.dim).sum();
    HeckeReport { classes, total }
}

/// `μ_1(f_1 h̄_1 ⊗ f_2 h̄_2)` together with bookkeeping on degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct Mu1 {
    pub value: AlgElem,
    /// Polynomial degree of `α`, when homogeneous.
    pub alpha_degree: Option<u32>,
    /// `deg μ_1(f_1, f_2) - deg f_1 - deg f_2` on homogeneous inputs.
    pub degree_shift: Option<i64>,
    pub constant: bool,
}

pub fn mu1(group: &Group, alpha: &Cochain, left: &BarArg, right: &BarArg) -> Result<Mu1> {
    if alpha.degree() != 2 {
        return Err(Error::Precondition(format!("μ_1 needs a degree-2 cocycle, got degree {}", alpha.degree())));
    }
    if !is_invariant(group, alpha) {
        return Err(Error::Precondition("μ_1 needs a G-invariant cocycle; apply the Reynolds operator first".into()));
    }
    let table = BasisTable::new();
    let m = gamma(group, &table, alpha);
    let value = m.eval(group, &[left.clone(), right.clone()])?;
    let homogeneous = alpha.components().all(|(_, f)| f.terms().all(|(_, p)| p.is_homogeneous()));
    let alpha_degree = if homogeneous { alpha.poly_degree() } else { None };
    Ok(Mu1 {
        value,
        alpha_degree,
        degree_shift: alpha_degree.map(|d| d as i64 - 2),
        constant: alpha_degree == Some(0) || alpha.is_zero(),
    })
}
