use std::borrow::Cow;
use std::collections::BTreeMap;

use crate::cochain::{Cochain, Form};
use crate::error::{Error, Result};
use crate::exactnum::CycNum;
use crate::matgroup::{BasisId, BasisTable, EigenData, Group};
use crate::polyform::Poly;

/// A single-support cochain written in an eigenbasis of its support.
#[derive(Clone, Debug)]
pub struct FramedTerm<'a> {
    pub owner: usize,
    pub degree: usize,
    pub frame: Cow<'a, EigenData>,
    pub form: Form,
}

impl<'a> FramedTerm<'a> {
    pub fn new(degree: usize, frame: Cow<'a, EigenData>, form: Form) -> Result<FramedTerm<'a>> {
        if form.basis() != frame.id {
            return Err(Error::BasisMismatch(format!("form is in {:?}, frame is {:?}", form.basis(), frame.id)));
        }
        if form.terms().any(|(w, _)| w.len() != degree) {
            return Err(Error::Precondition("wedge length differs from the stated degree".into()));
        }
        Ok(FramedTerm { owner: frame.owner, degree, frame, form })
    }

    /// The `g`-component of a standard-coordinate cochain, in `B_g`.
    pub fn from_cochain(group: &'a Group, table: &'a BasisTable, alpha: &Cochain, g: usize) -> FramedTerm<'a> {
        let ed = table.get(group, g);
        let form = match alpha.component(g) {
            Some(f) => f.change_frame(&ed.inverse, &ed.basis, ed.id),
            None => Form::zero(alpha.dim(), ed.id),
        };
        FramedTerm { owner: g, degree: alpha.degree(), frame: Cow::Borrowed(ed), form }
    }

    /// `^a` of this term: same coordinates, conjugated frame.
    pub fn conjugated(&self, group: &Group, a: usize) -> FramedTerm<'static> {
        let frame = self.frame.conjugated(group, a);
        let form = self.form.clone().relabel(frame.id);
        FramedTerm { owner: frame.owner, degree: self.degree, frame: Cow::Owned(frame), form }
    }

    /// `Υ(alpha)(f_1, ..., f_p)` with arguments and result in frame coordinates.
    pub fn eval(&self, args: &[Poly]) -> Poly {
        upsilon_eval(&self.form, &self.frame, args)
    }

    /// This term as a standard-coordinate cochain.
    pub fn to_cochain(&self) -> Cochain {
        let mut c = Cochain::zero(self.form.nvars(), self.degree);
        let f = &self.frame;
        c.add_form(self.owner, &self.form.change_frame(&f.basis, &f.inverse, BasisId::Standard), &CycNum::one());
        c
    }
}

/// `Υ_{g,B}(sum_J f_J dw_J)(f_1, ..., f_p) = sum_J prod_k ^{s_1..s_{j_k - 1}}(d_{j_k} f_k) f_J`.
pub fn upsilon_eval(form: &Form, frame: &EigenData, args: &[Poly]) -> Poly {
    let n = form.nvars();
    let mut out = Poly::zero(n, frame.id);
    for a in args {
        assert_eq!(a.basis(), frame.id, "Υ arguments must be in the frame's coordinates");
    }
    'wedge: for (w, f) in form.terms() {
        let idx = w.indices();
        assert_eq!(idx.len(), args.len(), "Υ arity mismatch");
        let mut acc = f.clone();
        for (k, &j) in idx.iter().enumerate() {
            let d = args[k].twisted_partial(j, &frame.eigenvalues);
            if d.is_zero() {
                continue 'wedge;
            }
            acc = &acc * &d;
        }
        out.add_scaled(&acc, &CycNum::one());
    }
    out
}

/// Elements `sum_g f_g ḡ` of `S(V) # G`, keyed by group element.
pub type AlgElem = BTreeMap<usize, Poly>;

pub fn alg_add(acc: &mut AlgElem, g: usize, f: &Poly, c: &CycNum) {
    let n = f.nvars();
    let e = acc.entry(g).or_insert_with(|| Poly::zero(n, f.basis()));
    e.add_scaled(f, c);
    if e.is_zero() {
        acc.remove(&g);
    }
}

/// `Υ` of a whole cochain on standard-coordinate arguments, tagged by support.
pub fn tau_eval(group: &Group, table: &BasisTable, alpha: &Cochain, args: &[Poly]) -> AlgElem {
    let mut out = AlgElem::new();
    for g in alpha.support() {
        let t = FramedTerm::from_cochain(group, table, alpha, g);
        let ed = &t.frame;
        let local: Vec<Poly> = args.iter().map(|a| a.from_standard(ed).expect("standard arguments")).collect();
        let v = t.eval(&local).to_standard(ed).expect("frame coordinates");
        alg_add(&mut out, g, &v, &CycNum::one());
    }
    out
}
