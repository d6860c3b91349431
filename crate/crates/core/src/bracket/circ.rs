//! The operation `α ∘̄ β` of the prebracket, evaluated two ways.

use crate::bracket::FramedTerm;
use crate::cochain::{permutation_sign, permutations, Form, MinorCache, Wedge};
use crate::error::{Error, Result};
use crate::exactnum::CycNum;
use crate::matgroup::{BasisId, Group, Matrix};
use crate::polyform::Poly;

const STD: BasisId = BasisId::Standard;

fn sign(e: i64) -> CycNum {
    CycNum::from_int(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

struct DirectSetup {
    /// `e_i` in the first frame.
    e1: Vec<Poly>,
    /// `e_i` in the second frame.
    e2: Vec<Poly>,
    /// `^h e_i` in the first frame.
    he1: Vec<Poly>,
    /// second-frame to first-frame coordinates.
    m21: Matrix,
}

fn setup(group: &Group, alpha: &FramedTerm, beta: &FramedTerm) -> DirectSetup {
    let n = group.dim();
    let f1 = &alpha.frame;
    let f2 = &beta.frame;
    let h = group.action(beta.owner);
    let e1 = (0..n).map(|i| Poly::linear(&f1.inverse.column(i), f1.id)).collect();
    let e2 = (0..n).map(|i| Poly::linear(&f2.inverse.column(i), f2.id)).collect();
    let he1 = (0..n).map(|i| Poly::linear(&f1.inverse.mul_vec(&h.column(i)), f1.id)).collect();
    DirectSetup { e1, e2, he1, m21: f1.inverse.mul_ref(&f2.basis) }
}

fn summand(alpha: &FramedTerm, beta: &FramedTerm, s: &DirectSetup, t: &[usize]) -> Poly {
    let p = alpha.degree;
    let q = beta.degree;
    let m = t.len();
    let f1 = &alpha.frame;
    let mut total = Poly::zero(alpha.form.nvars(), f1.id);
    for k in 1..=p {
        let inner_args: Vec<Poly> = t[k - 1..k - 1 + q].iter().map(|&i| s.e2[i].clone()).collect();
        let inner = beta.eval(&inner_args);
        if inner.is_zero() {
            continue;
        }
        let inner = inner.change_coords(&s.m21, f1.id);
        let mut args: Vec<Poly> = t[..k - 1].iter().map(|&i| s.e1[i].clone()).collect();
        args.push(inner);
        args.extend(t[k - 1 + q..m].iter().map(|&i| s.he1[i].clone()));
        let v = alpha.eval(&args);
        total.add_scaled(&v, &sign(((q as i64) - 1) * (k as i64 - 1)));
    }
    total
}

/// One summand of the defining sum for the ordered index tuple `order`
/// (0-based standard indices), summed over `k`. The result is in the
/// coordinates of `alpha`'s frame.
pub fn circ_direct_summand(group: &Group, alpha: &FramedTerm, beta: &FramedTerm, order: &[usize]) -> Result<Poly> {
    let m = (alpha.degree + beta.degree).checked_sub(1).ok_or_else(|| Error::Precondition("degree -1".into()))?;
    if order.len() != m {
        return Err(Error::Precondition(format!("need {m} indices, got {}", order.len())));
    }
    let s = setup(group, alpha, beta);
    Ok(summand(alpha, beta, &s, order))
}

/// `α ∘̄ β` from the definition: an alternating sum over all orderings of
/// each increasing multi-index, evaluated on standard basis vectors. The
/// result is tagged `gh` and written in standard coordinates.
pub fn circ_direct(group: &Group, alpha: &FramedTerm, beta: &FramedTerm) -> Result<(usize, Form)> {
    let n = group.dim();
    let tag = group.mul(alpha.owner, beta.owner);
    let mut out = Form::zero(n, STD);
    let p = alpha.degree;
    let q = beta.degree;
    if p == 0 || alpha.form.is_zero() || beta.form.is_zero() {
        return Ok((tag, out));
    }
    let m = p + q - 1;
    let s = setup(group, alpha, beta);
    let perms = permutations(m);
    let f1 = &alpha.frame;
    for w in Wedge::all(n, m) {
        let idx = w.indices();
        let mut total = Poly::zero(n, f1.id);
        for perm in &perms {
            let t: Vec<usize> = perm.iter().map(|&j| idx[j]).collect();
            let v = summand(alpha, beta, &s, &t);
            total.add_scaled(&v, &CycNum::from_int(permutation_sign(perm) as i64));
        }
        if !total.is_zero() {
            out.add_term(w, &total.to_standard(f1)?, &CycNum::one());
        }
    }
    Ok((tag, out))
}

/// `α ∘̄ β` by the determinant formula
/// `sum_k (-1)^ν(k) det(M[J_k; I - L]) ^{s_1..s_{j_k - 1}}(d_{j_k} f_h') f_g`,
/// evaluated on the covectors of `beta`'s frame and returned in standard
/// coordinates. Requires each wedge of `beta` to contain the perp directions
/// of its frame.
pub fn circ_det(group: &Group, alpha: &FramedTerm, beta: &FramedTerm) -> Result<(usize, Form)> {
    let n = group.dim();
    let tag = group.mul(alpha.owner, beta.owner);
    let p = alpha.degree;
    let q = beta.degree;
    if p == 0 || alpha.form.is_zero() || beta.form.is_zero() {
        return Ok((tag, Form::zero(n, STD)));
    }
    let m = p + q - 1;
    let f1 = &alpha.frame;
    let f2 = &beta.frame;
    let perp2 = Wedge::prefix(f2.perp_count);
    let mat = f1.inverse.mul_ref(&f2.basis);
    let qq = q as i64;
    let binom = qq * (qq - 1) / 2;
    // I (second-frame covectors) -> polynomial in first-frame coordinates
    let mut acc: std::collections::BTreeMap<Wedge, Poly> = Default::default();
    for (l, fh) in beta.form.terms() {
        if !l.contains_all(perp2) {
            return Err(Error::Precondition(
                "determinant formula needs β in H_h: every wedge must contain the perp directions".into(),
            ));
        }
        let fh1 = fh.change_coords(&mat, f1.id);
        let lidx = l.indices();
        for (j, fg) in alpha.form.terms() {
            let jidx = j.indices();
            let partials: Vec<Poly> = jidx
                .iter()
                .map(|&jk| {
                    let d = fh1.twisted_partial(jk, &f1.eigenvalues);
                    if d.is_zero() {
                        d
                    } else {
                        &d * fg
                    }
                })
                .collect();
            if partials.iter().all(Poly::is_zero) {
                continue;
            }
            for i in Wedge::all(n, m).into_iter().filter(|i| i.contains_all(*l)) {
                let cols = i.minus(*l).indices();
                let lam: i64 = lidx.iter().map(|&ls| i.rank_of(ls) as i64 + 1).sum();
                for (k, part) in partials.iter().enumerate() {
                    if part.is_zero() {
                        continue;
                    }
                    let rows: Vec<usize> = jidx.iter().enumerate().filter(|(r, _)| *r != k).map(|(_, &x)| x).collect();
                    let d = mat.minor(&rows, &cols);
                    if d.is_zero() {
                        continue;
                    }
                    let nu = 1 - qq - (k as i64 + 1) + lam - binom;
                    let c = d.mul_ref(&sign(nu));
                    acc.entry(i).or_insert_with(|| Poly::zero(n, f1.id)).add_scaled(part, &c);
                }
            }
        }
    }
    let mut out = Form::zero(n, STD);
    let mut minors = MinorCache::new(&f2.inverse);
    for (i, f) in acc {
        if f.is_zero() {
            continue;
        }
        let fs = f.to_standard(f1)?;
        for (k, d) in minors.expand(i) {
            out.add_term(*k, &fs, d);
        }
    }
    Ok((tag, out))
}
