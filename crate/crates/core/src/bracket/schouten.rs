use crate::cochain::{Cochain, Wedge};
use crate::error::{Error, Result};
use crate::exactnum::CycNum;
use crate::matgroup::Group;

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Prebracket of cochains supported on elements acting trivially, where it
/// reduces to the Schouten-Nijenhuis bracket of polyvector fields:
///
/// `sum_k (-1)^((q-1)(k-1)) d_{j_k}(f_2) f_1 ḡh ⊗ dv_{I_k}
///  - (-1)^((p-1)(q-1)) sum_k (-1)^((p-1)(k-1)) d_{l_k}(f_1) f_2 h̄g ⊗ dv_{I'_k}`
///
/// with `I_k = (j_1..j_{k-1}, L, j_{k+1}..j_p)` and
/// `I'_k = (l_1..l_{k-1}, J, l_{k+1}..l_q)`.
pub fn sn_bracket(group: &Group, alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
    for g in alpha.support().into_iter().chain(beta.support()) {
        if !group.in_kernel(g) {
            return Err(Error::Precondition(format!(
                "element {} acts nontrivially; the Schouten-Nijenhuis form needs trivial action",
                group.word(g)
            )));
        }
    }
    let (p, q) = (alpha.degree(), beta.degree());
    let m = (p + q).checked_sub(1).ok_or_else(|| Error::Precondition("bracket of two degree-0 classes".into()))?;
    let mut out = Cochain::zero(group.dim(), m);
    let outer = -sign((p as i64 - 1) * (q as i64 - 1));
    for (g, fa) in alpha.components() {
        for (h, fb) in beta.components() {
            for (j, f1) in fa.terms() {
                for (l, f2) in fb.terms() {
                    let jv = j.indices();
                    let lv = l.indices();
                    half(&mut out, group.mul(g, h), &jv, &lv, f1, f2, q, 1);
                    half(&mut out, group.mul(h, g), &lv, &jv, f2, f1, p, outer);
                }
            }
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn half(
    out: &mut Cochain,
    tag: usize,
    jv: &[usize],
    lv: &[usize],
    f1: &crate::polyform::Poly,
    f2: &crate::polyform::Poly,
    q: usize,
    overall: i64,
) {
    for (k, &jk) in jv.iter().enumerate() {
        let d = f2.quantum_partial(jk, &CycNum::one());
        if d.is_zero() {
            continue;
        }
        let mut idx: Vec<usize> = jv[..k].to_vec();
        idx.extend_from_slice(lv);
        idx.extend_from_slice(&jv[k + 1..]);
        let Some((w, s)) = Wedge::from_indices(&idx) else {
            continue;
        };
        let c = overall * sign((q as i64 - 1) * k as i64) * s as i64;
        out.add_term(tag, w, &(&d * f1), &CycNum::from_int(c));
    }
}
