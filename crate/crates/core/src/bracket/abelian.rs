//! Closed forms for degree-2 brackets over diagonal abelian groups.

use crate::cochain::{proj_h, Cochain, Wedge};
use crate::error::{Error, Result};
use crate::exactnum::{quantum_integer, CycNum, Rat};
use crate::matgroup::{BasisTable, Group};
use crate::polyform::{Monomial, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelianCase {
    /// Equal exterior parts.
    Identical,
    /// Exterior parts share one index.
    Overlapping,
    /// Exterior parts are disjoint.
    Disjoint,
}

#[derive(Clone, Debug)]
pub struct AbelianBracket {
    pub case: AbelianCase,
    /// One coefficient for the overlapping case, four for the disjoint case.
    pub kappa: Vec<CycNum>,
    pub bracket: Cochain,
}

struct MonoTerm {
    g: usize,
    wedge: Wedge,
    mono: Monomial,
    coeff: CycNum,
}

fn single_term(c: &Cochain) -> Result<MonoTerm> {
    let err = || Error::Precondition("expected a single monomial term of degree 2".into());
    if c.degree() != 2 {
        return Err(err());
    }
    let supp = c.support();
    let [g] = supp.as_slice() else { return Err(err()) };
    let form = c.component(*g).ok_or_else(err)?;
    if form.len() != 1 {
        return Err(err());
    }
    let (w, f) = form.terms().next().ok_or_else(err)?;
    if f.len() != 1 {
        return Err(err());
    }
    let (m, x) = f.terms().next().ok_or_else(err)?;
    Ok(MonoTerm { g: *g, wedge: *w, mono: *m, coeff: x.clone() })
}

/// `χ_i(g)` for a diagonal action.
fn chi(group: &Group, i: usize, g: usize) -> CycNum {
    group.action(g).get(i, i).clone()
}

/// `⟨χ^a, 1⟩ = (1/|G|) sum_g prod_i χ_i(g)^a_i` for an exponent vector `a`.
pub fn char_inner(group: &Group, exps: &[i64]) -> CycNum {
    let mut acc = CycNum::zero();
    for g in group.elements() {
        let mut v = CycNum::one();
        for (i, &e) in exps.iter().enumerate() {
            if e != 0 {
                v = v.mul_ref(&chi(group, i, g).pow_signed(e).expect("characters are nonzero"));
            }
        }
        acc += &v;
    }
    acc.scale(&Rat::new(1, group.order() as i64))
}

fn check_group(group: &Group) -> Result<()> {
    if !group.is_abelian() || !group.is_diagonal() {
        return Err(Error::Precondition("abelian formula needs an abelian group acting diagonally".into()));
    }
    Ok(())
}

/// Bracket of two degree-2 monomial terms over a diagonal abelian group, by
/// the character-sum formulas. The standard basis is the simultaneous
/// eigenbasis.
pub fn abelian_bracket(group: &Group, alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
    Ok(abelian_bracket_detail(group, alpha, beta)?.bracket)
}

pub fn abelian_bracket_detail(group: &Group, alpha: &Cochain, beta: &Cochain) -> Result<AbelianBracket> {
    check_group(group)?;
    let a = single_term(alpha)?;
    let b = single_term(beta)?;
    let n = group.dim();
    let table = BasisTable::new();
    let shared = Wedge(a.wedge.0 & b.wedge.0);
    let scalar = a.coeff.mul_ref(&b.coeff);
    let mut out = Cochain::zero(n, 3);
    let ai = a.wedge.indices();
    let bi = b.wedge.indices();
    let e = |m: &Monomial, i: usize| m.exp(i) as u32;
    let add = |out: &mut Cochain, mono: Monomial, order: &[usize], c: &CycNum| {
        if c.is_zero() {
            return;
        }
        let (w, s) = Wedge::from_indices(order).expect("distinct indices");
        let f = Poly::term(CycNum::one(), mono, n, crate::matgroup::BasisId::Standard);
        out.add_term(group.mul(a.g, b.g), w, &f, &c.mul_ref(&CycNum::from_int(s as i64)));
    };
    let (case, kappa) = match shared.len() {
        2 => (AbelianCase::Identical, vec![]),
        1 => {
            let s = shared.indices()[0];
            let p = if ai[0] == s { ai[1] } else { ai[0] };
            let r = if bi[0] == s { bi[1] } else { bi[0] };
            // α = sign_a f ḡ ⊗ v_p^* ∧ v_s^*, β = sign_b f' h̄ ⊗ v_s^* ∧ v_r^*
            let sign_a = if p < s { 1 } else { -1 };
            let sign_b = if s < r { 1 } else { -1 };
            let (c1, c2) = (e(&a.mono, p), e(&a.mono, s));
            let (d1, d2) = (e(&b.mono, p), e(&b.mono, s));
            let mut ca: Vec<i64> = (0..n).map(|i| e(&a.mono, i) as i64).collect();
            ca[p] -= 1;
            ca[s] -= 1;
            let mut cb: Vec<i64> = (0..n).map(|i| e(&b.mono, i) as i64).collect();
            cb[s] -= 1;
            cb[r] -= 1;
            let eps = chi(group, s, b.g);
            let eps_p = chi(group, s, a.g);
            let body = quantum_integer(c2, &eps)
                .mul_ref(&chi(group, p, b.g).pow(c1))
                .sub_ref(&quantum_integer(d2, &eps_p).mul_ref(&chi(group, p, a.g).pow(d1)));
            let kappa = char_inner(group, &ca).mul_ref(&char_inner(group, &cb)).mul_ref(&body);
            if c2 + d2 > 0 {
                let mono = a.mono.mul(&b.mono).div(&Monomial::var(s));
                let c = kappa.mul_ref(&scalar).mul_ref(&CycNum::from_int(sign_a * sign_b));
                add(&mut out, mono, &[p, s, r], &c);
            }
            (AbelianCase::Overlapping, vec![kappa])
        }
        _ => {
            if n < 4 {
                return Err(Error::Precondition("disjoint wedges need dim V >= 4".into()));
            }
            let v = [ai[0], ai[1], bi[0], bi[1]];
            let c: Vec<u32> = v.iter().map(|&i| e(&a.mono, i)).collect();
            let d: Vec<u32> = v.iter().map(|&i| e(&b.mono, i)).collect();
            let rest = |m: &Monomial| -> Vec<i64> {
                (0..n).map(|i| if v.contains(&i) { 0 } else { m.exp(i) as i64 }).collect()
            };
            let inner = |m: &Monomial, shifts: [i64; 4]| {
                let mut x = rest(m);
                for (k, &i) in v.iter().enumerate() {
                    x[i] = m.exp(i) as i64 + shifts[k];
                }
                char_inner(group, &x)
            };
            let ch = |k: usize, g: usize| chi(group, v[k], g);
            let kappa = disjoint_kappas(&c, &d, |ca, cb| inner(&a.mono, ca).mul_ref(&inner(&b.mono, cb)), ch, a.g, b.g);
            for (l, k) in kappa.iter().enumerate() {
                if c[l] + d[l] == 0 {
                    continue;
                }
                let mono = a.mono.mul(&b.mono).div(&Monomial::var(v[l]));
                let order: Vec<usize> = (0..4).filter(|&x| x != l).map(|x| v[x]).collect();
                add(&mut out, mono, &order, &k.mul_ref(&scalar));
            }
            (AbelianCase::Disjoint, kappa)
        }
    };
    let bracket = proj_h(group, &table, &out);
    Ok(AbelianBracket { case, kappa, bracket })
}

/// The four coefficients `κ_1..κ_4` of the disjoint case, for
/// `α = v^c ḡ ⊗ v_1^* ∧ v_2^*` and `β = v^d h̄ ⊗ v_3^* ∧ v_4^*`.
fn disjoint_kappas(
    c: &[u32],
    d: &[u32],
    inner: impl Fn([i64; 4], [i64; 4]) -> CycNum,
    ch: impl Fn(usize, usize) -> CycNum,
    g: usize,
    h: usize,
) -> Vec<CycNum> {
    let q = quantum_integer;
    let k1 = inner([-1, -1, 0, 0], [0, 0, -1, -1]).mul_ref(&q(d[0], &ch(0, g)));
    let k2 = inner([-1, -1, 0, 0], [0, 0, -1, -1])
        .mul_ref(&q(d[1], &ch(1, g)))
        .mul_ref(&ch(0, g).pow(d[0]))
        .neg_ref();
    let k3 = inner([-1, -1, 0, 0], [0, 0, -1, -1])
        .mul_ref(&q(c[2], &ch(2, h)))
        .mul_ref(&ch(0, h).pow(c[0]).mul_ref(&ch(1, h).pow(c[1])));
    let k4 = inner([-1, -1, 0, 0], [0, 0, -1, -1])
        .mul_ref(&q(c[3], &ch(3, h)))
        .mul_ref(&ch(0, h).pow(c[0]).mul_ref(&ch(1, h).pow(c[1])).mul_ref(&ch(2, h).pow(c[2])))
        .neg_ref();
    vec![k1, k2, k3, k4]
}
