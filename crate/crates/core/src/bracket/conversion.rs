use crate::bracket::{alg_add, AlgElem, FramedTerm};
use crate::cochain::{permutation_sign, permutations, proj_h, Cochain, Wedge};
use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Rat};
use crate::matgroup::{BasisId, BasisTable, Group};
use crate::polyform::Poly;

/// An element `f ḡ` of `S(V) # G`, with `f` in standard coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct BarArg {
    pub poly: Poly,
    pub elem: usize,
}

impl BarArg {
    pub fn new(poly: Poly, elem: usize) -> BarArg {
        BarArg { poly, elem }
    }

    /// `f 1̄`.
    pub fn plain(group: &Group, poly: Poly) -> BarArg {
        BarArg { poly, elem: group.identity() }
    }
}

/// `Γ(α)`: a cochain on the bar complex of `S(V) # G`, stored as the family
/// `{^a(τ α_x)}` over `a ∈ G` and `x` in the support of `α`.
#[derive(Clone, Debug)]
pub struct BarMultiplier {
    degree: usize,
    dim: usize,
    weight: Rat,
    family: Vec<FramedTerm<'static>>,
}

impl BarMultiplier {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Γ(α)(f_1 ḡ_1 ⊗ ... ⊗ f_p ḡ_p)`, keyed by group element; every key is
    /// `(a x a^-1) g_1 ... g_p` for some family member.
    pub fn eval(&self, group: &Group, args: &[BarArg]) -> Result<AlgElem> {
        if args.len() != self.degree {
            return Err(Error::Precondition(format!("expected {} arguments, got {}", self.degree, args.len())));
        }
        let mut polys = Vec::with_capacity(args.len());
        let mut prefix = group.identity();
        for a in args {
            if a.poly.basis() != BasisId::Standard || a.poly.nvars() != self.dim {
                return Err(Error::BasisMismatch("bar arguments must be standard polynomials on V".into()));
            }
            polys.push(if prefix == group.identity() { a.poly.clone() } else { a.poly.act(group.action(prefix)) });
            prefix = group.mul(prefix, a.elem);
        }
        let w = CycNum::from_rat(self.weight.clone());
        let mut out = AlgElem::new();
        for t in &self.family {
            let ed = &t.frame;
            let local: Vec<Poly> = polys.iter().map(|p| p.from_standard(ed)).collect::<Result<_>>()?;
            let v = t.eval(&local).to_standard(ed)?;
            if !v.is_zero() {
                alg_add(&mut out, group.mul(t.owner, prefix), &v, &w);
            }
        }
        Ok(out)
    }
}

/// `Γ = Θ* ∘ R ∘ τ`, using the conjugated frames `^a B_x` for `^a α_x`.
pub fn gamma(group: &Group, table: &BasisTable, alpha: &Cochain) -> BarMultiplier {
    let mut family = Vec::new();
    for x in alpha.support() {
        let base = FramedTerm::from_cochain(group, table, alpha, x);
        for a in group.elements() {
            family.push(base.conjugated(group, a));
        }
    }
    BarMultiplier {
        degree: alpha.degree(),
        dim: alpha.dim(),
        weight: Rat::new(1, group.order() as i64),
        family,
    }
}

/// `Φ*`: antisymmetrize an evaluator on `p`-tensors of standard basis vectors.
pub fn phi_star<F>(dim: usize, p: usize, mut eval: F) -> Result<Cochain>
where
    F: FnMut(&[Poly]) -> Result<AlgElem>,
{
    let vars: Vec<Poly> = (0..dim).map(|i| Poly::var(i, dim, BasisId::Standard)).collect();
    let perms = permutations(p);
    let mut out = Cochain::zero(dim, p);
    for w in Wedge::all(dim, p) {
        let idx = w.indices();
        for perm in &perms {
            let args: Vec<Poly> = perm.iter().map(|&k| vars[idx[k]].clone()).collect();
            let sign = CycNum::from_int(permutation_sign(perm) as i64);
            for (g, f) in eval(&args)? {
                out.add_term(g, w, &f, &sign);
            }
        }
    }
    Ok(out)
}

/// `Γ' = proj_H ∘ Φ* ∘ res`, for `p <= 3`.
pub fn gamma_prime(group: &Group, table: &BasisTable, m: &BarMultiplier) -> Result<Cochain> {
    let p = m.degree();
    if p > 3 {
        return Err(Error::Unsupported(format!("Γ' is implemented for degree at most 3, got {p}")));
    }
    let e = group.identity();
    let raw = phi_star(m.dim(), p, |args| {
        let bar: Vec<BarArg> = args.iter().map(|f| BarArg::new(f.clone(), e)).collect();
        m.eval(group, &bar)
    })?;
    Ok(proj_h(group, table, &raw))
}
