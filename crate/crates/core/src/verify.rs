//! Randomized consistency suites over a single group, and the samplers
//! they share with the test harnesses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bracket::{
    circ_det, circ_direct, gamma, gamma_prime, phi_star, tau_eval, BracketEngine, FramedTerm,
};
use crate::cochain::{
    h_space_basis, invariant_basis, is_in_h, is_invariant, koszul_dual_diff, proj_h, Cochain, Wedge,
};
use crate::error::Result;
use crate::exactnum::CycNum;
use crate::hecke::{constant_cocycle_space, hecke_parameter_space};
use crate::matgroup::{BasisId, BasisTable, Group};
use crate::polyform::{Monomial, Poly};

/// Random cochain samplers.
pub mod sample {
    use super::*;

    /// A nonzero coefficient `k zeta^j / l` with small `k`, `l`.
    pub fn coeff(group: &Group, rng: &mut impl Rng) -> CycNum {
        let n = group.conductor();
        let mut k = rng.random_range(1..=3);
        if rng.random_bool(0.5) {
            k = -k;
        }
        let c = CycNum::from_frac(k, rng.random_range(1..=2));
        c.mul_ref(&CycNum::root_of_unity(rng.random_range(0..n as i64), n))
    }

    pub fn monomial(n: usize, d: u32, rng: &mut impl Rng) -> Monomial {
        let deg = rng.random_range(0..=d);
        let mut e = [0u16; crate::polyform::MAX_VARS];
        for _ in 0..deg {
            e[rng.random_range(0..n)] += 1;
        }
        Monomial(e)
    }

    pub fn poly(group: &Group, d: u32, terms: usize, rng: &mut impl Rng) -> Poly {
        let n = group.dim();
        let mut p = Poly::zero(n, BasisId::Standard);
        for _ in 0..terms {
            let t = Poly::term(coeff(group, rng), monomial(n, d, rng), n, BasisId::Standard);
            p.add_scaled(&t, &CycNum::one());
        }
        p
    }

    /// A cochain with up to `terms` random terms on random supports.
    pub fn cochain(group: &Group, p: usize, d: u32, terms: usize, rng: &mut impl Rng) -> Cochain {
        let n = group.dim();
        let wedges = Wedge::all(n, p);
        let mut c = Cochain::zero(n, p);
        for _ in 0..terms {
            let g = rng.random_range(0..group.order());
            let w = wedges[rng.random_range(0..wedges.len())];
            let f = poly(group, d, 2, rng);
            c.add_term(g, w, &f, &CycNum::one());
        }
        c
    }

    /// A nonzero single-support element of `H^p_g` for a random `g`, if one
    /// exists within a few tries.
    pub fn h_element(group: &Group, table: &BasisTable, p: usize, d: u32, rng: &mut impl Rng) -> Option<Cochain> {
        for _ in 0..8 {
            let g = rng.random_range(0..group.order());
            let basis = h_space_basis(group, table, g, p, d);
            if basis.is_empty() {
                continue;
            }
            let mut c = Cochain::zero(group.dim(), p);
            for _ in 0..2 {
                let e = &basis.elements[rng.random_range(0..basis.len())];
                c.add_scaled(e, &coeff(group, rng));
            }
            if !c.is_zero() {
                return Some(c);
            }
        }
        None
    }

    /// A random nonzero combination of up to `k` elements of `basis`.
    pub fn combination(group: &Group, basis: &[Cochain], k: usize, rng: &mut impl Rng) -> Option<Cochain> {
        let first = basis.first()?;
        for _ in 0..8 {
            let mut c = Cochain::zero(first.dim(), first.degree());
            for _ in 0..rng.random_range(1..=k) {
                c.add_scaled(&basis[rng.random_range(0..basis.len())], &coeff(group, rng));
            }
            if !c.is_zero() {
                return Some(c);
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    failed: usize,
}

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally { name, checked: 0, failed: 0 }
    }

    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
    }

    fn done(self) -> SuiteResult {
        SuiteResult { name: self.name.into(), checked: self.checked, failed: self.failed }
    }
}

/// Run every suite on `group` with polynomial degrees up to `d`.
pub fn run(group: &Group, d: u32, seed: u64) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = group.dim();
    let table = BasisTable::new();
    let mut suites = Vec::new();

    let mut t = Tally::new("phi_star_tau_identity");
    let random_table = BasisTable::randomized(group, &mut rng);
    for _ in 0..40 {
        let p = rng.random_range(1..=n.min(3));
        let a = sample::cochain(group, p, d + 1, 2, &mut rng);
        let back = phi_star(n, p, |args| Ok(tau_eval(group, &random_table, &a, args)))?;
        t.record(back == a);
    }
    suites.push(t.done());

    let mut t = Tally::new("koszul_square_zero");
    for _ in 0..30 {
        let p = rng.random_range(0..n);
        let a = sample::cochain(group, p, d + 1, 3, &mut rng);
        t.record(koszul_dual_diff(group, &koszul_dual_diff(group, &a)).is_zero());
    }
    suites.push(t.done());

    let mut t = Tally::new("proj_h_idempotent");
    for _ in 0..30 {
        let p = rng.random_range(0..=n);
        let a = sample::cochain(group, p, d + 1, 3, &mut rng);
        let once = proj_h(group, &table, &a);
        t.record(proj_h(group, &table, &once) == once && proj_h(group, &random_table, &a) == once);
    }
    suites.push(t.done());

    let mut t = Tally::new("circ_det_matches_direct");
    let degrees = [(2, 2), (1, 2), (2, 1)];
    for k in 0..60 {
        let (p, q) = degrees[k % 3];
        if p + q - 1 > n {
            continue;
        }
        let tbl = if k % 2 == 0 { &table } else { &random_table };
        let (Some(a), Some(b)) = (sample::h_element(group, tbl, p, d, &mut rng), sample::h_element(group, tbl, q, d, &mut rng))
        else {
            continue;
        };
        let x = FramedTerm::from_cochain(group, tbl, &a, a.support()[0]).conjugated(group, rng.random_range(0..group.order()));
        let y = FramedTerm::from_cochain(group, tbl, &b, b.support()[0]).conjugated(group, rng.random_range(0..group.order()));
        t.record(circ_direct(group, &x, &y)? == circ_det(group, &x, &y)?);
    }
    suites.push(t.done());

    let inv2 = invariant_basis(group, &table, 2, d)?;
    let engine = BracketEngine::new(group);
    let other = BracketEngine::new(group).with_table(random_table.clone());

    let mut t = Tally::new("antisymmetry_and_invariance");
    let mut u = Tally::new("basis_independence");
    for _ in 0..4 {
        let (Some(a), Some(b)) = (sample::combination(group, &inv2, 2, &mut rng), sample::combination(group, &inv2, 2, &mut rng))
        else {
            break;
        };
        let ab = engine.bracket(&a, &b)?;
        let ba = engine.bracket(&b, &a)?;
        t.record(ab == ba && is_invariant(group, &ab) && is_in_h(group, &table, &ab));
        u.record(other.bracket(&a, &b)? == ab);
    }
    suites.push(t.done());
    suites.push(u.done());

    let mut t = Tally::new("constant_brackets_vanish");
    for p in 1..=2.min(n) {
        for q in 1..=2.min(n) {
            let a = invariant_basis(group, &table, p, 0)?;
            let b = invariant_basis(group, &table, q, 0)?;
            for _ in 0..3 {
                let (Some(x), Some(y)) = (sample::combination(group, &a, 3, &mut rng), sample::combination(group, &b, 3, &mut rng))
                else {
                    break;
                };
                t.record(engine.bracket(&x, &y)?.is_zero());
            }
        }
    }
    suites.push(t.done());

    let mut t = Tally::new("off_kernel_brackets_vanish");
    let off: Vec<Cochain> = inv2.iter().filter(|c| c.support().iter().all(|&g| !group.in_kernel(g))).cloned().collect();
    for _ in 0..6 {
        let (Some(x), Some(y)) = (sample::combination(group, &off, 2, &mut rng), sample::combination(group, &off, 2, &mut rng))
        else {
            break;
        };
        t.record(engine.bracket(&x, &y)?.is_zero());
    }
    suites.push(t.done());

    let mut t = Tally::new("gamma_prime_gamma_identity");
    for alpha in invariant_basis(group, &table, 2, d.min(1))? {
        t.record(gamma_prime(group, &table, &gamma(group, &table, &alpha))? == alpha);
    }
    suites.push(t.done());

    let mut t = Tally::new("hecke_dimension_paths");
    t.record(constant_cocycle_space(group)?.len() == hecke_parameter_space(group).total);
    suites.push(t.done());

    Ok(VerifyReport { suites })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::catalog;

    #[test]
    fn suites_pass_on_small_groups() {
        for g in [catalog::dihedral8(), catalog::cyclic_diagonal(4, &[1, 3, 0]), catalog::cyclic_trivial(2, 3)] {
            let r = run(&g, 1, 1).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.suites.iter().filter(|s| s.checked > 0).count() >= 8, "{r:?}");
        }
    }
}
