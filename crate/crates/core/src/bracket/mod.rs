//! Prebrackets, the Gerstenhaber bracket on `H^*`, and its special forms.

mod abelian;
mod circ;
mod conversion;
mod gerstenhaber;
mod schouten;
mod tau;


pub use abelian::{abelian_bracket, abelian_bracket_detail, char_inner, AbelianBracket, AbelianCase};
pub use circ::{circ_det, circ_direct, circ_direct_summand};
pub use conversion::{gamma, gamma_prime, phi_star, BarMultiplier, BarArg};
pub use gerstenhaber::{prebracket, BracketEngine, CircMethod, PairTrace, Strategy};
pub use schouten::sn_bracket;
pub use tau::{alg_add, tau_eval, upsilon_eval, AlgElem, FramedTerm};

use crate::cochain::Cochain;
use crate::error::Result;
use crate::matgroup::Group;
use crate::polyform::Poly;

/// Gerstenhaber bracket with the default eigenbases and strategy.
pub fn gerstenhaber_bracket(group: &Group, alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
    BracketEngine::new(group).bracket(alpha, beta)
}

/// `[α, α]` and whether it vanishes.
pub fn poisson_check(group: &Group, alpha: &Cochain) -> Result<(Cochain, bool)> {
    let sq = BracketEngine::new(group).square(alpha)?;
    let z = sq.is_zero();
    Ok((sq, z))
}

/// Exact divisibility of a polynomial by a linear form; `0 | 0` holds.
pub fn divisibility_check(f: &Poly, u: &Poly) -> bool {
    if u.is_zero() {
        return f.is_zero();
    }
    f.div_exact(u).is_some()
}
