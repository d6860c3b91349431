//! Polynomials in `S(V)` written in a chosen basis, and quantum partials.
//!
//! Every [`Poly`] records the [`BasisId`] its variables refer to. Arithmetic
//! between polynomials in different bases is a programming error: the
//! operator impls panic and the `checked_*` methods return an error.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{parse_err, Error, Result};
use crate::exactnum::{quantum_integer, CycNum, Rat};
use crate::matgroup::{BasisId, EigenData, Matrix};
use crate::syntax::{self, Evaluate};

/// Largest supported dimension of `V`.
pub const MAX_VARS: usize = 8;

/// Exponent vector; entries past the polynomial's variable count are zero.
/// Ordered lexicographically with the first variable most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn from_exponents(e: &[u16]) -> Monomial {
        let mut m = [0u16; MAX_VARS];
        m[..e.len()].copy_from_slice(e);
        Monomial(m)
    }

    pub fn var(i: usize) -> Monomial {
        let mut m = Monomial::ONE;
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a -= b;
        }
        Monomial(m)
    }

    /// True when only variables with index `>= start` occur.
    pub fn supported_from(&self, start: usize) -> bool {
        self.0[..start].iter().all(|&e| e == 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    basis: BasisId,
    nvars: usize,
    terms: BTreeMap<Monomial, CycNum>,
}

impl Poly {
    pub fn zero(nvars: usize, basis: BasisId) -> Poly {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Poly { basis, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: CycNum, nvars: usize, basis: BasisId) -> Poly {
        Self::term(c, Monomial::ONE, nvars, basis)
    }

    pub fn one(nvars: usize, basis: BasisId) -> Poly {
        Self::constant(CycNum::one(), nvars, basis)
    }

    pub fn var(i: usize, nvars: usize, basis: BasisId) -> Poly {
        assert!(i < nvars);
        Self::term(CycNum::one(), Monomial::var(i), nvars, basis)
    }

    pub fn term(c: CycNum, m: Monomial, nvars: usize, basis: BasisId) -> Poly {
        let mut p = Poly::zero(nvars, basis);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// `sum_i c_i y_i`.
    pub fn linear(coeffs: &[CycNum], basis: BasisId) -> Poly {
        let mut p = Poly::zero(coeffs.len(), basis);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(i), c.clone());
            }
        }
        p
    }

    pub fn basis(&self) -> BasisId {
        self.basis
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Reinterpret the variables as belonging to another basis without
    /// changing coefficients.
    pub fn relabel(mut self, basis: BasisId) -> Poly {
        self.basis = basis;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> CycNum {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.basis != other.basis || self.nvars != other.nvars {
            return Err(Error::BasisMismatch(format!(
                "{:?} in {} variables vs {:?} in {} variables",
                self.basis, self.nvars, other.basis, other.nvars
            )));
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: CycNum) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &CycNum) {
        self.check(other).expect("basis mismatch in polynomial arithmetic");
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (m, a) in &other.terms {
            self.add_term(*m, if unit { a.clone() } else { a.mul_ref(c) });
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &CycNum::one());
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &CycNum::from_int(-1));
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = Poly::zero(self.nvars, self.basis);
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                out.add_term(m1.mul(m2), a.mul_ref(b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycNum) -> Poly {
        let mut out = Poly::zero(self.nvars, self.basis);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(*m, a.mul_ref(c));
        }
        out
    }

    /// All coefficients embedded in conductor `n`.
    pub fn promote(&self, n: u32) -> Result<Poly> {
        let mut out = Poly::zero(self.nvars, self.basis);
        for (m, c) in &self.terms {
            out.terms.insert(*m, c.promote(n)?);
        }
        Ok(out)
    }

    pub fn scale_rat(&self, r: &Rat) -> Poly {
        self.scale(&CycNum::from_rat(r.clone()))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars, self.basis);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Keep only monomials in the variables with index `>= start`.
    pub fn restrict_from(&self, start: usize) -> Poly {
        Poly {
            basis: self.basis,
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.supported_from(start)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn uses_only_from(&self, start: usize) -> bool {
        self.terms.keys().all(|m| m.supported_from(start))
    }

    /// Substitute `y_i = sum_j m[j][i] z_j`, where `y` are this polynomial's
    /// variables and `z` those of `new_basis`. Column `i` of `m` is the old
    /// basis vector `i` in new coordinates.
    pub fn change_coords(&self, m: &Matrix, new_basis: BasisId) -> Poly {
        let n = self.nvars;
        assert_eq!((m.rows(), m.cols()), (n, n), "coordinate change has wrong shape");
        let mut out = Poly::zero(n, new_basis);
        if m.is_monomial() {
            let target: Vec<(usize, CycNum)> = (0..n)
                .map(|i| {
                    let j = (0..n).find(|&j| !m.get(j, i).is_zero()).expect("monomial matrix");
                    (j, m.get(j, i).clone())
                })
                .collect();
            for (mono, c) in &self.terms {
                let mut e = [0u16; MAX_VARS];
                let mut coeff = c.clone();
                for (i, (j, s)) in target.iter().enumerate() {
                    let k = mono.0[i];
                    if k > 0 {
                        e[*j] = k;
                        if !s.is_one() {
                            coeff = coeff.mul_ref(&s.pow(k as u32));
                        }
                    }
                }
                out.add_term(Monomial(e), coeff);
            }
            return out;
        }
        let forms: Vec<Poly> = (0..n).map(|i| Poly::linear(&m.column(i), new_basis)).collect();
        let mut powers: Vec<Vec<Poly>> = forms.iter().map(|f| vec![Poly::one(n, new_basis), f.clone()]).collect();
        for (mono, c) in &self.terms {
            let mut acc = Poly::constant(c.clone(), n, new_basis);
            for i in 0..n {
                let k = mono.0[i] as usize;
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k {
                    let next = &powers[i][powers[i].len() - 1] * &forms[i];
                    powers[i].push(next);
                }
                acc = &acc * &powers[i][k];
            }
            out.add_scaled(&acc, &CycNum::one());
        }
        out
    }

    /// Rewrite a polynomial given in `from` coordinates in `to` coordinates.
    pub fn to_frame(&self, from: &EigenData, to: &EigenData) -> Result<Poly> {
        if self.basis != from.id {
            return Err(Error::BasisMismatch(format!("polynomial is in {:?}, not {:?}", self.basis, from.id)));
        }
        if from.id == to.id {
            return Ok(self.clone());
        }
        Ok(self.change_coords(&to.inverse.mul_ref(&from.basis), to.id))
    }

    pub fn from_standard(&self, to: &EigenData) -> Result<Poly> {
        if self.basis != BasisId::Standard {
            return Err(Error::BasisMismatch(format!("polynomial is in {:?}, not standard", self.basis)));
        }
        Ok(self.change_coords(&to.inverse, to.id))
    }

    pub fn to_standard(&self, from: &EigenData) -> Result<Poly> {
        if self.basis != from.id {
            return Err(Error::BasisMismatch(format!("polynomial is in {:?}, not {:?}", self.basis, from.id)));
        }
        Ok(self.change_coords(&from.basis, BasisId::Standard))
    }

    /// `^a f` for a standard-coordinate polynomial: substitute `e_j -> a e_j`.
    pub fn act(&self, a: &Matrix) -> Poly {
        debug_assert_eq!(self.basis, BasisId::Standard);
        self.change_coords(a, BasisId::Standard)
    }

    /// `d_i x^e = [e_i]_eps x^(e - e_i)`.
    pub fn quantum_partial(&self, i: usize, eps: &CycNum) -> Poly {
        let mut out = Poly::zero(self.nvars, self.basis);
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let q = quantum_integer(k as u32, eps);
            if q.is_zero() {
                continue;
            }
            let mut e = *m;
            e.0[i] -= 1;
            out.add_term(e, c.mul_ref(&q));
        }
        out
    }

    /// Twisted quantum partial: the monomial `x^e` additionally picks up
    /// `prod_{l < i} eps_l^(e_l)`.
    pub fn twisted_partial(&self, i: usize, eps: &[CycNum]) -> Poly {
        let mut out = Poly::zero(self.nvars, self.basis);
        for (m, c) in &self.terms {
            let k = m.0[i];
            if k == 0 {
                continue;
            }
            let mut q = quantum_integer(k as u32, &eps[i]);
            if q.is_zero() {
                continue;
            }
            for (l, e) in eps.iter().enumerate().take(i) {
                if m.0[l] > 0 && !e.is_one() {
                    q = q.mul_ref(&e.pow(m.0[l] as u32));
                }
            }
            let mut e = *m;
            e.0[i] -= 1;
            out.add_term(e, c.mul_ref(&q));
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    /// `0 / 0` is `Some(0)`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        self.check(d).ok()?;
        if self.is_zero() {
            return Some(Poly::zero(self.nvars, self.basis));
        }
        let (lm, lc) = d.terms.iter().next_back()?;
        let lc_inv = lc.inverse().ok()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars, self.basis);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(lm);
            let qc = c.mul_ref(&lc_inv);
            let t = Poly::term(qc.clone(), qm, self.nvars, self.basis);
            rem.add_scaled(&(&t * d), &CycNum::from_int(-1));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn parse(s: &str, nvars: usize, basis: BasisId, prefixes: &[char], conductor: u32) -> Result<Poly> {
        let e = syntax::parse(s)?;
        e.eval(&mut PolyEval { nvars, basis, prefixes, conductor })
    }

    /// Render with variables `{prefix}1, {prefix}2, ...`.
    pub fn to_string_with(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = render_monomial(m, self.nvars, prefix);
            let (neg, coeff) = match c.as_rational() {
                Some(r) => (r.is_negative(), CycNum::from_rat(r.abs())),
                None => (false, c.clone()),
            };
            let body = if mono.is_empty() {
                if coeff.is_compound() && self.terms.len() > 1 {
                    format!("({coeff})")
                } else {
                    coeff.to_string()
                }
            } else if coeff.is_one() {
                mono
            } else if coeff.is_compound() {
                format!("({coeff})*{mono}")
            } else {
                format!("{coeff}*{mono}")
            };
            match (idx, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }

    pub fn default_prefix(&self) -> &'static str {
        match self.basis {
            BasisId::Standard => "x",
            _ => "w",
        }
    }
}

fn render_monomial(m: &Monomial, nvars: usize, prefix: &str) -> String {
    let mut parts = Vec::new();
    for i in 0..nvars {
        match m.0[i] {
            0 => {}
            1 => parts.push(format!("{prefix}{}", i + 1)),
            k => parts.push(format!("{prefix}{}^{k}", i + 1)),
        }
    }
    parts.join("*")
}

struct PolyEval<'a> {
    nvars: usize,
    basis: BasisId,
    prefixes: &'a [char],
    conductor: u32,
}

impl Evaluate for PolyEval<'_> {
    type Value = Poly;

    fn num(&mut self, r: &Rat) -> Result<Poly> {
        Ok(Poly::constant(CycNum::from_rat(r.clone()), self.nvars, self.basis))
    }
    fn zeta(&mut self) -> Result<Poly> {
        Ok(Poly::constant(CycNum::root_of_unity(1, self.conductor), self.nvars, self.basis))
    }
    fn imag_unit(&mut self) -> Result<Poly> {
        if self.conductor % 4 != 0 {
            return Err(parse_err(format!("`i` is not in Q(zeta_{})", self.conductor)));
        }
        Ok(Poly::constant(CycNum::i(), self.nvars, self.basis))
    }
    fn var(&mut self, prefix: char, index: usize) -> Result<Poly> {
        if !self.prefixes.contains(&prefix) {
            return Err(parse_err(format!("unexpected variable `{prefix}{}`", index + 1)));
        }
        if index >= self.nvars {
            return Err(parse_err(format!("variable `{prefix}{}` exceeds dimension {}", index + 1, self.nvars)));
        }
        Ok(Poly::var(index, self.nvars, self.basis))
    }
    fn add(&mut self, a: Poly, b: Poly) -> Result<Poly> {
        a.checked_add(&b)
    }
    fn mul(&mut self, a: Poly, b: Poly) -> Result<Poly> {
        a.checked_mul(&b)
    }
    fn neg(&mut self, a: Poly) -> Result<Poly> {
        Ok(-&a)
    }
    fn div(&mut self, a: Poly, b: Poly) -> Result<Poly> {
        if !b.is_constant() || b.is_zero() {
            return Err(parse_err("can only divide by a nonzero scalar"));
        }
        Ok(a.scale(&b.coeff(&Monomial::ONE).inverse()?))
    }
    fn pow(&mut self, a: Poly, e: i64) -> Result<Poly> {
        if e < 0 {
            if a.is_constant() && !a.is_zero() {
                let c = a.coeff(&Monomial::ONE).pow_signed(e)?;
                return Ok(Poly::constant(c, self.nvars, self.basis));
            }
            return Err(parse_err("negative powers of polynomials"));
        }
        Ok(a.pow(e as u32))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(self.default_prefix()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{:?}]", self, self.basis)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("basis mismatch in polynomial arithmetic")
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("basis mismatch in polynomial arithmetic")
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("basis mismatch in polynomial arithmetic")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&CycNum::from_int(-1))
    }
}
