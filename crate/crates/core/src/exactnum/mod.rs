//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! Elements are dense coordinate vectors in the power basis
//! `1, z, ..., z^(phi(N)-1)` modulo the cyclotomic polynomial `Phi_N`.
//! Mixed-conductor operands are promoted to the lcm of their conductors.

mod cyclo;
mod rational;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_integer::Integer;
use smallvec::{smallvec, SmallVec};

pub use cyclo::{cyclotomic_poly, euler_phi};
pub use rational::Rat;

use crate::error::{parse_err, Error, Result};
use crate::syntax::{self, Evaluate};

type Coeffs = SmallVec<[Rat; 4]>;

#[derive(Clone)]
pub struct CycNum {
    conductor: u32,
    coeffs: Coeffs,
}

impl CycNum {
    pub fn zero() -> CycNum {
        CycNum { conductor: 1, coeffs: smallvec![Rat::ZERO] }
    }

    pub fn one() -> CycNum {
        Self::from_rat(Rat::ONE)
    }

    pub fn from_rat(r: Rat) -> CycNum {
        CycNum { conductor: 1, coeffs: smallvec![r] }
    }

    pub fn from_int(n: i64) -> CycNum {
        Self::from_rat(Rat::from_int(n))
    }

    pub fn from_frac(num: i64, den: i64) -> CycNum {
        Self::from_rat(Rat::new(num, den))
    }

    /// `zeta_n^k` where `zeta_n = exp(2 pi i / n)`.
    pub fn root_of_unity(k: i64, n: u32) -> CycNum {
        assert!(n >= 1);
        let t = cyclo::table(n);
        let k = k.rem_euclid(n as i64) as usize;
        CycNum { conductor: n, coeffs: t.powers[k].iter().map(|&c| Rat::from_int(c)).collect() }
    }

    /// Primitive fourth root of unity.
    pub fn i() -> CycNum {
        Self::root_of_unity(1, 4)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coordinates.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn from_coeffs(conductor: u32, coeffs: Vec<Rat>) -> Result<CycNum> {
        let phi = cyclo::table(conductor).phi;
        if coeffs.len() != phi {
            return Err(Error::Precondition(format!(
                "conductor {conductor} needs {phi} coordinates, got {}",
                coeffs.len()
            )));
        }
        Ok(CycNum { conductor, coeffs: coeffs.into() })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rat::is_zero)
    }

    /// The rational value, if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(Rat::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-express in `Q(zeta_n)`; `n` must be a multiple of the conductor.
    pub fn promote(&self, n: u32) -> Result<CycNum> {
        if n % self.conductor != 0 {
            return Err(Error::Precondition(format!(
                "cannot embed conductor {} into conductor {n}",
                self.conductor
            )));
        }
        Ok(self.promote_unchecked(n))
    }

    fn promote_unchecked(&self, n: u32) -> CycNum {
        if n == self.conductor {
            return self.clone();
        }
        let t = cyclo::table(n);
        let step = (n / self.conductor) as usize;
        let mut out: Coeffs = smallvec![Rat::ZERO; t.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pw = &t.powers[(k * step) % n as usize];
            for (o, &p) in out.iter_mut().zip(pw.iter()) {
                if p != 0 {
                    *o = o.add_ref(&c.mul_int(p));
                }
            }
        }
        CycNum { conductor: n, coeffs: out }
    }

    fn align<'a>(a: &'a CycNum, b: &'a CycNum) -> (std::borrow::Cow<'a, CycNum>, std::borrow::Cow<'a, CycNum>) {
        use std::borrow::Cow;
        if a.conductor == b.conductor {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        if a.is_rational_fast() {
            return (Cow::Owned(a.promote_unchecked(b.conductor)), Cow::Borrowed(b));
        }
        if b.is_rational_fast() {
            return (Cow::Borrowed(a), Cow::Owned(b.promote_unchecked(a.conductor)));
        }
        let n = a.conductor.lcm(&b.conductor);
        (Cow::Owned(a.promote_unchecked(n)), Cow::Owned(b.promote_unchecked(n)))
    }

    fn is_rational_fast(&self) -> bool {
        self.conductor == 1
    }

    pub fn add_ref(&self, rhs: &CycNum) -> CycNum {
        if self.conductor == rhs.conductor {
            let coeffs = self.coeffs.iter().zip(rhs.coeffs.iter()).map(|(a, b)| a.add_ref(b)).collect();
            return CycNum { conductor: self.conductor, coeffs };
        }
        let (a, b) = Self::align(self, rhs);
        a.add_ref(&b)
    }

    pub fn mul_ref(&self, rhs: &CycNum) -> CycNum {
        if self.conductor != rhs.conductor {
            if rhs.is_rational_fast() {
                return self.scale(&rhs.coeffs[0]);
            }
            if self.is_rational_fast() {
                return rhs.scale(&self.coeffs[0]);
            }
            let (a, b) = Self::align(self, rhs);
            return a.mul_ref(&b);
        }
        let phi = self.coeffs.len();
        if phi == 1 {
            return CycNum { conductor: self.conductor, coeffs: smallvec![self.coeffs[0].mul_ref(&rhs.coeffs[0])] };
        }
        let mut prod: SmallVec<[Rat; 8]> = smallvec![Rat::ZERO; 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].add_ref(&a.mul_ref(b));
            }
        }
        let t = cyclo::table(self.conductor);
        let n = self.conductor as usize;
        let mut out: Coeffs = prod[..phi].iter().cloned().collect();
        for (k, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(t.powers[k % n].iter()) {
                if p != 0 {
                    *o = o.add_ref(&c.mul_int(p));
                }
            }
        }
        CycNum { conductor: self.conductor, coeffs: out }
    }

    pub fn scale(&self, r: &Rat) -> CycNum {
        CycNum { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c.mul_ref(r)).collect() }
    }

    pub fn neg_ref(&self) -> CycNum {
        CycNum { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub_ref(&self, rhs: &CycNum) -> CycNum {
        self.add_ref(&rhs.neg_ref())
    }

    /// Multiplicative inverse, by solving `self * x = 1` in the power basis.
    pub fn inverse(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNum::from_rat(r.recip().expect("nonzero")).promote_unchecked(self.conductor));
        }
        let phi = self.coeffs.len();
        // Column j of the multiplication matrix is self * z^j.
        let mut cols = Vec::with_capacity(phi);
        for j in 0..phi {
            let zj = CycNum::root_of_unity(j as i64, self.conductor);
            cols.push(self.mul_ref(&zj));
        }
        let mut aug: Vec<Vec<Rat>> = (0..phi)
            .map(|r| {
                let mut row: Vec<Rat> = cols.iter().map(|c| c.coeffs[r].clone()).collect();
                row.push(if r == 0 { Rat::ONE } else { Rat::ZERO });
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi).find(|&r| !aug[r][col].is_zero()).ok_or(Error::DivisionByZero)?;
            aug.swap(col, piv);
            let inv = aug[col][col].recip().expect("pivot nonzero");
            for x in aug[col].iter_mut() {
                *x = x.mul_ref(&inv);
            }
            for r in 0..phi {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=phi {
                        let v = aug[col][c].mul_ref(&f);
                        aug[r][c] = aug[r][c].add_ref(&-v);
                    }
                }
            }
        }
        Ok(CycNum { conductor: self.conductor, coeffs: aug.into_iter().map(|r| r[phi].clone()).collect() })
    }

    pub fn checked_div(&self, rhs: &CycNum) -> Result<CycNum> {
        Ok(self.mul_ref(&rhs.inverse()?))
    }

    pub fn pow(&self, e: u32) -> CycNum {
        let mut acc = CycNum::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    pub fn pow_signed(&self, e: i64) -> Result<CycNum> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inverse()?.pow((-e) as u32))
        }
    }

    /// Complex conjugate, `z -> z^-1`.
    pub fn conj(&self) -> CycNum {
        let n = self.conductor;
        let mut acc = CycNum::zero().promote_unchecked(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add_ref(&CycNum::root_of_unity(-(k as i64), n).scale(c));
            }
        }
        acc
    }

    /// Order of `self` as a root of unity, `None` if it is not one.
    ///
    /// The roots of unity in `Q(zeta_N)` are exactly those of order dividing
    /// `lcm(2, N)`.
    pub fn order_of_unity(&self) -> Result<Option<u32>> {
        if self.is_zero() {
            return Err(Error::Precondition("zero is not a root of unity".into()));
        }
        let m = self.conductor.lcm(&2);
        if !self.pow(m).is_one() {
            return Ok(None);
        }
        Ok((1..=m).find(|d| m % d == 0 && self.pow(*d).is_one()))
    }

    /// If `self = zeta_n^k` for the given `n`, return `k mod n`.
    pub fn unity_exponent(&self, n: u32) -> Option<u32> {
        (0..n).find(|&k| CycNum::root_of_unity(k as i64, n) == *self)
    }

    pub fn parse(s: &str, conductor: u32) -> Result<CycNum> {
        let e = syntax::parse(s)?;
        e.eval(&mut ScalarEval { conductor })
    }

    /// Rendering with `z` standing for `zeta_N`.
    pub fn to_string_with(&self, var: &str) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let body = match k {
                0 => a.to_string(),
                _ => {
                    let zp = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                    if a.is_one() {
                        zp
                    } else {
                        format!("{a}*{zp}")
                    }
                }
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (neg, body)) in parts.into_iter().enumerate() {
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

    /// True when rendering needs parentheses as a factor.
    pub fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
    }
}

/// `[k]_eps = 1 + eps + ... + eps^(k-1)`, with `[0] = 0`.
pub fn quantum_integer(k: u32, eps: &CycNum) -> CycNum {
    if eps.is_one() {
        return CycNum::from_int(k as i64);
    }
    let mut acc = CycNum::zero();
    let mut p = CycNum::one();
    for _ in 0..k {
        acc = acc.add_ref(&p);
        p = p.mul_ref(eps);
    }
    acc
}

struct ScalarEval {
    conductor: u32,
}

impl Evaluate for ScalarEval {
    type Value = CycNum;

    fn num(&mut self, r: &Rat) -> Result<CycNum> {
        Ok(CycNum::from_rat(r.clone()))
    }
    fn zeta(&mut self) -> Result<CycNum> {
        Ok(CycNum::root_of_unity(1, self.conductor))
    }
    fn imag_unit(&mut self) -> Result<CycNum> {
        if self.conductor % 4 != 0 {
            return Err(parse_err(format!("`i` is not in Q(zeta_{})", self.conductor)));
        }
        Ok(CycNum::i().promote_unchecked(self.conductor))
    }
    fn var(&mut self, prefix: char, index: usize) -> Result<CycNum> {
        Err(parse_err(format!("unexpected variable `{prefix}{}` in a scalar", index + 1)))
    }
    fn add(&mut self, a: CycNum, b: CycNum) -> Result<CycNum> {
        Ok(a.add_ref(&b))
    }
    fn mul(&mut self, a: CycNum, b: CycNum) -> Result<CycNum> {
        Ok(a.mul_ref(&b))
    }
    fn neg(&mut self, a: CycNum) -> Result<CycNum> {
        Ok(a.neg_ref())
    }
    fn div(&mut self, a: CycNum, b: CycNum) -> Result<CycNum> {
        a.checked_div(&b)
    }
    fn pow(&mut self, a: CycNum, e: i64) -> Result<CycNum> {
        a.pow_signed(e)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &CycNum) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::align(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("z"))
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [N={}]", self, self.conductor)
    }
}

macro_rules! cyc_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                self.$f(rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                self.$f(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                self.$f(rhs)
            }
        }
    };
}

cyc_binop!(Add, add, add_ref);
cyc_binop!(Sub, sub, sub_ref);
cyc_binop!(Mul, mul, mul_ref);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
                if !b.is_zero() {
                    *a = a.add_ref(b);
                }
            }
        } else {
            *self = self.add_ref(rhs);
        }
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self += &rhs.neg_ref();
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> CycNum {
        CycNum::from_int(n)
    }
}

impl From<Rat> for CycNum {
    fn from(r: Rat) -> CycNum {
        CycNum::from_rat(r)
    }
}
