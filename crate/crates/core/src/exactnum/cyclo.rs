//! Cyclotomic polynomials and per-conductor reduction tables.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_integer::Integer;

/// `x^k mod Phi_N` for `k in 0..N`, with small integer coefficients.
#[derive(Debug)]
pub struct CycloTable {
    pub phi: usize,
    pub powers: Vec<Vec<i64>>,
}

thread_local! {
    static TABLES: RefCell<HashMap<u32, Rc<CycloTable>>> = RefCell::new(HashMap::new());
    static PHI_POLYS: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Rc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(p) = PHI_POLYS.with(|m| m.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_poly(d);
            num = exact_div(&num, &den);
        }
    }
    let p = Rc::new(num);
    PHI_POLYS.with(|m| m.borrow_mut().insert(n, p.clone()));
    p
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dn];
    for k in (0..q.len()).rev() {
        let c = rem[k + dn];
        q[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn table(n: u32) -> Rc<CycloTable> {
    if let Some(t) = TABLES.with(|m| m.borrow().get(&n).cloned()) {
        return t;
    }
    let minpoly = cyclotomic_poly(n).as_ref().clone();
    let phi = minpoly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * minpoly[i];
            }
        }
    }
    let t = Rc::new(CycloTable { phi, powers });
    TABLES.with(|m| m.borrow_mut().insert(n, t.clone()));
    t
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}
