use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Rat};
use crate::matgroup::{EigenData, Matrix};

/// Products are tabulated up to this order and recomputed beyond it.
const TABLE_LIMIT: usize = 256;

/// Generators and options for [`Group::generate`].
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub dim: usize,
    pub conductor: u32,
    pub generators: Vec<Matrix>,
    /// Names used in words such as `g*h^2`; defaults to `g1, g2, ...`.
    pub names: Option<Vec<String>>,
    /// Optional faithful companion matrices, one per generator. Elements are
    /// pairs (action, companion), which lets a group act non-faithfully on `V`.
    pub aux: Option<Vec<Matrix>>,
    pub cap: usize,
}

impl GroupSpec {
    pub fn new(dim: usize, conductor: u32, generators: Vec<Matrix>) -> GroupSpec {
        GroupSpec { dim, conductor, generators, names: None, aux: None, cap: 10_000 }
    }

    pub fn names(mut self, names: &[&str]) -> GroupSpec {
        self.names = Some(names.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn aux(mut self, aux: Vec<Matrix>) -> GroupSpec {
        self.aux = Some(aux);
        self
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Smallest element index in the class.
    pub rep: usize,
    pub members: Vec<usize>,
    /// `conjugators[i] * rep * conjugators[i]^-1 == members[i]`.
    pub conjugators: Vec<usize>,
}

/// A finite group of `n x n` matrices over `Q(zeta_N)`, closed and indexed.
///
/// Element 0 is the identity. All matrices are promoted to the session
/// conductor `lcm(N, exponent)` so every eigenvalue is a power of `zeta_N`.
#[derive(Debug)]
pub struct Group {
    dim: usize,
    conductor: u32,
    input_conductor: u32,
    exponent: u32,
    actions: Vec<Matrix>,
    aux: Option<Vec<Matrix>>,
    index: HashMap<Vec<Rat>, usize>,
    table: Option<Vec<u32>>,
    inverses: Vec<usize>,
    orders: Vec<u32>,
    generators: Vec<usize>,
    names: Vec<String>,
    words: Vec<Vec<usize>>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    kernel: Vec<usize>,
    eigen: Vec<OnceLock<EigenData>>,
    abelian: bool,
    diagonal: bool,
}

fn key(action: &Matrix, aux: Option<&Matrix>, n: u32) -> Vec<Rat> {
    let mut k = Vec::new();
    for m in std::iter::once(action).chain(aux) {
        for x in m.entries() {
            k.extend(x.promote(n).expect("entries lie in the declared field").coeffs().iter().cloned());
        }
    }
    k
}

impl Group {
    pub fn generate(spec: GroupSpec) -> Result<Group> {
        let n = spec.dim;
        if n == 0 || n > crate::polyform::MAX_VARS {
            return Err(Error::Group(format!(
                "dimension must be between 1 and {}, got {n}",
                crate::polyform::MAX_VARS
            )));
        }
        if spec.conductor == 0 {
            return Err(Error::Group("conductor must be positive".into()));
        }
        if spec.generators.is_empty() {
            return Err(Error::Group("at least one generator is required".into()));
        }
        let cond = spec.conductor;
        let gens: Vec<Matrix> = spec
            .generators
            .iter()
            .map(|g| {
                if g.rows() != n || g.cols() != n {
                    return Err(Error::Group(format!("generator is {}x{}, expected {n}x{n}", g.rows(), g.cols())));
                }
                g.promote(cond).map_err(|e| Error::Group(e.to_string()))
            })
            .collect::<Result<_>>()?;
        let auxs: Option<Vec<Matrix>> = match &spec.aux {
            None => None,
            Some(a) => {
                if a.len() != gens.len() {
                    return Err(Error::Group("need one companion matrix per generator".into()));
                }
                let k = a[0].rows();
                Some(
                    a.iter()
                        .map(|m| {
                            if m.rows() != k || m.cols() != k {
                                return Err(Error::Group("companion matrices must share a square shape".into()));
                            }
                            m.promote(cond).map_err(|e| Error::Group(e.to_string()))
                        })
                        .collect::<Result<_>>()?,
                )
            }
        };
        for (i, g) in gens.iter().enumerate() {
            let singular = g.det().is_zero() || auxs.as_ref().is_some_and(|a| a[i].det().is_zero());
            if singular {
                return Err(Error::Group(format!("generator {} is not invertible", i + 1)));
            }
        }
        let names = match spec.names {
            Some(ns) => {
                if ns.len() != gens.len() {
                    return Err(Error::Group("need one name per generator".into()));
                }
                for s in &ns {
                    let ok = s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !ok || s == "e" {
                        return Err(Error::Group(format!("invalid generator name `{s}`")));
                    }
                }
                ns
            }
            None => (1..=gens.len()).map(|i| format!("g{i}")).collect(),
        };

        // Breadth-first closure, so words are shortest.
        let id_aux = auxs.as_ref().map(|a| Matrix::identity(a[0].rows()));
        let mut actions = vec![Matrix::identity(n)];
        let mut aux_elems: Vec<Option<Matrix>> = vec![id_aux.clone()];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index = HashMap::new();
        index.insert(key(&actions[0], id_aux.as_ref(), cond), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (s, g) in gens.iter().enumerate() {
                let y = actions[x].mul_ref(g);
                let ya = auxs.as_ref().map(|a| aux_elems[x].as_ref().unwrap().mul_ref(&a[s]));
                let k = key(&y, ya.as_ref(), cond);
                if index.contains_key(&k) {
                    continue;
                }
                if actions.len() >= spec.cap {
                    return Err(Error::Group(format!(
                        "closure exceeded {} elements; the generators may have infinite order",
                        spec.cap
                    )));
                }
                let mut w = words[x].clone();
                w.push(s);
                index.insert(k, actions.len());
                actions.push(y);
                aux_elems.push(ya);
                words.push(w);
                queue.push_back(actions.len() - 1);
            }
        }
        let order = actions.len();

        let mut group = Group {
            dim: n,
            conductor: cond,
            input_conductor: cond,
            exponent: 1,
            actions,
            aux: auxs.map(|_| aux_elems.into_iter().map(Option::unwrap).collect()),
            index,
            table: None,
            inverses: vec![],
            orders: vec![],
            generators: vec![],
            names,
            words,
            classes: vec![],
            class_of: vec![],
            kernel: vec![],
            eigen: vec![],
            abelian: false,
            diagonal: false,
        };
        group.generators = gens
            .iter()
            .enumerate()
            .map(|(s, g)| group.lookup(g, group.aux.as_ref().map(|_| &spec.aux.as_ref().unwrap()[s])).unwrap())
            .collect();
        if order <= TABLE_LIMIT {
            let mut t = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    t[a * order + b] = group.mul_slow(a, b) as u32;
                }
            }
            group.table = Some(t);
        }
        group.orders = (0..order).map(|x| group.compute_order(x)).collect();
        group.inverses = (0..order).map(|x| group.pow(x, group.orders[x] - 1)).collect();
        group.exponent = group.orders.iter().fold(1u32, |acc, &o| acc.lcm(&o));
        let session = cond.lcm(&group.exponent);
        if session != cond {
            group.conductor = session;
            group.actions = group.actions.iter().map(|m| m.promote(session)).collect::<Result<_>>()?;
            if let Some(a) = &group.aux {
                group.aux = Some(a.iter().map(|m| m.promote(session)).collect::<Result<_>>()?);
            }
            group.index = (0..order)
                .map(|x| (key(&group.actions[x], group.aux.as_ref().map(|a| &a[x]), session), x))
                .collect();
        }
        group.abelian = group.generators.iter().all(|&a| group.generators.iter().all(|&b| group.mul(a, b) == group.mul(b, a)));
        group.diagonal = group.actions.iter().all(Matrix::is_diagonal);
        group.kernel = (0..order).filter(|&x| group.actions[x].is_identity()).collect();
        group.build_classes();
        group.eigen = (0..order).map(|_| OnceLock::new()).collect();
        Ok(group)
    }

    fn lookup(&self, action: &Matrix, aux: Option<&Matrix>) -> Option<usize> {
        self.index.get(&key(action, aux, self.conductor)).copied()
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        let m = self.actions[a].mul_ref(&self.actions[b]);
        let x = self.aux.as_ref().map(|v| v[a].mul_ref(&v[b]));
        self.lookup(&m, x.as_ref()).expect("group is closed")
    }

    fn compute_order(&self, x: usize) -> u32 {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    fn build_classes(&mut self) {
        let order = self.order();
        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for x in 0..order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members = Vec::new();
            let mut conjugators = Vec::new();
            for a in 0..order {
                let y = self.conjugate(a, x);
                if class_of[y] == usize::MAX {
                    class_of[y] = classes.len();
                    members.push(y);
                    conjugators.push(a);
                }
            }
            classes.push(ConjugacyClass { rep: x, members, conjugators });
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.actions.len()
    }

    /// Session conductor `lcm(N, exponent)`.
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn input_conductor(&self) -> u32 {
        self.input_conductor
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.actions[g]
    }

    /// Companion matrix of `g`, for groups given with `aux` data.
    pub fn aux_action(&self, g: usize) -> Option<&Matrix> {
        self.aux.as_ref().map(|a| &a[g])
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.mul_slow(a, b),
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, e: u32) -> usize {
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `a x a^-1`.
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(a, x), self.inverse(a))
    }

    pub fn order_of(&self, g: usize) -> u32 {
        self.orders[g]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// Every element acts by a diagonal matrix.
    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> &ConjugacyClass {
        &self.classes[self.class_of[g]]
    }

    pub fn class_index(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order()).filter(|&a| self.mul(a, g) == self.mul(g, a)).collect()
    }

    /// Elements acting trivially on `V`.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    pub fn in_kernel(&self, g: usize) -> bool {
        self.actions[g].is_identity()
    }

    pub fn eigen_data(&self, g: usize) -> &EigenData {
        self.eigen[g].get_or_init(|| EigenData::compute(self, g))
    }

    /// `codim V^g`.
    pub fn codim(&self, g: usize) -> usize {
        self.eigen_data(g).perp_count
    }

    pub fn det(&self, g: usize) -> CycNum {
        self.actions[g].det()
    }

    /// Canonical word for `g`, such as `g^2*h` or `1` for the identity.
    pub fn word(&self, g: usize) -> String {
        let w = &self.words[g];
        if w.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.names[w[i]];
            parts.push(if j - i == 1 { name.clone() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join("*")
    }

    /// Parse a word like `g*h^2`, `h^-1*g` or `1`.
    pub fn parse_word(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if s == "1" || s == "e" {
            return Ok(0);
        }
        if s.is_empty() {
            return Err(Error::Parse("empty group word".into()));
        }
        let mut acc = 0;
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    (n.trim(), e)
                }
                None => (factor, 1),
            };
            let g = if name == "1" || name == "e" {
                0
            } else {
                let idx = self
                    .names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
                self.generators[idx]
            };
            let ord = self.orders[g] as i64;
            let g = self.pow(g, exp.rem_euclid(ord) as u32);
            acc = self.mul(acc, g);
        }
        Ok(acc)
    }

    /// Index of the element with the given action (and companion) matrix.
    pub fn find(&self, action: &Matrix) -> Option<usize> {
        if self.aux.is_some() {
            return None;
        }
        self.lookup(&action.promote(self.conductor).ok()?, None)
    }
}
