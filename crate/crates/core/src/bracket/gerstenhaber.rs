use crate::bracket::{circ_det, circ_direct, FramedTerm};
use crate::cochain::{is_in_h, proj_h, reynolds, Cochain, Form};
use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Rat};
use crate::matgroup::{BasisTable, Group};
use crate::par::{map_reduce, Execution};

/// How `α ∘̄ β` is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CircMethod {
    /// Alternating sum over orderings, straight from the definition.
    Direct,
    /// Determinant formula; needs both arguments in `H`.
    #[default]
    Determinant,
}

/// How the average over `G x G` is organised.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// `(1/|G|^2) proj_H sum_{a,b} [[^a α, ^b β]]` over all pairs.
    DoubleSum,
    /// `(1/|G|) R proj_H sum_c [[α, ^c β]]`, using that conjugating both
    /// arguments and both frames by `a` conjugates the prebracket.
    #[default]
    OrbitReduced,
}

/// `[[α, β]] = α ∘̄ β - (-1)^((p-1)(q-1)) β ∘̄ α`, in standard coordinates.
pub fn prebracket(group: &Group, alpha: &FramedTerm, beta: &FramedTerm, method: CircMethod) -> Result<Cochain> {
    let (p, q) = (alpha.degree, beta.degree);
    let n = group.dim();
    let m = (p + q).checked_sub(1).ok_or_else(|| Error::Precondition("bracket of two degree-0 classes".into()))?;
    let circ = |x: &FramedTerm, y: &FramedTerm| -> Result<(usize, Form)> {
        match method {
            CircMethod::Direct => circ_direct(group, x, y),
            CircMethod::Determinant => circ_det(group, x, y),
        }
    };
    let mut out = Cochain::zero(n, m);
    let (t1, f1) = circ(alpha, beta)?;
    out.add_form(t1, &f1, &CycNum::one());
    let (t2, f2) = circ(beta, alpha)?;
    let s = if ((p as i64 - 1) * (q as i64 - 1)).rem_euclid(2) == 0 { -1 } else { 1 };
    out.add_form(t2, &f2, &CycNum::from_int(s));
    Ok(out)
}

/// One `(a, b)` contribution of the double sum, kept for tracing.
#[derive(Clone, Debug)]
pub struct PairTrace {
    pub g: usize,
    pub h: usize,
    pub a: usize,
    pub b: usize,
    pub prebracket: Cochain,
}

/// Gerstenhaber bracket on `H^*` with a fixed choice of eigenbases.
#[derive(Clone, Debug)]
pub struct BracketEngine<'g> {
    group: &'g Group,
    table: BasisTable,
    method: CircMethod,
    strategy: Strategy,
    exec: Execution,
}

impl<'g> BracketEngine<'g> {
    pub fn new(group: &'g Group) -> BracketEngine<'g> {
        BracketEngine {
            group,
            table: BasisTable::new(),
            method: CircMethod::default(),
            strategy: Strategy::default(),
            exec: Execution::default(),
        }
    }

    pub fn with_table(mut self, table: BasisTable) -> Self {
        self.table = table;
        self
    }

    pub fn with_method(mut self, method: CircMethod) -> Self {
        self.method = method;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn table(&self) -> &BasisTable {
        &self.table
    }

    fn check(&self, alpha: &Cochain, beta: &Cochain) -> Result<()> {
        let n = self.group.dim();
        if alpha.dim() != n || beta.dim() != n {
            return Err(Error::Precondition(format!("cochains must live on a space of dimension {n}")));
        }
        if alpha.degree() + beta.degree() == 0 {
            return Err(Error::Precondition("bracket of two degree-0 classes".into()));
        }
        for (name, c) in [("first", alpha), ("second", beta)] {
            if !is_in_h(self.group, &self.table, c) {
                return Err(Error::Precondition(format!("{name} argument does not lie in H; apply proj_h first")));
            }
        }
        Ok(())
    }

    fn terms<'a>(&'a self, c: &Cochain) -> Vec<FramedTerm<'a>> {
        c.support().into_iter().map(|g| FramedTerm::from_cochain(self.group, &self.table, c, g)).collect()
    }

    /// `[α, β]` for `α, β` in `H` (not necessarily invariant). The result is
    /// an invariant element of `H`.
    pub fn bracket(&self, alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
        self.check(alpha, beta)?;
        let g = self.group;
        let order = g.order() as i64;
        let m = alpha.degree() + beta.degree() - 1;
        let at = self.terms(alpha);
        let bt = self.terms(beta);
        let zero = || Ok(Cochain::zero(g.dim(), m));
        let add = |x: Result<Cochain>, y: Result<Cochain>| -> Result<Cochain> {
            let mut x = x?;
            x.add_scaled(&y?, &CycNum::one());
            Ok(x)
        };
        match self.strategy {
            Strategy::OrbitReduced => {
                let items: Vec<(usize, usize, usize)> = (0..at.len())
                    .flat_map(|i| (0..bt.len()).flat_map(move |j| (0..order as usize).map(move |c| (i, j, c))))
                    .collect();
                let y = map_reduce(
                    self.exec,
                    &items,
                    |&(i, j, c)| prebracket(g, &at[i], &bt[j].conjugated(g, c), self.method),
                    zero,
                    add,
                )?;
                let p = proj_h(g, &self.table, &y);
                Ok(reynolds(g, &p).scale_rat(Rat::new(1, order)))
            }
            Strategy::DoubleSum => {
                let y = self.double_sum(&at, &bt, m)?;
                Ok(proj_h(g, &self.table, &y).scale_rat(Rat::new(1, order * order)))
            }
        }
    }

    fn double_sum(&self, at: &[FramedTerm], bt: &[FramedTerm], m: usize) -> Result<Cochain> {
        let g = self.group;
        let order = g.order();
        let items: Vec<(usize, usize, usize, usize)> = (0..at.len())
            .flat_map(|i| {
                (0..bt.len()).flat_map(move |j| (0..order).flat_map(move |a| (0..order).map(move |b| (i, j, a, b))))
            })
            .collect();
        map_reduce(
            self.exec,
            &items,
            |&(i, j, a, b)| prebracket(g, &at[i].conjugated(g, a), &bt[j].conjugated(g, b), self.method),
            || Ok(Cochain::zero(g.dim(), m)),
            |x, y| {
                let mut x = x?;
                x.add_scaled(&y?, &CycNum::one());
                Ok(x)
            },
        )
    }

    /// Every `(a, b)` prebracket of the double sum, before projection and
    /// averaging.
    pub fn trace(&self, alpha: &Cochain, beta: &Cochain) -> Result<Vec<PairTrace>> {
        self.check(alpha, beta)?;
        let g = self.group;
        let at = self.terms(alpha);
        let bt = self.terms(beta);
        let mut out = Vec::new();
        for x in &at {
            for y in &bt {
                for a in g.elements() {
                    for b in g.elements() {
                        let pb = prebracket(g, &x.conjugated(g, a), &y.conjugated(g, b), self.method)?;
                        out.push(PairTrace { g: x.owner, h: y.owner, a, b, prebracket: pb });
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[α, α]`.
    pub fn square(&self, alpha: &Cochain) -> Result<Cochain> {
        self.bracket(alpha, alpha)
    }
}
