//! JSON records for groups and cochains.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cochain::{Cochain, Form, Wedge};
use crate::error::{parse_err, Error, Result};
use crate::exactnum::CycNum;
use crate::matgroup::{BasisId, BasisTable, Group, GroupSpec, Matrix};
use crate::polyform::Poly;

/// `{ "conductor": N, "dim": n, "generators": [[["1", "0"], ...], ...] }`
/// with optional generator `names`, `aux` companion matrices and closure `cap`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupFile {
    pub conductor: u32,
    pub dim: usize,
    pub generators: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

fn parse_matrix(rows: &[Vec<String>], conductor: u32, what: &str) -> Result<Matrix> {
    let mut out = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let mut v = Vec::with_capacity(row.len());
        for (c, s) in row.iter().enumerate() {
            let x = CycNum::parse(s, conductor)
                .map_err(|e| parse_err(format!("{what}, entry ({}, {}): {e}", r + 1, c + 1)))?;
            v.push(x);
        }
        out.push(v);
    }
    Matrix::from_rows(out).map_err(|e| parse_err(format!("{what}: {e}")))
}

fn render_matrix(m: &Matrix, conductor: u32) -> Result<Vec<Vec<String>>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| Ok(m.get(r, c).promote(conductor)?.to_string())).collect())
        .collect()
}

impl GroupFile {
    pub fn to_spec(&self) -> Result<GroupSpec> {
        if self.conductor == 0 {
            return Err(parse_err("conductor must be positive"));
        }
        let mut gens = Vec::new();
        for (k, g) in self.generators.iter().enumerate() {
            let m = parse_matrix(g, self.conductor, &format!("generator {}", k + 1))?;
            if m.rows() != self.dim || m.cols() != self.dim {
                return Err(parse_err(format!("generator {} is not {}x{}", k + 1, self.dim, self.dim)));
            }
            gens.push(m);
        }
        let mut spec = GroupSpec::new(self.dim, self.conductor, gens);
        if let Some(names) = &self.names {
            let n: Vec<&str> = names.iter().map(String::as_str).collect();
            spec = spec.names(&n);
        }
        if let Some(aux) = &self.aux {
            let mats = aux
                .iter()
                .enumerate()
                .map(|(k, a)| parse_matrix(a, self.conductor, &format!("aux matrix {}", k + 1)))
                .collect::<Result<Vec<_>>>()?;
            spec = spec.aux(mats);
        }
        if let Some(cap) = self.cap {
            spec.cap = cap;
        }
        Ok(spec)
    }

    pub fn build(&self) -> Result<Group> {
        Group::generate(self.to_spec()?)
    }

    /// The record describing the generators of an existing group.
    pub fn from_group(group: &Group) -> Result<GroupFile> {
        let n = group.conductor();
        let generators =
            group.generators().iter().map(|&g| render_matrix(group.action(g), n)).collect::<Result<Vec<_>>>()?;
        let aux = group
            .generators()
            .iter()
            .map(|&g| group.aux_action(g).map(|m| render_matrix(m, n)))
            .collect::<Option<Result<Vec<_>>>>()
            .transpose()?;
        Ok(GroupFile { conductor: n, dim: group.dim(), generators, names: Some(group.generator_names().to_vec()), aux, cap: None })
    }
}

pub fn parse_group(json: &str) -> Result<Group> {
    let file: GroupFile = serde_json::from_str(json)?;
    file.build()
}

pub fn load_group(path: impl AsRef<Path>) -> Result<Group> {
    parse_group(&std::fs::read_to_string(path)?)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coords {
    #[default]
    Standard,
    Eigen,
}

/// A generator word such as `"g*h^2"` or an element index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SupportRef {
    Index(usize),
    Word(String),
}

impl SupportRef {
    pub fn resolve(&self, group: &Group) -> Result<usize> {
        match self {
            SupportRef::Index(i) if *i < group.order() => Ok(*i),
            SupportRef::Index(i) => Err(parse_err(format!("element index {i} out of range (order {})", group.order()))),
            SupportRef::Word(w) => group.parse_word(w),
        }
    }
}

/// One term `poly · support ⊗ wedge`; wedge indices are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CochainRecord {
    pub support: SupportRef,
    pub poly: String,
    #[serde(default)]
    pub poly_basis: Coords,
    pub wedge: Vec<usize>,
    #[serde(default)]
    pub wedge_basis: Coords,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CochainFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductor: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub terms: Vec<CochainRecord>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CochainInput {
    File(CochainFile),
    Terms(Vec<CochainRecord>),
}

fn record_to_cochain(group: &Group, table: &BasisTable, conductor: u32, rec: &CochainRecord) -> Result<Cochain> {
    let n = group.dim();
    let g = rec.support.resolve(group)?;
    let ed = table.get(group, g);
    let mut idx = Vec::with_capacity(rec.wedge.len());
    for &i in &rec.wedge {
        if i == 0 || i > n {
            return Err(parse_err(format!("wedge index {i} is outside 1..={n}")));
        }
        idx.push(i - 1);
    }
    let (w, sign) = Wedge::from_indices(&idx).ok_or_else(|| parse_err(format!("repeated wedge index in {:?}", rec.wedge)))?;
    let poly = match rec.poly_basis {
        Coords::Standard => Poly::parse(&rec.poly, n, BasisId::Standard, &['x', 'v'], conductor)?,
        Coords::Eigen => Poly::parse(&rec.poly, n, ed.id, &['w'], conductor)?,
    };
    let sign = CycNum::from_int(sign as i64);
    let mut out = Cochain::zero(n, idx.len());
    match rec.wedge_basis {
        Coords::Standard => {
            let f = match rec.poly_basis {
                Coords::Standard => poly,
                Coords::Eigen => poly.to_standard(ed)?,
            };
            out.add_term(g, w, &f, &sign);
        }
        Coords::Eigen => {
            let f = match rec.poly_basis {
                Coords::Standard => poly.from_standard(ed)?,
                Coords::Eigen => poly,
            };
            let mut form = Form::zero(n, ed.id);
            form.add_term(w, &f, &sign);
            out.add_form(g, &form.change_frame(&ed.basis, &ed.inverse, BasisId::Standard), &CycNum::one());
        }
    }
    Ok(out)
}

/// Parse a cochain file (an object with `terms`, or a bare list of records).
/// Eigen coordinates refer to the group's default eigenbases.
pub fn parse_cochain(group: &Group, json: &str) -> Result<Cochain> {
    let file = match serde_json::from_str::<CochainInput>(json)? {
        CochainInput::File(f) => f,
        CochainInput::Terms(terms) => CochainFile { conductor: None, degree: None, terms },
    };
    let conductor = file.conductor.unwrap_or(group.conductor());
    if group.conductor() % conductor != 0 {
        return Err(parse_err(format!(
            "file conductor {conductor} does not divide the group's conductor {}",
            group.conductor()
        )));
    }
    let degree = match (file.degree, file.terms.first()) {
        (Some(d), _) => d,
        (None, Some(t)) => t.wedge.len(),
        (None, None) => return Err(parse_err("an empty cochain file needs an explicit degree")),
    };
    let table = BasisTable::new();
    let mut out = Cochain::zero(group.dim(), degree);
    for (k, rec) in file.terms.iter().enumerate() {
        if rec.wedge.len() != degree {
            return Err(parse_err(format!("term {} has wedge length {}, expected {degree}", k + 1, rec.wedge.len())));
        }
        let c = record_to_cochain(group, &table, conductor, rec)
            .map_err(|e| match e {
                Error::Parse(m) => parse_err(format!("term {}: {m}", k + 1)),
                other => other,
            })?;
        out.add_scaled(&c, &CycNum::one());
    }
    Ok(out)
}

pub fn load_cochain(group: &Group, path: impl AsRef<Path>) -> Result<Cochain> {
    parse_cochain(group, &std::fs::read_to_string(path)?)
}

/// Canonical record form: standard coordinates, sorted by support, wedge and
/// then as stored.
pub fn cochain_to_file(group: &Group, c: &Cochain) -> Result<CochainFile> {
    let n = group.conductor();
    let mut terms = Vec::new();
    for (g, form) in c.components() {
        for (w, f) in form.terms() {
            terms.push(CochainRecord {
                support: SupportRef::Word(group.word(g)),
                poly: f.promote(n)?.to_string_with("x"),
                poly_basis: Coords::Standard,
                wedge: w.indices().iter().map(|i| i + 1).collect(),
                wedge_basis: Coords::Standard,
            });
        }
    }
    Ok(CochainFile { conductor: Some(n), degree: Some(c.degree()), terms })
}

pub fn cochain_to_json(group: &Group, c: &Cochain) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(cochain_to_file(group, c)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::invariant_basis;
    use crate::matgroup::catalog;

    const D8: &str = r#"{
        "conductor": 4, "dim": 3,
        "generators": [[["0","z","0"],["z","0","0"],["0","0","1"]],
                       [["1","0","0"],["0","-1","0"],["0","0","-1"]]],
        "names": ["g", "h"]
    }"#;

    #[test]
    fn group_file_round_trip() {
        let g = parse_group(D8).unwrap();
        assert_eq!(g.order(), 8);
        let again = GroupFile::from_group(&g).unwrap().build().unwrap();
        assert_eq!(again.order(), 8);
        assert_eq!(again.classes().len(), 5);
        let c = catalog::cyclic_diagonal(6, &[2, 4, 0]);
        let again = GroupFile::from_group(&c).unwrap().build().unwrap();
        assert_eq!(again.order(), 6);
        assert_eq!(again.kernel().len(), 2);
    }

    #[test]
    fn bad_group_files() {
        assert!(matches!(parse_group("{"), Err(Error::Json(_))));
        let shear = r#"{"conductor": 1, "dim": 2, "generators": [[["1","1"],["0","1"]]], "cap": 50}"#;
        assert!(matches!(parse_group(shear), Err(Error::Group(_))));
        let bad = r#"{"conductor": 3, "dim": 2, "generators": [[["1","q"],["0","1"]]]}"#;
        assert!(matches!(parse_group(bad), Err(Error::Parse(_))));
    }

    #[test]
    fn eigen_records_match_standard_ones() {
        let g = parse_group(D8).unwrap();
        let eig = r#"[{"support": "g", "poly": "w3", "poly_basis": "eigen", "wedge": [1, 2], "wedge_basis": "eigen"}]"#;
        let a = parse_cochain(&g, eig).unwrap();
        let back = parse_cochain(&g, &serde_json::to_string(&cochain_to_file(&g, &a).unwrap()).unwrap()).unwrap();
        assert_eq!(a, back);
        // w1^* ∧ w2^* = (e1^* + e2^*)/2 ∧ (-e1^* + e2^*)/2 = e1^* ∧ e2^* / 2
        let std = r#"{"terms": [{"support": "g", "poly": "1/2*x3", "wedge": [1, 2]}]}"#;
        assert_eq!(a, parse_cochain(&g, std).unwrap());
        let swapped = r#"[{"support": 1, "poly": "x3", "wedge": [2, 1]}]"#;
        let s = parse_cochain(&g, swapped).unwrap();
        assert_eq!(s.component(1).unwrap().terms().next().unwrap().1.to_string_with("x"), "-x3");
    }

    #[test]
    fn invariant_bases_round_trip() {
        for g in [catalog::dihedral8(), catalog::cyclic_diagonal(3, &[1, 2, 0])] {
            for c in invariant_basis(&g, &BasisTable::new(), 2, 2).unwrap() {
                let json = serde_json::to_string(&cochain_to_file(&g, &c).unwrap()).unwrap();
                assert_eq!(parse_cochain(&g, &json).unwrap(), c);
            }
        }
    }

    #[test]
    fn bad_cochain_files() {
        let g = catalog::dihedral8();
        for bad in [
            r#"[{"support": "q", "poly": "x1", "wedge": [1]}]"#,
            r#"[{"support": "g", "poly": "x1", "wedge": [4]}]"#,
            r#"[{"support": "g", "poly": "x1", "wedge": [1, 1]}]"#,
            r#"[{"support": 99, "poly": "x1", "wedge": [1]}]"#,
            r#"[{"support": "g", "poly": "x1", "wedge": [1]}, {"support": "g", "poly": "x1", "wedge": [1, 2]}]"#,
            r#"[]"#,
        ] {
            assert!(parse_cochain(&g, bad).is_err(), "{bad}");
        }
    }
}
