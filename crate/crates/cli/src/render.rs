use gerstenhaber::bracket::AlgElem;
use gerstenhaber::hecke::HeckeReport;
use gerstenhaber::io::cochain_to_json;
use gerstenhaber::{Cochain, Group, Result};
use serde_json::{json, Value};

pub fn cochain(group: &Group, c: &Cochain) -> Result<Value> {
    cochain_to_json(group, c)
}

pub fn cochain_text(group: &Group, c: &Cochain) -> String {
    c.display(group)
}

pub fn alg_elem(group: &Group, a: &AlgElem) -> Result<Value> {
    let n = group.conductor();
    a.iter()
        .map(|(g, f)| Ok(json!({ "element": group.word(*g), "poly": f.promote(n)?.to_string_with("x") })))
        .collect::<Result<Vec<_>>>()
        .map(Value::Array)
}

pub fn alg_elem_text(group: &Group, a: &AlgElem) -> String {
    if a.is_empty() {
        return "0".into();
    }
    a.iter().map(|(g, f)| format!("({}) [{}]", f.to_string_with("x"), group.word(*g))).collect::<Vec<_>>().join(" + ")
}

pub fn group_info(group: &Group) -> Value {
    let classes: Vec<Value> = group
        .classes()
        .iter()
        .map(|c| {
            let ed = group.eigen_data(c.rep);
            json!({
                "rep": group.word(c.rep),
                "size": c.members.len(),
                "order": group.order_of(c.rep),
                "codim": group.codim(c.rep),
                "det": group.det(c.rep).to_string(),
                "eigenvalues": ed.eigenvalues.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                "in_kernel": group.in_kernel(c.rep),
            })
        })
        .collect();
    json!({
        "order": group.order(),
        "dim": group.dim(),
        "exponent": group.exponent(),
        "conductor": group.conductor(),
        "abelian": group.is_abelian(),
        "classes": classes,
        "kernel": group.kernel().iter().map(|&k| group.word(k)).collect::<Vec<_>>(),
    })
}

pub fn group_info_text(group: &Group) -> String {
    let mut out = format!(
        "order {}  dim {}  exponent {}  conductor {}{}\n",
        group.order(),
        group.dim(),
        group.exponent(),
        group.conductor(),
        if group.is_abelian() { "  abelian" } else { "" }
    );
    let kernel: Vec<String> = group.kernel().iter().map(|&k| group.word(k)).collect();
    out.push_str(&format!("kernel {{{}}}\n", kernel.join(", ")));
    out.push_str(&format!("{:<12} {:>5} {:>6} {:>6}  eigenvalues\n", "class", "size", "order", "codim"));
    for c in group.classes() {
        let ed = group.eigen_data(c.rep);
        let eig: Vec<String> = ed.eigenvalues.iter().map(|e| e.to_string()).collect();
        out.push_str(&format!(
            "{:<12} {:>5} {:>6} {:>6}  {}\n",
            group.word(c.rep),
            c.members.len(),
            group.order_of(c.rep),
            group.codim(c.rep),
            eig.join(", ")
        ));
    }
    out
}

pub fn hecke_text(report: &HeckeReport) -> String {
    let mut out = format!("{:<12} {:>5} {:>6} {:>4}  {:<12} reason\n", "class", "size", "codim", "dim", "summand");
    for c in &report.classes {
        let summand = serde_json::to_value(c.summand).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        out.push_str(&format!("{:<12} {:>5} {:>6} {:>4}  {:<12} {}\n", c.rep, c.size, c.codim, c.dim, summand, c.reason));
    }
    out.push_str(&format!("total {}\n", report.total));
    out
}
