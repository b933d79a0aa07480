use std::fmt::Write;

use num_complex::Complex64;

use super::{Child, DecisionDiagram};

/// Formats `x` with `decimals` fractional digits, trailing zeros trimmed.
fn fixed(x: f64, decimals: usize) -> String {
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// Decimals needed for `digits` significant digits at the scale of `x`.
fn decimals_for(x: f64, digits: i32) -> usize {
    if x == 0.0 {
        return 0;
    }
    (digits - 1 - x.abs().log10().floor() as i32).max(0) as usize
}

/// Weight rounded to 6 significant digits of its larger component.
fn weight_label(w: Complex64) -> String {
    let decimals = decimals_for(w.re.abs().max(w.im.abs()), 6);
    let re = fixed(w.re, decimals);
    let im = fixed(w.im, decimals);
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", _) => format!("{im}i"),
        _ if im.starts_with('-') => format!("{re}{im}i"),
        _ => format!("{re}+{im}i"),
    }
}

/// Graphviz rendering. Nodes are labelled `q<level>`, edges by weight; zero
/// stubs are drawn as dashed edges into a shared `zero` point.
pub fn to_dot(dd: &DecisionDiagram) -> String {
    let mut out = String::from("digraph dd {\n");
    out.push_str("  root [shape=point];\n");
    out.push_str("  terminal [shape=box, label=\"1\"];\n");
    out.push_str("  zero [shape=point];\n");
    let nodes = dd.reachable();
    for &id in &nodes {
        let _ = writeln!(out, "  n{id} [label=\"q{}\"];", dd.node(id).level);
    }
    let _ = writeln!(out, "  root -> n{} [label=\"{}\"];", dd.root(), weight_label(dd.root_weight()));
    for &id in &nodes {
        for (k, e) in dd.node(id).edges.iter().enumerate() {
            let _ = match e.child {
                Child::Node(c) => writeln!(out, "  n{id} -> n{c} [label=\"{}\", taillabel=\"{k}\"];", weight_label(e.weight)),
                Child::Terminal => writeln!(out, "  n{id} -> terminal [label=\"{}\", taillabel=\"{k}\"];", weight_label(e.weight)),
                Child::Zero => writeln!(out, "  n{id} -> zero [style=dashed, taillabel=\"{k}\"];"),
            };
        }
    }
    out.push_str("}\n");
    out
}
