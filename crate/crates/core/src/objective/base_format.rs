//! Weighted-base files.
//!
//! ```text
//! wb <n> <numvars> <sum|leximax|owa>
//! owa <p1> ... <pn>              (only for owa)
//! <weight> t <lit> ... <lit> 0   (term; no literal means true)
//! <weight> f <relative path>     (c2d NNF file)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use super::{format_weight, parse_weight, Aggregator, CircuitFormula, Formula, Objective, WeightedBase};
use crate::circuit::{parse_nnf, serialize_nnf, Literal, NnfCircuit};
use crate::error::{Error, Result};

/// Parses a weighted-base file. `load` resolves the path of each `f` item.
pub fn parse_objective(
    text: &str,
    mut load: impl FnMut(&str) -> Result<NnfCircuit>,
) -> Result<Objective> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'));

    let (hl, header) = lines.next().ok_or_else(|| Error::format(0, "missing `wb` header"))?;
    let tok: Vec<&str> = header.split_whitespace().collect();
    if tok.len() != 4 || tok[0] != "wb" {
        return Err(Error::format(hl, "header must be `wb <n> <numvars> <agg>`"));
    }
    let n: usize = tok[1].parse().map_err(|_| Error::format(hl, "bad item count"))?;
    let num_vars: u32 = tok[2].parse().map_err(|_| Error::format(hl, "bad variable count"))?;

    let aggregator = match tok[3] {
        "sum" => Aggregator::Sum,
        "leximax" => Aggregator::Leximax,
        "owa" => {
            let (ol, line) = lines.next().ok_or_else(|| Error::format(hl, "missing `owa` line"))?;
            let mut t = line.split_whitespace();
            if t.next() != Some("owa") {
                return Err(Error::format(ol, "expected the `owa` weight line"));
            }
            let p = t
                .map(|s| parse_weight(s).ok_or_else(|| Error::format(ol, format!("bad weight `{s}`"))))
                .collect::<Result<Vec<_>>>()?;
            let agg = Aggregator::Owa(p);
            agg.validate(n).map_err(|e| Error::format(ol, e.to_string()))?;
            agg
        }
        other => return Err(Error::format(hl, format!("unknown aggregator `{other}`"))),
    };

    let mut base = WeightedBase::new(num_vars);
    for (ln, line) in lines {
        let (w, rest) = line.split_once(char::is_whitespace).ok_or_else(|| Error::format(ln, "truncated item"))?;
        let weight = parse_weight(w).ok_or_else(|| Error::format(ln, format!("bad weight `{w}`")))?;
        let rest = rest.trim_start();
        let (kind, args) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        let formula = match kind {
            "t" => {
                let mut codes = args
                    .split_whitespace()
                    .map(|s| s.parse::<i64>().map_err(|_| Error::format(ln, format!("bad literal `{s}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if codes.pop() != Some(0) || codes.contains(&0) {
                    return Err(Error::format(ln, "term must end with a single 0"));
                }
                let lits = codes
                    .iter()
                    .map(|&c| {
                        let l = Literal::from_dimacs(c).unwrap();
                        if l.var().index() > num_vars {
                            return Err(Error::format(ln, format!("variable {} exceeds {num_vars}", l.var().index())));
                        }
                        Ok(l)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Formula::term(lits).map_err(|e| Error::format(ln, e.to_string()))?
            }
            "f" => {
                let path = args.trim();
                if path.is_empty() {
                    return Err(Error::format(ln, "missing formula path"));
                }
                let circuit = load(path)?;
                Formula::Circuit(CircuitFormula { circuit: Arc::new(circuit), path: Some(path.to_string()) })
            }
            other => return Err(Error::format(ln, format!("unknown item kind `{other}`"))),
        };
        base.push(formula, weight).map_err(|e| Error::format(ln, e.to_string()))?;
    }
    if base.len() != n {
        return Err(Error::format(hl, format!("declared {n} items, found {}", base.len())));
    }
    Ok(Objective { base, aggregator })
}

/// Reads a weighted-base file; `f` items are resolved against its directory.
pub fn load_objective(path: &Path) -> Result<Objective> {
    let text = fs::read_to_string(path)?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    parse_objective(&text, |rel| {
        let text = fs::read_to_string(dir.join(rel))?;
        parse_nnf(&text)
    })
}

/// A weighted-base file plus the NNF files its `f` items refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerializedObjective {
    pub text: String,
    pub formulas: Vec<(String, String)>,
}

/// Circuit items without a recorded path are named `item<i>.nnf`.
pub fn serialize_objective(obj: &Objective) -> SerializedObjective {
    let b = &obj.base;
    let mut text = String::new();
    let mut formulas = Vec::new();
    writeln!(text, "wb {} {} {}", b.len(), b.num_vars(), obj.aggregator.name()).unwrap();
    if let Aggregator::Owa(p) = &obj.aggregator {
        text.push_str("owa");
        for w in p {
            write!(text, " {}", format_weight(w)).unwrap();
        }
        text.push('\n');
    }
    for (i, it) in b.items().iter().enumerate() {
        let w = format_weight(&it.weight);
        match &it.formula {
            Formula::Circuit(c) => {
                let path = c.path.clone().unwrap_or_else(|| format!("item{}.nnf", i + 1));
                writeln!(text, "{w} f {path}").unwrap();
                formulas.push((path, serialize_nnf(&c.circuit)));
            }
            f => {
                text.push_str(&w);
                text.push_str(" t");
                for l in f.term_literals().unwrap() {
                    write!(text, " {}", l.to_dimacs()).unwrap();
                }
                text.push_str(" 0\n");
            }
        }
    }
    SerializedObjective { text, formulas }
}

/// Writes the base to `path` and its circuit items next to it.
pub fn write_objective(obj: &Objective, path: &Path) -> Result<SerializedObjective> {
    let s = serialize_objective(obj);
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::write(path, &s.text)?;
    for (rel, text) in &s.formulas {
        let target = dir.join(rel);
        if let Some(parent) = target.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(target, text)?;
    }
    Ok(s)
}
