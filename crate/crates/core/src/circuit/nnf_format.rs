//! The c2d NNF text format.
//!
//! ```text
//! nnf <nodes> <edges> <vars>
//! L <signed literal>
//! A <count> <child ids...>
//! O <decision var or 0> <count> <child ids...>
//! ```
//!
//! `A 0` is true and `O 0 0` is false. Lines starting with `c` are comments.

use std::fmt::Write;

use super::{Literal, NnfCircuit, NnfNode, Var};
use crate::error::{Error, Result};

fn numbers<'a>(
    line_no: usize,
    tokens: impl Iterator<Item = &'a str>,
) -> Result<Vec<i64>> {
    tokens
        .map(|t| t.parse::<i64>().map_err(|_| Error::format(line_no, format!("expected an integer, got `{t}`"))))
        .collect()
}

fn as_count(line_no: usize, v: i64, what: &str) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::format(line_no, format!("negative {what}")))
}

pub fn parse_nnf(text: &str) -> Result<NnfCircuit> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'));

    let (hl, header) = lines.next().ok_or_else(|| Error::format(0, "missing `nnf` header"))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some("nnf") {
        return Err(Error::format(hl, "header must start with `nnf`"));
    }
    let h = numbers(hl, tok)?;
    if h.len() != 3 {
        return Err(Error::format(hl, "header must be `nnf V E N`"));
    }
    let num_nodes = as_count(hl, h[0], "node count")?;
    let num_edges = as_count(hl, h[1], "edge count")?;
    let num_vars = u32::try_from(h[2]).map_err(|_| Error::format(hl, "bad variable count"))?;
    if num_nodes == 0 {
        return Err(Error::format(hl, "a circuit needs at least one node"));
    }

    let mut nodes = Vec::with_capacity(num_nodes);
    let mut edges = 0usize;
    for (ln, line) in lines {
        let id = nodes.len();
        if id == num_nodes {
            return Err(Error::format(ln, format!("more than the {num_nodes} declared nodes")));
        }
        let mut tok = line.split_whitespace();
        let kind = tok.next().unwrap_or_default();
        let args = numbers(ln, tok)?;
        let children = |args: &[i64]| -> Result<Vec<usize>> {
            let count = as_count(ln, args[0], "child count")?;
            if args.len() != count + 1 {
                return Err(Error::format(ln, format!("expected {count} children, found {}", args.len() - 1)));
            }
            args[1..]
                .iter()
                .map(|&c| match usize::try_from(c) {
                    Ok(c) if c < id => Ok(c),
                    _ => Err(Error::format(ln, format!("child {c} is not an earlier node"))),
                })
                .collect()
        };
        let node = match kind {
            "L" => {
                if args.len() != 1 {
                    return Err(Error::format(ln, "literal line takes one argument"));
                }
                let lit = Literal::from_dimacs(args[0]).ok_or_else(|| Error::format(ln, "literal 0"))?;
                if lit.var().index() > num_vars {
                    return Err(Error::format(ln, format!("variable {} exceeds {num_vars}", lit.var().index())));
                }
                NnfNode::Lit(lit)
            }
            "A" => {
                if args.is_empty() {
                    return Err(Error::format(ln, "and line needs a child count"));
                }
                let ch = children(&args)?;
                edges += ch.len();
                if ch.is_empty() {
                    NnfNode::True
                } else {
                    NnfNode::And(ch)
                }
            }
            "O" => {
                if args.len() < 2 {
                    return Err(Error::format(ln, "or line needs a decision variable and a child count"));
                }
                let decision = match args[0] {
                    0 => None,
                    j if j > 0 && j <= num_vars as i64 => Some(Var::new(j as u32)),
                    j => return Err(Error::format(ln, format!("bad decision variable {j}"))),
                };
                let ch = children(&args[1..])?;
                edges += ch.len();
                if ch.is_empty() {
                    NnfNode::False
                } else {
                    NnfNode::Or { decision, children: ch }
                }
            }
            other => return Err(Error::format(ln, format!("unknown node kind `{other}`"))),
        };
        nodes.push(node);
    }
    if nodes.len() != num_nodes {
        return Err(Error::format(hl, format!("declared {num_nodes} nodes, found {}", nodes.len())));
    }
    if edges != num_edges {
        return Err(Error::format(hl, format!("declared {num_edges} edges, found {edges}")));
    }
    NnfCircuit::from_nodes(nodes, num_vars).map_err(|e| Error::format(hl, e.to_string()))
}

pub fn serialize_nnf(c: &NnfCircuit) -> String {
    let mut out = String::new();
    writeln!(out, "nnf {} {} {}", c.num_nodes(), c.size(), c.num_vars()).unwrap();
    for node in c.nodes() {
        match node {
            NnfNode::True => out.push_str("A 0"),
            NnfNode::False => out.push_str("O 0 0"),
            NnfNode::Lit(l) => write!(out, "L {}", l.to_dimacs()).unwrap(),
            NnfNode::And(ch) => {
                write!(out, "A {}", ch.len()).unwrap();
                for c in ch {
                    write!(out, " {c}").unwrap();
                }
            }
            NnfNode::Or { decision, children } => {
                write!(out, "O {} {}", decision.map_or(0, |v| v.index()), children.len()).unwrap();
                for c in children {
                    write!(out, " {c}").unwrap();
                }
            }
        }
        out.push('\n');
    }
    out
}
