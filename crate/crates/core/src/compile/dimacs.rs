use std::fmt::Write as _;

use crate::circuit::Literal;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: u32,
    pub clauses: Vec<Vec<Literal>>,
}

/// Parses `p cnf V C` files. Clauses may span lines; `c` lines are comments
/// and a `%` line ends the input.
pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        last_line = ln;
        if line.starts_with('p') {
            let tok: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() || tok.len() != 4 || tok[0] != "p" || tok[1] != "cnf" {
                return Err(Error::format(ln, "header must be `p cnf <vars> <clauses>`"));
            }
            let v = tok[2].parse().map_err(|_| Error::format(ln, "bad variable count"))?;
            let c = tok[3].parse().map_err(|_| Error::format(ln, "bad clause count"))?;
            header = Some((v, c));
            continue;
        }
        let (num_vars, _) = header.ok_or_else(|| Error::format(ln, "clause before `p cnf` header"))?;
        for s in line.split_whitespace() {
            let code: i64 = s.parse().map_err(|_| Error::format(ln, format!("bad literal `{s}`")))?;
            match Literal::from_dimacs(code) {
                None => clauses.push(std::mem::take(&mut current)),
                Some(l) if l.var().index() > num_vars => {
                    return Err(Error::format(ln, format!("variable {} exceeds {num_vars}", l.var().index())));
                }
                Some(l) => current.push(l),
            }
        }
    }
    let (num_vars, num_clauses) = header.ok_or_else(|| Error::format(0, "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(Error::format(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != num_clauses {
        return Err(Error::format(last_line, format!("declared {num_clauses} clauses, found {}", clauses.len())));
    }
    Ok(Cnf { num_vars, clauses })
}

pub fn serialize_dimacs(cnf: &Cnf) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.num_vars, cnf.clauses.len());
    for c in &cnf.clauses {
        for l in c {
            write!(out, "{} ", l.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}
