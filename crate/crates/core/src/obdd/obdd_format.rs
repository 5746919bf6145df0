//! OBDD text files.
//!
//! ```text
//! obdd <numvars> <numnodes>
//! order <v1> ... <vk>
//! <id> <var> <lo> <hi>
//! root <id>
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{ObddId, ObddManager};
use crate::circuit::Var;
use crate::error::{Error, Result};

struct Parsed {
    order: Vec<Var>,
    nodes: Vec<(u32, Var, u32, u32, usize)>,
    root: (u32, usize),
}

fn parse_text(text: &str) -> Result<Parsed> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'));
    let num = |s: &str, ln: usize| s.parse::<u32>().map_err(|_| Error::format(ln, format!("bad number `{s}`")));

    let (hl, header) = lines.next().ok_or_else(|| Error::format(0, "missing `obdd` header"))?;
    let tok: Vec<&str> = header.split_whitespace().collect();
    if tok.len() != 3 || tok[0] != "obdd" {
        return Err(Error::format(hl, "header must be `obdd <numvars> <numnodes>`"));
    }
    let num_vars = num(tok[1], hl)?;
    let num_nodes = num(tok[2], hl)? as usize;

    let (ol, line) = lines.next().ok_or_else(|| Error::format(hl, "missing `order` line"))?;
    let mut t = line.split_whitespace();
    if t.next() != Some("order") {
        return Err(Error::format(ol, "expected `order`"));
    }
    let mut order = Vec::new();
    let mut seen = vec![false; num_vars as usize];
    for s in t {
        let v = num(s, ol)?;
        if v == 0 || v > num_vars || seen[v as usize - 1] {
            return Err(Error::format(ol, format!("order is not a permutation of 1..={num_vars}")));
        }
        seen[v as usize - 1] = true;
        order.push(Var::new(v));
    }
    if order.len() != num_vars as usize {
        return Err(Error::format(ol, format!("order lists {} of {num_vars} variables", order.len())));
    }

    let mut nodes = Vec::new();
    let mut root = None;
    for (ln, line) in lines {
        if root.is_some() {
            return Err(Error::format(ln, "content after `root`"));
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok.as_slice() {
            ["root", id] => root = Some((num(id, ln)?, ln)),
            [id, var, lo, hi] => {
                let var = num(var, ln)?;
                if var == 0 || var > num_vars {
                    return Err(Error::format(ln, format!("variable {var} out of range")));
                }
                nodes.push((num(id, ln)?, Var::new(var), num(lo, ln)?, num(hi, ln)?, ln));
            }
            _ => return Err(Error::format(ln, "expected `<id> <var> <lo> <hi>` or `root <id>`")),
        }
    }
    let root = root.ok_or_else(|| Error::format(hl, "missing `root` line"))?;
    if nodes.len() != num_nodes {
        return Err(Error::format(hl, format!("declared {num_nodes} nodes, found {}", nodes.len())));
    }
    Ok(Parsed { order, nodes, root })
}

fn build(m: &mut ObddManager, p: &Parsed) -> Result<ObddId> {
    let mut map: HashMap<u32, ObddId> = HashMap::from([(0, ObddId::FALSE), (1, ObddId::TRUE)]);
    let mut produced = std::collections::HashSet::new();
    let mut last = 1;
    for &(id, var, lo, hi, ln) in &p.nodes {
        if id <= last {
            return Err(Error::format(ln, "node ids must be increasing and at least 2"));
        }
        last = id;
        let child = |c: u32| map.get(&c).copied().ok_or_else(|| Error::format(ln, format!("unknown node {c}")));
        let (lo, hi) = (child(lo)?, child(hi)?);
        if lo == hi {
            return Err(Error::format(ln, "redundant node (lo = hi)"));
        }
        let lvl = m.level(var);
        for c in [lo, hi] {
            if let Some(n) = m.node(c) {
                if m.level(n.var) <= lvl {
                    return Err(Error::format(ln, format!("order violation below node {id}")));
                }
            }
        }
        let r = m.mk(var, lo, hi);
        if !produced.insert(r) {
            return Err(Error::format(ln, format!("duplicate node {id}")));
        }
        map.insert(id, r);
    }
    let (rid, rl) = p.root;
    map.get(&rid).copied().ok_or_else(|| Error::format(rl, format!("unknown root {rid}")))
}

pub(super) fn parse_fresh(text: &str) -> Result<(ObddManager, ObddId)> {
    let p = parse_text(text)?;
    let mut m = ObddManager::with_order(p.order.clone())?;
    let root = build(&mut m, &p)?;
    Ok((m, root))
}

pub(super) fn load_into(m: &mut ObddManager, text: &str) -> Result<ObddId> {
    let p = parse_text(text)?;
    if p.order != m.order() {
        return Err(Error::OrderMismatch(format!(
            "file order {:?} differs from manager order {:?}",
            p.order.iter().map(|v| v.index()).collect::<Vec<_>>(),
            m.order().iter().map(|v| v.index()).collect::<Vec<_>>()
        )));
    }
    build(m, &p)
}

/// Writes the nodes reachable from `f`, renumbered from 2 in store order.
pub fn serialize_obdd(m: &ObddManager, f: ObddId) -> String {
    let nodes = m.reachable(f);
    let mut ids: HashMap<ObddId, u32> = HashMap::from([(ObddId::FALSE, 0), (ObddId::TRUE, 1)]);
    let mut out = String::new();
    writeln!(out, "obdd {} {}", m.num_vars(), nodes.len()).unwrap();
    out.push_str("order");
    for v in m.order() {
        write!(out, " {}", v.index()).unwrap();
    }
    out.push('\n');
    for (i, &id) in nodes.iter().enumerate() {
        let n = m.node(id).unwrap();
        let k = i as u32 + 2;
        ids.insert(id, k);
        writeln!(out, "{k} {} {} {}", n.var.index(), ids[&n.lo], ids[&n.hi]).unwrap();
    }
    writeln!(out, "root {}", ids[&f]).unwrap();
    out
}
