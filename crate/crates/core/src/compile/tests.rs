use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::circuit::Var;
use crate::error::Error;
use crate::gen::random::random_cnf;

fn all(n: u32) -> impl Iterator<Item = Interpretation> {
    (0..1u64 << n).map(move |c| Interpretation::from_lex_index(n, c))
}

fn cnf_holds(cnf: &Cnf, omega: &Interpretation) -> bool {
    cnf.clauses.iter().all(|c| c.iter().any(|&l| omega.satisfies(l)))
}

fn lits(xs: &[i64]) -> Vec<Literal> {
    xs.iter().map(|&i| Literal::from_dimacs(i).unwrap()).collect()
}

#[test]
fn dimacs_round_trip_and_tolerance() {
    let text = "c header comment\np cnf 3 2\n1 -2\n 0\n3 0\n%\n0\n";
    let cnf = parse_dimacs(text).unwrap();
    assert_eq!(cnf.num_vars, 3);
    assert_eq!(cnf.clauses, vec![lits(&[1, -2]), lits(&[3])]);
    assert_eq!(parse_dimacs(&serialize_dimacs(&cnf)).unwrap(), cnf);
}

#[test]
fn dimacs_errors() {
    for bad in ["p cnf 2 1\n3 0\n", "p cnf 2 2\n1 0\n", "1 2 0\n", "p cnf 2 1\n1 x 0\n", "p dnf 2 1\n1 0\n"] {
        assert!(matches!(parse_dimacs(bad), Err(Error::Format { .. })), "accepted {bad:?}");
    }
}

#[test]
fn compiled_models_match_the_cnf() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for round in 0..60 {
        let n = 3 + round % 10;
        let m = rng.gen_range(0..=(n as usize * 9 / 2));
        let cnf = random_cnf(&mut rng, n, m, 3);
        let c = compile_cnf_to_dnnf(&cnf);
        assert!(c.is_decomposable(), "round {round}");
        for omega in all(n) {
            assert_eq!(c.evaluate(&omega), cnf_holds(&cnf, &omega), "round {round}");
        }
    }
}

#[test]
fn tiny_cache_gives_the_same_function() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let cnf = random_cnf(&mut rng, 10, 30, 3);
        let a = compile_cnf_to_dnnf(&cnf);
        let b = compile_with_cache_cap(&cnf, 1);
        for omega in all(10) {
            assert_eq!(a.evaluate(&omega), b.evaluate(&omega));
        }
    }
}

#[test]
fn trivial_inputs() {
    let empty = Cnf { num_vars: 2, clauses: vec![] };
    let c = compile_cnf_to_dnnf(&empty);
    assert!(all(2).all(|o| c.evaluate(&o)));
    let contradiction = Cnf { num_vars: 1, clauses: vec![lits(&[1]), lits(&[-1])] };
    assert!(!compile_cnf_to_dnnf(&contradiction).consistent().unwrap());
    let empty_clause = Cnf { num_vars: 1, clauses: vec![vec![]] };
    assert!(!compile_cnf_to_dnnf(&empty_clause).consistent().unwrap());
    let tautology = Cnf { num_vars: 2, clauses: vec![lits(&[1, -1])] };
    assert!(all(2).all(|o| compile_cnf_to_dnnf(&tautology).evaluate(&o)));
}

#[test]
fn compilation_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cnf = random_cnf(&mut rng, 12, 40, 3);
    let a = crate::circuit::serialize_nnf(&compile_cnf_to_dnnf(&cnf));
    let b = crate::circuit::serialize_nnf(&compile_cnf_to_dnnf(&cnf));
    assert_eq!(a, b);
}

#[test]
fn dnf_builder_keeps_term_order_and_drops_contradictions() {
    let terms = vec![lits(&[1, -2, 3]), lits(&[2, -2]), lits(&[-2, -1, -1])];
    let c = build_dnf(&terms, 3);
    assert_eq!(c.dnf_terms().unwrap(), vec![lits(&[1, -2, 3]), lits(&[-2, -1])]);
    for omega in all(3) {
        let expected = terms.iter().any(|t| t.iter().all(|&l| omega.satisfies(l)));
        assert_eq!(c.evaluate(&omega), expected);
    }
}

#[test]
fn mods_builder_has_exactly_the_given_models() {
    let models = vec![Interpretation::from_values(vec![true, false, true]), Interpretation::from_values(vec![false, false, false])];
    let c = build_mods(&models, 3);
    let found: Vec<Interpretation> = all(3).filter(|o| c.evaluate(o)).collect();
    let mut expected = models.clone();
    expected.sort_by_key(|o| o.values().iter().fold(0u32, |a, &b| a * 2 + b as u32));
    assert_eq!(found, expected);
    assert!(c.vars().contains(&Var::new(2)));
}
