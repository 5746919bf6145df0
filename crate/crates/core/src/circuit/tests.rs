use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::gen::{dependency_cnf_circuit, dependency_dnf_circuit, random};

fn v(i: u32) -> Var {
    Var::new(i)
}

fn models(c: &NnfCircuit) -> Vec<Interpretation> {
    let n = c.num_vars();
    (0..1u64 << n)
        .map(|k| Interpretation::from_lex_index(n, k))
        .filter(|w| c.evaluate(w))
        .collect()
}

#[test]
fn parse_smallest_files() {
    let c = parse_nnf("nnf 1 0 1\nL 1").unwrap();
    assert_eq!(c.nodes(), &[NnfNode::Lit(Literal::pos(v(1)))]);
    assert_eq!(c.num_vars(), 1);

    let t = parse_nnf("nnf 1 0 0\nA 0").unwrap();
    assert_eq!(t.nodes(), &[NnfNode::True]);
    let f = parse_nnf("c comment\nnnf 1 0 0\nO 0 0\n").unwrap();
    assert_eq!(f.nodes(), &[NnfNode::False]);
}

#[test]
fn serialize_true_circuit() {
    assert_eq!(serialize_nnf(&NnfCircuit::constant(true, 0)), "nnf 1 0 0\nA 0\n");
}

#[test]
fn parse_rejects_malformed_files() {
    for bad in [
        "",
        "nnf 1 0",
        "cnf 1 0 1\nL 1",
        "nnf 2 1 1\nA 1 1\nL 1",   // forward reference
        "nnf 1 0 1\nL 2",          // var out of range
        "nnf 2 2 1\nL 1\nA 1 0",   // edge count mismatch
        "nnf 2 1 1\nL 1",          // too few nodes
        "nnf 1 0 1\nL 1\nL -1",    // too many nodes
        "nnf 2 1 1\nL 1\nA 2 0",   // child count mismatch
        "nnf 1 0 1\nX 1",
        "nnf 1 0 1\nL 0",
    ] {
        assert!(matches!(parse_nnf(bad), Err(Error::Format { .. })), "accepted {bad:?}");
    }
}

#[test]
fn decision_hint_is_preserved() {
    let text = "nnf 4 3 1\nL -1\nL 1\nA 2 0 1\nO 1 1 2\n";
    let c = parse_nnf(text).unwrap();
    assert_eq!(c.node(3), &NnfNode::Or { decision: Some(v(1)), children: vec![2] });
    assert_eq!(serialize_nnf(&c), text);
}

#[test]
fn dependency_cnf_round_trips() {
    let c = dependency_cnf_circuit();
    let back = parse_nnf(&serialize_nnf(&c)).unwrap();
    assert_eq!(back, c);
    assert_eq!(c.num_nodes(), 9);
    assert_eq!(c.size(), 12);
}

#[test]
fn dependency_dnf_file_shape() {
    let c = dependency_dnf_circuit();
    let text = serialize_nnf(&c);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[0], "nnf 10 12 4");
    assert_eq!(lines.iter().filter(|l| l.starts_with('L')).count(), 6);
    assert_eq!(lines.iter().filter(|l| l.starts_with('A')).count(), 3);
    assert_eq!(lines.iter().filter(|l| l.starts_with('O')).count(), 1);
}

#[test]
fn vars_of_nodes() {
    let c = parse_nnf("nnf 1 0 5\nL 3").unwrap();
    assert_eq!(c.vars_of(0), vec![v(3)]);
    let t = NnfCircuit::constant(true, 3);
    assert!(t.vars_of(0).is_empty());
    let fig = dependency_cnf_circuit();
    assert_eq!(fig.vars(), vec![v(1), v(2), v(3), v(4)]);
}

#[test]
fn decomposability() {
    assert!(dependency_dnf_circuit().is_decomposable());
    let cnf = dependency_cnf_circuit();
    assert_eq!(cnf.first_non_decomposable(), Some(cnf.root()));
    let or_only = parse_nnf("nnf 3 2 1\nL 1\nL -1\nO 0 2 0 1").unwrap();
    assert!(or_only.is_decomposable());
}

#[test]
fn fig1_circuits_are_equivalent() {
    let a = dependency_cnf_circuit();
    let b = dependency_dnf_circuit();
    assert_eq!(models(&a), models(&b));
    assert_eq!(models(&a).len(), 7);
}

#[test]
fn condition_on_a1() {
    let c = dependency_cnf_circuit();
    let gamma = PartialInterpretation::from_literals([Literal::pos(v(1))]).unwrap();
    let d = c.condition(&gamma);
    assert!(!d.vars().contains(&v(1)));
    // B ∧ ¬A2 over {A2, B, C}
    for w in (0..16).map(|k| Interpretation::from_lex_index(4, k)) {
        assert_eq!(d.evaluate(&w), w.get(v(3)) && !w.get(v(2)), "{w}");
    }
}

#[test]
fn condition_trivial_cases() {
    let c = dependency_dnf_circuit();
    assert_eq!(models(&c.condition(&PartialInterpretation::new())), models(&c));
    let gamma = PartialInterpretation::from_literals([Literal::neg(v(2))]).unwrap();
    let t = NnfCircuit::constant(true, 4);
    assert_eq!(t.condition(&gamma).nodes(), &[NnfNode::True]);
}

#[test]
fn condition_propagates_constants() {
    // x1 ∧ x2 conditioned on ¬x1 collapses to false
    let c = parse_nnf("nnf 3 2 2\nL 1\nL 2\nA 2 0 1").unwrap();
    let g = PartialInterpretation::from_literals([Literal::neg(v(1))]).unwrap();
    assert_eq!(c.condition(&g).nodes(), &[NnfNode::False]);
    // x1 ∨ x2 conditioned on x1 collapses to true
    let c = parse_nnf("nnf 3 2 2\nL 1\nL 2\nO 0 2 0 1").unwrap();
    let g = PartialInterpretation::from_literals([Literal::pos(v(1))]).unwrap();
    assert_eq!(c.condition(&g).nodes(), &[NnfNode::True]);
}

#[test]
fn consistency() {
    assert!(dependency_dnf_circuit().consistent().unwrap());
    assert!(!NnfCircuit::constant(false, 0).consistent().unwrap());
    let c = parse_nnf("nnf 3 2 1\nL 1\nO 0 0\nA 2 0 1").unwrap();
    assert!(!c.consistent().unwrap());
    assert!(matches!(dependency_cnf_circuit().consistent(), Err(Error::NotDecomposable(_))));
}

#[test]
fn smoothing_examples() {
    let x = NnfCircuit::literal(Literal::pos(v(1)), 2);
    let s = x.smooth(&[v(1), v(2)]).unwrap();
    assert!(s.is_smooth());
    assert_eq!(s.vars(), vec![v(1), v(2)]);
    for w in (0..4).map(|k| Interpretation::from_lex_index(2, k)) {
        assert_eq!(s.evaluate(&w), w.get(v(1)));
    }

    let fig = dependency_dnf_circuit();
    assert!(!fig.is_smooth());
    let s = fig.smooth(&[v(1), v(2), v(3), v(4)]).unwrap();
    assert!(s.is_smooth() && s.is_decomposable());
    assert_eq!(models(&s), models(&fig));

    assert!(fig.smooth(&[v(1)]).is_err());
    assert!(dependency_cnf_circuit().smooth(&fig.vars()).is_err());
}

#[test]
fn evaluation() {
    let fig = dependency_cnf_circuit();
    let w = Interpretation::from_values(vec![true, false, true, false]);
    assert!(fig.evaluate(&w));
    assert!(!NnfCircuit::constant(false, 2).evaluate(&Interpretation::new(2)));
    let not_x = NnfCircuit::literal(Literal::neg(v(1)), 1);
    assert!(!not_x.evaluate(&Interpretation::from_values(vec![true])));
}

#[test]
fn dnf_terms_shapes() {
    let terms = dependency_dnf_circuit().dnf_terms().unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(terms[1].len(), 2);
    assert!(dependency_cnf_circuit().dnf_terms().is_none());
    assert_eq!(NnfCircuit::constant(false, 1).dnf_terms().unwrap().len(), 0);
    assert_eq!(NnfCircuit::constant(true, 1).dnf_terms().unwrap(), vec![vec![]]);
}

#[test]
fn partial_interpretation_rejects_complements() {
    let x = Literal::pos(v(1));
    assert!(PartialInterpretation::from_literals([x, x.complement()]).is_err());
    assert_eq!(PartialInterpretation::from_literals([x, x]).unwrap().len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nnf_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random::random_nnf(&mut rng, 8, 40);
        prop_assert_eq!(parse_nnf(&serialize_nnf(&c)).unwrap(), c);
    }

    #[test]
    fn conditioning_is_substitution(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random::random_nnf(&mut rng, 8, 40);
        let gamma = random::random_term(&mut rng, 8, 3);
        let d = c.condition(&gamma);
        for v in d.vars() {
            prop_assert!(!gamma.contains(v));
        }
        if c.is_decomposable() {
            prop_assert!(d.is_decomposable());
        }
        for k in 0..1u64 << 8 {
            let w = Interpretation::from_lex_index(8, k);
            if gamma.is_extended_by(&w) {
                prop_assert_eq!(c.evaluate(&w), d.evaluate(&w));
            }
        }
    }

    #[test]
    fn dnnf_consistency_matches_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random::random_dnnf(&mut rng, 10, 60);
        prop_assert!(c.is_decomposable());
        prop_assert_eq!(c.consistent().unwrap(), !models(&c).is_empty());
    }

    #[test]
    fn smoothing_preserves_models(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random::random_dnnf(&mut rng, 9, 60);
        let all: Vec<Var> = (1..=9).map(Var::new).collect();
        let s = c.smooth(&all).unwrap();
        prop_assert!(s.is_smooth());
        prop_assert!(s.is_decomposable());
        prop_assert_eq!(s.vars(), all);
        prop_assert_eq!(models(&s), models(&c));
    }
}
