use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::random_quadratic_base;
use super::*;
use crate::circuit::Interpretation;
use crate::objective::{classify, evaluate_base, Score};
use crate::optimize::{condition_and_fix, oracle_enumerate};

fn all(n: u32) -> impl Iterator<Item = Interpretation> {
    (0..1u64 << n).map(move |c| Interpretation::from_lex_index(n, c))
}

fn optimum(inst: &Instance) -> Score {
    let r = oracle_enumerate(&inst.circuit, &inst.objective.base, &inst.objective.aggregator).unwrap();
    r.score().unwrap().clone()
}

fn sum(n: i64) -> Score {
    Score::Sum(weight(n))
}

fn sets<'a>(xs: &[[&'a str; 2]]) -> Vec<Vec<&'a str>> {
    xs.iter().map(|p| p.to_vec()).collect()
}

#[test]
fn name_table_round_trip() {
    let t = NameTable::from_names(&["A", "B1"]).unwrap();
    assert_eq!(NameTable::parse(&t.serialize()).unwrap(), t);
    assert_eq!(t.resolve_literal("-B1"), Some(Literal::neg(Var::new(2))));
    assert_eq!(t.resolve_literal("A"), Some(Literal::pos(Var::new(1))));
    assert_eq!(t.resolve_literal("-2"), Some(Literal::neg(Var::new(2))));
    assert_eq!(t.resolve_literal("Z"), None);
    assert!(NameTable::from_names(&["A", "A"]).is_err());
    assert!(matches!(NameTable::parse("2 A\n"), Err(Error::Format { .. })));
}

#[test]
fn dependency_representations_agree() {
    let cnf = compile_cnf_to_dnnf(&dependency_cnf());
    let hand = dependency_cnf_circuit();
    let dnf = dependency_dnf_circuit();
    assert!(cnf.is_decomposable() && dnf.is_decomposable());
    assert!(!hand.is_decomposable());
    let models: Vec<_> = all(4).filter(|o| hand.evaluate(o)).collect();
    assert_eq!(models.len(), 7);
    for o in all(4) {
        assert_eq!(cnf.evaluate(&o), hand.evaluate(&o));
        assert_eq!(dnf.evaluate(&o), hand.evaluate(&o));
    }
}

#[test]
fn hitting_set_linear_examples() {
    let inst = gen_hitting_set_linear(&sets(&[["a", "b"], ["b", "c"]])).unwrap();
    assert_eq!(optimum(&inst), sum(1));
    assert_eq!(inst.names.var("b"), Some(Var::new(2)));
    assert_eq!(optimum(&gen_hitting_set_linear::<&str>(&[]).unwrap()), sum(0));
    assert_eq!(optimum(&gen_hitting_set_linear(&sets(&[["a", "b"]])).unwrap()), sum(1));
    let tag = classify(&inst.objective.base);
    assert_eq!(tag.to_string(), "L^+_+");
    assert!(matches!(gen_hitting_set_linear(&[vec!["a", "b", "c"]]), Err(Error::BadSetSize(0))));
}

#[test]
fn term_sat_quadratic_examples() {
    let x = Literal::pos(Var::new(1));
    let y = Literal::pos(Var::new(2));
    assert_eq!(optimum(&gen_term_sat_quadratic(&[[x, y]], 2).unwrap()), sum(0));
    assert_eq!(optimum(&gen_term_sat_quadratic(&[[x, y], [x.complement(), y]], 2).unwrap()), sum(1));
    let empty = gen_term_sat_quadratic(&[], 2).unwrap();
    assert!(empty.objective.base.is_empty());
    assert_eq!(optimum(&empty), sum(0));
    assert!(gen_term_sat_quadratic(&[[x, x.complement()]], 2).is_err());
}

#[test]
fn hitting_set_qplus_examples() {
    let one = gen_hitting_set_qplus(&sets(&[["a", "b"]])).unwrap();
    assert_eq!(optimum(&one), sum(-1));
    let two = gen_hitting_set_qplus(&sets(&[["a", "b"], ["b", "c"], ["c", "b"]])).unwrap();
    assert_eq!(two.objective.base.len(), 2 + 3);
    assert_eq!(optimum(&two), sum(1 - 3));
    assert_eq!(optimum(&gen_hitting_set_qplus::<&str>(&[]).unwrap()), sum(0));
}

#[test]
fn owa_single_term_example() {
    let x = Literal::pos(Var::new(1));
    let y = Literal::pos(Var::new(2));
    let base = WeightedBase::new(2).with_item(Formula::term(vec![x, y]).unwrap(), weight(1)).unwrap();
    let owa = gen_owa_from_quadratic(&base).unwrap();
    let items: Vec<(Formula, Weight)> =
        owa.base.items().iter().map(|it| (it.formula.clone(), it.weight.clone())).collect();
    assert_eq!(
        items,
        vec![
            (Formula::Literal(x), weight(3)),
            (Formula::Literal(y), weight(3)),
            (Formula::Literal(x.complement()), weight(2)),
            (Formula::Literal(y.complement()), weight(2)),
        ]
    );
    assert_eq!(owa.aggregator, Aggregator::Owa(vec![weight(0), weight(1), weight(0), weight(0)]));
    let g = |vals: Vec<bool>| evaluate_base(&owa.base, &owa.aggregator, &Interpretation::from_values(vals)).unwrap();
    assert_eq!(g(vec![true, true]), sum(3));
    assert_eq!(g(vec![true, false]), sum(2));
    assert_eq!(owa_offset(&base), weight(2));
}

#[test]
fn owa_identity_on_random_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let base = random_quadratic_base(&mut rng, 5, 3, 0..=4);
        let owa = gen_owa_from_quadratic(&base).unwrap();
        let k = owa_offset(&base);
        for o in all(5) {
            let Score::Sum(f) = evaluate_base(&base, &Aggregator::Sum, &o).unwrap() else { unreachable!() };
            assert_eq!(evaluate_base(&owa.base, &owa.aggregator, &o).unwrap(), Score::Sum(f + &k));
        }
    }
    let empty = gen_owa_from_quadratic(&WeightedBase::new(0)).unwrap();
    assert!(empty.base.is_empty());
}

#[test]
fn owa_rejects_other_families() {
    let base = WeightedBase::new(1).with_item(Formula::Literal(Literal::pos(Var::new(1))), weight(1)).unwrap();
    assert!(matches!(gen_owa_from_quadratic(&base), Err(Error::FamilyMismatch { .. })));
}

#[test]
fn posneg_examples() {
    let pos = clauses(&[&[1, 2]]);
    let neg = clauses(&[&[-1, -2]]);
    let w = gen_posneg_cnf(&pos, &neg, 2, PosNegFlavor::GplusWeights).unwrap();
    assert_eq!(optimum(&w), sum(0));
    let l = gen_posneg_cnf(&pos, &neg, 2, PosNegFlavor::GplusLiterals).unwrap();
    assert_eq!(optimum(&l), sum(-1));
    let tag = classify(&l.objective.base);
    assert!(tag.positive_literals && !tag.nonnegative_weights);

    let unsat = gen_posneg_cnf(&clauses(&[&[1]]), &clauses(&[&[-1]]), 1, PosNegFlavor::GplusWeights).unwrap();
    assert_eq!(optimum(&unsat), sum(1));
    let empty = gen_posneg_cnf(&[], &[], 1, PosNegFlavor::GplusWeights).unwrap();
    assert_eq!(optimum(&empty), sum(0));

    let err = gen_posneg_cnf(&clauses(&[&[1, -2]]), &[], 2, PosNegFlavor::GplusWeights).unwrap_err();
    assert!(matches!(err, Error::ClausePolarityViolation(0)));
}

#[test]
fn negative_literal_elimination_example() {
    let x = Var::new(1);
    let base = WeightedBase::new(1).with_item(Formula::Literal(Literal::neg(x)), weight(1)).unwrap();
    let e = eliminate_negative_literals(&base).unwrap();
    assert_eq!(e.fresh, vec![(x, Var::new(2))]);
    assert_eq!(e.base.items()[0].formula, Formula::Literal(Literal::pos(Var::new(2))));
    for o in all(2) {
        assert_eq!(e.manager.evaluate(e.constraint, &o), o.get(x) != o.get(Var::new(2)));
    }
    let phi = e.manager.to_nnf(e.constraint);
    let r = oracle_enumerate(&phi, &e.base, &Aggregator::Sum).unwrap();
    assert_eq!(r.score(), Some(&sum(0)));
    assert!(r.model().unwrap().get(x));
}

#[test]
fn negative_literal_elimination_without_negatives() {
    let base = WeightedBase::new(2)
        .with_item(Formula::term(vec![Literal::pos(Var::new(1)), Literal::pos(Var::new(2))]).unwrap(), weight(4))
        .unwrap();
    let e = eliminate_negative_literals(&base).unwrap();
    assert_eq!(e.base, base);
    assert_eq!(e.constraint, ObddId::TRUE);
}

#[test]
fn negative_literal_elimination_preserves_optima() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..40 {
        let base = random_quadratic_base(&mut rng, 4, 4, -3..=3);
        let e = eliminate_negative_literals(&base).unwrap();
        assert!(classify(&e.base).positive_literals);
        let phi = e.manager.to_nnf(e.constraint);
        for agg in [Aggregator::Sum, Aggregator::Leximax] {
            let orig = oracle_enumerate(&NnfCircuit::constant(true, 4), &base, &agg).unwrap();
            let elim = oracle_enumerate(&phi, &e.base, &agg).unwrap();
            assert_eq!(orig.score(), elim.score());
            let projected = elim.model().unwrap().project(4);
            assert_eq!(&evaluate_base(&base, &agg, &projected).unwrap(), orig.score().unwrap());
        }
    }
}

#[test]
fn package_demo_optima() {
    let d = gen_package_demo();
    let phi = condition_and_fix(&d.circuit, &d.gamma);
    let named = |o: &Interpretation| -> Vec<&str> { o.true_vars().map(|v| d.names.name(v).unwrap()).collect() };

    let r = oracle_enumerate(&phi, &d.minimal_change, &Aggregator::Sum).unwrap();
    assert_eq!(r.score(), Some(&sum(4)));
    assert_eq!(named(r.model().unwrap()), vec!["A", "A1", "B", "B1"]);

    let r = oracle_enumerate(&phi, &d.newest, &Aggregator::Sum).unwrap();
    let got = named(r.model().unwrap());
    assert!(got.contains(&"A2") && got.contains(&"C"), "{got:?}");
}
