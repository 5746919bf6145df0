use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::gen::random::random_obdd;

fn v(i: u32) -> Var {
    Var::new(i)
}

fn all(n: u32) -> impl Iterator<Item = Interpretation> {
    (0..1u64 << n).map(move |c| Interpretation::from_lex_index(n, c))
}

#[test]
fn mk_is_reduced_and_shared() {
    let mut m = ObddManager::new(2);
    assert_eq!(m.mk(v(1), ObddId::TRUE, ObddId::TRUE), ObddId::TRUE);
    let a = m.mk(v(2), ObddId::FALSE, ObddId::TRUE);
    let b = m.literal(Literal::pos(v(2)));
    assert_eq!(a, b);
    assert_eq!(m.store_len(), 1);
}

#[test]
fn apply_matches_pointwise_semantics() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let mut m = ObddManager::new(5);
        let f = random_obdd(&mut rng, &mut m, 3);
        let g = random_obdd(&mut rng, &mut m, 3);
        let ops = [BoolOp::And, BoolOp::Or, BoolOp::Xor, BoolOp::Iff];
        let rs: Vec<ObddId> = ops.iter().map(|&op| m.apply(op, f, g)).collect();
        let nf = m.not(f);
        for omega in all(5) {
            let (a, b) = (m.evaluate(f, &omega), m.evaluate(g, &omega));
            for (op, r) in ops.iter().zip(&rs) {
                assert_eq!(m.evaluate(*r, &omega), op.eval(a, b));
            }
            assert_eq!(m.evaluate(nf, &omega), !a);
        }
    }
}

#[test]
fn equivalent_functions_share_a_node() {
    let mut m = ObddManager::new(3);
    let x = m.literal(Literal::pos(v(1)));
    let y = m.literal(Literal::pos(v(3)));
    let a = m.and(x, y);
    let b = m.build_term(&[Literal::pos(v(3)), Literal::pos(v(1))]).unwrap();
    assert_eq!(a, b);
    let nx = m.not(x);
    let taut = m.or(x, nx);
    assert_eq!(taut, ObddId::TRUE);
}

#[test]
fn model_count_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let mut m = ObddManager::new(6);
        let f = random_obdd(&mut rng, &mut m, 4);
        let expected = all(6).filter(|o| m.evaluate(f, o)).count();
        assert_eq!(m.model_count(f), BigUint::from(expected));
    }
    let m = ObddManager::new(3);
    assert_eq!(m.model_count(ObddId::TRUE), BigUint::from(8u32));
    assert_eq!(m.model_count(ObddId::FALSE), BigUint::from(0u32));
}

#[test]
fn build_term_rejects_complementary_literals() {
    let mut m = ObddManager::new(2);
    let err = m.build_term(&[Literal::pos(v(2)), Literal::neg(v(2))]).unwrap_err();
    assert!(matches!(err, Error::InconsistentTerm(2)));
    assert_eq!(m.build_term(&[]).unwrap(), ObddId::TRUE);
}

#[test]
fn custom_order_is_respected() {
    let mut m = ObddManager::with_order(vec![v(3), v(1), v(2)]).unwrap();
    let t = m.build_term(&[Literal::pos(v(1)), Literal::neg(v(3))]).unwrap();
    assert_eq!(m.node(t).unwrap().var, v(3));
    assert!(matches!(ObddManager::with_order(vec![v(1), v(1)]), Err(Error::OrderMismatch(_))));
}

#[test]
fn biconditional_requires_a_later_fresh_variable() {
    let mut m = ObddManager::new(2);
    let f = m.literal(Literal::pos(v(2)));
    assert!(matches!(m.biconditional_with_fresh(v(1), f), Err(Error::FreshVarOccurs(1))));
    let y = m.new_var();
    let eq = m.biconditional_with_fresh(y, f).unwrap();
    for omega in all(3) {
        assert_eq!(m.evaluate(eq, &omega), omega.get(y) == omega.get(v(2)));
    }
}

#[test]
fn to_nnf_is_an_equivalent_dnnf() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let mut m = ObddManager::new(5);
        let f = random_obdd(&mut rng, &mut m, 4);
        let c = m.to_nnf(f);
        assert!(c.is_decomposable());
        for omega in all(5) {
            assert_eq!(c.evaluate(&omega), m.evaluate(f, &omega));
        }
    }
}

#[test]
fn text_round_trip() {
    let text = "obdd 3 3\norder 1 2 3\n2 3 0 1\n3 2 2 1\n4 1 0 3\nroot 4\n";
    let (m, f) = ObddManager::parse(text).unwrap();
    assert_eq!(serialize_obdd(&m, f), text);
    for omega in all(3) {
        let expected = omega.get(v(1)) && (omega.get(v(2)) || omega.get(v(3)));
        assert_eq!(m.evaluate(f, &omega), expected);
    }
    let (m, t) = ObddManager::parse("obdd 1 0\norder 1\nroot 1\n").unwrap();
    assert_eq!(t, ObddId::TRUE);
    assert_eq!(serialize_obdd(&m, t), "obdd 1 0\norder 1\nroot 1\n");
}

#[test]
fn malformed_files_are_rejected() {
    for bad in [
        "obdd 2 1\norder 1 1\n2 1 0 1\nroot 2\n",
        "obdd 2 1\norder 1 2\n2 1 1 1\nroot 2\n",
        "obdd 2 2\norder 1 2\n2 1 0 1\n3 2 2 1\nroot 3\n",
        "obdd 2 2\norder 1 2\n2 2 0 1\n3 2 0 1\nroot 3\n",
        "obdd 2 1\norder 1 2\n2 1 0 5\nroot 2\n",
        "obdd 2 1\norder 1 2\n2 1 0 1\n",
        "obdd 2 2\norder 1 2\n2 1 0 1\nroot 2\n",
        "obdd 2 1\norder 1 2\n1 1 0 1\nroot 1\n",
    ] {
        assert!(matches!(ObddManager::parse(bad), Err(Error::Format { .. })), "accepted {bad:?}");
    }
}

#[test]
fn load_requires_the_same_order() {
    let mut m = ObddManager::with_order(vec![v(2), v(1)]).unwrap();
    let err = m.load("obdd 2 1\norder 1 2\n2 1 0 1\nroot 2\n").unwrap_err();
    assert!(matches!(err, Error::OrderMismatch(_)));
    let f = m.load("obdd 2 1\norder 2 1\n2 1 0 1\nroot 2\n").unwrap();
    assert_eq!(f, m.literal(Literal::pos(v(1))));
}
