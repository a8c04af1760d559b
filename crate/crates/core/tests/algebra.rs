mod common;

use common::*;
use il_algebra::algebra::order_and_star;
use il_algebra::laws::{check_identities, check_integrality_equivalence, check_law, evaluate, IDENTITY_LAWS};
use il_algebra::{build_algebra, derive_arrow, BuildError, BuildMode, Element, Law, Operation};

#[test]
fn oracle_and_engine_agree_on_validity() {
    for name in fixture_names() {
        let doc = fixture(&name);
        let oracle = Oracle::new(&doc);
        let engine = build_algebra(&doc, BuildMode::Strict);
        assert_eq!(oracle.is_il_algebra(), engine.is_ok(), "{name}");
        assert_eq!(VALID.contains(&name.as_str()), engine.is_ok(), "{name}");
    }
}

#[test]
fn valid_fixtures_satisfy_every_identity() {
    for name in VALID {
        let alg = strict(name);
        let report = check_identities(&alg);
        assert!(report.passed(), "{name}: {:?}", report.violations().first());
        assert!(Oracle::new(&fixture(name)).failing_identities().is_empty(), "{name}");
    }
}

#[test]
fn identity_verdicts_match_oracle_on_printed_tables() {
    // Item k of the oracle's list against the engine's law names.
    let items: [(usize, &[Law]); 10] = [
        (1, &[Law::StarDistributesOverJoin, Law::StarPreservesBottom]),
        (2, &[Law::TopGreatest]),
        (3, &[Law::StarBelowMeetUnderUnit]),
        (4, &[Law::JoinBelowStarAboveUnit]),
        (5, &[Law::ArrowComposition]),
        (6, &[Law::UnitArrow]),
        (7, &[Law::StarMonotone, Law::ArrowMonotone]),
        (8, &[Law::Currying]),
        (9, &[Law::ModusPonens]),
        (10, &[Law::ArrowReflexive]),
    ];
    for name in fixture_names() {
        let doc = fixture(&name);
        let alg = build_algebra(&doc, BuildMode::Lenient).unwrap().algebra;
        let report = check_identities(&alg);
        let failing = Oracle::new(&doc).failing_identities();
        for (item, laws) in items {
            let engine_fails = laws.iter().any(|&l| report.has_law(l));
            assert_eq!(engine_fails, failing.contains(&item), "{name}: item {item}");
        }
    }
}

/// Parsed `.expected` sidecar line: law id, failure count, first witness.
fn sidecar(name: &str) -> (bool, Vec<(String, usize, Vec<String>)>) {
    let text = std::fs::read_to_string(fixture_dir().join(format!("{name}.expected"))).unwrap();
    let mut status = None;
    let mut laws = Vec::new();
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let f: Vec<&str> = line.split_whitespace().collect();
        match f.as_slice() {
            ["status", s] => status = Some(*s == "pass"),
            ["pass", law] => laws.push((law.to_string(), 0, vec![])),
            ["fail", law, k, w] => {
                laws.push((law.to_string(), k.parse().unwrap(), w.split(',').map(String::from).collect()))
            }
            other => panic!("{name}.expected: unexpected line {other:?}"),
        }
    }
    (status.unwrap(), laws)
}

#[test]
fn lenient_builds_match_sidecars() {
    for name in fixture_names() {
        let (pass, laws) = sidecar(&name);
        let built = build_algebra(&fixture(&name), BuildMode::Lenient).unwrap();
        assert_eq!(built.report.passed(), pass, "{name}");
        for (law, count, witness) in laws {
            let law = Law::from_id(&law).unwrap();
            let found: Vec<_> = built.report.of_law(law).collect();
            assert_eq!(found.len(), count, "{name} {law:?}");
            if let Some(first) = found.first() {
                assert_eq!(first.witness_names(built.algebra.names()), witness, "{name} {law:?}");
            }
        }
    }
}

#[test]
fn printed_unit_entries_are_witnessed_at_a_and_unit() {
    for name in ["ex3-printed", "ex4-printed"] {
        let built = build_algebra(&fixture(name), BuildMode::Lenient).unwrap();
        let v = built.report.first_of(Law::UnitLaw).unwrap();
        assert_eq!(v.witness_names(built.algebra.names()), ["a", "1"], "{name}");
        assert!(matches!(build_algebra(&fixture(name), BuildMode::Strict), Err(BuildError::LawViolations(_))));
    }
    let built = build_algebra(&fixture("ex4-printed"), BuildMode::Lenient).unwrap();
    assert!(built.report.has_law(Law::ResiduationBackward) || built.report.has_law(Law::ResiduationForward));
}

#[test]
fn star_monotone_first_witness_on_printed_chain() {
    let alg = build_algebra(&fixture("ex4-printed"), BuildMode::Lenient).unwrap().algebra;
    let report = check_law(&alg, Law::StarMonotone);
    let names = alg.names();
    assert_eq!(report.violations()[0].witness_names(names), ["a", "a", "a", "1"]);
    // every reported violation is re-checkable on its own witness
    for v in report.violations() {
        assert!(evaluate(&alg, v.law, &v.witness).is_some());
    }
}

#[test]
fn derived_arrow_reproduces_printed_table() {
    let doc = fixture("ex2");
    let (order, star) = order_and_star(&doc).unwrap();
    let derived = derive_arrow(&order, &star).unwrap();
    let printed = doc.arrow.as_ref().unwrap();
    let mut compared = 0;
    for (x, row) in doc.elements.iter().enumerate() {
        let printed_row = &printed.iter().find(|r| &r.row == row).unwrap().entries;
        for (z, expect) in printed_row.iter().enumerate() {
            assert_eq!(&doc.elements[derived.get(Element::new(x), Element::new(z)).index()], expect, "{row}->{z}");
            compared += 1;
        }
    }
    assert_eq!(compared, 36);
}

#[test]
fn derived_arrow_matches_oracle_everywhere() {
    for name in fixture_names() {
        let doc = fixture(&name);
        let oracle = Oracle::new(&doc);
        let (order, star) = order_and_star(&doc).unwrap();
        match (derive_arrow(&order, &star), oracle.derived_arrow()) {
            (Ok(t), Some(o)) => {
                for (x, z) in itertools::iproduct!(0..oracle.n, 0..oracle.n) {
                    assert_eq!(t.get(Element::new(x), Element::new(z)).index(), o[x][z], "{name}");
                }
            }
            (Err(_), None) => {}
            (a, b) => panic!("{name}: engine {:?} vs oracle {:?}", a.is_ok(), b.is_some()),
        }
    }
}

#[test]
fn unit_arrow_is_identity_on_every_fixture() {
    for name in fixture_names() {
        let alg = build_algebra(&fixture(&name), BuildMode::Lenient).unwrap().algebra;
        for x in alg.elements() {
            assert_eq!(alg.arrow(alg.unit(), x), x, "{name}: 1->{}", alg.element_name(x));
        }
    }
}

#[test]
fn non_residuated_star_is_reported_with_pair() {
    let mut doc = fixture("ex2");
    doc.arrow = None;
    // b*bot = top breaks the residual of (b, bot)
    let row = doc.star.iter_mut().find(|r| r.row == "b").unwrap();
    row.entries[0] = "top".into();
    let col = doc.star.iter_mut().find(|r| r.row == "bot").unwrap();
    col.entries[1] = "top".into();
    let (order, star) = order_and_star(&doc).unwrap();
    let err = derive_arrow(&order, &star).unwrap_err();
    assert_eq!(err.pairs[0], (Element::new(1), Element::new(0)));
    assert!(matches!(build_algebra(&doc, BuildMode::Lenient), Err(BuildError::NotResiduated(_))));
}

#[test]
fn integrality_equivalence_on_every_valid_fixture() {
    for name in VALID {
        let alg = strict(name);
        let oracle = Oracle::new(&fixture(name));
        let check = check_integrality_equivalence(&alg);
        assert!(check.equivalence_holds(), "{name}");
        assert_eq!(check.integral, oracle.integral(), "{name}");
        assert_eq!(check.top_is_unit, oracle.top() == oracle.unit, "{name}");
    }
}

#[test]
fn computed_top_is_greatest() {
    for name in VALID {
        let alg = strict(name);
        assert_eq!(alg.top(), alg.arrow(alg.bottom(), alg.bottom()));
        assert!(alg.elements().all(|x| alg.leq(x, alg.top())), "{name}");
        assert!(IDENTITY_LAWS.contains(&Law::TopGreatest));
    }
}

#[test]
fn tables_agree_with_order() {
    for name in VALID {
        let alg = strict(name);
        let o = Oracle::new(&fixture(name));
        for (x, y) in itertools::iproduct!(alg.elements(), alg.elements()) {
            assert_eq!(alg.apply(Operation::Join, x, y).index(), o.join(x.index(), y.index()));
            assert_eq!(alg.apply(Operation::Meet, x, y).index(), o.meet(x.index(), y.index()));
            assert_eq!(alg.leq(x, y), o.leq[x.index()][y.index()]);
        }
    }
}
