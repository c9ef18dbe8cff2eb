//! Text format round trips and DOT golden files.

use std::path::PathBuf;

use proptest::prelude::*;
use tensym::model::{parse_document, Structure};
use tensym::{build_corpus, dual_space, parse_model, render_dot, render_model, samples, Model};

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn corpus_round_trips_through_text() {
    let corpus = build_corpus(3, &[1, 2]).unwrap();
    for e in &corpus.entries {
        for model in [
            Model::space(e.space.clone()),
            Model::algebra(e.algebra.clone()),
        ] {
            let text = render_model(&model);
            assert_eq!(parse_model(&text).unwrap(), model);
            assert_eq!(render_model(&parse_model(&text).unwrap()), text);
        }
    }
}

#[test]
fn dot_matches_golden_files() {
    assert_eq!(render_dot(&Model::algebra(samples::b2())), golden("b2.dot"));
    let k3_dual = Model::space(dual_space(&samples::k3()).unwrap());
    assert_eq!(render_dot(&k3_dual), golden("k3_dual.dot"));
    assert_eq!(
        render_dot(&Model::space(samples::four_cycle_space())),
        golden("four_cycle.dot")
    );
}

#[test]
fn b2_dot_shape() {
    let dot = render_dot(&Model::algebra(samples::b2()));
    assert_eq!(dot.matches("[label=").count(), 2);
    assert_eq!(dot.lines().filter(|l| l.ends_with("n1;")).count(), 1);
    assert_eq!(dot.matches("style=dashed").count(), 2);
}

#[test]
fn layout_is_irrelevant() {
    let one_line = "space { m:1 points: p leq: N/A g: p->p RG: (p,p) RH: (p,p) }";
    let spread = "space {\n m :\n 1\n points : p # only point\n leq:N/A\n g:p->p\n RG:( p , p )\n RH:(p,p)\n}";
    assert_eq!(parse_model(one_line).unwrap(), parse_model(spread).unwrap());
    assert_eq!(
        parse_model(one_line).unwrap().structure(),
        &Structure::Space(samples::point_space())
    );
}

#[test]
fn json_mirrors_the_document() {
    let model = Model::space(samples::four_cycle_space());
    let v = model.to_document().to_json();
    assert_eq!(v["kind"], "space");
    assert_eq!(v["m"], 2);
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
    assert_eq!(v["g"]["p0"], "p1");
    assert_eq!(v["RG"].as_array().unwrap().len(), 16);
    assert_eq!(v["leq"].as_array().unwrap().len(), 0);
}

fn name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_']{0,3}"
}

proptest! {
    #[test]
    fn renamed_samples_round_trip(names in proptest::collection::hash_set(name(), 4)) {
        let names: Vec<String> = names.into_iter().collect();
        let model = Model::new(names, Structure::Algebra(samples::dm4())).unwrap();
        let text = render_model(&model);
        prop_assert_eq!(parse_model(&text).unwrap(), model);
    }

    #[test]
    fn arbitrary_text_never_panics(text in "[ -~\n]{0,80}") {
        let _ = parse_document(&text);
    }
}
