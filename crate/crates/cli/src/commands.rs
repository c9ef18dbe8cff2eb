use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use tensym::algebra::check_congruence;
use tensym::duality::complex_algebra_with_upsets;
use tensym::{
    build_corpus, classify, congruences_bruteforce, epsilon_iso, minimal_symmetry_degree,
    parse_model, render_dot, render_model, sigma_iso, tms_subsets, validate_tms_algebra,
    validate_tms_space, verify_theorem_t2, Congruence, DualSpace, Guards, Model, Structure,
    TmsAlgebra, TmsSpace,
};

use crate::output::{
    congruence_json, congruence_text, generic_rows, label, set_text, space_rows, Row,
};
use crate::{Failure, Method, ReportFormat};

pub struct Context {
    pub format: ReportFormat,
    pub guards: Guards,
}

fn load(path: &Path) -> Result<Model, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_model(&text).map_err(|e| match Failure::from(e) {
        Failure::Input(msg) => Failure::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn expect_algebra(model: &Model) -> Result<&TmsAlgebra, Failure> {
    match model.structure() {
        Structure::Algebra(a) => Ok(a),
        Structure::Space(_) => Err(Failure::Input("expected an algebra, found a space".into())),
    }
}

fn expect_space(model: &Model) -> Result<&TmsSpace, Failure> {
    match model.structure() {
        Structure::Space(s) => Ok(s),
        Structure::Algebra(_) => Err(Failure::Input("expected a space, found an algebra".into())),
    }
}

/// Names `F_j` for the prime filter generated by the join-irreducible `j`.
fn point_names(model: &Model, dual: &DualSpace) -> Vec<String> {
    let lattice = match model.structure() {
        Structure::Algebra(a) => a.lattice(),
        Structure::Space(_) => unreachable!("points are named for algebras only"),
    };
    dual.filters
        .iter()
        .map(|f| {
            let generator = f
                .members()
                .find(|&j| f.members().all(|a| lattice.leq(j, a)))
                .expect("a finite prime filter is principal");
            format!("F_{}", model.name(generator))
        })
        .collect()
}

/// Names an up-set by its members joined with `+`, the empty one `empty`.
fn upset_names(model: &Model, upsets: &[tensym::Upset]) -> Vec<String> {
    upsets
        .iter()
        .map(|u| {
            let members: Vec<&str> = u.members().map(|i| model.name(i)).collect();
            if members.is_empty() {
                "empty".to_string()
            } else {
                members.join("+")
            }
        })
        .collect()
}

impl Context {
    fn json(&self) -> bool {
        self.format == ReportFormat::Json
    }

    fn print_json(&self, value: &Value) {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("JSON values serialize")
        );
    }

    fn print_rows(&self, heading: &str, rows: &[Row], extra: Value) {
        if self.json() {
            let mut value = json!({
                "subject": heading,
                "passed": rows.iter().all(Row::passed),
                "checks": rows.iter().map(Row::json).collect::<Vec<_>>(),
            });
            if let (Value::Object(obj), Value::Object(more)) = (&mut value, extra) {
                obj.extend(more);
            }
            self.print_json(&value);
        } else {
            println!("{heading}");
            for row in rows {
                println!("{}", row.text());
            }
        }
    }

    fn verdict(&self, passed: bool) -> Result<(), Failure> {
        if !self.json() {
            println!("result: {}", if passed { "pass" } else { "FAIL" });
        }
        if passed {
            Ok(())
        } else {
            Err(Failure::Check)
        }
    }

    pub fn check(&self, path: &Path) -> Result<(), Failure> {
        let model = load(path)?;
        let names = model.names();
        match model.structure() {
            Structure::Algebra(a) => {
                let report = validate_tms_algebra(a);
                let rows = generic_rows(&report, names);
                let heading = format!("algebra with {} elements, m = {}", a.len(), a.m());
                let mut extra = json!({});
                let mut lines = Vec::new();
                if report.passed() {
                    let c = classify(a)?;
                    let degree = minimal_symmetry_degree(a);
                    let classes: Vec<&str> = [
                        (c.de_morgan, "De Morgan"),
                        (c.kleene, "Kleene"),
                        (c.boolean, "Boolean"),
                        (c.tense_algebra, "tense algebra"),
                    ]
                    .into_iter()
                    .filter_map(|(holds, name)| holds.then_some(name))
                    .collect();
                    let witness =
                        |w: &Option<Vec<usize>>| w.as_ref().map(|w| label(names, &["x", "y"], w));
                    lines.push(format!(
                        "classification: {}",
                        if classes.is_empty() {
                            "none".to_string()
                        } else {
                            classes.join(", ")
                        }
                    ));
                    for (name, w) in [
                        ("De Morgan", &c.de_morgan_witness),
                        ("Kleene", &c.kleene_witness),
                        ("Boolean", &c.boolean_witness),
                    ] {
                        if let Some(w) = witness(w) {
                            let text: Vec<String> =
                                w.iter().map(|(k, v)| format!("{k}={v}")).collect();
                            lines.push(format!("  not {name}: {}", text.join(", ")));
                        }
                    }
                    if let Some(d) = degree {
                        lines.push(format!("minimal degree: {d}"));
                    }
                    extra = json!({
                        "classification": {
                            "de_morgan": c.de_morgan,
                            "kleene": c.kleene,
                            "boolean": c.boolean,
                            "tense_algebra": c.tense_algebra,
                        },
                        "minimal_degree": degree,
                    });
                }
                self.print_rows(&heading, &rows, extra);
                if !self.json() {
                    lines.iter().for_each(|l| println!("{l}"));
                }
                self.verdict(report.passed())
            }
            Structure::Space(s) => {
                let report = validate_tms_space(s);
                let rows = space_rows(&report, names, s.poset());
                let heading = format!("space with {} points, m = {}", s.len(), s.m());
                self.print_rows(&heading, &rows, json!({}));
                self.verdict(report.passed())
            }
        }
    }

    fn emit_model(&self, model: &Model, output: Option<&Path>) -> Result<(), Failure> {
        let text = if self.json() {
            let mut s = serde_json::to_string_pretty(&model.to_document().to_json())
                .expect("JSON values serialize");
            s.push('\n');
            s
        } else {
            render_model(model)
        };
        write_out(output, &text)
    }

    pub fn dual(&self, path: &Path, output: Option<&Path>) -> Result<(), Failure> {
        let model = load(path)?;
        let dual = DualSpace::of(expect_algebra(&model)?)?;
        let names = point_names(&model, &dual);
        let out = Model::new(names, Structure::Space(dual.space))?;
        self.emit_model(&out, output)
    }

    pub fn complex(&self, path: &Path, output: Option<&Path>) -> Result<(), Failure> {
        let model = load(path)?;
        let (algebra, upsets) = complex_algebra_with_upsets(expect_space(&model)?)?;
        let structure = Structure::Algebra(algebra);
        let out = Model::new(upset_names(&model, &upsets), structure.clone())
            .unwrap_or_else(|_| Model::with_default_names(structure));
        self.emit_model(&out, output)
    }

    pub fn roundtrip(&self, path: &Path) -> Result<(), Failure> {
        let model = load(path)?;
        let names = model.names();
        let (heading, rows) = match model.structure() {
            Structure::Algebra(a) => {
                let (_, report) = sigma_iso(a)?;
                ("σ: A → D(X(A))".to_string(), generic_rows(&report, names))
            }
            Structure::Space(s) => {
                let (_, report) = epsilon_iso(s)?;
                ("ε: X → X(D(X))".to_string(), generic_rows(&report, names))
            }
        };
        let passed = rows.iter().all(Row::passed);
        self.print_rows(&heading, &rows, json!({}));
        self.verdict(passed)
    }

    pub fn congruences(&self, path: &Path, method: Method) -> Result<(), Failure> {
        let model = load(path)?;
        let algebra = expect_algebra(&model)?;
        let names = model.names();

        let direct = match method {
            Method::Direct | Method::Both => {
                Some(congruences_bruteforce(algebra, &self.guards)?.congruences)
            }
            Method::Dual => None,
        };
        let dual = match method {
            Method::Dual | Method::Both => {
                let dual = DualSpace::of(algebra)?;
                let points = point_names(&model, &dual);
                let pairs: Vec<(String, Congruence)> = tms_subsets(&dual.space, &self.guards)?
                    .into_iter()
                    .map(|y| (set_text(&points, y.members()), dual.theta(y.mask())))
                    .collect();
                for (_, theta) in &pairs {
                    check_congruence(algebra, theta)?;
                }
                Some(pairs)
            }
            Method::Direct => None,
        };
        let agree = match (&direct, &dual) {
            (Some(d), Some(p)) => {
                let mut a: Vec<&Congruence> = d.iter().collect();
                let mut b: Vec<&Congruence> = p.iter().map(|(_, t)| t).collect();
                a.sort_by_key(|t| t.labels().to_vec());
                b.sort_by_key(|t| t.labels().to_vec());
                Some(a == b)
            }
            _ => None,
        };

        if self.json() {
            let direct_json = direct.as_ref().map(|d| {
                d.iter()
                    .map(|t| congruence_json(names, t))
                    .collect::<Vec<_>>()
            });
            let dual_json = dual.as_ref().map(|p| {
                p.iter()
                    .map(|(y, t)| json!({ "subset": y, "congruence": congruence_json(names, t) }))
                    .collect::<Vec<_>>()
            });
            self.print_json(&json!({
                "direct": direct_json,
                "dual": dual_json,
                "agree": agree,
            }));
        } else {
            if let Some(d) = &direct {
                println!("direct: {} congruences", d.len());
                for t in d {
                    println!("  {}", congruence_text(names, t));
                }
            }
            if let Some(p) = &dual {
                println!("dual: {} tms-subsets", p.len());
                for (y, t) in p {
                    println!("  Θ({y}) = {}", congruence_text(names, t));
                }
            }
            if let Some(agree) = agree {
                println!("routes agree: {}", if agree { "yes" } else { "NO" });
            }
        }
        match agree {
            Some(false) => Err(Failure::Check),
            _ => Ok(()),
        }
    }

    pub fn verify_t2(&self, path: &Path) -> Result<(), Failure> {
        let model = load(path)?;
        let algebra = expect_algebra(&model)?;
        let report = verify_theorem_t2(algebra, &self.guards)?;
        let (c, s) = (report.congruences.len(), report.subsets.len());
        let passed = report.passed();
        let rows = generic_rows(&report.checks, &[]);
        let summary = if passed {
            format!("{c} congruences ↔ {s} tms-subsets, anti-isomorphism verified")
        } else {
            format!("{c} congruences, {s} tms-subsets, correspondence FAILED")
        };
        if self.json() {
            self.print_rows(
                "Y ↦ Θ(Y)",
                &rows,
                json!({ "congruences": c, "tms_subsets": s, "summary": summary }),
            );
        } else {
            if !passed {
                self.print_rows("Y ↦ Θ(Y)", &rows, json!({}));
            }
            println!("{summary}");
        }
        if passed {
            Ok(())
        } else {
            Err(Failure::Check)
        }
    }

    pub fn enumerate(
        &self,
        max_size: usize,
        ms: &[u32],
        out: Option<&Path>,
    ) -> Result<(), Failure> {
        if ms.contains(&0) {
            return Err(Failure::Input("degrees must be at least 1".into()));
        }
        let corpus = build_corpus(max_size, ms)?;
        if let Some(dir) = out {
            fs::create_dir_all(dir)
                .map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
            for entry in &corpus.entries {
                let p = &entry.provenance;
                let stem = format!("p{}-d{}-m{}", p.poset_id, p.decoration_id, p.m);
                let files = [
                    (
                        format!("{stem}.space.mdl"),
                        Model::space(entry.space.clone()),
                    ),
                    (
                        format!("{stem}.algebra.mdl"),
                        Model::algebra(entry.algebra.clone()),
                    ),
                ];
                for (name, model) in files {
                    let path = dir.join(name);
                    fs::write(&path, render_model(&model))
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                }
            }
        }
        let mut counts: BTreeMap<(u32, usize), usize> = BTreeMap::new();
        for e in &corpus.entries {
            *counts.entry((e.provenance.m, e.space.len())).or_default() += 1;
        }
        if self.json() {
            let rows: Vec<Value> = counts
                .iter()
                .map(|(&(m, size), &count)| json!({ "m": m, "points": size, "spaces": count }))
                .collect();
            self.print_json(&json!({ "total": corpus.entries.len(), "counts": rows }));
        } else {
            println!("{} spaces", corpus.entries.len());
            for ((m, size), count) in counts {
                println!("  m = {m}, {size} points: {count}");
            }
        }
        Ok(())
    }

    pub fn dot(&self, path: &Path, output: Option<&Path>) -> Result<(), Failure> {
        let model = load(path)?;
        write_out(output, &render_dot(&model))
    }
}
