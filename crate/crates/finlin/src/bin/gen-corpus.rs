//! Regenerates the bundled corpus/ directory from the standard
//! constructors. Run from the workspace root: `cargo run --bin gen-corpus`.

use finlin::algebra::standard::*;
use finlin::algebra::Algebra;
use finlin::exact::{scalar_to_json, Field, Matrix};
use finlin::hopf::standard::{group_hopf, sweedler, taft};
use finlin::hopf::HopfAlgebra;
use finlin::io::documents::serialize;
use finlin::io::InputDocument;
use finlin::modrep::{Bimodule, LeftModule};
use serde_json::{json, Value};
use std::fs;
use std::path::Path;
use std::sync::Arc;

fn q() -> Field {
    Field::Rationals
}

fn write(path: &str, text: String) {
    let p = Path::new(path);
    fs::create_dir_all(p.parent().unwrap()).unwrap();
    fs::write(p, text + "\n").unwrap();
    println!("wrote {path}");
}

fn actions_json(ms: &[Matrix]) -> Value {
    Value::Array(
        ms.iter()
            .map(|m| {
                Value::Array(
                    (0..m.rows())
                        .map(|i| {
                            Value::Array(
                                (0..m.cols()).map(|j| scalar_to_json(m.at(i, j))).collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Module document referencing its algebra by relative path.
fn module_doc(algebra_ref: &str, m: &LeftModule) -> String {
    let v = json!({
        "kind": "module",
        "label": m.label(),
        "algebra": algebra_ref,
        "dim": m.dim(),
        "left_action": actions_json(m.actions()),
    });
    serde_json::to_string_pretty(&v).unwrap()
}

fn diagram_doc(algebra_ref: &str, objects: &[&str]) -> String {
    let v = json!({
        "kind": "diagram",
        "algebra": algebra_ref,
        "objects": objects,
    });
    serde_json::to_string_pretty(&v).unwrap()
}

fn algebra_file(name: &str, a: Algebra) -> Arc<Algebra> {
    let arc = Arc::new(a);
    write(
        &format!("corpus/algebras/{name}.json"),
        serialize(&InputDocument::Algebra(arc.clone())),
    );
    arc
}

fn hopf_file(name: &str, h: &HopfAlgebra) {
    write(&format!("corpus/hopf/{name}.json"), serialize(&InputDocument::Hopf(h.clone())));
}

fn matrix_unit_module(a: &Arc<Algebra>, n: usize) -> LeftModule {
    let f = a.field();
    let action = (0..n)
        .flat_map(|r| {
            (0..n).map(move |s| {
                Matrix::from_fn(f, n, n, move |i, j| if i == r && j == s { f.one() } else { f.zero() })
            })
        })
        .collect();
    LeftModule::new(a.clone(), n, action, "S").unwrap()
}

fn main() {
    // algebras
    let base = algebra_file("base_field", base_field(q()));
    let m2 = algebra_file("m2q", matrix_algebra(q(), 2));
    let m3 = algebra_file("m3q", matrix_algebra(q(), 3));
    let ut2 = algebra_file("ut2", upper_triangular(q(), 2));
    let _ut3 = algebra_file("ut3", upper_triangular(q(), 3));
    let dual = algebra_file("dual_numbers", truncated_polynomial(q(), 2));
    let poly3 = algebra_file("poly3", truncated_polynomial(q(), 3));
    let _kc2a = algebra_file("kc2", group_algebra(q(), &cyclic_table(2)).unwrap().with_label("kC2"));
    let _kc3a = algebra_file("kc3", group_algebra(q(), &cyclic_table(3)).unwrap().with_label("kC3"));

    // Hopf algebras
    let kc2 = group_hopf(q(), &cyclic_table(2), "kC2").unwrap();
    let kc3 = group_hopf(q(), &cyclic_table(3), "kC3").unwrap();
    let h4 = sweedler(q()).unwrap();
    let t3 = taft(Field::Prime(7), 3, 2, "T3").unwrap();
    hopf_file("kc2", &kc2);
    hopf_file("kc3", &kc3);
    hopf_file("sweedler", &h4);
    hopf_file("taft3_f7", &t3);

    // modules
    let f = q();
    write(
        "corpus/modules/m2q_simple.json",
        module_doc("../algebras/m2q.json", &matrix_unit_module(&m2, 2)),
    );
    write(
        "corpus/modules/m3q_simple.json",
        module_doc("../algebras/m3q.json", &matrix_unit_module(&m3, 3)),
    );
    write(
        "corpus/modules/m2q_regular.json",
        module_doc("../algebras/m2q.json", &LeftModule::regular(m2.clone()).with_label("A")),
    );
    write(
        "corpus/modules/m2q_coregular.json",
        module_doc(
            "../algebras/m2q.json",
            &Bimodule::coregular(m2.clone()).as_left_module().with_label("A^v"),
        ),
    );
    // UT2 projectives: P1 = span{E00}, P2 = span{E01, E11}
    let p1 = LeftModule::new(
        ut2.clone(),
        1,
        vec![Matrix::identity(f, 1), Matrix::zero(f, 1, 1), Matrix::zero(f, 1, 1)],
        "P1",
    )
    .unwrap();
    let e00 = Matrix::from_rows(f, vec![vec![f.one(), f.zero()], vec![f.zero(), f.zero()]]);
    let e01 = Matrix::from_rows(f, vec![vec![f.zero(), f.one()], vec![f.zero(), f.zero()]]);
    let e11 = Matrix::from_rows(f, vec![vec![f.zero(), f.zero()], vec![f.zero(), f.one()]]);
    let p2 = LeftModule::new(ut2.clone(), 2, vec![e00, e01, e11], "P2").unwrap();
    write("corpus/modules/ut2_p1.json", module_doc("../algebras/ut2.json", &p1));
    write("corpus/modules/ut2_p2.json", module_doc("../algebras/ut2.json", &p2));
    // simple quotient of P2: E11 acts by 1, others by 0
    let s2 = LeftModule::new(
        ut2.clone(),
        1,
        vec![Matrix::zero(f, 1, 1), Matrix::zero(f, 1, 1), Matrix::identity(f, 1)],
        "S2",
    )
    .unwrap();
    write("corpus/modules/ut2_s2.json", module_doc("../algebras/ut2.json", &s2));
    // dual numbers / poly3 trivial modules
    let triv_dual = LeftModule::new(
        dual.clone(),
        1,
        vec![Matrix::identity(f, 1), Matrix::zero(f, 1, 1)],
        "k",
    )
    .unwrap();
    write("corpus/modules/dual_numbers_trivial.json", module_doc("../algebras/dual_numbers.json", &triv_dual));
    write(
        "corpus/modules/dual_numbers_regular.json",
        module_doc("../algebras/dual_numbers.json", &LeftModule::regular(dual.clone()).with_label("D2")),
    );
    write(
        "corpus/modules/dual_numbers_coregular.json",
        module_doc(
            "../algebras/dual_numbers.json",
            &Bimodule::coregular(dual.clone()).as_left_module().with_label("D2^v"),
        ),
    );
    let triv_poly3 = LeftModule::new(
        poly3.clone(),
        1,
        vec![Matrix::identity(f, 1), Matrix::zero(f, 1, 1), Matrix::zero(f, 1, 1)],
        "k",
    )
    .unwrap();
    write("corpus/modules/poly3_trivial.json", module_doc("../algebras/poly3.json", &triv_poly3));
    // group-algebra characters
    let sign2 = {
        let chi = Matrix::from_fn(f, 1, 2, |_, i| if i == 0 { f.one() } else { f.from_i64(-1) });
        kc2.character_module(&chi, "sign").unwrap()
    };
    write("corpus/modules/kc2_sign.json", module_doc("../hopf/kc2.json", &sign2));
    write(
        "corpus/modules/kc2_regular.json",
        module_doc("../hopf/kc2.json", &LeftModule::regular(kc2.algebra().clone()).with_label("kC2")),
    );
    // kC3 over Q: trivial and the 2-dimensional simple (x^2 + x + 1 block)
    write("corpus/modules/kc3_trivial.json", module_doc("../hopf/kc3.json", &kc3.trivial_module()));
    let kc3_2dim = {
        // g acts by the companion matrix of x^2 + x + 1
        let g = Matrix::from_rows(f, vec![vec![f.zero(), f.from_i64(-1)], vec![f.one(), f.from_i64(-1)]]);
        let g2 = g.mul(&g).unwrap();
        LeftModule::new(kc3.algebra().clone(), 2, vec![Matrix::identity(f, 2), g, g2], "V2").unwrap()
    };
    write("corpus/modules/kc3_simple2.json", module_doc("../hopf/kc3.json", &kc3_2dim));
    // Sweedler: trivial, sign, regular
    write("corpus/modules/sweedler_trivial.json", module_doc("../hopf/sweedler.json", &h4.trivial_module()));
    let h4_sign = {
        let chi = Matrix::from_fn(f, 1, 4, |_, i| match i {
            0 => f.one(),
            2 => f.from_i64(-1),
            _ => f.zero(),
        });
        h4.character_module(&chi, "sign").unwrap()
    };
    write("corpus/modules/sweedler_sign.json", module_doc("../hopf/sweedler.json", &h4_sign));
    write(
        "corpus/modules/sweedler_regular.json",
        module_doc("../hopf/sweedler.json", &LeftModule::regular(h4.algebra().clone()).with_label("H4")),
    );
    // Taft over F7: the three characters g -> 2^i, x -> 0
    let f7 = Field::Prime(7);
    for (i, pow) in [(0usize, 1i64), (1, 2), (2, 4)] {
        let chi = Matrix::from_fn(f7, 1, 9, |_, c| {
            // basis g^a x^b at a*3+b: character kills x
            if c % 3 == 0 {
                let a = c / 3;
                let mut v = f7.one();
                for _ in 0..a {
                    v = v.mul(&f7.from_i64(pow));
                }
                v
            } else {
                f7.zero()
            }
        });
        let m = t3.character_module(&chi, &format!("chi{i}")).unwrap();
        write(&format!("corpus/modules/taft3_chi{i}.json"), module_doc("../hopf/taft3_f7.json", &m));
    }
    write(
        "corpus/modules/taft3_regular.json",
        module_doc("../hopf/taft3_f7.json", &LeftModule::regular(t3.algebra().clone()).with_label("T3")),
    );
    let _ = base;

    // diagrams for the peterweyl command
    write(
        "corpus/diagrams/m2q_pw.json",
        diagram_doc(
            "../algebras/m2q.json",
            &["../modules/m2q_regular.json", "../modules/m2q_coregular.json", "../modules/m2q_simple.json"],
        ),
    );
    write(
        "corpus/diagrams/dual_numbers_pw.json",
        diagram_doc(
            "../algebras/dual_numbers.json",
            &[
                "../modules/dual_numbers_regular.json",
                "../modules/dual_numbers_coregular.json",
                "../modules/dual_numbers_trivial.json",
            ],
        ),
    );

    // embedding kC2 -> H4: 1 -> 1, g -> g (basis of H4: g^i x^j at i*2+j)
    write(
        "corpus/embeddings/kc2_in_sweedler.json",
        serde_json::to_string_pretty(&json!({
            "matrix": [[1, 0], [0, 0], [0, 1], [0, 0]],
        }))
        .unwrap(),
    );

    // a full verification bundle
    let suite = json!({
        "kind": "suite",
        "name": "full",
        "steps": [
            { "command": "check", "inputs": [
                "../algebras/base_field.json", "../algebras/m2q.json", "../algebras/m3q.json",
                "../algebras/ut2.json", "../algebras/ut3.json", "../algebras/dual_numbers.json",
                "../algebras/poly3.json", "../hopf/kc2.json", "../hopf/kc3.json",
                "../hopf/sweedler.json", "../hopf/taft3_f7.json" ] },
            { "command": "classify", "inputs": ["../algebras/m2q.json"] },
            { "command": "classify", "inputs": ["../algebras/m3q.json"] },
            { "command": "classify", "inputs": ["../algebras/dual_numbers.json"] },
            { "command": "classify", "inputs": ["../algebras/poly3.json"] },
            { "command": "classify", "inputs": ["../hopf/kc2.json"] },
            { "command": "classify", "inputs": ["../hopf/kc3.json"] },
            { "command": "nakayama", "inputs": ["../algebras/ut2.json", "../modules/ut2_p1.json", "../modules/ut2_p2.json"] },
            { "command": "peterweyl", "inputs": ["../diagrams/m2q_pw.json"] },
            { "command": "peterweyl", "inputs": ["../diagrams/dual_numbers_pw.json"] },
            { "command": "radford", "inputs": ["../hopf/sweedler.json", "../modules/sweedler_trivial.json", "../modules/sweedler_sign.json", "../modules/sweedler_regular.json"] },
            { "command": "radford", "inputs": ["../hopf/taft3_f7.json", "../modules/taft3_chi0.json", "../modules/taft3_chi1.json", "../modules/taft3_regular.json"] },
            { "command": "serre", "inputs": ["../hopf/sweedler.json"] },
            { "command": "unimodular", "inputs": ["../hopf/kc2.json"] },
            { "command": "unimodular", "inputs": ["../hopf/sweedler.json"] },
            { "command": "unimodular", "inputs": ["../hopf/taft3_f7.json"] },
            { "command": "restriction", "inputs": [
                "../hopf/kc2.json", "../hopf/sweedler.json", "../embeddings/kc2_in_sweedler.json",
                "../modules/kc2_sign.json", "../modules/kc2_regular.json" ] }
        ]
    });
    write("corpus/suites/full.json", serde_json::to_string_pretty(&suite).unwrap());
}
