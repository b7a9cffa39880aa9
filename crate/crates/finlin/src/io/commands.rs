//! Command dispatch shared by the CLI binary and the C ABI: each verb
//! parses its documents, runs the corresponding verification suite, and
//! returns a [`Report`]. Input problems surface as errors (exit code 3);
//! failed checks surface as failing report items (exit code 1);
//! exhausted searches as inconclusive (exit code 2).

use super::documents::{matrix_from_value, parse_file, InputDocument, Suite};
use super::report::{hash_file, CheckItem, Report, Witness};
use crate::algebra::AlgebraMorphism;
use crate::error::FinlinError;
use crate::frobenius;
use crate::functor::{
    self, eval_lex, eval_rex, LexRep, RexRep,
};
use crate::hopf::{self, HopfAlgebra};
use crate::limits::{verify_peter_weyl, Weight};
use crate::modrep::{hom_basis, Bimodule, IsoOutcome, LeftModule, SearchConfig};
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub seed: u64,
    pub budget: u64,
    /// For `ew`: read the bimodule as a lex ("lex") or rex ("rex") rep.
    pub rep_kind: String,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, budget: 1_000_000, rep_kind: "lex".into() }
    }
}

impl RunOptions {
    fn search(&self) -> SearchConfig {
        SearchConfig { seed: self.seed, budget: self.budget }
    }
}

fn want_algebra(doc: InputDocument, path: &Path) -> Result<Arc<crate::algebra::Algebra>, FinlinError> {
    match doc {
        InputDocument::Algebra(a) => Ok(a),
        InputDocument::Hopf(h) => Ok(h.algebra().clone()),
        other => Err(FinlinError::Semantic(format!(
            "{}: expected an algebra, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn want_module(doc: InputDocument, path: &Path) -> Result<LeftModule, FinlinError> {
    match doc {
        InputDocument::Module(m) => Ok(m),
        other => Err(FinlinError::Semantic(format!(
            "{}: expected a module, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn want_bimodule(doc: InputDocument, path: &Path) -> Result<Bimodule, FinlinError> {
    match doc {
        InputDocument::Bimodule(b) => Ok(b),
        other => Err(FinlinError::Semantic(format!(
            "{}: expected a bimodule, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn want_hopf(doc: InputDocument, path: &Path) -> Result<HopfAlgebra, FinlinError> {
    match doc {
        InputDocument::Hopf(h) => Ok(h),
        other => Err(FinlinError::Semantic(format!(
            "{}: expected a Hopf algebra, found {}",
            path.display(),
            other.kind()
        ))),
    }
}

fn iso_item<M: crate::modrep::hom::ModuleLike>(
    name: &str,
    out: IsoOutcome<M>,
    witness_of: impl Fn(&crate::modrep::Morphism<M>) -> Witness,
) -> CheckItem {
    match out {
        IsoOutcome::Witnessed { forward, .. } => {
            CheckItem::pass(name, "witnessed").with_witness(witness_of(&forward))
        }
        IsoOutcome::Refuted(why) => CheckItem::fail(name, why),
        IsoOutcome::Inconclusive(why) => CheckItem::inconclusive(name, why),
    }
}

/// Runs one command over input files. Returns the report; input or
/// precondition problems come back as errors.
pub fn run(command: &str, inputs: &[PathBuf], opts: &RunOptions) -> Result<Report, FinlinError> {
    let start = std::time::Instant::now();
    let hashes = inputs.iter().map(|p| hash_file(p)).collect::<Result<Vec<_>, _>>()?;
    let mut report = Report::new(command, hashes, opts.seed);
    match command {
        "check" => cmd_check(inputs, &mut report)?,
        "classify" => cmd_classify(inputs, opts, &mut report)?,
        "nakayama" => cmd_nakayama(inputs, opts, &mut report)?,
        "ew" => cmd_ew(inputs, opts, &mut report)?,
        "peterweyl" => cmd_peterweyl(inputs, &mut report)?,
        "radford" => cmd_radford(inputs, opts, &mut report)?,
        "serre" => cmd_serre(inputs, opts, &mut report)?,
        "unimodular" => cmd_unimodular(inputs, opts, &mut report)?,
        "restriction" => cmd_restriction(inputs, opts, &mut report)?,
        "suite" => cmd_suite(inputs, opts, &mut report)?,
        other => return Err(FinlinError::Precondition(format!("unknown command {other:?}"))),
    }
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

fn cmd_check(inputs: &[PathBuf], report: &mut Report) -> Result<(), FinlinError> {
    if inputs.is_empty() {
        return Err(FinlinError::Precondition("check needs at least one document".into()));
    }
    for path in inputs {
        let doc = parse_file(path)?;
        report.push(CheckItem::pass(
            format!("parse:{}", path.display()),
            format!("kind {}", doc.kind()),
        ));
    }
    Ok(())
}

fn cmd_classify(inputs: &[PathBuf], opts: &RunOptions, report: &mut Report) -> Result<(), FinlinError> {
    let path = inputs.first().ok_or_else(|| FinlinError::Precondition("classify needs an algebra".into()))?;
    let a = want_algebra(parse_file(path)?, path)?;
    let cfg = opts.search();
    let c = frobenius::classify(&a, &cfg)?;
    report.push(CheckItem::pass(
        "classification",
        format!(
            "self_injective={} frobenius={} symmetric={}",
            c.self_injective,
            c.is_frobenius(),
            c.is_symmetric()
        ),
    ));
    for why in &c.inconclusive {
        report.push(CheckItem::inconclusive("search", why.clone()));
    }
    if let Some(form) = &c.frobenius_form {
        report.push(
            CheckItem::pass("frobenius_form", "invertible left-module morphism A -> A^v")
                .with_witness(Witness::from_left_morphism(form)),
        );
        let nu = c.nakayama_automorphism.as_ref().expect("form implies nu");
        let k = frobenius::gram_matrix(&form.matrix);
        let exchange_ok = k.mul(&nu.matrix)? == k.transpose();
        report.push(if exchange_ok {
            CheckItem::pass("nakayama_automorphism", "kappa(a, nu(b)) = kappa(b, a) on all basis pairs")
                .with_witness(Witness::plain(&nu.matrix))
        } else {
            CheckItem::fail("nakayama_automorphism", "Gram exchange identity fails")
        });
        let twist = frobenius::verify_nakayama_twist(&a, &form.matrix, nu)?;
        report.push(
            CheckItem::pass("coregular_is_nu_twist", "A^v = 1_A_nu as bimodules")
                .with_witness(Witness::from_bimodule_morphism(&twist.witness)),
        );
        let inner = frobenius::is_inner(&a, nu, &cfg)?;
        let agree = inner.is_some() == c.is_symmetric();
        report.push(if agree {
            CheckItem::pass("nu_inner_iff_symmetric", format!("nu inner: {}", inner.is_some()))
        } else {
            CheckItem::fail("nu_inner_iff_symmetric", "inner automorphism test disagrees with the bimodule witness")
        });
    }
    if let Some(sym) = &c.symmetric_witness {
        report.push(
            CheckItem::pass("symmetric_witness", "A = A^v as bimodules")
                .with_witness(Witness::from_bimodule_morphism(sym)),
        );
    }
    Ok(())
}

fn cmd_nakayama(inputs: &[PathBuf], opts: &RunOptions, report: &mut Report) -> Result<(), FinlinError> {
    let path = inputs.first().ok_or_else(|| FinlinError::Precondition("nakayama needs an algebra".into()))?;
    let a = want_algebra(parse_file(path)?, path)?;
    let (pitilde, pihat) = functor::nakayama_reps(&a);
    report.push(
        CheckItem::pass("pitilde_bimodule", format!("A^v as {}-{} bimodule, dim {}", a.label(), a.label(), a.dim()))
            .with_witness(Witness::from_bimodule_morphism(&crate::modrep::Morphism::identity(
                pitilde.bimodule().clone(),
            ))),
    );
    report.push(
        CheckItem::pass("pihat_bimodule", format!("Hom(A^v, -) defining bimodule, dim {}", a.dim()))
            .with_witness(Witness::from_bimodule_morphism(&crate::modrep::Morphism::identity(
                pihat.bimodule().clone(),
            ))),
    );
    let mut modules: Vec<LeftModule> = Vec::new();
    for p in &inputs[1..] {
        modules.push(want_module(parse_file(p)?, p)?);
    }
    if modules.is_empty() {
        modules.push(LeftModule::regular(a.clone()));
    }
    for m in &modules {
        let t = eval_rex(&pitilde, m)?;
        let h = eval_lex(&pihat, m)?;
        report.push(CheckItem::pass(
            format!("evaluate:{}", m.label()),
            format!("pitilde dim {}, pihat dim {}", t.module.dim(), h.module.dim()),
        ));
    }
    // adjunction dimensions on all pairs of the supplied modules
    let cfg = opts.search();
    let _ = cfg;
    for x in &modules {
        for y in &modules {
            let tx = eval_rex(&pitilde, x)?;
            let hy = eval_lex(&pihat, y)?;
            let lhs = hom_basis(&tx.module, y)?.dim();
            let rhs = hom_basis(x, &hy.module)?.dim();
            let name = format!("adjunction:{}->{}", x.label(), y.label());
            report.push(if lhs == rhs {
                CheckItem::pass(name, format!("dim Hom(pitilde x, y) = dim Hom(x, pihat y) = {lhs}"))
            } else {
                CheckItem::fail(name, format!("{lhs} != {rhs}"))
            });
        }
    }
    Ok(())
}

fn cmd_ew(inputs: &[PathBuf], opts: &RunOptions, report: &mut Report) -> Result<(), FinlinError> {
    let path = inputs.first().ok_or_else(|| FinlinError::Precondition("ew needs a bimodule".into()))?;
    let bim = want_bimodule(parse_file(path)?, path)?;
    let cfg = opts.search();
    match opts.rep_kind.as_str() {
        "lex" => {
            let f = LexRep::new(bim.clone());
            let round = functor::translate_rex_to_lex(&functor::translate_lex_to_rex(&f));
            report.push(entrywise_item("translate_round_trip", round.bimodule(), f.bimodule()));
            let back = functor::right_adjoint(&functor::left_adjoint(&f));
            report.push(entrywise_item("adjoint_round_trip", back.bimodule(), f.bimodule()));
        }
        "rex" => {
            let g = RexRep::new(bim.clone());
            let round = functor::translate_lex_to_rex(&functor::translate_rex_to_lex(&g));
            report.push(entrywise_item("translate_round_trip", round.bimodule(), g.bimodule()));
            let back = functor::left_adjoint(&functor::right_adjoint(&g));
            report.push(entrywise_item("adjoint_round_trip", back.bimodule(), g.bimodule()));
        }
        other => return Err(FinlinError::Precondition(format!("unknown rep kind {other:?}"))),
    }
    // on a square bimodule's algebra, the translate of the identity lex rep
    // is the Nakayama rex rep, entrywise
    if crate::algebra::same_algebra(bim.left_algebra(), bim.right_algebra()) {
        let a = bim.left_algebra().clone();
        let nak = functor::translate_lex_to_rex(&LexRep::identity(a.clone()));
        report.push(entrywise_item(
            "translate_identity_is_nakayama",
            nak.bimodule(),
            RexRep::nakayama(a).bimodule(),
        ));
    }
    // composition with a second rep when given
    if let Some(second) = inputs.get(1) {
        let bim2 = want_bimodule(parse_file(second)?, second)?;
        match opts.rep_kind.as_str() {
            "lex" => {
                let inner = LexRep::new(bim.clone());
                let outer = LexRep::new(bim2);
                let comp = functor::compose_lex(&outer, &inner)?;
                let x = LeftModule::regular(inner.source().clone());
                let e1 = eval_lex(&inner, &x)?;
                let e2 = eval_lex(&outer, &e1.module)?;
                let ec = eval_lex(&comp, &x)?;
                let out = crate::modrep::module_iso(&e2.module, &ec.module, &cfg)?;
                report.push(iso_item("composition_pointwise", out, Witness::from_left_morphism));
            }
            _ => {
                let inner = RexRep::new(bim.clone());
                let outer = RexRep::new(bim2);
                let comp = functor::compose_rex(&outer, &inner)?;
                let x = LeftModule::regular(inner.source().clone());
                let e1 = eval_rex(&inner, &x)?;
                let e2 = eval_rex(&outer, &e1.module)?;
                let ec = eval_rex(&comp, &x)?;
                let out = crate::modrep::module_iso(&e2.module, &ec.module, &cfg)?;
                report.push(iso_item("composition_pointwise", out, Witness::from_left_morphism));
            }
        }
    }
    Ok(())
}

fn entrywise_item(name: &str, got: &Bimodule, want: &Bimodule) -> CheckItem {
    if got.left_actions() == want.left_actions() && got.right_actions() == want.right_actions() {
        CheckItem::pass(name, "entrywise equal")
    } else {
        CheckItem::fail(name, "bimodules differ entrywise")
    }
}

fn cmd_peterweyl(inputs: &[PathBuf], report: &mut Report) -> Result<(), FinlinError> {
    let path = inputs.first().ok_or_else(|| FinlinError::Precondition("peterweyl needs a diagram".into()))?;
    let d = match parse_file(path)? {
        InputDocument::Diagram(d) => d,
        other => {
            return Err(FinlinError::Semantic(format!(
                "{}: expected a diagram, found {}",
                path.display(),
                other.kind()
            )))
        }
    };
    let weight = match inputs.get(1) {
        Some(p) => Weight::Rex(RexRep::new(want_bimodule(parse_file(p)?, p)?)),
        None => Weight::Identity,
    };
    let r = verify_peter_weyl(&weight, &d)?;
    report.push(if r.end_ok {
        let mut item = CheckItem::pass("end_is_ga", r.detail.clone());
        if let Some(w) = &r.end_witness {
            item = item.with_witness(Witness::from_bimodule_morphism(w));
        }
        item
    } else {
        CheckItem::fail("end_is_ga", r.detail.clone())
    });
    report.push(if r.coend_ok {
        let mut item = CheckItem::pass("coend_is_ga_dual", r.detail.clone());
        if let Some(w) = &r.coend_witness {
            item = item.with_witness(Witness::from_bimodule_morphism(w));
        }
        item
    } else {
        CheckItem::fail("coend_is_ga_dual", r.detail)
    });
    report.push(if r.dinaturality_ok {
        CheckItem::pass("dinaturality", "all hom-basis morphisms")
    } else {
        CheckItem::fail("dinaturality", "a dinaturality square fails")
    });
    Ok(())
}

fn hopf_test_modules(h: &HopfAlgebra, paths: &[PathBuf]) -> Result<Vec<LeftModule>, FinlinError> {
    let mut out = Vec::new();
    for p in paths {
        out.push(want_module(parse_file(p)?, p)?);
    }
    if out.is_empty() {
        out.push(h.trivial_module());
        out.push(LeftModule::regular(h.algebra().clone()));
    }
    Ok(out)
}

fn cmd_radford(inputs: &[PathBuf], opts: &RunOptions, report: &mut Report) -> Result<(), FinlinError> {
    let path = inputs.first().ok_or_else(|| FinlinError::Precondition("radford needs a Hopf algebra".into()))?;
    let h = want_hopf(parse_file(path)?, path)?;
    let mods = hopf_test_modules(&h, &inputs[1..])?;
    let md = hopf::modular_data(&h)?;
    report.push(CheckItem::pass(
        "integrals",
        "left integral in H and right integral functional on H are one-dimensional",
    ).with_witness(Witness::plain(&md.left_integral)));
    let dist = hopf::distinguished_object(&h)?;
    report.push(CheckItem::pass(
        "d_orientation",
        format!(
            "pihat(1) character matches alpha: {}, alpha^-1: {}",
            dist.matches_alpha, dist.matches_alpha_inverse
        ),
    ));
    let r = hopf::radford_check(&h, &mods, &opts.search())?;
    report.push(if r.hopf_level_ok {
        CheckItem::pass("s4_formula", "S^4 = g (alpha -> x <- alpha^-1) g^-1 on all basis elements")
    } else {
        CheckItem::fail("s4_formula", format!("fails at basis indices {:?}", r.hopf_failures))
    });
    for (label, out) in r.categorical {
        report.push(iso_item(&format!("quadruple_dual:{label}"), out, Witness::from_left_morphism));
    }
    Ok(())
}

fn cmd_serre(inputs: &[PathBuf], opts: &RunOptions, report: &mut Report) -> Result<(), FinlinError> {
    let path = inputs.first().ok_or_else(|| FinlinError::Precondition("serre needs a Hopf algebra".into()))?;
    let h = want_hopf(parse_file(path)?, path)?;
    let mods = hopf_test_modules(&h, &inputs[1..])?;
    let r = hopf::nakayama_vs_serre_check(&h, &mods, &opts.search())?;
    report.push(if r.d_inverse_ok {
        CheckItem::pass("d_inverse", "D (x) vv^Dt is the trivial module")
    } else {
        CheckItem::fail("d_inverse", "D (x) vv^Dt is not trivial")
    });
    for (label, out) in r.pihat_items {
        report.push(iso_item(&format!("pihat_vs_serre:{label}"), out, Witness::from_left_morphism));
    }
    for (label, out) in r.pitilde_items {
        report.push(iso_item(&format!("pitilde_vs_serre:{label}"), out, Witness::from_left_morphism));
    }
    Ok(())
}

fn cmd_unimodular(inputs: &[PathBuf], opts: &RunOptions, report: &mut Report) -> Result<(), FinlinError> {
    let path = inputs.first().ok_or_else(|| FinlinError::Precondition("unimodular needs a Hopf algebra".into()))?;
    let h = want_hopf(parse_file(path)?, path)?;
    let r = hopf::unimodular_frobenius_report(&h, &opts.search())?;
    report.push(CheckItem::pass("unimodular", format!("{}", r.unimodular)));
    report.push(CheckItem::pass("s2_inner", format!("{}", r.s2_inner.is_some())));
    for why in &r.inconclusive {
        report.push(CheckItem::inconclusive("search", why.clone()));
    }
    report.push(if r.consistent() {
        CheckItem::pass(
            "predicted_equals_detected",
            format!("symmetric Frobenius: {}", r.detected_symmetric),
        )
    } else {
        CheckItem::fail(
            "predicted_equals_detected",
            format!("predicted {} but detected {}", r.predicted_symmetric, r.detected_symmetric),
        )
    });
    Ok(())
}

fn cmd_restriction(inputs: &[PathBuf], opts: &RunOptions, report: &mut Report) -> Result<(), FinlinError> {
    if inputs.len() < 3 {
        return Err(FinlinError::Precondition(
            "restriction needs: sub-Hopf, Hopf, embedding matrix file, then optional modules".into(),
        ));
    }
    let sub = want_hopf(parse_file(&inputs[0])?, &inputs[0])?;
    let big = want_hopf(parse_file(&inputs[1])?, &inputs[1])?;
    let emb_text = std::fs::read_to_string(&inputs[2])?;
    let emb_v: Value = serde_json::from_str(&emb_text)
        .map_err(|e| FinlinError::Syntax(format!("embedding: {e}")))?;
    let m = matrix_from_value(
        &big.field(),
        emb_v
            .get("matrix")
            .ok_or_else(|| FinlinError::Syntax("embedding file needs a \"matrix\" field".into()))?,
    )?;
    let embedding = AlgebraMorphism::new(sub.algebra().clone(), big.algebra().clone(), m)?;
    let mods = hopf_test_modules(&sub, &inputs[3..])?;
    let r = hopf::restriction_adjoint_check(&sub, &big, &embedding, &mods, &opts.search())?;
    for (label, out) in r.items {
        report.push(iso_item(
            &format!("coinduction_vs_induction:{label}"),
            out,
            Witness::from_left_morphism,
        ));
    }
    Ok(())
}

fn cmd_suite(inputs: &[PathBuf], opts: &RunOptions, report: &mut Report) -> Result<(), FinlinError> {
    let path = inputs.first().ok_or_else(|| FinlinError::Precondition("suite needs a suite document".into()))?;
    let suite: Suite = match parse_file(path)? {
        InputDocument::Suite(s) => s,
        other => {
            return Err(FinlinError::Semantic(format!(
                "{}: expected a suite, found {}",
                path.display(),
                other.kind()
            )))
        }
    };
    for (i, step) in suite.steps.iter().enumerate() {
        let mut step_opts = opts.clone();
        if let Some(seed) = step.flags.get("seed").and_then(Value::as_u64) {
            step_opts.seed = seed;
        }
        if let Some(budget) = step.flags.get("budget").and_then(Value::as_u64) {
            step_opts.budget = budget;
        }
        if let Some(kind) = step.flags.get("as").and_then(Value::as_str) {
            step_opts.rep_kind = kind.to_string();
        }
        let sub = run(&step.command, &step.inputs, &step_opts)?;
        for mut item in sub.items {
            item.name = format!("{}[{}].{}.{}", suite.name, i, step.command, item.name);
            report.push(item);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::documents::{serialize, InputDocument};
    use std::io::Write;

    fn write_doc(dir: &Path, name: &str, doc: &InputDocument) -> PathBuf {
        let path = dir.join(name);
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(serialize(doc).as_bytes()).unwrap();
        path
    }

    #[test]
    fn classify_m2_passes() {
        let dir = std::env::temp_dir().join("finlin_cmd_test");
        std::fs::create_dir_all(&dir).unwrap();
        let a = Arc::new(crate::algebra::standard::matrix_algebra(
            crate::exact::Field::Rationals,
            2,
        ));
        let p = write_doc(&dir, "m2.json", &InputDocument::Algebra(a));
        let report = run("classify", &[p], &RunOptions::default()).unwrap();
        assert_eq!(report.verdict(), super::super::report::Verdict::Pass);
        assert!(report.items.iter().any(|i| i.name == "symmetric_witness"));
        // determinism: identical run gives identical JSON modulo timing
        let r2 = run("classify", &[dir.join("m2.json")], &RunOptions::default()).unwrap();
        let mut j1 = report.to_json(false);
        let mut j2 = r2.to_json(false);
        j1.as_object_mut().unwrap().insert("timing_ms".into(), serde_json::json!(0));
        j2.as_object_mut().unwrap().insert("timing_ms".into(), serde_json::json!(0));
        assert_eq!(j1, j2);
        // witnesses re-verify after a serialization round trip
        assert!(super::super::report::Report::reverify_json(&j1).unwrap());
    }

    #[test]
    fn check_rejects_corrupt_file() {
        let dir = std::env::temp_dir().join("finlin_cmd_test2");
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("bad.json");
        std::fs::write(&p, "{ this is not json").unwrap();
        let err = run("check", &[p], &RunOptions::default());
        assert!(err.is_err());
    }
}
