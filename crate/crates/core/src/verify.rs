//! The batch report behind `predmodal verify-lemmas`.
//!
//! Each check re-derives one finite fact about the chain and ring logics
//! and records pass or fail with a witness. Checks run on separate threads
//! and are reported in name order. The report is JSON lines (one header,
//! one record per check) followed by a one-line summary. Wall-clock times
//! appear only when asked for; without them, equal configurations give
//! byte-identical reports.

use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::document::ModelDocument;
use crate::efgames::{
    chain_parity_witness, duplicator_wins, frame_structure, smallest_distinguishing_rank, EfError,
};
use crate::frames::{
    chain_frame, even_indices, marked_chain_frame, mk_c0star_axiom, mk_c0star_phi1, ring_frame,
    structural_characterization, truncate_depth,
};
use crate::gen;
use crate::kripke::{
    eval_fol, eval_modal, model_to_structure, Assignment, ClassicalStructure, Frame, KripkeModel,
    WORLD_TAG,
};
use crate::syntax::{
    mk_alpha, mk_alt2, mk_beta, mk_delta, mk_epsilon, mk_gamma, FormulaFamily, ModalFormula,
};
use crate::translate::{embed, standard_translation, Logic};
use crate::validity::{
    frame_validity, frame_validity_at, in_logic, Refutation, SearchBounds, ValidityError,
};

/// Sizes and seed of a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    /// `¬α_n` is checked for `n = 1..=alpha_max`.
    pub alpha_max: usize,
    /// `¬β_n` is checked for `n = 2..=beta_max`.
    pub beta_max: usize,
    /// Rings (and chains, for `alt₂`) with at most this many worlds.
    pub ring_max_worlds: usize,
    /// Largest `k` in `δᵏ_n`.
    pub delta_k_max: usize,
    /// Largest `n` in `δᵏ_n` and `ε_n`.
    pub family_n_max: usize,
    pub random_frames: usize,
    pub random_frame_worlds: usize,
    pub random_models: usize,
    pub truncation_models: usize,
    pub random_refutable: usize,
    /// Rings of size `2ⁿ` and `2ⁿ + 1` for `n = 1..=ef_max_n`.
    pub ef_max_n: usize,
    pub chain_parity_max_n: usize,
    pub seed: u64,
    /// Record wall-clock milliseconds per check.
    #[serde(skip)]
    pub timings: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            alpha_max: 6,
            beta_max: 6,
            ring_max_worlds: 9,
            delta_k_max: 3,
            family_n_max: 4,
            random_frames: 200,
            random_frame_worlds: 7,
            random_models: 1000,
            truncation_models: 500,
            random_refutable: 20,
            ef_max_n: 3,
            chain_parity_max_n: 2,
            seed: 20240611,
            timings: false,
        }
    }
}

impl VerifyConfig {
    /// Hex SHA-256 of the canonical JSON of the configuration.
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_string(self).expect("plain data serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl CheckResult {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        CheckResult {
            name,
            status: Status::Pass,
            detail: detail.into(),
            witness: None,
            millis: None,
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>, witness: Value) -> Self {
        CheckResult {
            name,
            status: Status::Fail,
            detail: detail.into(),
            witness: Some(witness),
            millis: None,
        }
    }

    fn skipped(name: &'static str, reason: impl Into<String>) -> Self {
        CheckResult {
            name,
            status: Status::Skipped,
            detail: reason.into(),
            witness: None,
            millis: None,
        }
    }

    fn budget(name: &'static str, detail: impl Into<String>) -> Self {
        CheckResult {
            name,
            status: Status::Budget,
            detail: detail.into(),
            witness: None,
            millis: None,
        }
    }
}

/// Failure modes of a check body that are not plain falsehoods.
enum Abort {
    Budget(String),
    Error(String),
}

impl From<ValidityError> for Abort {
    fn from(e: ValidityError) -> Self {
        match e {
            ValidityError::BudgetExceeded { .. } => Abort::Budget(e.to_string()),
            other => Abort::Error(other.to_string()),
        }
    }
}

impl From<EfError> for Abort {
    fn from(e: EfError) -> Self {
        match e {
            EfError::BudgetExceeded { .. } => Abort::Budget(e.to_string()),
            other => Abort::Error(other.to_string()),
        }
    }
}

macro_rules! abort_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Abort {
            fn from(e: $t) -> Self {
                Abort::Error(e.to_string())
            }
        }
    )*};
}

abort_from!(
    crate::frames::FrameError,
    crate::kripke::ModelError,
    crate::syntax::FamilyError,
    crate::translate::TranslateError
);

type Outcome = Result<CheckResult, Abort>;

/// A finished run.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub config: VerifyConfig,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// JSON lines plus the summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let header = json!({
            "record": "header",
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "config": self.config,
        });
        writeln!(out, "{header}").expect("string write");
        for c in &self.checks {
            let mut line = serde_json::to_value(c).expect("plain data serializes");
            line["record"] = json!("check");
            writeln!(out, "{line}").expect("string write");
        }
        writeln!(
            out,
            "summary: {} checks, {} passed, {} failed, {} skipped, {} over budget",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped),
            self.count(Status::Budget)
        )
        .expect("string write");
        out
    }
}

type CheckFn = fn(&VerifyConfig) -> Outcome;

const CHECKS: [(&str, CheckFn); 11] = [
    ("alpha-parity", alpha_parity),
    ("alt2-in-L0", alt2_in_l0),
    ("beta-parity", beta_parity),
    ("c0star-axiom", c0star_axiom),
    ("ef-chain-parity", ef_chain_parity),
    ("ef-ring-indistinguishability", ef_ring_indistinguishability),
    (
        "embedding-refutation-transport",
        embedding_refutation_transport,
    ),
    ("ring-logic-memberships", ring_logic_memberships),
    (
        "standard-translation-correspondence",
        standard_translation_correspondence,
    ),
    ("structural-characterizations", structural_characterizations),
    ("truncation-surgery", truncation_surgery),
];

/// Names of all checks, in report order.
pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|(n, _)| *n)
}

/// Runs one check by name.
pub fn run_check(name: &str, config: &VerifyConfig) -> Option<CheckResult> {
    let &(name, body) = CHECKS.iter().find(|(n, _)| *n == name)?;
    Some(timed(name, body, config))
}

fn timed(name: &'static str, body: CheckFn, config: &VerifyConfig) -> CheckResult {
    let start = Instant::now();
    let mut result = match body(config) {
        Ok(r) => r,
        Err(Abort::Budget(msg)) => CheckResult::budget(name, msg),
        Err(Abort::Error(msg)) => CheckResult::fail(name, format!("error: {msg}"), Value::Null),
    };
    if config.timings {
        result.millis = Some(start.elapsed().as_millis() as u64);
    }
    result
}

/// Runs every check, concurrently, and collects them in name order.
pub fn verify_lemmas(command: impl Into<String>, config: &VerifyConfig) -> Report {
    let mut checks: Vec<CheckResult> = std::thread::scope(|s| {
        let handles: Vec<_> = CHECKS
            .iter()
            .map(|&(name, body)| s.spawn(move || timed(name, body, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    });
    checks.sort_by_key(|c| c.name);
    Report {
        command: command.into(),
        inputs_digest: config.digest(),
        config: config.clone(),
        checks,
    }
}

fn model_json(m: &KripkeModel) -> Value {
    serde_json::to_value(ModelDocument::from_model(m)).expect("plain data serializes")
}

fn refutation_json(r: &Refutation) -> Value {
    json!({
        "logic": r.logic.to_string(),
        "frame_index": r.frame_index,
        "world": r.world_name(),
        "model": model_json(&r.model),
    })
}

/// Shared body of the two parity checks: `¬φ_n` belongs to the logic iff
/// `n` has the stated parity, and refutations sit at the stated frame and
/// world `w1`.
fn parity(
    name: &'static str,
    logic: Logic,
    ns: std::ops::RangeInclusive<usize>,
    member_when_even: bool,
    make: fn(usize) -> Result<ModalFormula, crate::syntax::FamilyError>,
    refuting_index: fn(usize) -> usize,
) -> Outcome {
    let mut seen = Vec::new();
    for n in ns {
        let phi = ModalFormula::not(make(n)?);
        let md = phi.modal_depth();
        let bounds = SearchBounds::for_formula(&phi)?.with_frame_index((md + 3).max(8));
        let verdict = in_logic(logic, &phi, &bounds)?;
        let expect_member = (n % 2 == 0) == member_when_even;
        match verdict.refutation() {
            None if expect_member => seen.push(format!("{n}:member")),
            Some(r)
                if !expect_member
                    && r.frame_index == refuting_index(n)
                    && r.world_name() == "w1" =>
            {
                seen.push(format!("{n}:refuted@{}", r.frame_index))
            }
            None => {
                return Ok(CheckResult::fail(
                    name,
                    format!(
                        "n={n}: expected a countermodel, none up to frame index {}",
                        bounds.max_frame_index
                    ),
                    json!({ "n": n, "bounds": bounds.max_frame_index }),
                ))
            }
            Some(r) => {
                return Ok(CheckResult::fail(
                    name,
                    format!(
                        "n={n}: unexpected refutation at index {} world {}",
                        r.frame_index,
                        r.world_name()
                    ),
                    refutation_json(r),
                ))
            }
        }
    }
    Ok(CheckResult::pass(name, seen.join(" ")))
}

fn alpha_parity(c: &VerifyConfig) -> Outcome {
    parity(
        "alpha-parity",
        Logic::L0,
        1..=c.alpha_max,
        true,
        mk_alpha,
        |n| n + 1,
    )
}

fn beta_parity(c: &VerifyConfig) -> Outcome {
    if c.beta_max < 2 {
        return Ok(CheckResult::skipped(
            "beta-parity",
            format!("beta_max = {} leaves no n >= 2", c.beta_max),
        ));
    }
    parity(
        "beta-parity",
        Logic::L1,
        2..=c.beta_max,
        false,
        mk_beta,
        |n| n,
    )
}

/// Frame validity of each formula on each frame; the first failure is the
/// witness.
fn all_valid(
    name: &'static str,
    frames: &[(String, Frame)],
    formulas: &[(String, ModalFormula)],
) -> Outcome {
    for (fname, f) in frames {
        for (pname, phi) in formulas {
            if !frame_validity(f, phi, 1)? {
                let w = (0..f.len())
                    .find(|&w| !frame_validity_at(f, w, phi, 1).unwrap_or(true))
                    .map(|w| f.name(w).to_string());
                return Ok(CheckResult::fail(
                    name,
                    format!("{pname} is not valid on {fname}"),
                    json!({ "frame": fname, "formula": pname, "world": w }),
                ));
            }
        }
    }
    Ok(CheckResult::pass(
        name,
        format!(
            "{} formulas valid on {} frames",
            formulas.len(),
            frames.len()
        ),
    ))
}

fn alt2_in_l0(c: &VerifyConfig) -> Outcome {
    let frames = even_indices(c.ring_max_worlds.saturating_sub(1))
        .map(|m| Ok((format!("F{m}"), chain_frame(m)?)))
        .collect::<Result<Vec<_>, Abort>>()?;
    all_valid("alt2-in-L0", &frames, &[("alt2".to_string(), mk_alt2())])
}

fn ring_logic_memberships(c: &VerifyConfig) -> Outcome {
    let frames = even_indices(c.ring_max_worlds.saturating_sub(1))
        .map(|m| Ok((format!("G{m}"), ring_frame(m)?)))
        .collect::<Result<Vec<_>, Abort>>()?;
    let mut formulas = vec![
        ("alt2".to_string(), mk_alt2()),
        ("gamma".to_string(), mk_gamma()),
    ];
    for n in 2..=c.family_n_max {
        for k in 0..=c.delta_k_max {
            formulas.push((FormulaFamily::Delta { k, n }.to_string(), mk_delta(k, n)?));
        }
        formulas.push((FormulaFamily::Epsilon(n).to_string(), mk_epsilon(n)?));
    }
    all_valid("ring-logic-memberships", &frames, &formulas)
}

fn families() -> Vec<FormulaFamily> {
    let mut out = vec![
        FormulaFamily::Gamma,
        FormulaFamily::Alt2,
        FormulaFamily::Zeta,
    ];
    out.extend((1..=4).map(FormulaFamily::Alpha));
    out.extend((2..=4).map(FormulaFamily::Beta));
    out.extend((2..=3).map(FormulaFamily::Epsilon));
    for n in 2..=3 {
        out.extend((0..=2).map(|k| FormulaFamily::Delta { k, n }));
    }
    out
}

fn family_frames() -> Result<Vec<Frame>, Abort> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(chain_frame(n)?);
    }
    for n in 2..=6 {
        out.push(ring_frame(n)?);
    }
    for k in 1..=3 {
        out.push(marked_chain_frame(k)?);
    }
    Ok(out)
}

fn structural_characterizations(c: &VerifyConfig) -> Outcome {
    const NAME: &str = "structural-characterizations";
    let mut rng = gen::rng(c.seed);
    let mut frames = family_frames()?;
    let fixed = frames.len();
    for _ in 0..c.random_frames {
        let p = rng.gen_range(0.15..0.45);
        frames.push(gen::random_frame(&mut rng, c.random_frame_worlds, p));
    }
    let fams = families();
    let mut comparisons = 0usize;
    for f in &frames {
        for &fam in &fams {
            let phi = fam.formula()?;
            for w in 0..f.len() {
                let structural = structural_characterization(f, w, fam)?;
                let brute = frame_validity_at(f, w, &phi, 1)?;
                comparisons += 1;
                if structural != brute {
                    return Ok(CheckResult::fail(
                        NAME,
                        format!(
                            "{fam} at {}: structural {structural}, brute force {brute}",
                            f.name(w)
                        ),
                        json!({
                            "family": fam.to_string(),
                            "world": f.name(w),
                            "frame": serde_json::to_value(ModelDocument::from_frame(f)).expect("plain data"),
                        }),
                    ));
                }
            }
        }
    }
    Ok(CheckResult::pass(
        NAME,
        format!(
            "{comparisons} (frame, world, formula) comparisons over {fixed} family and {} random frames",
            c.random_frames
        ),
    ))
}

fn random_small_model(rng: &mut gen::GenRng, worlds: usize, domain: usize) -> KripkeModel {
    let f = gen::random_frame(rng, worlds, 0.4);
    let pf = gen::random_pframe(rng, f, domain);
    let sig = gen::random_signature(rng, 2, 2);
    gen::random_model(rng, pf, sig, 0.5)
}

fn standard_translation_correspondence(c: &VerifyConfig) -> Outcome {
    const NAME: &str = "standard-translation-correspondence";
    let mut rng = gen::rng(c.seed.wrapping_add(1));
    let mut evaluations = 0usize;
    for _ in 0..c.random_models {
        let m = random_small_model(&mut rng, 4, 3);
        let size = rng.gen_range(1..=8);
        let phi = gen::random_formula(&mut rng, m.signature(), 3, size);
        let st = standard_translation(&phi, "x")?;
        let a = model_to_structure(&m);
        for w in 0..m.frame().len() {
            let modal = eval_modal(&m, w, &Assignment::new(), &phi)?;
            let g = Assignment::new().with("x", format!("{WORLD_TAG}{}", m.frame().name(w)));
            let classical = eval_fol(&a, &g, &st)?;
            evaluations += 1;
            if modal != classical {
                return Ok(CheckResult::fail(
                    NAME,
                    format!(
                        "{phi} at {}: modal {modal}, translated {classical}",
                        m.frame().name(w)
                    ),
                    json!({ "formula": phi.to_string(), "world": m.frame().name(w), "model": model_json(&m) }),
                ));
            }
        }
    }
    Ok(CheckResult::pass(
        NAME,
        format!(
            "{} models, {evaluations} world evaluations agree",
            c.random_models
        ),
    ))
}

/// Lifts the countermodel into the union frame and evaluates the embedded
/// sentence on its structure; `Some` carries a failure description.
fn transport(logic: Logic, phi: &ModalFormula) -> Result<Option<(String, Value)>, Abort> {
    let bounds = SearchBounds::for_formula(phi)?;
    let verdict = in_logic(logic, phi, &bounds)?;
    let Some(r) = verdict.refutation() else {
        return Ok(Some((
            format!("{phi}: no countermodel in {logic}"),
            json!({ "formula": phi.to_string() }),
        )));
    };
    let lifted = r.embedding_model(phi)?;
    let sentence = embed(logic, phi)?;
    if eval_fol(&model_to_structure(&lifted), &Assignment::new(), &sentence)? {
        return Ok(Some((
            format!("{phi}: lifted countermodel satisfies the embedding"),
            refutation_json(r),
        )));
    }
    Ok(None)
}

fn embedding_refutation_transport(c: &VerifyConfig) -> Outcome {
    const NAME: &str = "embedding-refutation-transport";
    let mut cases = vec![
        (Logic::L0, ModalFormula::not(mk_alpha(3)?)),
        (Logic::L1, ModalFormula::not(mk_beta(4)?)),
    ];
    let mut rng = gen::rng(c.seed.wrapping_add(2));
    let mut found = 0;
    let mut attempts = 0;
    while found < c.random_refutable && attempts < 200 * c.random_refutable.max(1) {
        attempts += 1;
        let logic = if attempts % 2 == 0 {
            Logic::L0
        } else {
            Logic::L1
        };
        let size = rng.gen_range(2..=7);
        let phi = gen::random_prop_formula(&mut rng, &["p", "q"], 2, size);
        if in_logic(logic, &phi, &SearchBounds::for_formula(&phi)?)?.is_refuted() {
            cases.push((logic, phi));
            found += 1;
        }
    }
    if found < c.random_refutable {
        return Ok(CheckResult::fail(
            NAME,
            format!("only {found} refutable random formulas in {attempts} attempts"),
            json!({ "found": found }),
        ));
    }
    for (logic, phi) in &cases {
        if let Some((detail, witness)) = transport(*logic, phi)? {
            return Ok(CheckResult::fail(NAME, detail, witness));
        }
    }
    Ok(CheckResult::pass(
        NAME,
        format!(
            "{} countermodels falsify their embedded sentences",
            cases.len()
        ),
    ))
}

fn truncation_surgery(c: &VerifyConfig) -> Outcome {
    const NAME: &str = "truncation-surgery";
    let mut rng = gen::rng(c.seed.wrapping_add(3));
    for _ in 0..c.truncation_models {
        let f = if rng.gen_bool(0.5) {
            chain_frame(rng.gen_range(1..=6))?
        } else {
            ring_frame(rng.gen_range(2..=6))?
        };
        let pf = gen::random_pframe(&mut rng, f, 2);
        let sig = gen::random_signature(&mut rng, 2, 1);
        let m = gen::random_model(&mut rng, pf, sig, 0.5);
        let size = rng.gen_range(1..=8);
        let phi = gen::random_formula(&mut rng, m.signature(), 3, size);
        let w = rng.gen_range(0..m.frame().len());
        let name = m.frame().name(w).to_string();
        let cut = truncate_depth(&m, &name, phi.modal_depth())?;
        let before = eval_modal(&m, w, &Assignment::new(), &phi)?;
        let after = eval_modal(
            &cut,
            cut.frame().world_or_err(&name)?,
            &Assignment::new(),
            &phi,
        )?;
        if before != after {
            return Ok(CheckResult::fail(
                NAME,
                format!("{phi} at {name}: {before} before, {after} after truncation"),
                json!({ "formula": phi.to_string(), "world": name, "model": model_json(&m) }),
            ));
        }
    }
    Ok(CheckResult::pass(
        NAME,
        format!(
            "truth at the base world preserved in {} models",
            c.truncation_models
        ),
    ))
}

fn with_loop(f: &Frame, w: usize) -> Result<Frame, Abort> {
    let mut edges: Vec<(usize, usize)> = f.edges().collect();
    edges.push((w, w));
    Ok(Frame::from_indices(f.worlds().to_vec(), edges)?)
}

fn c0star_axiom(_: &VerifyConfig) -> Outcome {
    const NAME: &str = "c0star-axiom";
    let axiom = mk_c0star_axiom();
    let phi1 = mk_c0star_phi1();
    let sat = |f: &Frame, s: &crate::FolFormula| -> Result<bool, Abort> {
        Ok(eval_fol(
            &ClassicalStructure::from_frame(f),
            &Assignment::new(),
            s,
        )?)
    };
    for k in 1..=4 {
        if !sat(&marked_chain_frame(k)?, &axiom)? {
            return Ok(CheckResult::fail(
                NAME,
                format!("marked chain k={k} fails the axiom"),
                json!({ "k": k }),
            ));
        }
    }
    for n in 2..=5 {
        if sat(&chain_frame(n)?, &axiom)? {
            return Ok(CheckResult::fail(
                NAME,
                format!("plain chain F{n} satisfies the axiom"),
                json!({ "n": n }),
            ));
        }
    }
    let reflexive = [
        Frame::new(&["v"], &[("v", "v")])?,
        with_loop(&chain_frame(3)?, 1)?,
        with_loop(&ring_frame(2)?, 0)?,
        with_loop(&marked_chain_frame(2)?, 3)?,
    ];
    for f in &reflexive {
        if sat(f, &phi1)? {
            return Ok(CheckResult::fail(
                NAME,
                "a frame with a reflexive world satisfies the first conjunct",
                serde_json::to_value(ModelDocument::from_frame(f)).expect("plain data"),
            ));
        }
    }
    Ok(CheckResult::pass(
        NAME,
        "marked chains k=1..4 satisfy it, chains F2..F5 do not, reflexive frames fail the first conjunct",
    ))
}

fn ef_ring_indistinguishability(c: &VerifyConfig) -> Outcome {
    const NAME: &str = "ef-ring-indistinguishability";
    let mut seen = Vec::new();
    for n in 1..=c.ef_max_n {
        let (m1, m2) = (1usize << n, (1usize << n) + 1);
        let a = frame_structure(&ring_frame(m1)?);
        let b = frame_structure(&ring_frame(m2)?);
        let wins = duplicator_wins(&a, &b, n)?;
        let rank = smallest_distinguishing_rank(&a, &b, 2 * n + 2)?;
        match rank {
            Some(r) if wins && r > n => {
                seen.push(format!("n={n}: G{m1}~G{m2} at {n} rounds, split at {r}"))
            }
            _ => {
                return Ok(CheckResult::fail(
                    NAME,
                    format!("n={n}: duplicator wins {wins}, distinguishing rank {rank:?}"),
                    json!({ "n": n, "left": m1, "right": m2, "duplicator_wins": wins, "rank": rank }),
                ))
            }
        }
    }
    Ok(CheckResult::pass(NAME, seen.join("; ")))
}

fn ef_chain_parity(c: &VerifyConfig) -> Outcome {
    const NAME: &str = "ef-chain-parity";
    for n in 1..=c.chain_parity_max_n {
        let r = chain_parity_witness(n)?;
        if !r.duplicator_wins {
            return Ok(CheckResult::fail(
                NAME,
                format!(
                    "F{} and F{} are separated in {} rounds",
                    r.left_index, r.right_index, r.rounds
                ),
                json!({ "n": n, "left": r.left_index, "right": r.right_index, "rounds": r.rounds }),
            ));
        }
    }
    Ok(CheckResult::pass(
        NAME,
        format!(
            "duplicator survives n rounds on F(2^n) vs F(2^n+1) for n=1..{}",
            c.chain_parity_max_n
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            alpha_max: 4,
            beta_max: 4,
            ring_max_worlds: 7,
            delta_k_max: 2,
            family_n_max: 3,
            random_frames: 20,
            random_frame_worlds: 5,
            random_models: 50,
            truncation_models: 50,
            random_refutable: 3,
            ef_max_n: 2,
            chain_parity_max_n: 1,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn small_run_passes_and_is_stable() {
        let c = small();
        let a = verify_lemmas("test", &c);
        for check in &a.checks {
            assert_eq!(check.status, Status::Pass, "{check:?}");
        }
        assert_eq!(a.render(), verify_lemmas("test", &c).render());
        assert_eq!(a.checks.len(), 11);
    }

    #[test]
    fn beta_skipped_below_two() {
        let c = VerifyConfig {
            beta_max: 1,
            ..small()
        };
        let r = run_check("beta-parity", &c).unwrap();
        assert_eq!(r.status, Status::Skipped);
        assert!(r.detail.contains("beta_max = 1"));
    }

    #[test]
    fn digest_tracks_config() {
        let c = small();
        assert_eq!(c.digest().len(), 64);
        assert_ne!(c.digest(), VerifyConfig { seed: 1, ..small() }.digest());
        assert_eq!(
            c.digest(),
            VerifyConfig {
                timings: true,
                ..small()
            }
            .digest()
        );
    }

    #[test]
    fn summary_line_counts() {
        let c = VerifyConfig {
            beta_max: 0,
            ..small()
        };
        let r = Report {
            command: "x".into(),
            inputs_digest: c.digest(),
            config: c.clone(),
            checks: vec![run_check("beta-parity", &c).unwrap()],
        };
        let text = r.render();
        assert!(text.ends_with("summary: 1 checks, 0 passed, 0 failed, 1 skipped, 0 over budget\n"));
        assert_eq!(text.lines().count(), 3);
    }
}
