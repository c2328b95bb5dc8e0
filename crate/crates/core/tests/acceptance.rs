//! Acceptance run: one line per criterion, `PASS` or `FAIL`, with the
//! measured time against its bound. Exits non-zero if any line fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;

use predmodal::efgames::{
    chain_parity_witness, duplicator_wins, frame_structure, smallest_distinguishing_rank,
};
use predmodal::frames::{
    chain_frame, marked_chain_frame, mk_c0star_axiom, mk_c0star_phi1, ring_frame,
    structural_characterization, truncate_depth,
};
use predmodal::gen;
use predmodal::kripke::WORLD_TAG;
use predmodal::syntax::{mk_alpha, mk_alt2, mk_beta, mk_delta, mk_epsilon, mk_gamma};
use predmodal::translate::{embed, standard_translation, Logic};
use predmodal::validity::{
    frame_validity, frame_validity_at, in_l0, in_l1, in_logic, SearchBounds,
};
use predmodal::verify::{verify_lemmas, VerifyConfig};
use predmodal::{
    eval_fol, eval_modal, model_to_structure, Assignment, ClassicalStructure, FormulaFamily, Frame,
    ModalFormula,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn alpha_parity() -> Outcome {
    for n in 1..=6 {
        let phi = ModalFormula::not(mk_alpha(n).unwrap());
        let bounds = SearchBounds::for_formula(&phi)
            .unwrap()
            .with_frame_index(8.max(n + 3));
        let v = in_l0(&phi, &bounds).map_err(|e| e.to_string())?;
        match (n % 2 == 0, v.refutation()) {
            (true, None) => {}
            (false, Some(r)) => ensure(r.frame_index == n + 1 && r.world_name() == "w1", || {
                format!("n={n}: refuted at F{} {}", r.frame_index, r.world_name())
            })?,
            (even, _) => return Err(format!("n={n}: even={even} but refuted={}", v.is_refuted())),
        }
    }
    Ok("n=1..6 member iff even, odd n refuted at (F_{n+1}, w1)".into())
}

fn beta_parity() -> Outcome {
    for n in 2..=6 {
        let phi = ModalFormula::not(mk_beta(n).unwrap());
        let v =
            in_l1(&phi, &SearchBounds::for_formula(&phi).unwrap()).map_err(|e| e.to_string())?;
        match (n % 2 == 1, v.refutation()) {
            (true, None) => {}
            (false, Some(r)) => ensure(r.frame_index == n && r.world_name() == "w1", || {
                format!("n={n}: refuted at G{} {}", r.frame_index, r.world_name())
            })?,
            (odd, _) => return Err(format!("n={n}: odd={odd} but refuted={}", v.is_refuted())),
        }
    }
    Ok("n=2..6 member iff odd, even n refuted at (G_n, w1)".into())
}

fn ring_memberships() -> Outcome {
    let mut formulas = vec![mk_alt2(), mk_gamma()];
    for n in 2..=4 {
        for k in 0..=3 {
            formulas.push(mk_delta(k, n).unwrap());
        }
        formulas.push(mk_epsilon(n).unwrap());
    }
    let mut rings = 0;
    for m in (2..=8).step_by(2) {
        let g = ring_frame(m).unwrap();
        assert!(g.len() <= 9);
        rings += 1;
        for phi in &formulas {
            ensure(
                frame_validity(&g, phi, 1).map_err(|e| e.to_string())?,
                || format!("{phi} fails on G{m}"),
            )?;
        }
    }
    Ok(format!(
        "{} formulas valid on {rings} even rings",
        formulas.len()
    ))
}

fn characterizations() -> Outcome {
    let mut frames: Vec<Frame> = Vec::new();
    frames.extend((1..=7).map(|n| chain_frame(n).unwrap()));
    frames.extend((2..=7).map(|n| ring_frame(n).unwrap()));
    frames.extend((1..=3).map(|k| marked_chain_frame(k).unwrap()));
    let mut rng = gen::rng(4);
    for _ in 0..200 {
        let p = rng.gen_range(0.15..0.45);
        frames.push(gen::random_frame(&mut rng, 7, p));
    }
    let mut families = vec![
        FormulaFamily::Gamma,
        FormulaFamily::Alt2,
        FormulaFamily::Zeta,
    ];
    families.extend((1..=4).map(FormulaFamily::Alpha));
    families.extend((2..=4).map(FormulaFamily::Beta));
    families.extend((2..=3).map(FormulaFamily::Epsilon));
    families.extend((0..=2).flat_map(|k| (2..=3).map(move |n| FormulaFamily::Delta { k, n })));
    for f in &frames {
        for &fam in &families {
            let phi = fam.formula().unwrap();
            let mut brute_frame = true;
            for w in 0..f.len() {
                let brute = frame_validity_at(f, w, &phi, 1).map_err(|e| e.to_string())?;
                let structural = structural_characterization(f, w, fam).unwrap();
                ensure(brute == structural, || {
                    format!("{fam} at {} of {f:?}", f.name(w))
                })?;
                brute_frame &= brute;
            }
            let frame_level = predmodal::frames::structural_characterization_frame(f, fam).unwrap();
            ensure(frame_level == brute_frame, || {
                format!("{fam} frame-level on {f:?}")
            })?;
        }
    }
    Ok(format!(
        "{} frames x {} formulas agree",
        frames.len(),
        families.len()
    ))
}

fn correspondence() -> Outcome {
    let mut rng = gen::rng(5);
    for i in 0..1000 {
        let f = gen::random_frame(&mut rng, 4, 0.4);
        let pf = gen::random_pframe(&mut rng, f, 3);
        let sig = gen::random_signature(&mut rng, 2, 2);
        let m = gen::random_model(&mut rng, pf, sig, 0.5);
        let size = rng.gen_range(1..=8);
        let phi = gen::random_formula(&mut rng, m.signature(), 3, size);
        let st = standard_translation(&phi, "x").unwrap();
        let a = model_to_structure(&m);
        for w in 0..m.frame().len() {
            let g = Assignment::new().with("x", format!("{WORLD_TAG}{}", m.frame().name(w)));
            let modal = eval_modal(&m, w, &Assignment::new(), &phi).unwrap();
            let classical = eval_fol(&a, &g, &st).unwrap();
            ensure(modal == classical, || {
                format!("model {i}: {phi} at {}", m.frame().name(w))
            })?;
        }
    }
    Ok("1000 random models agree at every world".into())
}

fn transport_one(logic: Logic, phi: &ModalFormula) -> Result<bool, String> {
    let v = in_logic(logic, phi, &SearchBounds::for_formula(phi).unwrap())
        .map_err(|e| e.to_string())?;
    let Some(r) = v.refutation() else {
        return Ok(false);
    };
    let lifted = r.embedding_model(phi).map_err(|e| e.to_string())?;
    let sentence = embed(logic, phi).unwrap();
    let holds = eval_fol(&model_to_structure(&lifted), &Assignment::new(), &sentence)
        .map_err(|e| e.to_string())?;
    ensure(!holds, || {
        format!("{phi}: embedding survives the lifted countermodel")
    })?;
    Ok(true)
}

fn transport() -> Outcome {
    ensure(
        transport_one(Logic::L0, &ModalFormula::not(mk_alpha(3).unwrap()))?,
        || "¬α3 not refuted".into(),
    )?;
    ensure(
        transport_one(Logic::L1, &ModalFormula::not(mk_beta(4).unwrap()))?,
        || "¬β4 not refuted".into(),
    )?;
    let mut rng = gen::rng(6);
    let mut found = 0;
    for attempt in 0..4000 {
        if found == 20 {
            break;
        }
        let logic = if attempt % 2 == 0 {
            Logic::L0
        } else {
            Logic::L1
        };
        let size = rng.gen_range(2..=7);
        let phi = gen::random_prop_formula(&mut rng, &["p", "q"], 2, size);
        if transport_one(logic, &phi)? {
            found += 1;
        }
    }
    ensure(found == 20, || {
        format!("only {found} refutable formulas drawn")
    })?;
    Ok("¬α3, ¬β4 and 20 random refutable formulas falsify their embeddings".into())
}

fn truncation() -> Outcome {
    let mut rng = gen::rng(7);
    for i in 0..500 {
        let f = if rng.gen_bool(0.5) {
            chain_frame(rng.gen_range(1..=7)).unwrap()
        } else {
            ring_frame(rng.gen_range(2..=7)).unwrap()
        };
        let pf = gen::random_pframe(&mut rng, f, 2);
        let sig = gen::random_signature(&mut rng, 2, 1);
        let m = gen::random_model(&mut rng, pf, sig, 0.5);
        let size = rng.gen_range(1..=8);
        let phi = gen::random_formula(&mut rng, m.signature(), 3, size);
        let w = rng.gen_range(0..m.frame().len());
        let name = m.frame().name(w).to_string();
        let cut = truncate_depth(&m, &name, phi.modal_depth()).unwrap();
        let before = eval_modal(&m, w, &Assignment::new(), &phi).unwrap();
        let after = eval_modal(
            &cut,
            cut.frame().world(&name).unwrap(),
            &Assignment::new(),
            &phi,
        )
        .unwrap();
        ensure(before == after, || format!("model {i}: {phi} at {name}"))?;
    }
    Ok("500 random chain/ring models keep truth at the base world".into())
}

fn c0star() -> Outcome {
    let axiom = mk_c0star_axiom();
    let sat =
        |f: &Frame, s| eval_fol(&ClassicalStructure::from_frame(f), &Assignment::new(), s).unwrap();
    for k in 1..=4 {
        ensure(sat(&marked_chain_frame(k).unwrap(), &axiom), || {
            format!("marked k={k} fails")
        })?;
    }
    for n in 2..=5 {
        ensure(!sat(&chain_frame(n).unwrap(), &axiom), || {
            format!("F{n} satisfies the axiom")
        })?;
    }
    let phi1 = mk_c0star_phi1();
    let loops = [
        Frame::new(&["v"], &[("v", "v")]).unwrap(),
        Frame::new(&["a", "b"], &[("a", "b"), ("b", "b")]).unwrap(),
        Frame::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "a")]).unwrap(),
    ];
    for f in &loops {
        ensure(!sat(f, &phi1), || {
            format!("{f:?} satisfies the first conjunct")
        })?;
    }
    Ok("marked k=1..4 satisfy, F2..F5 fail, reflexive frames fail the first conjunct".into())
}

fn ef() -> Outcome {
    let mut ranks = Vec::new();
    for n in 1..=3 {
        let a = frame_structure(&ring_frame(1 << n).unwrap());
        let b = frame_structure(&ring_frame((1 << n) + 1).unwrap());
        ensure(duplicator_wins(&a, &b, n).unwrap(), || {
            format!("n={n}: spoiler wins in {n} rounds")
        })?;
        let rank = smallest_distinguishing_rank(&a, &b, 2 * n + 2).unwrap();
        ensure(matches!(rank, Some(r) if r > n), || {
            format!("n={n}: rank {rank:?}")
        })?;
        ranks.push(rank.unwrap());
    }
    for n in 1..=2 {
        ensure(chain_parity_witness(n).unwrap().duplicator_wins, || {
            format!("chain parity n={n}")
        })?;
    }
    Ok(format!(
        "rings 2^n vs 2^n+1 equivalent at n rounds, split at ranks {ranks:?}; chain parity n=1,2"
    ))
}

fn determinism() -> Outcome {
    let c = VerifyConfig::default();
    let (a, b) = (
        verify_lemmas("acceptance", &c).render(),
        verify_lemmas("acceptance", &c).render(),
    );
    ensure(a == b, || "library reports differ".into())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("report{i}.jsonl"));
        let status = Command::new(env!("CARGO_BIN_EXE_predmodal"))
            .args(["verify-lemmas", "--out"])
            .arg(dir.path().join("report.jsonl"))
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || {
            format!("verify-lemmas exited with {status}")
        })?;
        std::fs::rename(dir.path().join("report.jsonl"), &path).map_err(|e| e.to_string())?;
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], || "CLI reports differ".into())?;
    Ok(format!(
        "two library runs and two CLI runs byte-identical ({} bytes)",
        outputs[0].len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("alpha parity", Duration::from_secs(5), alpha_parity),
        ("beta parity", Duration::from_secs(10), beta_parity),
        (
            "ring logic memberships",
            Duration::from_secs(30),
            ring_memberships,
        ),
        (
            "structural characterizations",
            Duration::from_secs(60),
            characterizations,
        ),
        (
            "standard translation correspondence",
            Duration::from_secs(60),
            correspondence,
        ),
        (
            "embedding refutation transport",
            Duration::from_secs(30),
            transport,
        ),
        ("truncation surgery", Duration::from_secs(30), truncation),
        ("C0* axiom", Duration::from_secs(10), c0star),
        ("EF indistinguishability", Duration::from_secs(300), ef),
        ("determinism", Duration::from_secs(300), determinism),
    ];
    let mut failed = 0;
    for (i, (name, bound, body)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = body();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= *bound => (true, d),
            Ok(d) => (false, format!("{d}; over time bound")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {:<36} {} ({:.3}s / {}s) {detail}",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            bound.as_secs()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
