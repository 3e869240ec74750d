//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; the process fails if any
//! criterion does.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wittrig::cochain::{differential, Cochain, Coefficients};
use wittrig::cohomology::{
    central_extension_dim, cocycle_basis, cohomology_dim, is_normalized, normalize_weight_zero, normalized_cocycle_dim,
    reduce_to_weight_zero,
};
use wittrig::deform::{conjugate, trivialize, DeformError, DeformedBracket, Equivalence};
use wittrig::replay::{final_solve, form, run_replay, Replay};
use wittrig::scalar::{self, Scalar};
use wittrig::symbolic::{unknown_label, RelationSet, SymbolicValue, Tag};
use wittrig::{check_jacobi, make_virasoro, make_witt, Element, Gen, Window};

type Outcome = Result<String, String>;

fn e(n: i64) -> Gen {
    Gen::Indexed(n)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_combination(basis: &[Cochain], rng: &mut impl Rng) -> Cochain {
    let mut c = basis[0].scaled(&scalar::zero());
    for b in basis {
        c = c.add_scaled(b, &scalar::int(rng.gen_range(-3..=3))).expect("same domain");
    }
    c
}

fn jacobi_certification() -> Outcome {
    let start = Instant::now();
    let window = Window::symmetric(15);
    let mut checked = 0;
    for alg in [make_witt(), make_virasoro()] {
        let r = check_jacobi(&alg, &window);
        ensure(r.is_clean(), || format!("{}: {} defects, first at {:?}", alg.name(), r.defects.len(), r.defects[0].triple))?;
        checked += r.triples_checked;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} triples clean in {elapsed:.1?}"))
}

fn delta_squared() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let window = Window::symmetric(10);
    let mut count = 0;
    for alg in [make_witt(), make_virasoro()] {
        for coeffs in [Coefficients::Adjoint, Coefficients::Trivial] {
            for degree in [1, 2] {
                for _ in 0..25 {
                    let n_weights = rng.gen_range(1..=3);
                    let weights: BTreeSet<i64> = (0..n_weights).map(|_| rng.gen_range(-3..=3)).collect();
                    let c = Cochain::random(&alg, degree, weights.iter().copied(), window, coeffs, &mut rng, 0.5, 5);
                    let dc = differential(&alg, &c).map_err(|e| e.to_string())?.cochain;
                    let ddc = differential(&alg, &dc).map_err(|e| e.to_string())?.cochain;
                    ensure(!ddc.domain().is_empty(), || "empty interior".into())?;
                    ensure(ddc.is_zero(), || {
                        let (t, v) = ddc.entries().next().unwrap();
                        format!("{} {coeffs:?} degree {degree}: δδc{t:?} = {v}", alg.name())
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("δδc = 0 on {count} random cochains"))
}

fn weight_reduction() -> Outcome {
    let w = make_witt();
    let window = Window::symmetric(12);
    let core = window.shrink(6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let weights = [-1, 1, -3, 3, -6, 6];
    for n in 0..50 {
        let d = weights[n % weights.len()];
        let b = Cochain::random(&w, 1, [d], window, Coefficients::Adjoint, &mut rng, 1.0, 5);
        let c = differential(&w, &b).map_err(|e| e.to_string())?.cochain;
        let red = reduce_to_weight_zero(&w, &c).map_err(|e| e.to_string())?;
        let res = red.residual.restrict(&w, &core);
        ensure(res.covers(&w, &core), || format!("weight {d}: residual not known on the core"))?;
        ensure(res.is_zero(), || format!("weight {d}: residual has {} nonzero values on the core", res.nnz()))?;
    }
    let zero_basis = cocycle_basis(&w, 2, 0, window, Coefficients::Adjoint).map_err(|e| e.to_string())?;
    for _ in 0..10 {
        let b = Cochain::random(&w, 1, [-2, -1, 0, 3, 5], window, Coefficients::Adjoint, &mut rng, 0.8, 4);
        let db = differential(&w, &b).map_err(|e| e.to_string())?.cochain;
        let z = random_combination(&zero_basis, &mut rng);
        let c = db.add_scaled(&z, &scalar::one()).map_err(|e| e.to_string())?;
        let red = reduce_to_weight_zero(&w, &c).map_err(|e| e.to_string())?;
        let res = red.residual.restrict(&w, &core);
        let occurring = res.occurring_weights();
        ensure(occurring.iter().all(|d| *d == 0), || format!("mixed residual has weights {occurring:?}"))?;
    }
    Ok("50 pure coboundaries reduce to zero on the core; 10 mixed cocycles reduce to weight 0".into())
}

fn rigidity_direct() -> Outcome {
    let w = make_witt();
    let mut lines = Vec::new();
    for window in [Window::symmetric(8), Window::symmetric(10), Window::symmetric(12)] {
        for d in -6..=6 {
            let r = cohomology_dim(&w, 2, d, window, 4).map_err(|e| e.to_string())?;
            ensure(r.dim_stable == 0, || format!("window {window}, weight {d}: dim_stable {}", r.dim_stable))?;
        }
        lines.push(window.to_string());
    }
    Ok(format!("dim_stable = 0 for |d| <= 6 on windows {}", lines.join(", ")))
}

fn normalization_uniqueness() -> Outcome {
    let w = make_witt();
    let window = Window::symmetric(10);
    let basis = cocycle_basis(&w, 2, 0, window, Coefficients::Adjoint).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let c = random_combination(&basis, &mut rng);
        let n = normalize_weight_zero(&w, &c).map_err(|e| e.to_string())?;
        ensure(is_normalized(&w, &n.c_norm), || "output violates the normalization".into())?;
        let again = normalize_weight_zero(&w, &n.c_norm).map_err(|e| e.to_string())?;
        ensure(again.b.is_zero(), || "second normalization moved the cocycle".into())?;
    }
    Ok(format!("50 random weight-0 cocycles from a {}-dimensional space", basis.len()))
}

fn labeled(k: i64, f: &SymbolicValue) -> String {
    format!("{} = {f}", unknown_label(k))
}

fn replay_table(r: &Replay) -> Outcome {
    let golden = include_str!("golden/fact_table.md");
    let got = r.snapshot.emit_table();
    if got == golden {
        return Ok("table matches the golden file cell for cell".into());
    }
    let diff = got
        .lines()
        .zip(golden.lines())
        .find(|(a, b)| a != b)
        .map(|(a, b)| format!("got {a:?}, want {b:?}"))
        .unwrap_or_else(|| "line count differs".into());
    Err(diff)
}

fn replay_diagonal(r: &Replay) -> Outcome {
    let expected = [
        (4, form(&[(3, 2)])),
        (6, form(&[(5, 3), (3, -5)])),
        (8, form(&[(7, 4), (5, -14), (3, 28)])),
        (10, form(&[(9, 5), (7, -30), (5, 117), (3, -255)])),
    ];
    let solved = r.diagonal.solve().solved;
    let mut bad = Vec::new();
    for (k, want) in &expected {
        match solved.get(k) {
            Some(got) if got == want => {}
            Some(got) => bad.push(format!("{} (expected {})", labeled(*k, got), labeled(*k, want))),
            None => bad.push(format!("{} not solved", unknown_label(*k))),
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("a_4, a_6, a_8, a_10 match".into())
}

/// Relations in force once the even/odd diagonal and the i = -2 family are
/// in, before the i = -3 family.
fn chain_state(r: &Replay) -> RelationSet {
    r.table.relations().with_tags(&[Tag::Diagonal, Tag::KTwoAtMinusTwo])
}

fn replay_chains(r: &Replay) -> Outcome {
    let rs = chain_state(r);
    let chains = [
        ("a_0 = 0", form(&[(0, 1)])),
        ("a_{-6} = 0", form(&[(-6, 1)])),
        ("a_{-8} = 0", form(&[(-8, 1)])),
        ("3a_{-1} = a_{-3}", form(&[(-1, 3), (-3, -1)])),
        ("a_{-3} = -a_{-5}", form(&[(-3, 1), (-5, 1)])),
        ("-a_{-5} = -3a_{-7}", form(&[(-5, -1), (-7, 3)])),
    ];
    let failed: Vec<&str> = chains.iter().filter(|(_, f)| !rs.implies(f)).map(|(n, _)| *n).collect();
    ensure(failed.is_empty(), || format!("not implied: {}", failed.join(", ")))?;
    Ok(format!("all {} chain links implied", chains.len()))
}

fn replay_verdict(r: &Replay) -> Outcome {
    let v = &r.verdict;
    ensure(v.k == 12 && v.interior == 9, || format!("K = {}, interior {}", v.k, v.interior))?;
    ensure(v.all_zero(), || format!("dim {}, undetermined {:?}", v.dim, v.undetermined))?;
    let expected: BTreeSet<i64> = (-9..=9).filter(|k| ![-2, 1, 2].contains(k)).collect();
    let got: BTreeSet<i64> = v.values.keys().copied().collect();
    ensure(got == expected, || format!("verdict covers {got:?}"))?;
    Ok(format!("all a_k = 0 for |k| <= 9 from {} relations", v.relations_used))
}

fn replay_residual(r: &Replay) -> Outcome {
    let rs = chain_state(r);
    let v = final_solve(&r.table, &rs).map_err(|e| e.to_string())?;
    ensure(v.dim == 2, || format!("{} residual directions", v.dim))?;
    // a_{-4} together with any single odd negative unknown pins everything
    for k in (-9..0).filter(|k| k % 2 != 0) {
        let mut pinned = rs.clone();
        pinned.push(SymbolicValue::unknown(-4), Tag::Assumed, "pin");
        pinned.push(SymbolicValue::unknown(k), Tag::Assumed, "pin");
        let p = final_solve(&r.table, &pinned).map_err(|e| e.to_string())?;
        ensure(p.all_zero(), || format!("a_{{-4}} and {} leave dim {}", unknown_label(k), p.dim))?;
    }
    let mut whole = rs.clone();
    whole.extend(&r.table.relations().with_tags(&[Tag::KTwoAtMinusThree]));
    let closed = final_solve(&r.table, &whole).map_err(|e| e.to_string())?;
    ensure(closed.all_zero(), || "adding the i = -3 family does not close the system".into())?;
    Ok("residual space spanned by a_{-4} and one odd negative a_k".into())
}

fn oracle_cross_check(r: &Replay) -> Outcome {
    let dim = normalized_cocycle_dim(&make_witt(), Window::symmetric(12), 4).map_err(|e| e.to_string())?;
    ensure(dim == 0, || format!("normalized cocycle space has dimension {dim}"))?;
    ensure(r.verdict.dim == 0, || "replay verdict disagrees".into())?;
    Ok("brute-force normalized cocycle space is {0}, as in the replay".into())
}

fn central_extension() -> Outcome {
    let w = make_witt();
    let r = central_extension_dim(Window::symmetric(10), 4).map_err(|e| e.to_string())?;
    ensure(r.dim_stable == 1, || format!("dim_stable {}", r.dim_stable))?;
    let rep = &r.representatives[0];
    let mut ratio: Option<Scalar> = None;
    for n in 2..=r.core.hi {
        let v = rep.evaluate(&w, &[e(-n), e(n)]).map_err(|x| x.to_string())?.coeff(Gen::Central);
        let q = v / scalar::int(n * n * n - n);
        match &ratio {
            None => ratio = Some(q),
            Some(prev) => ensure(*prev == q, || format!("n = {n}: ratio {} differs from {}", scalar::render(&q), scalar::render(prev)))?,
        }
    }
    let one = rep.evaluate(&w, &[e(-1), e(1)]).map_err(|x| x.to_string())?;
    ensure(one.is_zero(), || "value at n = 1 is not zero".into())?;
    let vir = make_virasoro();
    for n in 1..=6 {
        let want = Element::term(Gen::Central, scalar::ratio(n * n * n - n, 12)).add(&Element::term(e(0), scalar::int(2 * n)));
        ensure(vir.bracket(e(-n), e(n)) == want, || format!("[e_-{n}, e_{n}] = {}", vir.bracket(e(-n), e(n))))?;
    }
    ensure(check_jacobi(&vir, &Window::symmetric(15)).is_clean(), || "Virasoro Jacobi defects".into())?;
    Ok(format!("dim 1, representative = {} (n^3 - n)", scalar::render(&ratio.unwrap())))
}

fn deformation_demo() -> Outcome {
    let w = make_witt();
    let window = Window::symmetric(12);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut core = None;
    for seed in 0..20 {
        let phi = Equivalence::random(&w, 3, window, &[-1, 0, 1], &mut rng, 0.6, 3);
        let d = conjugate(&DeformedBracket::trivial(&w, 3, window), &phi).map_err(|e| e.to_string())?;
        let t = trivialize(&d, 2).map_err(|e| e.to_string())?;
        ensure(t.is_trivialized(), || format!("conjugate {seed} not trivialized"))?;
        if let wittrig::deform::Trivialization::Trivialized { core: c, .. } = t {
            core = Some(c);
        }
    }
    let mut mu1 = Cochain::homogeneous(&w, 2, 0, window, Coefficients::Adjoint);
    mu1.set_scalar(&w, &[e(1), e(2)], scalar::one()).map_err(|e| e.to_string())?;
    let bad = DeformedBracket::new(&w, window, vec![Some(mu1), None, None]).map_err(|e| e.to_string())?;
    ensure(
        matches!(trivialize(&bad, 2), Err(DeformError::JacobiUnclean { order: 1, .. })),
        || "non-cocycle layer accepted".into(),
    )?;
    Ok(format!("20 order-3 conjugates trivialized on core {}; non-cocycle rejected", core.unwrap()))
}

fn cli_end_to_end() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_wittrig");
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/fact_table.md");
    let runs: [(&[&str], i32); 5] = [
        (&["cohomology", "--algebra", "witt", "--degree", "2", "--weight", "0", "--window", "-12:12", "--margin", "4", "--expect", "0"], 0),
        (&["central-extension", "--window", "-10:10", "--expect", "1"], 0),
        (&["replay", "--K", "12", "--emit-table", "--golden", golden, "--expect", "0"], 0),
        (&["jacobi", "--algebra", "virasoro", "--window", "-15:15", "--expect", "0"], 0),
        (&["central-extension", "--window", "-10:10", "--expect", "2"], 1),
    ];
    for (args, want) in runs {
        let out = Command::new(bin).args(args).env_remove("WITTRIG_OUT_DIR").output().map_err(|e| e.to_string())?;
        let code = out.status.code().unwrap_or(-1);
        ensure(code == want, || format!("`{}` exited {code}, expected {want}", args.join(" ")))?;
    }
    Ok("four expectations met; mutated expectation exits 1".into())
}

fn main() {
    let replay = run_replay(12);
    let with_replay = |f: fn(&Replay) -> Outcome| -> Box<dyn Fn() -> Outcome> {
        let r = replay.clone();
        Box::new(move || match &r {
            Ok(r) => f(r),
            Err(e) => Err(format!("replay failed: {e}")),
        })
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1  Jacobi certification", Box::new(jacobi_certification)),
        ("2  delta squared", Box::new(delta_squared)),
        ("3  weight reduction", Box::new(weight_reduction)),
        ("4  rigidity, direct computation", Box::new(rigidity_direct)),
        ("5  normalization uniqueness", Box::new(normalization_uniqueness)),
        ("6a replay table", with_replay(replay_table)),
        ("6b diagonal relations", with_replay(replay_diagonal)),
        ("6c chains", with_replay(replay_chains)),
        ("6d final verdict", with_replay(replay_verdict)),
        ("6e residual unknowns", with_replay(replay_residual)),
        ("7  oracle cross-check", with_replay(oracle_cross_check)),
        ("8  central extension", Box::new(central_extension)),
        ("9  deformation demonstration", Box::new(deformation_demo)),
        ("10 end-to-end CLI", Box::new(cli_end_to_end)),
    ];
    let mut failures = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("PASS  {name:32} {msg}  [{secs:.1}s]"),
            Err(msg) => {
                failures += 1;
                println!("FAIL  {name:32} {msg}  [{secs:.1}s]");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
