//! Acceptance suite. Runs without the libtest harness so that every criterion
//! prints exactly one PASS/FAIL line; the process exits nonzero on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use malcev_forge::grouplaw::{check_malcev, lemma_identity_check, GroupElement};
use malcev_forge::ideal::{build_ideal_c, check_b_subset_c, check_congruence, factorial};
use malcev_forge::matrix::{basis_vector, IntMatrix};
use malcev_forge::poly::{verify_f_factorizations, Monomial, Polynomial};
use malcev_forge::quotient::QuotientAlgebra;
use malcev_forge::verify::{
    build_gn, image_is_nontrivial, separate_in_p_quotient, t_membership_and_closure_check, GnGroup,
    GnParams,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:?}, limit {limit:?}"))?;
    Ok(spent)
}

fn polynomial_identities() -> Outcome {
    let start = Instant::now();
    for c in 2..=8 {
        let r = verify_f_factorizations(c).map_err(|e| e.to_string())?;
        ensure(r.identity_1 && r.identity_1bis && r.identity_2, || format!("c={c}: {r:?}"))?;
        ensure(r.all_hold(), || format!("c={c}: diagonal factor or value at 1"))?;
        // g_c(1) = prod_{i=1}^{c-2} 2^i and h_c(1) = g_c(1) 2^{c-1}
        let g1 = BigInt::one() << ((1..=c.saturating_sub(2)).sum::<u32>() as usize);
        ensure(r.g_at_1 == g1, || format!("c={c}: g_c(1) = {}, expected {g1}", r.g_at_1))?;
        ensure(r.h_at_1 == &g1 << (c as usize - 1), || format!("c={c}: h_c(1) = {}", r.h_at_1))?;
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("c = 2..8 exact, {t:?}"))
}

/// Matrix part of a random element of `B_n`: `prod t_i^{k_i}`, `k_i ∈ [-2, 2]`.
fn random_b(group: &GnGroup, rng: &mut ChaCha8Rng) -> IntMatrix {
    let mut t = IntMatrix::identity(group.dim());
    for g in group.generators() {
        t = &t * &g.pow_signed(rng.gen_range(-2..=2)).unwrap();
    }
    t
}

fn random_vec(d: usize, rng: &mut ChaCha8Rng) -> Vec<BigInt> {
    (0..d).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect()
}

fn lemma_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut summary = Vec::new();
    for n in [3u32, 4] {
        let group = GnGroup::new(n, 3).map_err(|e| e.to_string())?;
        let reps = group.coset_reps();
        let d = group.dim();
        let (mut trials, mut holds) = (0, 0);
        for k in 0..1000 {
            // a third from T (where the law must hold), a third with x = y,
            // the rest arbitrary commuting pairs from B_n
            let (t, u, a, b) = match k % 3 {
                0 => {
                    let t = reps[rng.gen_range(0..reps.len())].clone();
                    let u = reps[rng.gen_range(0..reps.len())].clone();
                    (t, u, random_vec(d, &mut rng), random_vec(d, &mut rng))
                }
                1 => {
                    let t = random_b(&group, &mut rng);
                    let a = random_vec(d, &mut rng);
                    (t.clone(), t, a.clone(), a)
                }
                _ => (
                    random_b(&group, &mut rng),
                    random_b(&group, &mut rng),
                    random_vec(d, &mut rng),
                    random_vec(d, &mut rng),
                ),
            };
            let out = lemma_identity_check(3, &t, &u, &a, &b).map_err(|e| e.to_string())?;
            ensure(out.agrees(), || format!("n={n}, trial {k}: {out:?}"))?;
            trials += 1;
            holds += out.direct as u32;
        }
        ensure(holds > 0 && holds < trials, || format!("n={n}: degenerate sample, {holds}/{trials} hold"))?;
        summary.push(format!("(3,{n}) {trials}/{trials} agree, law holds in {holds}"));
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{}, {t:?}", summary.join("; ")))
}

/// Standard monomials by brute force: exponent vectors in `[0, c]^n` not
/// divisible by any degree-`c` monomial with a repeated variable.
fn brute_standard(n: usize, c: u32) -> BTreeSet<Vec<u32>> {
    let mut all = vec![vec![]];
    for _ in 0..n {
        all = all
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..=c).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    let gens: Vec<&Vec<u32>> = all
        .iter()
        .filter(|v| v.iter().sum::<u32>() == c && v.iter().any(|&x| x >= 2))
        .collect();
    all.iter()
        .filter(|m| !gens.iter().any(|g| g.iter().zip(m.iter()).all(|(a, b)| a <= b)))
        .cloned()
        .collect()
}

fn construction_facts() -> Outcome {
    let mut dims = Vec::new();
    for (n, c, expected) in [(3u32, 3u32, 11usize), (4, 3, 20)] {
        let q = QuotientAlgebra::build(n, c).map_err(|e| e.to_string())?;
        let oracle = brute_standard(n as usize, c);
        let basis: BTreeSet<Vec<u32>> = q.basis().iter().map(|m| m.exponents().to_vec()).collect();
        ensure(oracle.len() == expected, || format!("oracle d({n},{c}) = {}", oracle.len()))?;
        ensure(q.dim() == expected && basis == oracle, || format!("d({n},{c}) = {}", q.dim()))?;
        let gens = q.generators();
        for (i, t) in gens.iter().enumerate() {
            for r in 0..t.dim() {
                for col in 0..t.dim() {
                    let x = t.get(r, col);
                    let ok = if r == col {
                        x.is_one()
                    } else if r > col {
                        x.is_zero()
                    } else {
                        x.is_zero() || x.is_one()
                    };
                    ensure(ok, || format!("t_{} entry ({r},{col}) = {x}", i + 1))?;
                }
            }
            for s in &gens[i + 1..] {
                ensure((t * s) == (s * t), || format!("t_{} does not commute", i + 1))?;
            }
        }
        dims.push(format!("d({n},{c}) = {expected}"));
    }
    Ok(dims.join(", "))
}

const CONFIGS: [(u32, u32); 4] = [(3, 3), (3, 4), (3, 5), (4, 4)];

fn conditions() -> Outcome {
    let start = Instant::now();
    for (c, n) in CONFIGS {
        let group = GnGroup::new(n, c).map_err(|e| e.to_string())?;
        let gens = group.generators();
        for (i, ti) in gens.iter().enumerate() {
            let step = ti.minus_identity();
            ensure(step.pow(c).is_zero(), || format!("(c,n)=({c},{n}): (t_{} - 1)^c != 0", i + 1))?;
            for (j, tj) in gens.iter().enumerate() {
                if i != j {
                    let m = &step * &(ti * tj).minus_identity().pow(c - 1);
                    ensure(m.is_zero(), || format!("(c,n)=({c},{n}): condition (ii) at ({i},{j})"))?;
                }
            }
        }
        for e in 1..=3 {
            let prod = gens
                .iter()
                .fold(IntMatrix::identity(group.dim()), |acc, t| &acc * &t.pow(e));
            ensure(!prod.minus_identity().pow(n).is_zero(), || {
                format!("(c,n)=({c},{n}): condition (iii) fails for e={e}")
            })?;
        }
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("(c,n) in {CONFIGS:?}, e = 1..3, {t:?}"))
}

fn congruence() -> Outcome {
    let mut coefficients = Vec::new();
    for (c, n) in CONFIGS {
        for e in 1..=2u32 {
            let r = check_congruence(n, c, e).map_err(|e| e.to_string())?;
            let expected = BigInt::from(e).pow(n) * factorial(n);
            let top = Monomial::new(vec![1; n as usize]);
            ensure(r.holds && r.coefficient == expected, || format!("(c,n,e)=({c},{n},{e}): {}", r.coefficient))?;
            ensure(r.normal_form == Polynomial::term(top.clone(), expected.clone()), || {
                format!("(c,n,e)=({c},{n},{e}): normal form {}", r.normal_form)
            })?;
            ensure(!build_ideal_c(n, c).unwrap().contains_monomial(&top).unwrap(), || {
                format!("X1...X{n} lies in c for (c,n)=({c},{n})")
            })?;
            if n == 3 {
                coefficients.push(format!("n=3,e={e}: {}", r.coefficient));
            }
        }
    }
    let want = ["n=3,e=1: 6", "n=3,e=2: 48"];
    ensure(coefficients.iter().all(|s| want.contains(&s.as_str())), || coefficients.join(", "))?;
    Ok(coefficients.join(", "))
}

fn law_separation() -> Outcome {
    let mut params = GnParams::new(3, 3, vec![1, 2]);
    params.trials = 200;
    let cert = build_gn(&params).map_err(|e| e.to_string())?;
    ensure(cert.malcev_on_t.exhaustive && cert.malcev_on_t.passed(), || "T_3 violates M_3".into())?;
    for e in [1, 2] {
        let w = cert.witness(e).ok_or_else(|| format!("no witness for e={e}"))?;
        let t = cert.group.diagonal_power(e);
        let x = GroupElement::new(t.clone(), w.a.clone()).unwrap();
        let y = GroupElement::new(t, w.b.clone()).unwrap();
        ensure(!check_malcev(3, &x, &y).unwrap(), || format!("e={e}: witness does not violate M_3"))?;
        ensure(w.alpha_val != w.beta_val, || format!("e={e}: alpha = beta"))?;
    }
    ensure(cert.valid(), || format!("first failure {:?}", cert.failing_stage()))?;
    Ok("M_3 holds on T_3 exhaustively; fails on (t_1 t_2 t_3)^e A_3 for e = 1, 2".into())
}

fn negative_control() -> Outcome {
    let r = check_b_subset_c(3, 2).map_err(|e| e.to_string())?;
    ensure(!r.holds, || "b is contained in c for c = 2".into())?;
    let (g, m) = r.witness.ok_or("no surviving monomial reported")?;
    let ideal = build_ideal_c(3, 2).unwrap();
    ensure(!ideal.contains_monomial(&m).unwrap(), || format!("{m} lies in c"))?;
    ensure(!g.coeff(&m).is_zero(), || format!("{m} does not occur in {g}"))?;

    let mut params = GnParams::new(2, 3, vec![1]);
    params.allow_degenerate = true;
    let cert = build_gn(&params).map_err(|e| e.to_string())?;
    ensure(!cert.check("b_subset_c").unwrap().pass, || "pipeline accepted c = 2".into())?;
    Ok(format!("generator {g} leaves {m}"))
}

fn closure() -> Outcome {
    let groups: Vec<GnGroup> = (3..=5).map(|n| GnGroup::new(n, 3).unwrap()).collect();
    let refs: Vec<&GnGroup> = groups.iter().collect();
    let r = t_membership_and_closure_check(&refs, 500, 7, 9).map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.failures.join("; "))?;
    Ok(format!("n = 3..5, {} samples per property", r.samples))
}

fn residual_probe() -> Outcome {
    let group = GnGroup::new(3, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut taken = 0;
    let mut max_k = 0;
    while taken < 100 {
        let g = group.sample_g(&mut rng, 9);
        // scale the vector part so higher k actually occur
        let scale = BigInt::from(rng.gen_range(1i64..=64));
        let a: Vec<BigInt> = g.vector().iter().map(|x| x * &scale).collect();
        let g = GroupElement::new(g.matrix().clone(), a).unwrap();
        if g.is_identity() {
            continue;
        }
        taken += 1;
        for p in [2u32, 3, 5] {
            let k = separate_in_p_quotient(&g, p).map_err(|e| e.to_string())?;
            let trivial_mod = |k: u32| {
                let q = BigInt::from(p).pow(k);
                let t = g.matrix().reduce_mod(&q);
                let a_zero = g.vector().iter().all(|x| (x % &q).is_zero());
                t == IntMatrix::identity(g.dim()).reduce_mod(&q) && a_zero
            };
            ensure(image_is_nontrivial(&g, p, k) && !trivial_mod(k), || format!("p={p}: trivial at k={k}"))?;
            if k > 1 {
                ensure(!image_is_nontrivial(&g, p, k - 1) && trivial_mod(k - 1), || {
                    format!("p={p}: k={k} is not minimal")
                })?;
            }
            max_k = max_k.max(k);
        }
    }
    let id = GroupElement::identity(group.dim());
    ensure(separate_in_p_quotient(&id, 2).is_err(), || "identity was separated".into())?;
    let g = GroupElement::from_vector(basis_vector(group.dim(), 1).iter().map(|x| x * 8).collect());
    ensure(separate_in_p_quotient(&g, 2) == Ok(4), || "8 e_1 at p = 2".into())?;
    Ok(format!("100 elements, p in {{2,3,5}}, k minimal, max k = {max_k}"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for run in 0..2 {
        let path = dir.path().join(format!("cert{run}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_malcev-forge"))
            .args(["verify", "--c", "3", "--n", "3", "--e", "1,2", "--trials", "300", "--seed", "42", "--out"])
            .arg(&path)
            .stderr(std::process::Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.code() == Some(0), || format!("run {run} exited with {status}"))?;
        files.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure(files[0] == files[1], || "certificate files differ".into())?;

    let mut params = GnParams::new(3, 4, vec![1, 2]);
    params.seed = 42;
    let one = build_gn(&params).unwrap().to_json_string();
    let two = build_gn(&params).unwrap().to_json_string();
    ensure(one == two, || "in-process certificates differ".into())?;
    Ok(format!("two CLI runs, {} identical bytes", files[0].len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("polynomial identities", polynomial_identities),
        ("word/criterion equivalence", lemma_equivalence),
        ("construction facts", construction_facts),
        ("conditions (i)-(iii)", conditions),
        ("congruence", congruence),
        ("law separation", law_separation),
        ("negative control c = 2", negative_control),
        ("closure and normality", closure),
        ("residual-p probe", residual_probe),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
