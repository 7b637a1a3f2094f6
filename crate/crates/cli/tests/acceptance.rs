//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::io::Write;
use std::ops::RangeInclusive;
use std::process::{Command, Stdio};

use affschur::cell::{pi1, pi1_decompose, pi1_decompose_solver, CellVector};
use affschur::hecke::phi;
use affschur::mult::doublecoset_product;
use affschur::mult::formulas::{
    chevalley_left, chevalley_left_factor, chevalley_right, chevalley_right_factor, loop_factor, loop_left, Direction,
};
use affschur::mult::multiply_basis_oracle;
use affschur::weyl::{matrix_to_pair, IndexTuple};
use affschur::{
    identity_element, multiply, multiply_oracle, AlgebraElement, Composition, HeckeElement, PeriodicMatrix,
};
use num::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn mat(n: u32, es: &[(i64, i64, u32)]) -> PeriodicMatrix {
    PeriodicMatrix::from_entries(n, es.iter().copied()).unwrap()
}

fn e(n: u32, es: &[(i64, i64, u32)]) -> AlgebraElement {
    AlgebraElement::basis(mat(n, es))
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// A matrix whose row `i` carries `rows.part(i)` units in columns `cols(i)`.
fn with_rows(rng: &mut ChaCha8Rng, rows: &Composition, cols: impl Fn(i64) -> RangeInclusive<i64>) -> PeriodicMatrix {
    let n = rows.n();
    let mut es = Vec::new();
    for i in 1..=n as i64 {
        for _ in 0..rows.part(i) {
            es.push((i, rng.gen_range(cols(i)), 1));
        }
    }
    PeriodicMatrix::from_entries(n, es).unwrap()
}

fn random_composition(rng: &mut ChaCha8Rng, n: u32, r: u32) -> Composition {
    let mut parts = vec![0u32; n as usize];
    for _ in 0..r {
        parts[rng.gen_range(0..n as usize)] += 1;
    }
    Composition::new(parts).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, n: u32, r: u32, spread: i64) -> PeriodicMatrix {
    let rows = random_composition(rng, n, r);
    with_rows(rng, &rows, |i| i - spread..=i + spread)
}

fn golden_identities() -> Outcome {
    let e_mu = e(2, &[(2, 2, 2)]);
    let e_nu = e(2, &[(1, 1, 1), (2, 2, 1)]);
    let e_lambda = e(2, &[(1, 1, 2)]);

    let p = multiply(&e(2, &[(2, 1, 2)]), &e(2, &[(1, 2, 2)])).unwrap();
    check(p == e_mu, || format!("e(2E21) e(2E12) = {p}"))?;

    let p = multiply(&e(2, &[(1, 1, 1), (2, 1, 1)]), &e(2, &[(1, 1, 1), (1, 2, 1)])).unwrap();
    let want = &e(2, &[(1, 2, 1), (2, 1, 1)]) + &e_nu;
    check(p == want, || format!("e(E11+E21) e(E11+E12) = {p}"))?;

    let t1 = phi(&HeckeElement::t1());
    let t2 = phi(&HeckeElement::t2());
    let t1_nu = &t1 + &e_nu;
    let p = &(&e(2, &[(1, 1, 1), (1, 2, 1)]) * &t1_nu) * &e(2, &[(1, 1, 1), (2, 1, 1)]);
    let want = e_lambda.scale(&int(4));
    check(p == want, || format!("e(E11+E12) (T1 + e_nu) e(E11+E21) = {p}"))?;

    check(&t1 * &t1 == e_nu, || format!("T1^2 = {}", &t1 * &t1))?;
    let h1 = HeckeElement::t1();
    check(&h1 * &h1 == HeckeElement::one(), || {
        "T1^2 != 1 in the Hecke algebra".into()
    })?;

    let rho = phi(&HeckeElement::t_rho());
    let rho_inv = phi(&HeckeElement::t_rho_inv());
    let p = &(&rho_inv * &t1_nu) * &rho;
    let want = &t2 + &e_nu;
    check(p == want, || format!("T_rho^-1 (T1 + e_nu) T_rho = {p}"))?;

    Ok("five identities exact".into())
}

const PARAMS: [(u32, u32); 3] = [(2, 2), (2, 3), (3, 3)];
const INSTANCES: usize = 200;

/// Draws until `INSTANCES` applicable cases agree; `sample` returns `None`
/// for an inapplicable draw and `Some(Err)` on a disagreement.
fn agree(
    rng: &mut ChaCha8Rng,
    label: &str,
    mut sample: impl FnMut(&mut ChaCha8Rng) -> Option<Result<(), String>>,
) -> Result<(), String> {
    let mut hits = 0;
    let mut draws = 0;
    while hits < INSTANCES {
        draws += 1;
        if draws > 100 * INSTANCES {
            return Err(format!("{label}: only {hits} applicable instances"));
        }
        match sample(rng) {
            None => {}
            Some(Ok(())) => hits += 1,
            Some(Err(msg)) => return Err(format!("{label}: {msg}")),
        }
    }
    Ok(())
}

fn direction(rng: &mut ChaCha8Rng) -> Direction {
    if rng.gen_bool(0.5) {
        Direction::Up
    } else {
        Direction::Down
    }
}

fn oracle_formula_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (n, r) in PARAMS {
        let tag = |what: &str| format!("{what} at ({n},{r})");
        agree(&mut rng, &tag("chevalley_left"), |rng| {
            let a = random_matrix(rng, n, r, 3);
            let (h, m, dir) = (rng.gen_range(1..=n as i64), rng.gen_range(1..=r), direction(rng));
            let g = chevalley_left_factor(h, m, dir, &a.row_vector()).ok()?;
            let want = multiply_basis_oracle(&g, &a).unwrap();
            Some(match chevalley_left(h, m, dir, &a) {
                Ok(got) if got == want => Ok(()),
                got => Err(format!("h={h} m={m} {dir:?} A={a}: {got:?} vs {want}")),
            })
        })?;
        agree(&mut rng, &tag("chevalley_right"), |rng| {
            let a = random_matrix(rng, n, r, 3);
            let (h, m, dir) = (rng.gen_range(1..=n as i64), rng.gen_range(1..=r), direction(rng));
            let g = chevalley_right_factor(h, m, dir, &a.col_vector()).ok()?;
            let want = multiply_basis_oracle(&a, &g).unwrap();
            Some(match chevalley_right(h, m, dir, &a) {
                Ok(got) if got == want => Ok(()),
                got => Err(format!("h={h} m={m} {dir:?} A={a}: {got:?} vs {want}")),
            })
        })?;
        agree(&mut rng, &tag("loop_left"), |rng| {
            let a = random_matrix(rng, n, r, 3);
            let h = rng.gen_range(1..=n as i64);
            let m = [-2, -1, 1, 2][rng.gen_range(0..4)];
            let g = loop_factor(h, m, &a.row_vector()).ok()?;
            let want = multiply_basis_oracle(&g, &a).unwrap();
            Some(match loop_left(h, m, &a) {
                Ok(got) if got == want => Ok(()),
                got => Err(format!("h={h} m={m} A={a}: {got:?} vs {want}")),
            })
        })?;
        agree(&mut rng, &tag("doublecoset_product"), |rng| {
            let (i, j) = matrix_to_pair(&random_matrix(rng, n, r, 3));
            let l: Vec<i64> = (0..r).map(|_| rng.gen_range(-3..=3 + n as i64)).collect();
            let l = IndexTuple::new(n, l).unwrap();
            let want = multiply_oracle((&i, &j), (&j, &l)).unwrap();
            Some(match doublecoset_product((&i, &j), (&j, &l)) {
                Ok(got) if got == want => Ok(()),
                got => Err(format!("i={i} j={j} l={l}: {got:?} vs {want}")),
            })
        })?;
    }
    Ok(format!(
        "4 routes x {INSTANCES} instances x {} parameter pairs agree with the oracle",
        PARAMS.len()
    ))
}

fn associativity_and_unit() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, r) in [(2, 2), (2, 3)] {
        let one = identity_element(n, r).unwrap();
        for _ in 0..INSTANCES {
            let a = random_matrix(&mut rng, n, r, 2);
            let b = with_rows(&mut rng, &a.col_vector(), |i| i - 2..=i + 2);
            let c = with_rows(&mut rng, &b.col_vector(), |i| i - 2..=i + 2);
            let (x, y, z) = (
                AlgebraElement::basis(a),
                AlgebraElement::basis(b),
                AlgebraElement::basis(c),
            );
            let lhs = &(&x * &y) * &z;
            let rhs = &x * &(&y * &z);
            check(lhs == rhs, || format!("(xy)z != x(yz) for {x}, {y}, {z}"))?;
            check(&one * &x == x && &x * &one == x, || format!("1 is not a unit on {x}"))?;
        }

        // Vanishing on mismatch and the one-sided unit law of e_λ.
        for _ in 0..INSTANCES {
            let a = random_matrix(&mut rng, n, r, 2);
            let b = random_matrix(&mut rng, n, r, 2);
            let (x, y) = (AlgebraElement::basis(a.clone()), AlgebraElement::basis(b.clone()));
            if a.col_vector() != b.row_vector() {
                check((&x * &y).is_zero(), || format!("{x} {y} should vanish"))?;
            }
            let left = AlgebraElement::idempotent(&a.row_vector());
            let right = AlgebraElement::idempotent(&a.col_vector());
            check(&left * &x == x && &x * &right == x, || {
                format!("e_row, e_col do not fix {x}")
            })?;
        }

        // 1 = Σ e_λ is a sum of orthogonal idempotents.
        let all = Composition::all(n, r);
        let mut sum = AlgebraElement::zero(n, r);
        for l in &all {
            let el = AlgebraElement::idempotent(l);
            for m in &all {
                let p = &el * &AlgebraElement::idempotent(m);
                let want = if l == m { el.clone() } else { AlgebraElement::zero(n, r) };
                check(p == want, || format!("e_{l} e_{m} = {p}"))?;
            }
            sum = &sum + &el;
        }
        check(sum == one, || format!("Σ e_λ != 1 at ({n},{r})"))?;
    }
    Ok(format!(
        "{INSTANCES} triples each at (2,2) and (2,3); idempotent identities exact"
    ))
}

fn rank_one_commutativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut count = 0;
    for r in 1..=3 {
        for _ in 0..40 {
            let x = AlgebraElement::basis(random_matrix(&mut rng, 1, r, 3));
            let y = AlgebraElement::basis(random_matrix(&mut rng, 1, r, 3));
            check(&x * &y == &y * &x, || format!("{x} and {y} do not commute"))?;
            count += 1;
        }
    }
    Ok(format!("{count} products at n = 1 commute"))
}

fn degrees() -> Outcome {
    let grades: Vec<i64> = pi1().iter().map(|a| a.grade().unwrap()).collect();
    check(grades == [1, 3, 0, 2], || format!("Π₁ grades {grades:?}"))?;
    let xs = [
        mat(2, &[(1, 1, 1), (1, 3, 1)]),
        mat(2, &[(1, 3, 2)]),
        mat(2, &[(3, 1, 2)]),
    ];
    let grades: Vec<i64> = xs.iter().map(|a| a.grade().unwrap()).collect();
    check(grades == [2, 4, -4], || format!("x1, x2, x2^-1 grades {grades:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut count = 0;
    for (n, r) in PARAMS {
        for k in 0..40 {
            let upper = |i: i64| i..=i + 4;
            let rows = random_composition(&mut rng, n, r);
            let mut a = with_rows(&mut rng, &rows, upper);
            let mut b = with_rows(&mut rng, &a.col_vector(), upper);
            if k % 2 == 1 {
                (a, b) = (b.transpose(), a.transpose());
            }
            let want = a.grade().unwrap() + b.grade().unwrap();
            let p = multiply(&AlgebraElement::basis(a.clone()), &AlgebraElement::basis(b.clone())).unwrap();
            for (c, _) in p.terms() {
                check(c.grade() == Ok(want), || {
                    format!("{a} · {b} has term {c} of grade {:?}, want {want}", c.grade())
                })?;
            }
            count += 1;
        }
    }
    Ok(format!(
        "printed degrees exact; additivity on {count} triangular products"
    ))
}

fn freeness_round_trip() -> Outcome {
    let mut targets = Vec::new();
    for i in -9..=9 {
        for j in i..=9 {
            targets.push(e(2, &[(1, i, 1), (1, j, 1)]));
        }
    }
    let solved = pi1_decompose_solver(&targets, 9);
    for (x, s) in targets.iter().zip(solved) {
        let v: CellVector = pi1_decompose(x).map_err(|err| format!("{x}: {err}"))?;
        check(&v.recompose() == x, || format!("{x} recomposes to {}", v.recompose()))?;
        let s = s.map_err(|err| format!("solver on {x}: {err}"))?;
        check(s == v, || format!("solver and recurrences disagree on {x}"))?;
    }
    Ok(format!(
        "{} elements recompose; solver unique and in agreement",
        targets.len()
    ))
}

fn run_cli(args: &[&str]) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_affschur"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .env_remove("AFFSCHUR_MAX_WINDOW")
        .spawn()
        .expect("spawn affschur");
    child.stdin.take().unwrap().write_all(b"").unwrap();
    let out = child.wait_with_output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

fn status_of<'a>(report: &'a Value, name: &str) -> &'a str {
    report["checks"]
        .as_array()
        .and_then(|cs| cs.iter().find(|c| c["name"] == name))
        .and_then(|c| c["status"].as_str())
        .unwrap_or("missing")
}

const CHECKS: [&str; 7] = [
    "tau_stable_ideal",
    "ideal_certificates",
    "freeness",
    "omega_independence",
    "tau_alpha_diagram",
    "alpha_round_trip",
    "quotient",
];

fn certification() -> Outcome {
    let (code, report) = run_cli(&["verify-cell", "--window", "12", "--seed", "0", "--samples", "100"]);
    for name in CHECKS {
        let s = status_of(&report, name);
        check(s == "pass", || format!("{name}: {s}"))?;
    }
    check(report["pass"] == true, || "report not marked pass".into())?;
    check(code == 0, || format!("exit code {code}"))?;
    Ok("all seven checks pass, exit 0".into())
}

fn negative_controls() -> Outcome {
    for tamper in ["tau", "sigma"] {
        let (code, report) = run_cli(&[
            "verify-cell",
            "--window",
            "12",
            "--seed",
            "0",
            "--samples",
            "100",
            "--tamper",
            tamper,
        ]);
        let s = status_of(&report, "tau_alpha_diagram");
        check(s == "fail", || format!("--tamper {tamper}: diagram {s}"))?;
        check(code == 1, || format!("--tamper {tamper}: exit code {code}"))?;
    }
    let (code, report) = run_cli(&["verify-cell", "--window", "1", "--seed", "0", "--samples", "100"]);
    check(code == 3, || format!("window 1: exit code {code}"))?;
    check(report["pass"] == false, || "window 1 reported a pass".into())?;
    let failed: Vec<&str> = CHECKS.into_iter().filter(|n| status_of(&report, n) == "fail").collect();
    check(failed.is_empty(), || format!("window 1 produced failures: {failed:?}"))?;
    Ok("τ and σ tampering break the diagram; window 1 exits 3".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("golden identities", golden_identities),
        ("oracle and formula equivalence", oracle_formula_equivalence),
        ("associativity and unit", associativity_and_unit),
        ("n = 1 commutativity", rank_one_commutativity),
        ("degrees", degrees),
        ("freeness round trip", freeness_round_trip),
        ("cellularity certification", certification),
        ("negative controls", negative_controls),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
