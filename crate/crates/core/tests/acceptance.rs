//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Criteria whose printed source data is wrong report FAIL for the printed
//! form. The process exits nonzero only when an outcome differs from the
//! recorded one, so a printed-form FAIL that stays a FAIL keeps the suite
//! green while a regression anywhere turns it red.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use evoalg::cea::dynamics::near_boundary;
use evoalg::cea::family::{ChainFamilySpec, FamilyId, Slot, TimePair};
use evoalg::cea::verify::{verify_ck, verify_ck_with, Sampling};
use evoalg::cea::{classify_dynamics, expected_class};
use evoalg::classify::{classify, is_e4_shape, Tag};
use evoalg::rb::{rb_equations, rb_jacobian};
use evoalg::rotabaxter::catalog::{row_count, table, AlternateKind};
use evoalg::rotabaxter::exclusions::{control, verify_exclusions, XY_TOL};
use evoalg::rotabaxter::poly::{parse_equation, Poly};
use evoalg::rotabaxter::search::{search, SearchOptions};
use evoalg::rotabaxter::system::{derive_system, SymbolicAlgebra};
use evoalg::rotabaxter::verify::{verify_all, verify_alternate, VerifyOptions};
use evoalg::scalar::{c, r, Field, Scalar};
use evoalg::{rb_residual, Matrix, RotaBaxterOperator, StructureMatrix, Weight};

const RB_TOL: f64 = 1e-9;
const CK_TOL: f64 = 1e-9;
const CK_SAMPLES: usize = 1000;
const GRID: usize = 100;
const BOUNDARY: f64 = 1e-6;
const RECOVER_TOL: f64 = 1e-6;
const FD_STEP: f64 = 1e-6;
const FD_REL: f64 = 1e-5;
const BRUTE_TOL: f64 = 1e-12;

struct Outcome {
    pass: bool,
    /// The outcome matches the one recorded for this criterion.
    recorded: bool,
    detail: String,
}

impl Outcome {
    /// A criterion expected to pass.
    fn met(pass: bool, detail: String) -> Self {
        Self {
            pass,
            recorded: pass,
            detail,
        }
    }
}

fn criterion_1() -> Outcome {
    let t0 = Instant::now();
    let opts = VerifyOptions {
        samples: 200,
        tol: RB_TOL,
        ..VerifyOptions::default()
    };
    let mut failed = Vec::new();
    let mut families = 0;
    let mut alt_unexpected = Vec::new();
    let mut printed_fail = Vec::new();
    for w in [Weight::Zero, Weight::One] {
        let fams = table(w);
        families += fams.len();
        for rep in verify_all(&fams, &opts) {
            let continuous = rep.samples != 1;
            if !rep.pass || (continuous && rep.samples < 200) {
                failed.push(rep.to_string());
            }
        }
        for f in &fams {
            if let Some(rep) = verify_alternate(f, &opts) {
                let kind = f.alternate.as_ref().unwrap().kind;
                if kind == AlternateKind::Erratum {
                    printed_fail.push(f.id.clone());
                }
                if rep.pass != (kind == AlternateKind::Equivalent) {
                    alt_unexpected.push(rep.to_string());
                }
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    let rows = (row_count(Weight::Zero), row_count(Weight::One));
    let pass = failed.is_empty() && alt_unexpected.is_empty() && secs < 30.0 && rows == (8, 16);
    Outcome::met(
        pass,
        format!(
            "{families} families in {}+{} rows (the weight-1 table has 16 rows, not 17), \
             {} failed, {secs:.2}s; printed forms {printed_fail:?} fail as recorded; {}",
            rows.0,
            rows.1,
            failed.len(),
            if alt_unexpected.is_empty() {
                "alternates as recorded".to_string()
            } else {
                alt_unexpected.join("; ")
            }
        ),
    )
}

fn golden_polys(text: &str, names: &[&str]) -> (Vec<Poly>, Vec<Poly>) {
    let mut eqs = Vec::new();
    let mut tautologies = Vec::new();
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let p = parse_equation(line, names).unwrap_or_else(|e| panic!("{line}: {e}"));
        if p.is_zero() {
            let lhs = line.split_once('=').unwrap().0;
            tautologies.push(parse_equation(lhs, names).unwrap());
        } else {
            eqs.push(p);
        }
    }
    (eqs, tautologies)
}

fn normalized(polys: &[Poly], names: &[String]) -> Vec<String> {
    let mut v: Vec<String> = polys
        .iter()
        .map(|p| p.monic().render_ascii(names))
        .collect();
    v.sort();
    v.dedup();
    v
}

fn criterion_2() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/systems");
    let mut bad = Vec::new();
    let mut checked = 0;
    let mut logged = 0;
    for tag in [Tag::E1, Tag::E2, Tag::E3, Tag::E4, Tag::E5, Tag::E6] {
        for w in [Weight::Zero, Weight::One] {
            let file = dir.join(format!("{tag}_w{w}.txt"));
            let text = fs::read_to_string(&file).unwrap();
            let alg = SymbolicAlgebra::canonical(tag);
            let sys = derive_system(&alg, w);
            let names: Vec<&str> = sys.names.iter().map(String::as_str).collect();
            let (eqs, tauts) = golden_polys(&text, &names);
            let same_strings =
                normalized(&eqs, &sys.names) == normalized(&sys.equations, &sys.names);
            let taut_ok = tauts.iter().all(|t| {
                sys.raw
                    .iter()
                    .any(|e| e.difference().is_zero() && e.lhs.sub(t).prune(1e-12).is_zero())
            });
            logged += sys.tautologies.len();
            if !(sys.equivalent_to(&eqs, 1e-12) && same_strings && taut_ok) {
                bad.push(format!("{tag} w{w}"));
            }
            checked += 1;
        }
    }
    Outcome::met(
        bad.is_empty(),
        format!("{checked} golden systems, {logged} tautologies logged, mismatches {bad:?}"),
    )
}

/// M1 with `phi(s)` in place of `phi(t)` in the off-diagonal entry.
fn m1_mutant(spec: &ChainFamilySpec, p: TimePair) -> Result<Matrix, evoalg::cea::CeaError> {
    let rho = spec.function(Slot::Rho).eval(p.s)?;
    let phs = spec.function(Slot::Phi).eval(p.s)?;
    let pht = spec.function(Slot::Phi).eval(p.t)?;
    Ok(Matrix::real(&[&[0.0, rho * phs], &[0.0, pht / phs]])?)
}

/// The chain is the zero matrix at every sampled time pair.
fn identically_zero(spec: &ChainFamilySpec) -> bool {
    Sampling::default()
        .triples(200, 99)
        .iter()
        .all(|&(s, tau, t)| {
            [(s, tau), (tau, t), (s, t)].iter().all(|&(u, v)| {
                spec.matrix(TimePair::new(u, v).unwrap())
                    .is_ok_and(|m| m.is_zero(0.0))
            })
        })
}

fn criterion_3() -> Outcome {
    let t0 = Instant::now();
    let mut by_family: BTreeMap<FamilyId, Vec<(bool, bool)>> = BTreeMap::new();
    let mut errors = Vec::new();
    for (i, spec) in common::chain_instances().iter().enumerate() {
        match verify_ck(spec, CK_SAMPLES, i as u64, CK_TOL) {
            Ok(rep) => by_family
                .entry(spec.id())
                .or_default()
                .push((rep.pass, identically_zero(spec))),
            Err(e) => errors.push(format!("{}: {e}", spec.id())),
        }
    }
    let m1 = &common::chain_instances()[0];
    let mutant = verify_ck_with(
        "M1 mutant",
        |p| m1_mutant(m1, p),
        CK_SAMPLES,
        0,
        CK_TOL,
        Default::default(),
    )
    .unwrap();
    let secs = t0.elapsed().as_secs_f64();
    let verdict: Vec<String> = by_family
        .iter()
        .map(|(id, v)| format!("{id} {}/{}", v.iter().filter(|(p, _)| *p).count(), v.len()))
        .collect();
    let all_pass = by_family.values().flatten().all(|(p, _)| *p);
    // Strictly triangular M5..M8 multiply to zero, so only M1..M4 and chains
    // that vanish everywhere can hold.
    let recorded = by_family.iter().all(|(id, v)| {
        let holds = matches!(
            id,
            FamilyId::M1 | FamilyId::M2 | FamilyId::M3 | FamilyId::M4
        );
        v.len() == 3 && v.iter().all(|(p, zero)| *p == (holds || *zero))
    });
    let ok = !mutant.pass && errors.is_empty() && secs < 10.0;
    Outcome {
        pass: all_pass && ok,
        recorded: recorded && ok,
        detail: format!(
            "{}; mutant {} ({:e}); {secs:.2}s; M5-M8 fail as recorded except where the chain vanishes{}",
            verdict.join(", "),
            if mutant.pass { "PASS" } else { "FAIL" },
            mutant.max_violation,
            errors.iter().map(|e| format!("; {e}")).collect::<String>()
        ),
    }
}

fn criterion_4() -> Outcome {
    let mut total = 0usize;
    let mut agree = 0usize;
    let mut skipped = 0usize;
    let mut first_bad = None;
    let t_max = 8.0;
    let h = t_max / GRID as f64;
    for (n, spec) in common::chain_instances().iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + n as u64);
        for i in 0..GRID {
            for j in 0..GRID {
                let s = (i as f64 + rng.gen_range(0.0..1.0)) * h;
                let t = (j as f64 + rng.gen_range(0.0..1.0)) * h;
                if s >= t {
                    continue;
                }
                let p = TimePair::new(s, t).unwrap();
                let Some(want) = expected_class(spec, p).unwrap() else {
                    skipped += 1;
                    continue;
                };
                if near_boundary(spec, p, BOUNDARY).unwrap() {
                    skipped += 1;
                    continue;
                }
                total += 1;
                let got = classify_dynamics(spec, p, Field::Complex).map(|c| c.tag);
                if got.as_ref() == Ok(&want) {
                    agree += 1;
                } else if first_bad.is_none() {
                    first_bad = Some(format!(
                        "{} at ({s}, {t}): want {want}, got {got:?}",
                        spec.id()
                    ));
                }
            }
        }
    }
    Outcome::met(
        agree == total && total > 0,
        format!(
            "{agree}/{total} cells agree over 24 instances, {skipped} skipped (off-table or boundary){}",
            first_bad.map(|b| format!("; first mismatch {b}")).unwrap_or_default()
        ),
    )
}

fn shape_oracle(e: [i32; 4]) -> bool {
    let [a11, a12, a21, a22] = e;
    (a11 == 0 && a21 == 0 && a22 == 0 && a12 != 0) || (a11 == 0 && a12 == 0 && a22 == 0 && a21 != 0)
}

fn criterion_5() -> Outcome {
    let vals = [-1, 0, 1, 2];
    let mut n = 0;
    let mut shape_bad = Vec::new();
    let mut class_bad = Vec::new();
    for &a in &vals {
        for &b in &vals {
            for &cc in &vals {
                for &d in &vals {
                    n += 1;
                    let e = [a, b, cc, d];
                    let m = StructureMatrix::real(&[&[a as f64, b as f64], &[cc as f64, d as f64]])
                        .unwrap();
                    let want = shape_oracle(e);
                    if is_e4_shape(&m).unwrap().is_some() != want {
                        shape_bad.push(e);
                    }
                    for field in [Field::Complex, Field::Real] {
                        let tag = classify(&m, field).map(|c| c.tag);
                        if want != (tag == Ok(Tag::E4)) {
                            class_bad.push((e, field, tag));
                        }
                    }
                }
            }
        }
    }
    Outcome::met(
        shape_bad.is_empty() && class_bad.is_empty(),
        format!(
            "{n} matrices, shape disagreements {}, classification disagreements {}{}",
            shape_bad.len(),
            class_bad.len(),
            class_bad
                .first()
                .map(|b| format!(" (first {b:?})"))
                .unwrap_or_default()
        ),
    )
}

fn criterion_6() -> Outcome {
    let checks = verify_exclusions();
    let mut bad = Vec::new();
    for chk in &checks {
        let isolated = !chk.case.starts_with("Case B")
            && !chk.case.starts_with("Case C")
            && !chk.case.starts_with("Case 2.1");
        if !(chk.max_xy_gap < XY_TOL && chk.excluded && (isolated || chk.samples >= 10)) {
            bad.push(chk.to_string());
        }
    }
    let ctrl = control();
    let printed_a = checks
        .iter()
        .find(|c| c.case.contains("as printed"))
        .unwrap();
    Outcome::met(
        bad.is_empty() && !ctrl.excluded,
        format!(
            "{} candidates with xy = 1, parametric ones at {} values; printed Case A(a) values \
             leave residual {:e} (x = y = -1 solves); control kept; {}",
            checks.len(),
            checks.iter().map(|c| c.samples).max().unwrap_or(0),
            printed_a.max_residual,
            if bad.is_empty() {
                "no failures".into()
            } else {
                bad.join("; ")
            }
        ),
    )
}

fn recovered(points: &[Matrix], want: &[Matrix]) -> usize {
    want.iter()
        .filter(|w| points.iter().any(|p| p.max_abs_diff(w) < RECOVER_TOL))
        .count()
}

fn criterion_7() -> Outcome {
    let t0 = Instant::now();
    let e6 = StructureMatrix::from_rows(&[[r(0.0), r(1.0)], [r(1.0), r(0.0)]]).unwrap();
    let opts = SearchOptions {
        starts: 2000,
        ..SearchOptions::default()
    };
    let pts: Vec<Matrix> = search(&e6, Weight::One, &opts)
        .unwrap()
        .into_iter()
        .map(|p| p.operator)
        .collect();
    let printed = recovered(&pts, &common::e6_zero_solutions(true));
    let corrected = recovered(&pts, &common::e6_zero_solutions(false));

    let e2 = StructureMatrix::from_rows(&[[r(1.0), r(0.0)], [r(1.0), r(0.0)]]).unwrap();
    let pts2 = search(&e2, Weight::Zero, &SearchOptions::default()).unwrap();
    let i = c(0.0, 1.0);
    let mut on = [0usize; 2];
    let mut off = 0;
    for p in &pts2 {
        let m = &p.operator;
        let (a, b, cc, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let head = a.norm().max(b.norm());
        if head < RECOVER_TOL && (d - i * cc).norm() < RECOVER_TOL {
            on[0] += 1;
        } else if head < RECOVER_TOL && (d + i * cc).norm() < RECOVER_TOL {
            on[1] += 1;
        } else {
            off += 1;
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    let lines_ok = off == 0 && on[0] > 0 && on[1] > 0;
    let corrected_ok = corrected == 10 && pts.len() == 10 && lines_ok && secs < 60.0;
    Outcome {
        pass: printed == 10 && corrected_ok,
        recorded: printed == 9 && corrected_ok,
        detail: format!(
            "E6(0) w1: {} points, printed set {printed}/10, corrected set {corrected}/10 \
             (the 7th printed matrix is not a solution); E2 w0: {} points, {} and {} on the lines, {off} off; {secs:.2}s",
            pts.len(),
            pts2.len(),
            on[0],
            on[1]
        ),
    }
}

/// `P(x)P(y) - P(x P(y) + P(x) y + lambda x y)` for basis vectors, computed
/// from scratch: `P(e_i) = sum_p r_ip e_p`, `e_p e_p = sum_k a_pk e_k`.
fn brute_force(
    a: &[Vec<Scalar>],
    rm: &[Vec<Scalar>],
    lambda: Scalar,
    i: usize,
    j: usize,
) -> Vec<Scalar> {
    let n = a.len();
    let prod = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        (0..n)
            .map(|k| (0..n).map(|p| x[p] * y[p] * a[p][k]).sum())
            .collect()
    };
    let op = |x: &[Scalar]| -> Vec<Scalar> {
        (0..n)
            .map(|q| (0..n).map(|p| x[p] * rm[p][q]).sum())
            .collect()
    };
    let e = |i: usize| -> Vec<Scalar> {
        (0..n)
            .map(|k| if k == i { r(1.0) } else { r(0.0) })
            .collect()
    };
    let (x, y) = (e(i), e(j));
    let (px, py) = (op(&x), op(&y));
    let lhs = prod(&px, &py);
    let inner: Vec<Scalar> = prod(&x, &py)
        .iter()
        .zip(prod(&px, &y))
        .zip(prod(&x, &y))
        .map(|((u, v), w)| u + v + lambda * w)
        .collect();
    let rhs = op(&inner);
    lhs.iter().zip(rhs).map(|(u, v)| u - v).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|_| {
            (0..n)
                .map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                .collect()
        })
        .collect()
}

fn to_matrix(rows: &[Vec<Scalar>]) -> Matrix {
    Matrix::from_rows(rows).unwrap()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_fd = 0.0f64;
    for (_, a) in common::sample_algebras() {
        for w in [Weight::Zero, Weight::One] {
            let lambda = w.value();
            for _ in 0..100 {
                let z: Vec<Scalar> = (0..4)
                    .map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
                    .collect();
                let rm = Matrix::new(2, z.clone()).unwrap();
                let jac = rb_jacobian(&a, &rm, lambda).unwrap();
                for col in 0..4 {
                    let shifted = |h: f64| {
                        let mut zz = z.clone();
                        zz[col] += h;
                        rb_equations(&a, &Matrix::new(2, zz).unwrap(), lambda).unwrap()
                    };
                    let (fp, fm) = (shifted(FD_STEP), shifted(-FD_STEP));
                    for (row, jr) in jac.iter().enumerate() {
                        let fd = (fp[row] - fm[row]) / (2.0 * FD_STEP);
                        worst_fd = worst_fd.max((fd - jr[col]).norm() / jr[col].norm().max(1.0));
                    }
                }
            }
        }
    }
    let mut worst_brute = 0.0f64;
    for n in [2usize, 3] {
        for _ in 0..200 {
            let a = random_matrix(&mut rng, n);
            let rm = random_matrix(&mut rng, n);
            let sa = StructureMatrix::new(to_matrix(&a));
            for w in [Weight::Zero, Weight::One] {
                let res = rb_residual(&sa, &RotaBaxterOperator::new(to_matrix(&rm), w)).unwrap();
                for i in 0..n {
                    for j in 0..n {
                        let bf = brute_force(&a, &rm, w.value(), i, j);
                        for (u, v) in res.get(i, j).iter().zip(bf) {
                            worst_brute = worst_brute.max((u - v).norm());
                        }
                    }
                }
            }
        }
    }
    Outcome::met(
        worst_fd < FD_REL && worst_brute < BRUTE_TOL,
        format!("Jacobian vs central differences worst relative {worst_fd:e}; residual vs brute force worst {worst_brute:e}"),
    )
}

fn run_cli(args: &[&str]) -> i32 {
    let args: Vec<String> = std::iter::once("evoalg")
        .chain(args.iter().copied())
        .map(String::from)
        .collect();
    evoalg::cli::run(args, &mut Vec::new(), &mut Vec::new())
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let d = |f: &str| data.join(f).to_string_lossy().into_owned();
    let commands: Vec<(&str, Vec<String>)> = vec![
        ("classify", vec!["classify".into(), d("e5.txt")]),
        (
            "cea-verify",
            vec!["cea".into(), "verify".into(), d("m5.toml")],
        ),
        (
            "cea-diagram",
            vec!["cea".into(), "diagram".into(), d("m5.toml")],
        ),
        (
            "rbo-verify",
            vec![
                "rbo".into(),
                "verify".into(),
                "--samples".into(),
                "50".into(),
            ],
        ),
        (
            "rbo-search",
            vec![
                "rbo".into(),
                "search".into(),
                "--algebra".into(),
                "E6(0)".into(),
                "--weight".into(),
                "1".into(),
                "--starts".into(),
                "300".into(),
            ],
        ),
        (
            "rbo-systems",
            vec![
                "rbo".into(),
                "systems".into(),
                "--algebra".into(),
                "E5".into(),
                "--weight".into(),
                "1".into(),
            ],
        ),
    ];
    let mut differing = Vec::new();
    for (name, args) in &commands {
        let mut outputs = Vec::new();
        for (run, jobs) in ["1", "4"].iter().enumerate() {
            let out = dir.path().join(format!("{name}-{run}"));
            let out_s = out.to_string_lossy().into_owned();
            let mut full: Vec<&str> = args.iter().map(String::as_str).collect();
            full.extend(["--seed", "11", "--jobs", jobs, "--out", &out_s]);
            run_cli(&full);
            let file = if *name == "cea-diagram" {
                out.with_extension("csv")
            } else {
                out
            };
            outputs.push(fs::read(file).unwrap_or_default());
        }
        if outputs[0].is_empty() || outputs[0] != outputs[1] {
            differing.push(*name);
        }
    }
    Outcome::met(
        differing.is_empty(),
        format!(
            "{} commands, two runs each (1 and 4 jobs), differing {differing:?}",
            commands.len()
        ),
    )
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("full table verification", criterion_1),
        ("derived systems match golden files", criterion_2),
        ("Chapman-Kolmogorov", criterion_3),
        ("dynamics region table", criterion_4),
        ("E4 shape criterion", criterion_5),
        ("exclusion ledger", criterion_6),
        ("search completeness", criterion_7),
        ("numerical hygiene", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.recorded {
            unexpected += 1;
        }
        println!(
            "criterion {}: {} [{name}] {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria deviate from their recorded outcome");
        std::process::exit(1);
    }
}
