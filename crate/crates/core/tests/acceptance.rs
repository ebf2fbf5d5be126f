//! Acceptance criteria 1–8, one line each. Exits nonzero if any fails.

use std::time::{Duration, Instant};

use qbundle_core::algebra::BigRational;
use qbundle_core::appendix::{
    coefficients, module_m, module_n, nonflatness_witness, verify_intersection_equals_n, verify_n_free_rank9,
    BiformVector, WitnessStatus,
};
use qbundle_core::bundles::{minimum_dimension, DiagonalQuadricBundle};
use qbundle_core::maps::{
    generic_fiber_inverse, infer_sign_action, pullback_factorization, verify_projective_equivariance, CoverMap,
};
use qbundle_core::report::Status;
use qbundle_core::suites::{brauer_suite, run, SuiteOptions};

/// Hand transcription of the normal forms as (sign, t-exponents) per
/// coefficient, for the independent discriminant oracle.
const FORMS: [[(i32, [i32; 3]); 4]; 8] = [
    [(1, [0, 0, 0]), (-1, [0, 0, 0]), (1, [0, 0, 0]), (-1, [0, 0, 0])],
    [(1, [1, 0, 0]), (-1, [0, 0, 0]), (1, [0, 0, 0]), (-1, [0, 0, 0])],
    [(1, [1, 0, 0]), (-1, [1, 0, 0]), (1, [0, 0, 0]), (-1, [0, 0, 0])],
    [(1, [1, 1, 0]), (-1, [0, 1, 0]), (1, [0, 0, 0]), (-1, [0, 0, 0])],
    [(1, [1, 0, 0]), (-1, [0, 0, 0]), (1, [0, 1, 0]), (-1, [0, 1, 0])],
    [(1, [1, 1, 0]), (-1, [1, 0, 0]), (1, [0, 0, 0]), (-1, [0, 1, 0])],
    [(1, [1, 1, 1]), (-1, [0, 1, 0]), (1, [0, 0, 0]), (-1, [0, 0, 1])],
    [(1, [1, 1, 0]), (-1, [0, 1, 1]), (1, [0, 0, 1]), (-1, [0, 0, 0])],
];

fn oracle_discriminant(k: usize) -> String {
    let mut sign = 1;
    let mut e = [0; 3];
    for (s, x) in FORMS[k] {
        sign *= s;
        for i in 0..3 {
            e[i] += x[i];
        }
    }
    let mut parts = Vec::new();
    for (i, &x) in e.iter().enumerate() {
        match x {
            0 => {}
            1 => parts.push(format!("t{}", i + 1)),
            _ => parts.push(format!("t{}^{x}", i + 1)),
        }
    }
    let body = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
    if sign < 0 {
        format!("-{body}")
    } else {
        body
    }
}

fn criterion_1() -> Result<String, String> {
    for k in 1..=8u8 {
        let n = minimum_dimension(k).unwrap().max(1);
        let b = DiagonalQuadricBundle::table_entry(k, n).map_err(|e| e.to_string())?;
        let cert = b.flatness_certificate().map_err(|e| format!("entry {k}: {e}"))?;
        let c: BigRational = cert.coefficient.parse::<BigRational>().map_err(|e| e.to_string())?;
        if c != BigRational::from_integer(1.into()) && c != BigRational::from_integer((-1).into()) {
            return Err(format!("entry {k}: certificate coefficient {c}"));
        }
        let d = b.discriminant().to_string();
        let want = oracle_discriminant(k as usize - 1);
        if d != want {
            return Err(format!("entry {k}: discriminant {d}, oracle {want}"));
        }
    }
    Ok("8/8 entries certified, discriminants match the product oracle".into())
}

fn criterion_2() -> Result<String, String> {
    for k in 2..=8u8 {
        let map = CoverMap::section5_map_minimal(k).map_err(|e| e.to_string())?;
        let bundle = DiagonalQuadricBundle::table_entry(k, map.base_dimension()).map_err(|e| e.to_string())?;
        let f = pullback_factorization(&map, &bundle).map_err(|e| format!("entry {k}: {e}"))?;
        if f.residual.to_string() != "A^2 - B^2 + C^2 - D^2" {
            return Err(format!("entry {k}: residual {}", f.residual));
        }
        let square = f.monomial.as_monomial().is_some_and(|(e, c)| {
            e.iter().all(|x| x % 2 == 0) && *c == BigRational::from_integer(1.into())
        });
        if !square {
            return Err(format!("entry {k}: monomial {} is not a square", f.monomial));
        }
        let chi = infer_sign_action(&map).map_err(|e| format!("entry {k}: {e}"))?;
        let eq = verify_projective_equivariance(&map, &chi).map_err(|e| e.to_string())?;
        if !eq.passed {
            return Err(format!("entry {k}: equivariance failed"));
        }
        if !generic_fiber_inverse(&map).map_err(|e| e.to_string())?.passed() {
            return Err(format!("entry {k}: inverse failed"));
        }
    }
    Ok("7/7 maps factor, are equivariant and invert generically".into())
}

fn criterion_3() -> Result<String, String> {
    let n = module_n();
    let mut verified = 0;
    for i in 1..=3 {
        let m = module_m(i).map_err(|e| e.to_string())?;
        for j in 0..9 {
            let x = n.generator(j);
            let cs = coefficients(&x, &m).map_err(|e| e.to_string())?;
            let in_ring = cs.iter().all(|c| c.terms().all(|(e, _)| m.ring().admits(e)));
            let mut back = BiformVector::zero();
            for (k, c) in cs.iter().enumerate() {
                back = back.add(&m.generator(k).scale_by(c));
            }
            if !in_ring || back != x {
                return Err(format!("x{j} in M{i}: certificate does not verify"));
            }
            verified += 1;
        }
    }
    Ok(format!("{verified}/27 certificates back-substitute exactly"))
}

fn criterion_4() -> Result<String, String> {
    let r = verify_n_free_rank9().map_err(|e| e.to_string())?;
    if r.determinant == "0" || !r.passed {
        return Err(format!("determinant {}", r.determinant));
    }
    Ok(format!("det = {}", r.determinant))
}

fn criterion_5() -> Result<String, String> {
    let r = verify_intersection_equals_n(4).map_err(|e| e.to_string())?;
    if r.checked != 125 || !r.mismatches.is_empty() || !r.saturated {
        return Err(format!(
            "checked {}, mismatches {}, saturated {}",
            r.checked,
            r.mismatches.len(),
            r.saturated
        ));
    }
    Ok(format!("{} monomials equal, saturated at the boundary", r.checked))
}

fn criterion_6() -> Result<String, String> {
    let r = nonflatness_witness(None).map_err(|e| e.to_string())?;
    let passing: Vec<i32> = r.trials.iter().filter(|t| t.passed).map(|t| t.gamma_exponent).collect();
    if passing == vec![-1] {
        return Err("only the printed exponent -1 passes, contradicting the hand derivation".into());
    }
    if !passing.contains(&-2) || r.status == WitnessStatus::Fail {
        return Err(format!("passing exponents {passing:?}"));
    }
    let trial = r.trials.iter().find(|t| t.gamma_exponent == -2).unwrap();
    if !trial.x0_nonzero || trial.identities.iter().any(|i| !i.holds) {
        return Err("identities or x0 check failed for -2".into());
    }
    Ok(format!("identities hold for gamma exponent(s) {passing:?}; {}", r.note))
}

fn criterion_7() -> Result<String, String> {
    let r = brauer_suite(&SuiteOptions::default());
    let mut counts = Vec::new();
    for (name, need) in [
        ("hilbert symbol vs solubility oracle", 500),
        ("global product formula", 200),
        ("restriction then corestriction is zero", 100),
        ("quaternion descent instances", 20),
    ] {
        let item = r.items.iter().find(|i| i.name == name).ok_or(format!("missing {name}"))?;
        let passed = item.details["passed"].as_u64().unwrap_or(0);
        let total = item.details["total"].as_u64().unwrap_or(0);
        if item.status != Status::Pass || passed != total || total < need {
            return Err(format!("{name}: {passed}/{total}, need {need}"));
        }
        counts.push(format!("{passed}/{total}"));
    }
    Ok(format!("oracle, product, doubling, descent: {}", counts.join(", ")))
}

fn criterion_8() -> Result<String, String> {
    let opts = SuiteOptions {
        seed: 7,
        ..SuiteOptions::default()
    };
    let a = run("all", &opts).map_err(|e| e.to_string())?.to_json();
    let b = run("all", &opts).map_err(|e| e.to_string())?.to_json();
    if a != b {
        return Err("reports differ".into());
    }
    Ok(format!("two seed-7 reports identical ({} bytes)", a.len()))
}

type Criterion = fn() -> Result<String, String>;

fn main() {
    let criteria: [(u32, &str, Criterion, Duration); 8] = [
        (1, "normal forms", criterion_1, Duration::from_secs(1)),
        (2, "cover maps", criterion_2, Duration::from_secs(2)),
        (3, "appendix containment", criterion_3, Duration::from_secs(5)),
        (4, "appendix freeness", criterion_4, Duration::from_secs(1)),
        (5, "appendix intersection equality", criterion_5, Duration::from_secs(30)),
        (6, "non-flatness witness", criterion_6, Duration::from_secs(5)),
        (7, "brauer suite", criterion_7, Duration::from_secs(60)),
        (8, "determinism", criterion_8, Duration::MAX),
    ];
    let mut failures = 0;
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let limit_text = if limit == Duration::MAX {
            String::new()
        } else {
            format!(" < {} ms", limit.as_millis())
        };
        let outcome = match outcome {
            Ok(msg) if elapsed <= limit => Ok(msg),
            Ok(msg) => Err(format!("{msg}; too slow")),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {id} ({name}): {msg} [{} ms{limit_text}]", elapsed.as_millis()),
            Err(msg) => {
                failures += 1;
                println!("FAIL criterion {id} ({name}): {msg} [{} ms{limit_text}]", elapsed.as_millis());
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
