//! Acceptance suite: one line per criterion, exit status 1 if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use forge_core::algebra::{Fe, Place, Poly, RatFunc};
use forge_core::bench::{run_example, Report};
use forge_core::error::SurfaceError;
use forge_core::lattice::{is_primitive, parse_lattice_expr, LatticeEmbedding};
use forge_core::mw::{
    add_sections, height, height_pairing, multiply, negate, ns_model, verify_section, Section,
};
use forge_core::surface::{KodairaType, Surface, WeierstrassModel};
use forge_core::twist::{m1_family, twist, DegeneracyLocus};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, bound: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < bound, || format!("{what} took {took:?}, bound {bound:?}"))
}

fn fibre_type(s: &Surface, place: &Place) -> Result<KodairaType, String> {
    s.fibre_at(place).map(|f| f.kodaira).map_err(|e| e.to_string())
}

fn at(n: i64) -> Place {
    Place::at(Fe::int(n))
}

fn rand_poly(rng: &mut ChaCha8Rng, max_deg: usize, bound: i64) -> Poly {
    let coeffs: Vec<i64> = (0..=max_deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    Poly::from_ints(&coeffs)
}

fn rand_nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    }
}

fn t_pow(k: u32) -> Poly {
    Poly::x().pow(k)
}

fn short(a: &Poly, b: &Poly) -> Result<Surface, String> {
    Surface::from_short(RatFunc::from_poly(a.clone()), RatFunc::from_poly(b.clone())).map_err(|e| e.to_string())
}

fn passing(id: &str) -> Result<Report, String> {
    let r = run_example(id).map_err(|e| e.to_string())?;
    let failures: Vec<String> =
        r.failures().map(|a| format!("{}: expected {}, computed {}", a.label, a.expected, a.computed)).collect();
    ensure(failures.is_empty(), || format!("{id}: {}", failures.join("; ")))?;
    Ok(r)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let s = Surface::parse("y^2 = x^3 + x^2 + t*x").map_err(|e| e.to_string())?;
    let got = [fibre_type(&s, &Place::Infinity)?, fibre_type(&s, &at(0))?, fibre_type(&s, &Place::at(Fe::frac(1, 4)))?];
    ensure(got == [KodairaType::IIIStar, KodairaType::I(2), KodairaType::I(1)], || format!("321: {got:?}"))?;
    ensure(s.summary().map_err(|e| e.to_string())?.fibers.len() == 3, || "321 has extra fibres".into())?;
    within(start, Duration::from_secs(1), "321")?;

    let start = Instant::now();
    let s = Surface::parse("y^2 = x^3 + t^4 x + t^5(t^2 + 3t + 1)").map_err(|e| e.to_string())?;
    let sum = s.summary().map_err(|e| e.to_string())?;
    ensure(fibre_type(&s, &at(0))? == KodairaType::IIStar && fibre_type(&s, &Place::Infinity)? == KodairaType::IIStar, || {
        "Inose: II* fibres missing".into()
    })?;
    let rest: Vec<_> = sum.fibers.iter().filter(|f| f.kodaira != KodairaType::IIStar).collect();
    ensure(rest.iter().all(|f| f.kodaira == KodairaType::I(1)), || "Inose: non-I1 extra fibre".into())?;
    let total: usize = sum.fibers.iter().map(|f| f.euler as usize * f.degree()).sum();
    ensure(total == 24, || format!("Inose: euler sum {total}"))?;
    within(start, Duration::from_secs(1), "Inose")?;

    let start = Instant::now();
    let m = WeierstrassModel::parse_with("w^2 = x(x^2 - 8(2+3-2)t^2 x + 16(2t+3)(3t+2)t^3)", "x", "w", Some("t"))
        .map_err(|e| e.to_string())?;
    let s = Surface::new(m).map_err(|e| e.to_string())?;
    let mut types: Vec<KodairaType> = Vec::new();
    for f in s.summary().map_err(|e| e.to_string())?.fibers {
        types.extend(std::iter::repeat(f.kodaira).take(f.degree()));
    }
    for (k, n) in [(KodairaType::IIIStar, 2), (KodairaType::I(2), 2)] {
        let c = types.iter().filter(|t| **t == k).count();
        ensure(c == n, || format!("BPF: {c} fibres of type {k}"))?;
    }
    within(start, Duration::from_secs(1), "BPF")?;
    Ok("321, Inose and BPF fibre configurations".into())
}

/// Random `(A, B)` with prescribed zeros at `t = 0` so that additive fibres occur too.
fn random_model(rng: &mut ChaCha8Rng) -> (Poly, Poly) {
    let ka = rng.gen_range(0..=3u32);
    let kb = rng.gen_range(0..=5u32);
    let a = &t_pow(ka) * &rand_poly(rng, 8 - ka as usize, 4);
    let b = &t_pow(kb) * &rand_poly(rng, 12 - kb as usize, 4);
    (a, b)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut done = 0;
    let mut max_chi = 0;
    while done < 100 {
        let (a, b) = random_model(&mut rng);
        let Ok(s) = short(&a, &b) else { continue };
        let sum = s.summary().map_err(|e| e.to_string())?;
        let total: usize = sum.fibers.iter().map(|f| f.euler as usize * f.degree()).sum();
        ensure(total == 12 * sum.chi as usize, || format!("A = {a}, B = {b}: sum {total}, chi {}", sum.chi))?;
        max_chi = max_chi.max(sum.chi);
        done += 1;
    }
    within(start, Duration::from_secs(30), "100 models")?;
    Ok(format!("100 random models, chi up to {max_chi}"))
}

#[derive(Clone, Copy, Debug)]
enum Local {
    Smooth,
    Mult(u32),
    II,
    III,
    IV,
}

fn expected_twist(k: KodairaType) -> KodairaType {
    match k {
        KodairaType::I(n) => KodairaType::IStar(n),
        KodairaType::II => KodairaType::IVStar,
        KodairaType::III => KodairaType::IIIStar,
        KodairaType::IV => KodairaType::IIStar,
        other => panic!("no twist partner for {other}"),
    }
}

/// A rational surface whose fibre at `t = 0` has the requested type.
fn surface_with(rng: &mut ChaCha8Rng, local: Local) -> Result<Surface, String> {
    let unit = |rng: &mut ChaCha8Rng, deg: usize| -> Poly {
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
        c[0] = rand_nonzero(rng, 3);
        Poly::from_ints(&c)
    };
    let (a, b) = match local {
        Local::Smooth => (unit(rng, 4), unit(rng, 6)),
        Local::Mult(n) => {
            // x³ + x² + c tⁿ g(t) has multiplicative reduction of type Iₙ at t = 0
            let a6 = &t_pow(n) * &unit(rng, 6 - n as usize);
            let model = WeierstrassModel::new(
                RatFunc::zero(),
                RatFunc::one(),
                RatFunc::zero(),
                RatFunc::zero(),
                RatFunc::from_poly(a6),
            );
            return Surface::new(model).map_err(|e| e.to_string());
        }
        Local::II => (&t_pow(1) * &rand_poly(rng, 3, 3), &t_pow(1) * &unit(rng, 5)),
        Local::III => (&t_pow(1) * &unit(rng, 3), &t_pow(2) * &rand_poly(rng, 4, 3)),
        Local::IV => (&t_pow(2) * &rand_poly(rng, 2, 3), &t_pow(2) * &unit(rng, 4)),
    };
    short(&a, &b)
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let kinds = [Local::Smooth, Local::Mult(1), Local::Mult(2), Local::Mult(3), Local::Mult(4), Local::II, Local::III, Local::IV];
    let mut checked = 0;
    for kind in kinds {
        let mut ok = 0;
        while ok < 8 {
            let Ok(s) = surface_with(&mut rng, kind) else { continue };
            let k0 = fibre_type(&s, &at(0))?;
            let r = rand_nonzero(&mut rng, 9);
            if fibre_type(&s, &at(r))? != KodairaType::I(0) {
                continue;
            }
            // ramified at t = 0 and t = r only
            let d = Poly::from_ints(&[0, -r, 1]);
            let x = twist(&s, &d).map_err(|e| e.to_string())?;
            let t0 = fibre_type(&x, &at(0))?;
            let tr = fibre_type(&x, &at(r))?;
            ensure(t0 == expected_twist(k0), || format!("{kind:?}: {k0} twisted to {t0}"))?;
            ensure(tr == KodairaType::IStar(0), || format!("smooth fibre at {r} twisted to {tr}"))?;
            // unramified fibres are unchanged
            for f in s.summary().map_err(|e| e.to_string())?.fibers {
                if f.place != at(0) && f.place != at(r) && f.place != Place::Infinity {
                    let g = fibre_type(&x, &f.place)?;
                    ensure(g == f.kodaira, || format!("unramified {} changed to {g}", f.kodaira))?;
                }
            }
            ok += 1;
            checked += 1;
        }
    }
    Ok(format!("{checked} twists covering I0, I1..I4, II, III, IV"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut members = 0;
    while members < 20 {
        let (a, u, v) = (rand_poly(&mut rng, 4, 5), rand_poly(&mut rng, 2, 5), rand_poly(&mut rng, 2, 5));
        let Ok(fam) = m1_family(&a, &u, &v) else { continue };
        if !fam.loci.is_empty() {
            continue;
        }
        ensure(verify_section(&fam.package.quotient, &fam.p_prime), || format!("P' fails for A = {a}"))?;
        ensure(fam.report.free, || format!("A = {a}, U = {u}, V = {v}: not free {:?}", fam.report))?;
        ensure(fam.p_dot_o == 0, || format!("A = {a}: P.O = {}", fam.p_dot_o))?;
        members += 1;
    }
    let mut problems = Vec::new();
    let u = Poly::from_ints(&[1, 2, 1]);
    let v = Poly::from_ints(&[1, 1, 1]);
    let cases = [
        (DegeneracyLocus::ZeroThroughSection, Poly::from_ints(&[-3, 0, 0, 1, 1]), at(0)),
        (DegeneracyLocus::ZeroDoubleRoot, Poly::new(vec![Fe::frac(-3, 4), Fe::zero(), Fe::zero(), Fe::one(), Fe::one()]), at(0)),
        (DegeneracyLocus::InfinityThroughSection, Poly::from_ints(&[5, 0, 0, 1, -3]), Place::Infinity),
        (DegeneracyLocus::InfinityDoubleRoot, Poly::new(vec![Fe::int(5), Fe::zero(), Fe::zero(), Fe::one(), Fe::frac(-3, 4)]), Place::Infinity),
    ];
    for (locus, a, place) in cases {
        let fam = m1_family(&a, &u, &v).map_err(|e| e.to_string())?;
        ensure(fam.loci == vec![locus], || format!("{locus}: detected {:?}", fam.loci))?;
        let fibre = fam.report.fibres.iter().find(|f| f.place == place).ok_or("fixed fibre missing")?;
        if fibre.kodaira == KodairaType::I(0) {
            problems.push(format!("{locus}: fixed fibre smooth"));
        }
        if fam.report.free {
            problems.push(format!("{locus}: reported free ({} fibre, {})", fibre.kodaira, fibre.verdict.describe()));
        }
    }
    within(start, Duration::from_secs(10), "M=1 family")?;
    ensure(problems.is_empty(), || format!("20 members free; {}", problems.join("; ")))?;
    Ok("20 random members free with P.O = 0; four loci not free".into())
}

fn criterion_5() -> Outcome {
    passing("m2-family(2)")?;
    passing("2x4star(-9/4,24)")?;
    Ok("section of height 2 at q = 2 and the I4* involution".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let r = passing("singular-24")?;
    within(start, Duration::from_secs(30), "singular-24")?;
    let qc = r.assertion("square class at Q").ok_or("no square class")?;
    Ok(format!("h(P) = 4, h(Q) = 6, P.Q = 3, disc -24, c = {}", qc.computed))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut ids: Vec<String> = [1, 2, 3, 5, 10].iter().map(|m| format!("figure3({m})")).collect();
    ids.extend(["cti-lattice(1)".to_string(), "triv-disc".to_string()]);
    ids.extend([(1, 3), (1, 5), (2, 3), (3, 7)].iter().map(|(m, n)| format!("brauer({m},{n})")));
    ids.extend([1, 3, 5, 7].iter().map(|m| format!("odd-M({m})")));
    for id in &ids {
        passing(id)?;
    }
    within(start, Duration::from_secs(10), "lattice suite")?;
    Ok(format!("{} lattice computations", ids.len()))
}

fn criterion_8() -> Outcome {
    for id in ["tau-anti(1,3)", "tau-anti(2,5)"] {
        passing(id)?;
    }
    Ok("tau involutive, isometric, anti-invariant".into())
}

/// `y² = x³ + Ax + B` through `(U, V₁)` and `(U + c, V₂)`.
fn two_section_surface(u: &Poly, v1: &Poly, v2: &Poly, c: i64) -> Option<(Surface, Section, Section)> {
    let u2 = u + &Poly::from_ints(&[c]);
    let num = &(&(v1 * v1) - &(v2 * v2)) - &(&u.pow(3) - &u2.pow(3));
    let a = num.scale(&Fe::frac(-1, c));
    let b = &(v1 * v1) - &(&u.pow(3) + &(&a * u));
    let s = short(&a, &b).ok()?;
    if s.chi() == 0 || s.summary().is_err() {
        return None;
    }
    let r = RatFunc::from_poly;
    let p = Section::new(r(u.clone()), r(v1.clone()));
    let q = Section::new(r(u2), r(v2.clone()));
    (verify_section(&s, &p) && verify_section(&s, &q)).then_some((s, p, q))
}

fn small_poly(deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, deg + 1).prop_map(|c| Poly::from_ints(&c))
}

fn fail(e: impl std::fmt::Display) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn group_and_height_properties(cases: u32) -> Result<usize, String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let ns_checked = std::cell::Cell::new(0usize);
    let strategy = (small_poly(1), small_poly(2), small_poly(2), prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)], -2i64..=2, -2i64..=2);
    runner
        .run(&strategy, |(u, v1, v2, c, m, n)| {
            let Some((s, p, q)) = two_section_surface(&u, &v1, &v2, c) else {
                return Err(TestCaseError::reject("degenerate surface"));
            };
            let context = format!("U = {u}, V1 = {v1}, V2 = {v2}, c = {c}, m = {m}, n = {n}");
            let fail = |e: SurfaceError| TestCaseError::fail(format!("{context}: {e}"));
            let add = |x: &Section, y: &Section| add_sections(&s, x, y).map_err(fail);
            let r = add(&multiply(&s, &p, m).map_err(fail)?, &multiply(&s, &q, n).map_err(fail)?)?;
            prop_assert!(verify_section(&s, &r));
            prop_assert_eq!(add(&p, &q)?, add(&q, &p)?);
            prop_assert_eq!(add(&add(&p, &q)?, &r)?, add(&p, &add(&q, &r)?)?);
            prop_assert_eq!(add(&p, &negate(&s, &p).map_err(fail)?)?, Section::Zero);
            prop_assert_eq!(add(&r, &Section::Zero)?, r.clone());
            let pair = |x: &Section, y: &Section| height_pairing(&s, x, y).map_err(fail);
            prop_assert_eq!(pair(&p, &q)?, pair(&q, &p)?);
            prop_assert_eq!(pair(&add(&p, &q)?, &r)?, &pair(&p, &r)? + &pair(&q, &r)?);
            prop_assert_eq!(height(&s, &p).map_err(fail)?.height, pair(&p, &p)?);
            let two_p = multiply(&s, &p, 2).map_err(fail)?;
            prop_assert_eq!(pair(&two_p, &two_p)?, &pair(&p, &p)? * &num_rational::BigRational::from_integer(4.into()));
            if let Ok(ns) = ns_model(&s, &[p.clone(), q.clone()]) {
                prop_assert!(ns.disc_relation_holds(), "disc relation fails: {:?}", ns.to_json());
                ns_checked.set(ns_checked.get() + 1);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(ns_checked.get())
}

/// NS models of the named examples, with their generating sections.
fn example_ns_models() -> Result<usize, String> {
    let origin = || Section::new(RatFunc::zero(), RatFunc::zero());
    let mut count = 0;
    let models: [(&str, &str, &str); 3] = [
        ("y^2 = x^3 + x^2 + t*x", "x", "y"),
        ("w^2 = x(x^2 - 8(2+3-2)t^2 x + 16(2t+3)(3t+2)t^3)", "x", "w"),
        ("y^2 = x^3 + t^4 x + t^5(t^2 + 3t + 1)", "x", "y"),
    ];
    for (eq, x, y) in models {
        let s = Surface::new(WeierstrassModel::parse_with(eq, x, y, Some("t")).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        // the Inose surface has no torsion; (0,0) lies on the other two
        let sections = if eq.contains("t^5") { Vec::new() } else { vec![origin()] };
        let ns = ns_model(&s, &sections).map_err(|e| format!("{eq}: {e}"))?;
        ensure(ns.disc_relation_holds(), || format!("disc relation fails on {eq}"))?;
        count += 1;
    }
    Ok(count)
}

/// Gcd of the maximal minors; the image is primitive exactly when this is 1.
fn determinantal_divisor(cols: &[Vec<i64>], n: usize) -> BigInt {
    let k = cols.len();
    let mut g = BigInt::zero();
    let mut rows: Vec<usize> = (0..k).collect();
    loop {
        let m: Vec<Vec<BigInt>> = rows.iter().map(|&i| cols.iter().map(|c| BigInt::from(c[i])).collect()).collect();
        g = g.gcd(&bareiss_det(m));
        // next k-subset of 0..n
        let Some(pos) = (0..k).rev().find(|&i| rows[i] < n - k + i) else { break };
        rows[pos] += 1;
        for j in pos + 1..k {
            rows[j] = rows[j - 1] + 1;
        }
    }
    g
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else { return BigInt::zero() };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &m[n - 1][n - 1]
    }
}

fn primitivity_oracle(cases: u32) -> Result<(usize, usize), String> {
    const TARGETS: [&str; 5] = ["E8(-1) + A2(-1)", "D6(-1) + A3(-1)", "A4(-1) + A4(-1)", "E7(-1)", "D4(-1) + A1(-1) + A1(-1)"];
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let tally = std::cell::Cell::new((0usize, 0usize));
    let strategy = (0..TARGETS.len(), 1usize..=6, prop::collection::vec(-3i64..=3, 60), any::<bool>(), 0usize..6);
    runner
        .run(&strategy, |(ti, k, entries, scale, col)| {
            let target = parse_lattice_expr(TARGETS[ti]).map_err(fail)?;
            let n = target.rank();
            let k = k.min(n);
            let mut cols: Vec<Vec<i64>> = (0..k).map(|j| entries[j * 10..j * 10 + n].to_vec()).collect();
            if scale {
                // a column divisible by 2 forces index at least 2 unless another column fixes it
                let c = col % k;
                cols[c].iter_mut().for_each(|e| *e *= 2);
            }
            let matrix: Vec<Vec<BigInt>> = (0..n).map(|i| cols.iter().map(|c| BigInt::from(c[i])).collect()).collect();
            let Ok(emb) = LatticeEmbedding::from_images(&target, matrix) else {
                return Err(TestCaseError::reject("not an embedding"));
            };
            if emb.source.det().is_zero() {
                return Err(TestCaseError::reject("dependent columns"));
            }
            let oracle = determinantal_divisor(&cols, n).abs().is_one();
            prop_assert_eq!(is_primitive(&emb).is_primitive(), oracle, "columns {:?}", cols);
            let (p, q) = tally.get();
            tally.set(if oracle { (p + 1, q) } else { (p, q + 1) });
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(tally.get())
}

fn criterion_9() -> Outcome {
    let random_ns = group_and_height_properties(24)?;
    let named_ns = example_ns_models()?;
    let (prim, non) = primitivity_oracle(50)?;
    ensure(prim + non == 50, || format!("{} embeddings checked", prim + non))?;
    Ok(format!(
        "group law and heights on 24 random surfaces; disc relation on {} NS models; {prim} primitive and {non} imprimitive embeddings agree with the minor oracle",
        random_ns + named_ns
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("fibre classification", criterion_1),
        ("euler conservation", criterion_2),
        ("twist table", criterion_3),
        ("M=1 family", criterion_4),
        ("explicit height-2 section", criterion_5),
        ("singular K3 of discriminant -24", criterion_6),
        ("lattice suite", criterion_7),
        ("tau anti-invariance", criterion_8),
        ("property suites", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}  PASS  {name} ({ms} ms): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}  FAIL  {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
