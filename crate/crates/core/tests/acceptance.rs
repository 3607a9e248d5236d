//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ppi_core::harness::{
    self, case_seed, checked_algorithms, full_size_problem, random_problem, FuzzConfig, ModularDivider,
};
use ppi_core::oracle::{from_digit_vec, oracle_modiv, oracle_mul, oracle_period_longdiv, oracle_pow, to_digit_vec};
use ppi_core::par::{check_v2_bounds, par_ppi_v2_observed};
use ppi_core::{
    dmod, exact_div, hensel_code, par_mul, ppi_sequential_with, rational_period, Algorithm, Digit, DigitVec,
    ModDivProblem, ParOptions, PpiOptions, Radix, Sign,
};

const FUZZ_RADIXES: [u64; 5] = [2, 3, 10, 257, 65536];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), notes: Vec::new() }
    }
}

fn radix(b: u64) -> Radix {
    Radix::new(b).unwrap()
}

fn fuzz_radixes() -> Vec<Radix> {
    FUZZ_RADIXES.iter().map(|&b| radix(b)).collect()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_number(rng: &mut ChaCha8Rng, r: Radix, lens: RangeInclusive<usize>) -> DigitVec {
    let len = rng.gen_range(lens);
    let mut d: Vec<Digit> = (0..len).map(|_| rng.gen_range(0..r.beta())).collect();
    if let Some(top) = d.last_mut() {
        *top = rng.gen_range(1..r.beta());
    }
    DigitVec::from_digits(r, d).unwrap()
}

/// A number whose low digit is coprime to β.
fn random_unit(rng: &mut ChaCha8Rng, r: Radix, lens: RangeInclusive<usize>) -> DigitVec {
    let mut x = random_number(rng, r, lens).digits().to_vec();
    if x.is_empty() {
        x.push(0);
    }
    loop {
        let d = rng.gen_range(1..r.beta());
        if d.gcd(&r.beta()) == 1 {
            x[0] = d;
            break;
        }
    }
    DigitVec::from_digits(r, x).unwrap()
}

fn big_signed(x: &DigitVec) -> BigInt {
    BigInt::from(from_digit_vec(x))
}

fn golden() -> Outcome {
    let r = radix(2);
    let p = ModDivProblem::new(DigitVec::from_u128(r, 37229), DigitVec::from_u128(r, 1543), 7).unwrap();
    let start = Instant::now();
    let results: Vec<_> = Algorithm::DIVISION.iter().map(|alg| (alg, alg.run(&p, ParOptions::checked()))).collect();
    let elapsed = start.elapsed();
    let mut bad = Vec::new();
    for (alg, res) in &results {
        match res {
            Ok((x, _)) if x.padded(7) == [1, 1, 0, 1, 0, 1, 1] && x.to_decimal_string() == "107" => {}
            other => bad.push(format!("{alg}: {other:?}")),
        }
    }
    let fast = elapsed < Duration::from_millis(1);
    Outcome::new(
        bad.is_empty() && fast,
        format!("5/5 algorithms -> 107, LSF 1 1 0 1 0 1 1 in {elapsed:?} (limit 1 ms){}", fmt_bad(&bad)),
    )
}

fn fmt_bad(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; {} failures, first: {}", bad.len(), bad[0])
    }
}

fn differential_fuzz() -> Outcome {
    let algs = checked_algorithms();
    let dividers: Vec<&dyn ModularDivider> = algs.iter().map(|a| a as &dyn ModularDivider).collect();
    let config = FuzzConfig { count: 10_000, radixes: fuzz_radixes(), max_s: 128, seed: 0xACCE };
    let start = Instant::now();
    let report = harness::run(&config, &dividers).unwrap();
    let elapsed = start.elapsed();
    let mut detail = format!(
        "{} cases x 5 algorithms, radixes {FUZZ_RADIXES:?}, s <= 128: {} mismatches in {elapsed:.1?} (limit 60 s)",
        report.cases,
        report.mismatches.len()
    );
    if let Some(m) = report.mismatches.first() {
        detail += &format!("; first: {m:?}");
    }
    Outcome::new(report.mismatches.is_empty() && report.cases >= 10_000 && elapsed < Duration::from_secs(60), detail)
}

fn v2_bounds() -> Outcome {
    let rs = fuzz_radixes();
    let (mut events, mut violations, mut errors) = (0u64, 0u64, 0u64);
    let mut first = None;
    for i in 0..10_000u64 {
        let p = random_problem(rs[i as usize % rs.len()], 128, case_seed(0xB0D5, i));
        let result = par_ppi_v2_observed(&p, ParOptions::checked(), &mut |e| {
            events += 1;
            if let Err(err) = check_v2_bounds(&e) {
                violations += 1;
                first.get_or_insert(err.to_string());
            }
        });
        if let Err(err) = result {
            errors += 1;
            first.get_or_insert(err.to_string());
        }
    }
    Outcome::new(
        violations == 0 && errors == 0 && events > 0,
        format!(
            "10000 checked runs, {events} observed states: {violations} bound violations, {errors} checked-mode errors{}",
            first.map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

/// `u = β^s - (v mod β^s)`, so `u + v ≡ 0 (mod β^s)`.
fn worst_case_problem(rng: &mut ChaCha8Rng, r: Radix, s: usize) -> ModDivProblem {
    let v = random_unit(rng, r, 1..=s + 2);
    let m = oracle_pow(r, s);
    let u = &m - from_digit_vec(&v) % &m;
    ModDivProblem::new(to_digit_vec(&u, r), v, s).unwrap()
}

/// Output check plus the first `k` with `L_k > βk - 1` (`k >= 1`; `L_0 = c_0 = 0`).
fn worst_case_run(p: &ModDivProblem) -> (bool, Option<(usize, u128)>) {
    let r = p.radix();
    let (x, run) = ppi_sequential_with(p, PpiOptions { checked: true, ..PpiOptions::default() }).unwrap();
    let all_ones = from_digit_vec(&x) == oracle_pow(r, p.s()) - 1u32;
    let beta = r.beta() as u128;
    let over = run
        .steps
        .iter()
        .find(|st| st.k >= 1 && st.accumulator > beta * st.k as u128 - 1 || st.k == 0 && st.accumulator != 0)
        .map(|st| (st.k, st.accumulator));
    (all_ones, over)
}

fn worst_case() -> Outcome {
    let mut g = rng(0x3C);
    let r = radix(2);
    let mut bad = Vec::new();
    for _ in 0..100 {
        let s = g.gen_range(1..=96);
        let p = worst_case_problem(&mut g, r, s);
        let (ones, over) = worst_case_run(&p);
        if !ones || over.is_some() {
            bad.push(format!("u={} v={} s={s}: output all ones {ones}, bound exceeded at {over:?}", p.u(), p.v()));
        }
    }
    let mut out = Outcome::new(
        bad.is_empty(),
        format!("100 cases in β=2 with u+v ≡ 0 mod β^s: x = β^s-1 and L_k <= βk-1 for all k{}", fmt_bad(&bad)),
    );
    // Outside β = 2 only the output claim is exact; report both anyway.
    let (mut output_bad, mut bound_over, mut total) = (0, 0, 0);
    let mut example = None;
    for &b in &FUZZ_RADIXES[1..] {
        for _ in 0..100 {
            let s = g.gen_range(1..=64);
            let p = worst_case_problem(&mut g, radix(b), s);
            let (ones, over) = worst_case_run(&p);
            total += 1;
            output_bad += usize::from(!ones);
            if let Some((k, l)) = over {
                bound_over += 1;
                example.get_or_insert(format!("β={b} s={s} L_{k}={l}"));
            }
        }
    }
    out.pass &= output_bad == 0;
    out.notes.push(format!(
        "β ∈ {{3,10,257,65536}}: {total} cases, {output_bad} outputs != β^s-1 (required 0); \
         L_k <= βk-1 exceeded in {bound_over} (informational, bound is binary-only{})",
        example.map(|e| format!(", e.g. {e}")).unwrap_or_default()
    ));
    out
}

fn linearity() -> Outcome {
    let r = radix(256);
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut max_ratio: f64 = 0.0;
    let mut s = 8;
    let mut rows = Vec::new();
    while s <= 1024 {
        let p = full_size_problem(r, s, s as u64).unwrap();
        let (x, trace) = par_ppi_v2_observed(&p, ParOptions::checked(), &mut |_| {}).unwrap();
        let want = oracle_modiv(&from_digit_vec(p.u()), &from_digit_vec(p.v()), r, s).unwrap();
        let s64 = s as u64;
        let ratio = trace.work as f64 / (s64 * s64) as f64;
        max_ratio = max_ratio.max(ratio);
        if trace.max_width > s64 + 1 || trace.steps > 3 * s64 + 2 || ratio > 4.0 || from_digit_vec(&x) != want {
            bad.push(format!("s={s}: {trace:?}"));
        }
        rows.push(format!("{s}:{}/{}", trace.steps, trace.max_width));
        s *= 2;
    }
    let elapsed = start.elapsed();
    let mut out = Outcome::new(
        bad.is_empty() && elapsed < Duration::from_secs(120),
        format!(
            "par_ppi_v2, β=256, s=8..1024: max_width <= s+1, steps <= 3s+2, max work/s² = {max_ratio:.3} (limit 4) in {elapsed:.1?}{}",
            fmt_bad(&bad)
        ),
    );
    out.notes.push(format!("s:steps/max_width {}", rows.join(" ")));
    out
}

fn dmod_reassembly() -> Outcome {
    let mut bad = Vec::new();
    let r2 = radix(2);
    let golden = dmod(&DigitVec::from_u128(r2, 37229), &DigitVec::from_u128(r2, 1543)).unwrap();
    let golden_ok = golden.x.to_decimal_string() == "43"
        && golden.w.to_decimal_string() == "455"
        && golden.sign == Sign::Positive
        && golden.r == 6;
    if !golden_ok {
        bad.push(format!("golden: {golden:?}"));
    }
    let mut g = rng(0xD3);
    let mut signs = [0usize; 3];
    for i in 0..1000 {
        let r = radix(FUZZ_RADIXES[i % FUZZ_RADIXES.len()]);
        let t = g.gen_range(1..=40);
        let s = g.gen_range(t..=t + 40);
        let v = random_unit(&mut g, r, t..=t);
        let u = random_number(&mut g, r, s..=s);
        let d = match dmod(&u, &v) {
            Ok(d) => d,
            Err(e) => {
                bad.push(format!("u={u} v={v}: {e}"));
                continue;
            }
        };
        let sign = match d.sign {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        };
        signs[(sign + 1) as usize] += 1;
        let lhs = big_signed(&d.x) * big_signed(&v) - big_signed(&u);
        let rhs = BigInt::from(sign) * big_signed(&d.w) * BigInt::from(oracle_pow(r, d.r));
        if lhs != rhs || d.r != s - t + 1 || from_digit_vec(&d.w) >= oracle_pow(r, t) || (sign == 0) != d.w.is_zero() {
            bad.push(format!("β={} u={u} v={v}: {d:?}", r.beta()));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "golden (37229, 1543, β=2) -> x=43 w=455 sign=+ r=6; 1000 cases x·v - u = sign·w·β^r, 0 <= w < β^t \
             (signs -/0/+: {}/{}/{}){}",
            signs[0],
            signs[1],
            signs[2],
            fmt_bad(&bad)
        ),
    )
}

fn exact_division() -> Outcome {
    let mut g = rng(0xE7);
    let mut bad = Vec::new();
    for i in 0..1000 {
        let r = radix(FUZZ_RADIXES[i % FUZZ_RADIXES.len()]);
        let q = random_number(&mut g, r, 1..=60);
        let mut v = random_unit(&mut g, r, 1..=40);
        if i % 4 == 0 {
            v = v.shl_digits(g.gen_range(1..4));
        }
        let u = to_digit_vec(&oracle_mul(&from_digit_vec(&q), &from_digit_vec(&v)), r);
        match exact_div(&u, &v) {
            Ok(got) if got == q => {}
            other => bad.push(format!("β={} q={q} v={v}: {other:?}", r.beta())),
        }
    }
    Outcome::new(bad.is_empty(), format!("1000 cases u = q·v (oracle product) recover q{}", fmt_bad(&bad)))
}

fn multiplication() -> Outcome {
    let mut g = rng(0x33);
    let mut bad = Vec::new();
    let mut worst_steps: f64 = 0.0;
    for i in 0..1000 {
        let r = radix(FUZZ_RADIXES[i % FUZZ_RADIXES.len()]);
        let u = random_number(&mut g, r, 0..=128);
        let v = random_number(&mut g, r, 0..=128);
        let (w, trace) = par_mul(&u, &v, ParOptions::checked()).unwrap();
        let n = u.digit_count().max(v.digit_count()) as u64;
        if n > 0 {
            worst_steps = worst_steps.max(trace.steps as f64 / n as f64);
        }
        if from_digit_vec(&w) != oracle_mul(&from_digit_vec(&u), &from_digit_vec(&v)) || trace.max_width > n + 1 {
            bad.push(format!("β={} u={u} v={v}: {trace:?}", r.beta()));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "1000 cases equal oracle product, max_width <= max(s,t)+1, max steps/max(s,t) = {worst_steps:.2}{}",
            fmt_bad(&bad)
        ),
    )
}

fn periods() -> Outcome {
    let mut bad = Vec::new();
    let r10 = radix(10);
    let seventh = rational_period(&DigitVec::from_u128(r10, 1), &DigitVec::from_u128(r10, 7), 1000).unwrap();
    if seventh.t != 6 || seventh.period.to_decimal_string() != "142857" {
        bad.push(format!("1/7: {seventh:?}"));
    }
    let mut g = rng(0x9E);
    let bases = [2u64, 3, 10, 16, 257];
    let mut done = 0;
    while done < 200 {
        let b = bases[done % bases.len()];
        let v: u64 = g.gen_range(2..1000);
        let u: u64 = g.gen_range(1..v);
        if u.gcd(&v) != 1 || v.gcd(&b) != 1 {
            continue;
        }
        done += 1;
        let r = radix(b);
        let p = match rational_period(&DigitVec::from_u128(r, u as u128), &DigitVec::from_u128(r, v as u128), 10_000) {
            Ok(p) => p,
            Err(e) => {
                bad.push(format!("{u}/{v} β={b}: {e}"));
                continue;
            }
        };
        let cross = BigUint::from(u) * (oracle_pow(r, p.t) - 1u32) == BigUint::from(v) * from_digit_vec(&p.period);
        let minimal = (1..p.t).all(|d| !(oracle_pow(r, d) % v).is_one());
        let mut msf = p.digits_lsf();
        msf.reverse();
        let long = oracle_period_longdiv(&BigUint::from(u), &BigUint::from(v), r, 10_000).unwrap();
        if !cross || !minimal || long != (p.t, msf) {
            bad.push(format!("{u}/{v} β={b}: t={} T={} cross={cross} minimal={minimal}", p.t, p.period));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "1/7 in β=10 -> (6, 142857); 200 reduced fractions: u·(β^t-1) = v·T, t minimal, digits match long division{}",
            fmt_bad(&bad)
        ),
    )
}

fn hensel_prefix() -> Outcome {
    let mut g = rng(0x4E);
    let mut bad = Vec::new();
    for i in 0..100 {
        let r = radix(FUZZ_RADIXES[i % FUZZ_RADIXES.len()]);
        let u = random_number(&mut g, r, 0..=20);
        let v = random_unit(&mut g, r, 1..=20);
        let codes: Vec<_> = (1..=33).map(|s| hensel_code(&u, &v, s).unwrap()).collect();
        let prefix_ok = codes.windows(2).all(|w| w[1].digits.starts_with(&w[0].digits));
        let oracle_ok = codes.iter().all(|c| {
            from_digit_vec(&c.value())
                == oracle_modiv(&from_digit_vec(&u), &from_digit_vec(&v), r, c.precision).unwrap()
        });
        if !prefix_ok || !oracle_ok {
            bad.push(format!("β={} u={u} v={v}", r.beta()));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "100 cases: H(u,v;β^s) is a prefix of H(u,v;β^(s+1)) for s=1..32, values match the oracle{}",
            fmt_bad(&bad)
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("golden example", golden),
        ("differential fuzz", differential_fuzz),
        ("alternated-carry bounds", v2_bounds),
        ("worst-case accumulators", worst_case),
        ("surface/time linearity", linearity),
        ("dmod reassembly", dmod_reassembly),
        ("exact division", exact_division),
        ("multiplication", multiplication),
        ("periods", periods),
        ("hensel prefix stability", hensel_prefix),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name}: {} [{:.2?}]", i + 1, outcome.detail, start.elapsed());
        for note in &outcome.notes {
            println!("             note: {note}");
        }
        failed += usize::from(!outcome.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
