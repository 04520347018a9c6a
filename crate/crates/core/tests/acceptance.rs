//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Criteria run sequentially so the wall-clock budgets are
//! measured without competing test threads.

use std::time::{Duration, Instant};

use anomex::flow::{convergence_report, normalized_rescaled_flow, ExplicitStepper, FlowOptions};
use anomex::verify::{
    check_envelopes, check_exponent_chain, check_gaussian_bounds, check_special_subsolution, check_subsolution_derivatives,
    discretization_tolerance, exponent_chain_margin, fit_envelopes, gaussian_branch_gap, gaussian_bound_samples,
    subsolution_samples, SpecialSubsolution,
};
use anomex::{
    apply_resolvent, default_r_max, exponent_pair, find_alpha_shooting, inverse_power_iteration, EigenResult,
    EllipticityBounds, OperatorSpec, ProfileField, RadialGrid,
};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SHOOT_TOL: f64 = 1e-10;
const POWER_TOL: f64 = 1e-10;

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self { passed, detail: detail.into() }
    }
}

/// Every converged profile from criteria 1–3, for criterion 9.
type Profiles = Vec<(String, EllipticityBounds, ProfileField)>;
type Solver = fn(&OperatorSpec, &RadialGrid) -> anomex::Result<EigenResult>;

fn three_methods(spec: &OperatorSpec, grid: &RadialGrid) -> anomex::Result<[EigenResult; 3]> {
    Ok([
        find_alpha_shooting(spec, grid, SHOOT_TOL)?,
        inverse_power_iteration(spec, grid, POWER_TOL, 10_000)?,
        normalized_rescaled_flow(spec, grid, FlowOptions::default())?,
    ])
}

fn keep(profiles: &mut Profiles, label: &str, results: &[EigenResult]) {
    for r in results {
        profiles.push((format!("{label} {}", r.method.as_str()), r.operator.bounds(), r.profile.clone()));
    }
}

fn criterion_1(profiles: &mut Profiles) -> anomex::Result<Verdict> {
    let mut ok = true;
    let mut worst_alpha = 0.0f64;
    let mut worst_profile = 0.0f64;
    let mut slowest = Duration::ZERO;
    for c in [0.5, 1.0, 2.0] {
        for n in 1..=3usize {
            let spec = OperatorSpec::linear(c)?;
            let grid = RadialGrid::new(12.0, 1200, n)?;
            let start = Instant::now();
            let results = three_methods(&spec, &grid)?;
            let elapsed = start.elapsed();
            slowest = slowest.max(elapsed);
            let exact = grid.sample(|r| (-r * r / (4.0 * c)).exp());
            for r in &results {
                let da = (r.alpha - n as f64 / 2.0).abs();
                let dp = r.profile.sup_distance(&exact, 4.0);
                worst_alpha = worst_alpha.max(da);
                worst_profile = worst_profile.max(dp);
                if da > 1e-3 || dp > 1e-4 {
                    ok = false;
                    eprintln!("  c={c} n={n} {}: |alpha - n/2| = {da:.2e}, profile error {dp:.2e}", r.method.as_str());
                }
            }
            if elapsed > Duration::from_secs(10) {
                ok = false;
                eprintln!("  c={c} n={n}: {:.1} s", elapsed.as_secs_f64());
            }
            keep(profiles, &format!("linear c={c} n={n}"), &results);
        }
    }
    Ok(Verdict::new(
        ok,
        format!(
            "max |alpha - n/2| {worst_alpha:.2e} (<= 1e-3), max profile error on r<=4 {worst_profile:.2e} (<= 1e-4), slowest case {:.2} s (< 10 s)",
            slowest.as_secs_f64()
        ),
    ))
}

fn criterion_2(profiles: &mut Profiles) -> anomex::Result<Verdict> {
    let start = Instant::now();
    let b = EllipticityBounds::new(1.0, 2.0)?;
    let grid = RadialGrid::new(12.0, 1200, 2)?;
    let minus = OperatorSpec::pucci_minus(1.0, 2.0)?;
    let plus = OperatorSpec::pucci_plus(1.0, 2.0)?;
    let mut ok = true;
    let mut margin = f64::INFINITY;
    let mut detail = String::new();
    let solvers: [(&str, Solver); 2] = [
        ("shooting", |s, g| find_alpha_shooting(s, g, SHOOT_TOL)),
        ("power", |s, g| inverse_power_iteration(s, g, POWER_TOL, 10_000)),
    ];
    for (name, solve) in solvers {
        let am = solve(&minus, &grid)?;
        let ap = solve(&plus, &grid)?;
        let m = exponent_chain_margin(am.alpha, ap.alpha, b, 2);
        let chain = check_exponent_chain(am.alpha, ap.alpha, b, 2, 0.0);
        ok &= m > 0.01 && chain.passed;
        margin = margin.min(m);
        detail += &format!("{name}: alpha+(P-) {:.6} alpha+(P+) {:.6}; ", am.alpha, ap.alpha);
        keep(profiles, "pucci n=2", &[am, ap]);
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 30.0;
    Ok(Verdict::new(ok, format!("{detail}interior margin {margin:.4} (> 0.01), {elapsed:.2} s (< 30 s)")))
}

/// Disagreements below this are solver tolerance, not discretization error;
/// the power iteration and the flow share one discretization and agree to
/// this level on every grid.
const AGREEMENT_FLOOR: f64 = 2e-8;

const H_LEVELS: [f64; 3] = [0.04, 0.02, 0.01];

fn criterion_3(profiles: &mut Profiles) -> anomex::Result<Verdict> {
    let mut specs = vec![
        OperatorSpec::heat(),
        OperatorSpec::pucci_plus(1.0, 2.0)?,
        OperatorSpec::pucci_minus(1.0, 2.0)?,
    ];
    for gamma in [0.1, 0.5, 0.9] {
        specs.push(OperatorSpec::barenblatt(gamma)?);
    }
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let mut ok = true;
    let mut worst_ratio = f64::INFINITY;
    let mut worst_gap_over_tol = 0.0f64;
    for spec in &specs {
        for n in 1..=2usize {
            let r_max = default_r_max(spec.bounds(), n).max(12.0);
            let mut gaps = Vec::new();
            for h in H_LEVELS {
                let grid = RadialGrid::with_spacing(r_max, h, n)?;
                let res = three_methods(spec, &grid)?;
                let a = [res[0].alpha, res[1].alpha, res[2].alpha];
                let d: Vec<f64> = pairs.iter().map(|&(i, j)| (a[i] - a[j]).abs()).collect();
                let tol = discretization_tolerance(h);
                let spread = d.iter().cloned().fold(0.0, f64::max);
                worst_gap_over_tol = worst_gap_over_tol.max(spread / tol);
                if spread > tol {
                    ok = false;
                    eprintln!("  {spec} n={n} h={h}: spread {spread:.2e} > {tol:.1e}");
                }
                gaps.push(d);
                keep(profiles, &format!("{spec} n={n} h={h}"), &res);
            }
            for (level, w) in gaps.windows(2).enumerate() {
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    let (coarse, fine) = (w[0][k], w[1][k]);
                    if fine <= AGREEMENT_FLOOR {
                        continue;
                    }
                    let ratio = coarse / fine;
                    worst_ratio = worst_ratio.min(ratio);
                    if ratio < 3.0 {
                        ok = false;
                        let h = H_LEVELS[level + 1];
                        eprintln!("  {spec} n={n} pair ({i},{j}) at h={h}: {coarse:.2e} -> {fine:.2e}, ratio {ratio:.2}");
                    }
                }
            }
        }
    }
    Ok(Verdict::new(
        ok,
        format!(
            "max spread / max(2e-3, 5h^2) = {worst_gap_over_tol:.3}, smallest shrink ratio above {AGREEMENT_FLOOR:.0e} = {worst_ratio:.2} (>= 3)"
        ),
    ))
}

fn criterion_4() -> anomex::Result<Verdict> {
    let mut ok = true;
    let mut worst_swap = 0.0f64;
    let grid = RadialGrid::new(12.0, 600, 1)?;
    for spec in [
        OperatorSpec::barenblatt(0.5)?,
        OperatorSpec::pucci_plus(1.0, 2.0)?,
        OperatorSpec::max_of_linear(vec![0.5, 2.0])?,
        OperatorSpec::heat(),
    ] {
        let pair = exponent_pair(&spec, &grid, POWER_TOL)?;
        let dual = exponent_pair(&spec.dual(), &grid, POWER_TOL)?;
        let swap = (pair.alpha_plus() - dual.alpha_minus()).abs().max((pair.alpha_minus() - dual.alpha_plus()).abs());
        worst_swap = worst_swap.max(swap);
        ok &= swap <= 1e-14;
    }
    let grid = RadialGrid::new(12.0, 1200, 1)?;
    let pair = exponent_pair(&OperatorSpec::barenblatt(0.5)?, &grid, POWER_TOL)?;
    let (ap, am) = (pair.alpha_plus(), pair.alpha_minus());
    let margin = (0.5 - ap).min(am - 0.5);
    ok &= margin > 0.01;
    Ok(Verdict::new(
        ok,
        format!("swap error {worst_swap:.1e} (<= 1e-14); barenblatt gamma=0.5 n=1: alpha+ {ap:.6} < 0.5 < alpha- {am:.6}, margin {margin:.3} (> 0.01)"),
    ))
}

fn criterion_5() -> anomex::Result<Verdict> {
    let start = Instant::now();
    let mut ok = true;
    let mut worst = f64::INFINITY;
    let mut gap = 0.0f64;
    for (l, u) in [(1.0, 1.0), (1.0, 2.0), (1.0, 4.0)] {
        let b = EllipticityBounds::new(l, u)?;
        let samples = gaussian_bound_samples(b, 1000);
        for n in 1..=3 {
            let (m, p) = check_gaussian_bounds(b, n, &samples);
            worst = worst.min(m.worst_slack).min(p.worst_slack);
            ok &= m.passed && p.passed;
            gap = gap.max(gaussian_branch_gap(b, n));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= worst >= -1e-12 && gap <= 1e-14 && elapsed < 1.0;
    Ok(Verdict::new(ok, format!("worst slack {worst:.2e} (>= -1e-12), branch gap {gap:.1e} (<= 1e-14), {elapsed:.3} s (< 1 s)")))
}

fn criterion_6() -> anomex::Result<Verdict> {
    let b = EllipticityBounds::new(1.0, 2.0)?;
    let mut ok = true;
    let mut worst = f64::INFINITY;
    let mut fd_worst = f64::INFINITY;
    for n in 1..=2usize {
        let (lam, upp) = (Ratio::from_integer(1i64), Ratio::from_integer(2i64));
        let a = Ratio::new(1, 2) / lam;
        let beta = Ratio::from_integer(1) + Ratio::from_integer(2) * a * upp * Ratio::from_integer(n as i64);
        let r1 = Ratio::from_integer(2) * (beta + upp + Ratio::from_integer(1));
        let log_delta_rational = r1 - a * r1 * r1;
        let to_f64 = |q: Ratio<i64>| *q.numer() as f64 / *q.denom() as f64;
        let w = SpecialSubsolution::new(b, n);
        let constants_exact = w.a == to_f64(a) && w.beta == to_f64(beta) && w.r1 == to_f64(r1);
        let expected_log_delta = to_f64(log_delta_rational) - (to_f64(beta) + 1.0).ln();
        let log_delta_ok = (w.log_delta - expected_log_delta).abs() <= 1e-13 * expected_log_delta.abs();
        let c = check_special_subsolution(b, n, &subsolution_samples(b, n, 500, 42 + n as u64, 1e-3));
        let fd = check_subsolution_derivatives(b, n, 200, 7 + n as u64);
        worst = worst.min(c.worst_slack);
        fd_worst = fd_worst.min(fd.worst_slack);
        if !(constants_exact && log_delta_ok && c.passed && fd.passed) {
            ok = false;
            eprintln!("  n={n}: constants {constants_exact} log delta {log_delta_ok} {c:?} {fd:?}");
        }
    }
    Ok(Verdict::new(
        ok,
        format!(
            "constants match exact rationals; worst relative slack {worst:.3e} (>= -1e-12); derivative disagreement {:.2e} (<= 1e-8)",
            1e-8 - fd_worst
        ),
    ))
}

fn criterion_7() -> anomex::Result<Verdict> {
    let start = Instant::now();
    let spec = OperatorSpec::barenblatt(0.5)?;
    let eig = find_alpha_shooting(&spec, &RadialGrid::new(12.0, 1200, 1)?, 1e-11)?;
    let g = RadialGrid::new(16.0, 1600, 1)?.sample(|r| (-r * r).exp());
    let rep = convergence_report(&spec, &g, eig.alpha, &eig.profile, &[4.0, 16.0, 64.0, 256.0])?;
    let errs = &rep.sup_rel_err;
    let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
    let last = *errs.last().unwrap();
    let cauchy = *rep.cauchy_diffs.last().unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let ok = decreasing && last < 0.02 && cauchy < 0.01 && elapsed < 300.0;
    Ok(Verdict::new(
        ok,
        format!(
            "sup errors {:?} decreasing={decreasing}, last {last:.2e} (< 2%), last C* difference {cauchy:.2e} (< 1%), C*_256 {:.6}, {elapsed:.1} s (< 300 s)",
            errs.iter().map(|e| format!("{e:.2e}")).collect::<Vec<_>>(),
            rep.cstar.last().unwrap()
        ),
    ))
}

fn random_ordered_pair(rng: &mut ChaCha8Rng, grid: &RadialGrid) -> (ProfileField, ProfileField) {
    let len = grid.len();
    let mut lo: Vec<f64> = (0..len).map(|_| rng.gen_range(0.0..1.0)).collect();
    let mut hi: Vec<f64> = lo.iter().map(|v| v + rng.gen_range(0.0..0.5)).collect();
    lo[len - 1] = 0.0;
    hi[len - 1] = 0.0;
    (ProfileField::new(*grid, lo).unwrap(), ProfileField::new(*grid, hi).unwrap())
}

fn random_spec(rng: &mut ChaCha8Rng) -> OperatorSpec {
    let upper = rng.gen_range(1.0..4.0);
    match rng.gen_range(0..5) {
        0 => OperatorSpec::pucci_plus(1.0, upper).unwrap(),
        1 => OperatorSpec::pucci_minus(1.0, upper).unwrap(),
        2 => OperatorSpec::barenblatt(rng.gen_range(0.05..0.95)).unwrap(),
        3 => OperatorSpec::linear(upper).unwrap(),
        _ => OperatorSpec::max_of_linear(vec![1.0, upper]).unwrap().dual(),
    }
}

fn criterion_8() -> anomex::Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut resolvent_violation = 0.0f64;
    let mut stepper_violation = 0.0f64;
    for _ in 0..100 {
        let spec = random_spec(&mut rng);
        let grid = RadialGrid::new(rng.gen_range(4.0..12.0), rng.gen_range(16..120), rng.gen_range(1..=4))?;
        let (lo, hi) = random_ordered_pair(&mut rng, &grid);
        let ulo = apply_resolvent(&spec, &grid, &lo)?.u;
        let uhi = apply_resolvent(&spec, &grid, &hi)?.u;
        for (a, b) in ulo.values.iter().zip(&uhi.values) {
            resolvent_violation = resolvent_violation.max(a - b);
        }
        let mut stepper = ExplicitStepper::new(&spec, &grid);
        let dt = 0.9 * stepper.cfl_bound();
        let (mut a, mut b) = (lo.values.clone(), hi.values.clone());
        for _ in 0..50 {
            stepper.step_in_place(&mut a, dt)?;
            stepper.step_in_place(&mut b, dt)?;
            for (x, y) in a.iter().zip(&b) {
                stepper_violation = stepper_violation.max(x - y);
            }
        }
    }
    let ok = resolvent_violation <= 1e-12 && stepper_violation <= 1e-12;
    Ok(Verdict::new(
        ok,
        format!("100 pairs each: resolvent violation {resolvent_violation:.1e}, explicit stepper violation {stepper_violation:.1e} (<= 1e-12)"),
    ))
}

fn criterion_9(profiles: &Profiles) -> Verdict {
    let mut ok = true;
    let mut worst_c = 0.0f64;
    let mut worst_label = String::new();
    for (label, b, profile) in profiles {
        let check = check_envelopes(profile, *b);
        let fit = fit_envelopes(profile, *b);
        let c = fit.c_upper.max(fit.c_lower);
        if c > worst_c || c.is_nan() {
            worst_c = c;
            worst_label = label.clone();
        }
        if !check.passed {
            ok = false;
            eprintln!("  {label}: C1 {:.3e} C2 {:.3e}", fit.c_upper, fit.c_lower);
        }
    }
    Verdict::new(ok, format!("{} profiles, largest constant {worst_c:.3e} ({worst_label}) (<= 1e6)", profiles.len()))
}

fn main() {
    let mut profiles = Profiles::new();
    let mut verdicts: Vec<(usize, &str, Verdict)> = Vec::new();
    let fail = |e: anomex::Error| Verdict::new(false, format!("error: {e}"));
    let run = |id: usize, name: &'static str, v: anomex::Result<Verdict>, out: &mut Vec<(usize, &str, Verdict)>| {
        let v = v.unwrap_or_else(fail);
        println!("criterion {id} [{}] {name}: {}", if v.passed { "PASS" } else { "FAIL" }, v.detail);
        out.push((id, name, v));
    };
    run(1, "linear recovery", criterion_1(&mut profiles), &mut verdicts);
    run(2, "pucci exponent sandwich", criterion_2(&mut profiles), &mut verdicts);
    run(3, "cross-method agreement", criterion_3(&mut profiles), &mut verdicts);
    run(4, "duality", criterion_4(), &mut verdicts);
    run(5, "gaussian sandwich suite", criterion_5(), &mut verdicts);
    run(6, "special subsolution", criterion_6(), &mut verdicts);
    run(7, "self-similar collapse", criterion_7(), &mut verdicts);
    run(8, "discrete comparison", criterion_8(), &mut verdicts);
    run(9, "gaussian envelopes", Ok(criterion_9(&profiles)), &mut verdicts);
    let failed: Vec<usize> = verdicts.iter().filter(|(_, _, v)| !v.passed).map(|(id, _, _)| *id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", verdicts.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
