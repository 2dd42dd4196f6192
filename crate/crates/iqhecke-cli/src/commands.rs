//! Subcommand implementations. Each handler resolves its parameters
//! through the [`config::Resolver`] precedence chain, runs the library
//! routine against its oracle, and emits one report envelope. The return
//! value is "did every gated item pass"; hard errors (bad usage, broken
//! config, oracle overflow) bubble up as `Err` and exit with code 1.

use crate::config::Resolver;
use crate::report::{write_output, ReportEnvelope, ReportItem, SCHEMA_CSV};
use anyhow::{anyhow, bail, Result};
use iqhecke::characters::{
    lambda_coefficients, make_dirichlet, make_hecke_extension, HeckeCharacter,
};
use iqhecke::delta_method::{delta_eval, DeltaParams};
use iqhecke::gauss_sums::{
    arithmetic_part_brute_with_cap, arithmetic_part_closed, quadratic_gauss_brute,
    quadratic_gauss_closed, ArithPartParams, GaussSumParams, ARITH_BRUTE_CAP,
};
use iqhecke::lfunc::{dirichlet_series, euler_product, growth_scan, LfuncError, ScanPolicy};
use iqhecke::oscillatory::{
    poisson_check, w_dagger_quadrature, w_dagger_stationary, SmoothBump,
};
use iqhecke::quadfield::{
    classify_prime, make_field, FieldContext, IdealLatticeBasis, SplitKind,
};
use iqhecke::voronoi::{
    dual_terms, poisson_oracle, verify, TruncationPolicy, VoronoiError, VoronoiInstance,
};
use iqhecke::{arith, tol, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::path::Path;

use crate::{
    CoeffsArgs, DeltaCheckArgs, FieldInfoArgs, LvalueArgs, OscCheckArgs, ScanArgs,
    VerifyArithArgs, VerifyGaussArgs, VerifyVoronoiArgs,
};

fn fmt_c(z: C64) -> String {
    format!("{:.17e}{:+.17e}i", z.re, z.im)
}

fn config_line(echo: &std::collections::BTreeMap<String, String>) -> String {
    echo.iter()
        .filter(|(k, _)| k.as_str() != "seed")
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && n >= 1);
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn build_field(d: u64) -> Result<FieldContext> {
    make_field(d).map_err(|e| anyhow!("field D={d}: {e}"))
}

fn split_data(
    ctx: &FieldContext,
    p: u64,
) -> Result<iqhecke::quadfield::PrimeSplitData> {
    if p < 3 || p % 2 == 0 || !arith::is_prime(p) {
        bail!("p={p} must be an odd prime");
    }
    let ps = classify_prime(ctx, p).map_err(|e| anyhow!("prime p={p}: {e}"))?;
    Ok(ps)
}

fn build_psi(d: u64, p: u64, k: u64, r: u32, extension: u32) -> Result<HeckeCharacter> {
    let ctx = build_field(d)?;
    let ps = split_data(&ctx, p)?;
    if ps.kind != SplitKind::Split {
        bail!("p={p} does not split in Q(sqrt(-{d})); no conductor-p character exists");
    }
    if k == 0 || k > p - 2 {
        bail!("character index k={k} out of the primitive range 1..={}", p - 2);
    }
    let chi = make_dirichlet(p, k).map_err(|e| anyhow!("character: {e}"))?;
    if extension >= ctx.class_number {
        bail!(
            "extension index {extension} out of range (class number {})",
            ctx.class_number
        );
    }
    make_hecke_extension(&ctx, &ps, &chi, r, extension).map_err(|e| anyhow!("character: {e}"))
}

fn emit(
    envelope: &ReportEnvelope,
    format: &str,
    out: Option<&Path>,
) -> Result<bool> {
    let content = match format {
        "json" => envelope.to_json(),
        "csv" => envelope.to_csv(),
        other => bail!("unknown format {other:?} (expected json or csv)"),
    };
    write_output(out, &content)?;
    Ok(envelope.all_pass())
}

pub fn field_info(
    args: &FieldInfoArgs,
    mut res: Resolver,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let d = res.get("D", args.d, 1u64)?;
    let ctx = build_field(d)?;
    let mut items = vec![
        ReportItem::info("discriminant", ctx.disc as f64).with_detail(match ctx.ring_type {
            iqhecke::quadfield::RingType::Rt23 => "order Z[sqrt(-D)]",
            iqhecke::quadfield::RingType::Rt1 => "order Z[(1+sqrt(-D))/2]",
        }),
        ReportItem::info("omega", ctx.omega_k as f64),
        ReportItem::info("class-number", ctx.class_number as f64),
    ];
    for (i, rep) in ctx.class_reps.iter().enumerate() {
        items.push(
            ReportItem::info(format!("class-rep-{i}"), rep.ell as f64)
                .with_detail(format!("d_ell={} conjugate={}", rep.d_ell, rep.conjugate)),
        );
    }
    if let Some(p) = args.p {
        res.note("p", p);
        let ps = split_data(&ctx, p)?;
        let (value, name) = match ps.kind {
            SplitKind::Split => (1.0, "split"),
            SplitKind::Inert => (-1.0, "inert"),
            SplitKind::Ramified => (0.0, "ramified"),
        };
        let detail = match ps.d_p {
            Some(root) => format!("{name}, root {root}"),
            None => name.to_string(),
        };
        items.push(ReportItem::info("kronecker", value).with_detail(detail));
    }
    let envelope = ReportEnvelope::new("field-info", res.into_echo(), seed, items);
    emit(&envelope, "json", out)
}

pub fn coeffs(
    args: &CoeffsArgs,
    mut res: Resolver,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let d = res.get("D", args.d, 1u64)?;
    let p = res.get("p", args.p, 13u64)?;
    let k = res.get("k", args.k, 6u64)?;
    let r = res.get("r", args.r, 2u32)?;
    let extension = res.get("extension", args.extension, 0u32)?;
    let nmax = res.get("nmax", args.nmax, 100usize)?;
    if nmax == 0 || nmax > 2_000_000 {
        bail!("nmax={nmax} out of range 1..=2000000");
    }
    let psi = build_psi(d, p, k, r, extension)?;
    let series = lambda_coefficients(&psi, nmax);
    let cfg = config_line(&res.into_echo());
    let mut content = format!("# {SCHEMA_CSV} coeffs\n# config {cfg} seed={seed}\n");
    content.push_str(&series.to_csv());
    write_output(out, &content)?;
    Ok(true)
}

pub fn verify_gauss(
    args: &VerifyGaussArgs,
    mut res: Resolver,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let cmax = res.get("cmax", args.cmax, 200u64)?;
    let format = res.get("format", args.format.clone(), "json".to_string())?;
    if cmax == 0 || cmax > 2_000 {
        bail!("cmax={cmax} out of range 1..=2000");
    }
    let mut items = Vec::with_capacity(cmax as usize);
    for c in 1..=cmax {
        let mut max_diff = 0.0f64;
        let mut triples = 0usize;
        let mut broken: Option<String> = None;
        for b in 0..c {
            for a in 1..=c {
                if arith::gcd(a as i64, c as i64) != 1 {
                    continue;
                }
                let params = GaussSumParams {
                    a: a as i64,
                    b: b as i64,
                    c,
                };
                triples += 1;
                match quadratic_gauss_closed(&params) {
                    Ok(closed) => {
                        let diff = (closed - quadratic_gauss_brute(&params)).norm();
                        max_diff = max_diff.max(diff);
                    }
                    Err(e) => {
                        broken = Some(format!("a={a} b={b}: {e}"));
                    }
                }
            }
        }
        let mut item = ReportItem::check(format!("c={c}"), max_diff, tol::GAUSS_CLOSED_VS_BRUTE)
            .with_detail(format!("{triples} triples"));
        if let Some(msg) = broken {
            item = item.with_detail(msg).failed();
        }
        items.push(item);
    }
    let envelope = ReportEnvelope::new("verify-gauss", res.into_echo(), seed, items);
    emit(&envelope, &format, out)
}

pub fn verify_arith(
    args: &VerifyArithArgs,
    mut res: Resolver,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let d = res.get("D", args.d, 1u64)?;
    let p = res.get("p", args.p, 13u64)?;
    let k = res.get("k", args.k, 6u64)?;
    let ell = res.get("ell", args.ell, 5u64)?;
    let q_list = res.get_list("q-list", args.q_list.as_deref(), &[1u64, 2, 4])?;
    let m_list = res.get_list("m-list", args.m_list.as_deref(), &[1u64])?;
    let c_abs = res.get("c-abs", args.c_abs, 6i64)?;
    let f_abs = res.get("f-abs", args.f_abs, 6i64)?;
    let cap = res.get_budget("oracle-cap", args.oracle_cap, ARITH_BRUTE_CAP)?;
    let format = res.get("format", args.format.clone(), "json".to_string())?;
    if !(0..=100).contains(&c_abs) || !(0..=100).contains(&f_abs) {
        bail!("c-abs/f-abs out of range 0..=100");
    }

    let ctx = build_field(d)?;
    let ps = split_data(&ctx, p)?;
    if ps.kind != SplitKind::Split {
        bail!("p={p} does not split in Q(sqrt(-{d}))");
    }
    let chi = make_dirichlet(p, k).map_err(|e| anyhow!("character: {e}"))?;
    let lps = split_data(&ctx, ell)?;
    let SplitKind::Split = lps.kind else {
        bail!("l={ell} does not split in Q(sqrt(-{d})); no ideal lattice exists");
    };
    let lat = IdealLatticeBasis {
        ell,
        d_ell: lps.d_p.expect("split prime carries a root"),
        conjugate: false,
    };

    let mut items = Vec::new();
    for &q in &q_list {
        for &m in &m_list {
            if q == 0 || m == 0 {
                bail!("q and m must be positive");
            }
            if arith::gcd(q as i64, ell as i64) != 1 {
                bail!("q={q} shares a factor with l={ell}");
            }
            if arith::gcd(m as i64, q as i64) != 1 {
                bail!("m={m} shares a factor with q={q}");
            }
            if m % ell == 0 {
                bail!("m={m} divisible by l={ell}");
            }
            let mut max_diff = 0.0f64;
            let mut points = 0usize;
            let mut broken: Option<String> = None;
            for c in -c_abs..=c_abs {
                for f in -f_abs..=f_abs {
                    let params = ArithPartParams::new(&ctx, &ps, &chi, &lat, q, m, c, f);
                    let brute = arithmetic_part_brute_with_cap(&params, cap)
                        .map_err(|e| anyhow!("oracle at q={q} m={m}: {e}"))?;
                    points += 1;
                    match arithmetic_part_closed(&params) {
                        Ok(closed) => max_diff = max_diff.max((closed - brute).norm()),
                        Err(e) => broken = Some(format!("c={c} f={f}: {e}")),
                    }
                }
            }
            let mut item = ReportItem::check(
                format!("q={q},m={m}"),
                max_diff,
                tol::ARITH_CLOSED_VS_BRUTE,
            )
            .with_detail(format!("{points} lattice points"));
            if let Some(msg) = broken {
                item = item.with_detail(msg).failed();
            }
            items.push(item);
        }
    }
    let envelope = ReportEnvelope::new("verify-arith", res.into_echo(), seed, items);
    emit(&envelope, &format, out)
}

pub fn verify_voronoi(
    args: &VerifyVoronoiArgs,
    mut res: Resolver,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let d = res.get("D", args.d, 1u64)?;
    let p = res.get("p", args.p, 13u64)?;
    let k = res.get("k", args.k, 6u64)?;
    let r = res.get("r", args.r, 2u32)?;
    let q = res.get("q", args.q, 3u64)?;
    let m = res.get("m", args.m, 1u64)?;
    let n_scale = res.get("N", args.n_scale, 600.0f64)?;
    let class = res.get("class", args.class, 0usize)?;
    let extension = res.get("extension", args.extension, 0u32)?;
    let tight = args.tight;
    res.note("tight", tight);
    let base = if tight {
        TruncationPolicy::tight()
    } else {
        TruncationPolicy::default()
    };
    let policy = TruncationPolicy {
        max_radius: res.get_budget("max-radius", args.max_radius, base.max_radius)?,
        shell_width: res.get("shell-width", args.shell_width, base.shell_width)?,
        quiet_shells: res.get("quiet-shells", args.quiet_shells, base.quiet_shells)?,
        shell_floor: res.get_budget("shell-floor", args.shell_floor, base.shell_floor)?,
        quad_tol: res.get_budget("quad-tol", args.quad_tol, base.quad_tol)?,
    };
    let rel_tol = res.get("rel-tol", args.rel_tol, tol::VORONOI_REL)?;
    let poisson_points = res.get("poisson-points", args.poisson_points, 0usize)?;
    res.note("even-field-opt-in", args.even_field_opt_in);

    let psi = build_psi(d, p, k, r, extension)?;
    if class >= psi.class_phases.len() {
        bail!(
            "class index {class} out of range (class number {})",
            psi.ctx.class_number
        );
    }
    let rep = psi.class_phases[class].0;
    match d % 4 {
        1 => {}
        2 if args.even_field_opt_in => {}
        2 => bail!("-D = 2 mod 4 dual sums need --even-field-opt-in (term-level backing only)"),
        _ => bail!("dual-side evaluation covers D = 1, 2 mod 4 fields; D={d} has only the class side"),
    }
    if m % 2 == 0 && q % 2 == 0 || arith::gcd(m as i64, q as i64) != 1 {
        bail!("m={m} must be coprime to q={q}");
    }
    if rep.ell == p || arith::gcd(rep.ell as i64, (p * m) as i64) != 1 {
        bail!("class rep l={} collides with p or m", rep.ell);
    }
    if arith::gcd(q as i64, rep.ell as i64) != 1 {
        bail!("q={q} shares a factor with l={}", rep.ell);
    }

    let mut inst = VoronoiInstance::new(
        psi,
        m as i64,
        q,
        n_scale,
        SmoothBump::standard(),
        rep,
        policy,
    );
    inst.even_field_opt_in = args.even_field_opt_in;

    let mut items = Vec::new();
    let mut wall = 0.0;
    match verify(&inst) {
        Ok(report) => {
            wall = report.wall_time_s;
            let rel_item = match report.rel_err {
                Some(rel) => ReportItem::check("rel-err", rel, rel_tol),
                None => ReportItem::check("rel-err", f64::INFINITY, rel_tol)
                    .with_detail("tail estimate too large for a meaningful ratio"),
            };
            items.push(rel_item.with_detail(format!(
                "lhs {} rhs {}",
                fmt_c(report.lhs),
                fmt_c(report.rhs)
            )));
            items.push(ReportItem::info("abs-err", report.abs_err));
            items.push(ReportItem::info("terms-used", report.terms_used as f64));
            items.push(ReportItem::info(
                "tail-estimate",
                report.truncation_tail_estimate,
            ));
        }
        Err(VoronoiError::BudgetExceeded { radius, terms }) => {
            items.push(
                ReportItem::check("dual-sum-converged", radius, policy.max_radius)
                    .with_detail(format!("never settled; {terms} terms"))
                    .failed(),
            );
        }
        Err(e) => bail!("dual sum: {e}"),
    }

    if poisson_points > 0 {
        let expansion = dual_terms(&inst).map_err(|e| anyhow!("term expansion: {e}"))?;
        let mut max_diff = 0.0f64;
        let mut used = 0usize;
        for term in expansion.terms.iter().take(poisson_points) {
            let oracle = poisson_oracle(&inst, term.c, term.f)
                .map_err(|e| anyhow!("term oracle: {e}"))?;
            max_diff = max_diff.max((term.arith * term.analytic - oracle).norm());
            used += 1;
        }
        items.push(
            ReportItem::check("term-vs-oracle", max_diff, tol::DUAL_TERM_VS_POISSON)
                .with_detail(format!("{used} support points")),
        );
    }

    eprintln!("wall_time_s {wall:.3}");
    let envelope = ReportEnvelope::new("verify-voronoi", res.into_echo(), seed, items);
    emit(&envelope, "json", out)
}

pub fn delta_check(
    args: &DeltaCheckArgs,
    mut res: Resolver,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let nmax = res.get("nmax", args.nmax, 50i64)?;
    let q_grid = res.get_list("Q", args.q_grid.as_deref(), &[5.0f64, 10.0, 20.0, 50.0])?;
    let format = res.get("format", args.format.clone(), "json".to_string())?;
    if !(0..=10_000).contains(&nmax) {
        bail!("nmax={nmax} out of range 0..=10000");
    }
    for &q in &q_grid {
        if !(1.0..=200.0).contains(&q) {
            bail!("Q={q} out of range 1..=200");
        }
    }
    let mut items = Vec::new();
    for &q_max in &q_grid {
        let mut max_diff = 0.0f64;
        for n in -nmax..=nmax {
            let value = delta_eval(&DeltaParams { n, q_max });
            let target = if n == 0 { 1.0 } else { 0.0 };
            max_diff = max_diff.max((value - target).abs());
        }
        items.push(
            ReportItem::check(format!("Q={q_max}"), max_diff, tol::DELTA_IDENTITY)
                .with_detail(format!("n in [-{nmax}, {nmax}]")),
        );
    }
    let envelope = ReportEnvelope::new("delta-check", res.into_echo(), seed, items);
    emit(&envelope, &format, out)
}

pub fn osc_check(
    args: &OscCheckArgs,
    mut res: Resolver,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let beta_count = res.get("beta-count", args.beta_count, 7usize)?;
    let beta_min = res.get("beta-min", args.beta_min, 1e2f64)?;
    let beta_max = res.get("beta-max", args.beta_max, 1e4f64)?;
    let poisson_count = res.get("poisson-count", args.poisson_count, 50usize)?;
    if !(1.0..=1e5).contains(&beta_min) || !(beta_min..=1e5).contains(&beta_max) {
        bail!("beta range must satisfy 1 <= beta-min <= beta-max <= 1e5");
    }
    if beta_count == 0 || poisson_count > 10_000 {
        bail!("beta-count must be positive and poisson-count <= 10000");
    }
    let w = SmoothBump::standard();
    let mut items = Vec::new();

    // stationary-phase calibration at an interior stationary point x0 = 1.5
    for beta in geometric_grid(beta_min, beta_max, beta_count) {
        let r = beta / (2.0 * PI * 1.5);
        let s = C64::new(1.0, beta);
        let st = w_dagger_stationary(&w, r, s).map_err(|e| anyhow!("stationary: {e}"))?;
        let quad = w_dagger_quadrature(&w, r, s).map_err(|e| anyhow!("quadrature: {e}"))?;
        let scaled = (quad - st.main).norm() * beta.min(r).powf(1.5);
        items.push(
            ReportItem::check(
                format!("calibration-beta={beta:.6e}"),
                scaled,
                tol::STATIONARY_CALIBRATION_C,
            )
            .with_detail("|quad - main| * min(beta, r)^{3/2}"),
        );
    }

    // non-stationary vertical decay: fitted slope steeper than every
    // integration-by-parts exponent j = 1, 2, 3
    let decay_grid = geometric_grid(1e2, 1e3, 5);
    let mut pts = Vec::with_capacity(decay_grid.len());
    for &beta in &decay_grid {
        let v = w_dagger_quadrature(&w, 0.0, C64::new(1.0, beta))
            .map_err(|e| anyhow!("quadrature: {e}"))?;
        pts.push((beta.ln(), v.norm().max(1e-300).ln()));
    }
    let n = pts.len() as f64;
    let xbar = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let ybar = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.0 - xbar)).sum();
    let slope = pts.iter().map(|p| (p.0 - xbar) * (p.1 - ybar)).sum::<f64>() / sxx;
    items.push(
        ReportItem::check("nonstationary-decay-slope", slope, -3.0).with_detail(
            "log |Wdagger(0, 1+i beta)| slope over beta in [1e2, 1e3]; \
             passing means decay exponents j = 1, 2, 3 are all observed",
        ),
    );

    // Poisson summation on seeded random test functions
    let mut max_diff = 0.0f64;
    for i in 0..poisson_count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let center: f64 = rng.gen_range(-3.0..3.0);
        let width: f64 = rng.gen_range(0.5..2.5);
        let modulus: u32 = rng.gen_range(1..=6);
        let shift: i64 = rng.gen_range(-10..=10);
        let h = move |x: f64| (-((x - center) / width).powi(2)).exp();
        let window = (center - 9.0 * width, center + 9.0 * width);
        let check = poisson_check(&h, window, modulus, shift)
            .map_err(|e| anyhow!("poisson check {i}: {e}"))?;
        max_diff = max_diff.max(check.diff);
    }
    if poisson_count > 0 {
        items.push(
            ReportItem::check("poisson-max-diff", max_diff, tol::POISSON_CHECK)
                .with_detail(format!("{poisson_count} random test functions")),
        );
    }

    let envelope = ReportEnvelope::new("osc-check", res.into_echo(), seed, items);
    emit(&envelope, "json", out)
}

pub fn lvalue(
    args: &LvalueArgs,
    mut res: Resolver,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let d = res.get("D", args.d, 1u64)?;
    let p = res.get("p", args.p, 13u64)?;
    let k = res.get("k", args.k, 6u64)?;
    let r = res.get("r", args.r, 2u32)?;
    let extension = res.get("extension", args.extension, 0u32)?;
    let s_re = res.get("s-re", args.s_re, 2.0f64)?;
    let s_im = res.get("s-im", args.s_im, 0.0f64)?;
    let terms = res.get("terms", args.terms, 200_000usize)?;
    let euler_bound = res.get("euler-bound", args.euler_bound, 0u64)?;
    if terms == 0 || terms > 2_000_000 {
        bail!("terms={terms} out of range 1..=2000000");
    }
    if euler_bound > 1_000_000 {
        bail!("euler-bound={euler_bound} beyond 1e6");
    }
    let psi = build_psi(d, p, k, r, extension)?;
    let s = C64::new(s_re, s_im);
    let eval = match dirichlet_series(&psi, s, terms) {
        Ok(eval) => eval,
        Err(LfuncError::AbscissaTooSmall { sigma, min }) => {
            bail!("Re(s) = {sigma} below the series abscissa {min}")
        }
    };
    let mut items = vec![
        ReportItem::info("series-re", eval.value.re),
        ReportItem::info("series-im", eval.value.im),
        ReportItem::info("tail-bound", eval.tail_bound),
    ];
    if euler_bound > 0 {
        if s.re < 1.5 {
            bail!("euler cross-check needs Re(s) >= 1.5, got {}", s.re);
        }
        let product = euler_product(&psi, s, euler_bound);
        let rel = (eval.value - product).norm() / eval.value.norm();
        let gate = tol::SERIES_VS_EULER_REL.max(eval.tail_bound / eval.value.norm());
        items.push(
            ReportItem::check("series-vs-euler-rel", rel, gate).with_detail(format!(
                "euler {} over primes <= {euler_bound}; gate max(1e-6, tail/|value|)",
                fmt_c(product)
            )),
        );
    }
    let envelope = ReportEnvelope::new("lvalue", res.into_echo(), seed, items);
    emit(&envelope, "json", out)
}

pub fn scan(args: &ScanArgs, mut res: Resolver, seed: u64, out: Option<&Path>) -> Result<bool> {
    let d = res.get("D", args.d, 1u64)?;
    let p = res.get("p", args.p, 13u64)?;
    let k = res.get("k", args.k, 6u64)?;
    let r = res.get("r", args.r, 2u32)?;
    let extension = res.get("extension", args.extension, 0u32)?;
    let t_from = res.get("t-from", args.t_from, 4.0f64)?;
    let t_to = res.get("t-to", args.t_to, 40.0f64)?;
    let steps = res.get("steps", args.steps, 8usize)?;
    let cutoff = res.get("cutoff-exponent", args.cutoff_exponent, 1.05f64)?;
    let min_n = res.get("min-n", args.min_n, 8.0f64)?;
    if !(t_from > 0.0 && t_to >= t_from && steps >= 1) {
        bail!("need 0 < t-from <= t-to and steps >= 1");
    }
    if !(0.5..=2.0).contains(&cutoff) || min_n < 2.0 {
        bail!("cutoff-exponent in [0.5, 2] and min-n >= 2 required");
    }
    let cap = 2.0 * (t_to * p as f64).powf(cutoff);
    if cap > 2_000_000.0 {
        bail!("cutoff would need a coefficient table of {cap:.0} entries; lower t-to");
    }
    let psi = build_psi(d, p, k, r, extension)?;
    let policy = ScanPolicy {
        cutoff_exponent: cutoff,
        min_n,
    };
    let grid = geometric_grid(t_from, t_to, steps);
    let scan = growth_scan(&psi, &grid, policy);

    let cfg = config_line(&res.into_echo());
    let mut content = format!("# {SCHEMA_CSV} scan\n# config {cfg} seed={seed}\n");
    content.push_str("t,n_at_sup,sup_ratio\n");
    for row in &scan.rows {
        content.push_str(&format!(
            "{:.17e},{:.17e},{:.17e}\n",
            row.t, row.n_at_sup, row.sup_ratio
        ));
    }
    match scan.fit {
        Some(fit) => content.push_str(&format!(
            "# fit exponent={:.6e} intercept={:.6e} ci_half_width={:.6e}\n",
            fit.exponent, fit.intercept, fit.ci_half_width
        )),
        None => content.push_str("# fit insufficient-points\n"),
    }
    content.push_str(&format!("# note {}\n", scan.note));
    write_output(out, &content)?;
    Ok(true)
}
