//! One function per subcommand, each producing a result table and optional
//! metadata for the config echo.

use lrdent_core::cepstrum::{weighted_partial_sums, CepstrumSeries, MUTUAL_INFORMATION_TERMS};
use lrdent_core::divergence::{assess, Verdict};
use lrdent_core::paths::ArfimaGenerator;
use lrdent_core::spectrum::ArfimaSpectrum;
use lrdent_core::*;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::*;
use crate::grammar::{format_spec, parse_spec};
use crate::table::{Cell, Table};
use crate::CliError;

type Output = (Table, Value);
type Run = std::result::Result<Output, CliError>;

pub fn execute(command: &Command, cfg: &QuadratureConfig) -> Run {
    match command {
        Command::EntropyRate(a) => entropy_rate(&parse_spec(&a.spec)?, cfg),
        Command::Sweep(a) => sweep(a, cfg),
        Command::Spectrum(a) => spectrum(&parse_spec(&a.spec)?, a.points),
        Command::Cepstrum(a) => cepstrum(&parse_spec(&a.spec)?, a.kmax, cfg),
        Command::Mi(a) => mutual_information(&parse_spec(&a.spec)?, cfg),
        Command::Convergence(a) => convergence(&parse_spec(&a.spec)?, a, cfg),
        Command::Simulate(a) => simulate(a),
        Command::MaxEntropy(a) => max_entropy(a.model, cfg),
    }
}

fn rate_cells(r: Result<EntropyRateResult>) -> [Cell; 2] {
    match r {
        Ok(r) => [Cell::num(r.value), Cell::num(r.error_estimate)],
        Err(e) => [Cell::failed(&e), Cell::Missing],
    }
}

fn entropy_rate(spec: &ProcessSpec, cfg: &QuadratureConfig) -> Run {
    let mut t = Table::new(["spec", "method", "h", "error_estimate"]);
    let text = format_spec(spec);
    let mut row = |method: Method, r: Result<EntropyRateResult>| {
        let [h, err] = rate_cells(r);
        t.push(vec![Cell::text(&text), Cell::text(method.as_str()), h, err]);
    };
    match spec {
        ProcessSpec::Fgn(f) => {
            row(Method::Quadrature, fgn_entropy_rate(f.hurst(), f.variance(), cfg));
            row(Method::Approximation, fgn_entropy_rate_approx(f.hurst(), f.variance()));
        }
        ProcessSpec::Arfima(a) => {
            row(Method::ClosedForm, Ok(arfima_entropy_rate(a)));
            row(Method::Quadrature, entropy_rate_from_spectrum(&ArfimaSpectrum::new(a.clone()), cfg));
        }
    }
    Ok((t, json!({ "dependence": spec.dependence().as_str() })))
}

fn limit_cell(r: Result<Limit<EntropyRateResult>>) -> Cell {
    match r {
        Ok(Limit::Finite(r)) => Cell::num(r.value),
        Ok(Limit::Divergent) => Cell::Divergent,
        Err(e) => Cell::failed(e),
    }
}

fn sweep_row(model: SweepModel, h: f64, var: f64, cfg: &QuadratureConfig) -> Vec<Cell> {
    let (hc, vc) = (Cell::num(h), Cell::num(var));
    match model {
        SweepModel::Fgn => {
            let [exact, err] = rate_cells(fgn_entropy_rate(h, var, cfg));
            let [approx, _] = rate_cells(fgn_entropy_rate_approx(h, var));
            vec![hc, vc, exact, approx, err]
        }
        SweepModel::Arfima => {
            vec![hc, Cell::num(h - 0.5), vc, limit_cell(arfima0d0_entropy_rate_fixed_variance(h, var))]
        }
        SweepModel::Compare => {
            let fgn = fgn_entropy_rate(h, var, cfg);
            let arf = arfima0d0_entropy_rate_fixed_variance(h, var);
            let diff = match (&fgn, &arf) {
                (Ok(f), Ok(Limit::Finite(a))) => Cell::num(a.value - f.value),
                (Ok(_), Ok(Limit::Divergent)) => Cell::Divergent,
                (Err(e), _) => Cell::failed(e),
                (_, Err(e)) => Cell::failed(e),
            };
            let [f, _] = rate_cells(fgn);
            vec![hc, vc, f, limit_cell(arf), diff]
        }
    }
}

fn sweep(a: &SweepArgs, cfg: &QuadratureConfig) -> Run {
    if a.variances.is_empty() || a.variances.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(CliError::Usage(format!("variances must be positive, got {:?}", a.variances)));
    }
    let columns: &[&str] = match a.model {
        SweepModel::Fgn => &["H", "var", "h_exact", "h_approx", "h_exact_error"],
        SweepModel::Arfima => &["H", "d", "var", "h"],
        SweepModel::Compare => &["H", "var", "h_fgn", "h_arfima", "arfima_minus_fgn"],
    };
    let points: Vec<(f64, f64)> = a
        .variances
        .iter()
        .flat_map(|&v| a.grid.points().into_iter().map(move |h| (h, v)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let rows: Vec<Vec<Cell>> =
        pool.install(|| points.par_iter().map(|&(h, v)| sweep_row(a.model, h, v, cfg)).collect());
    let mut t = Table::new(columns.iter().copied());
    rows.into_iter().for_each(|r| t.push(r));
    Ok((t, Value::Null))
}

fn spectrum(spec: &ProcessSpec, points: usize) -> Run {
    if points < 1 {
        return Err(CliError::Usage("--points must be at least 1".into()));
    }
    let f = Spectrum::of(spec);
    let fgn = match spec {
        ProcessSpec::Fgn(g) => Some(*g),
        ProcessSpec::Arfima(_) => None,
    };
    let mut columns = vec!["lambda", "f", "ln_f"];
    if fgn.is_some() {
        columns.push("f_low_frequency");
    }
    let mut t = Table::new(columns);
    for k in 1..=points {
        let lambda = k as f64 * std::f64::consts::PI / points as f64;
        let ln_f = f.ln_density(lambda);
        let mut row = vec![Cell::num(lambda), Cell::num(ln_f.exp()), Cell::num(ln_f)];
        if let Some(g) = &fgn {
            row.push(fgn_spectral_density_approx(g, lambda).map_or_else(Cell::failed, Cell::num));
        }
        t.push(row);
    }
    Ok((t, Value::Null))
}

fn coefficient_cell(series: &CepstrumSeries, k: usize) -> Cell {
    match series.failures.iter().find(|(j, _)| *j == k) {
        Some((_, e)) => Cell::failed(e),
        None => Cell::num(series.coefficient(k)),
    }
}

fn cepstrum(spec: &ProcessSpec, kmax: usize, cfg: &QuadratureConfig) -> Run {
    let series = cepstral_coefficients(spec, kmax, cfg)?;
    let sums = weighted_partial_sums(&series);
    let hurst = match spec {
        ProcessSpec::Fgn(f) => Some(f.hurst()),
        ProcessSpec::Arfima(_) => None,
    };
    let mut columns = vec!["k", "b_k", "error_bound", "method", "weighted_partial_sum"];
    if hurst.is_some() {
        columns.push("b_k_low_frequency_asymptote");
    }
    let mut t = Table::new(columns);
    let mut first = vec![Cell::Int(0), Cell::num(series.b0), Cell::Missing, Cell::Missing, Cell::Missing];
    if hurst.is_some() {
        first.push(Cell::Missing);
    }
    t.push(first);
    for k in 1..=kmax {
        let mut row = vec![
            Cell::int(k),
            coefficient_cell(&series, k),
            Cell::num(series.error_bound(k)),
            Cell::text(series.method(k).as_str()),
            Cell::num(sums[k - 1]),
        ];
        if let Some(h) = hurst {
            row.push(fgn_asymptotic_cepstrum(h, k).map_or_else(Cell::failed, Cell::num));
        }
        t.push(row);
    }
    Ok((t, json!({ "dependence": spec.dependence().as_str() })))
}

fn verdict_cell(v: Verdict, scale: f64) -> Cell {
    match v {
        Verdict::Converged(x) => Cell::num(scale * x),
        Verdict::Divergent => Cell::Divergent,
        Verdict::Indeterminate => Cell::text(Verdict::Indeterminate.as_str()),
    }
}

fn mutual_information(spec: &ProcessSpec, cfg: &QuadratureConfig) -> Run {
    let info = mutual_information_past_future(spec, cfg)?;
    let assessment = match info.assessment {
        Some(a) => a,
        None => assess(&weighted_partial_sums(&cepstral_coefficients(spec, MUTUAL_INFORMATION_TERMS, cfg)?)),
    };
    let mut t = Table::new(["term", "m", "weighted_partial_sum", "mutual_information"]);
    for &(m, s) in &assessment.trace {
        t.push(vec![Cell::text("partial"), Cell::int(m), Cell::num(s), Cell::num(0.5 * s)]);
    }
    t.push(vec![Cell::text("limit"), Cell::Missing, verdict_cell(info.verdict, 2.0), verdict_cell(info.verdict, 1.0)]);

    let dependence = spec.dependence();
    let mut meta = json!({
        "dependence": dependence.as_str(),
        "verdict": info.verdict.as_str(),
        "trace_log_slope": assessment.slope,
    });
    if dependence == Dependence::Csrd {
        let criterion: Vec<Value> = [1usize << 12, 1 << 14, 1 << 16]
            .iter()
            .map(|&m| json!([m, li_covariance_criterion(spec, m).ok()]))
            .collect();
        let note = json!({
            "diagnostic": "covariance_criterion_vs_cepstrum",
            "detail": "Σ k γ(k)² settles while Σ k b_k² keeps growing",
            "sum_k_gamma_sq": criterion,
        });
        eprintln!("{note}");
        meta["covariance_criterion"] = note["sum_k_gamma_sq"].clone();
    }
    Ok((t, meta))
}

fn convergence(spec: &ProcessSpec, a: &ConvergenceArgs, cfg: &QuadratureConfig) -> Run {
    let series = convergence_series(spec, a.nmax, cfg)?;
    let meta = json!({ "entropy_rate": series.entropy_rate.value, "dependence": spec.dependence().as_str() });
    if !a.report {
        let mut t = Table::new(["n", "conditional_entropy", "gap", "n_gap"]);
        for e in &series.entries {
            t.push(vec![Cell::int(e.n), Cell::num(e.conditional_entropy), Cell::num(e.gap), Cell::num(e.n as f64 * e.gap)]);
        }
        return Ok((t, meta));
    }
    let r = lrdent_core::convergence::rate_report_from_series(&series);
    let mut t = Table::new(["quantity", "n", "value"]);
    let opt = |x: Option<f64>| x.map_or(Cell::Missing, Cell::num);
    t.push(vec![Cell::text("window_start"), Cell::int(r.window.0), Cell::Missing]);
    t.push(vec![Cell::text("window_end"), Cell::int(r.window.1), Cell::Missing]);
    for l in &r.local_slopes {
        t.push(vec![Cell::text("local_slope"), Cell::int(l.n), opt(l.slope)]);
    }
    t.push(vec![Cell::text("window_slope"), Cell::Missing, opt(r.window_slope)]);
    for (name, fit) in [("C_over_n", r.c_over_n), ("C_logn_over_n", r.c_logn_over_n)] {
        t.push(vec![Cell::text(name), Cell::Missing, opt(fit.map(|f| f.c))]);
        t.push(vec![Cell::text(format!("{name}_residual")), Cell::Missing, opt(fit.map(|f| f.residual_norm))]);
    }
    t.push(vec![Cell::text("sup_n_gap"), Cell::Missing, Cell::num(r.sup_n_gap)]);
    t.push(vec![Cell::text("verdict"), Cell::Missing, Cell::text(r.verdict.as_str())]);
    Ok((t, meta))
}

fn simulate(a: &SimulateArgs) -> Run {
    let spec = parse_spec(&a.spec)?;
    let mut req = PathRequest::new(spec.clone(), a.n, a.seed).with_stream(a.stream).with_ma_truncation(a.ma_truncation);
    req.burn_in = a.burn_in;
    req.allow_truncation_deficit = a.allow_truncation_deficit;
    let mut meta = json!({ "spec": format_spec(&spec), "seed": a.seed, "stream": a.stream });
    if let ProcessSpec::Arfima(arf) = &spec {
        let g = ArfimaGenerator::new(arf, a.n, a.ma_truncation, a.burn_in, a.allow_truncation_deficit)?;
        meta["ma_truncation"] = json!(g.truncation());
        meta["burn_in"] = json!(a.burn_in.unwrap_or(a.ma_truncation));
        meta["truncation_deficit"] = json!(g.truncation_deficit());
    }
    let path = generate_path(&req)?;
    let mut t = Table::new(["x"]);
    path.into_iter().for_each(|x| t.push(vec![Cell::num(x)]));
    Ok((t, meta))
}

fn max_entropy(model: MaxEntropyModel, cfg: &QuadratureConfig) -> Run {
    let models: &[EntropyModel] = match model {
        MaxEntropyModel::Fgn => &[EntropyModel::FgnExact, EntropyModel::FgnApprox],
        MaxEntropyModel::Arfima => &[EntropyModel::ArfimaFixedVariance],
        MaxEntropyModel::All => &[EntropyModel::FgnExact, EntropyModel::FgnApprox, EntropyModel::ArfimaFixedVariance],
    };
    let mut t = Table::new(["model", "H_star", "bracket", "evaluations"]);
    for m in models {
        let row = match entropy_rate_maximizer(*m, cfg) {
            Ok(r) => vec![Cell::text(m.as_str()), Cell::num(r.x), Cell::num(r.bracket), Cell::int(r.evaluations)],
            Err(e) => vec![Cell::text(m.as_str()), Cell::failed(e), Cell::Missing, Cell::Missing],
        };
        t.push(row);
    }
    Ok((t, Value::Null))
}
