//! Command implementations behind the `tsp` binary.
//!
//! Every command produces CSV with a header row. Floats are written with 17
//! significant digits so that runs can be diffed byte for byte; only the
//! `runtime_ns` columns vary between identical invocations.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::{ts_density, ts_plus_density, Truncation};
use crate::error::{Error, Result};
use crate::fourier_oracle::{
    density_fourier_oracle, price_eur_carr_madan, price_eur_gil_pelaez, price_eur_lewis, QuadConfig,
};
use crate::mellin_pricing::{price_eur, PriceQuote};
use crate::model::{BgParams, CharFn, MarketSpec, OneSidedParams, TsParams};
use crate::special_models::{
    bg_default_truncation, one_sided_default_truncation, price_eur_bg, price_eur_cgmy, price_eur_kobol,
    price_eur_plus, price_eur_vg,
};

/// Formats a float with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// Failures of the command layer, mapped onto process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed configuration; exit code 2.
    Config(String),
    /// At least one requested row failed; exit code 1.
    Rows(Vec<String>),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Rows(_) => 1,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Rows(names) => write!(f, "{} row(s) failed: {}", names.len(), names.join(", ")),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct KobolParams {
    pub alpha_plus: f64,
    pub lambda_plus: f64,
    pub alpha_minus: f64,
    pub lambda_minus: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CgmyParams {
    pub c: f64,
    pub g: f64,
    pub m: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct VgParams {
    pub sigma: f64,
    pub theta: f64,
    pub nu: f64,
}

/// A model together with its parameters, as named in configuration files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Ts(TsParams),
    Kobol(KobolParams),
    Cgmy(CgmyParams),
    Bg(BgParams),
    Vg(VgParams),
    TsPlus(OneSidedParams),
}

pub const MODEL_TAGS: [&str; 6] = ["ts", "kobol", "cgmy", "ts_plus", "bg", "vg"];

impl Model {
    pub fn from_json(tag: &str, params: serde_json::Value) -> std::result::Result<Self, String> {
        fn parse<T: serde::de::DeserializeOwned>(v: serde_json::Value) -> std::result::Result<T, String> {
            serde_json::from_value(v).map_err(|e| format!("params: {e}"))
        }
        Ok(match tag {
            "ts" => Model::Ts(parse(params)?),
            "kobol" => Model::Kobol(parse(params)?),
            "cgmy" => Model::Cgmy(parse(params)?),
            "bg" => Model::Bg(parse(params)?),
            "vg" => Model::Vg(parse(params)?),
            "ts_plus" => Model::TsPlus(parse(params)?),
            other => return Err(format!("model: unknown tag `{other}`, expected one of {MODEL_TAGS:?}")),
        })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Model::Ts(_) => "ts",
            Model::Kobol(_) => "kobol",
            Model::Cgmy(_) => "cgmy",
            Model::Bg(_) => "bg",
            Model::Vg(_) => "vg",
            Model::TsPlus(_) => "ts_plus",
        }
    }

    /// Two-sided parameters for the models priced by the general series.
    pub fn ts_params(&self) -> Result<TsParams> {
        match *self {
            Model::Ts(p) => Ok(p),
            Model::Kobol(p) => TsParams::kobol(p.alpha_plus, p.lambda_plus, p.alpha_minus, p.lambda_minus, p.beta),
            Model::Cgmy(p) => TsParams::cgmy(p.c, p.g, p.m, p.y),
            _ => Err(Error::domain(format!("model {} is not a two-sided tempered stable law", self.tag()))),
        }
    }

    pub fn char_fn(&self) -> Result<CharFn> {
        Ok(match *self {
            Model::Ts(_) | Model::Kobol(_) | Model::Cgmy(_) => self.ts_params()?.char_fn(),
            Model::Bg(p) => p.char_fn(),
            Model::Vg(p) => crate::model::vg_from_common(p.sigma, p.theta, p.nu)?.char_fn(),
            Model::TsPlus(p) => p.char_fn(),
        })
    }

    /// Number of summation indices of the model's pricing series.
    pub fn series_dims(&self) -> usize {
        match self {
            Model::Ts(_) | Model::Kobol(_) | Model::Cgmy(_) => 3,
            _ => 1,
        }
    }

    pub fn default_truncation(&self) -> Truncation {
        match self {
            Model::Ts(_) | Model::Kobol(_) | Model::Cgmy(_) => Truncation::pricing_default(),
            Model::Bg(_) | Model::Vg(_) => bg_default_truncation(),
            Model::TsPlus(_) => one_sided_default_truncation(),
        }
    }

    /// Truncation with every index capped at `n`.
    pub fn truncation(&self, n: usize) -> Result<Truncation> {
        Truncation::new(vec![n; self.series_dims()], 1e-16)
    }

    /// Quadrature settings for the Fourier oracles. Bilateral Gamma
    /// characteristic functions decay only like `|u|^{-(α₊+α₋)T}`, so the
    /// axis cap is raised for them.
    pub fn quad_config(&self) -> QuadConfig {
        match self {
            Model::Bg(_) | Model::Vg(_) => QuadConfig::default().with_max_truncation(1e7),
            _ => QuadConfig::default(),
        }
    }

    pub fn price_mellin(&self, market: &MarketSpec, trunc: &Truncation) -> Result<PriceQuote> {
        match *self {
            Model::Ts(p) => price_eur(market, &p, trunc),
            Model::Kobol(_) => price_eur_kobol(market, &self.ts_params()?, trunc),
            Model::Cgmy(p) => price_eur_cgmy(market, p.c, p.g, p.m, p.y, trunc),
            Model::Bg(p) => price_eur_bg(market, &p, trunc),
            Model::Vg(p) => price_eur_vg(market, p.sigma, p.theta, p.nu, trunc),
            Model::TsPlus(p) => price_eur_plus(market, &p, trunc),
        }
    }

    /// Series density of `X_t`, for the models that have one.
    pub fn density(&self, x: f64, t: f64) -> Result<f64> {
        match *self {
            Model::Ts(_) | Model::Kobol(_) | Model::Cgmy(_) => {
                ts_density(x, &self.ts_params()?.at_time(t)?, &Truncation::density_default())
            }
            Model::TsPlus(p) => ts_plus_density(x, &p.at_time(t)?, &Truncation::one_sided_density_default()),
            _ => Err(Error::domain(format!("no density series for model {}", self.tag()))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[value(name = "mellin")]
    Mellin,
    #[value(name = "gil_pelaez")]
    GilPelaez,
    #[value(name = "lewis")]
    Lewis,
    #[value(name = "carr_madan")]
    CarrMadan,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Mellin, Method::GilPelaez, Method::Lewis, Method::CarrMadan];

    pub fn tag(&self) -> &'static str {
        match self {
            Method::Mellin => "mellin",
            Method::GilPelaez => "gil_pelaez",
            Method::Lewis => "lewis",
            Method::CarrMadan => "carr_madan",
        }
    }
}

/// A European call price; `terms_summed` is set for series methods only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Priced {
    pub value: f64,
    pub terms_summed: Option<usize>,
}

impl From<PriceQuote> for Priced {
    fn from(q: PriceQuote) -> Self {
        Priced { value: q.value, terms_summed: Some(q.terms_summed) }
    }
}

pub fn price_with(model: &Model, method: Method, market: &MarketSpec, trunc: &Truncation) -> Result<Priced> {
    let oracle = |v: Result<f64>| v.map(|value| Priced { value, terms_summed: None });
    match method {
        Method::Mellin => model.price_mellin(market, trunc).map(Priced::from),
        Method::GilPelaez => oracle(price_eur_gil_pelaez(&model.char_fn()?, market, &model.quad_config())),
        Method::Lewis => oracle(price_eur_lewis(&model.char_fn()?, market, &model.quad_config())),
        Method::CarrMadan => oracle(price_eur_carr_madan(&model.char_fn()?, market, &model.quad_config())),
    }
}

/// A pricing configuration file.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub model: Model,
    pub market: Option<MarketSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: String,
    params: serde_json::Value,
    #[serde(default)]
    market: Option<serde_json::Value>,
}

impl Config {
    pub fn from_json_str(s: &str) -> std::result::Result<Self, CliError> {
        let raw: RawConfig = serde_json::from_str(s).map_err(|e| CliError::Config(e.to_string()))?;
        let model = Model::from_json(&raw.model, raw.params).map_err(CliError::Config)?;
        let market = match raw.market {
            Some(v) => Some(serde_json::from_value(v).map_err(|e| CliError::Config(format!("market: {e}")))?),
            None => None,
        };
        Ok(Config { model, market })
    }

    pub fn load(path: &Path) -> std::result::Result<Self, CliError> {
        let s = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Config::from_json_str(&s)
    }

    pub fn require_market(&self) -> std::result::Result<MarketSpec, CliError> {
        self.market.ok_or_else(|| CliError::Config("market: missing field `market`".into()))
    }
}

/// Parses `"50"` or `"50,50,50"` into a truncation for `model`.
pub fn parse_truncation(model: &Model, spec: &str) -> std::result::Result<Truncation, CliError> {
    let orders = parse_usize_list(spec)?;
    let dims = model.series_dims();
    let orders = match orders.len() {
        1 => vec![orders[0]; dims],
        n if n == dims => orders,
        n => return Err(CliError::Config(format!("--N: model {} takes 1 or {dims} orders, got {n}", model.tag()))),
    };
    Truncation::new(orders, 1e-16).map_err(|e| CliError::Config(format!("--N: {e}")))
}

pub fn parse_usize_list(spec: &str) -> std::result::Result<Vec<usize>, CliError> {
    spec.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| CliError::Config(format!("--N: `{s}`: {e}"))))
        .collect()
}

pub fn parse_f64_list(flag: &str, spec: &str) -> std::result::Result<Vec<f64>, CliError> {
    spec.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| CliError::Config(format!("{flag}: `{s}`: {e}"))))
        .collect()
}

fn orders_tag(trunc: &Truncation) -> String {
    trunc.orders().iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

fn status_of<T>(r: &Result<T>) -> String {
    match r {
        Ok(_) => "ok".into(),
        Err(e) => e.name().into(),
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// One priced contract.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub model: String,
    pub method: String,
    pub market: MarketSpec,
    pub truncation: String,
    pub price: Option<f64>,
    pub terms_summed: Option<usize>,
    pub runtime_ns: u128,
    pub status: String,
}

impl RunRecord {
    pub const HEADER: [&'static str; 12] =
        ["model", "method", "s0", "k", "t", "r", "q", "n", "price", "terms_summed", "runtime_ns", "status"];

    pub fn row(&self) -> Vec<String> {
        let m = &self.market;
        vec![
            self.model.clone(),
            self.method.clone(),
            fmt_f64(m.spot),
            fmt_f64(m.strike),
            fmt_f64(m.maturity),
            fmt_f64(m.rate),
            fmt_f64(m.dividend),
            self.truncation.clone(),
            opt(self.price),
            self.terms_summed.map(|n| n.to_string()).unwrap_or_default(),
            self.runtime_ns.to_string(),
            self.status.clone(),
        ]
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_nanos())
}

pub fn run_price(model: &Model, method: Method, market: &MarketSpec, trunc: &Truncation) -> RunRecord {
    let (r, ns) = timed(|| price_with(model, method, market, trunc));
    RunRecord {
        model: model.tag().into(),
        method: method.tag().into(),
        market: *market,
        truncation: if method == Method::Mellin { orders_tag(trunc) } else { String::new() },
        price: r.as_ref().ok().map(|q| q.value),
        terms_summed: r.as_ref().ok().and_then(|q| q.terms_summed),
        runtime_ns: ns,
        status: status_of(&r),
    }
}

/// A CSV table held in memory until every row is ready.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Status of each row, `ok` or an error name.
    pub statuses: Vec<String>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new(), statuses: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>, status: String) {
        self.rows.push(row);
        self.statuses.push(status);
    }

    pub fn write_to<W: Write>(&self, w: W) -> std::result::Result<(), CliError> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.header)?;
        for r in &self.rows {
            out.write_record(r)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    /// Error names of the failed rows.
    pub fn failures(&self) -> Vec<String> {
        self.statuses.iter().filter(|s| s.as_str() != "ok").cloned().collect()
    }
}

pub fn cmd_price(config: &Config, method: Method, n: Option<&str>) -> std::result::Result<Table, CliError> {
    let market = config.require_market()?;
    let trunc = match n {
        Some(s) => parse_truncation(&config.model, s)?,
        None => config.model.default_truncation(),
    };
    let rec = run_price(&config.model, method, &market, &trunc);
    let mut t = Table::new(&RunRecord::HEADER);
    t.push(rec.row(), rec.status.clone());
    Ok(t)
}

/// The density plot grid: 21 points from 0.1 to 5.
pub fn default_density_grid() -> Vec<f64> {
    (0..21).map(|i| 0.1 + 0.245 * i as f64).collect()
}

pub fn cmd_density(config: &Config, xs: &[f64], t: f64) -> std::result::Result<Table, CliError> {
    let cf = config.model.char_fn().map_err(|e| CliError::Config(e.to_string()))?;
    let rows: Vec<(Vec<String>, String)> = xs
        .par_iter()
        .map(|&x| {
            let r = config.model.density(x, t).and_then(|s| {
                let o = density_fourier_oracle(x, &cf, t, &QuadConfig::density())?;
                Ok((s, o))
            });
            let status = status_of(&r);
            let (s, o) = match r {
                Ok((s, o)) => (Some(s), Some(o)),
                Err(_) => (None, None),
            };
            let diff = s.zip(o).map(|(s, o)| (s - o).abs());
            (vec![fmt_f64(x), opt(s), opt(o), opt(diff), status.clone()], status)
        })
        .collect();
    let mut table = Table::new(&["x", "series_value", "oracle_value", "abs_diff", "status"]);
    for (r, s) in rows {
        table.push(r, s);
    }
    Ok(table)
}

pub fn cmd_convergence(
    config: &Config,
    ns: &[usize],
    oracle: Method,
) -> std::result::Result<Table, CliError> {
    let market = config.require_market()?;
    let model = &config.model;
    let reference = price_with(model, oracle, &market, &model.default_truncation());
    let mut table = Table::new(&["model", "n", "price", "abs_err_vs_oracle", "runtime_ns", "status"]);
    for &n in ns {
        let trunc = model.truncation(n).map_err(|e| CliError::Config(format!("--N: {e}")))?;
        let (r, ns_elapsed) = timed(|| model.price_mellin(&market, &trunc));
        let r = r.and_then(|q| Ok((q.value, reference.clone()?.value)));
        let status = status_of(&r);
        let (price, err) = match r {
            Ok((p, o)) => (Some(p), Some((p - o).abs())),
            Err(_) => (None, None),
        };
        table.push(
            vec![model.tag().into(), n.to_string(), opt(price), opt(err), ns_elapsed.to_string(), status.clone()],
            status,
        );
    }
    Ok(table)
}

/// The six comparison-table models reduced from one set of two-sided parameters.
pub fn table4_models(p: &TsParams) -> Vec<(&'static str, std::result::Result<Model, Error>)> {
    let kobol = KobolParams {
        alpha_plus: p.alpha_plus(),
        lambda_plus: p.lambda_plus(),
        alpha_minus: p.alpha_minus(),
        lambda_minus: p.lambda_minus(),
        beta: p.beta_plus(),
    };
    let cgmy = CgmyParams { c: p.alpha_plus(), g: p.lambda_minus(), m: p.lambda_plus(), y: p.beta_plus() };
    let bg = BgParams::new(p.alpha_plus(), p.lambda_plus(), p.alpha_minus(), p.lambda_minus()).map(Model::Bg);
    let vg = BgParams::new(p.alpha_plus(), p.lambda_plus(), p.alpha_plus(), p.lambda_minus())
        .and_then(|b| b.to_vg())
        .map(|(sigma, theta, nu)| Model::Vg(VgParams { sigma, theta, nu }));
    let plus = OneSidedParams::new(p.alpha_plus(), p.beta_plus(), p.lambda_plus()).map(Model::TsPlus);
    vec![
        ("ts", Ok(Model::Ts(*p))),
        ("kobol", Ok(Model::Kobol(kobol))),
        ("cgmy", Ok(Model::Cgmy(cgmy))),
        ("ts_plus", plus),
        ("bg", bg),
        ("vg", vg),
    ]
}

/// Two-sided parameters exactly as printed for the comparison table.
pub fn printed_params() -> TsParams {
    TsParams::new(
        1.4,
        0.1 + std::f64::consts::E / 10.0,
        0.44,
        0.4,
        0.5 - std::f64::consts::PI / 100.0,
        0.35,
    )
    .expect("printed parameters are valid as a law")
}

/// The printed parameters with the tempering rates replaced by
/// λ₊ = 3.5, λ₋ = 2.0 so that the asset has a finite first moment.
pub fn validated_params() -> TsParams {
    TsParams::new(
        1.4,
        0.1 + std::f64::consts::E / 10.0,
        3.5,
        0.4,
        0.5 - std::f64::consts::PI / 100.0,
        2.0,
    )
    .expect("validated parameters are valid")
}

/// The comparison-table market: S0 = 1, K = 1.5, T = 1.2, r = 0.02, q = 0.05.
pub fn table4_market() -> MarketSpec {
    MarketSpec::new(1.0, 1.5, 1.2, 0.02, 0.05).expect("valid market")
}

/// Reference values keyed by method then model tag.
pub type PaperValues = BTreeMap<String, BTreeMap<String, f64>>;

pub fn load_paper_values(path: &Path) -> std::result::Result<PaperValues, CliError> {
    let s = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Long-format comparison table, one row per (method, model) in method-major order.
pub fn cmd_table4(
    params: &TsParams,
    methods: &[Method],
    paper: Option<&PaperValues>,
) -> Table {
    let market = table4_market();
    let models = table4_models(params);
    let cells: Vec<(Method, &'static str, &std::result::Result<Model, Error>)> =
        methods.iter().flat_map(|&m| models.iter().map(move |(tag, model)| (m, *tag, model))).collect();
    let results: Vec<(Result<Priced>, u128)> = cells
        .par_iter()
        .map(|(method, _, model)| match model {
            Ok(model) => timed(|| price_with(model, *method, &market, &model.default_truncation())),
            Err(e) => (Err(e.clone()), 0),
        })
        .collect();
    let mut table =
        Table::new(&["method", "model", "price", "runtime_ns", "status", "paper_value", "diff_vs_paper"]);
    for ((method, tag, _), (r, ns)) in cells.iter().zip(results) {
        let price = r.as_ref().ok().map(|q| q.value);
        let reference = paper.and_then(|p| p.get(method.tag())).and_then(|row| row.get(*tag)).copied();
        let diff = price.zip(reference).map(|(a, b)| a - b);
        let status = status_of(&r);
        table.push(
            vec![
                method.tag().into(),
                tag.to_string(),
                opt(price),
                ns.to_string(),
                status.clone(),
                opt(reference),
                opt(diff),
            ],
            status,
        );
    }
    table
}

pub const DEFAULT_TARGETS: [f64; 5] = [1e-5, 1e-6, 1e-7, 1e-8, 1e-9];

/// Order used as the converged reference in timing runs.
pub fn reference_order(model: &Model) -> usize {
    match model.series_dims() {
        3 => 80,
        _ => match model {
            Model::TsPlus(_) => 120,
            _ => 400,
        },
    }
}

fn median_runtime(model: &Model, market: &MarketSpec, trunc: &Truncation) -> u128 {
    let _ = model.price_mellin(market, trunc);
    let mut runs: Vec<u128> = (0..9).map(|_| timed(|| model.price_mellin(market, trunc)).1).collect();
    runs.sort_unstable();
    runs[4]
}

pub fn cmd_timing(config: &Config, targets: &[f64]) -> std::result::Result<Table, CliError> {
    let market = config.require_market()?;
    let model = &config.model;
    let top = reference_order(model);
    let trunc_of = |n: usize| model.truncation(n).expect("positive order");
    let reference = model.price_mellin(&market, &trunc_of(top));
    let mut table = Table::new(&["target", "method", "n", "min_runtime_ns", "achieved", "status"]);
    for &target in targets {
        let reference = match &reference {
            Ok(q) => q.value,
            Err(e) => {
                table.push(
                    vec![fmt_f64(target), "mellin".into(), String::new(), String::new(), "false".into(), e.name().into()],
                    e.name().into(),
                );
                continue;
            }
        };
        let within = |n: usize| {
            model.price_mellin(&market, &trunc_of(n)).map(|q| (q.value - reference).abs() <= target).unwrap_or(false)
        };
        // smallest order meeting the target, assuming the error decreases with the order
        let found = if within(top - 1) {
            let (mut lo, mut hi) = (1usize, top - 1);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if within(mid) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            Some(lo)
        } else {
            None
        };
        let row = match found {
            Some(n) => vec![
                fmt_f64(target),
                "mellin".into(),
                n.to_string(),
                median_runtime(model, &market, &trunc_of(n)).to_string(),
                "true".into(),
                "ok".into(),
            ],
            None => vec![fmt_f64(target), "mellin".into(), String::new(), String::new(), "false".into(), "ok".into()],
        };
        table.push(row, "ok".into());
    }
    Ok(table)
}

/// Sizes the global worker pool from `TSP_THREADS` (unset or 0 means automatic).
pub fn init_thread_pool() {
    let n = std::env::var("TSP_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(0);
    if n > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
