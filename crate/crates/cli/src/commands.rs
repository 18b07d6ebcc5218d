//! Command implementations: each builds the full machine-readable
//! document (CSV or JSON) plus an optional human-readable summary.

use serde::Serialize;

use qdf_core::{
    boundary_curves, classical_correlation, dephase_bell_diagonal, dephase_extended,
    discord_analytic, discord_bruteforce, discord_rate, dominant_correlation, mutual_information,
    sample_surface, BellDiagonal, Condition, DiscordRate, Error, FreezeReport, NoiseSchedule,
    ParametrizedTime, Result, StateSpec,
};

use crate::output;

/// Machine output plus an optional summary line for standard error.
pub struct CommandOutput {
    pub document: String,
    pub summary: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Inclusive range `start:stop:steps`, `steps >= 2`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Range {
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidGrid(format!(
                "range must be start:stop:steps, got `{text}`"
            )));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| Error::InvalidGrid(format!("`{}` is not a number", parts[0])))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| Error::InvalidGrid(format!("`{}` is not a number", parts[1])))?;
        let steps: usize = parts[2]
            .parse()
            .map_err(|_| Error::InvalidGrid(format!("`{}` is not a step count", parts[2])))?;
        if steps < 2 {
            return Err(Error::InvalidGrid(format!(
                "range needs at least 2 steps, got {steps}"
            )));
        }
        Ok(Self { start, stop, steps })
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        let span = self.stop - self.start;
        let denom = (self.steps - 1) as f64;
        (0..self.steps).map(move |i| self.start + span * i as f64 / denom)
    }
}

fn parse_state(text: &str) -> Result<StateSpec> {
    text.parse()
}

// ---------------------------------------------------------------- eval

#[derive(Serialize)]
struct EvalConfig<'a> {
    command: &'static str,
    state: &'a str,
    q: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid_n: Option<usize>,
}

#[derive(Serialize)]
struct EvalReport {
    #[serde(rename = "Q")]
    discord: f64,
    #[serde(rename = "I")]
    total: f64,
    #[serde(rename = "I_c")]
    classical: f64,
    branch: String,
    #[serde(rename = "c_M")]
    c_max: f64,
    #[serde(rename = "Q_brute", skip_serializing_if = "Option::is_none")]
    discord_brute: Option<f64>,
}

#[derive(Serialize)]
struct EvalDoc<'a> {
    config: EvalConfig<'a>,
    report: EvalReport,
}

pub fn eval(state: &str, q: f64, grid_n: Option<usize>, format: Format) -> Result<CommandOutput> {
    let spec = parse_state(state)?;
    let s = spec.standard_form();
    let q = ParametrizedTime::new(q)?;
    let dom = dominant_correlation(&s, q);
    let discord_brute = match grid_n {
        Some(n) => {
            let rho = match spec {
                StateSpec::Standard(st) => dephase_bell_diagonal(&st, q).density_matrix(),
                StateSpec::Extended(e) => dephase_extended(&e, q).density_matrix(),
            };
            Some(discord_bruteforce(&rho, n)?)
        }
        None => None,
    };
    let report = EvalReport {
        discord: discord_analytic(&s, q),
        total: mutual_information(&s, q),
        classical: classical_correlation(&s, q),
        branch: dom.branch.to_string(),
        c_max: dom.c_max,
        discord_brute,
    };

    let document = match format {
        Format::Json => output::to_json(&EvalDoc {
            config: EvalConfig {
                command: "eval",
                state,
                q: q.value(),
                grid_n,
            },
            report,
        }),
        Format::Csv => {
            let (header, brute_cell) = match report.discord_brute {
                Some(b) => (
                    "Q,I,I_c,branch,c_M,Q_brute",
                    format!(",{}", output::float(b)),
                ),
                None => ("Q,I,I_c,branch,c_M", String::new()),
            };
            let row = format!(
                "{},{},{},{},{}{}",
                output::float(report.discord),
                output::float(report.total),
                output::float(report.classical),
                report.branch,
                output::float(report.c_max),
                brute_cell,
            );
            output::to_csv(header, &[row])
        }
    };
    Ok(CommandOutput {
        document,
        summary: None,
    })
}

// ---------------------------------------------------------- trajectory

#[derive(Serialize)]
struct TrajectoryConfig<'a> {
    command: &'static str,
    state: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    schedule: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q_range: Option<Range>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_range: Option<Range>,
}

#[derive(Serialize)]
struct TrajectoryRow {
    t: f64,
    q: f64,
    #[serde(rename = "Q")]
    discord: f64,
    #[serde(rename = "I_c")]
    classical: f64,
    #[serde(rename = "I")]
    total: f64,
    branch: String,
    frozen: bool,
}

#[derive(Serialize)]
struct TrajectoryDoc<'a> {
    config: TrajectoryConfig<'a>,
    rows: Vec<TrajectoryRow>,
}

/// Threshold on `|Q - Q(0)|` below which a row is flagged frozen.
const FROZEN_FLAG_TOL: f64 = 1e-9;

pub fn trajectory(
    state: &str,
    schedule: Option<&str>,
    q_range: Option<&str>,
    t_range: Option<&str>,
    format: Format,
) -> Result<CommandOutput> {
    let spec = parse_state(state)?;
    let s = spec.standard_form();

    let q_range = q_range.map(Range::parse).transpose()?;
    let t_range = t_range.map(Range::parse).transpose()?;
    let sched: Option<NoiseSchedule> = schedule.map(str::parse).transpose()?;

    let points: Vec<(f64, ParametrizedTime)> = match (q_range, &sched, t_range) {
        (Some(range), None, None) => range
            .values()
            .map(|q| ParametrizedTime::new(q).map(|qt| (q, qt)))
            .collect::<Result<_>>()?,
        (None, Some(sched), Some(range)) => range
            .values()
            .map(|t| sched.q_at(t).map(|qt| (t, qt)))
            .collect::<Result<_>>()?,
        _ => {
            return Err(Error::InvalidGrid(
                "trajectory takes either --q-range, or --schedule with --t-range".into(),
            ))
        }
    };

    let base = discord_analytic(&s, ParametrizedTime::new(0.0).expect("zero is in range"));
    let rows: Vec<TrajectoryRow> = points
        .into_iter()
        .map(|(t, q)| {
            let discord = discord_analytic(&s, q);
            TrajectoryRow {
                t,
                q: q.value(),
                discord,
                classical: classical_correlation(&s, q),
                total: mutual_information(&s, q),
                branch: dominant_correlation(&s, q).branch.to_string(),
                frozen: (discord - base).abs() <= FROZEN_FLAG_TOL,
            }
        })
        .collect();

    let document = match format {
        Format::Json => output::to_json(&TrajectoryDoc {
            config: TrajectoryConfig {
                command: "trajectory",
                state,
                schedule,
                q_range,
                t_range,
            },
            rows,
        }),
        Format::Csv => {
            let lines: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{},{},{},{},{}",
                        output::float(r.t),
                        output::float(r.q),
                        output::float(r.discord),
                        output::float(r.classical),
                        output::float(r.total),
                        r.branch,
                        r.frozen,
                    )
                })
                .collect();
            output::to_csv("t,q,Q,I_c,I,branch,frozen", &lines)
        }
    };
    Ok(CommandOutput {
        document,
        summary: None,
    })
}

// -------------------------------------------------------- check-freeze

#[derive(Serialize)]
struct CheckConfig<'a> {
    command: &'static str,
    state: &'a str,
    tol: f64,
}

#[derive(Serialize)]
struct CheckReport {
    condition: String,
    order_class: Option<String>,
    boundary: bool,
    frozen_value: Option<f64>,
    q_transition: Option<f64>,
    sudden_rate: Option<f64>,
}

#[derive(Serialize)]
struct CheckDoc<'a> {
    config: CheckConfig<'a>,
    report: CheckReport,
}

pub fn check_freeze(state: &str, tol: f64, format: Format) -> Result<CommandOutput> {
    if tol <= 0.0 {
        return Err(Error::InvalidGrid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let spec = parse_state(state)?;
    let s = spec.standard_form();
    let analysis = FreezeReport::analyze(&s, tol);
    let report = CheckReport {
        condition: analysis
            .verdict
            .condition
            .map(|c| c.to_string())
            .unwrap_or_else(|| "none".into()),
        order_class: analysis.verdict.order_class.map(|o| o.to_string()),
        boundary: analysis.verdict.boundary,
        frozen_value: analysis.frozen_value,
        q_transition: analysis.q_transition,
        sudden_rate: analysis.sudden_rate,
    };

    let summary = format!(
        "condition={} order={} boundary={} frozen_value={} q_transition={} sudden_rate={}",
        report.condition,
        report.order_class.as_deref().unwrap_or("-"),
        report.boundary,
        report
            .frozen_value
            .map(|v| v.to_string())
            .unwrap_or_else(|| "-".into()),
        report
            .q_transition
            .map(|v| v.to_string())
            .unwrap_or_else(|| "-".into()),
        report
            .sudden_rate
            .map(|v| v.to_string())
            .unwrap_or_else(|| "-".into()),
    );

    let document = match format {
        Format::Json => output::to_json(&CheckDoc {
            config: CheckConfig {
                command: "check-freeze",
                state,
                tol,
            },
            report,
        }),
        Format::Csv => {
            let row = format!(
                "{},{},{},{},{},{}",
                report.condition,
                report.order_class.as_deref().unwrap_or(""),
                report.boundary,
                output::opt_float(report.frozen_value),
                output::opt_float(report.q_transition),
                output::opt_float(report.sudden_rate),
            );
            output::to_csv(
                "condition,order_class,boundary,frozen_value,q_transition,sudden_rate",
                &[row],
            )
        }
    };
    Ok(CommandOutput {
        document,
        summary: Some(summary),
    })
}

// ---------------------------------------------------- surface/boundary

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionFilter {
    CondA,
    CondB,
    Both,
}

impl ConditionFilter {
    fn label(&self) -> &'static str {
        match self {
            ConditionFilter::CondA => "CondA",
            ConditionFilter::CondB => "CondB",
            ConditionFilter::Both => "both",
        }
    }
}

#[derive(Serialize)]
struct SurfaceConfig {
    command: &'static str,
    condition: &'static str,
    n: usize,
}

#[derive(Serialize)]
struct PointRow {
    sqrt_l1: f64,
    sqrt_l2: f64,
    sqrt_l3: f64,
    condition: String,
    curve_id: usize,
}

#[derive(Serialize)]
struct PointDoc {
    config: SurfaceConfig,
    rows: Vec<PointRow>,
}

const POINT_HEADER: &str = "sqrt_l1,sqrt_l2,sqrt_l3,condition,curve_id";

fn point_csv(rows: &[PointRow]) -> String {
    let lines: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "{},{},{},{},{}",
                output::float(r.sqrt_l1),
                output::float(r.sqrt_l2),
                output::float(r.sqrt_l3),
                r.condition,
                r.curve_id,
            )
        })
        .collect();
    output::to_csv(POINT_HEADER, &lines)
}

pub fn surface(filter: ConditionFilter, n: usize, format: Format) -> Result<CommandOutput> {
    let conditions: &[Condition] = match filter {
        ConditionFilter::CondA => &[Condition::A],
        ConditionFilter::CondB => &[Condition::B],
        ConditionFilter::Both => &[Condition::A, Condition::B],
    };
    let mut rows = Vec::new();
    for &condition in conditions {
        for p in sample_surface(condition, n)? {
            rows.push(PointRow {
                sqrt_l1: p.sqrt_l1,
                sqrt_l2: p.sqrt_l2,
                sqrt_l3: p.sqrt_l3,
                condition: p.condition.to_string(),
                curve_id: 0,
            });
        }
    }
    let document = match format {
        Format::Json => output::to_json(&PointDoc {
            config: SurfaceConfig {
                command: "surface",
                condition: filter.label(),
                n,
            },
            rows,
        }),
        Format::Csv => point_csv(&rows),
    };
    Ok(CommandOutput {
        document,
        summary: None,
    })
}

#[derive(Serialize)]
struct BoundaryConfig {
    command: &'static str,
    n: usize,
}

#[derive(Serialize)]
struct BoundaryDoc {
    config: BoundaryConfig,
    rows: Vec<PointRow>,
}

pub fn boundary(n: usize, format: Format) -> Result<CommandOutput> {
    let mut rows = Vec::new();
    for curve in boundary_curves(n)? {
        for p in curve {
            rows.push(PointRow {
                sqrt_l1: p.sqrt_l1,
                sqrt_l2: p.sqrt_l2,
                sqrt_l3: p.sqrt_l3,
                condition: p.condition.to_string(),
                curve_id: p.curve,
            });
        }
    }
    let document = match format {
        Format::Json => output::to_json(&BoundaryDoc {
            config: BoundaryConfig {
                command: "boundary",
                n,
            },
            rows,
        }),
        Format::Csv => point_csv(&rows),
    };
    Ok(CommandOutput {
        document,
        summary: None,
    })
}

// ---------------------------------------------------------------- rate

#[derive(Serialize)]
struct RateConfig<'a> {
    command: &'static str,
    state: &'a str,
    q: f64,
}

#[derive(Serialize)]
struct RateRow {
    q: f64,
    branch: String,
    rate: f64,
}

#[derive(Serialize)]
struct RateDoc<'a> {
    config: RateConfig<'a>,
    rows: Vec<RateRow>,
}

pub fn rate(state: &str, q: f64, format: Format) -> Result<CommandOutput> {
    let spec = parse_state(state)?;
    let s: BellDiagonal = spec.standard_form();
    let qt = ParametrizedTime::new(q)?;
    let rows: Vec<RateRow> = match discord_rate(&s, qt)? {
        DiscordRate::Single { branch, rate } => vec![RateRow {
            q: qt.value(),
            branch: branch.to_string(),
            rate,
        }],
        DiscordRate::Tie { rates } => rates
            .into_iter()
            .map(|(branch, rate)| RateRow {
                q: qt.value(),
                branch: branch.to_string(),
                rate,
            })
            .collect(),
    };
    let document = match format {
        Format::Json => output::to_json(&RateDoc {
            config: RateConfig {
                command: "rate",
                state,
                q: qt.value(),
            },
            rows,
        }),
        Format::Csv => {
            let lines: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{}",
                        output::float(r.q),
                        r.branch,
                        output::float(r.rate)
                    )
                })
                .collect();
            output::to_csv("q,branch,rate", &lines)
        }
    };
    Ok(CommandOutput {
        document,
        summary: None,
    })
}
