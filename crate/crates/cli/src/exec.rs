use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use ramsum::asymptotics::{alpha_r, asymptotic_report};
use ramsum::congruences::{count_roots, CountStrategy, PolySystem};
use ramsum::even::{t_a, TStrategy};
use ramsum::ramanujan::ramanujan_sum;
use ramsum::sums::{
    e_g_direct, e_g_fast, e_shift, e_shift_with, r_func, r_g_direct, r_g_fast, r_shift,
    r_shift_with, Route, ShiftVector,
};
use ramsum::verify::{run_suite, SuiteReport, SUITES};
use ramsum::ModuliTuple;

use crate::args::{Command, ModuliArgs, RootStrategy, SumStrategy, TStrategyArg};
use crate::Failure;

/// One evaluated input: its echo fields and the exact value as a string.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub fields: Vec<(&'static str, Value)>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CommandResult {
    Rows(Vec<Row>),
    Record(Vec<(&'static str, Value)>),
    Verify(Vec<SuiteReport>),
}

impl CommandResult {
    pub fn passed(&self) -> bool {
        match self {
            CommandResult::Verify(reports) => reports.iter().all(SuiteReport::passed),
            _ => true,
        }
    }
}

/// The moduli tuples to evaluate: the explicit list, or (m, …, m) of
/// length `r` for each m in the range.
fn moduli_tuples(args: &ModuliArgs, r: usize) -> Vec<Vec<u64>> {
    match (&args.moduli, &args.range) {
        (Some(list), _) => vec![list.0.clone()],
        (None, Some(range)) => range.clone().map(|m| vec![m; r]).collect(),
        (None, None) => unreachable!("clap requires one of --moduli / --range"),
    }
}

enum System {
    Polys(String, PolySystem),
    Shifts(ShiftVector),
    Ones(usize),
}

impl System {
    fn from_args(polys: Option<String>, shifts: Option<Vec<i64>>, moduli: &ModuliArgs) -> Result<Self, Failure> {
        let system = match (polys, shifts) {
            (Some(text), _) => {
                let parsed = PolySystem::parse(&text)?;
                System::Polys(text, parsed)
            }
            (None, Some(a)) => System::Shifts(ShiftVector::new(a)?),
            (None, None) => System::Ones(moduli.moduli.as_ref().map_or(1, |m| m.0.len())),
        };
        if let Some(list) = &moduli.moduli {
            let (what, n) = match &system {
                System::Polys(_, g) => ("polynomial", g.len()),
                System::Shifts(a) => ("shift", a.len()),
                System::Ones(n) => ("shift", *n),
            };
            if n != list.0.len() {
                return Err(Failure::usage(format!(
                    "{n} {what}{} but {} moduli",
                    if n == 1 { "" } else { "s" },
                    list.0.len()
                )));
            }
        }
        Ok(system)
    }

    fn len(&self) -> usize {
        match self {
            System::Polys(_, g) => g.len(),
            System::Shifts(a) => a.len(),
            System::Ones(n) => *n,
        }
    }

    fn as_polys(&self) -> Result<PolySystem, Failure> {
        Ok(match self {
            System::Polys(_, g) => g.clone(),
            System::Shifts(a) => a.to_system()?,
            System::Ones(n) => PolySystem::linear_shifts(&vec![1; *n])?,
        })
    }

    fn echo(&self, fields: &mut Vec<(&'static str, Value)>) {
        match self {
            System::Polys(text, _) => fields.push(("polys", json!(text))),
            System::Shifts(a) => fields.push(("shifts", json!(a.as_slice()))),
            System::Ones(_) => {}
        }
    }
}

fn route(strategy: SumStrategy) -> Route {
    match strategy {
        SumStrategy::General => Route::General,
        _ => Route::Auto,
    }
}

pub fn execute(command: Command) -> Result<CommandResult, Failure> {
    match command {
        Command::C { moduli, a } => {
            let ns: Vec<u64> = match (&moduli.moduli, &moduli.range) {
                (Some(list), _) => list.0.clone(),
                (None, Some(range)) => range.clone().collect(),
                (None, None) => unreachable!("clap requires one of --moduli / --range"),
            };
            ns.into_iter()
                .map(|n| {
                    Ok(Row {
                        fields: vec![("n", json!(n)), ("k", json!(a))],
                        value: ramanujan_sum(n, a)?.to_string(),
                    })
                })
                .collect::<Result<_, Failure>>()
                .map(CommandResult::Rows)
        }

        Command::E { moduli, polys, shifts, strategy } => {
            let system = System::from_args(polys, shifts.map(|s| s.0), &moduli)?;
            rows_over(&moduli, &system, |t| {
                Ok(match (&system, strategy) {
                    (_, SumStrategy::Direct) => e_g_direct(&system.as_polys()?, t)?,
                    (System::Shifts(a), SumStrategy::Fast) => e_shift(a, t)?,
                    (System::Shifts(a), SumStrategy::General) => e_shift_with(a, t, route(strategy))?,
                    (_, _) => e_g_fast(&system.as_polys()?, t)?,
                }
                .to_string())
            })
        }

        Command::R { moduli, polys, shifts, strategy } => {
            let system = System::from_args(polys, shifts.map(|s| s.0), &moduli)?;
            rows_over(&moduli, &system, |t| {
                Ok(match (&system, strategy) {
                    (_, SumStrategy::Direct) => r_g_direct(&system.as_polys()?, t)?,
                    (System::Shifts(a), SumStrategy::Fast) => r_shift(a, t)?,
                    (System::Shifts(a), SumStrategy::General) => r_shift_with(a, t, route(strategy))?,
                    (System::Ones(_), _) => r_func(t)?,
                    (System::Polys(_, g), _) => r_g_fast(g, t)?,
                }
                .to_string())
            })
        }

        Command::T { moduli, a, r, strategy } => {
            let strategy = match strategy {
                TStrategyArg::Closed => TStrategy::Closed,
                TStrategyArg::Spectral => TStrategy::Spectral,
                TStrategyArg::Direct => TStrategy::Direct,
            };
            moduli_tuples(&moduli, r.unwrap_or(1))
                .into_iter()
                .map(|m| {
                    let t = ModuliTuple::new(&m)?;
                    Ok(Row {
                        fields: vec![("moduli", json!(m)), ("a", json!(a))],
                        value: t_a(&t, a, strategy)?.to_string(),
                    })
                })
                .collect::<Result<_, Failure>>()
                .map(CommandResult::Rows)
        }

        Command::Roots { moduli, polys, units, strategy } => {
            let system = System::from_args(Some(polys), None, &moduli)?;
            let strategy = match strategy {
                RootStrategy::Multiplicative => CountStrategy::Multiplicative,
                RootStrategy::Direct => CountStrategy::Direct,
            };
            let g = system.as_polys()?;
            moduli_tuples(&moduli, system.len())
                .into_iter()
                .map(|m| {
                    let t = ModuliTuple::new(&m)?;
                    let count = count_roots(&g, &t, units, strategy)?;
                    let mut fields = vec![("moduli", json!(m))];
                    system.echo(&mut fields);
                    fields.push(("units", json!(units)));
                    fields.push(("modulus", json!(count.modulus)));
                    Ok(Row {
                        fields,
                        value: count.count.to_string(),
                    })
                })
                .collect::<Result<_, Failure>>()
                .map(CommandResult::Rows)
        }

        Command::Alpha { r, prime_bound } => Ok(CommandResult::Rows(vec![Row {
            fields: vec![("r", json!(r)), ("prime_bound", json!(prime_bound))],
            value: alpha_r(r, prime_bound)?.to_string(),
        }])),

        Command::Asymptotic { r, x, prime_bound } => {
            let rep = asymptotic_report(r, x, prime_bound)?;
            Ok(CommandResult::Record(vec![
                ("r", json!(rep.r)),
                ("x", json!(rep.x)),
                ("empirical", json!(rep.empirical.to_string())),
                ("empirical_approx", json!(rep.empirical.to_f64().unwrap_or(f64::NAN).to_string())),
                ("predicted", json!(rep.predicted.to_string())),
                ("ratio", json!(rep.ratio.to_string())),
                ("alpha", json!(rep.alpha.to_string())),
                ("alpha_truncation", json!(rep.alpha_truncation)),
                ("alpha_tail_estimate", json!(rep.alpha_tail_estimate.to_string())),
            ]))
        }

        Command::Verify { suite, max } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else {
                suite.split(',').collect()
            };
            // suites run concurrently; collect keeps the requested order
            let reports = names
                .par_iter()
                .map(|name| run_suite(name, max))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .flatten()
                .collect();
            Ok(CommandResult::Verify(reports))
        }
    }
}

fn rows_over(
    moduli: &ModuliArgs,
    system: &System,
    mut eval: impl FnMut(&ModuliTuple) -> Result<String, Failure>,
) -> Result<CommandResult, Failure> {
    moduli_tuples(moduli, system.len())
        .into_iter()
        .map(|m| {
            let t = ModuliTuple::new(&m)?;
            let mut fields = vec![("moduli", json!(m))];
            system.echo(&mut fields);
            Ok(Row {
                fields,
                value: eval(&t)?,
            })
        })
        .collect::<Result<_, Failure>>()
        .map(CommandResult::Rows)
}
