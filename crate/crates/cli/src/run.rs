use crate::args::{Cli, Command, FilterOp, Flags, Samples};
use fe_lab::embed::{construct_bprime, fe_bounded, fe_decide, verify_verdict};
use fe_lab::filters::{
    filter_fe, filter_member, filter_sum_member, left_sum_property, parse_base, regularity_experiment,
    urich_check, Base, Coloring,
};
use fe_lab::natset::{parse_expr_with, Corpus};
use fe_lab::structure::{
    classify, density_report, density_samples, q_peak_points, run_suite, samples_csv, SuiteConfig,
};
use fe_lab::{Error, NatSet, Result, Verdict3};
use serde::Serialize;
use serde_json::{json, Value};

pub enum Output {
    Json(Value),
    Csv(String),
}

pub struct Outcome {
    pub output: Output,
    pub exit: i32,
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    seed: u64,
    flags: &'a Flags,
    args: Vec<String>,
    result: Value,
}

fn verdict_exit(v: &Verdict3) -> i32 {
    match v {
        Verdict3::True => 0,
        Verdict3::False => 1,
        Verdict3::Unknown { .. } => 2,
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

struct Ctx<'a> {
    flags: &'a Flags,
    corpus: Corpus,
}

impl Ctx<'_> {
    fn set(&self, expr: &str) -> Result<NatSet> {
        parse_expr_with(expr, &self.corpus)
    }

    fn base(&self, text: &str) -> Result<Base> {
        parse_base(text, &self.corpus, self.flags.indexcap, self.flags.horizon)
    }

    fn no_csv(&self, command: &str) -> Result<()> {
        if self.flags.csv {
            Err(Error::InvalidArgument(format!("`{command}` has no CSV output")))
        } else {
            Ok(())
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let flags = &cli.flags;
    let mut corpus = Corpus::builtin();
    if let Some(path) = &flags.corpus {
        corpus.load_file(path)?;
    }
    let ctx = Ctx { flags, corpus };
    let h = flags.horizon;

    let (command, args, result, exit): (&'static str, Vec<String>, Value, i32) = match &cli.command {
        Command::Check { a, b } => {
            ctx.no_csv("check")?;
            let (sa, sb) = (ctx.set(a)?, ctx.set(b)?);
            let verdict = if sa.is_decidable() && sb.is_decidable() {
                fe_decide(&sa, &sb)?
            } else {
                fe_bounded(&sa, &sb, flags.nmax, flags.kmax)
            };
            let verified = verify_verdict(&sa, &sb, &verdict, h);
            let exit = verdict.exit_code();
            let result = json!({ "verdict": verdict, "verified": verified });
            ("check", vec![a.clone(), b.clone()], result, exit)
        }
        Command::Classify { s, gap } => {
            ctx.no_csv("classify")?;
            let report = classify(&ctx.set(s)?, *gap, h);
            ("classify", vec![s.clone()], to_value(&report), 0)
        }
        Command::Density {
            s,
            samples,
            mmax,
            windows,
        } => {
            let set = ctx.set(s)?;
            let windows: Vec<u64> = windows.iter().copied().filter(|&w| w <= h).collect();
            let report = density_report(&set, h, &windows)?;
            let rows = match samples {
                Samples::Windows => report.density_samples.clone(),
                Samples::Peaks => density_samples(&set, &q_peak_points(*mmax)),
            };
            if flags.csv {
                return Ok(Outcome {
                    output: Output::Csv(samples_csv(&rows)),
                    exit: 0,
                });
            }
            let result = json!({ "report": report, "samples": rows });
            ("density", vec![s.clone()], result, 0)
        }
        Command::Bprime { a, b, kcap } => {
            ctx.no_csv("bprime")?;
            let r = construct_bprime(&ctx.set(a)?, &ctx.set(b)?, flags.nmax, *kcap);
            let exit = if r.exhausted.is_some() && r.uniform_shift.is_none() { 2 } else { 0 };
            ("bprime", vec![a.clone(), b.clone()], to_value(&r), exit)
        }
        Command::Filter { op } => {
            ctx.no_csv("filter")?;
            filter(&ctx, op)?
        }
        Command::Suite { maxt, maxp, dump } => {
            ctx.no_csv("suite")?;
            let run = run_suite(flags.seed, flags.count, *maxt, *maxp as usize, &SuiteConfig::default(), *dump)?;
            let exit = if run.violations == 0 { 0 } else { 1 };
            ("suite", Vec::new(), to_value(&run), exit)
        }
    };

    let envelope = Envelope {
        tool: "fe-lab",
        version: env!("CARGO_PKG_VERSION"),
        command,
        seed: flags.seed,
        flags,
        args,
        result,
    };
    Ok(Outcome {
        output: Output::Json(to_value(&envelope)),
        exit,
    })
}

type Dispatched = (&'static str, Vec<String>, Value, i32);

fn filter(ctx: &Ctx, op: &FilterOp) -> Result<Dispatched> {
    let h = ctx.flags.horizon;
    Ok(match op {
        FilterOp::Member { base, x } => {
            let m = filter_member(&ctx.base(base)?, &ctx.set(x)?, h)?;
            let exit = verdict_exit(&m.verdict);
            ("filter member", vec![base.clone(), x.clone()], to_value(&m), exit)
        }
        FilterOp::Sum { x, u, v } => {
            let r = filter_sum_member(&ctx.set(x)?, &ctx.base(u)?, &ctx.base(v)?, h)?;
            let exit = verdict_exit(&r.verdict);
            ("filter sum", vec![x.clone(), u.clone(), v.clone()], to_value(&r), exit)
        }
        FilterOp::Rich { u, b } => {
            let r = urich_check(&ctx.base(u)?, &ctx.set(b)?, h)?;
            let exit = verdict_exit(&r.verdict);
            ("filter rich", vec![u.clone(), b.clone()], to_value(&r), exit)
        }
        FilterOp::Fe { u, v } => {
            let r = filter_fe(&ctx.base(u)?, &ctx.base(v)?, h)?;
            let exit = verdict_exit(&r.verdict);
            ("filter fe", vec![u.clone(), v.clone()], to_value(&r), exit)
        }
        FilterOp::Leftsum { v, sets } => {
            let parsed = sets.iter().map(|s| ctx.set(s)).collect::<Result<Vec<_>>>()?;
            let entries = left_sum_property(&ctx.base(v)?, &parsed, h)?;
            let all = entries
                .iter()
                .fold(Verdict3::True, |acc, e| acc.and(e.verdict.clone()));
            let mut args = vec![v.clone()];
            args.extend(sets.iter().cloned());
            let result = json!({ "verdict": all, "entries": entries });
            ("filter leftsum", args, result, verdict_exit(&all))
        }
        FilterOp::Regularity { u, b, coloring } => {
            let c = parse_coloring(coloring)?;
            let r = regularity_experiment(&ctx.base(u)?, &ctx.set(b)?, c, h)?;
            ("filter regularity", vec![u.clone(), b.clone(), coloring.clone()], to_value(&r), 0)
        }
    })
}

fn parse_coloring(text: &str) -> Result<Coloring> {
    let bad = || Error::InvalidArgument(format!("colouring `{text}`: expected residue:M or blocks:LEN:COLORS"));
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| s.parse::<u64>().map_err(|_| bad());
    match parts.as_slice() {
        ["residue", m] => Ok(Coloring::Residue { modulus: num(m)? }),
        ["blocks", len, colors] => Ok(Coloring::Blocks {
            len: num(len)?,
            colors: num(colors)?,
        }),
        _ => Err(bad()),
    }
}

/// Exit status for a library error; all are at least 64.
pub fn error_exit(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } => 64,
        Error::ComplementOfGeneratorTier | Error::TierError { .. } => 65,
        Error::FipViolation(_) => 66,
        Error::Eval(_) | Error::InvalidArgument(_) => 67,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colorings() {
        assert_eq!(parse_coloring("residue:3").unwrap(), Coloring::Residue { modulus: 3 });
        assert_eq!(
            parse_coloring("blocks:4:2").unwrap(),
            Coloring::Blocks { len: 4, colors: 2 }
        );
        assert!(parse_coloring("residue").is_err());
        assert!(parse_coloring("stripes:2").is_err());
    }
}
