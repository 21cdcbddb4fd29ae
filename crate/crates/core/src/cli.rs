//! Command-line front end. All logic lives here so it can be driven from
//! tests; the binary only forwards `argv` and the standard streams.
//!
//! Exit codes: 0 success, 1 property/assertion failure, 2 usage or input
//! error, 3 degenerate configuration on a direct `add`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cantor::{cantor_add, from_mumford, to_mumford};
use crate::closedform::{g1_add, g2_add};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::groupoid::{
    anchor, anchor_curve, grade_point, invert, rank_witness, star, CurveParams, GroupoidPoint,
};
use crate::identities::check_pgg_sum;
use crate::json::{
    curve_from_json, curve_to_json, divisor_from_json, divisor_to_json, parse_document,
    point_from_json, point_to_json,
};
use crate::sample::{random_curve, random_nonzero, random_pair, random_point, random_point_on, random_triple, seeded};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Add,
    Invert,
    Anchor,
    RandomPoint,
    Verify,
    CantorAdd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Groupoid,
    Cantor,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Prop {
    Assoc,
    Comm,
    Inverse,
    Anchor,
    Rank,
    Grading,
    Oracle,
    Pgg,
    Closedform,
}

impl Prop {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

const ALL_PROPS: [Prop; 9] = [
    Prop::Assoc,
    Prop::Comm,
    Prop::Inverse,
    Prop::Anchor,
    Prop::Rank,
    Prop::Grading,
    Prop::Oracle,
    Prop::Pgg,
    Prop::Closedform,
];

/// Exact addition on the hyperelliptic groupoid, with a Cantor oracle.
#[derive(Debug, Parser)]
#[command(name = "hyperelliptic", version)]
pub struct CliConfig {
    pub command: Command,
    /// Curve object `{"genus", "field", "lambda"}`.
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// First point (or divisor, for cantor-add).
    #[arg(long)]
    pub a: Option<PathBuf>,
    /// Second point (or divisor, for cantor-add).
    #[arg(long)]
    pub b: Option<PathBuf>,
    /// `q` or `fp:P`.
    #[arg(long)]
    pub field: Option<FieldSpec>,
    #[arg(long, value_enum, default_value = "groupoid")]
    pub method: Method,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated subset of the property suites; all when omitted.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub props: Vec<Prop>,
    #[arg(long)]
    pub genus: Option<usize>,
}

/// A failure carrying its exit code.
struct Exit {
    code: i32,
    message: String,
}

impl From<Error> for Exit {
    fn from(e: Error) -> Exit {
        let code = match e {
            Error::NonzeroRemainder | Error::NotMonicDegree3g => 1,
            _ => 2,
        };
        Exit { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Exit {
    Exit { code: 2, message: message.into() }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<W: Write, E: Write>(args: &[String], out: &mut W, err: &mut E) -> i32 {
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    run_config(&cfg, out, err)
}

pub fn run_config<W: Write, E: Write>(cfg: &CliConfig, out: &mut W, err: &mut E) -> i32 {
    let result = match cfg.command {
        Command::Add => cmd_add(cfg, err),
        Command::Invert => cmd_invert(cfg),
        Command::Anchor => cmd_anchor(cfg),
        Command::RandomPoint => cmd_random_point(cfg),
        Command::Verify => cmd_verify(cfg, err),
        Command::CantorAdd => cmd_cantor_add(cfg),
    };
    match result {
        Ok((doc, code)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("plain data"));
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn read_json(path: &Path) -> std::result::Result<Value, Exit> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn require<'a>(p: &'a Option<PathBuf>, flag: &str, cmd: &str) -> std::result::Result<&'a Path, Exit> {
    p.as_deref().ok_or_else(|| usage(format!("{cmd} requires --{flag}")))
}

fn load_curve(cfg: &CliConfig, cmd: &str) -> std::result::Result<CurveParams, Exit> {
    let c = curve_from_json(&read_json(require(&cfg.curve, "curve", cmd)?)?)?;
    if let Some(f) = cfg.field {
        if f != c.field() {
            return Err(usage(format!("--field {f} disagrees with the curve's field {}", c.field())));
        }
    }
    Ok(c)
}

/// The field from `--curve` if given, else `--field`, else `Q`.
fn field_for_point(cfg: &CliConfig, cmd: &str) -> std::result::Result<FieldSpec, Exit> {
    match &cfg.curve {
        Some(_) => Ok(load_curve(cfg, cmd)?.field()),
        None => Ok(cfg.field.unwrap_or(FieldSpec::Rationals)),
    }
}

fn load_point(path: &Path, c: &CurveParams) -> std::result::Result<GroupoidPoint, Exit> {
    let a = point_from_json(c.field(), &read_json(path)?)?;
    if a.genus() != c.genus() {
        return Err(Error::DimensionMismatch(format!("point has genus {}, curve {}", a.genus(), c.genus())).into());
    }
    if anchor(&a) != (c.lambda1().to_vec(), c.lambda2().to_vec()) {
        return Err(Error::AnchorMismatch.into());
    }
    Ok(a)
}

type Outcome = std::result::Result<(Value, i32), Exit>;

fn cantor_route(a: &GroupoidPoint, b: &GroupoidPoint, c: &CurveParams) -> Result<Value> {
    let d = cantor_add(&to_mumford(a, c)?, &to_mumford(b, c)?, c)?;
    match from_mumford(&d, c) {
        Ok(p) => Ok(point_to_json(&p)),
        Err(Error::NonGenericDivisor(..)) => Ok(json!({ "divisor": divisor_to_json(&d) })),
        Err(e) => Err(e),
    }
}

fn cmd_add<E: Write>(cfg: &CliConfig, err: &mut E) -> Outcome {
    let c = load_curve(cfg, "add")?;
    let a = load_point(require(&cfg.a, "a", "add")?, &c)?;
    let b = load_point(require(&cfg.b, "b", "add")?, &c)?;
    let groupoid = || match star(&a, &b) {
        Ok(p) => Ok(point_to_json(&p)),
        Err(Error::DegenerateConfiguration(why)) => Err(Exit {
            code: 3,
            message: format!("degenerate configuration ({why}); retry with --method cantor"),
        }),
        Err(e) => Err(e.into()),
    };
    match cfg.method {
        Method::Groupoid => Ok((groupoid()?, 0)),
        Method::Cantor => Ok((cantor_route(&a, &b, &c)?, 0)),
        Method::Both => {
            let g = groupoid()?;
            let k = cantor_route(&a, &b, &c)?;
            if g != k {
                let dump = json!({ "a": point_to_json(&a), "b": point_to_json(&b), "groupoid": g, "cantor": k });
                let _ = writeln!(err, "{}", serde_json::to_string_pretty(&dump).expect("plain data"));
                return Err(Exit { code: 1, message: "groupoid and cantor results disagree".into() });
            }
            Ok((g, 0))
        }
    }
}

fn cmd_invert(cfg: &CliConfig) -> Outcome {
    let field = field_for_point(cfg, "invert")?;
    let a = point_from_json(field, &read_json(require(&cfg.a, "a", "invert")?)?)?;
    Ok((point_to_json(&invert(&a)), 0))
}

fn cmd_anchor(cfg: &CliConfig) -> Outcome {
    let field = field_for_point(cfg, "anchor")?;
    let a = point_from_json(field, &read_json(require(&cfg.a, "a", "anchor")?)?)?;
    Ok((curve_to_json(&anchor_curve(&a)), 0))
}

fn cmd_random_point(cfg: &CliConfig) -> Outcome {
    let mut rng = seeded(cfg.seed);
    let base = match &cfg.curve {
        Some(_) => load_curve(cfg, "random-point")?,
        None => {
            let field = cfg.field.unwrap_or(FieldSpec::Prime(10007));
            let g = cfg.genus.ok_or_else(|| usage("random-point requires --curve or --genus"))?;
            random_curve(field, g, &mut rng)?
        }
    };
    let (c, a) = random_point(&base, &mut rng)?;
    Ok((json!({ "curve": curve_to_json(&c), "point": point_to_json(&a) }), 0))
}

fn cmd_cantor_add(cfg: &CliConfig) -> Outcome {
    let c = load_curve(cfg, "cantor-add")?;
    let d1 = divisor_from_json(&c, &read_json(require(&cfg.a, "a", "cantor-add")?)?)?;
    let d2 = divisor_from_json(&c, &read_json(require(&cfg.b, "b", "cantor-add")?)?)?;
    Ok((divisor_to_json(&cantor_add(&d1, &d2, &c)?), 0))
}

/// Where verification samples come from.
struct Sampler {
    field: FieldSpec,
    genus: usize,
    curve: Option<CurveParams>,
}

impl Sampler {
    fn pair(&self, rng: &mut ChaCha8Rng) -> Result<(CurveParams, GroupoidPoint, GroupoidPoint)> {
        match &self.curve {
            Some(c) if self.field.modulus().is_some() => {
                Ok((c.clone(), random_point_on(c, rng)?, random_point_on(c, rng)?))
            }
            _ => random_pair(self.field, self.genus, rng),
        }
    }

    fn triple(&self, rng: &mut ChaCha8Rng) -> Result<(CurveParams, [GroupoidPoint; 3])> {
        match &self.curve {
            Some(c) if self.field.modulus().is_some() => {
                Ok((c.clone(), [random_point_on(c, rng)?, random_point_on(c, rng)?, random_point_on(c, rng)?]))
            }
            _ => random_triple(self.field, self.genus, rng),
        }
    }
}

enum Trial {
    Pass,
    Skip,
    Fail(Value),
}

fn points_json(ps: &[&GroupoidPoint]) -> Value {
    Value::Array(ps.iter().map(|p| point_to_json(p)).collect())
}

fn verdict(ok: bool, c: &CurveParams, ps: &[&GroupoidPoint]) -> Trial {
    if ok {
        Trial::Pass
    } else {
        Trial::Fail(json!({ "curve": curve_to_json(c), "points": points_json(ps) }))
    }
}

fn run_trial(prop: Prop, s: &Sampler, rng: &mut ChaCha8Rng) -> Result<Trial> {
    if prop == Prop::Assoc {
        let (c, [a, b, d]) = s.triple(rng)?;
        let lhs = star(&star(&a, &b)?, &d)?;
        let rhs = star(&a, &star(&b, &d)?)?;
        return Ok(verdict(lhs == rhs, &c, &[&a, &b, &d]));
    }
    let (c, a, b) = s.pair(rng)?;
    let ab = star(&a, &b)?;
    let ok = match prop {
        Prop::Assoc => unreachable!(),
        Prop::Comm => star(&b, &a)? == ab,
        Prop::Inverse => star(&ab, &invert(&b))? == a,
        Prop::Anchor => anchor(&ab) == anchor(&a),
        Prop::Rank => rank_witness(&a, &b, &ab),
        Prop::Grading => {
            let t = random_nonzero(s.field, rng);
            star(&grade_point(&a, &t)?, &grade_point(&b, &t)?)? == grade_point(&ab, &t)?
        }
        Prop::Oracle => {
            let d = cantor_add(&to_mumford(&a, &c)?, &to_mumford(&b, &c)?, &c)?;
            match from_mumford(&d, &c) {
                Ok(p) => p == ab,
                Err(Error::NonGenericDivisor(..)) => return Ok(Trial::Skip),
                Err(e) => return Err(e),
            }
        }
        Prop::Pgg => check_pgg_sum(&a, &b)?,
        Prop::Closedform => match s.genus {
            1 => g1_add(&a, &b)? == ab,
            2 => g2_add(&a, &b)? == ab,
            _ => return Ok(Trial::Skip),
        },
    };
    Ok(verdict(ok, &c, &[&a, &b]))
}

fn cmd_verify<E: Write>(cfg: &CliConfig, err: &mut E) -> Outcome {
    let curve = match &cfg.curve {
        Some(_) => Some(load_curve(cfg, "verify")?),
        None => None,
    };
    let field = curve.as_ref().map(CurveParams::field).or(cfg.field).unwrap_or(FieldSpec::Prime(10007));
    let genus = match (&curve, cfg.genus) {
        (Some(c), Some(g)) if c.genus() != g => {
            return Err(usage(format!("--genus {g} disagrees with the curve's genus {}", c.genus())))
        }
        (Some(c), _) => c.genus(),
        (None, Some(g)) => g,
        (None, None) => 2,
    };
    if genus == 0 {
        return Err(Error::InvalidGenus(0).into());
    }
    let sampler = Sampler { field, genus, curve };
    let mut props: Vec<Prop> = if cfg.props.is_empty() { ALL_PROPS.to_vec() } else { cfg.props.clone() };
    props.sort();
    props.dedup();

    let mut results = Vec::new();
    let mut all_ok = true;
    for prop in props {
        let mut rng = seeded(cfg.seed ^ (prop as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let (mut passed, mut failed, mut skipped) = (0u64, 0u64, 0u64);
        let mut counterexample = None;
        for _ in 0..cfg.trials {
            let mut trial_rng = seeded(rng.gen());
            let outcome = match run_trial(prop, &sampler, &mut trial_rng) {
                Ok(t) => t,
                Err(Error::DegenerateConfiguration(_)) => Trial::Skip,
                Err(e) => Trial::Fail(json!({ "error": e.to_string() })),
            };
            match outcome {
                Trial::Pass => passed += 1,
                Trial::Skip => skipped += 1,
                Trial::Fail(dump) => {
                    failed += 1;
                    counterexample.get_or_insert(dump);
                }
            }
        }
        let status = if failed > 0 {
            "fail"
        } else if passed == 0 {
            "skipped"
        } else {
            "pass"
        };
        let mut entry = json!({
            "prop": prop.name(),
            "passed": passed,
            "failed": failed,
            "skipped": skipped,
            "status": status,
        });
        if let Some(dump) = counterexample {
            let _ = writeln!(err, "counterexample for {}: {dump}", prop.name());
            entry["counterexample"] = dump;
            all_ok = false;
        }
        results.push(entry);
    }
    let report = json!({
        "field": field.to_string(),
        "genus": genus,
        "seed": cfg.seed,
        "trials": cfg.trials,
        "results": results,
        "status": if all_ok { "pass" } else { "fail" },
    });
    Ok((report, if all_ok { 0 } else { 1 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let args: Vec<String> = std::iter::once("hyperelliptic").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&args, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["add"]).0, 2);
        assert_eq!(run_args(&["verify", "--trials", "0"]).0, 2);
        assert_eq!(run_args(&["verify", "--field", "fp:10"]).0, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("random-point"));
    }

    #[test]
    fn verify_report_shape() {
        let (code, out, _) = run_args(&["verify", "--props", "comm,pgg", "--trials", "3", "--genus", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["status"], "pass");
        assert_eq!(v["results"].as_array().unwrap().len(), 2);
        assert_eq!(v["results"][0]["prop"], "comm");
    }
}
