//! Command-line front end. Every subcommand parses its inputs, calls into the
//! library and formats the result; exit codes are 0 on success, 1 when a
//! verification or comparison fails and 2 on invalid input.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::complexes::Field;
use crate::error::{Error, Result};
use crate::extension::{ExtMonoid, ExtSpec};
use crate::frobenius::{betti_table, check_suspension_prop, verify_extension};
use crate::monoid::{AffineMonoid, Element, MonoidSpec};
use crate::series::{
    closed_form, direct_series, expand_closed_form, extension_series, geometric_p2_form, Family,
    GradedSeries, RationalSeriesExpr,
};

const EXIT_OK: i32 = 0;
const EXIT_MISMATCH: i32 = 1;
const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "frobcx",
    version,
    about = "Frobenius complexes and Poincaré series of affine monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tor dimensions at every grade below the cap.
    Betti {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare direct homology of Λ[ρ/r] with the wedge prediction.
    VerifyExtension {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the one-step Betti shift between (λ, 1) and (λ, 0) for r = 2.
    SuspensionCheck {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Truncated multigraded Poincaré series.
    Poincare {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Closed-form rational series of a family, expanded when --cap is given.
    ClosedForm {
        #[command(flatten)]
        family: FamilyArgs,
        /// Expand up to this grade.
        #[arg(long)]
        cap: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a closed form (with --family) or the extension transfer formula
    /// (with an extension source) against direct homology.
    CompareSeries {
        #[arg(long, value_enum)]
        family: Option<FamilyName>,
        #[command(flatten)]
        params: FamilyParams,
        /// `r` of the pqr family, or the root index of the extension.
        #[arg(long)]
        r: Option<u64>,
        /// Use the p = 2 geometric simplification.
        #[arg(long)]
        simplified: bool,
        /// Generators of the base monoid, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["family", "spec"])]
        base_gens: Option<Vec<u64>>,
        /// Extension spec file (JSON).
        #[arg(long, conflicts_with = "family")]
        spec: Option<PathBuf>,
        #[arg(long)]
        rho: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Debug)]
struct SourceArgs {
    /// Generators of a numerical semigroup, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["spec", "base_gens"])]
    gens: Option<Vec<u64>>,
    /// Monoid or extension spec file (JSON).
    #[arg(long, conflicts_with = "base_gens")]
    spec: Option<PathBuf>,
    /// Generators of the base monoid of an extension, comma separated.
    #[arg(long, value_delimiter = ',')]
    base_gens: Option<Vec<u64>>,
    /// The element ρ, comma separated when d > 1.
    #[arg(long)]
    rho: Option<String>,
    /// The root index r of the extension.
    #[arg(long)]
    r: Option<u32>,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Grade bound, comma separated when d > 1.
    #[arg(long)]
    cap: String,
    /// gf2, gf3, gf5, gfP for a prime P, or rational.
    #[arg(long, default_value = "gf2")]
    field: Field,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[command(flatten)]
    params: FamilyParams,
    /// `r` of the pqr family.
    #[arg(long)]
    r: Option<u64>,
    /// Use the p = 2 geometric simplification.
    #[arg(long)]
    simplified: bool,
}

#[derive(Args, Debug)]
struct FamilyParams {
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum FamilyName {
    TwoGen,
    Pqr,
    Arithmetic,
    Geometric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

enum Source {
    Monoid(AffineMonoid),
    Ext(ExtMonoid),
}

/// Runs the CLI on `argv` (program name first) against stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INVALID;
    }
    match execute(cli.command) {
        Ok((text, code, path)) => match emit(&text, path, out) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_INVALID
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var("FROBCX_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            Error::invalid(format!(
                "FROBCX_THREADS: expected a positive integer, got {value:?}"
            ))
        })?;
    // A pool may already exist when run is called more than once in a process.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn emit(text: &str, path: Option<PathBuf>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

type Outcome = (String, i32, Option<PathBuf>);

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Betti { source, common } => {
            let cap = parse_element("--cap", &common.cap)?;
            let text = match (source.resolve()?, common.format.unwrap_or(Format::Tsv)) {
                (Source::Monoid(m), Format::Json) => json(&betti_table(&m, &cap, common.field)?)?,
                (Source::Monoid(m), _) => betti_table(&m, &cap, common.field)?.to_tsv(),
                (Source::Ext(e), Format::Json) => json(&betti_table(&e, &cap, common.field)?)?,
                (Source::Ext(e), _) => betti_table(&e, &cap, common.field)?.to_tsv(),
            };
            Ok((text, EXIT_OK, common.out))
        }
        Command::VerifyExtension { source, common } => {
            let ext = source.resolve_ext()?;
            let cap = parse_element("--cap", &common.cap)?;
            let report = verify_extension(&ext, &cap, common.field)?;
            let text = if common.format == Some(Format::Json) {
                json(&report)?
            } else {
                let mut s = format!(
                    "{}\nchecked {} grades, {} mismatches\n",
                    verdict(report.pass),
                    report.checked,
                    report.mismatches
                );
                for f in report.failures() {
                    s.push_str(&format!(
                        "{}\tdirect {}\tpredicted {}\n",
                        f.grade, f.direct, f.predicted
                    ));
                }
                s
            };
            Ok((text, status(report.pass), common.out))
        }
        Command::SuspensionCheck { source, common } => {
            let ext = source.resolve_ext()?;
            let cap = parse_element("--cap", &common.cap)?;
            let report = check_suspension_prop(&ext, &cap, common.field)?;
            let text = if common.format == Some(Format::Json) {
                json(&report)?
            } else {
                let mut s = format!(
                    "{}\nchecked {} grades, {} mismatches\n",
                    verdict(report.pass),
                    report.checks.len(),
                    report.mismatches
                );
                for c in report.checks.iter().filter(|c| !c.equal) {
                    s.push_str(&format!(
                        "{}\tupper {}\tlower {}\n",
                        c.lambda, c.upper, c.lower
                    ));
                }
                s
            };
            Ok((text, status(report.pass), common.out))
        }
        Command::Poincare { source, common } => {
            let cap = parse_element("--cap", &common.cap)?;
            let json_out = common.format == Some(Format::Json);
            let text = match source.resolve()? {
                Source::Monoid(m) => {
                    render_series(&direct_series(&m, &cap, common.field)?, json_out)?
                }
                Source::Ext(e) => render_series(&direct_series(&e, &cap, common.field)?, json_out)?,
            };
            Ok((text, EXIT_OK, common.out))
        }
        Command::ClosedForm {
            family,
            cap,
            format,
            out,
        } => {
            let expr = family_expr(family.family, &family.params, family.r, family.simplified)?;
            let json_out = format == Some(Format::Json);
            let text = match cap {
                Some(cap) => {
                    let cap = parse_element("--cap", &cap)?;
                    render_series(&expand_closed_form(&expr, &cap)?, json_out)?
                }
                None if json_out => json(&expr)?,
                None => format!("{expr}\n"),
            };
            Ok((text, EXIT_OK, out))
        }
        Command::CompareSeries {
            family,
            params,
            r,
            simplified,
            base_gens,
            spec,
            rho,
            common,
        } => {
            let cap = parse_element("--cap", &common.cap)?;
            let json_out = common.format == Some(Format::Json);
            let (equal, text) = match family {
                Some(name) => {
                    let expr = family_expr(name, &params, r, simplified)?;
                    let monoid = build_family(name, &params, r)?.monoid()?;
                    let direct = direct_series(&monoid, &cap, common.field)?;
                    let expected = expand_closed_form(&expr, &cap)?;
                    compare(&direct, &expected, &format!("closed form {expr}"), json_out)?
                }
                None => {
                    let r = r
                        .map(|r| {
                            u32::try_from(r)
                                .map_err(|_| Error::invalid(format!("--r: {r} is too large")))
                        })
                        .transpose()?;
                    let source = SourceArgs {
                        gens: None,
                        spec,
                        base_gens,
                        rho,
                        r,
                    };
                    let ext = source.resolve_ext()?;
                    let direct = direct_series(&ext, &cap, common.field)?;
                    let base = direct_series(ext.base(), &cap, common.field)?;
                    let expected = extension_series(&base, ext.rho(), ext.r(), &cap)?;
                    compare(&direct, &expected, "transfer formula", json_out)?
                }
            };
            Ok((text, status(equal), common.out))
        }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn status(pass: bool) -> i32 {
    if pass {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn render_series<G: crate::series::Graded>(
    series: &GradedSeries<G>,
    json_out: bool,
) -> Result<String> {
    if json_out {
        json(series)
    } else {
        Ok(format!("{series}\n"))
    }
}

fn compare<G: crate::series::Graded>(
    direct: &GradedSeries<G>,
    expected: &GradedSeries<G>,
    label: &str,
    json_out: bool,
) -> Result<(bool, String)> {
    let equal = direct == expected;
    let text = if json_out {
        #[derive(Serialize)]
        struct Comparison<'a, G: crate::series::Graded> {
            equal: bool,
            cap: &'a Element,
            direct: &'a GradedSeries<G>,
            expected: &'a GradedSeries<G>,
        }
        json(&Comparison {
            equal,
            cap: direct.cap(),
            direct,
            expected,
        })?
    } else {
        let word = if equal { "EQUAL" } else { "DIFFERENT" };
        let mut s = format!(
            "{word}\n{label}, cap {}, {} terms\n",
            direct.cap(),
            direct.len()
        );
        if !equal {
            s.push_str(&format!("direct:   {direct}\nexpected: {expected}\n"));
        }
        s
    };
    Ok((equal, text))
}

fn parse_element(flag: &str, text: &str) -> Result<Element> {
    let coords = text
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::invalid(format!("{flag}: {e} in {text:?}")))?;
    if coords.is_empty() {
        return Err(Error::invalid(format!("{flag}: empty value")));
    }
    Ok(Element::new(coords))
}

fn read_spec(path: &PathBuf) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("--spec: cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

impl SourceArgs {
    fn resolve(&self) -> Result<Source> {
        let base = if let Some(gens) = &self.gens {
            AffineMonoid::numerical(gens)?
        } else if let Some(gens) = &self.base_gens {
            if self.rho.is_none() || self.r.is_none() {
                return Err(Error::invalid("--base-gens needs --rho and --r"));
            }
            AffineMonoid::numerical(gens)?
        } else if let Some(path) = &self.spec {
            let value = read_spec(path)?;
            if value.get("base").is_some() {
                if self.rho.is_some() || self.r.is_some() {
                    return Err(Error::invalid(
                        "--rho/--r cannot be combined with an extension spec",
                    ));
                }
                let spec: ExtSpec = serde_json::from_value(value)?;
                return Ok(Source::Ext(spec.build()?));
            }
            let spec: MonoidSpec = serde_json::from_value(value)?;
            spec.build()?
        } else {
            return Err(Error::invalid(
                "one of --gens, --base-gens or --spec is required",
            ));
        };
        match (&self.rho, self.r) {
            (None, None) => Ok(Source::Monoid(base)),
            (Some(rho), Some(r)) => Ok(Source::Ext(ExtMonoid::adjoin(
                base,
                parse_element("--rho", rho)?,
                r,
            )?)),
            (Some(_), None) => Err(Error::invalid("--rho needs --r")),
            (None, Some(_)) => Err(Error::invalid("--r needs --rho")),
        }
    }

    fn resolve_ext(&self) -> Result<ExtMonoid> {
        match self.resolve()? {
            Source::Ext(ext) => Ok(ext),
            Source::Monoid(_) => Err(Error::invalid(
                "an extension is required: give --rho and --r, or an extension spec",
            )),
        }
    }
}

fn build_family(name: FamilyName, p: &FamilyParams, r: Option<u64>) -> Result<Family> {
    let need = |value: Option<u64>, flag: &str| {
        value.ok_or_else(|| Error::invalid(format!("{flag} is required for this family")))
    };
    Ok(match name {
        FamilyName::TwoGen => Family::TwoGen {
            a: need(p.a, "--a")?,
            b: need(p.b, "--b")?,
        },
        FamilyName::Pqr => Family::Pqr {
            p: need(p.p, "--p")?,
            q: need(p.q, "--q")?,
            r: need(r, "--r")?,
        },
        FamilyName::Arithmetic => Family::Arithmetic {
            a: need(p.a, "--a")?,
            d: need(p.d, "--d")?,
        },
        FamilyName::Geometric => Family::Geometric {
            p: need(p.p, "--p")?,
            q: need(p.q, "--q")?,
            n: p.n
                .ok_or_else(|| Error::invalid("--n is required for this family"))?,
        },
    })
}

fn family_expr(
    name: FamilyName,
    params: &FamilyParams,
    r: Option<u64>,
    simplified: bool,
) -> Result<RationalSeriesExpr> {
    let family = build_family(name, params, r)?;
    if !simplified {
        return closed_form(&family);
    }
    match family {
        Family::Geometric { p: 2, q, n } => geometric_p2_form(q, n),
        _ => Err(Error::invalid(
            "--simplified applies only to the geometric family with p = 2",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differing_series_report_different_and_exit_one() {
        let cap = Element::scalar(4);
        let a = GradedSeries::one(cap.clone());
        let mut b = GradedSeries::one(cap);
        b.add_term(Element::scalar(2), 1, 1);
        let (equal, text) = compare(&a, &b, "test", false).unwrap();
        assert!(!equal);
        assert_eq!(status(equal), EXIT_MISMATCH);
        assert!(text.starts_with("DIFFERENT\n"));
        assert!(text.contains("expected: 1 + t z^2"));
        assert_eq!(verdict(false), "FAIL");
    }

    #[test]
    fn cap_parsing() {
        assert_eq!(
            parse_element("--cap", "3,4").unwrap(),
            Element::new(vec![3, 4])
        );
        assert!(parse_element("--cap", "3,,4")
            .unwrap_err()
            .to_string()
            .contains("--cap"));
    }
}
