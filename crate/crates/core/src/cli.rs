//! The `orsolv` command line. [`run`] takes the arguments and output streams
//! explicitly so tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 internal defect or
//! golden-corpus mismatch.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::golden::{describe_expected, run_corpus};
use crate::hall::{enumerate_basic, recognize_tower};
use crate::magnus::{lemma_check, magnus_rewrite, MagnusError};
use crate::oracle::{
    abelianization, build_catalog, catalog_json, separate, separate_in_abelianization,
    DEFAULT_MAX_ORDER,
};
use crate::parser::{parse_generators, parse_word};
use crate::presentation::Presentation;
use crate::report::analyze;
use crate::survey::{run_survey, SamplingMode, SurveyConfig};
use crate::word::cyclically_equivalent;

#[derive(Parser, Debug)]
#[command(
    name = "orsolv",
    version,
    about = "Certify residual solvability of one-relator groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a presentation and print the certificates found.
    Analyze {
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Also ask the oracle to separate this word from the identity.
        #[arg(long)]
        word: Option<String>,
        /// Largest group order the oracle may use.
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        presentation: String,
    },
    /// Magnus rewriting: eliminate a generator with exponent sum zero.
    Rewrite {
        #[arg(long)]
        eliminate: String,
        presentation: String,
    },
    /// List basic commutators, optionally testing a relator against them.
    Basic {
        /// Comma-separated generator names, in order.
        #[arg(long)]
        gens: String,
        #[arg(long)]
        max_weight: usize,
        /// A word over the generators to compare with every basic commutator.
        #[arg(long)]
        test: Option<String>,
    },
    /// Search finite solvable groups for a quotient separating a word from 1.
    Oracle {
        #[arg(long, required_unless_present = "catalog")]
        word: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        /// Print the group catalog as JSON and exit.
        #[arg(long)]
        catalog: bool,
        #[arg(long)]
        json: bool,
        #[arg(required_unless_present = "catalog")]
        presentation: Option<String>,
    },
    /// Classify random relators and tabulate the outcomes.
    Survey {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        gens: usize,
        /// Sample positive words instead of cyclically reduced ones.
        #[arg(long)]
        positive: bool,
    },
    /// Run the golden corpus and compare against the expected results.
    Examples,
}

/// A failure that maps to exit code 1.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<i32, UsageError>;

pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    let mut buf = Vec::new();
    let result = catch_unwind(AssertUnwindSafe(|| dispatch(cli.command, &mut buf)));
    let _ = out.write_all(&buf);
    match result {
        Ok(Ok(code)) => code,
        Ok(Err(UsageError(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(_) => {
            let _ = writeln!(err, "error: internal defect");
            2
        }
    }
}

fn dispatch(cmd: Command, out: &mut Vec<u8>) -> CmdResult {
    match cmd {
        Command::Analyze {
            json,
            word,
            max_order,
            presentation,
        } => cmd_analyze(&presentation, json, word.as_deref(), max_order, out),
        Command::Rewrite {
            eliminate,
            presentation,
        } => cmd_rewrite(&presentation, &eliminate, out),
        Command::Basic {
            gens,
            max_weight,
            test,
        } => cmd_basic(&gens, max_weight, test.as_deref(), out),
        Command::Oracle {
            word,
            max_order,
            catalog,
            json,
            presentation,
        } => {
            if catalog {
                writeln!(out, "{:#}", catalog_json(&build_catalog(max_order)))?;
                return Ok(0);
            }
            // clap guarantees both are present without --catalog
            let (word, presentation) = (word.unwrap(), presentation.unwrap());
            cmd_oracle(&presentation, &word, max_order, json, out)
        }
        Command::Survey {
            length,
            count,
            seed,
            gens,
            positive,
        } => {
            let cfg = SurveyConfig {
                length,
                count,
                seed,
                gens,
                mode: if positive {
                    SamplingMode::Positive
                } else {
                    SamplingMode::Reduced
                },
            };
            cfg.validate().map_err(UsageError)?;
            write!(out, "{}", run_survey(&cfg))?;
            Ok(0)
        }
        Command::Examples => cmd_examples(out),
    }
}

fn cmd_analyze(
    text: &str,
    json: bool,
    word: Option<&str>,
    max_order: usize,
    out: &mut Vec<u8>,
) -> CmdResult {
    let p = Presentation::parse(text)?;
    let w = match word {
        Some(s) => Some(parse_word(s, p.generators())?.expand()),
        None => None,
    };
    let (report, _) = analyze(&p, w.as_ref().map(|w| (w, max_order)));
    if json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        write!(out, "{report}")?;
    }
    Ok(0)
}

fn cmd_rewrite(text: &str, eliminate: &str, out: &mut Vec<u8>) -> CmdResult {
    let p = Presentation::parse(text)?;
    let t = p
        .gen_by_name(eliminate)
        .ok_or_else(|| UsageError(format!("unknown generator `{eliminate}`")))?;
    let names = p.generators();
    let r0 = magnus_rewrite(&p, t).map_err(|e| match e {
        MagnusError::NonZeroExponentSum(g, s) => UsageError(format!(
            "generator `{}` has exponent sum {s} in the relator; only zero-sum generators can be eliminated",
            names[g.0]
        )),
        e => UsageError(e.to_string()),
    })?;
    writeln!(out, "presentation: {p}")?;
    writeln!(out, "eliminated: {eliminate}")?;
    writeln!(out, "r0: {}", r0.display(names))?;
    for v in lemma_check(&p).into_iter().filter(|v| v.eliminated == t) {
        write!(
            out,
            "{}: mu = {}, nu = {}, count_at_mu = {}, count_at_nu = {}, span = {}",
            names[v.witness.0], v.mu, v.nu, v.count_at_mu, v.count_at_nu, v.span
        )?;
        if v.applicable {
            writeln!(out, ", free-by-cyclic")?;
        } else {
            writeln!(out, ", not applicable")?;
        }
    }
    Ok(0)
}

fn cmd_basic(gens: &str, max_weight: usize, test: Option<&str>, out: &mut Vec<u8>) -> CmdResult {
    let names = parse_generators(gens)?;
    let ids: Vec<crate::Gen> = (0..names.len()).map(crate::Gen).collect();
    let basics = enumerate_basic(&ids, max_weight);
    writeln!(out, "{:>5} {:>6}  commutator", "rank", "weight")?;
    for b in &basics {
        writeln!(
            out,
            "{:>5} {:>6}  {}",
            b.rank,
            b.weight,
            b.tree.display(&names)
        )?;
    }
    if let Some(t) = test {
        let expr = parse_word(t, &names)?;
        let p = Presentation::new(names.clone(), expr)?;
        let r = p.relator_cyclic();
        let hits: Vec<String> = basics
            .iter()
            .filter(|b| cyclically_equivalent(&b.tree.to_word().cyclic_core(), r))
            .map(|b| b.tree.display(&names).to_string())
            .collect();
        if hits.is_empty() {
            writeln!(out, "relator matches no listed basic commutator")?;
        } else {
            writeln!(out, "relator matches: {}", hits.join(", "))?;
        }
        match recognize_tower(&p) {
            Some(m) => writeln!(
                out,
                "tower: [s_k, y] with k = {}, x = {}, y = {}",
                m.k, names[m.x.0], names[m.y.0]
            )?,
            None => writeln!(out, "tower: none")?,
        }
    }
    Ok(0)
}

fn cmd_oracle(
    text: &str,
    word: &str,
    max_order: usize,
    json: bool,
    out: &mut Vec<u8>,
) -> CmdResult {
    let p = Presentation::parse(text)?;
    let w = parse_word(word, p.generators())?.expand();
    let catalog = build_catalog(max_order);
    let sep = separate(&p, &w, &catalog);
    let ab = abelianization(&p);
    let ab_sep = separate_in_abelianization(&p, &w);
    if json {
        let v = serde_json::json!({
            "presentation": p.to_string(),
            "word": p.show(&w),
            "separated": sep.is_some(),
            "group": sep.as_ref().map(|s| s.group_name.clone()),
            "images": sep.as_ref().map(|s| s.hom.images.clone()),
            "image": sep.as_ref().map(|s| s.image),
            "abelianization": ab.structure(),
            "separated_in_abelianization": ab_sep,
            "max_order": max_order,
            "groups_searched": catalog.len(),
        });
        writeln!(out, "{v:#}")?;
        return Ok(0);
    }
    writeln!(out, "presentation: {p}")?;
    writeln!(out, "word: {}", p.show(&w))?;
    writeln!(
        out,
        "abelianization: {} (word separated there: {ab_sep})",
        ab.structure()
    )?;
    match sep {
        Some(s) => {
            let images: Vec<String> = p
                .generators()
                .iter()
                .zip(&s.hom.images)
                .map(|(g, i)| format!("{g} -> {i}"))
                .collect();
            writeln!(
                out,
                "separated: yes, in {} ({})",
                s.group_name,
                images.join(", ")
            )?;
            writeln!(out, "image of word: element {}", s.image)?;
        }
        None => writeln!(
            out,
            "separated: no ({} groups of order <= {max_order} searched)",
            catalog.len()
        )?,
    }
    Ok(0)
}

fn cmd_examples(out: &mut Vec<u8>) -> CmdResult {
    let outcomes = run_corpus();
    let mut failed = 0;
    for o in &outcomes {
        let tag = if o.ok { "ok" } else { "MISMATCH" };
        failed += usize::from(!o.ok);
        writeln!(out, "{tag:<8} {}: {}", o.case.name, o.case.text)?;
        writeln!(
            out,
            "         expected {}",
            describe_expected(&o.case.expected)
        )?;
        writeln!(out, "         actual   {}", o.actual)?;
    }
    writeln!(
        out,
        "{} of {} cases match",
        outcomes.len() - failed,
        outcomes.len()
    )?;
    Ok(if failed == 0 { 0 } else { 2 })
}
