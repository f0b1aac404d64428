//! Command-line interface: catalog listing, construction, verification,
//! quotient typing, isomorphism checks, deduplication, and the
//! classification search.
//!
//! Exit codes: 0 when every requested check passed, 1 when a verification
//! failed, 2 for unknown types, inadmissible ranks, or malformed input.

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use elliptic_roots::catalog::{
    build, catalog, check_axioms_symbolic, check_axioms_windowed, is_reduced, tier_numbers,
    AxiomReport, ErsType, MarkedERS, WindowedReport,
};
use elliptic_roots::iso::{dedup, verify_explicit_isomorphisms, GroupKind, IsoGroupSpec};
use elliptic_roots::quotient::{identify_affine_type, is_quotient_non_reduced, quotient};
use elliptic_roots::search::{search, MiddleMode, SearchConfig, SearchFilter};
use elliptic_roots::Error;

#[derive(Parser)]
#[command(
    name = "ers",
    about = "Exact computations with marked elliptic root systems of BC shape",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Group {
    Marked,
    Unmarked,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    /// Non-reduced systems.
    NonReduced,
    /// Reduced systems with non-reduced quotient.
    ReducedNrq,
    /// Everything with non-reduced quotient.
    All,
}

impl From<Filter> for SearchFilter {
    fn from(f: Filter) -> Self {
        match f {
            Filter::NonReduced => SearchFilter::NonReduced,
            Filter::ReducedNrq => SearchFilter::ReducedNonReducedQuotient,
            Filter::All => SearchFilter::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog at a rank with quotient type, reducedness and tiers.
    List {
        #[arg(long)]
        rank: u32,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Emit the descriptor of one catalog entry, optionally with the roots
    /// in a radical window.
    Build {
        #[arg(long = "type")]
        type_name: String,
        #[arg(long)]
        rank: u32,
        /// Also list all roots with radical coefficients in [-B, B].
        #[arg(long)]
        window: Option<i64>,
        /// Write the descriptor to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the symbolic axiom checks (and optionally the windowed oracle).
    Verify {
        #[arg(long = "type", conflicts_with_all = ["all", "file"])]
        type_name: Option<String>,
        #[arg(long, conflicts_with = "file")]
        all: bool,
        /// Verify a descriptor file instead of a catalog entry.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, required_unless_present = "file")]
        rank: Option<u32>,
        /// Window bound for the brute-force oracle.
        #[arg(long)]
        oracle: Option<i64>,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Print the affine quotient profile and its identified type.
    Quotient {
        #[arg(long = "type")]
        type_name: String,
        #[arg(long)]
        rank: u32,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Verify the explicit isomorphisms between catalog types.
    Iso {
        #[arg(long)]
        rank: u32,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Group the non-reduced catalog entries into isomorphism classes.
    Dedup {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long)]
        rank: u32,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Exhaustively re-derive the classification and match it against the
    /// catalog.
    Classify {
        #[arg(long)]
        rank: u32,
        /// Restrict middle-class candidates to the catalog forms.
        #[arg(long)]
        guided: bool,
        #[arg(long, value_enum, default_value = "non-reduced")]
        filter: Filter,
        #[arg(long, default_value = "4")]
        modulus: u8,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Serialize)]
struct ListRow {
    name: String,
    display: String,
    quotient: String,
    reduced: bool,
    tiers: Option<(u32, u32)>,
}

#[derive(Serialize)]
struct VerifyEntry {
    name: String,
    rank: u32,
    symbolic: AxiomReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    windowed: Option<WindowedReport>,
    pass: bool,
}

fn verify_one(r: &MarkedERS, oracle: Option<i64>) -> VerifyEntry {
    let symbolic = check_axioms_symbolic(r);
    let windowed = oracle.map(|b| check_axioms_windowed(r, b));
    let pass = symbolic.pass() && windowed.as_ref().map_or(true, |w| w.pass());
    VerifyEntry {
        name: r.name().unwrap_or("custom").to_string(),
        rank: r.rank(),
        symbolic,
        windowed,
        pass,
    }
}

fn run(command: Command) -> Result<bool, Error> {
    match command {
        Command::List { rank, format } => {
            let rows: Vec<ListRow> = catalog(rank)?
                .into_iter()
                .map(|(t, r)| ListRow {
                    name: t.ascii_name().into(),
                    display: t.display_name().into(),
                    quotient: identify_affine_type(&quotient(&r)).to_string(),
                    reduced: is_reduced(&r),
                    tiers: tier_numbers(&r),
                })
                .collect();
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows).unwrap()),
                Format::Md => {
                    println!("| name | display | quotient | reduced | t1 | t2 |");
                    println!("|------|---------|----------|---------|----|----|");
                    for row in &rows {
                        let (t1, t2) = row
                            .tiers
                            .map(|(a, b)| (a.to_string(), b.to_string()))
                            .unwrap_or_else(|| ("-".into(), "-".into()));
                        println!(
                            "| {} | {} | {} | {} | {} | {} |",
                            row.name, row.display, row.quotient, row.reduced, t1, t2
                        );
                    }
                    println!();
                    println!("{} entries at rank {rank}", rows.len());
                }
                Format::Csv => {
                    println!("name,display,quotient,reduced,t1,t2");
                    for row in &rows {
                        let (t1, t2) = row
                            .tiers
                            .map(|(a, b)| (a.to_string(), b.to_string()))
                            .unwrap_or_else(|| ("-".into(), "-".into()));
                        println!(
                            "{}",
                            csv_line(&[
                                row.name.clone(),
                                row.display.clone(),
                                row.quotient.clone(),
                                row.reduced.to_string(),
                                t1,
                                t2
                            ])
                        );
                    }
                }
            }
            Ok(true)
        }

        Command::Build {
            type_name,
            rank,
            window,
            out,
        } => {
            let t = ErsType::parse(&type_name)?;
            let r = build(t, rank)?;
            let descriptor = r.to_json();
            match &out {
                Some(path) => fs::write(path, format!("{descriptor}\n"))
                    .map_err(|e| Error::Descriptor(format!("cannot write {path:?}: {e}")))?,
                None => println!("{descriptor}"),
            }
            if let Some(bound) = window {
                let roots = r.roots_in_window(bound);
                println!("{}", serde_json::to_string(&roots).unwrap());
            }
            Ok(true)
        }

        Command::Verify {
            type_name,
            all,
            file,
            rank,
            oracle,
            format,
        } => {
            let systems: Vec<MarkedERS> = if let Some(path) = file {
                let text = fs::read_to_string(&path)
                    .map_err(|e| Error::Descriptor(format!("cannot read {path:?}: {e}")))?;
                vec![MarkedERS::from_json(&text)?]
            } else {
                let rank = rank.expect("clap enforces rank without --file");
                if all {
                    catalog(rank)?.into_iter().map(|(_, r)| r).collect()
                } else {
                    let name = type_name.ok_or_else(|| {
                        Error::Descriptor("pass --type NAME, --all, or --file PATH".into())
                    })?;
                    vec![build(ErsType::parse(&name)?, rank)?]
                }
            };
            let entries: Vec<VerifyEntry> = systems
                .par_iter()
                .map(|r| verify_one(r, oracle))
                .collect();
            let all_pass = entries.iter().all(|e| e.pass);
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&entries).unwrap()),
                Format::Md => {
                    for e in &entries {
                        if e.pass {
                            println!("{}: ok", e.name);
                        } else {
                            let why = e
                                .symbolic
                                .first_failure()
                                .map(|(axiom, w)| format!("{axiom}: {w}"))
                                .unwrap_or_else(|| "windowed oracle failed".into());
                            println!("{}: FAIL ({why})", e.name);
                        }
                    }
                    println!();
                    println!(
                        "{}/{} entries verified{}",
                        entries.iter().filter(|e| e.pass).count(),
                        entries.len(),
                        oracle
                            .map(|b| format!(" (windowed oracle at B={b})"))
                            .unwrap_or_default()
                    );
                }
                Format::Csv => {
                    println!("name,rank,pass,failure");
                    for e in &entries {
                        let why = if e.pass {
                            String::new()
                        } else {
                            e.symbolic
                                .first_failure()
                                .map(|(axiom, w)| format!("{axiom}: {w}"))
                                .unwrap_or_else(|| "windowed oracle failed".into())
                        };
                        println!(
                            "{}",
                            csv_line(&[
                                e.name.clone(),
                                e.rank.to_string(),
                                e.pass.to_string(),
                                why
                            ])
                        );
                    }
                }
            }
            Ok(all_pass)
        }

        Command::Quotient {
            type_name,
            rank,
            format,
        } => {
            let t = ErsType::parse(&type_name)?;
            let r = build(t, rank)?;
            let profile = quotient(&r);
            let qtype = identify_affine_type(&profile);
            let non_reduced = is_quotient_non_reduced(&profile);
            #[derive(Serialize)]
            struct QuotientOut {
                name: String,
                rank: u32,
                profile: elliptic_roots::quotient::AffineProfile,
                #[serde(rename = "type")]
                qtype: String,
                non_reduced: bool,
            }
            let out = QuotientOut {
                name: t.ascii_name().into(),
                rank,
                qtype: qtype.to_string(),
                non_reduced,
                profile,
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out).unwrap()),
                Format::Md | Format::Csv => {
                    let line = |set: &elliptic_roots::quotient::LineSet| {
                        format!(
                            "mod {} residues {:?}",
                            set.modulus,
                            set.residues.iter().collect::<Vec<_>>()
                        )
                    };
                    println!("{} at rank {}", out.name, out.rank);
                    println!("  short : {}", line(&out.profile.short));
                    match &out.profile.middle {
                        Some(m) => println!("  middle: {}", line(m)),
                        None => println!("  middle: (none at rank 1)"),
                    }
                    println!("  long  : {}", line(&out.profile.long));
                    println!("  type {} non-reduced {}", out.qtype, out.non_reduced);
                }
            }
            Ok(true)
        }

        Command::Iso { rank, format } => {
            let report = verify_explicit_isomorphisms(rank)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Md => {
                    for c in &report.checks {
                        println!(
                            "{} ~ {} via {:?} twist ({},{}): {}",
                            c.lhs,
                            c.rhs,
                            c.matrix,
                            c.twist[0],
                            c.twist[1],
                            if c.verified { "ok" } else { "FAIL" }
                        );
                    }
                    println!();
                    println!(
                        "{}/{} verified",
                        report.verified_count(),
                        report.checks.len()
                    );
                }
                Format::Csv => {
                    println!("lhs,rhs,verified");
                    for c in &report.checks {
                        println!(
                            "{}",
                            csv_line(&[c.lhs.clone(), c.rhs.clone(), c.verified.to_string()])
                        );
                    }
                }
            }
            Ok(report.all_verified())
        }

        Command::Dedup {
            group,
            rank,
            format,
        } => {
            let spec = IsoGroupSpec {
                kind: match group {
                    Group::Marked => GroupKind::Marked,
                    Group::Unmarked => GroupKind::Unmarked,
                },
                modulus: 4,
            };
            let named: Vec<(ErsType, MarkedERS)> = catalog(rank)?
                .into_iter()
                .filter(|(t, _)| !t.is_reduced_type())
                .collect();
            let entries: Vec<MarkedERS> = named.iter().map(|(_, r)| r.clone()).collect();
            let classes = dedup(&entries, &spec)?;
            #[derive(Serialize)]
            struct ClassOut {
                key: String,
                members: Vec<String>,
            }
            let out: Vec<ClassOut> = classes
                .iter()
                .map(|c| ClassOut {
                    key: c.key.to_string(),
                    members: c
                        .members
                        .iter()
                        .map(|&i| named[i].0.ascii_name().to_string())
                        .collect(),
                })
                .collect();
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out).unwrap()),
                Format::Md => {
                    for c in &out {
                        println!("{}: {}", c.key, c.members.join(", "));
                    }
                    println!();
                    println!("{} classes ({} group, rank {rank})", out.len(), spec.kind);
                }
                Format::Csv => {
                    println!("key,members");
                    for c in &out {
                        println!("{}", csv_line(&[c.key.clone(), c.members.join(" ")]));
                    }
                }
            }
            Ok(true)
        }

        Command::Classify {
            rank,
            guided,
            filter,
            modulus,
            format,
        } => {
            let mut config = SearchConfig::new(rank, filter.into());
            config.modulus = modulus;
            if guided {
                config.middle_mode = MiddleMode::Guided;
            }
            let outcome = search(&config)?;
            #[derive(Serialize)]
            struct ClassifyOut {
                rank: u32,
                modulus: u8,
                guided: bool,
                classes: usize,
                bijection: bool,
                found: Vec<FoundOut>,
                missing: Vec<String>,
            }
            #[derive(Serialize)]
            struct FoundOut {
                key: String,
                matched: Option<String>,
                multiplicity: usize,
            }
            let out = ClassifyOut {
                rank,
                modulus,
                guided,
                classes: outcome.classes.len(),
                bijection: outcome.is_catalog_bijection(),
                found: outcome
                    .classes
                    .iter()
                    .map(|c| FoundOut {
                        key: c.key.to_string(),
                        matched: c.matched.map(|t| t.ascii_name().to_string()),
                        multiplicity: c.multiplicity,
                    })
                    .collect(),
                missing: outcome
                    .missing
                    .iter()
                    .map(|t| t.ascii_name().to_string())
                    .collect(),
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out).unwrap()),
                Format::Md => {
                    for f in &out.found {
                        println!(
                            "{} -> {} (x{})",
                            f.key,
                            f.matched.as_deref().unwrap_or("UNMATCHED"),
                            f.multiplicity
                        );
                    }
                    println!();
                    println!(
                        "{} classes at rank {rank} (modulus {modulus}{})",
                        out.classes,
                        if guided { ", guided middle" } else { "" }
                    );
                    if out.missing.is_empty() {
                        println!("catalog bijection: {}", out.bijection);
                    } else {
                        println!("missing from search: {}", out.missing.join(", "));
                    }
                }
                Format::Csv => {
                    println!("key,matched,multiplicity");
                    for f in &out.found {
                        println!(
                            "{}",
                            csv_line(&[
                                f.key.clone(),
                                f.matched.clone().unwrap_or_default(),
                                f.multiplicity.to_string()
                            ])
                        );
                    }
                }
            }
            Ok(out.bijection)
        }
    }
}
