use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use pwidth::alternating::{bertram_gap, class_power_covers, dvir_cubes, thresholds, w3_witness};
use pwidth::chartab::{dixon_table, CharacterTable};
use pwidth::frobenius::KappaEngine;
use pwidth::group::{conjugacy_classes, enumeration_bound, ClassData, FiniteGroup};
use pwidth::matgrp::{artin_scan, GroupSpec};
use pwidth::perm::{CycleType, Permutation};
use pwidth::verify::{criteria, Status, VerifyOptions};
use pwidth::width::{p_width, table1_report, width_of_element, Method, Source, WidthOptions};
use pwidth::{ingest, report, Error};

const GROUP_HELP: &str = "\
Group specs:
  an:N, sn:N        alternating and symmetric groups of degree N
  cyclic:N          cyclic group of order N
  sl:N:Q, sp:N:Q    SL_N(Q), Sp_N(Q) (N even)
  su:3:Q, gu:3:Q    SU_3(Q), GU_3(Q)
  psl:N:Q, psp:N:Q, psu:3:Q
                    quotients by the center
  m11, m12, sz8     bundled permutation generators
  file:PATH         generator file: `degree N`, then one permutation per line

Groups are enumerated in full, up to PWIDTH_ENUM_BOUND elements (default 20000000).

Exit status: 0 success, 1 usage or input error, 2 result differs from --expect
(or a verify-paper criterion failed), 3 enumeration or counting bound exceeded.";

#[derive(Parser)]
#[command(name = "pwidth", version, about = "Width of finite groups with respect to elements of prime order")]
#[command(after_help = GROUP_HELP)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Group spec, e.g. psl:2:8.
    #[arg(long)]
    group: Option<GroupSpec>,
    /// Character table in .ctbl format.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Width of a group with respect to its elements of order p.
    #[command(after_help = GROUP_HELP)]
    Width {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = Method::Characters)]
        method: Method,
        /// Use one order-p class instead of all of them.
        #[arg(long)]
        single_class: Option<String>,
        /// Factor the representative of this class (needs --group).
        #[arg(long)]
        element: Option<String>,
        /// Only list the classes outside the square of the order-p elements.
        #[arg(long, conflicts_with_all = ["element", "single_class"])]
        outside: bool,
        /// Expected width; with --outside, the expected comma separated classes.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Writes an even permutation as a product of two elements of order 3.
    Decompose {
        #[arg(long)]
        n: usize,
        /// Permutation in cycle notation, e.g. "(1,2,3)(4,5,6,7)".
        #[arg(long)]
        perm: String,
    },
    /// Normalised class structure constant kappa(C1,...,Ck -> target).
    #[command(after_help = GROUP_HELP)]
    Kappa {
        #[command(flatten)]
        input: Input,
        /// Comma separated class names or 1-based indices.
        #[arg(long, value_delimiter = ',', required = true)]
        classes: Vec<String>,
        #[arg(long)]
        target: String,
        /// Expected value, e.g. 0 or 27/4.
        #[arg(long)]
        expect: Option<BigRational>,
    },
    /// Computes a character table and writes it in .ctbl format.
    #[command(after_help = GROUP_HELP)]
    Chartab {
        #[arg(long)]
        group: GroupSpec,
        /// Output file; standard output when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluates the cycle-type criterion for C^3 = A_n.
    CheckDvir {
        #[arg(long)]
        n: usize,
        /// Cycle type as comma separated lengths; all even types when absent.
        #[arg(long = "type")]
        cycle_type: Option<String>,
        /// Also compute C^3 by enumerating A_n.
        #[arg(long)]
        brute: bool,
    },
    /// The degrees n where A_n is not the square of its order-p elements.
    Bertram {
        #[arg(long)]
        prime: u64,
    },
    /// The thresholds N1, N2 for the packed p-cycle element.
    Thresholds {
        #[arg(long)]
        prime: u64,
    },
    /// Odd primes p for which l is a primitive root, with SL and Sp of degree p-1.
    ScanArtin {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        max_p: u64,
    },
    /// Runs every reproduction criterion and prints one line per criterion.
    VerifyPaper {
        /// Directory of sporadic .ctbl tables to check as well.
        #[arg(long)]
        include_ingested: Option<PathBuf>,
        /// Restrict to these criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

enum Failure {
    Usage(String),
    Mismatch(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OrderOverBound { .. } | Error::EnumerationBound { .. } | Error::Budget { .. } => {
                Failure::Resource(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (out, fail) = match run(&cli) {
        Ok(s) => (s, None),
        Err(Failure::Mismatch(s)) => (s, Some((2, Some("result differs from the expectation".to_string())))),
        Err(Failure::Usage(m)) => (String::new(), Some((1, Some(m)))),
        Err(Failure::Resource(m)) => (String::new(), Some((3, Some(m)))),
    };
    print!("{out}");
    match fail {
        None => ExitCode::SUCCESS,
        Some((code, msg)) => {
            if let Some(m) = msg {
                eprintln!("error: {m}");
            }
            ExitCode::from(code)
        }
    }
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => report::json(value),
        Format::Text => text(value),
    }
}

/// A group with classes, a table, or both, as the method requires.
struct Loaded {
    group: Option<(FiniteGroup, ClassData)>,
    table: Option<CharacterTable>,
}

impl Loaded {
    fn new(input: &Input, need_table: bool) -> Result<Self, Failure> {
        if let Some(path) = &input.table {
            return Ok(Loaded { group: None, table: Some(ingest::read_table(path)?) });
        }
        let spec = input.group.as_ref().expect("clap requires --group or --table");
        let g = FiniteGroup::from_spec(spec, enumeration_bound())?;
        let data = conjugacy_classes(&g);
        let table = if need_table { Some(dixon_table(&g, &data)?) } else { None };
        Ok(Loaded { group: Some((g, data)), table })
    }

    fn source(&self) -> Source<'_> {
        Source { group: self.group.as_ref().map(|(g, d)| (g, d)), table: self.table.as_ref() }
    }
}

fn run(cli: &Cli) -> Run {
    let f = cli.format;
    match &cli.command {
        Command::Width { input, prime, method, single_class, element, outside, expect } => {
            let loaded = Loaded::new(input, method.uses_characters() || *outside)?;
            if *outside {
                let table = loaded.table.as_ref().expect("loaded with a table");
                let r = table1_report(table, *prime)?;
                let out = render(f, &r, report::table1_text);
                if let Some(e) = expect {
                    let want: Vec<&str> = e.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
                    if r.classes != want {
                        return Err(Failure::Mismatch(out));
                    }
                }
                return Ok(out);
            }
            let src = loaded.source();
            let mut opts = WidthOptions::new(*method);
            if let Some(c) = single_class {
                opts.single_class = Some(src.resolve_class(c)?);
            }
            let (width, out) = match element {
                Some(c) => {
                    let (_, data) = loaded
                        .group
                        .as_ref()
                        .ok_or_else(|| Failure::Usage("--element needs --group".into()))?;
                    let rep = data.class(src.resolve_class(c)?).representative;
                    let e = width_of_element(src, *prime, rep, &opts)?;
                    (e.width, render(f, &e, report::element_text))
                }
                None => {
                    let cert = p_width(src, *prime, &opts)?;
                    (cert.width, render(f, &cert, report::width_text))
                }
            };
            if let Some(e) = expect {
                let want: usize = e.parse().map_err(|_| Failure::Usage(format!("--expect {e:?} is not a width")))?;
                if want != width {
                    return Err(Failure::Mismatch(out));
                }
            }
            Ok(out)
        }
        Command::Decompose { n, perm } => {
            let h = Permutation::parse(*n, perm)?;
            let w = w3_witness(&h)?;
            #[derive(Serialize)]
            struct Out<'a> {
                #[serde(flatten)]
                witness: &'a pwidth::alternating::ThreeFactorWitness,
                verified: bool,
            }
            let out = Out { witness: &w, verified: w.verify().is_ok() };
            Ok(render(f, &out, |o| report::witness_text(o.witness)))
        }
        Command::Kappa { input, classes, target, expect } => {
            let loaded = Loaded::new(input, true)?;
            let table = loaded.table.as_ref().expect("loaded with a table");
            let idx: Vec<usize> = classes.iter().map(|c| table.resolve_class(c)).collect::<Result<_, _>>()?;
            let target = table.resolve_class(target)?;
            let sc = KappaEngine::new(table)?.kappa(&idx, target)?;
            #[derive(Serialize)]
            struct Out {
                classes: Vec<String>,
                target: String,
                kappa: String,
                solutions: String,
            }
            let out = Out {
                classes: idx.iter().map(|&c| table.class(c).name.clone()).collect(),
                target: table.class(target).name.clone(),
                kappa: sc.value.to_string(),
                solutions: sc.solution_count(table).to_string(),
            };
            let line = sc.display(table);
            let text = render(f, &out, |o| format!("{line}\nsolutions for a fixed target: {}\n", o.solutions));
            match expect {
                Some(e) if *e != sc.value => Err(Failure::Mismatch(text)),
                _ => Ok(text),
            }
        }
        Command::Chartab { group, output } => {
            let g = FiniteGroup::from_spec(group, enumeration_bound())?;
            let data = conjugacy_classes(&g);
            let table = dixon_table(&g, &data)?;
            match output {
                Some(path) => {
                    ingest::write_table(path, &table)?;
                    Ok(format!("wrote {} ({} classes) to {}\n", table.name(), table.len(), path.display()))
                }
                None => Ok(ingest::serialize(&table)),
            }
        }
        Command::CheckDvir { n, cycle_type, brute } => check_dvir(f, *n, cycle_type.as_deref(), *brute),
        Command::Bertram { prime } => {
            let gap = bertram_gap(*prime)?;
            #[derive(Serialize)]
            struct Out<'a> {
                prime: u64,
                degrees: &'a [u64],
            }
            let out = Out { prime: *prime, degrees: &gap };
            Ok(render(f, &out, |o| {
                let ds: Vec<String> = o.degrees.iter().map(u64::to_string).collect();
                let list = if ds.is_empty() { "none".to_string() } else { ds.join(", ") };
                format!("p = {}: (4p+3)/3 < n < 2p for n in {list}\n", o.prime)
            }))
        }
        Command::Thresholds { prime } => {
            let t = thresholds(*prime)?;
            Ok(render(f, &t, report::thresholds_text))
        }
        Command::ScanArtin { l, max_p } => {
            let rows = artin_scan(*l, *max_p, enumeration_bound())?;
            Ok(render(f, &rows, |r| report::artin_text(*l, r)))
        }
        Command::VerifyPaper { include_ingested, only } => {
            let opts = VerifyOptions { ingested: include_ingested.clone(), bound: None };
            let mut outcomes = Vec::new();
            for c in criteria().iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
                let o = c.run(&opts);
                if f == Format::Text {
                    eprintln!("{o}");
                }
                outcomes.push(o);
            }
            let out = render(f, &outcomes, |o| report::outcomes_text(o));
            if outcomes.iter().any(|o| o.status == Status::Fail) {
                Err(Failure::Mismatch(out))
            } else {
                Ok(out)
            }
        }
    }
}

fn check_dvir(f: Format, n: usize, cycle_type: Option<&str>, brute: bool) -> Run {
    let types: Vec<CycleType> = match cycle_type {
        Some(t) => vec![CycleType::parse(n, t)?],
        None => CycleType::all(n).into_iter().filter(|t| t.is_even() && !t.parts().is_empty()).collect(),
    };
    let alt = if brute {
        let g = FiniteGroup::from_spec(&GroupSpec::Alternating(n), enumeration_bound())?;
        let data = conjugacy_classes(&g);
        Some((g, data))
    } else {
        None
    };

    #[derive(Serialize)]
    struct Row {
        cycle_type: String,
        r: usize,
        criterion: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        cube_is_whole_group: Option<bool>,
    }
    let mut rows = Vec::new();
    for t in &types {
        let criterion = dvir_cubes(t)?;
        let cube = alt.as_ref().map(|(g, data)| {
            let class = (0..data.len())
                .find(|&i| g.permutation(data.class(i).representative).map(|p| p.cycle_type()).as_ref() == Some(t))
                .expect("every even type is an A_n class");
            class_power_covers(g, data, class, 3)
        });
        rows.push(Row { cycle_type: t.to_string(), r: t.stats().r_value, criterion, cube_is_whole_group: cube });
    }
    let unsound = rows.iter().any(|r| r.criterion && r.cube_is_whole_group == Some(false));
    let out = render(f, &rows, |rows| {
        let mut s = String::new();
        for r in rows {
            s += &format!("A{n} {}: r = {}, criterion {}", r.cycle_type, r.r, r.criterion);
            if let Some(c) = r.cube_is_whole_group {
                s += &format!(", C^3 = A{n}: {}", if c { "yes" } else { "no" });
            }
            s.push('\n');
        }
        s
    });
    if unsound {
        Err(Failure::Mismatch(out))
    } else {
        Ok(out)
    }
}
