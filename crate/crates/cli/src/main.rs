mod input;
mod report;

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hdalang::algebra::{
    coherent_closure, presentation_to_hda, suffix_presentation, syntactic_category, transition_category,
};
use hdalang::corpus;
use hdalang::dot;
use hdalang::fo::{self, FoLanguage, Formula};
use hdalang::ipomset::{self, default_event_limit, parse_alphabet, EVENT_LIMIT_ENV};
use hdalang::st::StAutomaton;
use hdalang::{Execution, Ipomset};
use rand::rngs::StdRng;
use rand::seq::IteratorRandom;
use rand::SeedableRng;
use serde_json::json;

use input::{load_hda, load_pomset, load_presentation, load_st, read_source};
use report::Report;

#[derive(Parser)]
#[command(name = "hdalang", version, about = "Languages of higher-dimensional automata")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Largest pomset size for enumerations.
    #[arg(long, global = true, env = EVENT_LIMIT_ENV)]
    max_events: Option<usize>,
    /// Largest width for enumerations.
    #[arg(long, global = true, default_value_t = 2)]
    max_dim: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled output (`--sample`).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run enumerations on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

impl Global {
    fn max_events(&self) -> usize {
        self.max_events.unwrap_or(4)
    }

    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    /// `--max-events` given explicitly lifts the default guard.
    fn bound(&self) -> usize {
        self.max_events.map_or(default_event_limit(), |n| n.max(default_event_limit()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Interval pomsets with interfaces.
    #[command(subcommand)]
    Pomset(PomsetCmd),
    /// Short form of `pomset glue`.
    Glue { left: String, right: String },
    #[command(subcommand)]
    Hda(HdaCmd),
    /// ST-automata.
    #[command(subcommand)]
    St(StCmd),
    /// Categories, modules and presentations.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// First-order logic over pomsets.
    #[command(subcommand)]
    Fo(FoCmd),
    /// Built-in examples.
    #[command(subcommand)]
    Corpus(CorpusCmd),
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Subcommand)]
enum PomsetCmd {
    Validate { pomset: String },
    Glue { left: String, right: String },
    /// Sparse ST-decomposition.
    Decompose { pomset: String },
    /// Whether the first pomset is subsumed by the second.
    Subsumes { smaller: String, larger: String },
    /// All pomsets subsumed by the given one.
    Downclose { pomset: String },
    Dim { pomset: String },
}

#[derive(Subcommand)]
enum HdaCmd {
    Validate { hda: String },
    Accepts { hda: String, pomset: String },
    /// Accepted pomsets up to `--max-events`.
    Language {
        hda: String,
        #[arg(long)]
        sample: Option<usize>,
    },
    Counterfree { hda: String },
    /// Cells reached from `cell` along paths recognizing the pomset.
    Reach { hda: String, cell: String, pomset: String },
}

#[derive(Subcommand)]
enum StCmd {
    FromHda { hda: String },
    Accepts { automaton: String, pomset: String },
    Monoid { automaton: String },
    Counterfree { automaton: String },
}

#[derive(Subcommand)]
enum AlgCmd {
    TransitionCat { hda: String },
    Syntactic { hda: String },
    /// Whether the syntactic category of the HDA's language is aperiodic.
    Aperiodic { hda: String },
    CounterfreeModule { presentation: String },
    SuffixPres { hda: String },
    Coherent { presentation: String },
    ToHda { presentation: String },
    /// Checks a presentation on letter words up to `--max-events` letters.
    Validate { presentation: String },
}

#[derive(Subcommand)]
enum FoCmd {
    Check {
        pomset: String,
        /// Formula text, or a file containing it.
        formula: Option<String>,
        #[arg(long, conflicts_with = "formula")]
        builtin: Option<String>,
    },
    Language {
        formula: Option<String>,
        #[arg(long, conflicts_with = "formula")]
        builtin: Option<String>,
        #[arg(long, default_value = "a,b")]
        alphabet: String,
        #[arg(long)]
        sample: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    List,
    Run { name: String },
}

#[derive(Subcommand)]
enum ExportCmd {
    /// Graphviz rendering of any document.
    Dot {
        #[arg(value_enum)]
        kind: DocKind,
        file: String,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum DocKind {
    Pomset,
    Hda,
    St,
    Presentation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            report.emit(cli.global.format);
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn formula(text: &Option<String>, builtin: &Option<String>) -> Result<Formula> {
    match (text, builtin) {
        (_, Some(name)) => fo::builtin(name).ok_or_else(|| anyhow!("unknown builtin formula `{name}`")),
        (Some(t), None) => {
            let src = if std::path::Path::new(t).is_file() { read_source(t)? } else { t.clone() };
            Ok(fo::parse(&src)?)
        }
        (None, None) => bail!("give a formula or --builtin"),
    }
}

fn sample(g: &Global, items: Vec<Ipomset>, k: Option<usize>) -> Vec<Ipomset> {
    match k {
        Some(k) => {
            let mut rng = StdRng::seed_from_u64(g.seed);
            items.into_iter().choose_multiple(&mut rng, k)
        }
        None => items,
    }
}

fn pomset_list(ps: &[Ipomset]) -> Report {
    let text = ps.iter().map(|p| p.st_decompose_sparse().to_string()).collect::<Vec<_>>().join("\n");
    Report::value(json!({ "count": ps.len(), "pomsets": ps }), format!("{} pomsets\n{text}", ps.len()))
}

fn run(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    Ok(match &cli.command {
        Command::Glue { left, right } => glue(left, right)?,
        Command::Pomset(cmd) => match cmd {
            PomsetCmd::Validate { pomset } => {
                let p = load_pomset(pomset)?;
                Report::decision(true, json!({ "events": p.len(), "dimension": p.dimension() }), "valid")
            }
            PomsetCmd::Glue { left, right } => glue(left, right)?,
            PomsetCmd::Decompose { pomset } => {
                let w = load_pomset(pomset)?.st_decompose_sparse();
                Report::value(serde_json::to_value(&w)?, w.to_string())
            }
            PomsetCmd::Subsumes { smaller, larger } => {
                let (p, q) = (load_pomset(smaller)?, load_pomset(larger)?);
                let w = ipomset::subsumption_witness(&p, &q);
                let text = match &w {
                    Some(f) => format!("true, events map to {f:?}"),
                    None => "false".into(),
                };
                Report::decision(w.is_some(), json!({ "witness": w }), text)
            }
            PomsetCmd::Downclose { pomset } => {
                let p = load_pomset(pomset)?;
                pomset_list(&ipomset::downward_closure(&p).iter().cloned().collect::<Vec<_>>())
            }
            PomsetCmd::Dim { pomset } => {
                let d = load_pomset(pomset)?.dimension();
                Report::value(json!(d), d.to_string())
            }
        },
        Command::Hda(cmd) => match cmd {
            HdaCmd::Validate { hda } => {
                let x = load_hda(hda)?;
                let json = json!({ "cells": x.len(), "dimension": x.dimension() });
                Report::decision(true, json, format!("valid, {} cells of dimension ≤ {}", x.len(), x.dimension()))
            }
            HdaCmd::Accepts { hda, pomset } => {
                let b = load_hda(hda)?.accepts(&load_pomset(pomset)?);
                Report::decision(b, json!(b), b.to_string())
            }
            HdaCmd::Language { hda, sample: k } => {
                let x = load_hda(hda)?;
                let lang = x.enumerate_language_bounded(g.max_events(), g.bound())?;
                pomset_list(&sample(g, lang.iter().cloned().collect(), *k))
            }
            HdaCmd::Counterfree { hda } => {
                let x = load_hda(hda)?;
                match x.counter_witness() {
                    None => Report::decision(true, json!({ "counterfree": true }), "true"),
                    Some(c) => {
                        let cells: Vec<&str> = c.cells.iter().map(|&i| x.name(i)).collect();
                        Report::decision(
                            false,
                            json!({
                                "counterfree": false,
                                "word": c.word,
                                "cells": cells,
                                "period": c.witness.period,
                                "index": c.witness.index,
                            }),
                            format!(
                                "false: {} has period {} on cells {}",
                                c.word,
                                c.witness.period,
                                cells.join(", ")
                            ),
                        )
                    }
                }
            }
            HdaCmd::Reach { hda, cell, pomset } => {
                let x = load_hda(hda)?;
                let id = x.cell(cell).ok_or_else(|| anyhow!("unknown cell `{cell}`"))?;
                let set = x.reach_set(id, &load_pomset(pomset)?)?;
                let names: Vec<&str> = set.iter().map(|&c| x.name(c)).collect();
                Report::value(json!(names), names.join(" "))
            }
        },
        Command::St(cmd) => match cmd {
            StCmd::FromHda { hda } => {
                let a = StAutomaton::from_hda(&load_hda(hda)?);
                Report::document(serde_json::to_value(&a)?, dot::st_automaton_to_dot(&a))
            }
            StCmd::Accepts { automaton, pomset } => {
                let w = load_pomset(pomset)?.st_decompose_sparse();
                let b = load_st(automaton)?.accepts(&w);
                Report::decision(b, json!(b), b.to_string())
            }
            StCmd::Monoid { automaton } => {
                let m = load_st(automaton)?.transition_monoid();
                let (aperiodic, json) = match m.aperiodicity() {
                    Ok(n) => (true, json!({ "size": m.len(), "aperiodic": true, "index": n })),
                    Err(w) => (false, json!({
                        "size": m.len(),
                        "aperiodic": false,
                        "element": w.element,
                        "period": w.period,
                    })),
                };
                Report::value(json, format!("{} elements, aperiodic: {aperiodic}", m.len()))
            }
            StCmd::Counterfree { automaton } => {
                let a = load_st(automaton)?;
                match a.counter_witness() {
                    None => Report::decision(true, json!({ "counterfree": true }), "true"),
                    Some(w) => {
                        let word: Vec<String> = w.word.iter().map(ToString::to_string).collect();
                        Report::decision(
                            false,
                            json!({ "counterfree": false, "object": w.object, "word": w.word, "period": w.period }),
                            format!("false: {} has period {}", word.join(" "), w.period),
                        )
                    }
                }
            }
        },
        Command::Alg(cmd) => alg(cmd, g)?,
        Command::Fo(cmd) => match cmd {
            FoCmd::Check { pomset, formula: text, builtin } => {
                let phi = formula(text, builtin)?;
                let b = phi.satisfies(&load_pomset(pomset)?)?;
                Report::decision(b, json!(b), b.to_string())
            }
            FoCmd::Language { formula: text, builtin, alphabet, sample: k } => {
                let phi = formula(text, builtin)?;
                let models = FoLanguage::new(&parse_alphabet(alphabet), g.max_events(), g.max_dim)
                    .bound(g.bound())
                    .execution(g.execution())
                    .models(&phi)?;
                pomset_list(&sample(g, models, *k))
            }
        },
        Command::Corpus(cmd) => match cmd {
            CorpusCmd::List => {
                let entries = corpus::entries();
                let json = entries
                    .iter()
                    .map(|e| json!({ "name": e.name, "description": e.description }))
                    .collect::<Vec<_>>();
                let text = entries.iter().map(|e| format!("{:<20} {}", e.name, e.description)).collect::<Vec<_>>();
                Report::value(json!(json), text.join("\n"))
            }
            CorpusCmd::Run { name } => {
                let (ok, checks) = match corpus::run(name) {
                    Ok(r) => (r.passed(), r.checks),
                    Err(corpus::CorpusError::CorpusMismatch { entry, check }) => {
                        (false, vec![(format!("{entry}: {check}"), false)])
                    }
                    Err(e) => return Err(e.into()),
                };
                let text = checks
                    .iter()
                    .map(|(c, b)| format!("{} {c}", if *b { "ok  " } else { "FAIL" }))
                    .collect::<Vec<_>>();
                Report::decision(ok, json!({ "entry": name, "passed": ok, "checks": checks }), text.join("\n"))
            }
        },
        Command::Export(ExportCmd::Dot { kind, file }) => {
            let d = match kind {
                DocKind::Pomset => dot::pomset_to_dot(&load_pomset(file)?),
                DocKind::Hda => dot::hda_to_dot(&load_hda(file)?),
                DocKind::St => dot::st_automaton_to_dot(&load_st(file)?),
                DocKind::Presentation => dot::presentation_to_dot(&load_presentation(file)?),
            };
            Report::value(json!(d), d)
        }
    })
}

fn glue(left: &str, right: &str) -> Result<Report> {
    let (p, q) = (load_pomset(left)?, load_pomset(right)?);
    let pq = p.glue(&q).context("gluing")?;
    Ok(Report::document(serde_json::to_value(&pq)?, dot::pomset_to_dot(&pq)))
}

fn alg(cmd: &AlgCmd, g: &Global) -> Result<Report> {
    Ok(match cmd {
        AlgCmd::TransitionCat { hda } => {
            let t = transition_category(&load_hda(hda)?);
            let c = &t.category;
            let morphisms: Vec<_> = c
                .morphisms()
                .iter()
                .enumerate()
                .map(|(i, m)| json!({ "name": m.name, "src": m.src, "tgt": m.tgt, "accepting": t.accepting[i] }))
                .collect();
            Report::value(
                json!({ "objects": c.objects(), "morphisms": morphisms, "aperiodic": c.is_aperiodic() }),
                format!("{} objects, {} morphisms, aperiodic: {}", c.objects().len(), c.len(), c.is_aperiodic()),
            )
        }
        AlgCmd::Syntactic { hda } => {
            let s = syntactic_category(&transition_category(&load_hda(hda)?));
            let c = &s.category;
            Report::value(
                json!({ "objects": c.objects(), "morphisms": c.len(), "aperiodic": c.is_aperiodic() }),
                format!("{} objects, {} morphisms, aperiodic: {}", c.objects().len(), c.len(), c.is_aperiodic()),
            )
        }
        AlgCmd::Aperiodic { hda } => {
            let s = syntactic_category(&transition_category(&load_hda(hda)?));
            let r = s.category.aperiodicity();
            match r.witness {
                None => Report::decision(true, json!({ "aperiodic": true, "index": r.index }), "true"),
                Some(w) => Report::decision(
                    false,
                    json!({
                        "aperiodic": false,
                        "morphism": s.category.morphisms()[w.morphism].name,
                        "object": w.object,
                        "period": w.period,
                    }),
                    format!("false: {} has period {}", s.category.morphisms()[w.morphism].name, w.period),
                ),
            }
        }
        AlgCmd::CounterfreeModule { presentation } => {
            let p = load_presentation(presentation)?;
            match p.counter_witness() {
                None => Report::decision(true, json!({ "counterfree": true }), "true"),
                Some(w) => {
                    let word: Vec<String> = w.word.iter().map(ToString::to_string).collect();
                    Report::decision(
                        false,
                        json!({ "counterfree": false, "object": w.object, "word": w.word, "period": w.period }),
                        format!("false: {} has period {}", word.join(" "), w.period),
                    )
                }
            }
        }
        AlgCmd::SuffixPres { hda } => {
            let s = suffix_presentation(&load_hda(hda)?);
            Report::document(serde_json::to_value(s.presentation.to_doc())?, dot::presentation_to_dot(&s.presentation))
        }
        AlgCmd::Coherent { presentation } => {
            let c = coherent_closure(&load_presentation(presentation)?)?;
            Report::document(serde_json::to_value(c.to_doc())?, dot::presentation_to_dot(&c))
        }
        AlgCmd::ToHda { presentation } => {
            let x = presentation_to_hda(&load_presentation(presentation)?)?;
            Report::document(serde_json::to_value(&x)?, dot::hda_to_dot(&x))
        }
        AlgCmd::Validate { presentation } => {
            let r = load_presentation(presentation)?.validate(g.max_events());
            let text = if r.is_valid() {
                format!("valid on {} words", r.words_checked)
            } else {
                r.violations.join("\n")
            };
            Report::decision(
                r.is_valid(),
                json!({ "valid": r.is_valid(), "words_checked": r.words_checked, "violations": r.violations }),
                text,
            )
        }
    })
}
