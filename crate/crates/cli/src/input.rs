//! Documents come from files, `-` for standard input, or `@name` for the
//! built-in corpus documents.

use std::io::Read;

use anyhow::{anyhow, Context, Result};
use hdalang::algebra::{Presentation, PresentationDoc};
use hdalang::corpus;
use hdalang::hda::Hda;
use hdalang::st::StAutomaton;
use hdalang::Ipomset;
use serde::de::DeserializeOwned;

const BUILTIN: &[(&str, &str)] = &[
    ("fig1-left", corpus::FIG1_LEFT),
    ("fig1-right", corpus::FIG1_RIGHT),
    ("fig1-result", corpus::FIG1_RESULT),
    ("fig2-hda", corpus::FIG2_HDA),
    ("fig3-pomset", corpus::FIG3_POMSET),
    ("fig5a-presentation", corpus::FIG5A_PRESENTATION),
    ("fig5b-hda", corpus::FIG5B_HDA),
    ("fig5-merged-hda", corpus::FIG5_MERGED_HDA),
    ("word-a-star", corpus::WORD_A_STAR),
    ("word-aa-star", corpus::WORD_AA_STAR),
];

pub fn read_source(path: &str) -> Result<String> {
    if let Some(name) = path.strip_prefix('@') {
        return BUILTIN
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, doc)| doc.to_string())
            .ok_or_else(|| anyhow!("no built-in document `{name}`"));
    }
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

fn load<T: DeserializeOwned>(path: &str, what: &str) -> Result<T> {
    let text = read_source(path)?;
    serde_json::from_str(&text).with_context(|| format!("{path} is not a valid {what} document"))
}

pub fn load_pomset(path: &str) -> Result<Ipomset> {
    load(path, "pomset")
}

pub fn load_hda(path: &str) -> Result<Hda> {
    load(path, "HDA")
}

pub fn load_st(path: &str) -> Result<StAutomaton> {
    load(path, "ST-automaton")
}

pub fn load_presentation(path: &str) -> Result<Presentation> {
    let doc: PresentationDoc = load(path, "presentation")?;
    Ok(doc.to_presentation()?)
}
