//! `export-graph`: dump a built search graph as tab-separated text.
//!
//! Node lines `index<TAB>string<TAB>level<TAB>goal_eligible` come first, then
//! edge lines `parent<TAB>child<TAB>rule_id`.

use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use searchtime::{build_binary_grammar, build_complete_tree, build_full_grammar, build_random_grammar, GrammarRules};

use crate::estimate::ModelKind;
use crate::usage;

#[derive(Args, Debug)]
pub struct ExportGraphArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    #[arg(long)]
    pub depth: u32,
    /// Branching factor (trees only).
    #[arg(long, default_value_t = 2)]
    pub branching: u64,
    /// Random-grammar rule subset, e.g. "S->Sa,S->bS,aS->Sa"; S->e is
    /// implied. When given, overrides --model with the random grammar.
    #[arg(long)]
    pub rules: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &ExportGraphArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    if args.model != ModelKind::Tree && args.branching != 2 {
        return Err(usage("--branching applies to --model tree only"));
    }
    let graph = match &args.rules {
        Some(rules) => build_random_grammar(GrammarRules::parse(rules)?, args.depth)?,
        None => match args.model {
            ModelKind::Tree => build_complete_tree(args.branching, args.depth)?,
            ModelKind::BinaryGrammar => build_binary_grammar(args.depth)?,
            ModelKind::FullGrammar => build_full_grammar(args.depth)?,
        },
    };
    graph.export(&mut *out)?;
    Ok(())
}
