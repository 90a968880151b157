use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use tutte_core::arrangement::Arrangement;
use tutte_core::families::Family;
use tutte_core::format::{parse_arrangement, Input};

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Arrangement file (`dim n` followed by `c_1 .. c_n = b` lines, or `family <name> n=<k>`)
    #[arg(long, global = true, conflicts_with = "family")]
    pub file: Option<PathBuf>,
    /// Built-in family: weyl-a, catalan, shi-threshold, i-arrangement
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Dimension for --family
    #[arg(long, global = true)]
    pub n: Option<usize>,
}

impl InputArgs {
    pub fn load(&self) -> Result<Arrangement> {
        let input = match (&self.file, &self.family) {
            (Some(path), _) => {
                let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
                parse_arrangement(&text).with_context(|| format!("parse error in {}", path.display()))?
            }
            (None, Some(name)) => {
                let family: Family = name.parse().map_err(|_| anyhow::anyhow!("unknown family `{name}`"))?;
                let Some(n) = self.n else {
                    bail!("--family needs --n");
                };
                if n < family.min_dim() {
                    bail!("{name} needs n >= {}", family.min_dim());
                }
                Input::Family { family, n }
            }
            (None, None) => bail!("no input: pass --file or --family with --n"),
        };
        input.arrangement().context("arrangement-core")
    }
}
