//! `etpa conventions`: the peak-normalized duration table.

use std::path::PathBuf;

use clap::Args;

use etpa_core::conventions::duration_table;

use crate::output::{render_table, sci, write_to, Format};
use crate::{CliError, CliResult};

#[derive(Args)]
pub struct ConventionsArgs {
    /// Scale parameter σ of the profiles.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Output path; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

pub fn run(args: ConventionsArgs) -> CliResult<()> {
    if !(args.sigma.is_finite() && args.sigma > 0.0) {
        return Err(CliError::Validation(format!(
            "--sigma must be positive, got {}",
            args.sigma
        )));
    }
    let rows = duration_table(args.sigma)?;
    let content = match args.format {
        Format::Json => {
            let mut out = serde_json::to_string_pretty(&rows)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = String::from("shape,analytic,numeric,rel_error\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.shape,
                    sci(r.analytic),
                    sci(r.numeric),
                    sci(r.rel_error)
                ));
            }
            out
        }
        Format::Table => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.shape.to_string(),
                        sci(r.analytic),
                        sci(r.numeric),
                        sci(r.rel_error),
                    ]
                })
                .collect();
            render_table(&["shape", "analytic", "numeric", "rel_error"], &body)
        }
    };
    write_to(args.output.as_ref(), &content)
}
