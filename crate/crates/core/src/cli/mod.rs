//! The `pi0` command line: job documents in, text or JSON reports out.

pub mod job;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use job::{parse_jobspec, Format, InlineData, JobSpec, Outputs, PresetSource, Source, ThetaSource};
pub use report::{
    oracle_bound_from_env, render, render_json, render_text, run, run_with_bound, Report, RepresentativeEntry,
    DEFAULT_ORACLE_BOUND, ORACLE_BOUND_VAR,
};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "pi0", version, about = "Component groups of real reductive groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a job document (JSON).
    Compute {
        spec_file: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a named preset.
    Preset {
        /// GL, SO, PSO, E7, SIMPLE, TORUS_SPLIT, TORUS_COMPACT or TORUS_WEIL.
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        /// EV, EVI or EVII.
        #[arg(long)]
        form: Option<String>,
        /// Cartan type A..G.
        #[arg(long = "type")]
        cartan: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        /// sc or adj.
        #[arg(long)]
        isogeny: Option<String>,
        /// split or compact.
        #[arg(long)]
        real: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Report the component group.
    #[arg(long)]
    pub pi0: bool,
    /// Report H¹(ℝ, iX∨/iQ∨).
    #[arg(long)]
    pub h1: bool,
    /// List component representatives.
    #[arg(long)]
    pub reps: bool,
    /// Cross-check by coset enumeration.
    #[arg(long)]
    pub oracle: bool,
    /// text or json.
    #[arg(long)]
    pub format: Option<String>,
}

impl OutputArgs {
    fn outputs(&self) -> Outputs {
        Outputs { pi0: self.pi0, h1: self.h1, reps: self.reps, oracle: self.oracle }
    }
}

/// Builds the job a command line describes.
pub fn job_from_command(cmd: &Command) -> Result<JobSpec> {
    let (mut job, out) = match cmd {
        Command::Compute { spec_file, out } => {
            let text = std::fs::read_to_string(spec_file)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", spec_file.display())))?;
            (parse_jobspec(&text)?, out)
        }
        Command::Preset { name, n, p, q, form, cartan, rank, isogeny, real, out } => {
            let param = |key: &str| -> Result<Option<String>> {
                Ok(match key {
                    "n" => n.map(|x| x.to_string()),
                    "p" => p.map(|x| x.to_string()),
                    "q" => q.map(|x| x.to_string()),
                    "form" => form.clone(),
                    "type" => cartan.clone(),
                    "rank" => rank.map(|x| x.to_string()),
                    "isogeny" => isogeny.clone(),
                    "real" => real.clone(),
                    _ => None,
                })
            };
            let source = Source::Preset(PresetSource::from_params(name, &param)?);
            (JobSpec { source, outputs: Outputs::default(), format: Format::Text }, out)
        }
    };
    // flags add to the outputs listed in the document
    job.outputs = job.outputs.union(out.outputs());
    if let Some(f) = &out.format {
        job.format = f.parse()?;
    }
    Ok(job)
}

/// Exit status for an error: 2 for internal failures, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        2
    } else {
        1
    }
}

/// Parses arguments, runs the job and returns the rendered report.
pub fn execute<I, T>(args: I) -> std::result::Result<String, (i32, String)>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| {
        let code = if e.use_stderr() { 1 } else { 0 };
        (code, e.to_string())
    })?;
    let job = job_from_command(&cli.command).map_err(|e| (exit_code(&e), format!("error: {e}\n")))?;
    let report = run(&job).map_err(|e| (exit_code(&e), format!("error: {e}\n")))?;
    Ok(render(&report, job.format))
}
