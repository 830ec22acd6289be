//! Job scripts for cyclecalc: a ring, named bindings, and a list of commands
//! whose results are written one record per line.

pub mod job;
pub mod script;

pub use job::{Job, ResultRecord, RunOptions};
pub use script::{parse_script, JobScript};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Parses, prepares and runs a script, returning the rendered output and
/// whether every command succeeded.
pub fn run_script(text: &str, opts: &RunOptions, format: Format) -> Result<(String, bool), String> {
    let script = parse_script(text)?;
    let job = Job::prepare(script).map_err(|e| e.to_string())?;
    let records = job.run(opts);
    let all_ok = records.iter().all(|r| r.is_ok());
    let mut out = String::new();
    match format {
        Format::Json => {
            out.push_str(&serde_json::json!({ "header": job.header() }).to_string());
            out.push('\n');
            for r in &records {
                out.push_str(&r.to_json().to_string());
                out.push('\n');
            }
        }
        Format::Text => {
            let h = job.header();
            out.push_str(&format!("# field {} vars {} order {}\n", h["field"].as_str().unwrap_or(""), h["vars"], h["order"].as_str().unwrap_or("")));
            for r in &records {
                out.push_str(&r.to_text());
                out.push('\n');
            }
        }
    }
    Ok((out, all_ok))
}
