//! Argument parsing and command dispatch.

use std::ffi::OsString;

use clap::{Parser, Subcommand};
use kcone_core::ktheta::{cn_theta_character, dimension_check, koszul_check, SplitHypothesis};
use kcone_core::langlands::{s_h_of_k, theorem_branching_sum};
use kcone_core::nilcone::cn_irrep_series;
use kcone_core::oracle::compare_with_formula;
use kcone_core::RootDatum;

use crate::cache;
use crate::catalog;
use crate::config::{ConfigError, ConfigFile, LoadedConfig};
use crate::output::{
    BranchingRecord, CatalogRecord, CheckRecord, IrrepRecord, KTypeRecord, OracleRecord, Record, Report, Status,
    WeightRecord,
};

pub const DEFAULT_DEGREE: u32 = 10;
pub const DEGREE_CAP: u32 = 64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "kcone", version, about = "Graded characters of K-nilpotent cones")]
pub struct Cli {
    /// Catalog name or path to a JSON config.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Truncation degree.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE)]
    pub degree: u32,
    /// Emit JSON instead of an aligned table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Evaluate the product formula for configs not flagged split.
    #[arg(long, global = true)]
    pub force: bool,
    /// Permit degrees above the cap of 64.
    #[arg(long, global = true)]
    pub allow_large_degree: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in configurations.
    Catalog,
    /// Graded decomposition of C[N] into irreducibles of G.
    Cn,
    /// Graded T_K-character of C[N_θ].
    Cntheta {
        /// Decompose each degree into irreducibles of K.
        #[arg(long)]
        decompose_k: bool,
    },
    /// Koszul identity, dimension identities and oracle comparison.
    Checks,
    /// Expansion of C[N_θ] in continued Langlands parameters.
    Branching,
    /// Compare the product formula against the config's cone model.
    OracleCheck,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self { code: EXIT_USAGE, stdout: String::new(), stderr }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::usage(text),
            };
        }
    };
    execute(&cli)
}

fn load_group(cli: &Cli) -> Result<LoadedConfig, Outcome> {
    let Some(group) = &cli.group else {
        return Err(Outcome::usage("error: --group <name|path> is required for this command"));
    };
    catalog::resolve(group).map_err(|e| match e {
        ConfigError::Io { .. } if !group.contains(['/', '.']) => Outcome::usage(format!(
            "error: unknown group {group}; catalog entries are {}",
            catalog::names().collect::<Vec<_>>().join(", ")
        )),
        e => Outcome::usage(format!("error: {group}: {e}")),
    })
}

fn with_cache<T>(datum: &RootDatum, f: impl FnOnce() -> T) -> (T, Vec<String>) {
    let mut warnings = Vec::new();
    let dir = cache::cache_dir();
    if let Some(d) = &dir {
        cache::load(d, datum);
    }
    let out = f();
    if let Some(d) = &dir {
        if let Err(e) = cache::store(d, datum) {
            warnings.push(format!("warning: could not write partition cache to {}: {e}\n", d.display()));
        }
    }
    (out, warnings)
}

fn finish<R: Record>(cli: &Cli, report: &Report<R>, code: i32, warnings: Vec<String>) -> Outcome {
    Outcome { code, stdout: report.render(cli.json), stderr: warnings.concat() }
}

fn hypothesis(cli: &Cli) -> SplitHypothesis {
    if cli.force {
        SplitHypothesis::Waive
    } else {
        SplitHypothesis::Enforce
    }
}

fn not_split_refusal(name: &str) -> Outcome {
    Outcome::usage(format!(
        "error: {name} is not flagged split_mod_center; the product formula C[N_θ] = C[N]|_K ⊗ [∧(k)] \
         is established only for real forms split modulo center (pass --force to evaluate it anyway)"
    ))
}

pub fn execute(cli: &Cli) -> Outcome {
    if cli.degree > DEGREE_CAP && !cli.allow_large_degree {
        return Outcome::usage(format!(
            "error: --degree {} exceeds the cap of {DEGREE_CAP}; pass --allow-large-degree to override",
            cli.degree
        ));
    }
    match &cli.command {
        Command::Catalog => cmd_catalog(cli),
        Command::Cn => cmd_cn(cli),
        Command::Cntheta { decompose_k } => cmd_cntheta(cli, *decompose_k),
        Command::Checks => cmd_checks(cli),
        Command::Branching => cmd_branching(cli),
        Command::OracleCheck => cmd_oracle(cli),
    }
}

fn cmd_catalog(cli: &Cli) -> Outcome {
    let mut report = Report::new("catalog", None, None);
    for (name, text) in catalog::ENTRIES {
        let file = match ConfigFile::from_json(text) {
            Ok(f) => f,
            Err(e) => return Outcome::usage(format!("error: catalog entry {name}: {e}")),
        };
        report.records.push(CatalogRecord {
            name: name.to_string(),
            description: file.description.clone(),
            split_mod_center: file.split_mod_center,
            tori: file.tori.is_some(),
            oracle_model: file.oracle_model.is_some(),
        });
    }
    finish(cli, &report, EXIT_OK, Vec::new())
}

fn cmd_cn(cli: &Cli) -> Outcome {
    let cfg = match load_group(cli) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let datum = &cfg.real_form.g_datum;
    let (series, warnings) = with_cache(datum, || cn_irrep_series(datum, cli.degree));
    let mut report = Report::new("cn", Some(cfg.name().to_string()), Some(cli.degree));
    report.notes.push("labels in fundamental-weight coordinates".into());
    for (degree, lam, m) in series.rows(datum) {
        report.records.push(IrrepRecord { degree, label: lam.into_coords(), multiplicity: m });
    }
    finish(cli, &report, EXIT_OK, warnings)
}

fn cmd_cntheta(cli: &Cli, decompose_k: bool) -> Outcome {
    let cfg = match load_group(cli) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let rf = &cfg.real_form;
    if !rf.split_mod_center && !cli.force {
        return not_split_refusal(cfg.name());
    }
    if decompose_k && rf.k_datum.is_none() {
        return Outcome::usage(format!("error: {}: k.datum is required for --decompose-k", cfg.name()));
    }
    let (result, warnings) = with_cache(&rf.g_datum, || cn_theta_character(rf, cli.degree, hypothesis(cli)));
    let theta = match result {
        Ok(t) => t,
        Err(e) => return Outcome::usage(format!("error: {}: {e}", cfg.name())),
    };
    let waived = theta.hypothesis_waived.then(|| "split hypothesis waived (--force); the result may not describe the cone".to_string());
    if decompose_k {
        let k_datum = rf.k_datum.as_ref().expect("checked above");
        let mut report = Report::new("cntheta", Some(cfg.name().to_string()), Some(cli.degree));
        report.notes.extend(waived);
        report.notes.push("K-types by highest weight in K-torus coordinates".into());
        let table = theta.k_types.expect("k datum present");
        for (degree, lam, m) in table.rows(k_datum) {
            report.records.push(KTypeRecord { degree, k_type: lam.into_coords(), multiplicity: m });
        }
        finish(cli, &report, EXIT_OK, warnings)
    } else {
        let mut report = Report::new("cntheta", Some(cfg.name().to_string()), Some(cli.degree));
        report.notes.extend(waived);
        report.notes.push("weights in K-torus coordinates".into());
        for (degree, layer) in theta.series.layers() {
            for (w, m) in layer.terms() {
                report.records.push(WeightRecord { degree, weight: w.coords().to_vec(), multiplicity: m });
            }
        }
        finish(cli, &report, EXIT_OK, warnings)
    }
}

fn cmd_checks(cli: &Cli) -> Outcome {
    let cfg = match load_group(cli) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let rf = &cfg.real_form;
    let mut report = Report::new("checks", Some(cfg.name().to_string()), Some(cli.degree));

    let koszul = koszul_check(&rf.k_weights, rf.k_torus_rank, cli.degree);
    report.records.push(CheckRecord {
        check: "koszul".into(),
        status: if koszul.holds() { Status::Pass } else { Status::Fail },
        detail: match &koszul.first_failure {
            None => format!("Sym(k) ⊗ ∧(k) is trivial through degree {}", koszul.truncation),
            Some((d, ch)) => format!("degree {d} leaves {ch}"),
        },
    });

    for id in dimension_check(rf).identities {
        let status = match (id.applicable, id.holds()) {
            (false, _) => Status::Skipped,
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
        };
        let detail = if id.applicable {
            format!("{} = {}", id.lhs, id.rhs)
        } else {
            "requires a split form".to_string()
        };
        report.records.push(CheckRecord { check: format!("dimension: {}", id.name), status, detail });
    }

    let mut warnings = Vec::new();
    if let Some(model) = &cfg.oracle_model {
        if !rf.split_mod_center && !cli.force {
            report.records.push(CheckRecord {
                check: "oracle".into(),
                status: Status::Skipped,
                detail: "config is not split; pass --force to compare anyway".into(),
            });
        } else {
            let (result, w) =
                with_cache(&rf.g_datum, || compare_with_formula(rf, model, cli.degree, hypothesis(cli)));
            warnings = w;
            let record = match result {
                Ok(r) => CheckRecord {
                    check: "oracle".into(),
                    status: if r.agrees() { Status::Pass } else { Status::Fail },
                    detail: match r.first_disagreement() {
                        None => format!("formula and model agree through degree {}", r.truncation),
                        Some(l) => format!("first disagreement at degree {}", l.degree),
                    },
                },
                Err(e) => CheckRecord { check: "oracle".into(), status: Status::Fail, detail: e.to_string() },
            };
            report.records.push(record);
        }
    }

    let failed = report.records.iter().any(|r| r.status == Status::Fail);
    finish(cli, &report, if failed { EXIT_CHECK_FAILED } else { EXIT_OK }, warnings)
}

fn cmd_branching(cli: &Cli) -> Outcome {
    let cfg = match load_group(cli) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let rf = &cfg.real_form;
    let Some(tori) = &cfg.tori else {
        return Outcome::usage(format!(
            "error: {}: the config has no `tori` section; branching needs the table of θ-stable tori",
            cfg.name()
        ));
    };
    if !rf.split_mod_center {
        return Outcome::usage(format!(
            "error: {}: branching requires a real form split modulo center",
            cfg.name()
        ));
    }
    let (result, warnings) = with_cache(&rf.g_datum, || theorem_branching_sum(rf, tori, cli.degree));
    let sum = match result {
        Ok(s) => s,
        Err(e) => return Outcome::usage(format!("error: {}: {e}", cfg.name())),
    };
    let mut report = Report::new("branching", Some(cfg.name().to_string()), Some(cli.degree));
    report.notes.push("continued (not necessarily final) parameters; gamma in the character lattice of the torus".into());
    for t in tori {
        if let Ok(s) = s_h_of_k(t, &rf.g_datum, rf.dims.k) {
            if s.toral_correction > 0 {
                report.notes.push(format!(
                    "torus {}: {} zero weight(s) added to S_H(k) for the θ-fixed part of the Cartan subalgebra",
                    t.label, s.toral_correction
                ));
            }
        }
    }
    for (coefficient, p, q_power) in sum.terms() {
        report.records.push(BranchingRecord {
            coefficient,
            torus: p.torus.clone(),
            gamma: p.gamma_description(),
            positive_system: p.positive_system.clone(),
            q_power,
        });
    }
    finish(cli, &report, EXIT_OK, warnings)
}

fn cmd_oracle(cli: &Cli) -> Outcome {
    let cfg = match load_group(cli) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let rf = &cfg.real_form;
    let Some(model) = &cfg.oracle_model else {
        return Outcome::usage(format!("error: {}: the config has no `oracle_model` section", cfg.name()));
    };
    if !rf.split_mod_center && !cli.force {
        return not_split_refusal(cfg.name());
    }
    let (result, warnings) = with_cache(&rf.g_datum, || compare_with_formula(rf, model, cli.degree, hypothesis(cli)));
    let cmp = match result {
        Ok(r) => r,
        Err(e) => return Outcome::usage(format!("error: {}: {e}", cfg.name())),
    };
    let mut report = Report::new("oracle-check", Some(cfg.name().to_string()), Some(cli.degree));
    if let Some(l) = cmp.first_disagreement() {
        report.notes.push(format!(
            "first disagreement at degree {}: formula {} vs model {}",
            l.degree, l.formula, l.oracle
        ));
    }
    for l in &cmp.layers {
        report.records.push(OracleRecord {
            degree: l.degree,
            oracle_dim: l.oracle.mass(),
            formula_dim: l.formula.mass(),
            characters_agree: l.agrees(),
        });
    }
    finish(cli, &report, if cmp.agrees() { EXIT_OK } else { EXIT_CHECK_FAILED }, warnings)
}
