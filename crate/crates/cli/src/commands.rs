//! Subcommand implementations.

use std::collections::BTreeMap;
use std::time::Instant;

use nicolai::fock::SuperchargeSpec;
use nicolai::homology::{self, HomologyOptions};
use nicolai::linalg::primes::random_31bit_primes;
use nicolai::recursion;
use nicolai::{hpl, Error, Model, PoincarePolynomial, Result};

use crate::config::{
    parse_sizes, parse_supercharge, resolve_size_cap, FieldArg, MethodArg, ModelArg, OracleArg,
    OutputArg, DEFAULT_SEED,
};
use crate::report::{
    coefficient_strings, to_json, PolyReport, TableReport, TableRow, VerifyRow, VerifySummary,
    POLY_CSV_HEADER, VERSION,
};
use crate::{ExportMatrixArgs, PolyArgs, TableArgs, VerifyArgs};

/// Buffered result of one subcommand.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { stdout, stderr: String::new(), exit: 0 }
    }
}

fn primes_for(field: FieldArg, seed: u64) -> Vec<u64> {
    match field {
        FieldArg::TwoPrime => random_31bit_primes(seed, 2),
        FieldArg::Prime(p) => vec![p],
        FieldArg::Rational => vec![],
    }
}

/// The generating function through the Hamiltonian-kernel oracle: exact
/// rational kernel dimensions of `QQ+ + Q+Q`, degree by degree.
fn hamiltonian_poly(q: &SuperchargeSpec, n: u32, size_cap: u32) -> Result<PoincarePolynomial> {
    let dims = (0..=n)
        .map(|d| homology::hamiltonian_kernel_dim(q, n, d, size_cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(PoincarePolynomial::from_dims(&dims))
}

struct MethodRun {
    name: &'static str,
    poly: PoincarePolynomial,
    millis: u64,
}

fn run_method(
    name: &'static str,
    f: impl FnOnce() -> Result<PoincarePolynomial>,
) -> Result<MethodRun> {
    let started = Instant::now();
    let poly = f()?;
    Ok(MethodRun { name, poly, millis: started.elapsed().as_millis() as u64 })
}

#[allow(clippy::too_many_arguments)]
fn poly_one(
    model_name: &str,
    q: Option<&SuperchargeSpec>,
    builtin: Option<Model>,
    n: u32,
    args: &PolyArgs,
    field: FieldArg,
    seed: u64,
    size_cap: u32,
) -> Result<PolyReport> {
    let opts = HomologyOptions { mode: field.rank_mode(seed), size_cap };
    let mut runs: Vec<MethodRun> = Vec::new();
    let mut unverified_above_brute_cap = false;

    let recursion_poly = |model: Model| -> Result<PoincarePolynomial> {
        recursion::model_poly(model, n)
    };
    // Only the recursion works without a Fock-space operator; the callers
    // construct `q` whenever the chain fits the state-space limits.
    let operator = || q.expect("supercharge built for state-space methods");

    match (args.method, builtin) {
        (MethodArg::Recursion, Some(model)) => {
            runs.push(run_method("recursion", || recursion_poly(model))?);
        }
        (MethodArg::Recursion, None) => {
            return Err(Error::Config(
                "method 'recursion' needs a built-in model, not custom".into(),
            ));
        }
        (MethodArg::Brute, _) => {
            runs.push(run_method("brute", || {
                homology::poincare_polynomial(operator(), n, &opts)
            })?);
        }
        (MethodArg::Hpl, _) => {
            runs.push(run_method("hpl", || hpl::homology_via_hpl(operator(), n, &opts))?);
        }
        (MethodArg::Hamiltonian, _) => {
            runs.push(run_method("hamiltonian", || {
                hamiltonian_poly(operator(), n, size_cap)
            })?);
        }
        (MethodArg::All, Some(model)) => {
            if n <= size_cap {
                runs.push(run_method("brute", || {
                    homology::poincare_polynomial(operator(), n, &opts)
                })?);
                runs.push(run_method("recursion", || recursion_poly(model))?);
                // The zero supercharge has no term to split but is its own
                // reduced complex; covered by homology_via_hpl.
                runs.push(run_method("hpl", || hpl::homology_via_hpl(operator(), n, &opts))?);
                if n <= args.oracle_cap {
                    runs.push(run_method("hamiltonian", || {
                        hamiltonian_poly(operator(), n, size_cap)
                    })?);
                }
            } else {
                runs.push(run_method("recursion", || recursion_poly(model))?);
                unverified_above_brute_cap = true;
            }
        }
        (MethodArg::All, None) => {
            runs.push(run_method("brute", || {
                homology::poincare_polynomial(operator(), n, &opts)
            })?);
        }
    }

    let reference = runs[0].poly.clone();
    for run in &runs[1..] {
        if run.poly != reference {
            return Err(Error::Arithmetic(format!(
                "methods disagree at size {n}: {} gives {}, {} gives {}",
                runs[0].name, reference, run.name, run.poly
            )));
        }
    }

    // Counts: the count recursion is an independent route when available.
    let count = reference.evaluate_one();
    if let Some(model) = builtin {
        let recursion_count = recursion::model_count(model, n)?;
        if recursion_count != count {
            return Err(Error::Arithmetic(format!(
                "count recursion gives {recursion_count} but the polynomial sums to {count} at size {n}"
            )));
        }
    }

    let timings = args.timings.then(|| {
        runs.iter()
            .map(|r| (r.name.to_string(), r.millis))
            .collect::<BTreeMap<_, _>>()
    });
    // Only the rank-based routes touch field arithmetic.
    let primes = if runs.iter().any(|r| r.name == "brute" || r.name == "hpl") {
        primes_for(field, seed)
    } else {
        vec![]
    };
    Ok(PolyReport {
        version: VERSION.to_string(),
        model: model_name.to_string(),
        size: n,
        method: args.method.name().to_string(),
        methods_run: runs.iter().map(|r| r.name.to_string()).collect(),
        field: field.describe(),
        seed,
        primes,
        coefficients: coefficient_strings(&reference),
        count: count.to_string(),
        palindromic: reference.is_palindromic(),
        unverified_above_brute_cap,
        timings,
    })
}

pub fn cmd_poly(args: &PolyArgs) -> Result<Outcome> {
    let (lo, hi) = parse_sizes(&args.sites)?;
    let mut field = FieldArg::parse(&args.field)?;
    if args.method == MethodArg::Hamiltonian {
        // The positive-semidefiniteness argument needs characteristic 0.
        field = FieldArg::Rational;
    }
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let size_cap = resolve_size_cap(args.size_cap)?;

    let mut reports = Vec::new();
    match args.model {
        ModelArg::Custom => {
            let Some(terms) = &args.terms else {
                return Err(Error::Config("--model custom requires --terms".into()));
            };
            if lo != hi {
                return Err(Error::Config(
                    "custom supercharges take a single --sites value, not a range".into(),
                ));
            }
            let q = parse_supercharge(terms, lo)?;
            reports.push(poly_one("custom", Some(&q), None, lo, args, field, seed, size_cap)?);
        }
        ModelArg::Nicolai | ModelArg::Z2 => {
            let model = if args.model == ModelArg::Nicolai { Model::Nicolai } else { Model::Z2 };
            let sizes: Vec<u32> = if lo == hi {
                vec![lo]
            } else {
                model.sizes_up_to(hi).into_iter().filter(|&s| s >= lo).collect()
            };
            if sizes.is_empty() {
                return Err(Error::Config(format!(
                    "no valid {model} sizes in {lo}..={hi}"
                )));
            }
            for n in sizes {
                // Recursion-only paths never touch Fock space, so chains
                // beyond the brute cap (or the bitmask limit) stay legal.
                let recursion_only = args.method == MethodArg::Recursion
                    || (args.method == MethodArg::All && n > size_cap);
                let q = if recursion_only { None } else { Some(model.supercharge(n)?) };
                reports.push(poly_one(
                    model.name(),
                    q.as_ref(),
                    Some(model),
                    n,
                    args,
                    field,
                    seed,
                    size_cap,
                )?);
            }
        }
    }

    let stdout = match args.output {
        OutputArg::Json => {
            if reports.len() == 1 {
                to_json(&reports[0])
            } else {
                to_json(&reports)
            }
        }
        OutputArg::Csv => {
            let mut out = String::from(POLY_CSV_HEADER);
            for r in &reports {
                out.push_str(&r.to_csv_row());
            }
            out
        }
        OutputArg::Text => {
            let blocks: Vec<String> = reports.iter().map(PolyReport::to_text).collect();
            blocks.join("\n")
        }
    };
    Ok(Outcome::ok(stdout))
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome> {
    let model: Model = args.model.into();
    let field = FieldArg::parse(&args.field)?;
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let size_cap = resolve_size_cap(args.size_cap)?;
    if args.max_sites > size_cap {
        return Err(Error::Resource(format!(
            "--max-sites {} exceeds the brute-force cap {size_cap}",
            args.max_sites
        )));
    }
    let opts = HomologyOptions { mode: field.rank_mode(seed), size_cap };
    let mut oracles: Vec<OracleArg> = args.oracles.clone();
    oracles.dedup();

    let sizes: Vec<u32> = model
        .sizes_up_to(args.max_sites)
        .into_iter()
        .filter(|&s| s >= args.min_sites)
        .collect();
    if sizes.is_empty() {
        return Err(Error::Config(format!(
            "no valid {model} sizes in {}..={}",
            args.min_sites, args.max_sites
        )));
    }

    let mut stderr = String::new();
    let mut rows = Vec::new();
    let mut skips = Vec::new();
    for n in sizes {
        let q = model.supercharge(n)?;
        let reference = recursion::model_poly(model, n)?;
        let count = recursion::model_count(model, n)?;

        let mut comparisons = BTreeMap::new();
        let brute = homology::poincare_polynomial(&q, n, &opts)?;
        comparisons.insert(
            "brute".to_string(),
            if brute == reference { "match" } else { "mismatch" }.to_string(),
        );
        for oracle in &oracles {
            let (name, capped): (&str, bool) = match oracle {
                OracleArg::Hpl => ("hpl", n > args.oracle_cap),
                OracleArg::Hamiltonian => ("hamiltonian", n > args.oracle_cap),
            };
            if capped {
                let reason = format!("skipped: above oracle cap {}", args.oracle_cap);
                skips.push(format!("{name} at size {n}: above oracle cap {}", args.oracle_cap));
                comparisons.insert(name.to_string(), reason);
                continue;
            }
            let poly = match oracle {
                OracleArg::Hpl => hpl::homology_via_hpl(&q, n, &opts)?,
                OracleArg::Hamiltonian => hamiltonian_poly(&q, n, size_cap)?,
            };
            comparisons.insert(
                name.to_string(),
                if poly == reference { "match" } else { "mismatch" }.to_string(),
            );
        }

        let count_consistent =
            count == reference.evaluate_one() && count == brute.evaluate_one();
        let euler_zero = homology::euler_check(&reference);
        let pass = comparisons.values().all(|v| v != "mismatch")
            && count_consistent
            && (n == 0 || euler_zero);

        let detail: Vec<String> =
            comparisons.iter().map(|(k, v)| format!("{k}={v}")).collect();
        stderr.push_str(&format!(
            "{} {} n={} count={} {}\n",
            if pass { "PASS" } else { "FAIL" },
            model,
            n,
            count,
            detail.join(" ")
        ));

        rows.push(VerifyRow {
            size: n,
            pass,
            coefficients: coefficient_strings(&reference),
            count: count.to_string(),
            comparisons,
            count_consistent,
            euler_zero,
            palindromic: reference.is_palindromic(),
        });
    }

    let all_passed = rows.iter().all(|r| r.pass);
    let summary = VerifySummary {
        version: VERSION.to_string(),
        model: model.name().to_string(),
        field: field.describe(),
        seed,
        sizes: rows,
        all_passed,
        skips,
    };
    Ok(Outcome {
        stdout: to_json(&summary),
        stderr,
        exit: if all_passed { 0 } else { 1 },
    })
}

pub fn cmd_table(args: &TableArgs) -> Result<Outcome> {
    let model: Model = args.model.into();
    let table = recursion::build_table(model, args.max_size)?;
    let rows: Vec<TableRow> = table
        .sizes()
        .into_iter()
        .map(|size| TableRow {
            size,
            count: table.count(size).expect("table entry").to_string(),
            coefficients: coefficient_strings(table.polynomial(size).expect("table entry")),
        })
        .collect();
    let report = TableReport {
        version: VERSION.to_string(),
        model: model.name().to_string(),
        rows,
    };
    let stdout = match args.output {
        OutputArg::Csv => report.to_csv(),
        OutputArg::Json => to_json(&report),
        OutputArg::Text => report.to_text(),
    };
    Ok(Outcome::ok(stdout))
}

pub fn cmd_export_matrix(args: &ExportMatrixArgs) -> Result<Outcome> {
    let size_cap = resolve_size_cap(args.size_cap)?;
    if args.sites > size_cap {
        return Err(Error::Resource(format!(
            "--sites {} exceeds the size cap {size_cap}",
            args.sites
        )));
    }
    let q = match args.model {
        ModelArg::Nicolai => Model::Nicolai.supercharge(args.sites)?,
        ModelArg::Z2 => Model::Z2.supercharge(args.sites)?,
        ModelArg::Custom => {
            let Some(terms) = &args.terms else {
                return Err(Error::Config("--model custom requires --terms".into()));
            };
            parse_supercharge(terms, args.sites)?
        }
    };
    let matrix = homology::differential_matrix(&q, args.sites, args.degree)?;
    let text = matrix.to_triplet_text();
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome {
                stdout: String::new(),
                stderr: format!(
                    "wrote {}x{} matrix ({} entries) to {}\n",
                    matrix.rows(),
                    matrix.cols(),
                    matrix.nnz(),
                    path.display()
                ),
                exit: 0,
            })
        }
        None => Ok(Outcome::ok(text)),
    }
}
