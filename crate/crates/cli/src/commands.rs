use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Error};
use cicy_core::check::{check_all, CheckOptions};
use cicy_core::dataset::{
    export_features, join_hodge, parse_config_list, read_hodge_table, write_csv, write_json, InputFormat,
};
use cicy_core::{classify, compute_all, ComputeOptions, ComputeReport, DatasetRecord};

use crate::{CheckArgs, ClassifyArgs, ComputeArgs, FeaturesArgs, Format, InputArgs};

pub struct Failure {
    pub code: u8,
    pub error: Error,
}

const HARD: u8 = 1;
const USAGE: u8 = 2;

trait OrExit<T> {
    fn or_exit(self, code: u8) -> Result<T, Failure>;
}

impl<T, E: Into<Error>> OrExit<T> for Result<T, E> {
    fn or_exit(self, code: u8) -> Result<T, Failure> {
        self.map_err(|e| Failure { code, error: e.into() })
    }
}

struct Loaded {
    records: Vec<DatasetRecord>,
    parse_errors: usize,
}

fn load(args: &InputArgs) -> Result<Loaded, Failure> {
    let path = &args.input;
    let file = File::open(path)
        .with_context(|| format!("cannot open {}", path.display()))
        .or_exit(USAGE)?;
    let format = args.input_format.unwrap_or_else(|| InputFormat::from_path(path));
    let parsed = parse_config_list(BufReader::new(file), format)
        .with_context(|| format!("cannot read {}", path.display()))
        .or_exit(USAGE)?;
    for d in &parsed.diagnostics {
        eprintln!("{}: {d}", path.display());
    }
    let mut records: Vec<DatasetRecord> = parsed.configs.into_iter().map(DatasetRecord::new).collect();

    if let Some(hodge) = &args.hodge {
        let file = File::open(hodge)
            .with_context(|| format!("cannot open {}", hodge.display()))
            .or_exit(USAGE)?;
        let table = read_hodge_table(BufReader::new(file))
            .with_context(|| format!("bad Hodge table {}", hodge.display()))
            .or_exit(USAGE)?;
        for d in join_hodge(&mut records, &table) {
            eprintln!("warning: {d}");
        }
    }
    Ok(Loaded {
        records,
        parse_errors: parsed.diagnostics.len(),
    })
}

fn run(args: &InputArgs, records: &mut [DatasetRecord]) -> Result<ComputeReport, Failure> {
    let report = compute_all(
        records,
        ComputeOptions {
            workers: args.workers(),
            convention: args.convention,
        },
    )
    .or_exit(HARD)?;
    for d in &report.diagnostics {
        eprintln!("{d}");
    }
    Ok(report)
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .with_context(|| format!("cannot create {}", path.display()))
        .or_exit(USAGE)
}

fn status(hard_errors: usize) -> ExitCode {
    if hard_errors == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(HARD)
    }
}

fn summary(report: &ComputeReport, loaded: &Loaded) {
    println!("records={}", loaded.records.len());
    println!(
        "favorable={}",
        loaded.records.iter().filter(|r| r.favorable == Some(true)).count()
    );
    println!("computed={}", report.computed);
    println!("skipped={}", report.skipped);
    println!("failed={}", report.failed);
    println!("parse_errors={}", loaded.parse_errors);
}

pub fn cmd_compute(args: &ComputeArgs) -> Result<ExitCode, Failure> {
    let start = Instant::now();
    let mut loaded = load(&args.input)?;
    let report = run(&args.input, &mut loaded.records)?;

    if let Some(out) = &args.out {
        let format = args.format.unwrap_or_else(|| {
            if out.extension().is_some_and(|e| e == "json") {
                Format::Json
            } else {
                Format::Csv
            }
        });
        let mut w = create(out)?;
        match format {
            Format::Csv => write_csv(&loaded.records, &mut w),
            Format::Json => write_json(&loaded.records, args.input.convention, &mut w),
        }
        .with_context(|| format!("writing {}", out.display()))
        .or_exit(HARD)?;
        w.flush().or_exit(HARD)?;
    }

    summary(&report, &loaded);
    println!("buckets={}", classify(&loaded.records).bucket_count());
    println!("elapsed_ms={}", start.elapsed().as_millis());
    Ok(status(report.failed + loaded.parse_errors))
}

pub fn cmd_features(args: &FeaturesArgs) -> Result<ExitCode, Failure> {
    let mut loaded = load(&args.input)?;
    let report = run(&args.input, &mut loaded.records)?;

    fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))
        .or_exit(USAGE)?;
    let mut features = create(&args.out.join("features.csv"))?;
    let mut labels = create(&args.out.join("labels.csv"))?;
    let exported = export_features(
        &loaded.records,
        args.frame,
        args.input.convention,
        &mut features,
        &mut labels,
    )
    .or_exit(HARD)?;
    for d in &exported.diagnostics {
        eprintln!("{d}");
    }
    let mut manifest = create(&args.out.join("manifest.json"))?;
    serde_json::to_writer_pretty(&mut manifest, &exported.manifest).or_exit(HARD)?;
    writeln!(manifest).and_then(|_| manifest.flush()).or_exit(HARD)?;

    summary(&report, &loaded);
    println!("written={}", exported.manifest.records);
    println!("excluded={}", exported.manifest.excluded.len());
    println!("frame={}", args.frame);
    println!("convention={}", args.input.convention);
    Ok(status(report.failed + loaded.parse_errors + exported.diagnostics.len()))
}

pub fn cmd_classify(args: &ClassifyArgs) -> Result<ExitCode, Failure> {
    let mut loaded = load(&args.input)?;
    let report = run(&args.input, &mut loaded.records)?;
    let classes = classify(&loaded.records);
    let histogram = classes.histogram();

    if let Some(out) = &args.out {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(create(out)?);
        w.write_record(["h11", "h21", "d1", "d2", "d3", "dp", "size", "ids"])
            .or_exit(HARD)?;
        for (key, ids) in &classes.buckets {
            w.write_record([
                key.h11.to_string(),
                key.h21.to_string(),
                key.d1.to_string(),
                key.d2.to_string(),
                key.d3.to_string(),
                key.dp.to_string(),
                ids.len().to_string(),
                ids.join(";"),
            ])
            .or_exit(HARD)?;
        }
        w.flush().or_exit(HARD)?;
    }
    if let Some(path) = &args.histogram {
        let mut w = create(path)?;
        writeln!(w, "size,buckets").or_exit(HARD)?;
        for (size, count) in &histogram {
            writeln!(w, "{size},{count}").or_exit(HARD)?;
        }
        w.flush().or_exit(HARD)?;
    }

    summary(&report, &loaded);
    println!("buckets={}", classes.bucket_count());
    println!("unclassified={}", classes.unclassified.len());
    for (size, count) in &histogram {
        println!("histogram.{size}={count}");
    }
    Ok(status(report.failed + loaded.parse_errors))
}

pub fn cmd_check(args: &CheckArgs) -> Result<ExitCode, Failure> {
    let start = Instant::now();
    let loaded = load(&args.input)?;
    let report = check_all(
        &loaded.records,
        CheckOptions {
            permutations: args.permutations,
            seed: args.seed,
            convention: args.input.convention,
            workers: args.input.workers(),
        },
    )
    .or_exit(HARD)?;
    for v in &report.violations {
        eprintln!("violation: {v}");
    }
    println!("records={}", loaded.records.len());
    println!("checked={}", report.checked);
    println!("skipped={}", report.skipped);
    println!("violations={}", report.violations.len());
    println!("inexact_divisions={}", report.inexact_divisions);
    println!("parse_errors={}", loaded.parse_errors);
    println!("elapsed_ms={}", start.elapsed().as_millis());
    Ok(status(report.violations.len() + loaded.parse_errors))
}
