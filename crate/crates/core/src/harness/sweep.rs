use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Seek, SeekFrom, Write};
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checkpoint::{Checkpoint, CheckpointConfig};
use super::record::{verify_poset, Property, VerificationRecord};
use super::{exit_code, HarnessError};
use crate::gen::{poset_count, read_digraph6_file, work_units, GenerationShard, Subtree};
use crate::poset::Poset;

/// Records per work unit when reading a digraph6 file.
pub const FILE_UNIT_RECORDS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Generate { p: usize },
    Digraph6File { path: PathBuf },
}

impl Source {
    fn label(&self) -> String {
        match self {
            Source::Generate { .. } => "generate".into(),
            Source::Digraph6File { path } => format!("digraph6:{}", path.display()),
        }
    }

    fn p(&self) -> Option<usize> {
        match self {
            Source::Generate { p } => Some(*p),
            Source::Digraph6File { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub source: Source,
    pub shards: usize,
    pub shard: usize,
    /// Worker threads.
    pub jobs: usize,
    pub checkpoint: Option<PathBuf>,
    /// Record file; when `None` records go to the writer passed to [`sweep`].
    pub output: Option<PathBuf>,
    pub summary_only: bool,
    /// Stop after this many work units in this invocation.
    pub max_units: Option<usize>,
}

impl SweepConfig {
    pub fn new(source: Source) -> Self {
        SweepConfig {
            source,
            shards: 1,
            shard: 0,
            jobs: 1,
            checkpoint: None,
            output: None,
            summary_only: false,
            max_units: None,
        }
    }

    pub fn generate(p: usize) -> Self {
        Self::new(Source::Generate { p })
    }

    pub fn digraph6(path: impl Into<PathBuf>) -> Self {
        Self::new(Source::Digraph6File { path: path.into() })
    }

    fn checkpoint_config(&self) -> CheckpointConfig {
        CheckpointConfig {
            source: self.source.label(),
            p: self.source.p(),
            shards: self.shards,
            shard: self.shard,
            summary_only: self.summary_only,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCounts {
    pub ehrhart_positive: u64,
    pub real_rooted: u64,
    pub log_concave: u64,
    pub unimodal: u64,
}

impl PropertyCounts {
    fn bump(&mut self, property: Property) {
        match property {
            Property::EhrhartPositive => self.ehrhart_positive += 1,
            Property::RealRooted => self.real_rooted += 1,
            Property::LogConcave => self.log_concave += 1,
            Property::Unimodal => self.unimodal += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.ehrhart_positive + self.real_rooted + self.log_concave + self.unimodal
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub p: Option<usize>,
    pub source: String,
    pub total_posets: u64,
    /// Known poset count, for unsharded generation sweeps.
    pub expected_total: Option<u64>,
    /// Counterexamples per property.
    pub counterexample_counts: PropertyCounts,
    /// Full records of every poset failing any property.
    pub counterexamples: Vec<VerificationRecord>,
    pub narrow_posets: u64,
    pub graded_posets: u64,
    pub shard: usize,
    pub shards: usize,
    /// Checkpoint cursor: work units fully processed.
    pub units_completed: usize,
    pub units_total: Option<usize>,
    pub complete: bool,
    pub elapsed_secs: f64,
}

impl SweepSummary {
    fn new(config: &SweepConfig) -> Self {
        let expected_total = match config.source {
            Source::Generate { p } if config.shards == 1 => poset_count(p),
            _ => None,
        };
        SweepSummary {
            p: config.source.p(),
            source: config.source.label(),
            total_posets: 0,
            expected_total,
            counterexample_counts: PropertyCounts::default(),
            counterexamples: Vec::new(),
            narrow_posets: 0,
            graded_posets: 0,
            shard: config.shard,
            shards: config.shards,
            units_completed: 0,
            units_total: None,
            complete: false,
            elapsed_secs: 0.0,
        }
    }

    fn absorb(&mut self, record: &VerificationRecord) {
        self.total_posets += 1;
        self.narrow_posets += u64::from(record.narrow);
        self.graded_posets += u64::from(record.graded);
        let failed = record.failed_properties();
        for &q in &failed {
            self.counterexample_counts.bump(q);
        }
        if !failed.is_empty() {
            self.counterexamples.push(record.clone());
        }
    }

    pub fn counterexample_total(&self) -> usize {
        self.counterexamples.len()
    }

    /// Equal up to wall-clock time.
    pub fn same_result(&self, other: &SweepSummary) -> bool {
        SweepSummary { elapsed_secs: 0.0, ..self.clone() } == SweepSummary { elapsed_secs: 0.0, ..other.clone() }
    }

    pub fn exit_code(&self) -> i32 {
        if self.counterexamples.is_empty() {
            exit_code::PASS
        } else {
            exit_code::COUNTEREXAMPLE
        }
    }
}

enum Work {
    Subtree(Poset, usize),
    Batch(Vec<Poset>),
}

impl Work {
    fn run(self) -> Result<Vec<VerificationRecord>, HarnessError> {
        match self {
            Work::Subtree(root, p) => Subtree::new(root, p).map(|q| verify_poset(&q)).collect(),
            Work::Batch(posets) => posets.iter().map(verify_poset).collect(),
        }
    }
}

type Units = Box<dyn Iterator<Item = Result<Work, HarnessError>>>;

fn units(config: &SweepConfig) -> Result<(Units, Option<usize>), HarnessError> {
    match &config.source {
        Source::Generate { p } => {
            let p = *p;
            let shard = GenerationShard::new(p, config.shard, config.shards)?;
            let roots = work_units(&shard)?;
            let total = roots.len();
            Ok((Box::new(roots.into_iter().map(move |(_, root)| Ok(Work::Subtree(root, p)))), Some(total)))
        }
        Source::Digraph6File { path } => {
            let reader = read_digraph6_file(path).map_err(|e| HarnessError::io(format!("opening {}", path.display()), e))?;
            let (shard, shards) = (config.shard, config.shards);
            let mut reader = reader.peekable();
            let mut chunk_index = 0usize;
            let iter = std::iter::from_fn(move || loop {
                reader.peek()?;
                let chunk: Result<Vec<Poset>, _> = reader.by_ref().take(FILE_UNIT_RECORDS).collect();
                let index = chunk_index;
                chunk_index += 1;
                match chunk {
                    Err(e) => return Some(Err(HarnessError::from(e))),
                    Ok(c) if index % shards == shard => return Some(Ok(Work::Batch(c))),
                    Ok(_) => continue,
                }
            });
            Ok((Box::new(iter), None))
        }
    }
}

enum Sink<'a> {
    File(BufWriter<File>),
    Writer(&'a mut dyn Write),
}

impl Sink<'_> {
    fn writer(&mut self) -> &mut dyn Write {
        match self {
            Sink::File(f) => f,
            Sink::Writer(w) => *w,
        }
    }

    fn offset(&mut self) -> std::io::Result<Option<u64>> {
        match self {
            Sink::File(f) => {
                f.flush()?;
                f.get_mut().stream_position().map(Some)
            }
            Sink::Writer(w) => w.flush().map(|_| None),
        }
    }
}

/// Verifies every poset of the configured source once, writing one JSONL
/// record per poset in unit order, and returns the aggregate summary.
///
/// With a checkpoint path, progress is stored after each batch of completed
/// units and an existing checkpoint for the same configuration is resumed.
/// A completed checkpoint returns its summary without further work.
pub fn sweep(config: &SweepConfig, records: &mut dyn Write) -> Result<SweepSummary, HarnessError> {
    let started = Instant::now();
    let ck_config = config.checkpoint_config();
    let resumed = match &config.checkpoint {
        Some(path) => Checkpoint::load(path, &ck_config)?,
        None => None,
    };
    if let Some(ck) = &resumed {
        if ck.summary.complete {
            return Ok(ck.summary.clone());
        }
    }

    let mut summary = resumed.as_ref().map_or_else(|| SweepSummary::new(config), |ck| ck.summary.clone());
    let previous_elapsed = summary.elapsed_secs;

    let mut sink = match &config.output {
        Some(path) => {
            let io_err = |e| HarnessError::io(format!("opening output {}", path.display()), e);
            let file = match resumed.as_ref().and_then(|ck| ck.output_offset) {
                Some(offset) => {
                    let mut f = OpenOptions::new().write(true).open(path).map_err(io_err)?;
                    f.set_len(offset).map_err(io_err)?;
                    f.seek(SeekFrom::End(0)).map_err(io_err)?;
                    f
                }
                None => File::create(path).map_err(io_err)?,
            };
            Sink::File(BufWriter::new(file))
        }
        None => Sink::Writer(records),
    };

    let (units, units_total) = units(config)?;
    summary.units_total = units_total;
    let mut pending = units.skip(summary.units_completed).peekable();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .expect("thread pool");
    let batch_size = config.jobs.max(1) * 4;
    let mut budget = config.max_units.unwrap_or(usize::MAX);

    while budget > 0 && pending.peek().is_some() {
        let take = batch_size.min(budget);
        let batch: Vec<Work> = pending.by_ref().take(take).collect::<Result<_, _>>()?;
        budget -= batch.len();
        let results: Vec<Result<Vec<VerificationRecord>, HarnessError>> =
            pool.install(|| batch.into_par_iter().map(Work::run).collect());

        let out = sink.writer();
        let write_err = |e| HarnessError::io("writing records", e);
        for unit in results {
            for record in unit? {
                summary.absorb(&record);
                if !config.summary_only {
                    serde_json::to_writer(&mut *out, &record).map_err(|e| write_err(e.into()))?;
                    out.write_all(b"\n").map_err(write_err)?;
                }
            }
            summary.units_completed += 1;
        }
        let offset = sink.offset().map_err(|e| HarnessError::io("flushing records", e))?;
        summary.elapsed_secs = previous_elapsed + started.elapsed().as_secs_f64();
        if let Some(path) = &config.checkpoint {
            Checkpoint::new(ck_config.clone(), summary.units_completed, offset, summary.clone()).store(path)?;
        }
    }

    let offset = sink.offset().map_err(|e| HarnessError::io("flushing records", e))?;
    summary.complete = pending.peek().is_none();
    summary.elapsed_secs = previous_elapsed + started.elapsed().as_secs_f64();
    if summary.complete {
        if summary.units_total.is_none() {
            summary.units_total = Some(summary.units_completed);
        }
        if let Some(expected) = summary.expected_total {
            if summary.total_posets != expected {
                return Err(HarnessError::CountMismatch { expected, found: summary.total_posets });
            }
        }
    }
    if let Some(path) = &config.checkpoint {
        Checkpoint::new(ck_config, summary.units_completed, offset, summary.clone()).store(path)?;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_generated_sweep() {
        let mut out = Vec::new();
        let s = sweep(&SweepConfig::generate(3), &mut out).unwrap();
        assert_eq!(s.total_posets, 5);
        assert_eq!(s.expected_total, Some(5));
        assert!(s.complete);
        assert_eq!(s.exit_code(), exit_code::PASS);
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 5);
        for line in text.lines() {
            let r: VerificationRecord = serde_json::from_str(line).unwrap();
            assert_eq!(r.p, 3);
        }
    }

    #[test]
    fn summary_only_writes_nothing() {
        let mut out = Vec::new();
        let config = SweepConfig { summary_only: true, ..SweepConfig::generate(4) };
        let s = sweep(&config, &mut out).unwrap();
        assert_eq!(s.total_posets, 16);
        assert!(out.is_empty());
    }

    #[test]
    fn sharded_sweep_has_no_expected_total() {
        let config = SweepConfig { shards: 2, shard: 1, ..SweepConfig::generate(5) };
        let s = sweep(&config, &mut std::io::sink()).unwrap();
        assert_eq!(s.expected_total, None);
        assert!(s.total_posets < 63);
    }
}
