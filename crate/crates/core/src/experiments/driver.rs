use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::ops::Range;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::table::Row;
use crate::error::Result;

/// Samples per checkpointed chunk once the run is under way.
pub const CHECKPOINT_EVERY: usize = 1000;

/// Chunk boundaries: a few small chunks first, so that running state such
/// as a screening threshold settles early, then blocks of CHECKPOINT_EVERY.
/// The boundaries depend only on `count`.
pub fn chunk_ranges(count: usize) -> Vec<Range<usize>> {
    let mut edges = vec![0];
    for e in [16, 64, 256] {
        if e < count {
            edges.push(e);
        }
    }
    let mut next = CHECKPOINT_EVERY;
    while next < count {
        edges.push(next);
        next += CHECKPOINT_EVERY;
    }
    edges.push(count);
    edges.windows(2).filter(|w| w[0] < w[1]).map(|w| w[0]..w[1]).collect()
}

#[derive(Serialize, Deserialize)]
struct ChunkLine {
    chunk: usize,
    rows: Vec<Row>,
}

/// Sidecar file with completed chunks: a fingerprint line, then one JSON
/// line per chunk.
struct Checkpoint {
    path: PathBuf,
    done: BTreeMap<usize, Vec<Row>>,
    file: File,
}

impl Checkpoint {
    fn path_for(cfg: &ExperimentConfig) -> Option<PathBuf> {
        let out = cfg.out.as_ref()?;
        let mut name = out.file_name()?.to_os_string();
        name.push(".ckpt");
        Some(out.with_file_name(name))
    }

    fn open(cfg: &ExperimentConfig, command: &str) -> Result<Option<Self>> {
        if !cfg.checkpoint {
            return Ok(None);
        }
        let Some(path) = Self::path_for(cfg) else { return Ok(None) };
        let key = cfg.fingerprint(command);
        let mut done = BTreeMap::new();
        if let Ok(f) = File::open(&path) {
            let mut lines = BufReader::new(f).lines();
            if let Some(Ok(first)) = lines.next() {
                if first == key {
                    for line in lines {
                        // A torn last line from an interrupted run is dropped.
                        match line.ok().and_then(|l| serde_json::from_str::<ChunkLine>(&l).ok()) {
                            Some(c) => {
                                done.insert(c.chunk, c.rows);
                            }
                            None => break,
                        }
                    }
                }
            }
        }
        let mut file = OpenOptions::new().create(true).write(true).truncate(true).open(&path)?;
        writeln!(file, "{key}")?;
        for (chunk, rows) in &done {
            writeln!(file, "{}", serde_json::to_string(&ChunkLine { chunk: *chunk, rows: rows.clone() })?)?;
        }
        file.flush()?;
        Ok(Some(Self { path, done, file }))
    }

    fn record(&mut self, chunk: usize, rows: &[Row]) -> Result<()> {
        writeln!(self.file, "{}", serde_json::to_string(&ChunkLine { chunk, rows: rows.to_vec() })?)?;
        self.file.flush()?;
        Ok(())
    }

    fn finish(self) -> Result<()> {
        drop(self.file);
        std::fs::remove_file(&self.path)?;
        Ok(())
    }
}

/// Runs `f` on every index of `range` and returns results in index order.
#[cfg(feature = "parallel")]
fn map_range<T, F>(pool: &rayon::ThreadPool, range: Range<usize>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync,
{
    use rayon::prelude::*;
    pool.install(|| range.into_par_iter().map(&f).collect())
}

#[cfg(not(feature = "parallel"))]
fn map_range<T, F>(_pool: &(), range: Range<usize>, f: F) -> Result<Vec<T>>
where
    F: Fn(usize) -> Result<T>,
{
    range.map(f).collect()
}

#[cfg(feature = "parallel")]
fn make_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| crate::error::Error::Config(format!("cannot start {workers} workers: {e}")))
}

#[cfg(not(feature = "parallel"))]
fn make_pool(_workers: usize) -> Result<()> {
    Ok(())
}

/// Evaluates `row(state, i)` for i in 0..count chunk by chunk. After each
/// chunk, `update` folds its rows into `state`, which the next chunk sees.
/// Rows come back in sample order; `None` rows are dropped. Completed chunks
/// are checkpointed next to the output file and reused on a rerun with the
/// same settings.
pub fn run_chunked<S, F, U>(cfg: &ExperimentConfig, command: &str, count: usize, state: &mut S, row: F, mut update: U) -> Result<Vec<Row>>
where
    S: Sync,
    F: Fn(&S, usize) -> Result<Option<Row>> + Sync,
    U: FnMut(&mut S, &[Row]),
{
    let pool = make_pool(cfg.workers)?;
    let mut ckpt = Checkpoint::open(cfg, command)?;
    let mut rows = Vec::with_capacity(count);
    for (k, range) in chunk_ranges(count).into_iter().enumerate() {
        let chunk = match ckpt.as_mut().and_then(|c| c.done.remove(&k)) {
            Some(saved) => saved,
            None => {
                let s: &S = state;
                let computed: Vec<Row> = map_range(&pool, range, |i| row(s, i))?.into_iter().flatten().collect();
                if let Some(c) = ckpt.as_mut() {
                    c.record(k, &computed)?;
                }
                computed
            }
        };
        update(state, &chunk);
        rows.extend(chunk);
    }
    if let Some(c) = ckpt {
        c.finish()?;
    }
    Ok(rows)
}

/// `run_chunked` without running state.
pub fn run_samples<F>(cfg: &ExperimentConfig, command: &str, count: usize, row: F) -> Result<Vec<Row>>
where
    F: Fn(usize) -> Result<Option<Row>> + Sync,
{
    run_chunked(cfg, command, count, &mut (), |_, i| row(i), |_, _| {})
}
