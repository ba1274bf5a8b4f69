//! Instrumented timing harness for the preprocessing and query paths.
//!
//! Methodology: fixed-seed random data, a warm unmeasured run before every
//! measured one, and the median of at least eleven repetitions on a
//! monotonic clock. Query repetitions each draw a fresh random range of
//! length at least k and warm it first, so the measured figure reflects the
//! k-dependent algorithmic work rather than first-touch cache misses.
//! Instrumentation bounds (heap peak at most 2k, at most 2k+1 RMQ calls)
//! are hard-asserted on every measured query.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rsel_core::{oracle_select, sorted_select, IntSequence, QueryRequest, QueryResult, RmqIndex};

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_REPS: usize = 11;

/// Keep table allocations in the malloc heap across repetitions. Past
/// glibc's dynamic mmap-threshold cap (32 MiB), every build would otherwise
/// mmap/munmap its tables and pay thousands of page faults inside the timed
/// region, which shows up as a spurious jump in the doubling ratios.
#[cfg(all(target_os = "linux", target_env = "gnu"))]
fn stabilize_allocator() {
    use std::sync::Once;
    static ONCE: Once = Once::new();
    ONCE.call_once(|| unsafe {
        libc::mallopt(libc::M_MMAP_THRESHOLD, 1 << 30);
        libc::mallopt(libc::M_TRIM_THRESHOLD, 1 << 30);
    });
}

#[cfg(not(all(target_os = "linux", target_env = "gnu")))]
fn stabilize_allocator() {}

pub const CSV_HEADER: &str = "strategy,n,k,preprocess_ns,query_ns,heap_peak,rmq_calls,space_words";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// The heap-of-subintervals engine over the linear-space RMQ index.
    Paper,
    /// Copy the range and fully sort it.
    SortBaseline,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Paper => "paper",
            Strategy::SortBaseline => "sort_baseline",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Table,
    Csv,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub strategy: Strategy,
    pub n: usize,
    pub k: usize,
    pub preprocess_ns: u64,
    pub query_ns: u64,
    pub heap_peak: usize,
    pub rmq_calls: usize,
    pub space_words: usize,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub seed: u64,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// `(n, time(n) / time(n/2))` over consecutive rows whose sizes double.
    pub fn doubling_ratios(&self) -> Vec<(usize, f64)> {
        self.rows
            .windows(2)
            .filter(|pair| pair[1].n == pair[0].n * 2 && pair[0].preprocess_ns > 0)
            .map(|pair| {
                (
                    pair[1].n,
                    pair[1].preprocess_ns as f64 / pair[0].preprocess_ns as f64,
                )
            })
            .collect()
    }
}

fn random_sequence(n: usize, rng: &mut StdRng) -> IntSequence {
    IntSequence::new((0..n).map(|_| rng.random::<i64>()).collect())
}

fn median(samples: &mut [u64]) -> u64 {
    samples.sort_unstable();
    samples[samples.len() / 2]
}

/// Builds the default index once per size and reports the median build time
/// and the measured table footprint. `sizes` must be ascending.
pub fn bench_preprocess(sizes: &[usize], seed: u64, reps: usize) -> BenchReport {
    debug_assert!(sizes.windows(2).all(|w| w[0] < w[1]), "sizes must ascend");
    stabilize_allocator();
    let reps = reps.max(1);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let seq = random_sequence(n, &mut rng);
        // Warm allocator and caches before the measured builds.
        let mut space_words = RmqIndex::build(&seq).space_in_words();
        let mut times = Vec::with_capacity(reps);
        for _ in 0..reps {
            let started = Instant::now();
            let index = RmqIndex::build(&seq);
            times.push(started.elapsed().as_nanos() as u64);
            space_words = index.space_in_words();
            std::hint::black_box(&index);
        }
        rows.push(BenchRow {
            strategy: Strategy::Paper,
            n,
            k: 0,
            preprocess_ns: median(&mut times),
            query_ns: 0,
            heap_peak: 0,
            rmq_calls: 0,
            space_words,
        });
    }
    BenchReport { seed, rows }
}

/// Times each strategy per k over fixed random data of length `n`.
/// Every k must satisfy `k ≤ n`.
pub fn bench_query(
    n: usize,
    ks: &[usize],
    strategies: &[Strategy],
    seed: u64,
    reps: usize,
) -> Result<BenchReport, CliError> {
    if let Some(&k) = ks.iter().find(|&&k| k > n) {
        return Err(CliError::KExceedsN { k, n });
    }
    stabilize_allocator();
    let reps = reps.max(1);
    let mut rng = StdRng::seed_from_u64(seed);
    let seq = random_sequence(n, &mut rng);
    let built = Instant::now();
    let index = RmqIndex::build(&seq);
    let preprocess_ns = built.elapsed().as_nanos() as u64;
    let space_words = index.space_in_words();

    let mut rows = Vec::with_capacity(strategies.len() * ks.len());
    for &strategy in strategies {
        for &k in ks {
            // Derive the range stream from (seed, k) only, so both
            // strategies see identical ranges.
            let mut qrng =
                StdRng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let mut times = Vec::with_capacity(reps);
            let mut heap_peak = 0usize;
            let mut rmq_calls = 0usize;
            for _ in 0..reps {
                let request = random_request(n, k, &mut qrng);
                match strategy {
                    Strategy::Paper => {
                        let warm = sorted_select(&index, request).expect("valid bench range");
                        assert_paper_bounds(&warm, k);
                        heap_peak = heap_peak.max(warm.stats.heap_peak);
                        rmq_calls = rmq_calls.max(warm.stats.rmq_calls);
                        std::hint::black_box(&warm);
                        let started = Instant::now();
                        let result = sorted_select(&index, request).expect("valid bench range");
                        times.push(started.elapsed().as_nanos() as u64);
                        std::hint::black_box(&result);
                    }
                    Strategy::SortBaseline => {
                        let warm = oracle_select(&seq, request).expect("valid bench range");
                        std::hint::black_box(&warm);
                        let started = Instant::now();
                        let result = oracle_select(&seq, request).expect("valid bench range");
                        times.push(started.elapsed().as_nanos() as u64);
                        std::hint::black_box(&result);
                    }
                }
            }
            let paper = strategy == Strategy::Paper;
            rows.push(BenchRow {
                strategy,
                n,
                k,
                preprocess_ns: if paper { preprocess_ns } else { 0 },
                query_ns: median(&mut times),
                heap_peak: if paper { heap_peak } else { 0 },
                rmq_calls: if paper { rmq_calls } else { 0 },
                space_words: if paper { space_words } else { 0 },
            });
        }
    }
    Ok(BenchReport { seed, rows })
}

fn random_request(n: usize, k: usize, rng: &mut StdRng) -> QueryRequest {
    let span = rng.random_range(k.max(1)..=n);
    let start = rng.random_range(1..=n - span + 1);
    QueryRequest::new(start, start + span - 1, k)
}

fn assert_paper_bounds(result: &QueryResult<i64>, k: usize) {
    let emitted = result.items.len();
    let stats = result.stats;
    assert_eq!(stats.heap_pops, emitted, "pops must equal emitted count");
    if k == 0 {
        assert_eq!(stats, Default::default(), "k=0 must do no heap or RMQ work");
    } else {
        assert!(
            stats.heap_peak <= 2 * k,
            "heap peak {} > 2k={}",
            stats.heap_peak,
            2 * k
        );
        assert!(
            stats.rmq_calls <= 2 * k + 1,
            "rmq calls {} > 2k+1={}",
            stats.rmq_calls,
            2 * k + 1
        );
    }
}

/// Deterministic rendering of a report's rows.
pub fn render_report(report: &BenchReport, format: ReportFormat) -> String {
    let cells: Vec<[String; 8]> = report
        .rows
        .iter()
        .map(|row| {
            [
                row.strategy.name().to_string(),
                row.n.to_string(),
                row.k.to_string(),
                row.preprocess_ns.to_string(),
                row.query_ns.to_string(),
                row.heap_peak.to_string(),
                row.rmq_calls.to_string(),
                row.space_words.to_string(),
            ]
        })
        .collect();
    match format {
        ReportFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for row in &cells {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        ReportFormat::Table => {
            let headers: Vec<&str> = CSV_HEADER.split(',').collect();
            let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
            for row in &cells {
                for (width, cell) in widths.iter_mut().zip(row) {
                    *width = (*width).max(cell.len());
                }
            }
            let mut out = String::new();
            for (col, header) in headers.iter().enumerate() {
                if col > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!("{:>width$}", header, width = widths[col]));
            }
            out.push('\n');
            for row in &cells {
                for (col, cell) in row.iter().enumerate() {
                    if col > 0 {
                        out.push_str("  ");
                    }
                    out.push_str(&format!("{:>width$}", cell, width = widths[col]));
                }
                out.push('\n');
            }
            out
        }
    }
}
