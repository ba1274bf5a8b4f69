//! Query execution and output rendering.
//!
//! Results go to the output stream, one element per line; diagnostics
//! (clamp warnings and the like) go to stderr so results stay pipeable.

use std::io::Write;

use rsel_core::{oracle_select, sorted_select, FiniteF64, QueryRequest, RmqIndex, ValueSequence};

use crate::dataset::{Dataset, SequenceData};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    JsonLines,
}

/// Per-kind value rendering. CSV and JSON happen to agree for both kinds
/// (finite floats are valid JSON numbers), but the trait keeps the two
/// formats independent.
pub trait RenderValue {
    fn csv(&self) -> String;
    fn json(&self) -> String;
}

impl RenderValue for i64 {
    fn csv(&self) -> String {
        self.to_string()
    }
    fn json(&self) -> String {
        self.to_string()
    }
}

impl RenderValue for FiniteF64 {
    fn csv(&self) -> String {
        self.get().to_string()
    }
    fn json(&self) -> String {
        self.get().to_string()
    }
}

/// One parsed batch line, keeping its line number for error reporting.
pub type BatchEntry = (usize, QueryRequest);

/// Parses batch text: three whitespace-separated integers `i j k` per line.
/// Blank lines are skipped; anything else is a parse error naming the line.
pub fn parse_batch(path: &str, text: &str) -> Result<Vec<BatchEntry>, CliError> {
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(CliError::Parse {
                path: path.to_string(),
                line: lineno,
                message: format!("expected three fields \"i j k\", found {}", fields.len()),
            });
        }
        let mut parsed = [0usize; 3];
        for (slot, field) in parsed.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| CliError::Parse {
                path: path.to_string(),
                line: lineno,
                message: format!("invalid integer {field:?}"),
            })?;
        }
        entries.push((lineno, QueryRequest::new(parsed[0], parsed[1], parsed[2])));
    }
    Ok(entries)
}

/// Builds the index for the dataset and runs one query.
pub fn run_query(
    dataset: &Dataset,
    request: QueryRequest,
    format: OutputFormat,
    verify: bool,
    out: &mut impl Write,
) -> Result<(), CliError> {
    match &dataset.data {
        SequenceData::Int64(seq) => {
            let index = RmqIndex::build(seq);
            execute(seq, &index, request, format, verify, out)
        }
        SequenceData::Float64(seq) => {
            let index = RmqIndex::build(seq);
            execute(seq, &index, request, format, verify, out)
        }
    }
}

/// Runs every batch query in file order against one shared index.
/// Blocks are introduced by a `# query i j k` line; the first failing
/// query aborts the batch, reporting its batch-file line number.
pub fn run_batch(
    dataset: &Dataset,
    batch: &[BatchEntry],
    format: OutputFormat,
    verify: bool,
    out: &mut impl Write,
) -> Result<(), CliError> {
    match &dataset.data {
        SequenceData::Int64(seq) => {
            let index = RmqIndex::build(seq);
            batch_over(seq, &index, batch, format, verify, out)
        }
        SequenceData::Float64(seq) => {
            let index = RmqIndex::build(seq);
            batch_over(seq, &index, batch, format, verify, out)
        }
    }
}

fn batch_over<T: Ord + Clone + RenderValue>(
    seq: &ValueSequence<T>,
    index: &RmqIndex<'_, T>,
    batch: &[BatchEntry],
    format: OutputFormat,
    verify: bool,
    out: &mut impl Write,
) -> Result<(), CliError> {
    for &(line, request) in batch {
        writeln!(
            out,
            "# query {} {} {}",
            request.start, request.end, request.count
        )
        .map_err(write_error)?;
        execute(seq, index, request, format, verify, out).map_err(|source| {
            CliError::BatchLine {
                line,
                source: Box::new(source),
            }
        })?;
    }
    Ok(())
}

fn execute<T: Ord + Clone + RenderValue>(
    seq: &ValueSequence<T>,
    index: &RmqIndex<'_, T>,
    request: QueryRequest,
    format: OutputFormat,
    verify: bool,
    out: &mut impl Write,
) -> Result<(), CliError> {
    warn_on_clamp(seq.len(), request);
    let result = sorted_select(index, request).map_err(CliError::Range)?;
    if verify {
        let expected = oracle_select(seq, request).map_err(CliError::Range)?;
        let matches = result.items.len() == expected.items.len()
            && result
                .items
                .iter()
                .zip(&expected.items)
                .all(|(got, want)| got.value == want.value);
        if !matches {
            return Err(CliError::VerifyMismatch {
                start: request.start,
                end: request.end,
                count: request.count,
            });
        }
    }
    for item in &result.items {
        match format {
            OutputFormat::Csv => writeln!(out, "{},{}", item.value.csv(), item.index),
            OutputFormat::JsonLines => writeln!(
                out,
                "{{\"value\": {}, \"index\": {}}}",
                item.value.json(),
                item.index
            ),
        }
        .map_err(write_error)?;
    }
    Ok(())
}

fn warn_on_clamp(len: usize, request: QueryRequest) {
    if request.start >= 1 && request.start <= request.end && request.end <= len {
        let span = request.end - request.start + 1;
        if request.count > span {
            eprintln!(
                "warning: k={} exceeds range size {}; returning {} elements",
                request.count, span, span
            );
        }
    }
}

fn write_error(source: std::io::Error) -> CliError {
    CliError::Io {
        context: "writing results".to_string(),
        source,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Dataset;
    use rsel_core::IntSequence;

    fn dataset(values: Vec<i64>) -> Dataset {
        Dataset {
            name: "test".into(),
            data: SequenceData::Int64(IntSequence::new(values)),
        }
    }

    fn render(dataset: &Dataset, request: QueryRequest, format: OutputFormat) -> String {
        let mut out = Vec::new();
        run_query(dataset, request, format, true, &mut out).unwrap();
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn csv_lines_match_the_documented_shape() {
        let d = dataset(vec![3, 1, 4, 1, 5, 9, 2, 6]);
        assert_eq!(
            render(&d, QueryRequest::new(2, 7, 3), OutputFormat::Csv),
            "1,2\n1,4\n2,7\n"
        );
    }

    #[test]
    fn jsonlines_have_value_then_index() {
        let d = dataset(vec![3, 1, 4]);
        assert_eq!(
            render(&d, QueryRequest::new(1, 3, 2), OutputFormat::JsonLines),
            "{\"value\": 1, \"index\": 2}\n{\"value\": 3, \"index\": 1}\n"
        );
    }

    #[test]
    fn line_count_is_clamped_count() {
        let d = dataset(vec![7, 8]);
        let text = render(&d, QueryRequest::new(1, 2, 9), OutputFormat::Csv);
        assert_eq!(text.lines().count(), 2);
    }

    #[test]
    fn range_errors_surface_with_range_code() {
        let d = dataset(vec![1, 2]);
        let mut out = Vec::new();
        let err = run_query(
            &d,
            QueryRequest::new(5, 2, 1),
            OutputFormat::Csv,
            false,
            &mut out,
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), crate::error::EXIT_RANGE);
        assert!(err.to_string().contains('5'));
    }

    #[test]
    fn batch_blocks_and_per_query_headers() {
        let d = dataset(vec![2, 1, 3]);
        let batch = parse_batch("batch", "1 3 2\n2 2 1\n").unwrap();
        let mut out = Vec::new();
        run_batch(&d, &batch, OutputFormat::Csv, true, &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "# query 1 3 2\n1,2\n2,1\n# query 2 2 1\n1,2\n"
        );
    }

    #[test]
    fn batch_parse_errors_name_their_line() {
        let err = parse_batch("batch", "1 2\n").unwrap_err();
        assert!(err.to_string().contains("batch:1"));
        assert_eq!(err.exit_code(), crate::error::EXIT_PARSE);

        let err = parse_batch("batch", "1 2 3\nx y z\n").unwrap_err();
        assert!(err.to_string().contains("batch:2"));

        assert!(parse_batch("batch", "").unwrap().is_empty());
        assert!(parse_batch("batch", "\n\n").unwrap().is_empty());
    }

    #[test]
    fn batch_failure_names_the_batch_line() {
        let d = dataset(vec![2, 1, 3]);
        let batch = parse_batch("batch", "1 3 1\n3 1 1\n").unwrap();
        let mut out = Vec::new();
        let err = run_batch(&d, &batch, OutputFormat::Csv, false, &mut out).unwrap_err();
        assert!(err.to_string().contains("batch line 2"));
        assert_eq!(err.exit_code(), crate::error::EXIT_RANGE);
    }
}
