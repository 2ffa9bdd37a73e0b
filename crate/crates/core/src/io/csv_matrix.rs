use crate::error::{Error, Result};
use crate::matrix::CostMatrix;
use crate::network::Network;

/// Shortest round-trip decimal form (`3`, `0.1`, `1.6666666666666667`).
pub fn format_number(v: f64) -> String {
    format!("{v}")
}

/// Parses a header row of labels and `n` rows of `n` numbers.
///
/// Numbers are checked for shape and syntax only; see [`read_network_csv`]
/// for validation. Row `i` of the data is line `i + 2` of the file.
pub fn read_matrix_csv(text: &str, source: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let labels: Vec<String> = reader
        .headers()
        .map_err(|e| Error::parse(format!("{source}:1"), e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    if labels.is_empty() || labels.iter().all(String::is_empty) {
        return Err(Error::parse(format!("{source}:1"), "missing header row of labels"));
    }
    let mut rows = Vec::with_capacity(labels.len());
    for (r, record) in reader.records().enumerate() {
        let line = r + 2;
        let record = record.map_err(|e| Error::parse(format!("{source}:{line}"), e.to_string()))?;
        let row = record
            .iter()
            .enumerate()
            .map(|(c, field)| {
                field.parse::<f64>().map_err(|_| {
                    Error::parse(
                        format!("{source}:{line}, column {}", c + 1),
                        format!("`{field}` is not a number"),
                    )
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.len() != labels.len() {
        return Err(Error::parse(
            source,
            format!("{} labels but {} data rows", labels.len(), rows.len()),
        ));
    }
    Ok((labels, rows))
}

/// Parses and validates a dense CSV network. Validation errors are wrapped
/// with the file position of the offending entry.
pub fn read_network_csv(text: &str, source: &str) -> Result<Network> {
    let (labels, rows) = read_matrix_csv(text, source)?;
    Network::new(labels, &rows).map_err(|e| locate(e, source))
}

fn locate(e: Error, source: &str) -> Error {
    let at = |row: usize, col: usize| format!("{source}:{}, column {}", row + 2, col + 1);
    match e {
        Error::NonFinite { row, col }
        | Error::NonZeroDiagonal { row, col, .. }
        | Error::NonPositiveOffDiagonal { row, col, .. } => {
            let loc = at(row, col);
            e.located(loc)
        }
        other => other.located(source),
    }
}

/// Writes a header row of labels and the matrix rows.
pub fn write_matrix_csv(labels: &[String], matrix: &CostMatrix) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(labels).expect("in-memory write");
    for row in matrix.rows() {
        writer
            .write_record(row.iter().map(|&v| format_number(v)))
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_two_node_network() {
        let n = read_network_csv("p,q\n0,2\n3,0\n", "t.csv").unwrap();
        assert_eq!(n, Network::two_node(2.0, 3.0).unwrap());
    }

    #[test]
    fn infinite_entry_is_located() {
        let err = read_network_csv("p,q\n0,inf\n3,0\n", "t.csv").unwrap_err();
        assert_eq!(err.root(), &Error::NonFinite { row: 0, col: 1 });
        assert!(err.to_string().contains("t.csv:2, column 2"), "{err}");
    }

    #[test]
    fn parse_errors() {
        let err = read_network_csv("p,q\n0,x\n3,0\n", "t.csv").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = read_network_csv("p,q\n0,1\n", "t.csv").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = read_network_csv("p,q\n0,1,4\n3,0\n", "t.csv").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn writes_shortest_numbers() {
        let m = CostMatrix::from_rows(&[[0.0, 4.0 / 3.0], [0.1, 0.0]]).unwrap();
        let s = write_matrix_csv(&["p".into(), "q".into()], &m);
        assert_eq!(s, "p,q\n0,1.3333333333333333\n0.1,0\n");
        let (labels, rows) = read_matrix_csv(&s, "x").unwrap();
        assert_eq!(labels, ["p", "q"]);
        assert_eq!(CostMatrix::from_rows(&rows).unwrap(), m);
    }
}
