//! Matrix JSON (`{"rows", "cols", "entries": [["p/q", ...], ...]}`) and CSV.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::matrix::RationalMatrix;
use crate::rational::{parse_rational, Rational};
use crate::LinalgError;

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows(),
            cols: self.cols(),
            entries: (0..self.rows())
                .map(|i| self.row(i).iter().map(ToString::to_string).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        if j.entries.len() != j.rows {
            return Err(serde::de::Error::custom(format!(
                "{} rows listed, header says {}",
                j.entries.len(),
                j.rows
            )));
        }
        let rows = j
            .entries
            .iter()
            .map(|r| strings_to_rationals(r))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        RationalMatrix::from_rows(j.cols, rows).map_err(serde::de::Error::custom)
    }
}

pub fn strings_to_rationals(v: &[String]) -> Result<Vec<Rational>, LinalgError> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn rationals_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

impl RationalMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrix serialises")
    }

    pub fn from_json(s: &str) -> Result<Self, LinalgError> {
        serde_json::from_str(s).map_err(|e| LinalgError::Parse(e.to_string()))
    }

    /// One CSV record per row, entries as exact strings, no header.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(Vec::new());
        for i in 0..self.rows() {
            w.write_record(self.row(i).iter().map(ToString::to_string))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
    }

    pub fn from_csv(s: &str) -> Result<Self, LinalgError> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_reader(s.as_bytes());
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| LinalgError::Parse(e.to_string()))?;
            rows.push(
                rec.iter()
                    .map(parse_rational)
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        let cols = rows.first().map_or(0, Vec::len);
        RationalMatrix::from_rows(cols, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn sample() -> RationalMatrix {
        RationalMatrix::from_rows(
            3,
            vec![
                vec![frac(21, 20), int(0), int(-1)],
                vec![frac(-141, 20), int(7), frac(1, 3)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let m = sample();
        let s = m.to_json();
        assert!(s.contains("\"21/20\""));
        assert_eq!(RationalMatrix::from_json(&s).unwrap(), m);
    }

    #[test]
    fn csv_round_trip() {
        let m = sample();
        let s = m.to_csv();
        assert_eq!(s.lines().next(), Some("21/20,0,-1"));
        assert_eq!(RationalMatrix::from_csv(&s).unwrap(), m);
    }

    #[test]
    fn json_rejects_bad_entries() {
        assert!(RationalMatrix::from_json(r#"{"rows":1,"cols":1,"entries":[["1/0"]]}"#).is_err());
        assert!(RationalMatrix::from_json(r#"{"rows":2,"cols":1,"entries":[["1"]]}"#).is_err());
    }
}
