//! Plot-ready CSV for disclosure curves.

use std::io::{Read, Write};

use bkguard_core::curves::CurvePoint;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Digits after the point in the `decimal` column.
pub const DECIMAL_DIGITS: usize = 6;

/// Writes `series,x,num,den,decimal`, rows ordered by series and then `x`.
pub fn emit_csv<W: Write>(points: &[CurvePoint], output: W) -> Result<()> {
    let mut sorted: Vec<&CurvePoint> = points.iter().collect();
    sorted.sort_by(|a, b| a.emission_order(b));
    let mut writer = csv::Writer::from_writer(output);
    writer.write_record(["series", "x", "num", "den", "decimal"])?;
    for p in sorted {
        writer.write_record([
            p.series.clone(),
            p.x.to_string(),
            p.disclosure.numer().to_string(),
            p.disclosure.denom().to_string(),
            p.disclosure.to_decimal(DECIMAL_DIGITS),
        ])?;
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// One parsed row of an emitted curve file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub series: String,
    pub x: String,
    pub value: BigRational,
    pub decimal: String,
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<Row>> {
    let mut reader = csv::Reader::from_reader(input);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header != ["series", "x", "num", "den", "decimal"] {
        return Err(Error::Invalid(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let int = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| Error::syntax(i + 2, 1, format!("`{s}` is not an integer")))
        };
        let (num, den) = (int(&record[2])?, int(&record[3])?);
        if den == BigInt::from(0) {
            return Err(Error::syntax(i + 2, 1, "zero denominator"));
        }
        rows.push(Row {
            series: record[0].to_string(),
            x: record[1].to_string(),
            value: BigRational::new(num, den),
            decimal: record[4].to_string(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use bkguard_core::curves::{disclosure_vs_k, entropy_vs_disclosure, EntropyFamily, FamilyShape};
    use bkguard_core::{Bucketization, SensitiveDomain};

    fn points() -> Vec<CurvePoint> {
        let d = SensitiveDomain::new(["a", "b", "c"]);
        let b = Bucketization::from_counts(d, &[vec![2, 2, 1], vec![1, 1, 3]]).unwrap();
        disclosure_vs_k(&b, 3)
    }

    #[test]
    fn header_and_order() {
        let mut buf = Vec::new();
        emit_csv(&points(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("series,x,num,den,decimal"));
        assert_eq!(lines.next(), Some("implications,0,3,5,0.600000"));
        assert_eq!(text.lines().filter(|l| l.starts_with("negations")).count(), 4);
    }

    #[test]
    fn round_trip_is_exact() {
        let pts = points();
        let mut buf = Vec::new();
        emit_csv(&pts, &mut buf).unwrap();
        let rows = read_csv(buf.as_slice()).unwrap();
        let mut sorted = pts.clone();
        sorted.sort_by(|a, b| a.emission_order(b));
        for (row, p) in rows.iter().zip(&sorted) {
            assert_eq!(row.series, p.series);
            assert_eq!(&row.value, p.disclosure.as_ratio());
        }
        let mut again = Vec::new();
        emit_csv(&pts, &mut again).unwrap();
        assert_eq!(again, buf);
    }

    #[test]
    fn entropy_rows_sorted_numerically() {
        let f = EntropyFamily::new(3, 12, FamilyShape::Skewed).unwrap();
        let mut buf = Vec::new();
        emit_csv(&entropy_vs_disclosure(&f, &[0, 1]).unwrap(), &mut buf).unwrap();
        let rows = read_csv(buf.as_slice()).unwrap();
        let xs: Vec<f64> = rows.iter().filter(|r| r.series == "k=1").map(|r| r.x.parse().unwrap()).collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_foreign_files() {
        assert!(read_csv("a,b\n1,2\n".as_bytes()).is_err());
        assert!(read_csv("series,x,num,den,decimal\ns,0,1,0,0\n".as_bytes()).is_err());
    }
}
