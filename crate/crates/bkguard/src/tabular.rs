//! CSV tables, TSV partition files and domain files.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use bkguard_core::{Record, Table};

use crate::error::{Error, Result};

/// Which CSV columns play which role. Every other column is a
/// non-sensitive attribute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    pub sensitive: String,
    /// Person id column; row indices (from 0) when absent.
    pub id: Option<String>,
}

pub fn read_table<R: Read>(input: R, schema: &Schema, declared_domain: &[String]) -> Result<Table> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header.iter().all(String::is_empty) {
        return Err(bkguard_core::Error::EmptyTable.into());
    }
    let column = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Invalid(format!("missing column `{name}`")))
    };
    let sensitive = column(&schema.sensitive)?;
    let id = schema.id.as_deref().map(column).transpose()?;
    let attribute_columns: Vec<usize> = (0..header.len()).filter(|&c| c != sensitive && Some(c) != id).collect();
    let attribute_names = attribute_columns.iter().map(|&c| header[c].clone()).collect();

    let mut records = Vec::new();
    for (row, line) in reader.records().enumerate() {
        let line = line?;
        records.push(Record {
            id: match id {
                Some(c) => line[c].to_string(),
                None => row.to_string(),
            },
            attributes: attribute_columns.iter().map(|&c| line[c].to_string()).collect(),
            sensitive: line[sensitive].to_string(),
        });
    }
    Ok(Table::new(attribute_names, schema.sensitive.clone(), records, declared_domain)?)
}

pub fn load_table(path: &Path, schema: &Schema, declared_domain: &[String]) -> Result<Table> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_table(file, schema, declared_domain)
}

/// Writes `id_column`, the attributes, then the sensitive column.
pub fn write_table<W: Write>(table: &Table, output: W, id_column: &str) -> Result<()> {
    let mut writer = csv::Writer::from_writer(output);
    let mut header = vec![id_column];
    header.extend(table.attribute_names().iter().map(String::as_str));
    header.push(table.sensitive_name());
    writer.write_record(&header)?;
    for p in 0..table.len() {
        let mut row = vec![table.person_id(p)];
        row.extend(table.attributes_of(p).iter().map(String::as_str));
        row.push(table.domain().name(table.sensitive_of(p)));
        writer.write_record(&row)?;
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// `person<TAB>bucket` lines; blank lines and lines starting with `#` are
/// skipped.
pub fn read_partition<R: Read>(input: R) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(input).lines().enumerate() {
        let line = line.map_err(csv::Error::from)?;
        let trimmed = line.trim_end_matches(['\r', '\n']);
        if trimmed.trim().is_empty() || trimmed.trim_start().starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split('\t');
        match (fields.next(), fields.next(), fields.next()) {
            (Some(person), Some(bucket), None) if !person.trim().is_empty() && !bucket.trim().is_empty() => {
                out.push((person.trim().to_string(), bucket.trim().to_string()))
            }
            _ => return Err(Error::syntax(i + 1, 1, "expected `person<TAB>bucket`")),
        }
    }
    Ok(out)
}

pub fn load_partition(path: &Path) -> Result<Vec<(String, String)>> {
    read_partition(File::open(path).map_err(|e| Error::io(path, e))?)
}

/// One sensitive value per non-blank line.
pub fn read_domain<R: Read>(input: R) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for line in BufReader::new(input).lines() {
        let line = line.map_err(csv::Error::from)?;
        let value = line.trim();
        if !value.is_empty() {
            out.push(value.to_string());
        }
    }
    Ok(out)
}

pub fn load_domain(path: &Path) -> Result<Vec<String>> {
    read_domain(File::open(path).map_err(|e| Error::io(path, e))?)
}
