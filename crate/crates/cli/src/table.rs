//! Timeline tables: one entity per CSV row, `id` first, then one value per
//! period with the most recent period in the first value column.

use std::collections::HashSet;

use majorize::Array;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TableError {
    #[error("row {row}: {message}")]
    Row { row: u64, message: String },
    #[error("table has no data rows")]
    Empty,
    #[error("csv: {0}")]
    Csv(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entity {
    pub id: String,
    pub values: Array,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimelineTable {
    pub entities: Vec<Entity>,
    /// Period names from the header row, most recent first.
    pub period_labels: Option<Vec<String>>,
}

impl TimelineTable {
    /// Parses CSV text. The first row is a header when its first cell is `id`
    /// or its first value cell is not a number.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());

        let mut period_labels = None;
        let mut entities: Vec<Entity> = Vec::new();
        let mut seen = HashSet::new();
        let mut width = None;

        for (idx, record) in reader.records().enumerate() {
            let record = record.map_err(|e| TableError::Csv(e.to_string()))?;
            let row = record.position().map_or(idx as u64 + 1, |p| p.line());
            let fail = |message: String| TableError::Row { row, message };

            if record.iter().all(str::is_empty) {
                continue;
            }
            if record.len() < 2 {
                return Err(fail("expected an id followed by at least one value".into()));
            }
            let cells: Vec<&str> = record.iter().collect();
            if idx == 0
                && (cells[0].eq_ignore_ascii_case("id") || cells[1].parse::<f64>().is_err())
            {
                period_labels = Some(cells[1..].iter().map(|s| s.to_string()).collect());
                width = Some(cells.len() - 1);
                continue;
            }

            let expected = *width.get_or_insert(cells.len() - 1);
            if cells.len() - 1 != expected {
                return Err(fail(format!(
                    "expected {expected} values, found {}",
                    cells.len() - 1
                )));
            }
            let id = cells[0].to_string();
            if id.is_empty() {
                return Err(fail("empty id".into()));
            }
            if !seen.insert(id.clone()) {
                return Err(fail(format!("duplicate id {id:?}")));
            }
            let values = cells[1..]
                .iter()
                .enumerate()
                .map(|(col, cell)| {
                    cell.parse::<f64>().map_err(|_| {
                        fail(format!("column {}: {cell:?} is not a number", col + 2))
                    })
                })
                .collect::<Result<Vec<f64>, _>>()?;
            let values = Array::new(values).map_err(|e| match e {
                majorize::Error::NegativeComponent { index, value } => {
                    fail(format!("column {}: negative value {value}", index + 1))
                }
                other => fail(other.to_string()),
            })?;
            entities.push(Entity { id, values });
        }

        if entities.is_empty() {
            return Err(TableError::Empty);
        }
        Ok(TimelineTable {
            entities,
            period_labels,
        })
    }

    pub fn get(&self, id: &str) -> Option<&Entity> {
        self.entities.iter().find(|e| e.id == id)
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        if let Some(labels) = &self.period_labels {
            let mut header = vec!["id".to_string()];
            header.extend(labels.iter().cloned());
            writer.write_record(&header).expect("in-memory write");
        }
        for entity in &self.entities {
            let mut record = vec![entity.id.clone()];
            // f64 Display is shortest round-trip, so parsing gives back the same bits.
            record.extend(entity.values.values().iter().map(|v| v.to_string()));
            writer.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }
}
