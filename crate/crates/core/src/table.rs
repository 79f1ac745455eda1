//! Complexity tables `n -> b_{w,k}(n)` and their CSV/JSON forms.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binomial::window_classes_in;
use crate::error::{Error, Result};
use crate::host::{HostStrategy, WordSource};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Oracle,
    ClosedForm,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Oracle => "oracle",
            Provenance::ClosedForm => "closed_form",
        }
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Provenance::Oracle),
            "closed_form" => Ok(Provenance::ClosedForm),
            other => Err(Error::Parse(format!("unknown provenance {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    pub value: u64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMeta {
    pub m: usize,
    pub k: usize,
    pub generator: String,
    pub oracle_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComplexityTable {
    pub k: usize,
    rows: BTreeMap<usize, (u64, Provenance)>,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    meta: TableMeta,
    rows: Vec<Row>,
}

impl ComplexityTable {
    pub fn new(k: usize) -> Self {
        ComplexityTable {
            k,
            rows: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, n: usize, value: u64, provenance: Provenance) {
        self.rows.insert(n, (value, provenance));
    }

    pub fn get(&self, n: usize) -> Option<u64> {
        self.rows.get(&n).map(|&(v, _)| v)
    }

    pub fn provenance(&self, n: usize) -> Option<Provenance> {
        self.rows.get(&n).map(|&(_, p)| p)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows in ascending `n`.
    pub fn rows(&self) -> impl Iterator<Item = Row> + '_ {
        self.rows.iter().map(|(&n, &(value, provenance))| Row {
            n,
            value,
            provenance,
        })
    }

    pub fn slice(&self, range: RangeInclusive<usize>) -> ComplexityTable {
        ComplexityTable {
            k: self.k,
            rows: self.rows.range(range).map(|(&n, &r)| (n, r)).collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(["n", "value", "provenance"])
            .expect("in-memory write");
        for row in self.rows() {
            wtr.write_record([
                row.n.to_string(),
                row.value.to_string(),
                row.provenance.as_str().to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn from_csv(text: &str, k: usize) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let headers = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?;
        if headers != vec!["n", "value", "provenance"] {
            return Err(Error::Parse(format!("unexpected header {headers:?}")));
        }
        let mut table = ComplexityTable::new(k);
        for record in rdr.records() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            let field = |i: usize| record.get(i).unwrap_or_default();
            let n = field(0)
                .parse()
                .map_err(|_| Error::Parse(format!("bad n {:?}", field(0))))?;
            let value = field(1)
                .parse()
                .map_err(|_| Error::Parse(format!("bad value {:?}", field(1))))?;
            table.insert(n, value, field(2).parse()?);
        }
        Ok(table)
    }

    pub fn to_json(&self, meta: &TableMeta) -> String {
        let doc = JsonTable {
            meta: meta.clone(),
            rows: self.rows().collect(),
        };
        serde_json::to_string_pretty(&doc).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<(Self, TableMeta)> {
        let doc: JsonTable = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut table = ComplexityTable::new(doc.meta.k);
        for row in doc.rows {
            table.insert(row.n, row.value, row.provenance);
        }
        Ok((table, doc.meta))
    }

    pub fn to_plain(&self) -> String {
        self.rows()
            .map(|r| format!("{} {} {}\n", r.n, r.value, r.provenance.as_str()))
            .collect()
    }
}

/// `b_{w,k}(n)` for every `n` in the range, computed by window enumeration
/// over the source's hosts.
///
/// Rows are computed in parallel; the first failing `n` (in ascending
/// order) is reported.
pub fn complexity_profile(
    source: &WordSource,
    k: usize,
    m: usize,
    n_range: RangeInclusive<usize>,
    strategy: &HostStrategy,
) -> Result<ComplexityTable> {
    if let WordSource::FixedPoint { morphism, .. } = source {
        if morphism.alphabet_size() != m {
            return Err(Error::Precondition(format!(
                "source alphabet has {} letters, expected {m}",
                morphism.alphabet_size()
            )));
        }
    }
    let ns: Vec<usize> = n_range.collect();
    let values = ns
        .par_iter()
        .map(|&n| {
            source
                .evaluate(n, strategy, |hosts| window_classes_in(hosts, n, k, m))
                .map(|v| (n, v as u64))
        })
        .collect::<Vec<_>>();
    let mut table = ComplexityTable::new(k);
    for value in values {
        let (n, v) = value?;
        table.insert(n, v, Provenance::Oracle);
    }
    Ok(table)
}
