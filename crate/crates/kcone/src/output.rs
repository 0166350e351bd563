//! Table and JSON rendering. Both formats are produced from the same record
//! list, in the same order.

use serde::Serialize;

pub trait Record: Serialize {
    const COLUMNS: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

fn coords(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(", "))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CatalogRecord {
    pub name: String,
    pub description: String,
    pub split_mod_center: bool,
    pub tori: bool,
    pub oracle_model: bool,
}

impl Record for CatalogRecord {
    const COLUMNS: &'static [&'static str] = &["name", "split", "tori", "oracle", "description"];
    fn cells(&self) -> Vec<String> {
        let yn = |b: bool| if b { "yes" } else { "no" }.to_string();
        vec![
            self.name.clone(),
            yn(self.split_mod_center),
            yn(self.tori),
            yn(self.oracle_model),
            self.description.clone(),
        ]
    }
}

/// One irreducible of `G` (label in fundamental-weight coordinates).
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IrrepRecord {
    pub degree: u32,
    pub label: Vec<i64>,
    pub multiplicity: i64,
}

impl Record for IrrepRecord {
    const COLUMNS: &'static [&'static str] = &["degree", "label", "multiplicity"];
    fn cells(&self) -> Vec<String> {
        vec![self.degree.to_string(), coords(&self.label), self.multiplicity.to_string()]
    }
}

/// One weight of the maximal torus of `K`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WeightRecord {
    pub degree: u32,
    pub weight: Vec<i64>,
    pub multiplicity: i64,
}

impl Record for WeightRecord {
    const COLUMNS: &'static [&'static str] = &["degree", "weight", "multiplicity"];
    fn cells(&self) -> Vec<String> {
        vec![self.degree.to_string(), coords(&self.weight), self.multiplicity.to_string()]
    }
}

/// One irreducible of `K`, by highest weight.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KTypeRecord {
    pub degree: u32,
    pub k_type: Vec<i64>,
    pub multiplicity: i64,
}

impl Record for KTypeRecord {
    const COLUMNS: &'static [&'static str] = &["degree", "k_type", "multiplicity"];
    fn cells(&self) -> Vec<String> {
        vec![self.degree.to_string(), coords(&self.k_type), self.multiplicity.to_string()]
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BranchingRecord {
    pub coefficient: i64,
    pub torus: String,
    pub gamma: String,
    pub positive_system: String,
    pub q_power: u32,
}

impl Record for BranchingRecord {
    const COLUMNS: &'static [&'static str] = &["coefficient", "torus", "gamma", "positive_system", "q_power"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.coefficient.to_string(),
            self.torus.clone(),
            self.gamma.clone(),
            self.positive_system.clone(),
            self.q_power.to_string(),
        ]
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckRecord {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

impl Record for CheckRecord {
    const COLUMNS: &'static [&'static str] = &["check", "status", "detail"];
    fn cells(&self) -> Vec<String> {
        vec![self.check.clone(), self.status.as_str().to_string(), self.detail.clone()]
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OracleRecord {
    pub degree: u32,
    pub oracle_dim: i64,
    pub formula_dim: i64,
    pub characters_agree: bool,
}

impl Record for OracleRecord {
    const COLUMNS: &'static [&'static str] = &["degree", "oracle_dim", "formula_dim", "characters_agree"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.degree.to_string(),
            self.oracle_dim.to_string(),
            self.formula_dim.to_string(),
            self.characters_agree.to_string(),
        ]
    }
}

#[derive(Serialize)]
struct Envelope<'a, R: Record> {
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<u32>,
    notes: &'a [String],
    records: &'a [R],
}

pub struct Report<R: Record> {
    pub command: &'static str,
    pub group: Option<String>,
    pub degree: Option<u32>,
    pub notes: Vec<String>,
    pub records: Vec<R>,
}

impl<R: Record> Report<R> {
    pub fn new(command: &'static str, group: Option<String>, degree: Option<u32>) -> Self {
        Self { command, group, degree, notes: Vec::new(), records: Vec::new() }
    }

    pub fn to_json(&self) -> String {
        let env = Envelope {
            command: self.command,
            group: self.group.as_deref(),
            degree: self.degree,
            notes: &self.notes,
            records: &self.records,
        };
        let mut s = serde_json::to_string_pretty(&env).expect("records serialize");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let mut header = format!("# {}", self.command);
        if let Some(g) = &self.group {
            header.push_str(&format!(" --group {g}"));
        }
        if let Some(d) = self.degree {
            header.push_str(&format!(" --degree {d}"));
        }
        out.push_str(&header);
        out.push('\n');
        for n in &self.notes {
            out.push_str(&format!("# {n}\n"));
        }
        let rows: Vec<Vec<String>> = self.records.iter().map(Record::cells).collect();
        let mut widths: Vec<usize> = R::COLUMNS.iter().map(|c| c.len()).collect();
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    s.push_str(c);
                    s.push_str(&" ".repeat(w - c.chars().count() + 2));
                }
            }
            s.push('\n');
            s
        };
        let cols: Vec<String> = R::COLUMNS.iter().map(|c| c.to_string()).collect();
        out.push_str(&line(&cols));
        for r in &rows {
            out.push_str(&line(r));
        }
        out
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.to_json()
        } else {
            self.to_table()
        }
    }
}
