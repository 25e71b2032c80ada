//! Reports are TOML documents. Tables are sorted by key, scalars are written
//! in canonical form, and nothing time-dependent is included, so equal inputs
//! give byte-identical files.

use mqv_core::matrix::Matrix;
use mqv_core::scalar::Canonical;
use serde::Serialize;
use toml::{Table, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Error,
    ResourceBound,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail | Status::Error => 1,
            Status::ResourceBound => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub values: Table,
}

impl Section {
    pub fn new(name: &str) -> Self {
        Section {
            name: name.into(),
            pass: true,
            error: None,
            message: None,
            values: Table::new(),
        }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.values.insert(key.into(), v.into());
        self
    }

    pub fn check(&mut self, key: &str, ok: bool) -> &mut Self {
        self.pass &= ok;
        self.set(key, ok)
    }

    pub fn status(&self) -> Status {
        match self.error.as_deref() {
            Some("TooLarge") | Some("RetryExhausted") => Status::ResourceBound,
            Some(_) => Status::Error,
            None if self.pass => Status::Pass,
            None => Status::Fail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub path: String,
    pub digest: String,
    pub field: String,
    pub seed: u64,
    pub status: Status,
    pub sections: Vec<Section>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub instances: Vec<InstanceReport>,
}

impl Report {
    pub fn new(command: &str, instances: Vec<InstanceReport>) -> Self {
        let status = instances
            .iter()
            .map(|i| i.status)
            .max()
            .unwrap_or(Status::Pass);
        Report {
            command: command.into(),
            status,
            instances,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn render(&self) -> String {
        toml::to_string(self).expect("reports serialize")
    }
}

pub fn scalar<F: Canonical>(x: &F) -> Value {
    Value::String(x.canonical())
}

pub fn matrix<F: Canonical>(m: &Matrix<F>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| scalar(m.get(i, j))).collect()))
            .collect(),
    )
}

pub fn ints(v: &[usize]) -> Value {
    Value::Array(v.iter().map(|&x| Value::Integer(x as i64)).collect())
}
