use serde_json::{json, Map, Value};
use waveset_core::construct::DefectReport;
use waveset_core::format::{interval_value, rational_value};
use waveset_core::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
            Status::Inconclusive => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub witnesses: Vec<Value>,
    pub defects: Option<Value>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, status: Status) -> Self {
        Report {
            command: command.to_string(),
            status,
            witnesses: Vec::new(),
            defects: None,
            data: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.data.insert(key.to_string(), value);
        self
    }

    pub fn witness(mut self, w: Value) -> Self {
        self.witnesses.push(w);
        self
    }

    pub fn defects(mut self, d: &DefectReport) -> Self {
        self.defects = Some(defects_value(d));
        self
    }

    pub fn error(command: &str, err: &Error) -> Self {
        let mut report = Report::new(command, Status::Error).with("message", json!(err.to_string()));
        match err {
            Error::Precondition { condition, witness } | Error::InvalidSpectrum { condition, witness } => {
                report = report
                    .with("condition", json!(condition.code()))
                    .witness(interval_value(witness));
            }
            Error::InconsistentSpectrum { witness } => report = report.witness(interval_value(witness)),
            _ => {}
        }
        report
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        obj.insert("status".into(), json!(self.status.name()));
        obj.insert("witnesses".into(), Value::Array(self.witnesses.clone()));
        if let Some(d) = &self.defects {
            obj.insert("defects".into(), d.clone());
        }
        obj.insert("data".into(), Value::Object(self.data.clone()));
        Value::Object(obj)
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("reports serialize")
    }
}

pub fn defects_value(d: &DefectReport) -> Value {
    json!({
        "s1_defect": rational_value(&d.s1_defect),
        "excess_bound": rational_value(&d.excess_bound),
        "deficit_bound": rational_value(&d.deficit_bound),
        "coverage_defect": rational_value(&d.coverage_defect),
        "wavelet_set_bound": rational_value(&d.wavelet_set_bound()),
        "containment_exact": d.containment_exact,
        "depth_n": d.depth_n,
        "depth_j": d.depth_j,
        "fast_path": d.fast_path,
        "stabilized_at": d.stabilized_at,
    })
}
