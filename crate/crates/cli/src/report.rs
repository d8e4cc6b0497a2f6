//! Report model and its text, JSON and CSV renderings.

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub config: Vec<(String, String)>,
    pub items: Vec<(String, Value)>,
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: Vec<(String, String)>) -> Self {
        Report { command: command.into(), config, ..Default::default() }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) {
        self.items.push((key.into(), value.into()));
    }

    pub fn fail(&mut self, reason: impl Into<String>) {
        self.failures.push(reason.into());
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => self.json(),
            Format::Csv => self.csv(),
        }
    }

    fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    fn text(&self) -> String {
        let mut out = format!("# linecert {}\n", self.command);
        for (k, v) in &self.config {
            out.push_str(&format!("# config {k}: {v}\n"));
        }
        for (k, v) in &self.items {
            out.push_str(&format!("{k}: {}\n", render_value(v)));
        }
        for f in &self.failures {
            out.push_str(&format!("failure: {f}\n"));
        }
        out.push_str(&format!("status: {}\n", self.status()));
        out
    }

    fn json(&self) -> String {
        let config: Map<String, Value> = self.config.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let results: Map<String, Value> = self.items.iter().cloned().collect();
        let doc = json!({
            "command": self.command,
            "config": config,
            "results": results,
            "failures": self.failures,
            "status": self.status(),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "key", "value"]).expect("in-memory csv");
        w.write_record(["command", "command", &self.command]).expect("in-memory csv");
        for (k, v) in &self.config {
            w.write_record(["config", k, v]).expect("in-memory csv");
        }
        for (k, v) in &self.items {
            w.write_record(["result", k, &render_value(v)]).expect("in-memory csv");
        }
        for (i, f) in self.failures.iter().enumerate() {
            w.write_record(["failure", &i.to_string(), f]).expect("in-memory csv");
        }
        w.write_record(["status", "status", self.status()]).expect("in-memory csv");
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
    }
}

pub fn render_value(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::Bool(b) => if *b { "yes" } else { "no" }.into(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(|x| match x {
                Value::Array(_) => format!("[{}]", render_value(x)),
                _ => render_value(x),
            })
            .collect::<Vec<_>>()
            .join(", "),
        Value::Object(_) => v.to_string(),
    }
}

/// Integers print bare; everything else with six decimals. Negative zero is
/// folded into zero so reports stay byte-stable.
pub fn fmt_num(x: f64) -> String {
    let r = x.round();
    if (x - r).abs() <= 1e-9 {
        format!("{}", r + 0.0)
    } else {
        format!("{:.6}", x)
    }
}

pub fn fmt_sci(x: f64) -> String {
    format!("{x:.3e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings_carry_config_and_status() {
        let mut r = Report::new("bounds", vec![("dim".into(), "3".into())]);
        r.push("2-design", true);
        r.push("angles", vec!["1/3", "0"]);
        let text = r.render(Format::Text);
        assert!(text.starts_with("# linecert bounds\n# config dim: 3\n"));
        assert!(text.contains("2-design: yes\n") && text.contains("angles: 1/3, 0\n"));
        assert!(text.ends_with("status: pass\n"));
        r.fail("something");
        let json: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(json["status"], "fail");
        assert_eq!(json["config"]["dim"], "3");
        let csv = r.render(Format::Csv);
        assert!(csv.contains("failure,0,something"));
    }

    #[test]
    fn numbers_are_stable() {
        assert_eq!(fmt_num(-0.0000000001), "0");
        assert_eq!(fmt_num(9.0), "9");
        assert_eq!(fmt_num(-3.0), "-3");
        assert_eq!(fmt_num(0.5), "0.500000");
    }
}
