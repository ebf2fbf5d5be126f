//! Verification reports shared by the CLI and the Python bindings.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// An open-question outcome that needs a human look but is not a failure.
    Attention,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Fail dominates attention, which dominates pass.
    pub fn combine(self, other: Status) -> Status {
        self.max(other)
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::Attention => 0,
            Status::Fail => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Attention => "attention",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportItem {
    pub name: String,
    pub status: Status,
    pub details: Value,
}

impl ReportItem {
    pub fn new(name: impl Into<String>, status: Status, details: impl Serialize) -> Self {
        Self {
            name: name.into(),
            status,
            details: serde_json::to_value(details).expect("report details serialize"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub status: Status,
    pub items: Vec<ReportItem>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Wall-clock milliseconds; only present when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, items: Vec<ReportItem>) -> Self {
        let mut r = Self {
            suite: suite.into(),
            status: Status::Pass,
            items,
            children: Vec::new(),
            seed: None,
            timing_ms: None,
        };
        r.recompute_status();
        r
    }

    pub fn with_children(suite: impl Into<String>, children: Vec<VerificationReport>) -> Self {
        let mut r = Self::new(suite, Vec::new());
        r.children = children;
        r.recompute_status();
        r
    }

    pub fn recompute_status(&mut self) {
        self.status = self
            .items
            .iter()
            .map(|i| i.status)
            .chain(self.children.iter().map(|c| c.status))
            .fold(Status::Pass, Status::combine);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per item, indented by nesting depth.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        self.write_summary(0, &mut out);
        out
    }

    fn write_summary(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let timing = self.timing_ms.map(|t| format!(" ({t} ms)")).unwrap_or_default();
        out.push_str(&format!("{pad}[{}] {}{timing}\n", self.status.as_str(), self.suite));
        for item in &self.items {
            out.push_str(&format!("{pad}  [{}] {}\n", item.status.as_str(), item.name));
        }
        for c in &self.children {
            c.write_summary(depth + 1, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_rules() {
        let items = vec![
            ReportItem::new("a", Status::Pass, 1),
            ReportItem::new("b", Status::Attention, 2),
        ];
        let r = VerificationReport::new("x", items.clone());
        assert_eq!(r.status, Status::Attention);
        assert_eq!(r.status.exit_code(), 0);
        let mut all = items;
        all.push(ReportItem::new("c", Status::Fail, 3));
        let r = VerificationReport::new("y", all);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.status.exit_code(), 1);
        let top = VerificationReport::with_children("all", vec![r]);
        assert_eq!(top.status, Status::Fail);
        assert!(!top.to_json().contains("timing_ms"));
    }
}
