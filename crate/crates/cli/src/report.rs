use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub algebra: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, algebra: &str) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.into(),
            algebra: algebra.into(),
            pass: true,
            checks: vec![],
        }
    }

    pub fn push(&mut self, id: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn from_result<T, E: std::fmt::Display>(
        &mut self,
        id: &str,
        r: Result<T, E>,
        ok: impl FnOnce(T) -> String,
    ) {
        match r {
            Ok(v) => self.push(id, true, ok(v)),
            Err(e) => self.push(id, false, e.to_string()),
        }
    }

    /// Sorts checks by id and settles the overall verdict.
    pub fn finish(mut self) -> Self {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self.pass = self.checks.iter().all(|c| c.pass);
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("report serializes");
        }
        let mut out = format!("{} [{}]\n", self.command, self.algebra);
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("  {tag} {}: {}\n", c.id, c.detail));
        }
        out.push_str(if self.pass { "result: PASS\n" } else { "result: FAIL\n" });
        out
    }
}
