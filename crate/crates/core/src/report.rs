use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Flag {
    pub name: String,
    pub value: bool,
}

/// Named numbers, boolean properties and pass/fail verdicts from one
/// verification routine. Entries keep insertion order.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub metrics: Vec<Metric>,
    pub flags: Vec<Flag>,
    pub verdicts: Vec<Flag>,
    pub skipped: Vec<String>,
    pub witness: Option<String>,
}

impl VerificationReport {
    pub fn new(name: &str) -> Self {
        VerificationReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn metric(&mut self, name: &str, value: f64) -> &mut Self {
        self.metrics.push(Metric {
            name: name.to_string(),
            value,
        });
        self
    }

    pub fn flag(&mut self, name: &str, value: bool) -> &mut Self {
        self.flags.push(Flag {
            name: name.to_string(),
            value,
        });
        self
    }

    pub fn verdict(&mut self, name: &str, pass: bool) -> &mut Self {
        self.verdicts.push(Flag {
            name: name.to_string(),
            value: pass,
        });
        self
    }

    pub fn skip(&mut self, name: &str) -> &mut Self {
        self.skipped.push(name.to_string());
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.metrics.iter().find(|m| m.name == name).map(|m| m.value)
    }

    pub fn get_flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|m| m.name == name).map(|m| m.value)
    }

    pub fn get_verdict(&self, name: &str) -> Option<bool> {
        self.verdicts.iter().find(|m| m.name == name).map(|m| m.value)
    }

    /// True when every recorded verdict passed.
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.value)
    }
}
