//! Deterministic machine-readable reports.
//!
//! Reports serialize to JSON (stable field order, floats as strings with
//! 17 significant digits) or to a flat CSV with one header row per table.
//! Identical inputs and crate version produce byte-identical output.

use serde::Serialize;

/// Formats a float with 17 significant digits (round-trips f64 exactly).
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: String,
    pub scalars: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
}

impl Section {
    pub fn new(name: &str) -> Self {
        Section {
            name: name.into(),
            scalars: Vec::new(),
            table: None,
        }
    }

    pub fn scalar(mut self, key: &str, value: String) -> Self {
        self.scalars.push((key.into(), value));
        self
    }

    pub fn float(self, key: &str, value: f64) -> Self {
        self.scalar(key, fmt_float(value))
    }

    pub fn table(mut self, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table {
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows,
        });
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub version: String,
    pub seed: Option<u64>,
    pub tolerances: Vec<(String, String)>,
    pub sections: Vec<Section>,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, input_digest: String) -> Self {
        Report {
            command: command.into(),
            input_digest,
            version: env!("CARGO_PKG_VERSION").into(),
            seed: None,
            tolerances: Vec::new(),
            sections: Vec::new(),
            verdicts: Vec::new(),
            pass: true,
        }
    }

    pub fn tolerance(&mut self, name: &str, value: f64) {
        self.tolerances.push((name.into(), fmt_float(value)));
    }

    pub fn section(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn verdict(&mut self, name: &str, pass: bool, detail: String) {
        if !pass {
            self.pass = false;
        }
        self.verdicts.push(Verdict {
            name: name.into(),
            pass,
            detail,
        });
    }

    pub fn to_json(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("serializable report");
        bytes.push(b'\n');
        bytes
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut out = String::new();
        let esc = |s: &str| {
            if s.contains(',') || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        out.push_str("section,key,value\n");
        out.push_str(&format!("meta,command,{}\n", esc(&self.command)));
        out.push_str(&format!("meta,input_digest,{}\n", esc(&self.input_digest)));
        out.push_str(&format!("meta,version,{}\n", esc(&self.version)));
        if let Some(seed) = self.seed {
            out.push_str(&format!("meta,seed,{seed}\n"));
        }
        for (k, v) in &self.tolerances {
            out.push_str(&format!("tolerance,{},{}\n", esc(k), esc(v)));
        }
        for s in &self.sections {
            for (k, v) in &s.scalars {
                out.push_str(&format!("{},{},{}\n", esc(&s.name), esc(k), esc(v)));
            }
            if let Some(t) = &s.table {
                out.push_str(&format!("# table {}\n", s.name));
                out.push_str(
                    &t.headers
                        .iter()
                        .map(|h| esc(h))
                        .collect::<Vec<_>>()
                        .join(","),
                );
                out.push('\n');
                for row in &t.rows {
                    out.push_str(&row.iter().map(|c| esc(c)).collect::<Vec<_>>().join(","));
                    out.push('\n');
                }
            }
        }
        for v in &self.verdicts {
            out.push_str(&format!(
                "verdict,{},{}\n",
                esc(&v.name),
                if v.pass { "pass" } else { "fail" }
            ));
        }
        out.push_str(&format!("meta,pass,{}\n", self.pass));
        out.into_bytes()
    }
}

/// FNV-1a 64-bit digest, hex-encoded; used to fingerprint inputs.
pub fn digest(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}
