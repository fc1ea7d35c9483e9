//! Tables and their CSV / JSON serializations.

use serde_json::{json, Map, Value};

use crate::config::{Format, Manifest};

/// A column-oriented result. The first column is the abscissa.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// File stem used when a run writes several tables.
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Scalar results reported alongside the table (β, V, norms, ...).
    pub derived: Vec<(String, f64)>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: Vec<String>) -> Self {
        Table {
            name: name.into(),
            columns,
            rows: Vec::new(),
            derived: Vec::new(),
        }
    }

    /// Builds a table from an abscissa and one value vector per remaining column.
    pub fn from_columns(
        name: impl Into<String>,
        columns: Vec<String>,
        x: &[f64],
        values: &[Vec<f64>],
    ) -> Self {
        debug_assert_eq!(columns.len(), values.len() + 1);
        let mut table = Table::new(name, columns);
        table.rows = x
            .iter()
            .enumerate()
            .map(|(i, &xi)| {
                std::iter::once(xi)
                    .chain(values.iter().map(|c| c[i]))
                    .collect()
            })
            .collect();
        table
    }

    pub fn derive(&mut self, key: impl Into<String>, value: f64) {
        self.derived.push((key.into(), value));
    }
}

/// 17 significant digits; non-finite values as `inf`, `-inf`, `nan`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn json_f64(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::String(fmt_f64(v))
    }
}

pub fn render(table: &Table, manifest: &Manifest, format: Format) -> String {
    match format {
        Format::Csv => render_csv(table, manifest),
        Format::Json => render_json(table, manifest),
    }
}

fn render_csv(table: &Table, manifest: &Manifest) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# {} {} {}\n",
        manifest.tool,
        manifest.version,
        manifest.config.command.name()
    ));
    let params = serde_json::to_value(&manifest.config).expect("config serializes");
    if let Value::Object(map) = params {
        for (k, v) in map {
            out.push_str(&format!("# param {k} = {v}\n"));
        }
    }
    for (k, v) in &table.derived {
        out.push_str(&format!("# derived {k} = {}\n", fmt_f64(*v)));
    }
    out.push_str(&format!(
        "# manifest {}\n",
        serde_json::to_string(manifest).expect("manifest serializes")
    ));
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn render_json(table: &Table, manifest: &Manifest) -> String {
    let mut params = match serde_json::to_value(&manifest.config).expect("config serializes") {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    let derived: Map<String, Value> = table
        .derived
        .iter()
        .map(|(k, v)| (k.clone(), json_f64(*v)))
        .collect();
    params.insert("derived".into(), Value::Object(derived));

    let mut data = Map::new();
    for (j, name) in table.columns.iter().enumerate().skip(1) {
        let pairs: Vec<Value> = table
            .rows
            .iter()
            .map(|r| Value::Array(vec![json_f64(r[0]), json_f64(r[j])]))
            .collect();
        data.insert(name.clone(), Value::Array(pairs));
    }
    let doc = json!({
        "params": params,
        "columns": table.columns,
        "data": data,
        "manifest": manifest,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
    s.push('\n');
    s
}

/// A gnuplot script that plots every value column of a CSV data file against the first.
pub fn gnuplot_stub(table: &Table, data_file: &str) -> String {
    let mut s = String::from("# generated by whichpath; plotting is left to the user\n");
    s.push_str("set datafile separator ','\nset datafile commentschars '#'\nset key autotitle columnhead\n");
    s.push_str(&format!("set xlabel '{}'\n", table.columns[0]));
    let series: Vec<String> = (2..=table.columns.len())
        .map(|j| format!("'{data_file}' using 1:{j} with lines"))
        .collect();
    s.push_str(&format!("plot {}\n", series.join(", \\\n     ")));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Command, Overrides, RunConfig};

    fn sample() -> (Table, Manifest) {
        let cfg = RunConfig::resolve(Command::FreeEvolve, None, Overrides::default()).unwrap();
        let mut t = Table::from_columns(
            "t",
            vec!["x".into(), "P".into()],
            &[-1.0, 0.0, 1.0],
            &[vec![0.1, f64::INFINITY, 0.3]],
        );
        t.derive("norm", 1.0);
        (t, Manifest::new(&cfg))
    }

    #[test]
    fn seventeen_significant_digits() {
        let v = 0.1f64 + 0.2;
        let s = fmt_f64(v);
        assert_eq!(s.parse::<f64>().unwrap(), v);
        assert_eq!(s, "3.0000000000000004e-1");
    }

    #[test]
    fn csv_layout() {
        let (t, m) = sample();
        let csv = render(&t, &m, Format::Csv);
        let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body[0], "x,P");
        assert_eq!(body[2], "0.0000000000000000e0,inf");
        assert!(csv.contains("# derived norm = 1.0000000000000000e0"));
    }

    #[test]
    fn json_layout() {
        let (t, m) = sample();
        let v: Value = serde_json::from_str(&render(&t, &m, Format::Json)).unwrap();
        assert_eq!(v["columns"], json!(["x", "P"]));
        assert_eq!(v["data"]["P"][0], json!([-1.0, 0.1]));
        assert_eq!(v["data"]["P"][1], json!([0.0, "inf"]));
        assert_eq!(v["params"]["derived"]["norm"], json!(1.0));
        assert_eq!(v["manifest"]["config"]["command"], json!("free-evolve"));
    }

    #[test]
    fn gnuplot_references_every_column() {
        let (t, _) = sample();
        let g = gnuplot_stub(&t, "out.csv");
        assert!(g.contains("using 1:2"));
    }
}
