//! CSV emission: comma separated, `.` decimal, 17 significant digits, one
//! header row, one trailing newline. Byte-identical across runs for a fixed
//! configuration.

pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(headers: Vec<String>) -> Table {
        Table {
            headers,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn headers(&self) -> &[String] {
        &self.headers
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut first = true;
            for value in row {
                if !first {
                    out.push(',');
                }
                first = false;
                // 17 significant digits round-trip f64 exactly
                out.push_str(&format!("{value:.16e}"));
            }
            out.push('\n');
        }
        out
    }
}
