use num_complex::Complex64;

use braidrep::cyclotomic::CycNumber;
use braidrep::matrix::{CycMatrix, Matrix};

/// Ten significant digits, fixed notation for moderate magnitudes.
pub fn real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".to_string() } else { x.to_string() };
    }
    let sci = format!("{:.9e}", x);
    let magnitude: i32 = sci.split_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    if (-5..10).contains(&magnitude) {
        let decimals = (9 - magnitude).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
            "0".to_string()
        } else {
            s
        }
    } else {
        format!("{:.9e}", x)
    }
}

pub fn complex(z: Complex64) -> String {
    let im = if z.im.abs() < 1e-14 { 0.0 } else { z.im };
    let re = if z.re.abs() < 1e-14 { 0.0 } else { z.re };
    if im == 0.0 {
        return real(re);
    }
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{}{}{}i", real(re), sign, real(im.abs()))
}

fn cyc_rows(m: &CycMatrix) -> Vec<String> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect::<Vec<_>>().join(", "))
        .collect()
}

/// One string per row, entries separated by `, `.
pub fn matrix_rows(m: &Matrix) -> Vec<String> {
    match m {
        Matrix::Exact(x) => cyc_rows(x),
        Matrix::Float(f) => (0..f.nrows())
            .map(|r| (0..f.ncols()).map(|c| complex(f[(r, c)])).collect::<Vec<_>>().join(", "))
            .collect(),
    }
}

pub fn cyc(x: &CycNumber) -> String {
    x.to_string()
}

/// Text or `key=value` output, written in insertion order.
pub struct Output {
    kv: bool,
    lines: Vec<String>,
}

impl Output {
    pub fn new(kv: bool) -> Self {
        Output { kv, lines: Vec::new() }
    }

    pub fn is_kv(&self) -> bool {
        self.kv
    }

    /// A labelled field: `key=value` in kv mode, `key  value` otherwise.
    pub fn field(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        if self.kv {
            self.lines.push(format!("{}={}", key, value));
        } else {
            self.lines.push(format!("{:<11} {}", key, value));
        }
    }

    /// A bare line in text mode, `key=value` in kv mode.
    pub fn result(&mut self, key: &str, value: impl ToString) {
        if self.kv {
            self.lines.push(format!("{}={}", key, value.to_string()));
        } else {
            self.lines.push(value.to_string());
        }
    }

    /// A labelled matrix: rows separated by `;` in kv mode, one per line otherwise.
    pub fn matrix(&mut self, key: &str, m: &Matrix) {
        let rows = matrix_rows(m);
        if self.kv {
            self.lines.push(format!("{}={}", key, rows.join("; ")));
        } else {
            self.lines.push(key.to_string());
            for r in rows {
                self.lines.push(format!("  [{}]", r));
            }
        }
    }

    pub fn raw(&mut self, text: &str) {
        self.lines.extend(text.lines().map(str::to_string));
    }

    pub fn render(&self) -> String {
        let mut s = self.lines.join("\n");
        if !s.is_empty() {
            s.push('\n');
        }
        s
    }
}
