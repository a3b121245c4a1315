//! Batch verification engine and output helpers behind the `quadqg` binary.

pub mod verify;

use quadqg_core::Quasigroup;

/// Cayley table as CSV: one row per line, comma-separated integer codes.
pub fn table_to_csv(q: &Quasigroup) -> String {
    let n = q.n();
    let mut out = String::new();
    for r in 0..n as u32 {
        for c in 0..n as u32 {
            if c > 0 {
                out.push(',');
            }
            out.push_str(&q.op(r, c).to_string());
        }
        out.push('\n');
    }
    out
}
