//! CSV emission. Floats use the shortest round-trip form; absent values are
//! empty fields.

use std::io::{self, Write};

use otto_core::Family;

use crate::sweep::SweepRow;

pub const HEADER: &str = "model,n,J,Jz,Gz,h_hot,h_cold,T_hot,T_cold,swept,value,Qh,Qc,W,eta,cop,mode,q_idle,q_work_hot,w_local_total,gap,eta_otto,cop_otto,cop_carnot";

pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn format_row(row: &SweepRow) -> String {
    let s = &row.spec;
    let r = &row.report;
    let ksea = s.family == Family::IsingKsea;
    let fields = [
        s.family.cli_name().to_string(),
        s.n.to_string(),
        opt((!ksea).then_some(s.j)),
        opt(ksea.then_some(s.jz)),
        opt(ksea.then_some(s.gz)),
        num(s.cycle.h_hot),
        num(s.cycle.h_cold),
        num(s.cycle.t_hot),
        num(s.cycle.t_cold),
        row.swept
            .map(|(p, _)| p.name().to_string())
            .unwrap_or_default(),
        opt(row.swept.map(|(_, v)| v)),
        num(r.q_hot),
        num(r.q_cold),
        num(r.work),
        opt(r.eta),
        opt(r.cop),
        r.mode.map(|m| m.to_string()).unwrap_or_default(),
        num(row.q_idle),
        num(row.q_work_hot),
        num(row.w_local_total),
        num(row.gap),
        num(r.eta_otto),
        num(r.cop_otto),
        opt(r.cop_carnot),
    ];
    fields.join(",")
}

pub fn write_csv<W: Write>(mut out: W, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for row in rows {
        writeln!(out, "{}", format_row(row))?;
    }
    out.flush()
}

pub fn to_csv_string(rows: &[SweepRow]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}
