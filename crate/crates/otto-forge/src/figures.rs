//! Figure presets. Engine baths: `T_h = 4, T_c = 1, h = 4, h' = 3`;
//! refrigerator baths: `T_h = 2, T_c = 1, h = 5, h' = 2`.

use std::fmt::Write as _;
use std::str::FromStr;

use otto_core::cycle::{idle_decomposition, jz_star, jz_star_closed_form, Cycle, EnergyFrame};
use otto_core::{Family, SpinModel};

use crate::config::{Param, PointSpec, SweepConfig};
use crate::sweep::{run_sweep, SweepRow};
use crate::table::{num, to_csv_string};
use crate::Error;

pub const DEFAULT_STEPS: usize = 500;
pub const DEFAULT_GRID: usize = 101;

pub const IDS: [&str; 13] = [
    "1a", "1b", "2", "3", "4a", "4b", "5", "6a", "6b", "7a", "7b", "8", "9",
];

const KSEA_JZ: [f64; 3] = [0.0, 0.5, 2.6];
const GZ_RANGE: (f64, f64) = (0.0, 5.0);
const JZ_RANGE: (f64, f64) = (0.0, 5.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    F1a,
    F1b,
    F2,
    F3,
    F4a,
    F4b,
    F5,
    F6a,
    F6b,
    F7a,
    F7b,
    F8,
    F9,
}

impl Figure {
    pub const ALL: [Figure; 13] = [
        Figure::F1a,
        Figure::F1b,
        Figure::F2,
        Figure::F3,
        Figure::F4a,
        Figure::F4b,
        Figure::F5,
        Figure::F6a,
        Figure::F6b,
        Figure::F7a,
        Figure::F7b,
        Figure::F8,
        Figure::F9,
    ];

    pub fn id(self) -> &'static str {
        IDS[Self::ALL.iter().position(|&f| f == self).expect("listed")]
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().trim_start_matches("fig").to_ascii_lowercase();
        IDS.iter()
            .position(|&id| id == key)
            .map(|i| Self::ALL[i])
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown figure `{s}` (expected one of {})",
                    IDS.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureOptions {
    /// Points per one-dimensional series.
    pub steps: usize,
    /// Points per axis of the Figure 2 grid.
    pub grid: usize,
    pub parallel: bool,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self {
            steps: DEFAULT_STEPS,
            grid: DEFAULT_GRID,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigureFile {
    pub name: String,
    pub contents: String,
}

fn spec(family: Family, n: usize, jz: f64, cycle: Cycle) -> PointSpec {
    PointSpec {
        family,
        n,
        j: 0.0,
        jz,
        gz: 0.0,
        cycle,
    }
}

/// The sweeps behind a one-dimensional figure, in emission order.
pub fn series(figure: Figure, steps: usize) -> Vec<SweepConfig> {
    let ksea = |cycle| {
        KSEA_JZ
            .iter()
            .map(|&jz| {
                SweepConfig::new(
                    spec(Family::IsingKsea, 2, jz, cycle),
                    Param::Gz,
                    GZ_RANGE.0,
                    GZ_RANGE.1,
                    steps,
                )
            })
            .collect()
    };
    let chain = |family, ns: &[usize], cycle, (from, to)| {
        ns.iter()
            .map(|&n| SweepConfig::new(spec(family, n, 0.0, cycle), Param::J, from, to, steps))
            .collect()
    };
    let ising_ns = [2, 3, 4, 5, 6];
    match figure {
        Figure::F1a | Figure::F1b | Figure::F3 => ksea(Cycle::ENGINE),
        // Refrigerator counterpart of Figure 1, emitted alongside the contour data.
        Figure::F2 => ksea(Cycle::FRIDGE),
        Figure::F4a | Figure::F4b => {
            chain(Family::HeisenbergXxx, &[2, 3], Cycle::ENGINE, (0.0, 10.0))
        }
        Figure::F5 => chain(Family::HeisenbergXxx, &[2, 3], Cycle::FRIDGE, (-3.0, 3.0)),
        Figure::F6a | Figure::F6b => {
            chain(Family::IsingChain, &ising_ns, Cycle::ENGINE, (0.0, 2.0))
        }
        Figure::F7a | Figure::F7b | Figure::F8 => {
            chain(Family::IsingChain, &ising_ns, Cycle::ENGINE, (0.0, 10.0))
        }
        Figure::F9 => chain(Family::IsingChain, &ising_ns, Cycle::FRIDGE, (-3.0, 1.0)),
    }
}

fn run_series(figure: Figure, options: FigureOptions) -> Result<Vec<SweepRow>, Error> {
    let mut rows = Vec::new();
    for mut config in series(figure, options.steps) {
        config.parallel = options.parallel;
        rows.extend(run_sweep(&config)?);
    }
    Ok(rows)
}

/// `q_I` over `(J_z, Γ_z)` at engine baths, natural energy frame.
pub fn idle_grid_csv(side: usize) -> Result<String, Error> {
    if side < 2 {
        return Err(Error::Config(format!(
            "grid needs at least 2 points per axis, got {side}"
        )));
    }
    let axis = |(lo, hi): (f64, f64)| -> Vec<f64> {
        (0..side)
            .map(|k| {
                if k == side - 1 {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / (side - 1) as f64
                }
            })
            .collect()
    };
    let mut out = String::from("Jz,Gz,q_idle,q_work_hot\n");
    for &jz in &axis(JZ_RANGE) {
        for &gz in &axis(GZ_RANGE) {
            let d = idle_decomposition(
                &SpinModel::ising_ksea(jz, gz)?,
                &Cycle::ENGINE,
                EnergyFrame::Natural,
            )?;
            writeln!(
                out,
                "{},{},{},{}",
                num(jz),
                num(gz),
                num(d.q_idle),
                num(d.q_work_hot)
            )
            .expect("string");
        }
    }
    Ok(out)
}

/// Sign-change threshold of `q_I` against `Γ_z`, by bisection and in closed form.
pub fn threshold_curve_csv(steps: usize) -> Result<String, Error> {
    let mut out = String::from("Gz,Jz_star,Jz_star_closed\n");
    let (lo, hi) = GZ_RANGE;
    for k in 0..steps {
        let gz = if k + 1 == steps {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (steps - 1) as f64
        };
        let root = jz_star(gz, &Cycle::ENGINE)?;
        let closed = jz_star_closed_form(gz, &Cycle::ENGINE)?;
        writeln!(out, "{},{},{}", num(gz), num(root), num(closed)).expect("string");
    }
    Ok(out)
}

pub fn reproduce_figure(figure: Figure, options: FigureOptions) -> Result<Vec<FigureFile>, Error> {
    if options.steps < 2 {
        return Err(Error::Config(format!(
            "steps must be at least 2, got {}",
            options.steps
        )));
    }
    let id = figure.id();
    let mut files = Vec::new();
    if figure == Figure::F2 {
        files.push(FigureFile {
            name: "fig2_grid.csv".into(),
            contents: idle_grid_csv(options.grid)?,
        });
        files.push(FigureFile {
            name: "fig2_threshold.csv".into(),
            contents: threshold_curve_csv(options.steps)?,
        });
        files.push(FigureFile {
            name: "fig2_cop.csv".into(),
            contents: to_csv_string(&run_series(figure, options)?),
        });
    } else {
        files.push(FigureFile {
            name: format!("fig{id}.csv"),
            contents: to_csv_string(&run_series(figure, options)?),
        });
    }
    Ok(files)
}

/// One line per sweep: family, size, couplings, baths, swept range.
pub fn describe(figure: Figure, steps: usize) -> String {
    let mut out = String::new();
    for c in series(figure, steps) {
        let s = c.base;
        let cy = s.cycle;
        writeln!(
            out,
            "fig{} model={} n={} jz={} baths=(T_h={},T_c={},h={},h'={}) sweep={} [{}, {}] x{}",
            figure.id(),
            s.family.cli_name(),
            s.n,
            num(s.jz),
            num(cy.t_hot),
            num(cy.t_cold),
            num(cy.h_hot),
            num(cy.h_cold),
            c.param,
            num(c.from),
            num(c.to),
            c.steps
        )
        .expect("string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for f in Figure::ALL {
            assert_eq!(f.id().parse::<Figure>().unwrap(), f);
        }
        assert_eq!("fig7b".parse::<Figure>().unwrap(), Figure::F7b);
        assert!("10".parse::<Figure>().is_err());
    }

    #[test]
    fn threshold_curve_starts_at_known_value() {
        let csv = threshold_curve_csv(3).unwrap();
        let first: Vec<f64> = csv
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(|x| x.parse().unwrap())
            .collect();
        assert!((first[1] - 2.6546).abs() < 1e-4);
        assert!((first[1] - first[2]).abs() < 1e-8);
    }

    #[test]
    fn presets_use_standard_baths() {
        for f in Figure::ALL {
            for c in series(f, 10) {
                let cy = c.base.cycle;
                assert!(cy == Cycle::ENGINE || cy == Cycle::FRIDGE);
            }
        }
    }
}
