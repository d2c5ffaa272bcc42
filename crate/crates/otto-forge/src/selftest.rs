//! Invariant checks on seeded random draws over all models.

use std::fmt;

use otto_core::cycle::{
    linear_identities, local_ledger, run_cycle, stage_works, work_entropy_form, Convention, Cycle,
};
use otto_core::model::build_hamiltonian;
use otto_core::oracle::{brute_force_spectrum, max_abs_diff, thermal_state_expm};
use otto_core::spectrum::analytic_spectrum;
use otto_core::thermo::{
    concurrence, gibbs_populations, partition_function, partition_function_closed, reduced_pair,
    thermal_density_matrix,
};
use otto_core::{Family, SpinModel};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FAMILIES: [Family; 3] = [Family::IsingKsea, Family::HeisenbergXxx, Family::IsingChain];

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub draws: usize,
    pub failures: usize,
    /// Largest observed deviation, when the check measures one.
    pub worst: Option<f64>,
    pub tol: Option<f64>,
    /// First failing draw.
    pub example: Option<String>,
}

impl CheckResult {
    fn new(name: impl Into<String>, tol: Option<f64>) -> Self {
        Self {
            name: name.into(),
            draws: 0,
            failures: 0,
            worst: None,
            tol,
            example: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.draws > 0
    }

    /// Records a measured deviation against the tolerance.
    fn measure(&mut self, deviation: f64, context: impl FnOnce() -> String) {
        self.worst = Some(self.worst.map_or(deviation, |w| w.max(deviation)));
        let ok = self.tol.is_some_and(|t| deviation <= t);
        self.record(ok, context);
    }

    fn record(&mut self, ok: bool, context: impl FnOnce() -> String) {
        self.draws += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(context());
            }
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} ({} draws",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.draws
        )?;
        if let Some(w) = self.worst {
            write!(f, ", worst {w:.3e}")?;
        }
        if let Some(t) = self.tol {
            write!(f, ", tol {t:e}")?;
        }
        write!(f, ")")?;
        if let Some(e) = &self.example {
            write!(f, " first failure: {e}")?;
        }
        Ok(())
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn coupling(&mut self) -> f64 {
        self.rng.gen_range(-5.0..5.0)
    }

    pub fn field(&mut self) -> f64 {
        self.rng.gen_range(0.1..10.0)
    }

    /// `±[0.1, 5]`.
    pub fn signed_beta(&mut self) -> f64 {
        let b = self.rng.gen_range(0.1..5.0);
        if self.rng.gen_bool(0.5) {
            b
        } else {
            -b
        }
    }

    pub fn model_of(&mut self, family: Family) -> SpinModel {
        match family {
            Family::IsingKsea => SpinModel::ising_ksea(self.coupling(), self.coupling()),
            Family::HeisenbergXxx => {
                SpinModel::heisenberg(self.rng.gen_range(2..=3), self.coupling())
            }
            Family::IsingChain => {
                SpinModel::ising_chain(self.rng.gen_range(2..=6), self.coupling())
            }
        }
        .expect("finite draws")
    }

    pub fn model(&mut self) -> SpinModel {
        let family = *FAMILIES.choose(&mut self.rng).expect("non-empty");
        self.model_of(family)
    }

    /// `h > h' ≥ 0.1`, `T_h > T_c ≥ 0.1`.
    pub fn cycle(&mut self) -> Cycle {
        let h_cold = self.rng.gen_range(0.1..9.0);
        let h_hot = h_cold + self.rng.gen_range(0.05..1.0) * (10.0 - h_cold);
        let t_cold = self.rng.gen_range(0.1..5.0);
        let t_hot = t_cold + self.rng.gen_range(0.1..5.0);
        Cycle::new(h_hot, h_cold, t_hot, t_cold)
    }

    pub fn flip(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }
}

fn ctx(model: &SpinModel, cycle: &Cycle) -> String {
    format!("{model:?} {cycle:?}")
}

/// First law, energy-shift invariance of heats, `Γ_z → −Γ_z` symmetry.
pub fn first_law_suite(s: &mut Sampler, draws: usize) -> Vec<CheckResult> {
    let mut law = CheckResult::new("first law |Q_h+Q_c-W|", Some(1e-13));
    let mut shift = CheckResult::new("energy-shift invariance", Some(1e-10));
    let mut sym = CheckResult::new("Γ_z sign symmetry", Some(1e-12));
    for _ in 0..draws {
        let (model, cycle) = (s.model(), s.cycle());
        let r = run_cycle(&model, &cycle).expect("valid draw");
        law.measure(r.first_law_residual(), || ctx(&model, &cycle));

        let c = s.coupling() * 4.0;
        let hot = analytic_spectrum(&model, cycle.h_hot).expect("spectrum");
        let cold = analytic_spectrum(&model, cycle.h_cold).expect("spectrum");
        let p = gibbs_populations(&hot, cycle.beta_hot()).expect("populations");
        let q = gibbs_populations(&cold, cycle.beta_cold()).expect("populations");
        let (mut qh, mut qc) = (0.0, 0.0);
        for (a, b) in hot.levels.iter().zip(&cold.levels) {
            let m = a.multiplicity as f64;
            qh += m * (a.energy + c) * (p[a.label] - q[a.label]);
            qc += m * (b.energy + c) * (q[a.label] - p[a.label]);
        }
        let dev = (qh - r.q_hot).abs().max((qc - r.q_cold).abs());
        shift.measure(dev, || ctx(&model, &cycle));

        let ksea = SpinModel::ising_ksea(s.coupling(), s.coupling()).expect("finite");
        let flipped =
            SpinModel::ising_ksea(ksea.exchange(), -ksea.gz().expect("ksea")).expect("finite");
        let (a, b) = (
            run_cycle(&ksea, &cycle).expect("valid"),
            run_cycle(&flipped, &cycle).expect("valid"),
        );
        let dev = [a.q_hot - b.q_hot, a.q_cold - b.q_cold, a.work - b.work]
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        sym.measure(if a.mode == b.mode { dev } else { f64::INFINITY }, || {
            ctx(&ksea, &cycle)
        });
    }
    vec![law, shift, sym]
}

/// Analytic spectra and thermal states against dense oracles; closed-form
/// partition functions against direct sums.
pub fn oracle_suite(s: &mut Sampler, draws: usize) -> Vec<CheckResult> {
    let mut spec = CheckResult::new("spectrum vs dense eigensolver", Some(1e-9));
    let mut state = CheckResult::new("thermal state vs matrix exponential", Some(1e-10));
    let mut z = CheckResult::new("closed-form partition functions (relative)", Some(1e-12));
    for _ in 0..draws {
        let (model, h, beta) = (s.model(), s.field(), s.signed_beta());
        let ham = build_hamiltonian(&model, h).expect("hamiltonian");
        let a = analytic_spectrum(&model, h).expect("spectrum").expanded();
        let b = brute_force_spectrum(&ham).expect("dense").expanded();
        let dev = if a.len() == b.len() {
            a.iter()
                .zip(&b)
                .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
        } else {
            f64::INFINITY
        };
        spec.measure(dev, || format!("{model:?} h={h}"));

        let rho = thermal_density_matrix(&model, h, beta).expect("state").rho;
        let oracle = thermal_state_expm(&ham, beta).expect("expm");
        state.measure(max_abs_diff(&rho, &oracle), || {
            format!("{model:?} h={h} beta={beta}")
        });

        let chain = if s.flip() {
            SpinModel::ising_ksea(s.coupling(), s.coupling())
        } else {
            SpinModel::ising_chain(2 + (s.field() as usize) % 5, s.coupling())
        }
        .expect("finite");
        let closed = partition_function_closed(&chain, h, beta).expect("closed form");
        let direct = partition_function(&analytic_spectrum(&chain, h).expect("spectrum"), beta);
        z.measure(((closed - direct) / direct).abs(), || {
            format!("{chain:?} h={h} beta={beta}")
        });
    }
    vec![spec, state, z]
}

/// `η ≤ 1 − T_c/T_h` and `COP ≤ T_c/(T_h − T_c)`, `draws` per family.
pub fn carnot_suite(s: &mut Sampler, draws: usize) -> Vec<CheckResult> {
    FAMILIES
        .iter()
        .map(|&family| {
            let mut c =
                CheckResult::new(format!("Carnot bounds, {}", family.cli_name()), Some(1e-10));
            for _ in 0..draws {
                let (model, cycle) = (s.model_of(family), s.cycle());
                let r = run_cycle(&model, &cycle).expect("valid draw");
                let eta_excess = r
                    .eta
                    .map_or(0.0, |e| e - (1.0 - cycle.t_cold / cycle.t_hot));
                let cop_excess = r
                    .cop
                    .map_or(0.0, |c| c - cycle.t_cold / (cycle.t_hot - cycle.t_cold));
                c.measure(eta_excess.max(cop_excess).max(0.0), || ctx(&model, &cycle));
            }
            c
        })
        .collect()
}

/// Case-4 ledger gap and the KSEA stage inequality.
pub fn extensivity_suite(s: &mut Sampler, draws: usize) -> Vec<CheckResult> {
    let mut zero = CheckResult::new("Case-4 gap = 0 for chains (incl. β<0)", Some(1e-10));
    let mut positive = CheckResult::new("Case-4 gap > 0 for KSEA with Γ_z≠0", None);
    let mut stage = CheckResult::new(
        "stage inequality -(W1-2w1) >= 0, equality iff Γ_z=0",
        Some(1e-12),
    );
    for _ in 0..draws {
        let family = if s.flip() {
            Family::IsingChain
        } else {
            Family::HeisenbergXxx
        };
        let (model, mut cycle) = (s.model_of(family), s.cycle());
        if s.flip() {
            cycle = cycle.allowing_negative_temperature();
            if s.flip() {
                cycle.t_hot = -cycle.t_hot;
            }
            if s.flip() {
                cycle.t_cold = -cycle.t_cold;
            }
        }
        let gap = local_ledger(&model, &cycle, Convention::Case4)
            .expect("ledger")
            .gap;
        zero.measure(gap.abs(), || ctx(&model, &cycle));

        let cycle = s.cycle();
        let ksea = s.model_of(Family::IsingKsea);
        let gz = ksea.gz().expect("ksea");
        let gap = local_ledger(&ksea, &cycle, Convention::Case4)
            .expect("ledger")
            .gap;
        positive.record(gz == 0.0 || gap > 0.0, || {
            format!("gap={gap:e} {}", ctx(&ksea, &cycle))
        });

        let w = stage_works(&ksea, &cycle).expect("stages");
        let excess = -(w.w1 - 2.0 * w.site_w1[0]);
        let flat = SpinModel::ising_ksea(ksea.exchange(), 0.0).expect("finite");
        let wf = stage_works(&flat, &cycle).expect("stages");
        let flat_excess = (wf.w1 - 2.0 * wf.site_w1[0]).abs();
        let ok = excess >= -1e-12 && flat_excess <= 1e-12 && (gz == 0.0 || excess > 0.0);
        stage.worst = Some(stage.worst.unwrap_or(0.0).max(flat_excess).max(-excess));
        stage.record(ok, || {
            format!(
                "excess={excess:e} flat={flat_excess:e} {}",
                ctx(&ksea, &cycle)
            )
        });
    }
    vec![zero, positive, stage]
}

pub fn entropy_suite(s: &mut Sampler, draws: usize) -> Vec<CheckResult> {
    let mut c = CheckResult::new("entropy-form work identity", Some(1e-10));
    for _ in 0..draws {
        let (model, cycle) = (s.model(), s.cycle());
        let w = run_cycle(&model, &cycle).expect("valid").work;
        let ws = work_entropy_form(&model, &cycle).expect("positive temperatures");
        c.measure((w - ws).abs(), || ctx(&model, &cycle));
    }
    vec![c]
}

/// Linear-in-field identities and their sign diagnostics for the chains.
pub fn linear_suite(s: &mut Sampler, draws: usize) -> Vec<CheckResult> {
    let mut res = CheckResult::new("linear identity residuals", Some(1e-12));
    let mut sign = CheckResult::new("sign diagnostics (η>η_o ⇔ bJ<0, COP>COP_o ⇔ bJ<0)", None);
    for _ in 0..draws {
        let family = if s.flip() {
            Family::IsingChain
        } else {
            Family::HeisenbergXxx
        };
        let (model, cycle) = (s.model_of(family), s.cycle());
        let l = linear_identities(&model, &cycle).expect("linear spectrum");
        let worst = [l.residual_q_hot, l.residual_q_cold, l.residual_work]
            .into_iter()
            .chain(l.residual_eta)
            .chain(l.residual_cop)
            .fold(0.0, f64::max);
        res.measure(worst, || ctx(&model, &cycle));
        let ok = l.eta_sign_consistent != Some(false) && l.cop_sign_consistent != Some(false);
        sign.record(ok, || ctx(&model, &cycle));
    }
    vec![res, sign]
}

/// Ising-chain states have zero concurrence; the KSEA `|11⟩⟨00|` coherence is
/// nonzero exactly when `Γ_z ≠ 0`.
pub fn separability_suite(s: &mut Sampler, draws: usize) -> Vec<CheckResult> {
    let mut sep = CheckResult::new("Ising concurrence = 0 exactly", None);
    let mut corner = CheckResult::new("KSEA corner coherence > 0 iff Γ_z≠0", None);
    for _ in 0..draws {
        let model = s.model_of(Family::IsingChain);
        let (h, beta) = (s.field(), s.signed_beta());
        let state = thermal_density_matrix(&model, h, beta).expect("state");
        let n = model.n_sites();
        let mut ok = n != 2 || concurrence(&state.rho).expect("two qubits") == 0.0;
        for a in 0..n {
            for b in (a + 1)..n {
                ok &= concurrence(&reduced_pair(&state, a, b).expect("pair")).expect("two qubits")
                    == 0.0;
            }
        }
        sep.record(ok, || format!("{model:?} h={h} beta={beta}"));

        let gz = if s.flip() { 0.0 } else { s.coupling() };
        let ksea = SpinModel::ising_ksea(s.coupling(), gz).expect("finite");
        let rho = thermal_density_matrix(&ksea, h, beta.abs())
            .expect("state")
            .rho;
        corner.record((rho[(0, 3)].norm() > 0.0) == (gz != 0.0), || {
            format!("{ksea:?} h={h} beta={beta}")
        });
    }
    vec![sep, corner]
}

type Suite = fn(&mut Sampler, usize) -> Vec<CheckResult>;

/// Criterion number and check results for every suite; `draws` scales all of them.
pub fn run_suite(seed: u64, draws: usize) -> Vec<(u8, CheckResult)> {
    let mut s = Sampler::new(seed);
    let mut out = Vec::new();
    let suites: [(u8, Suite); 7] = [
        (10, first_law_suite),
        (11, oracle_suite),
        (12, carnot_suite),
        (13, extensivity_suite),
        (14, entropy_suite),
        (15, linear_suite),
        (16, separability_suite),
    ];
    for (criterion, suite) in suites {
        out.extend(suite(&mut s, draws).into_iter().map(|c| (criterion, c)));
    }
    out
}
