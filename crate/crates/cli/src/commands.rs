//! One function per subcommand, each turning a validated [`RunConfig`] into a table.

use rayon::prelude::*;

use hcpair::analytic::{
    cm_waveform_eval, energy_levels, epsilon0, expectation_delta_potential, expectation_phase, expectation_x,
    noninteracting_comparison, quantized_cm_k, quantized_q, spectrum_compare, zero_point_force, MacroOrbital,
    PairQuantumNumbers, RelativeWaveform, SpectrumScheme, SymmetryKind,
};
use hcpair::appendix::{classify_limit, effective_mass, limit_trend, DeltaRegime, PowerLawStrength};
use hcpair::numeric::{delta_limit_study, BarrierWidth, DeltaStudyConfig};
use hcpair::thermal::{
    characteristic_temperature, excited_ratio_closed_form, km_energy_share, occupations, temperature_for_excited_ratio,
    thermal_force, Cutoff, OccupationModel,
};
use hcpair::validation::{log_log_slope, run_selftest, BoundKind, Fault, SelftestConfig};

use crate::config::{Occupation, RunConfig};
use crate::error::CliError;
use crate::table::{col, sci, Cell, ResultTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Spectrum,
    Eigenfunction,
    Expectation,
    DeltaLimit,
    AlphaScan,
    Thermal,
    Force,
    Compare,
    Selftest { fault: Option<Fault> },
}

/// A finished table plus a failure that should still set the exit status once the
/// table has been written (used by `selftest`).
pub struct Report {
    pub table: ResultTable,
    pub failure: Option<CliError>,
}

pub fn execute(kind: CommandKind, config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    let table = match kind {
        CommandKind::Spectrum => cmd_spectrum(config)?,
        CommandKind::Eigenfunction => cmd_eigenfunction(config)?,
        CommandKind::Expectation => cmd_expectation(config)?,
        CommandKind::DeltaLimit => cmd_delta_limit(config)?,
        CommandKind::AlphaScan => cmd_alpha_scan(config)?,
        CommandKind::Thermal => cmd_thermal(config)?,
        CommandKind::Force => cmd_force(config)?,
        CommandKind::Compare => cmd_compare(config)?,
        CommandKind::Selftest { fault } => return cmd_selftest(fault),
    };
    Ok(Report { table, failure: None })
}

pub fn cmd_spectrum(c: &RunConfig) -> Result<ResultTable, CliError> {
    let (g, u) = (c.geometry()?, c.units()?);
    let mut t = ResultTable::new(
        "spectrum",
        vec![
            col("kind", "-"),
            col("n", "-"),
            col("N", "-"),
            col("q_n", "1/length"),
            col("K_N", "1/length"),
            col("E_k", "energy"),
            col("E_K", "energy"),
            col("E", "energy"),
            col("E_over_eps0", "1"),
        ],
    );
    for n in 0..=c.n_max {
        for cm in 0..=c.cm_max {
            let s = energy_levels(PairQuantumNumbers::new(n, cm), &g, &u);
            t.push(vec![
                "pair".into(),
                n.into(),
                cm.into(),
                s.waves.q.into(),
                s.waves.cm.into(),
                s.e_rel.into(),
                s.e_cm.into(),
                s.e_total.into(),
                s.ratio_to_epsilon0().into(),
            ]);
        }
    }
    // Two independent particles, each in the ground state of the full box.
    let free = noninteracting_comparison(&g, &u);
    let e_free = 2.0 * free.epsilon0_free;
    t.push(vec![
        "non-interacting".into(),
        0u32.into(),
        Cell::Empty,
        free.q0_free.into(),
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        e_free.into(),
        (e_free / free.epsilon0).into(),
    ]);
    t.note("eps0", sci(free.epsilon0));
    t.note("eps0_over_eps0_free", sci(free.energy_ratio));
    t.note("q0_over_q0_free", sci(free.momentum_ratio));
    t.note(
        "ground_q0_times_d_over_pi",
        sci(quantized_q(0, &g) * g.half_length() / std::f64::consts::PI),
    );
    Ok(t)
}

pub fn cmd_eigenfunction(c: &RunConfig) -> Result<ResultTable, CliError> {
    let (g, u) = (c.geometry()?, c.units()?);
    let d = g.half_length();
    let half = g.length() / 2.0;
    let mut columns = vec![col("x", "length"), col("X", "length")];
    for n in 0..=c.n_max {
        columns.push(col(format!("phi_plus_{n}"), "1"));
        columns.push(col(format!("psi_minus_{n}"), "1"));
    }
    for cm in 0..=c.cm_max {
        columns.push(col(format!("cm_{cm}"), "1/sqrt(length)"));
    }
    columns.push(col("xi_re", "1/sqrt(length)"));
    columns.push(col("xi_im", "1/sqrt(length)"));
    let mut t = ResultTable::new("eigenfunction", columns);

    let waves: Vec<(RelativeWaveform<f64>, RelativeWaveform<f64>)> = (0..=c.n_max)
        .map(|n| {
            let q = quantized_q(n, &g);
            Ok((
                RelativeWaveform::confined(SymmetryKind::BosonicEvenCusp, q)?,
                RelativeWaveform::confined(SymmetryKind::FermionicOdd, q)?,
            ))
        })
        .collect::<Result<_, hcpair::Error>>()?;
    let xi = MacroOrbital::single_loop(quantized_q(0, &g), quantized_cm_k(0, &g), SymmetryKind::BosonicEvenCusp)?;

    let m = c.npoints;
    for i in 0..m {
        let f = i as f64 / (m - 1) as f64;
        let x = -d + 2.0 * d * f;
        let cm_x = -half + 2.0 * half * f;
        let mut row: Vec<Cell> = vec![x.into(), cm_x.into()];
        for (plus, minus) in &waves {
            row.push(plus.eval(x).into());
            row.push(minus.eval(x).into());
        }
        for cm in 0..=c.cm_max {
            row.push(cm_waveform_eval(cm, cm_x, &g)?.into());
        }
        let v = xi.eval(x.abs(), cm_x);
        row.push(v.re.into());
        row.push(v.im.into());
        t.push(row);
    }
    t.note(
        "relative_waveforms",
        "sqrt(2)*sin(q_n|x|) and sqrt(2)*sin(q_n x), q_n = (n+1)pi/d",
    );
    t.note(
        "cm_waveforms",
        "sqrt(2/L)*cos(K_N X) for even N, sqrt(2/L)*sin(K_N X) for odd N",
    );
    t.note("xi", "B*zeta(|x|)*exp(i K_0 X) for n = 0, N = 0, B fixed on one loop");
    t.note("xi_norm_b", sci(xi.norm_b()));
    t.note("hbar", sci(u.hbar()));
    Ok(t)
}

pub fn cmd_expectation(c: &RunConfig) -> Result<ResultTable, CliError> {
    let g = c.geometry()?;
    let mut t = ResultTable::new(
        "expectation",
        vec![
            col("symmetry", "-"),
            col("n", "-"),
            col("q", "1/length"),
            col("lambda", "length"),
            col("x_mean_closed", "length"),
            col("x_mean_quadrature", "length"),
            col("half_lambda", "length"),
            col("k_x_mean_over_2pi", "1"),
            col("phase_mean_quadrature", "rad"),
            col("contact_density", "1"),
        ],
    );
    for sym in [SymmetryKind::BosonicEvenCusp, SymmetryKind::FermionicOdd] {
        for n in 0..=c.n_max {
            let w = RelativeWaveform::confined(sym, quantized_q(n, &g))?;
            let e = expectation_x(&w)?;
            t.push(vec![
                sym.label().into(),
                n.into(),
                w.q.into(),
                w.wavelength().into(),
                e.closed_form.into(),
                e.quadrature.into(),
                (0.5 * w.wavelength()).into(),
                (w.k() * e.closed_form / (2.0 * std::f64::consts::PI)).into(),
                expectation_phase(&w)?.into(),
                expectation_delta_potential(&w)?.into(),
            ]);
        }
    }
    t.note("domain", "[0, lambda], lambda = 2pi/q");
    Ok(t)
}

pub fn cmd_delta_limit(c: &RunConfig) -> Result<ResultTable, CliError> {
    let (g, u) = (c.geometry()?, c.units()?);
    let study = DeltaStudyConfig {
        npoints: c.npoints,
        width: BarrierWidth::Cells(c.w_factor),
        ..Default::default()
    };
    let rows = delta_limit_study(&c.a_ladder, &g, &u, &study)?;
    let two_eps = 2.0 * epsilon0(&g, &u);
    let mut t = ResultTable::new(
        "delta-limit",
        vec![
            col("A", "energy*length"),
            col("eta0_abs", "1/sqrt(length)"),
            col("l2_dist_phi_plus", "1"),
            col("V_mean", "energy"),
            col("E0_numeric", "energy"),
            col("E0_over_2eps0", "1"),
            col("reference", "-"),
        ],
    );
    for r in &rows {
        t.push(vec![
            r.strength.into(),
            r.eta0_abs.into(),
            r.l2_dist_to_phi_plus.into(),
            r.v_expect.into(),
            r.e0_numeric.into(),
            (r.e0_numeric / two_eps).into(),
            if r.strength == 0.0 {
                "free-even".into()
            } else {
                Cell::Empty
            },
        ]);
    }
    let barrier: Vec<_> = rows.iter().filter(|r| r.strength > 0.0).collect();
    if barrier.len() >= 2 {
        let a: Vec<f64> = barrier.iter().map(|r| r.strength).collect();
        let v: Vec<f64> = barrier.iter().map(|r| r.v_expect).collect();
        t.note("V_mean_loglog_slope", sci(log_log_slope(&a, &v)));
    }
    t.note("two_eps0", sci(two_eps));
    t.note("barrier_width_cells", sci(c.w_factor));
    Ok(t)
}

pub fn cmd_alpha_scan(c: &RunConfig) -> Result<ResultTable, CliError> {
    let u = c.units()?;
    let mut t = ResultTable::new(
        "alpha-scan",
        vec![
            col("alpha", "1"),
            col("regime", "-"),
            col("finite_value", "energy"),
            col("slope_measured", "1"),
            col("slope_expected", "1"),
            col("integrand_at_min_x", "energy"),
        ],
    );
    for &alpha in &c.alpha {
        let p = PowerLawStrength::new(c.b_scale, alpha)
            .map_err(|e| CliError::InvalidConfig(format!("alpha row {alpha}: {e}")))?;
        let regime = classify_limit(&p, c.k);
        let trend = limit_trend(&p, c.k)?;
        let finite = match regime {
            DeltaRegime::Finite { value } => Cell::Num(value),
            _ => Cell::Empty,
        };
        t.push(vec![
            alpha.into(),
            regime.label().into(),
            finite,
            trend.slope.into(),
            (1.0 - alpha).into(),
            trend.values.last().copied().into(),
        ]);
    }
    let em = effective_mass(c.b_scale, &u)?;
    t.note("B", sci(c.b_scale));
    t.note("k", sci(c.k));
    t.note("x_ladder", "1e-1..1e-9 geometric");
    t.note("m_eff", sci(em.mass_eff));
    t.note("E_star_over_E_k", sci(em.energy_scale));
    t.note("E_star", sci(em.energy(c.k, &u)));
    t.note("E_k_only", sci(em.bare_energy(c.k, &u)));
    t.note(
        "contact_endpoints",
        format!("{},{}", sci(0.0), sci(em.contact_endpoints_per_k2.1 * c.k * c.k)),
    );
    t.note("contact_energy_fictitious", em.fictitious);
    Ok(t)
}

pub fn cmd_thermal(c: &RunConfig) -> Result<ResultTable, CliError> {
    let (g, u) = (c.geometry()?, c.units()?);
    if let Some(bad) = c.t_ladder.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        return Err(CliError::InvalidConfig(format!(
            "T_ladder entries must be positive, got {bad}"
        )));
    }
    let model = match c.occupation {
        Occupation::Relative => OccupationModel::RelativeOnly,
        Occupation::IncludeCm => OccupationModel::IncludeCm,
    };
    let t0 = characteristic_temperature(&g, &u);
    let rows = c
        .t_ladder
        .par_iter()
        .map(|&mult| {
            let temp = mult * t0;
            let occ = occupations(temp, &g, &u, Cutoff::Auto, model)?;
            let f = thermal_force(temp, &g, &u, Cutoff::Auto, model)?;
            let closed = excited_ratio_closed_form(temp, &g, &u)?;
            Ok(vec![
                temp.into(),
                mult.into(),
                occ.n_cutoff.into(),
                occ.ground().into(),
                occ.excited_ratio().into(),
                closed.into(),
                f.mean.into(),
                f.normalized().into(),
                f.cm_contribution.into(),
            ])
        })
        .collect::<Result<Vec<Vec<Cell>>, hcpair::Error>>()?;
    let mut t = ResultTable::new(
        "thermal",
        vec![
            col("T", "temperature"),
            col("T_over_T0", "1"),
            col("n_cutoff", "-"),
            col("P0", "1"),
            col("P1_over_P0", "1"),
            col("P1_over_P0_closed", "1"),
            col("F_mean", "force"),
            col("F_over_F0", "1"),
            col("F_cm", "force"),
        ],
    );
    for r in rows {
        t.push(r);
    }
    let share = km_energy_share(&g, &u);
    t.note("T0", sci(t0));
    t.note("P1_over_P0_at_T0", sci(excited_ratio_closed_form(t0, &g, &u)?));
    t.note(
        "T_at_ratio_0.1_over_T0",
        sci(temperature_for_excited_ratio(0.1, &g, &u)? / t0),
    );
    t.note("E_K0_over_eps0", share.cm_over_epsilon0);
    t.note("E_k0_over_eps0", share.rel_over_epsilon0);
    t.note("E_K0_over_E00", share.cm_over_total);
    t.note("occupation_model", format!("{:?}", c.occupation));
    Ok(t)
}

pub fn cmd_force(c: &RunConfig) -> Result<ResultTable, CliError> {
    let (g, u) = (c.geometry()?, c.units()?);
    let f = zero_point_force(&g, &u)?;
    let t0 = characteristic_temperature(&g, &u);
    let cold = thermal_force(1e-3 * t0, &g, &u, Cutoff::Fixed(20), OccupationModel::RelativeOnly)?;
    let h = u.planck();
    let l = g.length();
    let mut t = ResultTable::new(
        "force",
        vec![
            col("L", "length"),
            col("d", "length"),
            col("F_closed", "force"),
            col("F_central_difference", "force"),
            col("relative_discrepancy", "1"),
            col("F_4h2_over_mL3", "force"),
            col("F_thermal_T_to_0", "force"),
        ],
    );
    t.push(vec![
        l.into(),
        g.half_length().into(),
        f.closed_form.into(),
        f.finite_difference.into(),
        f.relative_discrepancy().into(),
        (4.0 * h * h / (u.mass() * l * l * l)).into(),
        cold.mean.into(),
    ]);
    t.note("thermal_reference_T_over_T0", sci(1e-3));
    Ok(t)
}

pub fn cmd_compare(c: &RunConfig) -> Result<ResultTable, CliError> {
    let g = c.geometry()?;
    let cmp = spectrum_compare(c.n_max, c.cm_max);
    let mut t = ResultTable::new(
        "compare",
        vec![
            col("role", "-"),
            col("scheme", "-"),
            col("label", "-"),
            col("k1", "pi/L"),
            col("k2", "pi/L"),
            col("k1_value", "1/length"),
            col("k2_value", "1/length"),
            col("k_sq_sum", "(pi/L)^2"),
        ],
    );
    let row = |role: &str, p: &hcpair::analytic::MomentumPair| -> Vec<Cell> {
        vec![
            role.into(),
            p.scheme.label().into(),
            p.label.clone().into(),
            p.k1.to_string().into(),
            p.k2.to_string().into(),
            p.k1_value(&g).into(),
            p.k2_value(&g).into(),
            p.norm_sq().to_string().into(),
        ]
    };
    for scheme in [
        SpectrumScheme::MacroOrbital,
        SpectrumScheme::PlaneWaveInteger,
        SpectrumScheme::NonInteracting,
    ] {
        if let Some(p) = cmp.ground(scheme) {
            t.push(row("ground", p));
        }
    }
    for p in &cmp.rows {
        t.push(row("enumeration", p));
    }
    t.note("illustrative_only", cmp.illustrative_only);
    Ok(t)
}

/// The suite always runs at the default configuration so its bounds mean the same
/// thing on every invocation; only the injected fault is taken from the command line.
pub fn cmd_selftest(fault: Option<Fault>) -> Result<Report, CliError> {
    let cfg = SelftestConfig {
        fault,
        ..Default::default()
    };
    let report = run_selftest(&cfg)?;
    let mut t = ResultTable::new(
        "selftest",
        vec![
            col("criterion", "-"),
            col("check", "-"),
            col("measured", "1"),
            col("bound", "1"),
            col("kind", "-"),
            col("passed", "-"),
        ],
    );
    for ch in &report.checks {
        t.push(vec![
            u32::from(ch.criterion).into(),
            ch.name.into(),
            ch.measured.into(),
            ch.bound.into(),
            match ch.kind {
                BoundKind::AtMost => "at-most",
                BoundKind::AtLeast => "at-least",
            }
            .into(),
            ch.passed.into(),
        ]);
    }
    t.note(
        "suite_config",
        format!("L={} npoints={} A_ladder=1e1..1e6", cfg.length, cfg.npoints),
    );
    t.note("all_passed", report.all_passed());
    t.note("elapsed_seconds", format!("{:.3}", report.elapsed.as_secs_f64()));
    if let Some(f) = fault {
        t.note("injected_fault", format!("{f:?}"));
    }
    for (i, e) in report.errors.iter().enumerate() {
        t.note(format!("error.{i}"), e);
    }
    let failure = (!report.all_passed()).then(|| {
        let names: Vec<&str> = report.failures().map(|c| c.name).collect();
        CliError::SelftestFailed(names.join("; "))
    });
    Ok(Report { table: t, failure })
}
