//! Numerical checks of the disk and convex-domain inequalities, reported per input point
//! with signed margins.
//!
//! Every check runs in `f64`. Grid points are evaluated in parallel and reassembled in
//! input order, so reports are identical across runs and thread counts.

mod report;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use report::{Outcome, Param, Relation, Status, VerificationReport};

use crate::disk_solver::{alpha_star_upper_bound, DiskSolver, SpectralResult, THRESHOLD_TIE};
use crate::error::{Error, Result};
use crate::geometry::{avg_curvature, comparison_disks, matching_disk_radius, DomainSpec};
use crate::radial_oracle::{
    poincare_min, GroundState, Numerics, PoincareKind, RadialProblem, WeightSpec, MIN_TRUNCATION,
};
use crate::scalar::coth;
use crate::ESSENTIAL_BOTTOM;

const BOTTOM: f64 = ESSENTIAL_BOTTOM;

/// Radii sampled by the main-theorem check when every radius is admissible.
pub const UNRESTRICTED_RADII: [f64; 3] = [0.5, 1.0, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute slack for inequalities involving oracle or quadrature values.
    pub oracle: f64,
    /// Absolute slack for comparisons between closed-form values.
    pub closed_form: f64,
    /// Oracle-vs-closed-form agreement, relative to `max(1, |λ|)`.
    pub equivalence: f64,
    /// Largest accepted `min_rayleigh − ¼` at the final truncation.
    pub essential_gap: f64,
    /// Offset around `α⋆` for the classification flip.
    pub flip_offset: f64,
    /// How far below `α⋆(B_{R_perimeter})` the one-sided `α⋆` probe sits.
    pub probe_offset: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            oracle: 5e-4,
            closed_form: 1e-10,
            equivalence: 1e-4,
            essential_gap: 1e-3,
            flip_offset: 0.01,
            probe_offset: 0.1,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Verifier {
    pub numerics: Numerics<f64>,
    pub tolerances: Tolerances,
    pub solver: DiskSolver<f64>,
}

fn kind_name(r: &SpectralResult<f64>) -> &'static str {
    r.kind.as_str()
}

fn require_radii(radii: &[f64], strictly_increasing: bool) -> Result<()> {
    if radii.is_empty() {
        return Err(Error::Validation("radius list must be nonempty".into()));
    }
    if let Some(r) = radii.iter().find(|r| !(**r > 0.0) || !r.is_finite()) {
        return Err(Error::Validation(format!("radii must be positive and finite, got {r}")));
    }
    if strictly_increasing && radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Validation(format!("radii must be strictly increasing, got {radii:?}")));
    }
    Ok(())
}

impl Verifier {
    pub fn new(numerics: Numerics<f64>, tolerances: Tolerances) -> Self {
        Self {
            numerics,
            tolerances,
            solver: DiskSolver::default(),
        }
    }

    fn disk(&self, alpha: f64, r: f64) -> Result<SpectralResult<f64>> {
        self.solver.lambda1(alpha, r)
    }

    /// Discrete minimum for the disk weight `sinh(t + R)`.
    pub fn oracle_disk(&self, alpha: f64, r: f64) -> Result<f64> {
        Ok(RadialProblem::new(WeightSpec::sinh_shift(r), alpha, self.numerics).solve()?.value)
    }

    /// `UB(Ω)`: discrete minimum for the Steiner weight `c_Ω sinh t + cosh t`.
    pub fn upper_bound(&self, c: f64, alpha: f64) -> Result<f64> {
        Ok(RadialProblem::new(WeightSpec::steiner(c), alpha, self.numerics).solve()?.value)
    }

    fn gate(&self, alpha: f64, r: f64, lambda: f64) -> Result<Outcome> {
        let oracle = self.oracle_disk(alpha, r)?;
        let tol = self.tolerances.equivalence * lambda.abs().max(1.0);
        Ok(Outcome::compare(
            "gate_oracle_equivalence",
            &[("R", r)],
            Relation::Eq,
            oracle,
            lambda,
            tol,
        ))
    }

    /// `λ₁` decreases strictly in `R` while discrete; equal (`¼`) where both radii are
    /// above threshold; `α⋆` is nondecreasing.
    pub fn radius_monotonicity(&self, alpha: f64, radii: &[f64]) -> Result<VerificationReport> {
        require_radii(radii, true)?;
        let tol = self.tolerances.closed_form;
        let values = radii
            .par_iter()
            .map(|&r| Ok((self.disk(alpha, r)?, self.solver.alpha_star(r)?)))
            .collect::<Result<Vec<_>>>()?;

        let mut report = VerificationReport::new("radius_monotonicity", tol)
            .input("alpha", alpha)
            .input("radii", radii);
        report.note(format!(
            "kinds: {}",
            radii
                .iter()
                .zip(&values)
                .map(|(r, (l, _))| format!("R={r}:{}", kind_name(l)))
                .collect::<Vec<_>>()
                .join(" ")
        ));
        for i in 0..radii.len() - 1 {
            let (r0, r1) = (radii[i], radii[i + 1]);
            let ((l0, a0), (l1, a1)) = (&values[i], &values[i + 1]);
            let point = [("R", r0), ("R_next", r1)];
            let outcome = if !l0.is_discrete() && !l1.is_discrete() {
                Outcome::compare("lambda_equal_above_threshold", &point, Relation::Eq, l1.lambda, l0.lambda, tol)
            } else {
                let o = Outcome::compare("lambda_strictly_decreasing", &point, Relation::Lt, l1.lambda, l0.lambda, tol);
                if l0.is_discrete() && !l1.is_discrete() {
                    o.with_note("discrete at the smaller radius but not at the larger one")
                } else {
                    o
                }
            };
            report.push(outcome);
            report.push(Outcome::compare("alpha_star_nondecreasing", &point, Relation::Le, *a0, *a1, tol));
        }
        Ok(report.finish())
    }

    /// Chain `UB(Ω) ≤ g(c_Ω) ≤ g(coth R) = λ₁(B_R)` for admissible radii `coth R ≥ c_Ω`.
    ///
    /// Without explicit `radii` the sample is the threshold radius `arcoth c_Ω` with its
    /// halves and quarters, or [`UNRESTRICTED_RADII`] when `c_Ω ≤ 1`. Radii above the
    /// threshold are reported as skipped.
    pub fn main_theorem(&self, spec: &DomainSpec<f64>, alpha: f64, radii: Option<&[f64]>) -> Result<VerificationReport> {
        let c = avg_curvature(spec)?;
        let threshold = matching_disk_radius(spec)?;
        let min_r = self.solver.min_radius();
        let sample: Vec<f64> = match (radii, threshold) {
            (Some(r), _) => {
                require_radii(r, false)?;
                r.to_vec()
            }
            (None, Some(t)) => [t, 0.5 * t, 0.25 * t].into_iter().filter(|&r| r >= min_r).collect(),
            (None, None) => UNRESTRICTED_RADII.to_vec(),
        };
        if sample.is_empty() {
            return Err(Error::Validation(format!(
                "no admissible radius to sample for averaged curvature {c}"
            )));
        }
        let tol = self.tolerances.oracle;
        let ub = self.upper_bound(c, alpha)?;

        let per_radius = sample
            .par_iter()
            .map(|&r| self.chain_at(c, alpha, r, ub, threshold))
            .collect::<Result<Vec<_>>>()?;

        let mut report = VerificationReport::new("main_theorem", tol)
            .input("perimeter", spec.perimeter)
            .input("area", spec.area)
            .input("alpha", alpha)
            .input("avg_curvature", c)
            .input("radii", sample.as_slice())
            .input("upper_bound", ub);
        if let Some(t) = threshold {
            report = report.input("threshold_radius", t);
        }
        report.note("UB(Ω) is the certified upper bound on λ₁(Ω^ext) from the main-theorem proof");
        report.extend(per_radius.into_iter().flatten());
        if report.outcomes.iter().all(|o| o.status == Status::Skipped) {
            report.note("every sampled radius violates the hypothesis; the check is vacuous");
        }
        Ok(report.finish())
    }

    fn chain_at(&self, c: f64, alpha: f64, r: f64, ub: f64, threshold: Option<f64>) -> Result<Vec<Outcome>> {
        let tol = self.tolerances.oracle;
        let point = [("R", r)];
        let coth_r = coth(r);
        if threshold.is_some_and(|t| r > t) && coth_r < c - THRESHOLD_TIE {
            return Ok(vec![Outcome::skipped(
                "chain",
                &point,
                format!("hypothesis not satisfied: coth R = {coth_r} < {c}"),
            )]);
        }
        let disk = self.disk(alpha, r)?;
        let nu = match disk.nu {
            Some(nu) => nu,
            None => {
                // no ground state: compare with the same discretisation of the disk problem
                let oracle = self.oracle_disk(alpha, r)?;
                return Ok(vec![Outcome::compare("ub_le_disk_above_threshold", &point, Relation::Le, ub, oracle, tol)
                    .with_note("α ≥ α⋆(R): λ₁(B_R) = ¼, compared at equal truncation")]);
            }
        };
        let gate = self.gate(alpha, r, disk.lambda)?;
        if gate.failed() {
            return Ok(vec![
                gate,
                Outcome::skipped("chain", &point, "oracle gate failed; theorem links not evaluated"),
            ]);
        }
        let gs = GroundState::new(nu, r, self.numerics.truncation)?;
        let g_c = gs.quotient(c, alpha);
        let g_disk = gs.quotient(coth_r, alpha);
        Ok(vec![
            gate,
            Outcome::compare("ub_le_groundstate_quotient", &point, Relation::Le, ub, g_c, tol),
            Outcome::compare("groundstate_quotient_monotone", &point, Relation::Le, g_c, g_disk, tol),
            Outcome::compare("groundstate_quotient_equals_disk", &point, Relation::Eq, g_disk, disk.lambda, tol),
        ])
    }

    /// `UB(Ω) ≤ λ₁(B_{R_perimeter}) ≤ λ₁(B_{R_area})`, plus one-sided evidence for
    /// `α⋆(Ω^ext) ≥ α⋆(B_{R_perimeter})`.
    pub fn corollaries(&self, spec: &DomainSpec<f64>, alpha: f64) -> Result<VerificationReport> {
        let c = avg_curvature(spec)?;
        let disks = comparison_disks(spec)?;
        let (ra, rp) = (disks.area_radius, disks.perimeter_radius);
        let tol = self.tolerances.oracle;
        let ub = self.upper_bound(c, alpha)?;
        let lp = self.disk(alpha, rp)?;
        let la = self.disk(alpha, ra)?;
        let star_p = self.solver.alpha_star(rp)?;
        let star_a = self.solver.alpha_star(ra)?;

        let mut report = VerificationReport::new("corollaries", tol)
            .input("perimeter", spec.perimeter)
            .input("area", spec.area)
            .input("alpha", alpha)
            .input("area_radius", ra)
            .input("perimeter_radius", rp)
            .input("upper_bound", ub);
        let point = [("R_area", ra), ("R_perimeter", rp)];

        if lp.is_discrete() {
            let gate = self.gate(alpha, rp, lp.lambda)?;
            let failed = gate.failed();
            report.push(gate);
            if failed {
                report.push(Outcome::skipped("ub_le_perimeter_disk", &point, "oracle gate failed"));
            } else {
                report.push(Outcome::compare("ub_le_perimeter_disk", &point, Relation::Le, ub, lp.lambda, tol));
            }
        } else {
            let oracle = self.oracle_disk(alpha, rp)?;
            report.push(
                Outcome::compare("ub_le_perimeter_disk", &point, Relation::Le, ub, oracle, tol)
                    .with_note("α ≥ α⋆(R_perimeter): compared at equal truncation"),
            );
        }
        report.push(Outcome::compare(
            "perimeter_disk_le_area_disk",
            &point,
            Relation::Le,
            lp.lambda,
            la.lambda,
            self.tolerances.closed_form,
        ));
        report.push(Outcome::compare(
            "alpha_star_area_le_perimeter",
            &point,
            Relation::Le,
            star_a,
            star_p,
            self.tolerances.closed_form,
        ));

        let probe = star_p - self.tolerances.probe_offset;
        let ub_probe = self.upper_bound(c, probe)?;
        report.push(
            Outcome::compare("alpha_star_one_sided_evidence", &[("alpha_probe", probe)], Relation::Lt, ub_probe, BOTTOM, 0.0)
                .with_note("UB(Ω) < ¼ below α⋆(B_{R_perimeter}); α⋆(Ω^ext) itself is not computed, so this is one-sided"),
        );
        Ok(report.finish())
    }

    /// `α⋆(B_R) < 0`, `α⋆ ≤ ½(e^{−R} − coth R)`, `α⋆` nondecreasing in `R`, and the spectral
    /// kind flips across `α⋆ ± flip_offset`.
    pub fn alpha_star_bounds(&self, radii: &[f64]) -> Result<VerificationReport> {
        require_radii(radii, false)?;
        let tol = self.tolerances.closed_form;
        let off = self.tolerances.flip_offset;
        let rows = radii
            .par_iter()
            .map(|&r| {
                let star = self.solver.alpha_star(r)?;
                let below = self.disk(star - off, r)?;
                let above = self.disk(star + off, r)?;
                Ok((r, star, below, above))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut report = VerificationReport::new("alpha_star_bounds", tol).input("radii", radii);
        report.note("at α = α⋆ exactly the result is classified essential_bottom (convention)");
        for (r, star, below, above) in &rows {
            let point = [("R", *r)];
            report.push(Outcome::compare("alpha_star_negative", &point, Relation::Lt, *star, 0.0, tol));
            report.push(Outcome::compare(
                "alpha_star_le_upper_bound",
                &point,
                Relation::Le,
                *star,
                alpha_star_upper_bound(*r),
                tol,
            ));
            report.push(Outcome::flag(
                "discrete_below_alpha_star",
                &point,
                below.is_discrete(),
                format!("α⋆ − {off}: {}", kind_name(below)),
            ));
            report.push(Outcome::flag(
                "essential_above_alpha_star",
                &point,
                !above.is_discrete(),
                format!("α⋆ + {off}: {}", kind_name(above)),
            ));
        }
        let mut sorted: Vec<(f64, f64)> = rows.iter().map(|(r, s, _, _)| (*r, *s)).collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in sorted.windows(2) {
            report.push(Outcome::compare(
                "alpha_star_nondecreasing",
                &[("R", w[0].0), ("R_next", w[1].0)],
                Relation::Le,
                w[0].1,
                w[1].1,
                tol,
            ));
        }
        Ok(report.finish())
    }

    /// Dirichlet-truncated minima at increasing `T` decrease toward `¼` and end within
    /// `essential_gap` of it.
    pub fn essential_bottom(&self, alpha: f64, r: f64, truncations: &[f64]) -> Result<VerificationReport> {
        let star = self.solver.alpha_star(r)?;
        if alpha < star - THRESHOLD_TIE {
            return Err(Error::Validation(format!(
                "essential-bottom check needs α ≥ α⋆(R) = {star}, got {alpha}"
            )));
        }
        if truncations.is_empty() {
            return Err(Error::Validation("truncation list must be nonempty".into()));
        }
        if truncations.windows(2).any(|w| w[0] >= w[1]) || truncations[0] < MIN_TRUNCATION {
            return Err(Error::Validation(format!(
                "truncations must be strictly increasing and at least {MIN_TRUNCATION}, got {truncations:?}"
            )));
        }
        let values = truncations
            .par_iter()
            .map(|&t| {
                let numerics = self.numerics.with_truncation(t);
                Ok(RadialProblem::new(WeightSpec::sinh_shift(r), alpha, numerics).solve()?.value)
            })
            .collect::<Result<Vec<_>>>()?;

        let tol = self.tolerances.oracle;
        let mut report = VerificationReport::new("essential_bottom", tol)
            .input("alpha", alpha)
            .input("R", r)
            .input("truncations", truncations);
        for (t, v) in truncations.iter().zip(&values) {
            report.push(Outcome::compare("not_below_bottom", &[("T", *t)], Relation::Le, BOTTOM, *v, tol));
        }
        for (w, v) in truncations.windows(2).zip(values.windows(2)) {
            report.push(Outcome::compare(
                "nonincreasing_in_truncation",
                &[("T", w[0]), ("T_next", w[1])],
                Relation::Le,
                v[1],
                v[0],
                self.tolerances.closed_form,
            ));
        }
        let (t_last, v_last) = (truncations[truncations.len() - 1], values[values.len() - 1]);
        report.push(Outcome::compare(
            "final_gap",
            &[("T", t_last)],
            Relation::Le,
            v_last - BOTTOM,
            self.tolerances.essential_gap,
            0.0,
        ));
        Ok(report.finish())
    }

    /// Oracle against closed form on an `(α, R)` grid; points with `α ≥ α⋆(R)` are skipped.
    pub fn oracle_equivalence(&self, alphas: &[f64], radii: &[f64]) -> Result<VerificationReport> {
        require_radii(radii, false)?;
        if alphas.is_empty() {
            return Err(Error::Validation("alpha list must be nonempty".into()));
        }
        let grid: Vec<(f64, f64)> = alphas.iter().flat_map(|&a| radii.iter().map(move |&r| (a, r))).collect();
        let outcomes = grid
            .par_iter()
            .map(|&(alpha, r)| {
                let point = [("alpha", alpha), ("R", r)];
                let disk = self.disk(alpha, r)?;
                if !disk.is_discrete() {
                    return Ok(Outcome::skipped("oracle_equivalence", &point, "α ≥ α⋆(R): no discrete eigenvalue"));
                }
                let oracle = self.oracle_disk(alpha, r)?;
                let tol = self.tolerances.equivalence * disk.lambda.abs().max(1.0);
                Ok(Outcome::compare("oracle_equivalence", &point, Relation::Eq, oracle, disk.lambda, tol))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut report = VerificationReport::new("oracle_equivalence", self.tolerances.equivalence)
            .input("alphas", alphas)
            .input("radii", radii);
        report.note("tolerance is relative to max(1, |λ|)");
        report.extend(outcomes);
        Ok(report.finish())
    }

    /// Poincaré-type minima at each lemma's threshold parameter stay at or above `¼`.
    ///
    /// `b = 0` is evaluated for the cosh weight only. The value at threshold − 0.1 is
    /// recorded in the note without being asserted.
    pub fn poincare(&self, bs: &[f64]) -> Result<VerificationReport> {
        if bs.is_empty() || bs.iter().any(|b| !(*b >= 0.0) || !b.is_finite()) {
            return Err(Error::Validation(format!("b values must be nonnegative and finite, got {bs:?}")));
        }
        let grid: Vec<(PoincareKind, f64)> = PoincareKind::ALL
            .iter()
            .flat_map(|&k| bs.iter().map(move |&b| (k, b)))
            .filter(|&(k, b)| b > 0.0 || k == PoincareKind::Cosh)
            .collect();
        let tol = self.tolerances.oracle;
        let outcomes = grid
            .par_iter()
            .map(|&(kind, b)| {
                let alpha = kind.threshold(b);
                let at = poincare_min(kind, b, alpha, self.numerics)?.value;
                let below = poincare_min(kind, b, alpha - 0.1, self.numerics)?.value;
                Ok(
                    Outcome::compare(&format!("poincare_{}", kind.as_str()), &[("b", b), ("alpha", alpha)], Relation::Le, BOTTOM, at, tol)
                        .with_note(format!("threshold − 0.1 gives {below:.9}")),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let mut report = VerificationReport::new("poincare", tol).input("b", bs);
        report.extend(outcomes);
        Ok(report.finish())
    }
}

/// Free-function forms with default numerics and tolerances.
pub fn verify_radius_monotonicity(alpha: f64, radii: &[f64], numerics: Numerics<f64>) -> Result<VerificationReport> {
    Verifier::new(numerics, Tolerances::default()).radius_monotonicity(alpha, radii)
}

pub fn verify_main_theorem(spec: &DomainSpec<f64>, alpha: f64, numerics: Numerics<f64>) -> Result<VerificationReport> {
    Verifier::new(numerics, Tolerances::default()).main_theorem(spec, alpha, None)
}

pub fn verify_corollaries(spec: &DomainSpec<f64>, alpha: f64, numerics: Numerics<f64>) -> Result<VerificationReport> {
    Verifier::new(numerics, Tolerances::default()).corollaries(spec, alpha)
}

pub fn verify_alpha_star_bounds(radii: &[f64], numerics: Numerics<f64>) -> Result<VerificationReport> {
    Verifier::new(numerics, Tolerances::default()).alpha_star_bounds(radii)
}

pub fn verify_essential_bottom(alpha: f64, r: f64, truncations: &[f64], numerics: Numerics<f64>) -> Result<VerificationReport> {
    Verifier::new(numerics, Tolerances::default()).essential_bottom(alpha, r, truncations)
}
