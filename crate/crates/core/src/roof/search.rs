//! Derivative-free local search over isometry tableaux.
//!
//! A tableau `V` is an `m×r` matrix with orthonormal columns. It maps the
//! eigen-ensemble `{√μ_j |e_j⟩}` of a density operator to the unnormalized
//! decomposition `|w_x⟩ = Σ_j V_{xj} √μ_j |e_j⟩`, and every pure-state
//! decomposition with `m` members arises this way.
//!
//! Moves are Givens rotations between two rows of `V`, which act on exactly
//! two members of the decomposition. Every sweep with accepted moves ends
//! with a Gram-Schmidt retraction of the columns.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Column-orthonormal `rows × cols` matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Tableau {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// The two one-parameter rotation families on a pair of rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotationKind {
    /// `[[c, -s], [s, c]]`
    Real,
    /// `[[c, is], [is, c]]`
    Imaginary,
}

impl Tableau {
    /// The first `cols` columns of the `rows×rows` identity.
    pub fn identity(rows: usize, cols: usize) -> Result<Self> {
        if cols == 0 || rows < cols {
            return Err(argument(format!("a {rows}x{cols} tableau cannot have orthonormal columns")));
        }
        let mut data = vec![ZERO; rows * cols];
        for j in 0..cols {
            data[j * cols + j] = Complex64::new(1.0, 0.0);
        }
        Ok(Self { rows, cols, data })
    }

    /// Standard-normal complex entries followed by column orthonormalization.
    pub fn random<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Result<Self> {
        let mut t = Self::identity(rows, cols)?;
        for z in t.data.iter_mut() {
            *z = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        }
        t.retract();
        Ok(t)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, x: usize, j: usize) -> Complex64 {
        self.data[x * self.cols + j]
    }

    /// Largest entrywise deviation of `V†V` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..self.cols {
            for b in a..self.cols {
                let g: Complex64 = (0..self.rows).map(|x| self.entry(x, a).conj() * self.entry(x, b)).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }

    /// Re-orthonormalizes the columns (modified Gram-Schmidt, two passes).
    pub fn retract(&mut self) {
        let (m, r) = (self.rows, self.cols);
        for _ in 0..2 {
            for j in 0..r {
                for k in 0..j {
                    let proj: Complex64 = (0..m).map(|x| self.data[x * r + k].conj() * self.data[x * r + j]).sum();
                    for x in 0..m {
                        let sub = self.data[x * r + k] * proj;
                        self.data[x * r + j] -= sub;
                    }
                }
                let norm = (0..m).map(|x| self.data[x * r + j].norm_sqr()).sum::<f64>().sqrt();
                for x in 0..m {
                    self.data[x * r + j] /= norm;
                }
            }
        }
    }

    /// Left-multiplies by a Givens rotation acting on rows `x` and `y`.
    pub fn rotate(&mut self, x: usize, y: usize, kind: RotationKind, angle: f64) {
        let r = self.cols;
        for j in 0..r {
            let (a, b) = (self.data[x * r + j], self.data[y * r + j]);
            let (na, nb) = mix(a, b, kind, angle);
            self.data[x * r + j] = na;
            self.data[y * r + j] = nb;
        }
    }
}

fn mix(a: Complex64, b: Complex64, kind: RotationKind, angle: f64) -> (Complex64, Complex64) {
    let (s, c) = angle.sin_cos();
    match kind {
        RotationKind::Real => (a * c - b * s, a * s + b * c),
        RotationKind::Imaginary => {
            let is = Complex64::new(0.0, s);
            (a * c + b * is, a * is + b * c)
        }
    }
}

/// Tunables for one local search run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchSettings {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_iterations: usize,
    /// Converged once the last `stall_window` accepted steps improved by less than `stall_tol` in total.
    pub stall_window: usize,
    pub stall_tol: f64,
    /// Objectives at or below this are final; tangles are nonnegative.
    pub objective_floor: f64,
}

impl Default for SearchSettings {
    fn default() -> Self {
        Self {
            initial_step: 0.4,
            min_step: 1e-7,
            max_iterations: 5000,
            stall_window: 50,
            stall_tol: 1e-10,
            objective_floor: 1e-12,
        }
    }
}

/// Result of one poll sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepOutcome {
    pub objective: f64,
    pub accepted: usize,
    pub step_size: f64,
    pub converged: bool,
}

/// Pattern-search state for one decomposition size.
pub struct TableauSearch<'a> {
    tableau: Tableau,
    /// `√μ_j |e_j⟩`, one row per eigenvector.
    basis: &'a [Vec<Complex64>],
    tangle: &'a (dyn Fn(&[Complex64]) -> Result<f64> + Sync),
    members: Vec<Vec<Complex64>>,
    contributions: Vec<f64>,
    objective: f64,
    step: f64,
    settings: SearchSettings,
    recent_gains: Vec<f64>,
    iterations: usize,
    converged: bool,
}

/// `p · τ(w/√p)` for an unnormalized member `w` with `p = ‖w‖²`.
fn weighted_tangle(
    tangle: &(dyn Fn(&[Complex64]) -> Result<f64> + Sync),
    member: &[Complex64],
    scratch: &mut Vec<Complex64>,
) -> Result<f64> {
    let p: f64 = member.iter().map(|z| z.norm_sqr()).sum();
    if p < 1e-300 {
        return Ok(0.0);
    }
    let inv = 1.0 / p.sqrt();
    scratch.clear();
    scratch.extend(member.iter().map(|z| z * inv));
    let t = tangle(scratch)?;
    if !t.is_finite() {
        return Err(Error::Numeric(format!("tangle functional returned {t}")));
    }
    Ok(p * t)
}

impl<'a> TableauSearch<'a> {
    pub fn new(
        tableau: Tableau,
        basis: &'a [Vec<Complex64>],
        tangle: &'a (dyn Fn(&[Complex64]) -> Result<f64> + Sync),
        settings: SearchSettings,
    ) -> Result<Self> {
        if tableau.cols() != basis.len() {
            return Err(argument("tableau columns must match the ensemble rank"));
        }
        let step = settings.initial_step;
        let mut search = Self {
            tableau,
            basis,
            tangle,
            members: Vec::new(),
            contributions: Vec::new(),
            objective: 0.0,
            step,
            settings,
            recent_gains: Vec::new(),
            iterations: 0,
            converged: false,
        };
        search.rebuild()?;
        if search.tableau.rows() < 2 || search.objective <= search.settings.objective_floor {
            search.converged = true;
        }
        Ok(search)
    }

    /// Recomputes every member and contribution from the tableau.
    fn rebuild(&mut self) -> Result<()> {
        let dim = self.basis[0].len();
        let (m, r) = (self.tableau.rows(), self.tableau.cols());
        self.members = (0..m)
            .map(|x| {
                let mut w = vec![ZERO; dim];
                for j in 0..r {
                    let v = self.tableau.entry(x, j);
                    if v == ZERO {
                        continue;
                    }
                    for (wi, bi) in w.iter_mut().zip(&self.basis[j]) {
                        *wi += v * bi;
                    }
                }
                w
            })
            .collect();
        let mut scratch = Vec::with_capacity(dim);
        self.contributions =
            self.members.iter().map(|w| weighted_tangle(self.tangle, w, &mut scratch)).collect::<Result<_>>()?;
        self.objective = self.contributions.iter().sum();
        if !self.objective.is_finite() {
            return Err(Error::Numeric("objective is not finite".into()));
        }
        Ok(())
    }

    pub fn objective(&self) -> f64 {
        self.objective
    }

    pub fn tableau(&self) -> &Tableau {
        &self.tableau
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn is_converged(&self) -> bool {
        self.converged
    }

    /// One sweep over every rotation generator at the current step size.
    /// Accepts improving moves as they are found; halves the step after a
    /// sweep without any improvement.
    pub fn step(&mut self) -> Result<StepOutcome> {
        if self.converged {
            return Ok(self.outcome(0));
        }
        let m = self.tableau.rows();
        let dim = self.basis[0].len();
        let mut scratch = Vec::with_capacity(dim);
        let mut wx = vec![ZERO; dim];
        let mut wy = vec![ZERO; dim];
        let mut accepted = 0;
        for x in 0..m {
            for y in x + 1..m {
                for kind in [RotationKind::Real, RotationKind::Imaginary] {
                    for sign in [1.0, -1.0] {
                        let angle = sign * self.step;
                        for k in 0..dim {
                            (wx[k], wy[k]) = mix(self.members[x][k], self.members[y][k], kind, angle);
                        }
                        let tx = weighted_tangle(self.tangle, &wx, &mut scratch)?;
                        let ty = weighted_tangle(self.tangle, &wy, &mut scratch)?;
                        let before = self.contributions[x] + self.contributions[y];
                        let gain = before - (tx + ty);
                        if gain > 1e-15 {
                            self.tableau.rotate(x, y, kind, angle);
                            std::mem::swap(&mut self.members[x], &mut wx);
                            std::mem::swap(&mut self.members[y], &mut wy);
                            self.contributions[x] = tx;
                            self.contributions[y] = ty;
                            self.objective -= gain;
                            self.recent_gains.push(gain);
                            accepted += 1;
                            break;
                        }
                    }
                }
            }
        }
        self.iterations += 1;
        if accepted == 0 {
            self.step *= 0.5;
        } else {
            // Givens rotations are unitary up to round-off; retract once per
            // sweep and resynchronize the members with the result.
            self.tableau.retract();
            self.rebuild()?;
        }
        let window = self.settings.stall_window;
        if self.recent_gains.len() > window {
            let excess = self.recent_gains.len() - window;
            self.recent_gains.drain(..excess);
        }
        let stalled =
            self.recent_gains.len() == window && self.recent_gains.iter().sum::<f64>() < self.settings.stall_tol;
        if self.step < self.settings.min_step || stalled || self.objective <= self.settings.objective_floor {
            self.converged = true;
        }
        Ok(self.outcome(accepted))
    }

    fn outcome(&self, accepted: usize) -> StepOutcome {
        StepOutcome { objective: self.objective, accepted, step_size: self.step, converged: self.converged }
    }

    /// Steps until converged or the iteration cap is hit.
    pub fn run(&mut self) -> Result<f64> {
        while !self.converged && self.iterations < self.settings.max_iterations {
            self.step()?;
        }
        Ok(self.objective)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_and_random_are_orthonormal() {
        assert_eq!(Tableau::identity(4, 2).unwrap().orthonormality_defect(), 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = Tableau::random(6, 3, &mut rng).unwrap();
        assert!(t.orthonormality_defect() < 1e-14);
        assert!(Tableau::identity(2, 3).is_err());
        assert!(Tableau::identity(2, 0).is_err());
    }

    #[test]
    fn repeated_retractions_stay_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut t = Tableau::random(5, 3, &mut rng).unwrap();
        for _ in 0..10_000 {
            let x = rng.random_range(0..5);
            let y = (x + rng.random_range(1..5)) % 5;
            let kind = if rng.random::<bool>() { RotationKind::Real } else { RotationKind::Imaginary };
            t.rotate(x, y, kind, rng.random_range(-1.0..1.0));
            t.retract();
        }
        assert!(t.orthonormality_defect() < 1e-10);
    }

    #[test]
    fn rank_one_identity_start_is_already_optimal() {
        let basis = vec![vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]];
        let f = |a: &[Complex64]| Ok(a[0].norm_sqr());
        let mut s =
            TableauSearch::new(Tableau::identity(1, 1).unwrap(), &basis, &f, SearchSettings::default()).unwrap();
        let before = s.objective();
        let out = s.step().unwrap();
        assert!(out.converged);
        assert_eq!(out.objective, before);
    }

    #[test]
    fn non_finite_objective_is_an_error() {
        let basis = vec![vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]];
        let f = |_: &[Complex64]| Ok(f64::NAN);
        let r = TableauSearch::new(Tableau::identity(2, 1).unwrap(), &basis, &f, SearchSettings::default());
        assert!(matches!(r, Err(Error::Numeric(_))));
    }
}
