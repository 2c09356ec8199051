//! Compass pattern search with a shrinking step, the derivative-free
//! refinement used by every estimator in the crate. Norms here may be
//! non-smooth (polytope gauges), so nothing assumes gradients.

/// Step schedule: probe at `initial`, halve on a failed sweep, stop below
/// `floor`.
#[derive(Debug, Clone, Copy)]
pub struct StepSchedule {
    pub initial: f64,
    pub shrink: f64,
    pub floor: f64,
}

impl StepSchedule {
    /// Schedule used by the defect/James estimators and distortion search.
    pub fn standard() -> Self {
        StepSchedule {
            initial: 0.1,
            shrink: 0.5,
            floor: 1e-9,
        }
    }

    /// Deeper floor for orthogonality searches, where the residual of the
    /// returned point (not just its objective value) must be driven down.
    pub fn fine() -> Self {
        StepSchedule {
            initial: 0.1,
            shrink: 0.5,
            floor: 1e-12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Refined {
    pub point: Vec<f64>,
    pub value: f64,
    /// Accepted moves (probe sweeps that improved the incumbent).
    pub moves: usize,
}

const MAX_MOVES: usize = 200_000;

/// Maximize `objective` from `start`, probing +/- step along each coordinate
/// and re-projecting candidates with `project` (e.g. renormalization).
/// Deterministic: probes are visited in a fixed order and only strict
/// improvements move the incumbent.
pub fn maximize<F, P>(objective: F, project: P, start: &[f64], schedule: &StepSchedule) -> Refined
where
    F: Fn(&[f64]) -> f64,
    P: Fn(&mut [f64]),
{
    let mut point = start.to_vec();
    project(&mut point);
    let mut value = objective(&point);
    let mut step = schedule.initial;
    let mut moves = 0usize;

    while step >= schedule.floor && moves < MAX_MOVES {
        let mut best: Option<(Vec<f64>, f64)> = None;
        for i in 0..point.len() {
            for sign in [1.0, -1.0] {
                let mut cand = point.clone();
                cand[i] += sign * step;
                project(&mut cand);
                let v = objective(&cand);
                if v > value && best.as_ref().is_none_or(|(_, bv)| v > *bv) {
                    best = Some((cand, v));
                }
            }
        }
        match best {
            Some((cand, v)) => {
                point = cand;
                value = v;
                moves += 1;
            }
            None => step *= schedule.shrink,
        }
    }

    Refined {
        point,
        value,
        moves,
    }
}

/// Minimize `objective`; same protocol as [`maximize`].
pub fn minimize<F, P>(objective: F, project: P, start: &[f64], schedule: &StepSchedule) -> Refined
where
    F: Fn(&[f64]) -> f64,
    P: Fn(&mut [f64]),
{
    let mut refined = maximize(|x| -objective(x), project, start, schedule);
    refined.value = -refined.value;
    refined
}
