use std::fmt;

use super::{decision_for, evaluate, objective, CapacityState, Choice, Decision, Relaxation, Schedule};
use crate::model::{meets_thresholds, Mode, ProblemInstance};

/// The constraints of the assignment problem, labelled with the codes used
/// in diagnostics (`2a` .. `2f`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// Each request is served at most once.
    SingleAssignment,
    /// Provided accuracy meets the requested accuracy.
    Accuracy,
    /// Completion time meets the requested delay.
    Delay,
    /// Computation capacity of every server.
    Compute,
    /// Communication capacity of every covering server.
    Communication,
    /// Decisions are well formed: a hosted pair of the requested service,
    /// with a decision kind that matches the server.
    Integrality,
    /// Recorded values agree with the model.
    Consistency,
}

impl Constraint {
    pub fn code(self) -> &'static str {
        match self {
            Constraint::SingleAssignment => "2a",
            Constraint::Accuracy => "2b",
            Constraint::Delay => "2c",
            Constraint::Compute => "2d",
            Constraint::Communication => "2e",
            Constraint::Integrality => "2f",
            Constraint::Consistency => "consistency",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Constraint::SingleAssignment => "single assignment",
            Constraint::Accuracy => "accuracy threshold",
            Constraint::Delay => "delay threshold",
            Constraint::Compute => "computation capacity",
            Constraint::Communication => "communication capacity",
            Constraint::Integrality => "well-formed decision",
            Constraint::Consistency => "recorded values",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub constraint: Constraint,
    pub message: String,
}

impl Violation {
    fn new(constraint: Constraint, message: impl Into<String>) -> Self {
        Self { constraint, message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "constraint ({}) {} violated: {}",
            self.constraint.code(),
            self.constraint.describe(),
            self.message
        )
    }
}

impl std::error::Error for Violation {}

/// Checks a decision vector against every constraint, using the capacities
/// in `limits` (and its relaxation) as the capacity bounds.
pub fn check_choices(instance: &ProblemInstance, choices: &[Choice], limits: &CapacityState) -> Result<(), Violation> {
    use Constraint::*;

    if choices.len() != instance.n_requests() {
        return Err(Violation::new(
            SingleAssignment,
            format!("{} decisions for {} requests", choices.len(), instance.n_requests()),
        ));
    }
    let m = instance.servers.len();
    let mut compute = vec![0u64; m];
    let mut comm = vec![0u64; m];
    for (i, choice) in choices.iter().enumerate() {
        let Some((j, pair)) = *choice else { continue };
        let req = &instance.requests[i];
        let Some(server) = instance.servers.get(j) else {
            return Err(Violation::new(Integrality, format!("request {i} sent to unknown server {j}")));
        };
        if pair.service != req.service || !server.hosts(pair) {
            return Err(Violation::new(
                Integrality,
                format!("request {i} (service {}) served with {pair} which server {j} does not offer", req.service),
            ));
        }
        let Some((a, c, _)) = evaluate(instance, i, j, pair) else {
            return Err(Violation::new(Integrality, format!("request {i}: no route to server {j}")));
        };
        if instance.mode == Mode::Strict {
            if a < req.min_accuracy {
                return Err(Violation::new(
                    Accuracy,
                    format!("request {i}: accuracy {a} below requested {}", req.min_accuracy),
                ));
            }
            if c > req.max_completion_ms {
                return Err(Violation::new(
                    Delay,
                    format!("request {i}: completion {c} ms exceeds requested {} ms", req.max_completion_ms),
                ));
            }
        }
        compute[j] += u64::from(instance.catalog.compute_cost(pair));
        if j != req.covering_server {
            comm[req.covering_server] += u64::from(instance.catalog.comm_cost(pair));
        }
    }
    let relax = limits.relaxation();
    for j in 0..m {
        if !relax.compute && compute[j] > u64::from(limits.remaining_compute(j)) {
            return Err(Violation::new(
                Compute,
                format!("server {j} uses {} of {} compute units", compute[j], limits.remaining_compute(j)),
            ));
        }
        if !relax.comm && comm[j] > u64::from(limits.remaining_comm(j)) {
            return Err(Violation::new(
                Communication,
                format!("server {j} forwards {} of {} comm units", comm[j], limits.remaining_comm(j)),
            ));
        }
    }
    Ok(())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

/// Re-checks a schedule against the instance: every constraint except the
/// relaxed ones, plus agreement of the recorded accuracy, completion time,
/// satisfaction, objective and satisfied count with the model.
pub fn validate(instance: &ProblemInstance, schedule: &Schedule, relax: Relaxation) -> Result<(), Violation> {
    use Constraint::*;

    let n = instance.n_requests();
    if schedule.assignments.len() != n {
        return Err(Violation::new(
            SingleAssignment,
            format!("{} assignments for {n} requests", schedule.assignments.len()),
        ));
    }
    let mut seen = vec![false; n];
    for a in &schedule.assignments {
        if a.request >= n {
            return Err(Violation::new(SingleAssignment, format!("assignment for unknown request {}", a.request)));
        }
        if std::mem::replace(&mut seen[a.request], true) {
            return Err(Violation::new(SingleAssignment, format!("request {} is assigned twice", a.request)));
        }
    }

    let mut choices: Vec<Choice> = vec![None; n];
    let mut satisfied = 0;
    for a in &schedule.assignments {
        let i = a.request;
        match (a.decision, a.server, a.model) {
            (Decision::Drop, None, None) => {}
            (Decision::Drop, _, _) => {
                return Err(Violation::new(Integrality, format!("dropped request {i} names a server or model")))
            }
            (d, Some(j), Some(pair)) => {
                if j >= instance.servers.len() {
                    return Err(Violation::new(Integrality, format!("request {i} sent to unknown server {j}")));
                }
                if d != decision_for(instance, i, j) {
                    return Err(Violation::new(
                        Integrality,
                        format!("request {i}: decision {d:?} does not match server {j}"),
                    ));
                }
                choices[i] = Some((j, pair));
            }
            _ => {
                return Err(Violation::new(
                    Integrality,
                    format!("request {i} is served without both a server and a model"),
                ))
            }
        }
    }

    check_choices(instance, &choices, &CapacityState::new(instance).relaxed(relax))?;

    for a in &schedule.assignments {
        let Some((j, pair)) = choices[a.request] else {
            if a.us != 0.0 {
                return Err(Violation::new(Consistency, format!("dropped request {} carries satisfaction {}", a.request, a.us)));
            }
            continue;
        };
        let (acc, c, us) = evaluate(instance, a.request, j, pair).expect("checked above");
        if !(close(acc, a.accuracy) && close(c, a.completion_ms) && close(us, a.us)) {
            return Err(Violation::new(
                Consistency,
                format!(
                    "request {}: recorded (accuracy {}, completion {}, us {}) but the model gives ({acc}, {c}, {us})",
                    a.request, a.accuracy, a.completion_ms, a.us
                ),
            ));
        }
        if meets_thresholds(&instance.requests[a.request], acc, c) {
            satisfied += 1;
        }
    }

    let mut by_request: Vec<Option<f64>> = vec![None; n];
    for a in &schedule.assignments {
        if !a.is_drop() {
            by_request[a.request] = Some(a.us);
        }
    }
    let expected = objective(instance, by_request);
    if !close(expected, schedule.objective) {
        return Err(Violation::new(
            Consistency,
            format!("objective {} but the assignments give {expected}", schedule.objective),
        ));
    }
    if satisfied != schedule.satisfied_count {
        return Err(Violation::new(
            Consistency,
            format!("satisfied_count {} but {satisfied} requests meet their thresholds", schedule.satisfied_count),
        ));
    }
    Ok(())
}
