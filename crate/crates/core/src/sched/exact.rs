use super::{evaluate, greedy_with, objective, CapacityState, Choice, Schedule, Scope};
use crate::error::{Error, Result};
use crate::model::{Mode, ProblemInstance, ServiceModel};

/// Size guard and search budget for [`exact_solve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    /// Refuse instances with more than this many `|N|·|M|·|L|` variables.
    pub max_variables: usize,
    /// Give up after expanding this many search nodes.
    pub node_limit: u64,
}

impl Default for ExactLimits {
    fn default() -> Self {
        Self { max_variables: 400, node_limit: 50_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactSolution {
    pub schedule: Schedule,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy)]
struct Option_ {
    server: usize,
    pair: ServiceModel,
    us: f64,
    compute: u32,
    comm: u32,
    local: bool,
}

struct Search<'a> {
    instance: &'a ProblemInstance,
    options: Vec<Vec<Option_>>,
    /// `suffix_bound[i]`: optimistic contribution of requests `i..`.
    suffix_bound: Vec<f64>,
    compute: Vec<u32>,
    comm: Vec<u32>,
    covering: Vec<usize>,
    current: Vec<Option<usize>>,
    best_value: f64,
    best: Vec<Option<usize>>,
    nodes: u64,
    node_limit: u64,
    exhausted: bool,
}

// Slack on pruning so that rounding in the running sums never cuts a branch
// whose exact objective ties the incumbent.
const PRUNE_SLACK: f64 = 1e-9;

impl Search<'_> {
    fn leaf_value(&self) -> f64 {
        objective(
            self.instance,
            self.current
                .iter()
                .enumerate()
                .map(|(i, o)| o.map(|k| self.options[i][k].us)),
        )
    }

    fn dfs(&mut self, i: usize, partial: f64) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.exhausted = true;
            return;
        }
        let n = self.options.len();
        if i == n {
            let value = self.leaf_value();
            if value > self.best_value {
                self.best_value = value;
                self.best.clone_from(&self.current);
            }
            return;
        }
        if (partial + self.suffix_bound[i]) / (n as f64) < self.best_value - PRUNE_SLACK {
            return;
        }
        let cover = self.covering[i];
        for k in 0..self.options[i].len() {
            let o = self.options[i][k];
            if self.compute[o.server] < o.compute || (!o.local && self.comm[cover] < o.comm) {
                continue;
            }
            self.compute[o.server] -= o.compute;
            if !o.local {
                self.comm[cover] -= o.comm;
            }
            self.current[i] = Some(k);
            self.dfs(i + 1, partial + o.us);
            self.current[i] = None;
            self.compute[o.server] += o.compute;
            if !o.local {
                self.comm[cover] += o.comm;
            }
        }
        let penalty = self.instance.drop_penalty;
        self.dfs(i + 1, partial - penalty);
    }
}

/// Optimal schedule by depth-first branch and bound.
///
/// Each request branches over its threshold-feasible (server, model) pairs in
/// descending satisfaction, then over dropping it. A subtree is pruned when
/// the partial objective plus every remaining request's best unconstrained
/// satisfaction cannot beat the incumbent, which starts as the GUS schedule.
pub fn exact_solve(instance: &ProblemInstance, limits: &ExactLimits) -> Result<ExactSolution> {
    exact_solve_with(instance, limits, &CapacityState::new(instance))
}

pub(crate) fn exact_solve_with(
    instance: &ProblemInstance,
    limits: &ExactLimits,
    start: &CapacityState,
) -> Result<ExactSolution> {
    let n = instance.n_requests();
    let variables = n * instance.servers.len() * instance.catalog.n_models;
    if variables > limits.max_variables {
        return Err(Error::InstanceTooLarge {
            solver: "exact",
            size: variables as f64,
            limit: limits.max_variables as f64,
        });
    }

    let options: Vec<Vec<Option_>> = (0..n)
        .map(|i| {
            let req = &instance.requests[i];
            let mut opts = Vec::new();
            for server in &instance.servers {
                for pair in server.models_of(req.service) {
                    let Some((a, c, us)) = evaluate(instance, i, server.id, pair) else {
                        continue;
                    };
                    if instance.mode == Mode::Strict && (a < req.min_accuracy || c > req.max_completion_ms) {
                        continue;
                    }
                    opts.push(Option_ {
                        server: server.id,
                        pair,
                        us,
                        compute: instance.catalog.compute_cost(pair),
                        comm: instance.catalog.comm_cost(pair),
                        local: server.id == req.covering_server,
                    });
                }
            }
            opts.sort_by(|a, b| b.us.total_cmp(&a.us).then(b.local.cmp(&a.local)));
            opts
        })
        .collect();

    let mut suffix_bound = vec![0.0; n + 1];
    for i in (0..n).rev() {
        let best = options[i].first().map_or(f64::NEG_INFINITY, |o| o.us);
        suffix_bound[i] = suffix_bound[i + 1] + best.max(-instance.drop_penalty);
    }

    let big = |relaxed: bool, v: u32| if relaxed { u32::MAX } else { v };
    let relax = start.relaxation();
    let m = instance.servers.len();

    // Seed the incumbent with the greedy solution from the same start state.
    let mut greedy_state = start.clone();
    let greedy: Vec<Choice> = greedy_with(instance, &mut greedy_state, Scope::All);
    let greedy_idx: Vec<Option<usize>> = greedy
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c.map(|(j, p)| {
                options[i]
                    .iter()
                    .position(|o| o.server == j && o.pair == p)
                    .expect("greedy choice is threshold-feasible")
            })
        })
        .collect();

    let mut search = Search {
        instance,
        compute: (0..m).map(|j| big(relax.compute, start.remaining_compute(j))).collect(),
        comm: (0..m).map(|j| big(relax.comm, start.remaining_comm(j))).collect(),
        covering: instance.requests.iter().map(|r| r.covering_server).collect(),
        current: vec![None; n],
        best_value: f64::NEG_INFINITY,
        best: Vec::new(),
        nodes: 0,
        node_limit: limits.node_limit,
        exhausted: false,
        options,
        suffix_bound,
    };
    search.current.clone_from(&greedy_idx);
    search.best_value = search.leaf_value();
    search.best = greedy_idx;
    search.current = vec![None; n];

    search.dfs(0, 0.0);

    let choices: Vec<Choice> = search
        .best
        .iter()
        .enumerate()
        .map(|(i, o)| o.map(|k| (search.options[i][k].server, search.options[i][k].pair)))
        .collect();
    let schedule = Schedule::build(instance, &choices);
    if search.exhausted {
        return Err(Error::BudgetExceeded { nodes: limits.node_limit, incumbent: Box::new(schedule) });
    }
    Ok(ExactSolution { schedule, nodes: search.nodes })
}
