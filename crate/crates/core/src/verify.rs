//! Self-check suites run by `qelim verify`. Each suite recomputes a family
//! of exact identities or inequalities over a fixed grid of small
//! instances and collects every failure.

use std::fmt;

use num_traits::{One, Zero};

use crate::bounds::{best_bound, corollary_bound, theorem1_bound};
use crate::distribution::ProductDistribution;
use crate::elimination::full_eliminate;
use crate::error::{Error, Result};
use crate::function::FiniteFunction;
use crate::generators::{perturb_tribes, standard, tribes, tribes_influence_closed_form, Standard};
use crate::limits::Limits;
use crate::measures::{
    closeness, influence, max_influence, output_distribution, plurality_error, resampled_output_distribution,
};
use crate::optimal::Oracle;
use crate::scalar::{format_rat, rat};
use crate::tree::{distributional_error, enumerate_trees, DecisionTree};
use crate::Rat;

pub const SUITES: &[&str] = &[
    "theorem1-grid",
    "step-soundness",
    "chain",
    "oracle-crosscheck",
    "tribes-influence",
    "corollary",
    "resample-identity",
    "plurality",
];

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &str) -> Self {
        SuiteOutcome {
            name: name.to_string(),
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{status}\t{}\t{} checks", self.name, self.checks)?;
        for msg in &self.failures {
            write!(f, "\n  {msg}")?;
        }
        Ok(())
    }
}

/// Grid functions: dictator, AND, OR and parity at n = 2, 3, 4, majority
/// on 3 inputs, tribes(2,2) and tribes(2,2) perturbed on its first quarter.
pub fn grid_functions() -> Vec<(String, FiniteFunction)> {
    let mut out = Vec::new();
    for n in 2..=4 {
        for (name, kind) in [
            ("dictator", Standard::Dictator(0)),
            ("and", Standard::And),
            ("or", Standard::Or),
            ("parity", Standard::Parity),
        ] {
            out.push((
                format!("{name}{n}"),
                standard(kind, n).expect("small standard function"),
            ));
        }
    }
    out.push(("majority3".into(), standard(Standard::Majority, 3).expect("majority3")));
    let g = tribes(2, 2).expect("tribes(2,2)");
    out.push((
        "perturbed-tribes(2,2)".into(),
        perturb_tribes(&g, &rat(1, 4)).expect("perturbation"),
    ));
    out.push(("tribes(2,2)".into(), g));
    out
}

pub fn grid_probabilities() -> Vec<Rat> {
    vec![rat(1, 4), rat(1, 2), rat(3, 4)]
}

pub fn grid_epsilons() -> Vec<Rat> {
    vec![rat(0, 1), rat(1, 10), rat(1, 4)]
}

fn bernoulli(n: usize, p: &Rat) -> ProductDistribution<Rat> {
    ProductDistribution::bernoulli(n, p.clone()).expect("p in (0,1)")
}

/// `Σ_x μ(x)·[t(x) ≠ f(x)]` by running the tree on every input.
pub fn flat_error(t: &DecisionTree, f: &FiniteFunction, mu: &ProductDistribution<Rat>) -> Result<Rat> {
    let mut total = Rat::zero();
    for (idx, w) in mu.point_masses().into_iter().enumerate() {
        let x = crate::function::decode(idx, f.arity(), f.alphabet());
        let (z, _) = t.run(&x)?;
        if z != f.labels()[f.value_at(idx)] {
            total += w;
        }
    }
    Ok(total)
}

pub fn theorem1_grid() -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("theorem1-grid");
    for (name, f) in grid_functions() {
        for p in grid_probabilities() {
            let mu = bernoulli(f.arity(), &p);
            let mut oracle = Oracle::new(&f, &mu, &Limits::default())?;
            for eps in grid_epsilons() {
                let d = oracle.distributional_complexity(&eps)?;
                let b = theorem1_bound(&f, &mu, eps.clone())?.bound;
                out.check(Rat::from_integer(d.into()) >= b, || {
                    format!(
                        "{name} p={} eps={}: D={d} < bound {}",
                        format_rat(&p),
                        format_rat(&eps),
                        format_rat(&b)
                    )
                });
            }
        }
    }
    Ok(out)
}

/// Trees used by the elimination suites: every valid tree of depth ≤ 2
/// on `n` binary inputs.
fn elimination_trees(n: usize) -> Vec<DecisionTree> {
    enumerate_trees(n, 2, &[0, 1], 2)
}

/// Per-step soundness `error_randomized ≤ error_before + inf_root` for the
/// grid functions at p ∈ {1/4, 1/2} over enumerated trees.
pub fn step_soundness() -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("step-soundness");
    for_each_transcript(|name, p, t, tr, _, _| {
        for s in &tr.steps {
            let ok = s.error_randomized <= s.error_before.clone() + s.influence_of_coordinate.clone()
                && s.error_after <= s.error_randomized;
            out.check(ok, || format!("{name} p={} tree {:?}: step {s:?}", format_rat(p), t));
        }
    })?;
    Ok(out)
}

/// Chain endpoints: `plurality ≤ final ≤ initial + depth·inf_max`.
pub fn chain() -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("chain");
    for_each_transcript(|name, p, t, tr, plurality, inf_max| {
        let depth = Rat::from_integer(t.depth().into());
        let ok = *plurality <= tr.final_error
            && tr.final_error <= tr.initial_error.clone() + depth.clone() * inf_max.clone()
            && tr.steps.len() <= t.depth();
        out.check(ok, || {
            format!(
                "{name} p={} tree {:?}: final {}",
                format_rat(p),
                t,
                format_rat(&tr.final_error)
            )
        });
        if *inf_max > Rat::zero() {
            let implied = (plurality.clone() - tr.initial_error.clone()) / inf_max.clone();
            out.check(depth >= implied, || {
                format!("{name} p={}: depth below implied bound", format_rat(p))
            });
        }
    })?;
    Ok(out)
}

fn for_each_transcript(
    mut visit: impl FnMut(&str, &Rat, &DecisionTree, &crate::elimination::EliminationTranscript<Rat>, &Rat, &Rat),
) -> Result<()> {
    let mut trees_by_arity: Vec<Option<Vec<DecisionTree>>> = vec![None; 5];
    for (name, f) in grid_functions() {
        let n = f.arity();
        let trees = trees_by_arity[n].get_or_insert_with(|| elimination_trees(n));
        for p in [rat(1, 4), rat(1, 2)] {
            let mu = bernoulli(n, &p);
            let plurality = plurality_error(&f, &mu)?;
            let (inf_max, _) = max_influence(&f, &mu)?;
            // plus one zero-error tree of full depth per instance
            let exact = Oracle::new(&f, &mu, &Limits::default())?.optimal_tree(n)?;
            for t in trees.iter().filter(|t| !t.is_leaf()).chain(std::iter::once(&exact)) {
                let err = distributional_error(t, &f, &mu)?;
                let tr = full_eliminate(t, &f, &mu, err)?;
                visit(&name, &p, t, &tr, &plurality, &inf_max);
            }
        }
    }
    Ok(())
}

/// The memoized oracle against exhaustive search over all trees, n ≤ 3.
pub fn oracle_crosscheck() -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("oracle-crosscheck");
    for (name, f) in grid_functions().into_iter().filter(|(_, f)| f.arity() <= 3) {
        let n = f.arity();
        let trees = enumerate_trees(n, 2, f.labels(), n);
        for p in grid_probabilities() {
            let mu = bernoulli(n, &p);
            let mut best = vec![Rat::one(); n + 1];
            for t in &trees {
                let e = flat_error(t, &f, &mu)?;
                for slot in best.iter_mut().skip(t.depth()) {
                    if e < *slot {
                        *slot = e.clone();
                    }
                }
            }
            let mut oracle = Oracle::new(&f, &mu, &Limits::default())?;
            for (q, expected) in best.iter().enumerate() {
                let got = oracle.optimal_error(q)?;
                out.check(got == *expected, || {
                    format!(
                        "{name} p={} q={q}: oracle {} vs exhaustive {}",
                        format_rat(&p),
                        format_rat(&got),
                        format_rat(expected)
                    )
                });
                let w = oracle.optimal_tree(q)?;
                let we = distributional_error(&w, &f, &mu)?;
                out.check(we == got && w.depth() <= q, || {
                    format!("{name} q={q}: witness error {}", format_rat(&we))
                });
            }
        }
    }
    Ok(out)
}

pub const TRIBES_PARAMETERS: &[(usize, usize)] = &[(1, 1), (2, 2), (2, 3), (3, 2), (4, 2)];

pub fn tribes_influence() -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("tribes-influence");
    for &(s, t) in TRIBES_PARAMETERS {
        let f = tribes(s, t)?;
        let mu = ProductDistribution::uniform(f.arity(), 2)?;
        let closed: Rat = tribes_influence_closed_form(s, t);
        for i in 0..f.arity() {
            let brute = influence(&f, &mu, i)?;
            out.check(brute == closed, || {
                format!(
                    "tribes({s},{t}) coordinate {}: {} vs closed form {}",
                    i + 1,
                    format_rat(&brute),
                    format_rat(&closed)
                )
            });
        }
    }
    Ok(out)
}

/// Smoothed bound for perturbed tribes(2,2) against tribes(2,2) and for
/// perturbed tribes(4,2) against tribes(4,2), checked with the oracle.
pub fn corollary() -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("corollary");
    for (s, t) in [(2, 2), (4, 2)] {
        let g = tribes(s, t)?;
        let f = perturb_tribes(&g, &rat(1, 4))?;
        let mu = ProductDistribution::uniform(f.arity(), 2)?;
        let mut f_oracle = Oracle::new(&f, &mu, &Limits::default())?;
        let mut g_oracle = Oracle::new(&g, &mu, &Limits::default())?;
        let delta = closeness(&f, &g, &mu)?;
        out.check(delta <= rat(1, 4), || {
            format!("tribes({s},{t}): closeness {} exceeds 1/4", format_rat(&delta))
        });
        for eps in grid_epsilons() {
            let (_, report) = corollary_bound(&f, &g, &mu, eps.clone())?;
            let (_, _, best) = best_bound(&f, &[f.clone(), g.clone()], &mu, eps.clone())?;
            let df = f_oracle.distributional_complexity(&eps)?;
            let dg = g_oracle.distributional_complexity(&(eps.clone() + delta.clone()))?;
            let d = Rat::from_integer(df.into());
            out.check(d >= report.bound && d >= best.bound, || {
                format!(
                    "tribes({s},{t}) eps={}: D(f)={df} < smoothed bound {}",
                    format_rat(&eps),
                    format_rat(&report.bound)
                )
            });
            out.check(df >= dg, || {
                format!(
                    "tribes({s},{t}) eps={}: D(f)={df} < D(g, eps+delta)={dg}",
                    format_rat(&eps)
                )
            });
        }
    }
    Ok(out)
}

pub fn resample_identity() -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("resample-identity");
    for (name, f) in grid_functions() {
        for p in grid_probabilities() {
            let mu = bernoulli(f.arity(), &p);
            let base = output_distribution(&f, &mu)?;
            for i in 0..f.arity() {
                let re = resampled_output_distribution(&f, &mu, i)?;
                out.check(re == base, || format!("{name} p={} i={}", format_rat(&p), i + 1));
            }
        }
    }
    Ok(out)
}

pub fn plurality() -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("plurality");
    for (name, f) in grid_functions() {
        for p in grid_probabilities() {
            let mu = bernoulli(f.arity(), &p);
            let e0 = Oracle::new(&f, &mu, &Limits::default())?.optimal_error(0)?;
            let pe = plurality_error(&f, &mu)?;
            out.check(e0 == pe, || {
                format!(
                    "{name} p={}: {} vs {}",
                    format_rat(&p),
                    format_rat(&e0),
                    format_rat(&pe)
                )
            });
        }
    }
    Ok(out)
}

/// Runs the named suite, or every suite for `all`.
pub fn run_suite(name: &str) -> Result<Vec<SuiteOutcome>> {
    match name {
        "all" => SUITES.iter().map(|s| run_one(s)).collect(),
        other => Ok(vec![run_one(other)?]),
    }
}

fn run_one(name: &str) -> Result<SuiteOutcome> {
    match name {
        "theorem1-grid" => theorem1_grid(),
        "step-soundness" => step_soundness(),
        "chain" => chain(),
        "oracle-crosscheck" => oracle_crosscheck(),
        "tribes-influence" => tribes_influence(),
        "corollary" => corollary(),
        "resample-identity" => resample_identity(),
        "plurality" => plurality(),
        other => Err(Error::Domain(format!(
            "unknown suite '{other}'; expected one of: all, {}",
            SUITES.join(", ")
        ))),
    }
}
