use crate::boundary::correct;
use crate::domain::{Domain, Individual, Population};
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::rng::RngStream;

use super::config::{DeConfig, ParentFitness, RunRecord};

/// Fitness assigned to penalised candidates; worse than anything an
/// objective can return, so 1-to-1 selection always rejects them.
pub const PENALTY_FITNESS: f64 = f64::INFINITY;

/// Per-generation hook for tests and diagnostics; called with the population
/// after each generation has replaced the previous one.
pub trait Observer {
    fn generation(&mut self, _index: u64, _population: &Population) {}
}

impl Observer for () {}

/// Generated offspring before and after correction.
#[derive(Debug, Clone)]
pub struct Offspring {
    pub generated: Vec<f64>,
    pub evaluated: Individual,
    pub infeasible: bool,
}

/// Produces the offspring of one target: mutation, crossover, feasibility
/// check, correction and evaluation. The offspring's infeasibility is judged
/// after crossover and before correction.
pub fn breed(
    config: &DeConfig,
    population: &Population,
    target: usize,
    domain: &Domain,
    objective: &Objective,
    rng: &mut RngStream,
) -> Result<Offspring> {
    let mutant = config.mutation.mutate(population, target, config.scale_factor, rng)?;
    let generated = config
        .crossover
        .apply(&population.get(target).coords, &mutant, config.crossover_rate, rng)?;
    let outcome = correct(config.strategy, &generated, domain, rng)?;
    let fitness = if outcome.penalty_applied {
        PENALTY_FITNESS
    } else {
        objective.evaluate(&outcome.corrected, rng)?
    };
    Ok(Offspring {
        generated,
        evaluated: Individual::evaluated(outcome.corrected, fitness),
        infeasible: outcome.was_infeasible,
    })
}

pub fn run_de(config: &DeConfig, domain: &Domain, objective: &Objective, rng: &mut RngStream) -> Result<RunRecord> {
    run_de_observed(config, domain, objective, rng, &mut ())
}

/// Runs DE until the evaluation budget is spent.
///
/// Initialization spends `N` evaluations. Each offspring spends one more,
/// penalised ones included; penalised offspring are rejected outright.
/// Offspring replace their target when `f(offspring) <= f(target)`, with
/// `f(target)` chosen by [`ParentFitness`]. Within a generation all donors come from the
/// previous population; survivors fill the next one, which replaces it at
/// the end of the generation, when the best member is refreshed. If the
/// budget runs out mid-generation the untouched slots carry over.
pub fn run_de_observed(
    config: &DeConfig,
    domain: &Domain,
    objective: &Objective,
    rng: &mut RngStream,
    observer: &mut impl Observer,
) -> Result<RunRecord> {
    config.validate()?;
    if objective.domain.dim() != domain.dim() {
        return Err(Error::Dimension {
            expected: domain.dim(),
            got: objective.domain.dim(),
        });
    }
    let budget = config.budget;
    let n_pop = config.pop_size;

    let mut members = Vec::with_capacity(n_pop);
    for _ in 0..n_pop {
        let mut ind = domain.sample_uniform(rng);
        ind.set_fitness(objective.evaluate(&ind.coords, rng)?);
        members.push(ind);
    }
    let mut population = Population::new(members)?;
    let mut evaluations = n_pop as u64;
    let mut infeasible = 0u64;
    let mut generations = 0u64;

    'outer: while evaluations < budget {
        let mut next = population.clone();
        for target in 0..n_pop {
            if evaluations >= budget {
                population = next;
                generations += 1;
                observer.generation(generations, &population);
                break 'outer;
            }
            let child = breed(config, &population, target, domain, objective, rng)?;
            evaluations += 1;
            if child.infeasible {
                infeasible += 1;
            }
            let child_fitness = child.evaluated.fitness().expect("evaluated");
            if child_fitness == PENALTY_FITNESS {
                continue;
            }
            let parent = population.get(target);
            let parent_fitness = match config.parent_fitness {
                ParentFitness::Redraw if objective.kind.is_stochastic() => objective.evaluate(&parent.coords, rng)?,
                _ => parent.fitness().expect("evaluated"),
            };
            if child_fitness <= parent_fitness {
                next.replace(target, child.evaluated);
            }
        }
        population = next;
        population.recompute_best();
        generations += 1;
        observer.generation(generations, &population);
    }

    Ok(RunRecord {
        seed: rng.seed(),
        infeasible_count: infeasible,
        evaluations_used: evaluations,
        pois: infeasible as f64 / budget as f64,
        best_fitness: population.best().fitness().expect("evaluated"),
        generations,
    })
}
