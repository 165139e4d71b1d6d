//! The box-shaped search space and the individuals living in it.

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// A hyper-rectangle `[a_1, b_1] x ... x [a_n, b_n]`.
///
/// Intervals are closed: a coordinate equal to a bound is feasible.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Domain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::argument("domain must have at least one dimension"));
        }
        Error::check_len(lower.len(), upper.len())?;
        for (i, (a, b)) in lower.iter().zip(&upper).enumerate() {
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::argument(format!("bounds of dimension {i} are not finite")));
            }
            if a >= b {
                return Err(Error::argument(format!(
                    "lower bound {a} is not below upper bound {b} in dimension {i}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The unit hypercube `[0, 1]^n`.
    pub fn unit(n: usize) -> Result<Self> {
        Self::new(vec![0.0; n], vec![1.0; n])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn bounds(&self, i: usize) -> (f64, f64) {
        (self.lower[i], self.upper[i])
    }

    /// Feasibility oracle. Every other module asks this function, and only
    /// this function, whether a point lies inside the box.
    pub fn contains(&self, point: &[f64]) -> Result<bool> {
        Error::check_len(self.dim(), point.len())?;
        Ok(point
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(&x, (&a, &b))| a <= x && x <= b))
    }

    /// Coordinate-wise feasibility, `a_i <= x <= b_i`.
    pub fn contains_coord(&self, i: usize, x: f64) -> bool {
        self.lower[i] <= x && x <= self.upper[i]
    }

    /// Uniformly sampled, unevaluated individual.
    pub fn sample_uniform(&self, rng: &mut RngStream) -> Individual {
        let coords = self
            .lower
            .iter()
            .zip(&self.upper)
            .map(|(&a, &b)| rng.uniform_in(a, b))
            .collect();
        Individual::new(coords)
    }
}

/// A candidate solution with its cached objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub coords: Vec<f64>,
    fitness: Option<f64>,
}

impl Individual {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords, fitness: None }
    }

    pub fn evaluated(coords: Vec<f64>, fitness: f64) -> Self {
        Self {
            coords,
            fitness: Some(fitness),
        }
    }

    /// `None` until evaluated. The value is stored once and never recomputed,
    /// which matters for stochastic objectives.
    pub fn fitness(&self) -> Option<f64> {
        self.fitness
    }

    pub fn set_fitness(&mut self, f: f64) {
        self.fitness = Some(f);
    }
}

/// An ordered, fully evaluated population and the index of its best member.
#[derive(Debug, Clone)]
pub struct Population {
    members: Vec<Individual>,
    best_index: usize,
}

impl Population {
    /// Builds a population from evaluated individuals.
    pub fn new(members: Vec<Individual>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::argument("population must not be empty"));
        }
        if let Some(i) = members.iter().position(|m| m.fitness.is_none()) {
            return Err(Error::argument(format!("member {i} has not been evaluated")));
        }
        let mut pop = Self { members, best_index: 0 };
        pop.recompute_best();
        Ok(pop)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn get(&self, i: usize) -> &Individual {
        &self.members[i]
    }

    pub fn best_index(&self) -> usize {
        self.best_index
    }

    pub fn best(&self) -> &Individual {
        &self.members[self.best_index]
    }

    fn fitness_at(&self, i: usize) -> f64 {
        self.members[i].fitness.expect("population members are evaluated")
    }

    /// Rescans the members; ties go to the lowest index.
    pub fn recompute_best(&mut self) {
        let mut best = 0;
        for i in 1..self.members.len() {
            if self.fitness_at(i) < self.fitness_at(best) {
                best = i;
            }
        }
        self.best_index = best;
    }

    /// Puts an evaluated individual in slot `i` and keeps `best_index` valid.
    pub fn replace(&mut self, i: usize, ind: Individual) {
        let f = ind.fitness.expect("replacement must be evaluated");
        self.members[i] = ind;
        if i == self.best_index {
            self.recompute_best();
        } else {
            let best = self.fitness_at(self.best_index);
            if f < best || (f == best && i < self.best_index) {
                self.best_index = i;
            }
        }
    }
}
