//! Exhaustive enumeration of the integer points of a box that satisfy a
//! homogeneous linear system.
//!
//! Every point of `[-bound, bound]^N` is covered: a variable is only ever
//! fixed without branching when some equation leaves it a single forced value.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Cooperative cancellation flag shared with long enumerations.
#[derive(Debug, Clone, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

/// Sparse homogeneous linear system over `i64` coefficients.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    vars: usize,
    equations: Vec<Vec<(usize, i64)>>,
}

impl LinearSystem {
    pub fn from_dense(rows: &[Vec<BigInt>], vars: usize) -> Result<Self> {
        let equations = rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| {
                        c.to_i64()
                            .map(|c| (j, c))
                            .ok_or_else(|| Error::InvalidArgument("coefficient exceeds i64".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .filter(|eq| eq.as_ref().map_or(true, |e| !e.is_empty()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { vars, equations })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }
}

/// Statistics of one completed enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub solutions: u64,
    pub nodes: u64,
}

/// Calls `visit` on every solution of `system` with all coordinates in
/// `[-bound, bound]`, in a deterministic order.
pub fn enumerate_box_solutions(
    system: &LinearSystem,
    bound: i64,
    cancel: Option<&CancelToken>,
    mut visit: impl FnMut(&[i64]),
) -> Result<SearchStats> {
    let mut occurs = vec![Vec::new(); system.vars];
    for (e, eq) in system.equations.iter().enumerate() {
        for &(v, _) in eq {
            occurs[v].push(e);
        }
    }
    let mut state = State {
        system,
        occurs,
        bound,
        values: vec![None; system.vars],
        stats: SearchStats::default(),
        cancel,
    };
    state.descend(&mut visit)?;
    Ok(state.stats)
}

struct State<'a> {
    system: &'a LinearSystem,
    occurs: Vec<Vec<usize>>,
    bound: i64,
    values: Vec<Option<i64>>,
    stats: SearchStats,
    cancel: Option<&'a CancelToken>,
}

enum Propagation {
    Conflict,
    Fixed(Vec<usize>),
}

impl State<'_> {
    fn descend(&mut self, visit: &mut impl FnMut(&[i64])) -> Result<()> {
        self.stats.nodes += 1;
        if self.stats.nodes.is_multiple_of(4096)
            && self.cancel.is_some_and(CancelToken::is_cancelled)
        {
            return Err(Error::Cancelled);
        }
        let fixed = match self.propagate() {
            Propagation::Conflict => return Ok(()),
            Propagation::Fixed(f) => f,
        };
        match self.choose_branch_var() {
            None => {
                let point: Vec<i64> = self.values.iter().map(|v| v.unwrap()).collect();
                self.stats.solutions += 1;
                visit(&point);
            }
            Some(var) => {
                for x in -self.bound..=self.bound {
                    self.values[var] = Some(x);
                    if self.consistent_around(var) {
                        self.descend(visit)?;
                    }
                }
                self.values[var] = None;
            }
        }
        for v in fixed {
            self.values[v] = None;
        }
        Ok(())
    }

    /// Equations through `var` that are now fully assigned must hold.
    fn consistent_around(&self, var: usize) -> bool {
        self.occurs[var].iter().all(|&e| {
            let mut sum: i128 = 0;
            for &(v, c) in &self.system.equations[e] {
                match self.values[v] {
                    Some(x) => sum += c as i128 * x as i128,
                    None => return true,
                }
            }
            sum == 0
        })
    }

    fn propagate(&mut self) -> Propagation {
        let mut fixed = Vec::new();
        loop {
            let mut progress = false;
            for eq in &self.system.equations {
                let mut unknown = None;
                let mut unknowns = 0;
                let mut sum: i128 = 0;
                for &(v, c) in eq {
                    match self.values[v] {
                        Some(x) => sum += c as i128 * x as i128,
                        None => {
                            unknowns += 1;
                            unknown = Some((v, c));
                        }
                    }
                }
                match (unknowns, unknown) {
                    (0, _) if sum != 0 => {
                        self.undo(&fixed);
                        return Propagation::Conflict;
                    }
                    (1, Some((v, c))) => {
                        let (q, r) = (-sum).div_rem(&(c as i128));
                        if r != 0 || q.abs() > self.bound as i128 {
                            self.undo(&fixed);
                            return Propagation::Conflict;
                        }
                        self.values[v] = Some(q as i64);
                        fixed.push(v);
                        progress = true;
                    }
                    _ => {}
                }
            }
            if !progress {
                return Propagation::Fixed(fixed);
            }
        }
    }

    fn undo(&mut self, fixed: &[usize]) {
        for &v in fixed {
            self.values[v] = None;
        }
    }

    /// Most-constrained heuristic: a free variable from the equation with the
    /// fewest unknowns; ties go to the lowest index.
    fn choose_branch_var(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for eq in &self.system.equations {
            let unknown: Vec<usize> = eq
                .iter()
                .filter(|(v, _)| self.values[*v].is_none())
                .map(|&(v, _)| v)
                .collect();
            if unknown.is_empty() {
                continue;
            }
            let cand = (unknown.len(), *unknown.iter().min().unwrap());
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
            }
        }
        best.map(|(_, v)| v)
            .or_else(|| self.values.iter().position(Option::is_none))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(system: &LinearSystem, bound: i64) -> Vec<Vec<i64>> {
        let n = system.vars;
        let width = (2 * bound + 1) as usize;
        let mut out = Vec::new();
        for mut code in 0..width.pow(n as u32) {
            let point: Vec<i64> = (0..n)
                .map(|_| {
                    let d = (code % width) as i64 - bound;
                    code /= width;
                    d
                })
                .collect();
            let ok = system
                .equations
                .iter()
                .all(|eq| eq.iter().map(|&(v, c)| c * point[v]).sum::<i64>() == 0);
            if ok {
                out.push(point);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn matches_naive_enumeration() {
        let rows: Vec<Vec<BigInt>> = [[1i64, -2, 0, 1], [0, 3, -3, 0]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let system = LinearSystem::from_dense(&rows, 4).unwrap();
        let mut found = Vec::new();
        enumerate_box_solutions(&system, 3, None, |p| found.push(p.to_vec())).unwrap();
        found.sort();
        assert_eq!(found, brute(&system, 3));
    }

    #[test]
    fn cancellation_is_reported() {
        let system = LinearSystem {
            vars: 8,
            equations: vec![],
        };
        let token = CancelToken::new();
        token.cancel();
        let r = enumerate_box_solutions(&system, 3, Some(&token), |_| {});
        assert_eq!(r, Err(Error::Cancelled));
    }
}
