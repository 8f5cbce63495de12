//! The map restricted to the finite grid `{i/N : 0 <= i <= N}`.
//!
//! Both branches are integer affine in `i` (`2i` and `2N - 2i`), so the grid
//! is closed under the map and no rounding is involved.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridState {
    resolution: u64,
    index: u64,
}

impl GridState {
    pub fn new(resolution: u64, index: u64) -> Result<Self> {
        if resolution == 0 {
            return Err(Error::InvalidState("grid resolution must be at least 1".into()));
        }
        if index > resolution {
            return Err(Error::InvalidState(format!(
                "index {index} exceeds resolution {resolution}"
            )));
        }
        Ok(GridState { resolution, index })
    }

    pub fn resolution(&self) -> u64 {
        self.resolution
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn position(&self) -> Rational {
        Rational::new(self.index, self.resolution)
    }

    fn step(self) -> Self {
        GridState {
            resolution: self.resolution,
            index: grid_index(self.resolution, self.index),
        }
    }
}

fn grid_index(n: u64, i: u64) -> u64 {
    let (n, i) = (u128::from(n), u128::from(i));
    let j = if 2 * i <= n { 2 * i } else { 2 * n - 2 * i };
    // j <= n in both branches
    j as u64
}

pub fn grid_step(s: GridState) -> Result<GridState> {
    let s = GridState::new(s.resolution, s.index)?;
    Ok(s.step())
}

pub fn grid_iter(s: GridState, n: u64) -> Result<GridState> {
    let mut s = GridState::new(s.resolution, s.index)?;
    for _ in 0..n {
        s = s.step();
    }
    Ok(s)
}

/// States visited from `s` over `steps` steps, `s` included.
pub fn grid_orbit(s: GridState, steps: u64) -> Result<Vec<GridState>> {
    let mut s = GridState::new(s.resolution, s.index)?;
    let mut orbit = vec![s];
    for _ in 0..steps {
        s = s.step();
        orbit.push(s);
    }
    Ok(orbit)
}

/// Graph of the step map as `(i, j)` pairs, ascending in `i`.
pub fn grid_table(resolution: u64) -> Result<Vec<(u64, u64)>> {
    if resolution == 0 {
        return Err(Error::InvalidState("grid resolution must be at least 1".into()));
    }
    Ok((0..=resolution)
        .map(|i| (i, grid_index(resolution, i)))
        .collect())
}

/// Half the spacing between neighbouring grid points, `1/(2N)`.
pub fn min_separation_eta(resolution: u64) -> Result<Rational> {
    if resolution == 0 {
        return Err(Error::InvalidState("grid resolution must be at least 1".into()));
    }
    Ok(Rational::new(1, 2 * u128::from(resolution)))
}

/// Where the orbit of a state becomes periodic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cycle {
    /// Number of steps before the orbit first enters the cycle.
    pub entry: u64,
    pub length: u64,
}

/// Finds the eventual cycle of `s`. Every orbit on a grid with `N + 1`
/// states repeats within `N + 1` steps.
pub fn detect_cycle(s: GridState) -> Result<Cycle> {
    let mut s = GridState::new(s.resolution, s.index)?;
    let mut seen = HashMap::new();
    let mut t = 0u64;
    loop {
        if let Some(&first) = seen.get(&s.index) {
            return Ok(Cycle {
                entry: first,
                length: t - first,
            });
        }
        seen.insert(s.index, t);
        s = s.step();
        t += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baker::{baker_iter, baker_step};

    fn gs(n: u64, i: u64) -> GridState {
        GridState::new(n, i).unwrap()
    }

    #[test]
    fn step_examples() {
        assert_eq!(grid_step(gs(10, 3)).unwrap(), gs(10, 6));
        assert_eq!(grid_step(gs(10, 7)).unwrap(), gs(10, 6));
        assert_eq!(grid_step(gs(17, 0)).unwrap(), gs(17, 0));
        assert!(matches!(GridState::new(10, 11), Err(Error::InvalidState(_))));
        assert!(matches!(GridState::new(0, 0), Err(Error::InvalidState(_))));
    }

    #[test]
    fn iter_examples() {
        assert_eq!(grid_iter(gs(10, 3), 2).unwrap(), gs(10, 8));
        assert_eq!(grid_iter(gs(10, 3), 0).unwrap(), gs(10, 3));
        assert_eq!(grid_iter(gs(1000, 250), 2).unwrap(), gs(1000, 1000));
    }

    #[test]
    fn table_examples() {
        assert_eq!(grid_table(1).unwrap(), vec![(0, 0), (1, 0)]);
        assert_eq!(grid_table(2).unwrap(), vec![(0, 0), (1, 2), (2, 0)]);
        for n in 1..50 {
            assert_eq!(grid_table(n).unwrap().len() as u64, n + 1);
        }
        assert!(grid_table(0).is_err());
    }

    #[test]
    fn eta_examples() {
        assert_eq!(min_separation_eta(1000).unwrap(), Rational::new(1, 2000));
        assert_eq!(min_separation_eta(1).unwrap(), Rational::new(1, 2));
        assert_eq!(min_separation_eta(2).unwrap(), Rational::new(1, 4));
    }

    #[test]
    fn grid_matches_exact_map() {
        for n in (1..=1000).step_by(37).chain([1, 2, 3, 999, 1000]) {
            for i in 0..=n {
                let s = gs(n, i);
                assert_eq!(grid_step(s).unwrap().position(), baker_step(&s.position()).unwrap());
            }
        }
    }

    #[test]
    fn table_lookup_matches_iteration() {
        for n in 1..=100u64 {
            let table = grid_table(n).unwrap();
            for i in 0..=n {
                let mut j = i;
                for steps in 0..=20u64 {
                    assert_eq!(grid_iter(gs(n, i), steps).unwrap().index(), j);
                    j = table[j as usize].1;
                }
            }
        }
    }

    #[test]
    fn cycles_within_pigeonhole_bound() {
        for n in 1..=100u64 {
            for i in 0..=n {
                let c = detect_cycle(gs(n, i)).unwrap();
                assert!(c.length >= 1);
                assert!(c.entry + c.length <= n + 2);
                let start = grid_iter(gs(n, i), c.entry).unwrap();
                assert_eq!(grid_iter(start, c.length).unwrap(), start);
                // exact position also agrees after entry + length steps
                let x = gs(n, i).position();
                assert_eq!(
                    baker_iter(&x, (c.entry + c.length) as u32).unwrap(),
                    start.position()
                );
            }
        }
        assert_eq!(detect_cycle(gs(10, 3)).unwrap(), Cycle { entry: 2, length: 2 });
        assert_eq!(detect_cycle(gs(10, 0)).unwrap(), Cycle { entry: 0, length: 1 });
    }

    #[test]
    fn sensitivity_collapses() {
        for n in 1..=100u64 {
            let eta = min_separation_eta(n).unwrap();
            for i in 0..=n {
                for j in 0..=n {
                    let close = (gs(n, i).position() - gs(n, j).position()).abs() <= eta;
                    assert_eq!(close, i == j);
                }
            }
        }
    }
}
