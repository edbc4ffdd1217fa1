//! Data behind the two state-dependent plots: local fidelities and clone
//! Bloch-vector length against θ.

use std::f64::consts::FRAC_PI_4;
use std::str::FromStr;

use crate::eavesdrop::{local_fidelity_2, local_fidelity_3};
use crate::error::{Error, Result};
use crate::format::Table;
use crate::statedep::{bloch_modulus, local_fidelity_1, TwoStateEnsemble};

pub const MIN_GRID: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// theta, S, F_l1, F_l2, F_l3.
    LocalFidelity,
    /// theta, S, s_modulus.
    BlochModulus,
}

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Figure::LocalFidelity => "fig1",
            Figure::BlochModulus => "fig2",
        }
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Figure::LocalFidelity),
            "fig2" => Ok(Figure::BlochModulus),
            _ => Err(Error::Unknown { kind: "figure", name: s.into() }),
        }
    }
}

/// `grid` points uniform in θ over [0, π/4], endpoints included.
pub fn theta_grid(grid: usize) -> Result<Vec<f64>> {
    if grid < MIN_GRID {
        return Err(Error::OutOfRange(format!("grid {grid} below {MIN_GRID}")));
    }
    let last = (grid - 1) as f64;
    Ok((0..grid).map(|k| if k + 1 == grid { FRAC_PI_4 } else { FRAC_PI_4 * k as f64 / last }).collect())
}

pub fn figure_table(which: Figure, grid: usize) -> Result<Table> {
    let mut table = match which {
        Figure::LocalFidelity => Table::new(vec!["theta", "S", "F_l1", "F_l2", "F_l3"]),
        Figure::BlochModulus => Table::new(vec!["theta", "S", "s_modulus"]),
    };
    for theta in theta_grid(grid)? {
        let e = TwoStateEnsemble::new(theta)?;
        let s = e.overlap();
        table.push(match which {
            Figure::LocalFidelity => vec![theta, s, local_fidelity_1(s)?, local_fidelity_2(s)?, local_fidelity_3(s)?],
            Figure::BlochModulus => vec![theta, s, bloch_modulus(&e)],
        });
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_rows_are_perfect_copies() {
        let t = figure_table(Figure::LocalFidelity, 11).unwrap();
        assert_eq!(t.rows[0], vec![0.0, 0.0, 1.0, 1.0, 1.0]);
        let t = figure_table(Figure::BlochModulus, 11).unwrap();
        assert_eq!(t.rows[0], vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn dominance_on_every_row() {
        let t = figure_table(Figure::LocalFidelity, 201).unwrap();
        for r in &t.rows {
            assert!(r[3] >= r[2] - 1e-12 && r[4] >= r[3] - 1e-12, "{r:?}");
        }
    }

    #[test]
    fn grid_endpoints() {
        let g = theta_grid(5).unwrap();
        assert_eq!((g[0], g[4]), (0.0, FRAC_PI_4));
        assert!(theta_grid(1).is_err());
        assert!("fig3".parse::<Figure>().is_err());
        assert_eq!("fig2".parse::<Figure>().unwrap(), Figure::BlochModulus);
    }
}
