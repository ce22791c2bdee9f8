//! Solves a small bounded linear program with the simplex solver that backs
//! the separation check.
//!
//! cargo run --example linear_program

use mjpl::numerics::Matrix;
use mjpl::separation::{simplex_solve, LinearProgram, LpOutcome};

fn main() -> mjpl::Result<()> {
    // maximize 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6,  0 <= x <= 3,  y >= 0
    let a = Matrix::from_fn(2, 2, |i, j| [[1.0, 1.0], [1.0, 3.0]][i][j]);
    let lp = LinearProgram::new(vec![3.0, 2.0], a, vec![4.0, 6.0], vec![0.0, 0.0], vec![3.0, f64::INFINITY])?;
    match simplex_solve(&lp) {
        LpOutcome::Optimal { value, point } => println!("optimum {value} at x = {:.3}, y = {:.3}", point[0], point[1]),
        other => println!("{other:?}"),
    }

    let unbounded = LinearProgram::bounds_only(vec![1.0], vec![0.0], vec![f64::INFINITY])?;
    println!("maximize x over x >= 0: {:?}", simplex_solve(&unbounded));
    Ok(())
}
