//! Barenblatt exponents from the radial shooting solver.

use anomex::{default_r_max, find_alpha_shooting, OperatorSpec, RadialGrid};

fn main() -> anomex::Result<()> {
    for n in [1, 2] {
        for gamma in [0.1, 0.5, 0.9] {
            let spec = OperatorSpec::barenblatt(gamma)?;
            let grid = RadialGrid::with_spacing(default_r_max(spec.bounds(), n).max(12.0), 0.01, n)?;
            let plus = find_alpha_shooting(&spec, &grid, 1e-10)?;
            let minus = find_alpha_shooting(&spec.dual(), &grid, 1e-10)?;
            println!("n={n} gamma={gamma}: alpha+ = {:.8}  alpha- = {:.8}", plus.alpha, minus.alpha);
        }
    }
    Ok(())
}
