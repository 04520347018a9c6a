//! Pucci exponent pair from inverse power iteration on the discrete
//! resolvent, with the profile written as CSV.

use anomex::{exponent_pair, OperatorSpec, RadialGrid};

fn main() -> anomex::Result<()> {
    let grid = RadialGrid::with_spacing(12.0, 0.02, 2)?;
    let pair = exponent_pair(&OperatorSpec::pucci_plus(1.0, 2.0)?, &grid, 1e-10)?;
    println!("alpha+(P+) = {:.6}  in [1.5, 2.0]", pair.alpha_plus());
    println!("alpha-(P+) = alpha+(P-) = {:.6}  in [0.5, 0.75]", pair.alpha_minus());
    println!("iterations {} / {}", pair.plus.iterations, pair.minus.iterations);
    println!("{}", pair.plus.to_json());
    let path = std::env::temp_dir().join("pucci_plus_profile.csv");
    std::fs::write(&path, pair.plus.profile.to_csv_string())?;
    println!("profile written to {}", path.display());
    Ok(())
}
