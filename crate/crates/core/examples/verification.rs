//! Run the verification suite and a few closed-form checks directly.

use anomex::verify::{check_gaussian_bounds, default_suite, gaussian_bound_samples, SpecialSubsolution};
use anomex::{EllipticityBounds, OperatorSpec, RadialGrid};

fn main() -> anomex::Result<()> {
    let b = EllipticityBounds::new(1.0, 4.0)?;
    let (minus, plus) = check_gaussian_bounds(b, 3, &gaussian_bound_samples(b, 1000));
    println!("{minus:?}\n{plus:?}");

    let w = SpecialSubsolution::new(EllipticityBounds::new(1.0, 2.0)?, 2);
    println!("a={} beta={} r1={} log(delta)={:.6}", w.a, w.beta, w.r1, w.log_delta);

    let spec = OperatorSpec::barenblatt(0.5)?;
    let grid = RadialGrid::with_spacing(10.0, 0.02, 1)?;
    for c in default_suite(&spec, &grid, 1e-8)? {
        println!("{} {:<28} {:.3e}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.worst_slack);
    }
    Ok(())
}
