//! Evolve Gaussian data under the Barenblatt operator and watch the rescaled
//! solutions collapse onto C*·Φ⁺.

use anomex::flow::convergence_report;
use anomex::{find_alpha_shooting, OperatorSpec, RadialGrid};

fn main() -> anomex::Result<()> {
    let spec = OperatorSpec::barenblatt(0.5)?;
    let eig = find_alpha_shooting(&spec, &RadialGrid::new(12.0, 1200, 1)?, 1e-11)?;
    let g = RadialGrid::new(16.0, 1600, 1)?.sample(|r| (-r * r).exp());
    let report = convergence_report(&spec, &g, eig.alpha, &eig.profile, &[4.0, 16.0, 64.0, 256.0])?;
    println!("alpha+ = {:.10}", eig.alpha);
    for (k, sigma) in report.sigmas.iter().enumerate() {
        println!("sigma {sigma:>5}: C* = {:.8}  sup_(r<=3) rel err = {:.3e}", report.cstar[k], report.sup_rel_err[k]);
    }
    println!("Cauchy differences {:?}", report.cauchy_diffs);
    Ok(())
}
