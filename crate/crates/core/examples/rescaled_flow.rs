//! Relax the normalized rescaling flow and compare with the grid solver.

use anomex::flow::{normalized_rescaled_flow, FlowOptions};
use anomex::{inverse_power_iteration, OperatorSpec, RadialGrid};

fn main() -> anomex::Result<()> {
    let grid = RadialGrid::with_spacing(12.0, 0.04, 2)?;
    for spec in [OperatorSpec::heat(), OperatorSpec::pucci_minus(1.0, 2.0)?, OperatorSpec::barenblatt(0.5)?] {
        let flow = normalized_rescaled_flow(&spec, &grid, FlowOptions::default())?;
        let power = inverse_power_iteration(&spec, &grid, 1e-10, 10_000)?;
        println!(
            "{:<26} flow {:.8}  power {:.8}  alpha(s) over last unit in [{:.8}, {:.8}]",
            spec.to_string(),
            flow.alpha,
            power.alpha,
            flow.bracket.0,
            flow.bracket.1
        );
    }
    Ok(())
}
