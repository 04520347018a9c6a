//! Evaluate operators on Hessian spectra and sample their structural
//! properties.

use anomex::{check_ellipticity_sandwich, check_homogeneity, eval_operator, HessianSpectrum, OperatorSpec};

fn main() -> anomex::Result<()> {
    let specs: Vec<OperatorSpec> = ["pucci+ lambda=1 Lambda=2", "barenblatt gamma=0.5", "maxlinear c=0.5,2", "dual(barenblatt gamma=0.5)"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let m = HessianSpectrum::new(vec![1.0, -2.0, 0.5])?;
    for spec in &specs {
        let sandwich = check_ellipticity_sandwich(spec, 2000, 7)?;
        let homogeneity = check_homogeneity(spec, 2000, 7)?;
        println!(
            "{:<28} F(diag(1,-2,0.5)) = {:+.4}  convex={} concave={}  sandwich slack {:.1e}  homogeneity err {:.1e}",
            spec.to_string(),
            eval_operator(spec, &m),
            spec.is_convex(),
            spec.is_concave(),
            sandwich.max_violation,
            homogeneity.max_relative_error
        );
    }
    Ok(())
}
