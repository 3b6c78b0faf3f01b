//! Truncated fusion coefficients from two independent formulas.

use alcove::fusion::Verlinde;
use alcove::{EllContext, Family, RootSystemSpec, Weight};

fn main() -> alcove::Result<()> {
    let ctx = EllContext::from_spec(RootSystemSpec::new(Family::B, 2)?, 7)?;
    let engine = Verlinde::new(ctx);
    let (lambda, mu) = (Weight::from([1, 1]), Weight::from([0, 2]));
    let row = engine.fusion_row(&lambda, &mu)?;
    let racah = engine.fusion_row_racah(&lambda, &mu)?;
    assert_eq!(row, racah);
    println!("{lambda} * {mu}:");
    for (nu, c) in &row {
        println!("  {c} {nu}");
    }
    let table = engine.build_table()?;
    println!("table over {} weights, digest {}", table.weights().len(), table.digest());
    Ok(())
}
