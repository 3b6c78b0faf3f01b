//! Brute-force consistency suites over a fusion table and the seeded rules.

use alcove::fusion::Verlinde;
use alcove::regquot::builtin_a2_rules;
use alcove::verify::run_all;
use alcove::{EllContext, Family, RootSystemSpec};

fn main() -> alcove::Result<()> {
    let engine = Verlinde::new(EllContext::from_spec(RootSystemSpec::new(Family::A, 2)?, 7)?);
    let table = engine.build_table()?;
    for report in run_all(&engine, &table, Some(&builtin_a2_rules()))? {
        println!("{report}");
    }
    Ok(())
}
