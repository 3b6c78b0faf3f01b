//! Weight multiplicities, Weyl dimensions and classical tensor products.

use alcove::charlib::{character_dimension, freudenthal, klimyk_tensor, weyl_dim};
use alcove::{Family, RootSystem, RootSystemSpec, Weight};

fn main() -> alcove::Result<()> {
    let rs = RootSystem::build(RootSystemSpec::new(Family::G, 2)?)?;
    let lambda = Weight::from([1, 1]);
    let table = freudenthal(&rs, &lambda)?;
    println!("dim V({lambda}) = {}", weyl_dim(&rs, &lambda)?);
    for (mu, m) in table.all_weights(&rs).iter().filter(|(mu, _)| mu.is_dominant()) {
        println!("  m({mu}) = {m}");
    }
    let mu = Weight::from([1, 0]);
    let product = klimyk_tensor(&rs, &table, &mu)?;
    println!("V({lambda}) x V({mu}), dimension {}:", character_dimension(&rs, &product)?);
    for (nu, c) in product.iter() {
        println!("  {c} V({nu})");
    }
    Ok(())
}
