//! Cartan data, positive roots and the finite Weyl group for every
//! supported rank-2 type.

use alcove::{Family, RootSystem, RootSystemSpec, Weight};

fn main() -> alcove::Result<()> {
    for family in [Family::A, Family::B, Family::C, Family::G] {
        let rs = RootSystem::build(RootSystemSpec::new(family, 2)?)?;
        println!("{family}2: h={} |Omega|={}", rs.coxeter_number(), rs.fundamental_group_order());
        for (i, beta) in rs.positive_roots().iter().enumerate() {
            println!("  root {i}: height {}", beta.height());
        }
        let lambda = Weight::from([-2, 1]);
        let (dom, _) = rs.dominant_representative(&lambda);
        println!("  orbit of {lambda} has {} weights, dominant {dom}", rs.orbit(&lambda).len());
        println!("  rho={} w0(rho)={}", rs.rho(), rs.w0_image(&rs.rho()));
    }
    Ok(())
}
