//! Constraints on minimal tilting complexes and good filtration dimension.

use alcove::cli::labels_from_expr;
use alcove::tiltprofile::{gfd_tensor, simple_profile, weyl_profile};
use alcove::{EllContext, Family, RootSystemSpec, Weight, Word};

fn main() -> alcove::Result<()> {
    let ctx = EllContext::from_spec(RootSystemSpec::new(Family::A, 2)?, 5)?;
    let x = ctx.from_word(&"s0s1".parse::<Word>()?)?;
    let lambda = Weight::from([1, 0]);
    for (name, profile) in [("Weyl", weyl_profile(&ctx, &x, &lambda)?), ("simple", simple_profile(&ctx, &x, &lambda)?)] {
        println!("{name} module at s0s1.{lambda}:");
        for (deg, cs) in &profile.degrees {
            let text: Vec<String> = cs.iter().map(ToString::to_string).collect();
            println!("  {deg}: {}", text.join(" "));
        }
    }
    let labels = labels_from_expr(&ctx, "L(s0s1;1,0) * L(s0;0,1)")?;
    let g = gfd_tensor(&ctx, &labels)?;
    println!("gfd={} strongly_regular={}", g.gfd, g.strongly_regular);
    Ok(())
}
