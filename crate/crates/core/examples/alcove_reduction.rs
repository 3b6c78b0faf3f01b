//! Reducing weights into the fundamental alcove and reading off the
//! length-zero part of a translation.

use alcove::{EllContext, ExtAffineElement, Family, ReductionResult, RootSystemSpec, Weight};

fn main() -> alcove::Result<()> {
    let ctx = EllContext::from_spec(RootSystemSpec::new(Family::A, 2)?, 5)?;
    println!("alcove weights: {:?}", ctx.fundamental_alcove_weights().iter().map(|w| w.to_string()).collect::<Vec<_>>());

    for tau in [[3, 3], [-1, 2], [7, 1], [4, 9]] {
        let tau = Weight::from(tau);
        match ctx.reduce(&tau)? {
            ReductionResult::Singular { beta, m } => println!("{tau}: on wall beta={beta} m={m}"),
            ReductionResult::Regular { lambda, sign, length, word, .. } => {
                println!("{tau} = {word}.{lambda} (length {length}, sign {sign})")
            }
        }
    }

    for om in ctx.omega_group() {
        println!("omega{} = {} sends 0 to {}", om.index, ctx.describe(&om.elem), om.image_of_zero);
    }
    let t = ExtAffineElement::translation(Weight::from([1, 0]));
    println!("t(varpi_1) = {}", ctx.describe(&t));
    println!("dominant elements of length <= 3: {}", ctx.enumerate_dominant(3).len());
    Ok(())
}
