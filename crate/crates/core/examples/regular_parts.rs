//! Regular parts of tensor products in the quotient by negligible objects.

use alcove::cli::labels_from_expr;
use alcove::fusion::Verlinde;
use alcove::regquot::{builtin_a2_rules, omega_twist, translate, Factor, RegEngine};
use alcove::{EllContext, Family, RootSystemSpec, Weight, Word};

fn main() -> alcove::Result<()> {
    let ctx = EllContext::from_spec(RootSystemSpec::new(Family::A, 2)?, 5)?;
    let table = Verlinde::new(ctx.clone()).build_table()?;
    let rules = builtin_a2_rules();
    let engine = RegEngine::new(&ctx, &rules, &table)?;

    for expr in ["L(s0;1,1) * L(s0;1,1)", "L(5,0) * L(0,5)", "L(0,5) * L(0,5)", "L(s0;1,0) * T(3,3)"] {
        let labels = labels_from_expr(&ctx, expr)?;
        println!("{expr} -> {}", engine.regpart_of_labels(&labels)?);
    }

    let s0 = Factor::simple("s0".parse::<Word>()?, Weight::from([0, 0]), 0);
    let base = engine.regpart_tensor(&s0, &s0)?;
    println!("at 1,1: {}", translate(&base, &Weight::from([1, 1]), &ctx)?);
    for om in ctx.omega_group() {
        println!("twist {}: {}", om.index, omega_twist(&base, om.index, &ctx)?);
    }
    Ok(())
}
