//! Persisting a fusion table and reloading it with digest checking.

use alcove::fusion::{cache_path, load_or_build, verify_cache, Verlinde};
use alcove::{EllContext, Family, RootSystemSpec};

fn main() -> alcove::Result<()> {
    let dir = std::env::temp_dir().join("alcove-example-cache");
    std::fs::create_dir_all(&dir)?;
    let engine = Verlinde::new(EllContext::from_spec(RootSystemSpec::new(Family::A, 2)?, 7)?);
    let cold = load_or_build(&engine, &dir)?;
    let warm = load_or_build(&engine, &dir)?;
    assert_eq!(cold.to_json(), warm.to_json());
    verify_cache(&engine, &dir)?;
    println!("{} ok ({} weights)", cache_path(&engine, &dir).display(), warm.weights().len());
    Ok(())
}
