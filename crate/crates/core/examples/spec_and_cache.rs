//! JSON monoid specs, their canonical form and hash, and the atom cache.

use krull::cli::cache::AtomCache;
use krull::cli::spec::MonoidSpec;

fn main() -> krull::Result<()> {
    let a = MonoidSpec::from_json(r#"{"group":[4,2]}"#)?;
    let b = MonoidSpec::from_json(
        r#"{"group":[2,4],"primes":[{"class":[0,1],"count":1},{"class":[0,2],"count":1},{"class":[0,3],"count":1},{"class":[1,0],"count":1},{"class":[1,1],"count":1},{"class":[1,2],"count":1},{"class":[1,3],"count":1},{"class":[0,0],"count":1}]}"#,
    )?;
    println!("canonical: {}", a.canonical_json()?);
    println!("same hash: {}", a.hash()? == b.hash()?);

    let dir = std::env::temp_dir().join(format!("krull-example-{}", std::process::id()));
    let cache = AtomCache::new(&dir);
    let MonoidSpec::Block(block) = a.canonical()? else {
        unreachable!("block spec")
    };
    for _ in 0..2 {
        let (table, status) = cache.class_atoms(&block)?;
        println!("{} atoms ({status:?})", table.len());
    }
    for entry in cache.list()? {
        println!("{} {} bytes, valid = {}", entry.file, entry.bytes, entry.valid);
    }
    println!("purged {}", cache.purge()?);
    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}
