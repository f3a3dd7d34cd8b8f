//! Every partition family with its ids, masks and boundary areas.
//!
//! ```bash
//! cargo run --example partition_families
//! ```

use thermaneg::lattice::Topology;
use thermaneg::partitions::Family;

fn main() -> thermaneg::Result<()> {
    let families = [
        ("even-odd", Family::EvenOdd),
        ("half-half", Family::HalfHalf),
        ("blocks", Family::Blocks(None)),
        ("transfer", Family::Transfer),
        ("transfer-reverse", Family::TransferReverse),
        ("central", Family::Central),
        ("external", Family::External(Some(vec![2, 5]))),
    ];
    for topology in [Topology::RingNn, Topology::Star] {
        println!("{topology}, n = 8");
        for (name, family) in &families {
            for p in family.generate(8, topology)? {
                println!("  {name:<17} {:<12} {}  area {}", p.id(), p.mask(), p.area());
            }
        }
    }
    Ok(())
}
