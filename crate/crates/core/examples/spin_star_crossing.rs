//! Where the single-external-site negativities of two spin stars cross.
//!
//! ```bash
//! cargo run --example spin_star_crossing
//! ```

use thermaneg::analysis::{star_external_crossing, CrossingOptions};

fn main() -> thermaneg::Result<()> {
    let opts = CrossingOptions::default();
    for (a, b) in [(4, 10), (6, 8), (4, 6)] {
        let r = star_external_crossing(a, b, 0.0, &opts)?;
        println!(
            "n={a} vs n={b}: T* = {:.6} ({} sign change{}), n={a} larger below: {}",
            r.t_star,
            r.sign_changes,
            if r.sign_changes == 1 { "" } else { "s" },
            r.a_larger_below
        );
    }
    Ok(())
}
