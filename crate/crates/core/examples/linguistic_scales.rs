//! Print the linguistic scales and the Z-number to TFN conversion tables.
//!
//!     cargo run --example linguistic_scales

use zrisk::fuzzy::{rating_transform_table, weighting_transform_table, EiMode, ZNumber};
use zrisk::Tfn;

fn main() -> zrisk::Result<()> {
    // a single conversion: restriction scaled by sqrt(centroid of reliability)
    let z = ZNumber::new(Tfn::new(5.0, 7.0, 9.0)?, Tfn::new(0.7, 0.9, 1.0)?)?;
    println!("(G, VH) -> {:.4}\n", z.to_tfn());

    println!("importance x reliability");
    for row in weighting_transform_table(EiMode::Table) {
        println!("  ({:>3}, {:>2})  {:.2}", row.first, row.reliability, row.tfn);
    }
    println!("\nrating x reliability");
    for row in rating_transform_table() {
        println!("  ({:>2}, {:>2})  {:.2}", row.first, row.reliability, row.tfn);
    }
    Ok(())
}
