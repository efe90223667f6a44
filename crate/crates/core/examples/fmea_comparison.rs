//! Run the bundled demo panel through all three methods and compare ranks.
//!
//!     cargo run --example fmea_comparison

use zrisk::io::{demo, run_analysis, AnalysisConfig};

fn main() -> zrisk::Result<()> {
    let report = run_analysis(&AnalysisConfig::default(), &demo::inputs()?)?;
    let cmp = &report.comparison;

    print!("{:<4}", "");
    for m in &cmp.methods {
        print!("{:>22}", m.title());
    }
    println!();
    for row in &cmp.rows {
        print!("{:<4}", row.id);
        for c in &row.cells {
            print!("{:>16.4} ({:>2})", c.score, c.rank);
        }
        println!();
    }
    for a in &cmp.agreement {
        println!("spearman {} vs {}: {:?}", a.first, a.second, a.spearman);
    }
    if let Some(rpn) = &report.rpn {
        println!("RPN tie groups: {:?}", rpn.ties);
    }
    Ok(())
}
