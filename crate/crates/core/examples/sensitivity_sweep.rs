//! Sweep the five reference SODCT weight cases over the demo panel.
//!
//!     cargo run --example sensitivity_sweep

use zrisk::io::demo;
use zrisk::sensitivity::{sodct_preset_cases, stability_sweep, WeightCase};
use zrisk::waspas::{MatrixMode, DEFAULT_TIE_TOLERANCE};

fn main() -> zrisk::Result<()> {
    let inputs = demo::inputs()?;
    let input = inputs.waspas_input();

    let mut cases = sodct_preset_cases();
    // weights need not sum to 1, they are renormalized
    cases.push(WeightCase::new("flat", &[("S", 1.0), ("O", 1.0), ("D", 1.0), ("C", 1.0), ("T", 1.0)]));

    let st = stability_sweep(&input, &cases, MatrixMode::Z, DEFAULT_TIE_TOLERANCE)?;
    println!("{:<4}{}", "", st.cases.iter().map(|c| format!("{c:>8}")).collect::<String>());
    for (i, a) in st.alternatives.iter().enumerate() {
        let ranks: String = st.ranks[i].iter().map(|r| format!("{r:>8}")).collect();
        println!("{a:<4}{ranks}   range {}-{}", st.ranges[i].min, st.ranges[i].max);
    }
    for p in &st.pairwise {
        println!("{} / {}: {:?}", p.first, p.second, p.spearman);
    }
    println!("always first: {:?}", st.always_first);
    Ok(())
}
