#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use zrisk::fmea::{Factor, SodctRating};
use zrisk::fuzzy::{ImportanceTerm, RatingTerm, ReliabilityTerm, Tfn};
use zrisk::swara::CriterionJudgment;
use zrisk::waspas::{Criterion, RatingJudgment, WaspasInput};

pub const FACTORS: [&str; 5] = ["S", "O", "D", "C", "T"];

/// Monotone map from a 1..=10 rating onto the seven rating terms.
pub fn term_for(value: u8) -> RatingTerm {
    RatingTerm::ALL[(value as usize - 1) * 7 / 10]
}

pub fn random_tfn(rng: &mut StdRng, lo: f64, hi: f64) -> Tfn {
    let mut v = [rng.gen_range(lo..hi), rng.gen_range(lo..hi), rng.gen_range(lo..hi)];
    v.sort_by(f64::total_cmp);
    Tfn::new(v[0], v[1], v[2]).unwrap()
}

/// A random SODCT panel: integer ratings per (expert, failure mode,
/// factor), the matching linguistic judgments with random reliability, and
/// optionally one row that dominates every other row.
pub struct Panel {
    pub ids: Vec<String>,
    pub input: WaspasInput,
    pub sodct: Vec<SodctRating>,
}

pub fn random_panel(rng: &mut StdRng, m: usize, experts: usize, dominant: Option<usize>) -> Panel {
    let ids: Vec<String> = (1..=m).map(|i| format!("F{i}")).collect();
    let mut values = vec![vec![[0u8; 5]; m]; experts];
    let mut rel = vec![vec![[ReliabilityTerm::Medium; 5]; m]; experts];
    for e in 0..experts {
        for i in 0..m {
            for f in 0..5 {
                values[e][i][f] = rng.gen_range(1..=10);
                rel[e][i][f] = *ReliabilityTerm::ALL.choose(rng).unwrap();
            }
        }
    }
    if let Some(d) = dominant {
        for e in 0..experts {
            for f in 0..5 {
                let best = (0..m).filter(|&i| i != d).map(|i| values[e][i][f]).max().unwrap_or(1);
                values[e][d][f] = best;
                rel[e][d][f] = ReliabilityTerm::VeryHigh;
            }
        }
        // strictly better somewhere
        let f = rng.gen_range(0..5);
        for grid in values.iter_mut() {
            for (i, row) in grid.iter_mut().enumerate() {
                row[f] = if i == d { 10 } else { row[f].min(7) };
            }
        }
    }
    let mut judgments = Vec::new();
    let mut sodct = Vec::new();
    for e in 0..experts {
        let expert = format!("E{}", e + 1);
        for i in 0..m {
            for (f, factor) in Factor::ALL.iter().enumerate() {
                let v = values[e][i][f];
                sodct.push(SodctRating::new(&expert, &ids[i], *factor, v));
                judgments.push(RatingJudgment::new(
                    &expert,
                    &ids[i],
                    FACTORS[f],
                    term_for(v),
                    Some(rel[e][i][f]),
                ));
            }
        }
    }
    Panel {
        input: WaspasInput {
            alternatives: ids.clone(),
            criteria: FACTORS.iter().map(|f| Criterion::beneficial(f)).collect(),
            judgments,
        },
        ids,
        sodct,
    }
}

/// Random but valid weighting judgments over `n` criteria.
pub fn random_weighting(rng: &mut StdRng, n: usize, experts: usize) -> Vec<CriterionJudgment> {
    let criteria: Vec<String> = (1..=n).map(|j| format!("C{j}")).collect();
    let mut out = Vec::new();
    for e in 0..experts {
        let expert = format!("E{}", e + 1);
        let mut order = criteria.clone();
        order.shuffle(rng);
        for (pos, c) in order.iter().enumerate() {
            if pos == 0 {
                out.push(CriterionJudgment::top(&expert, c));
            } else {
                out.push(CriterionJudgment::ranked(
                    &expert,
                    c,
                    pos as u32 + 1,
                    *ImportanceTerm::ALL.choose(rng).unwrap(),
                    *ReliabilityTerm::ALL.choose(rng).unwrap(),
                ));
            }
        }
    }
    out
}

pub fn tied_pairs(groups: &[Vec<String>]) -> usize {
    groups.iter().map(|g| g.len() * (g.len() - 1) / 2).sum()
}
