//! Descending-score ranking with explicit tie groups.

/// Ranks and tie groups for a list of scores.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranked {
    /// Rank of each input position (1 = highest score). Tied entries share
    /// the smallest rank of their group, so `[9, 9, 5]` ranks as `[1, 1, 3]`.
    pub ranks: Vec<usize>,
    /// Index groups of size >= 2 whose scores are tied, ordered by rank.
    pub ties: Vec<Vec<usize>>,
}

impl Ranked {
    /// Number of unordered pairs that share a rank.
    pub fn tied_pairs(&self) -> usize {
        self.ties.iter().map(|g| g.len() * (g.len() - 1) / 2).sum()
    }
}

/// Rank `scores` from highest to lowest.
///
/// Two scores are tied when they differ from the first (highest) score of
/// the current group by at most `tolerance`; a tolerance of `0.0` groups only
/// exactly equal scores. Equal inputs keep their input order, so the output
/// is deterministic.
pub fn rank_descending(scores: &[f64], tolerance: f64) -> Ranked {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&i, &j| scores[j].total_cmp(&scores[i]));

    let mut ranks = vec![0; scores.len()];
    let mut ties = Vec::new();
    let mut pos = 0;
    while pos < order.len() {
        let leader = scores[order[pos]];
        let mut end = pos + 1;
        while end < order.len() && (leader - scores[order[end]]).abs() <= tolerance {
            end += 1;
        }
        for &idx in &order[pos..end] {
            ranks[idx] = pos + 1;
        }
        if end - pos > 1 {
            let mut group = order[pos..end].to_vec();
            group.sort_unstable();
            ties.push(group);
        }
        pos = end;
    }
    Ranked { ranks, ties }
}

/// Mid-ranks (average rank for tied values) in ascending order of value.
pub fn mid_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut out = vec![0.0; values.len()];
    let mut pos = 0;
    while pos < order.len() {
        let mut end = pos + 1;
        while end < order.len() && values[order[end]] == values[order[pos]] {
            end += 1;
        }
        // positions pos..end hold 1-based ranks pos+1..=end
        let avg = (pos + 1 + end) as f64 / 2.0;
        for &idx in &order[pos..end] {
            out[idx] = avg;
        }
        pos = end;
    }
    out
}
