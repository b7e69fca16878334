//! The `9ⁿ`-chart cover of the torus, handled purely combinatorially.
//!
//! Each circle factor is covered by three arcs labelled 1, 2, 3, where arcs
//! 1 and 3 meet across the identification `t ~ t + 1`. Passing from arc 1 to
//! arc 3 across that seam shifts the coordinate by `+1`, and from 3 to 1 by
//! `−1`. Any two arcs meet, while all three have empty common intersection.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverIndex {
    l: Vec<u8>,
    m: Vec<u8>,
}

/// Coordinate shift of one slot when passing from arc `a` to arc `b`.
fn slot_shift(a: u8, b: u8) -> i64 {
    match (a, b) {
        (1, 3) => 1,
        (3, 1) => -1,
        _ => 0,
    }
}

impl CoverIndex {
    /// Panics unless every entry is in `{1, 2, 3}` and the lengths agree.
    pub fn new(l: Vec<u8>, m: Vec<u8>) -> Self {
        assert_eq!(l.len(), m.len(), "l and m must have equal length");
        assert!(l.iter().chain(&m).all(|v| (1..=3).contains(v)), "cover labels are 1, 2, 3");
        Self { l, m }
    }

    pub fn n(&self) -> usize {
        self.l.len()
    }

    pub fn l(&self) -> &[u8] {
        &self.l
    }

    pub fn m(&self) -> &[u8] {
        &self.m
    }

    /// Chart number `k ∈ 0..9ⁿ` in base-3 digits, `l` first.
    pub fn from_ordinal(n: usize, mut k: usize) -> Self {
        let mut digits = Vec::with_capacity(2 * n);
        for _ in 0..2 * n {
            digits.push((k % 3) as u8 + 1);
            k /= 3;
        }
        digits.reverse();
        let m = digits.split_off(n);
        Self { l: digits, m }
    }

    pub fn all(n: usize) -> impl Iterator<Item = CoverIndex> {
        (0..chart_count(n)).map(move |k| CoverIndex::from_ordinal(n, k))
    }

    /// Shift `(δx, δy)` with chart `j` coordinates = chart `self` coordinates + δ.
    pub fn shift_to(&self, j: &CoverIndex) -> Shift {
        Shift {
            x: self.l.iter().zip(&j.l).map(|(&a, &b)| slot_shift(a, b)).collect(),
            y: self.m.iter().zip(&j.m).map(|(&a, &b)| slot_shift(a, b)).collect(),
        }
    }
}

impl fmt::Display for CoverIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: &[u8]| v.iter().map(u8::to_string).collect::<String>();
        write!(f, "({};{})", s(&self.l), s(&self.m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shift {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
}

impl Shift {
    /// Concatenated `(δx, δy)`, matching the coordinate order of forms.
    pub fn as_coords(&self) -> Vec<i64> {
        self.x.iter().chain(&self.y).copied().collect()
    }

    pub fn add(&self, o: &Shift) -> Shift {
        Shift {
            x: self.x.iter().zip(&o.x).map(|(a, b)| a + b).collect(),
            y: self.y.iter().zip(&o.y).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().chain(&self.y).all(|&v| v == 0)
    }
}

pub fn chart_count(n: usize) -> usize {
    9usize.pow(n as u32)
}

/// Nonempty iff no slot takes all three labels.
pub fn triple_nonempty(i: &CoverIndex, j: &CoverIndex, k: &CoverIndex) -> bool {
    let slot_ok = |a: u8, b: u8, c: u8| !(a != b && b != c && a != c);
    let l_ok = (0..i.n()).all(|s| slot_ok(i.l[s], j.l[s], k.l[s]));
    let m_ok = (0..i.n()).all(|s| slot_ok(i.m[s], j.m[s], k.m[s]));
    l_ok && m_ok
}

/// Triples checked for dimension `n`: every nonempty `i < j < k` when
/// `n ≤ 2`, otherwise `samples` seeded nonempty triples of distinct charts.
pub fn triples(n: usize, samples: usize, seed: u64) -> Vec<[CoverIndex; 3]> {
    if n <= 2 {
        let charts: Vec<CoverIndex> = CoverIndex::all(n).collect();
        let mut out = Vec::new();
        for a in 0..charts.len() {
            for b in a + 1..charts.len() {
                for c in b + 1..charts.len() {
                    if triple_nonempty(&charts[a], &charts[b], &charts[c]) {
                        out.push([charts[a].clone(), charts[b].clone(), charts[c].clone()]);
                    }
                }
            }
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = chart_count(n);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let pick: Vec<usize> = (0..3).map(|_| rng.random_range(0..total)).collect();
        if pick[0] == pick[1] || pick[1] == pick[2] || pick[0] == pick[2] {
            continue;
        }
        let [i, j, k] = [0, 1, 2].map(|t| CoverIndex::from_ordinal(n, pick[t]));
        if triple_nonempty(&i, &j, &k) {
            out.push([i, j, k]);
        }
    }
    out
}

/// One representative ordered pair for every realisable shift pattern.
pub fn pair_representatives(n: usize) -> Vec<(CoverIndex, CoverIndex)> {
    let mut out = Vec::new();
    let patterns = 3usize.pow(2 * n as u32);
    for code in 0..patterns {
        let mut c = code;
        let (mut li, mut lj, mut mi, mut mj) = (vec![], vec![], vec![], vec![]);
        for slot in 0..2 * n {
            let (a, b) = match c % 3 {
                0 => (2, 2),
                1 => (1, 3),
                _ => (3, 1),
            };
            c /= 3;
            if slot < n {
                li.push(a);
                lj.push(b);
            } else {
                mi.push(a);
                mj.push(b);
            }
        }
        out.push((CoverIndex::new(li, mi), CoverIndex::new(lj, mj)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality() {
        assert_eq!(CoverIndex::all(1).count(), 9);
        assert_eq!(CoverIndex::all(2).count(), 81);
        let mut all: Vec<_> = CoverIndex::all(2).collect();
        all.dedup();
        assert_eq!(all.len(), 81);
    }

    #[test]
    fn wrap_shifts() {
        let i = CoverIndex::new(vec![1, 2], vec![3, 3]);
        let j = CoverIndex::new(vec![3, 1], vec![1, 3]);
        let s = i.shift_to(&j);
        assert_eq!(s.x, vec![1, 0]);
        assert_eq!(s.y, vec![-1, 0]);
        assert_eq!(j.shift_to(&i).x, vec![-1, 0]);
    }

    #[test]
    fn three_arcs_do_not_meet() {
        let c = |v: u8| CoverIndex::new(vec![v], vec![1]);
        assert!(!triple_nonempty(&c(1), &c(2), &c(3)));
        assert!(triple_nonempty(&c(1), &c(3), &c(3)));
    }

    #[test]
    fn shifts_sum_to_zero_on_nonempty_triples() {
        for [i, j, k] in triples(1, 0, 0) {
            let total = i.shift_to(&j).add(&j.shift_to(&k)).add(&k.shift_to(&i));
            assert!(total.is_zero(), "{i} {j} {k}");
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(triples(3, 20, 7), triples(3, 20, 7));
        assert!(triples(3, 20, 7).iter().all(|[i, j, k]| triple_nonempty(i, j, k)));
    }

    #[test]
    fn representatives_cover_all_patterns() {
        let reps = pair_representatives(2);
        assert_eq!(reps.len(), 81);
        let mut shifts: Vec<_> = reps.iter().map(|(i, j)| i.shift_to(j)).collect();
        shifts.sort();
        shifts.dedup();
        assert_eq!(shifts.len(), 81);
    }
}
