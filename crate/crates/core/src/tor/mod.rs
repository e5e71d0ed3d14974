//! Bigraded Tor of the face ring `k(K)` over the rationals, computed from the
//! finite cochain complex `A*(K)` and, independently, from Hochster's
//! formula; cup products, fundamental classes and duality.

mod classify;
mod cohomology;
mod forms;
mod hochster;
mod koszul;

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

pub use classify::{cm_gorenstein_classify, CmGorensteinVerdict};
pub use cohomology::{
    fundamental_class, poincare_duality_check, CohomologyClass, DualityReport, KoszulAlgebra,
    PairingRank,
};
pub use forms::{tor_with_forms, FormsStrand};
pub(crate) use forms::face_ring_monomials;
pub use hochster::hochster_betti;
pub use koszul::{bigraded_betti, koszul_differential, KoszulMonomial, KoszulStrand};

use crate::complex::SimplicialComplex;

/// `b_{-q,2p}` for `q, p ≥ 0`; only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedBettiTable {
    pub m: usize,
    pub n: usize,
    entries: BTreeMap<(usize, usize), u64>,
}

/// One serialized cell: `rank = β^{-i,2j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: usize,
    pub rank: u64,
}

impl BigradedBettiTable {
    pub fn new(m: usize, n: usize) -> Self {
        BigradedBettiTable { m, n, entries: BTreeMap::new() }
    }

    pub fn for_complex(k: &SimplicialComplex) -> Self {
        Self::new(k.m(), k.max_face_size())
    }

    pub fn from_entries(m: usize, n: usize, entries: impl IntoIterator<Item = BettiEntry>) -> Self {
        let mut t = Self::new(m, n);
        for e in entries {
            t.set(e.i, e.j, e.rank);
        }
        t
    }

    /// `b_{-q,2p}`
    pub fn get(&self, q: usize, p: usize) -> u64 {
        self.entries.get(&(q, p)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, q: usize, p: usize, rank: u64) {
        if rank == 0 {
            self.entries.remove(&(q, p));
        } else {
            self.entries.insert((q, p), rank);
        }
    }

    pub fn add(&mut self, q: usize, p: usize, rank: u64) {
        let v = self.get(q, p) + rank;
        self.set(q, p, v);
    }

    /// Nonzero entries as `(q, p, rank)`, ordered by `(q, p)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(q, p), &r)| (q, p, r))
    }

    pub fn entries(&self) -> Vec<BettiEntry> {
        self.iter().map(|(i, j, rank)| BettiEntry { i, j, rank }).collect()
    }

    pub fn max_q(&self) -> usize {
        self.entries.keys().map(|&(q, _)| q).max().unwrap_or(0)
    }

    pub fn max_p(&self) -> usize {
        self.entries.keys().map(|&(_, p)| p).max().unwrap_or(0)
    }

    /// `b_k = Σ_{2p - q = k} b_{-q,2p}` for `k = 0..=max`.
    pub fn total_betti(&self) -> Vec<u64> {
        let top = self.iter().map(|(q, p, _)| 2 * p - q).max().unwrap_or(0);
        let mut out = vec![0u64; top + 1];
        for (q, p, r) in self.iter() {
            out[2 * p - q] += r;
        }
        out
    }

    /// `χ_p = Σ_q (-1)^q b_{-q,2p}`
    pub fn strand_euler(&self, p: usize) -> i64 {
        self.iter()
            .filter(|&(_, pp, _)| pp == p)
            .map(|(q, _, r)| if q % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    /// Second-quadrant grid: rows `2p` from the top down, columns `-q` from
    /// left (most negative) to right (`0`).
    pub fn render_grid(&self) -> String {
        let max_q = self.max_q();
        let max_p = self.max_p();
        let width = self
            .iter()
            .map(|(_, _, r)| r.to_string().len())
            .chain([format!("-{max_q}").len(), 1])
            .max()
            .unwrap_or(1)
            + 1;
        let label = format!("{}", 2 * max_p).len() + 1;
        let mut out = String::new();
        for p in (0..=max_p).rev() {
            out.push_str(&format!("{:>label$} |", 2 * p));
            for q in (0..=max_q).rev() {
                let r = self.get(q, p);
                let cell = if r == 0 { ".".to_string() } else { r.to_string() };
                out.push_str(&format!("{cell:>width$}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("{:>label$} +", ""));
        out.push_str(&"-".repeat(width * (max_q + 1)));
        out.push('\n');
        out.push_str(&format!("{:>label$}  ", ""));
        for q in (0..=max_q).rev() {
            let h = if q == 0 { "0".to_string() } else { format!("-{q}") };
            out.push_str(&format!("{h:>width$}"));
        }
        out.push('\n');
        out
    }
}

impl Serialize for BigradedBettiTable {
    /// A JSON array of `{i, j, rank}` cells (nonzero ones only).
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for e in self.entries() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

/// `dim H^p(U_R(K)) = Σ_{j - i = p} β^{-i,2j}` for `p = 0..=m`.
pub fn real_regraded_betti(table: &BigradedBettiTable) -> Vec<u64> {
    let mut out = vec![0u64; table.m + 1];
    for (q, p, r) in table.iter() {
        out[p - q] += r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_bookkeeping() {
        let mut t = BigradedBettiTable::new(5, 2);
        t.set(0, 0, 1);
        t.set(1, 2, 5);
        t.set(2, 3, 5);
        t.set(3, 5, 1);
        assert_eq!(t.total_betti(), vec![1, 0, 0, 5, 5, 0, 0, 1]);
        assert_eq!(t.strand_euler(2), -5);
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.starts_with(r#"[{"i":0,"j":0,"rank":1},"#));
        let grid = t.render_grid();
        assert!(grid.lines().next().unwrap().trim_start().starts_with("10 |"));
        assert_eq!(real_regraded_betti(&t), vec![1, 10, 1, 0, 0, 0]);
    }
}
