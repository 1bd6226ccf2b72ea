//! Exhaustive enumeration of irreducible totally positive polynomials with
//! small trace.
//!
//! Candidates are built one elementary symmetric value at a time. Writing
//! `f = sum (-1)^i e_i x^(n-i)`, the derivative `f^(n-k)` depends only on
//! `e_0..e_k`, and (divided by `(n-k)!`) equals
//! `P_k(x) = sum_{i<=k} (-1)^i binom(n-i, k-i) e_i x^(k-i)` with constant
//! term `(-1)^k e_k`. If `f` has simple positive roots then so does every
//! `P_k`, and the roots of `P_{k-1}` interlace those of `P_k`. Fixing
//! `e_1..e_{k-1}`, that interlacing pins `e_k` to an interval.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::factor::{is_irreducible, MAX_IRREDUCIBILITY_DEGREE};
use super::polynomial::Polynomial;
use super::roots::is_totally_positive;
use super::sturm::{Dyadic, SturmSequence};
use super::theorem2::{verify_theorem2, PolyReport};
use crate::error::{Error, Result};

/// Which pruning rules the search applies at interior nodes. Every
/// combination that bounds the search yields the same corpus; the exact
/// leaf test is always applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PruneConfig {
    /// Bound `e_k` by sign alternation of `P_k` at the roots of `P_{k-1}`.
    pub interlacing: bool,
    /// Bound `e_k` from above by Newton's inequality.
    pub newton: bool,
    /// Require every `P_k` to have `k` simple positive roots, by an exact
    /// Sturm count.
    pub sturm_each_level: bool,
}

impl Default for PruneConfig {
    fn default() -> Self {
        Self { interlacing: true, newton: true, sturm_each_level: false }
    }
}

impl PruneConfig {
    /// Newton bounds plus exact Sturm checks, without interlacing.
    pub fn exact() -> Self {
        Self { interlacing: false, newton: true, sturm_each_level: true }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub min_degree: usize,
    pub max_degree: usize,
    pub prune: PruneConfig,
    /// Drop reducible polynomials (the default).
    pub irreducible_only: bool,
}

impl CorpusConfig {
    pub fn up_to(max_degree: usize) -> Self {
        Self { min_degree: 1, max_degree, prune: PruneConfig::default(), irreducible_only: true }
    }
}

#[derive(Clone, Debug)]
pub struct Corpus {
    /// Ordered by degree, then lexicographically by leading-first
    /// coefficients.
    pub members: Vec<PolyReport>,
    /// Member count for every degree searched (zero entries included).
    pub counts: BTreeMap<usize, usize>,
    /// Interior nodes expanded, summed over degrees.
    pub nodes: u64,
}

impl Corpus {
    pub fn total(&self) -> usize {
        self.members.len()
    }

    /// Total count restricted to degrees `>= 2`.
    pub fn total_nonlinear(&self) -> usize {
        self.counts.iter().filter(|(d, _)| **d >= 2).map(|(_, c)| c).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for m in &self.members {
            out.push_str(&csv_row(m));
            out.push('\n');
        }
        out
    }
}

pub const CSV_HEADER: &str = "degree,coeffs,trace,E,Delta,diffsq_squarefree,thm2_margin_log";

pub fn csv_row(m: &PolyReport) -> String {
    let coeffs: Vec<String> = m.poly.leading_first().iter().map(|c| c.to_string()).collect();
    let sq = m.diffsq_squarefree.map(|b| b.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{}",
        m.degree(),
        coeffs.join("|"),
        m.s1,
        m.energy,
        m.discriminant,
        sq,
        m.thm2_margin_log
    )
}

/// Irreducible totally positive monic polynomials of degree `1..=max_degree`
/// with trace `< 2n`, using the default pruning.
pub fn enumerate_corpus(max_degree: usize) -> Result<Corpus> {
    enumerate_corpus_with(&CorpusConfig::up_to(max_degree))
}

pub fn enumerate_corpus_with(cfg: &CorpusConfig) -> Result<Corpus> {
    if cfg.max_degree > MAX_IRREDUCIBILITY_DEGREE {
        return Err(Error::UnsupportedDegree { degree: cfg.max_degree, supported: "1..=9" });
    }
    if cfg.min_degree == 0 || cfg.min_degree > cfg.max_degree {
        return Err(Error::invalid("need 1 <= min_degree <= max_degree"));
    }
    if !cfg.prune.interlacing && !cfg.prune.newton {
        return Err(Error::invalid("at least one of interlacing or newton pruning is required to bound the search"));
    }
    let mut members = Vec::new();
    let mut counts = BTreeMap::new();
    let mut nodes = 0;
    for n in cfg.min_degree..=cfg.max_degree {
        let (polys, visited) = search_degree(n, cfg.prune);
        nodes += visited;
        let kept: Vec<Polynomial<BigInt>> = if cfg.irreducible_only {
            polys
                .into_par_iter()
                .map(|p| is_irreducible(&p).map(|irr| irr.then_some(p)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect()
        } else {
            polys
        };
        let mut reports = kept.par_iter().map(verify_theorem2).collect::<Result<Vec<_>>>()?;
        reports.sort_by(|a, b| a.poly.leading_first().cmp(&b.poly.leading_first()));
        counts.insert(n, reports.len());
        members.extend(reports);
    }
    Ok(Corpus { members, counts, nodes })
}

/// All monic degree-`n` polynomials with simple positive roots and trace
/// `< 2n`, plus the number of nodes visited.
fn search_degree(n: usize, prune: PruneConfig) -> (Vec<Polynomial<BigInt>>, u64) {
    let parts: Vec<(Vec<Polynomial<BigInt>>, u64)> = (1..2 * n as i64)
        .into_par_iter()
        .map(|e1| {
            let mut s = Search { n, prune, found: Vec::new(), nodes: 0, e: vec![1, e1] };
            s.descend(&[e1 as f64 / n as f64]);
            (s.found, s.nodes)
        })
        .collect();
    let mut all = Vec::new();
    let mut nodes = 0;
    for (f, v) in parts {
        all.extend(f);
        nodes += v;
    }
    (all, nodes)
}

struct Search {
    n: usize,
    prune: PruneConfig,
    found: Vec<Polynomial<BigInt>>,
    nodes: u64,
    /// `e_0..e_k` fixed so far.
    e: Vec<i64>,
}

impl Search {
    /// `crit` holds the roots of `P_k` for the current `k = e.len() - 1`.
    fn descend(&mut self, crit: &[f64]) {
        self.nodes += 1;
        let k = self.e.len() - 1;
        if k == self.n {
            let f = self.level_poly(k);
            if f.is_squarefree() && is_totally_positive(&f) {
                self.found.push(f);
            }
            return;
        }
        let k = k + 1;
        let Some((lo, hi)) = self.range(k, crit) else { return };
        for ek in lo..=hi {
            self.e.push(ek);
            if self.prune.sturm_each_level && k < self.n && !has_simple_positive_roots(&self.level_poly(k)) {
                self.e.pop();
                continue;
            }
            if k == self.n || !self.prune.interlacing {
                self.descend(&[]);
            } else if let Some(next) = self.roots_between(k, crit) {
                self.descend(&next);
            }
            self.e.pop();
        }
    }

    /// Admissible integer range for `e_k`.
    fn range(&self, k: usize, crit: &[f64]) -> Option<(i64, i64)> {
        let mut lo = 1i64;
        let mut hi = i64::MAX;
        if self.prune.newton {
            hi = hi.min(self.newton_bound(k));
        }
        if self.prune.interlacing {
            let coeffs = self.level_coeffs(k);
            for (idx, &c) in crit.iter().enumerate() {
                let i = idx + 1;
                let (q, mag) = horner_with_magnitude(&coeffs, c);
                let slack = 1e-9 * (1.0 + mag);
                // sign of P_k at the i-th critical point must be (-1)^(k-i)
                let s = if (k - i) % 2 == 0 { q } else { -q };
                if i % 2 == 0 {
                    lo = lo.max((-s - slack).floor() as i64 + 1);
                } else {
                    hi = hi.min((s + slack).ceil() as i64 - 1);
                }
            }
        }
        (hi != i64::MAX && lo <= hi).then_some((lo, hi))
    }

    /// `floor(e_{k-1}^2 C(n,k) C(n,k-2) / (C(n,k-1)^2 e_{k-2}))`, or the
    /// trace bound at `k = 1`.
    fn newton_bound(&self, k: usize) -> i64 {
        if k == 1 {
            return 2 * self.n as i64 - 1;
        }
        let n = self.n as u64;
        let num = (self.e[k - 1] as i128).pow(2) * binom(n, k as u64) as i128 * binom(n, k as u64 - 2) as i128;
        let den = (binom(n, k as u64 - 1) as i128).pow(2) * self.e[k - 2] as i128;
        (num / den).min(i64::MAX as i128) as i64
    }

    /// Leading-first f64 coefficients of `P_k` with `e_k` taken as zero.
    fn level_coeffs(&self, k: usize) -> Vec<f64> {
        let n = self.n as u64;
        (0..=k)
            .map(|i| {
                if i == k {
                    return 0.0;
                }
                let c = binom(n - i as u64, (k - i) as u64) as f64 * self.e[i] as f64;
                if i % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect()
    }

    fn level_poly(&self, k: usize) -> Polynomial<BigInt> {
        let n = self.n as u64;
        Polynomial::from_leading_first(
            (0..=k)
                .map(|i| {
                    let c = BigInt::from(binom(n - i as u64, (k - i) as u64)) * self.e[i];
                    if i % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect(),
        )
    }

    /// Roots of `P_k` located by bisection in the gaps between `crit`, or
    /// `None` when some gap shows no sign change.
    fn roots_between(&self, k: usize, crit: &[f64]) -> Option<Vec<f64>> {
        let mut coeffs = self.level_coeffs(k);
        coeffs[k] = if k % 2 == 0 { 1.0 } else { -1.0 } * self.e[k] as f64;
        let top = self.e[1] as f64;
        let mut ends = Vec::with_capacity(k + 1);
        ends.push(0.0);
        ends.extend_from_slice(crit);
        ends.push(top);
        ends.windows(2).map(|w| bisect(&coeffs, w[0], w[1])).collect()
    }
}

fn has_simple_positive_roots(p: &Polynomial<BigInt>) -> bool {
    p.is_squarefree() && SturmSequence::new(p).count_above(&Dyadic::integer(0)) == p.degree()
}

fn horner_with_magnitude(coeffs: &[f64], x: f64) -> (f64, f64) {
    let (mut v, mut m) = (0.0, 0.0);
    for &c in coeffs {
        v = v * x + c;
        m = m * x.abs() + c.abs();
    }
    (v, m)
}

fn bisect(coeffs: &[f64], mut a: f64, mut b: f64) -> Option<f64> {
    let eval = |x: f64| horner_with_magnitude(coeffs, x).0;
    let fa = eval(a);
    let fb = eval(b);
    if fa == 0.0 || fb == 0.0 || (fa > 0.0) == (fb > 0.0) {
        return None;
    }
    let neg_left = fa < 0.0;
    loop {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            return Some(m);
        }
        let fm = eval(m);
        match fm.partial_cmp(&0.0) {
            Some(Ordering::Equal) | None => return Some(m),
            Some(Ordering::Less) if neg_left => a = m,
            Some(Ordering::Greater) if !neg_left => a = m,
            _ => b = m,
        }
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(c: &Corpus) -> Vec<Vec<i64>> {
        c.members
            .iter()
            .map(|m| m.poly.leading_first().iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn degree_two_is_golden_ratio_square() {
        let c = enumerate_corpus(2).unwrap();
        assert_eq!(coeffs(&c), vec![vec![1, -1], vec![1, -3, 1]]);
        assert_eq!(c.counts[&1], 1);
        assert_eq!(c.counts[&2], 1);
        assert_eq!(c.total_nonlinear(), 1);
    }

    #[test]
    fn degree_three_matches_known_minimal_trace() {
        let c = enumerate_corpus_with(&CorpusConfig { min_degree: 3, ..CorpusConfig::up_to(3) }).unwrap();
        // x^3 - 5x^2 + 6x - 1 has trace 5 = 2n - 1
        assert!(coeffs(&c).contains(&vec![1, -5, 6, -1]));
        for m in &c.members {
            assert!(m.totally_positive && m.irreducible == Some(true));
            assert!(m.s1 < BigInt::from(6) && m.thm2_holds);
        }
    }

    #[test]
    fn pruning_configurations_agree() {
        let a = enumerate_corpus(5).unwrap();
        for prune in [
            PruneConfig::exact(),
            PruneConfig { interlacing: true, newton: false, sturm_each_level: false },
            PruneConfig { interlacing: true, newton: true, sturm_each_level: true },
        ] {
            let b = enumerate_corpus_with(&CorpusConfig { prune, ..CorpusConfig::up_to(5) }).unwrap();
            assert_eq!(coeffs(&a), coeffs(&b), "{prune:?}");
        }
    }

    #[test]
    fn reducible_members_appear_when_unfiltered() {
        let cfg = CorpusConfig { min_degree: 3, irreducible_only: false, ..CorpusConfig::up_to(3) };
        let c = enumerate_corpus_with(&cfg).unwrap();
        // (x - 1)(x^2 - 3x + 1)
        assert!(coeffs(&c).contains(&vec![1, -4, 4, -1]));
    }

    #[test]
    fn rejects_unsupported_degree() {
        assert!(matches!(enumerate_corpus(10), Err(Error::UnsupportedDegree { .. })));
    }

    #[test]
    fn csv_shape() {
        let c = enumerate_corpus(2).unwrap();
        let csv = c.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[2], "2,1|-3|1,3,5,5,true,0");
    }
}
