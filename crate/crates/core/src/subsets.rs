//! Maximal commuting subsets of Pauli strings.
//!
//! A maximal set of pairwise-commuting non-identity Pauli strings on `n`
//! qubits is the nonzero part of a Lagrangian subspace of `F_2^{2n}`; it
//! has `2^n - 1` members and there are `∏_{k=1..n} (2^k + 1)` of them.
//! [`enumerate_maximal_subsets`] lists them exactly for small `n` by
//! walking reduced-echelon isotropic bases, and [`greedy_candidates`]
//! builds high-overlap subsets for registers beyond the enumeration cap.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{ensure_same_dim, PdcsError, Result};
use crate::operator::{CMatrix, DenseOperator};
use crate::pauli::{all_pauli_strings, PauliString};

/// Default largest `n` for exhaustive enumeration (75,735 subsets at n = 5).
pub const DEFAULT_ENUMERATION_CAP: usize = 5;

/// Relative slack under which two overlap scores count as tied.
pub(crate) const TIE_TOLERANCE: f64 = 1e-12;

/// A list of distinct, pairwise-commuting, non-identity Pauli strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommutingSubset {
    n: usize,
    members: Vec<PauliString>,
}

impl CommutingSubset {
    pub fn new(members: Vec<PauliString>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| PdcsError::validation("commuting subset must be nonempty"))?;
        let n = first.n();
        let mut seen = HashSet::new();
        for (i, p) in members.iter().enumerate() {
            ensure_same_dim(n, p.n())?;
            if p.is_identity() {
                return Err(PdcsError::validation(
                    "identity is not allowed in a commuting subset",
                ));
            }
            if !seen.insert(*p) {
                return Err(PdcsError::validation(format!("duplicate member {p}")));
            }
            for q in &members[..i] {
                if !p.commutes_with(q) {
                    return Err(PdcsError::Contract(format!("{q} and {p} do not commute")));
                }
            }
        }
        Ok(CommutingSubset { n, members })
    }

    pub fn from_labels(labels: &[&str]) -> Result<Self> {
        let members = labels
            .iter()
            .map(|l| PauliString::parse_label(l))
            .collect::<Result<Vec<_>>>()?;
        CommutingSubset::new(members)
    }

    /// All nonzero combinations of an isotropic basis given as symplectic codes.
    fn from_basis(n: usize, basis: &[u64]) -> Self {
        let mut members: Vec<PauliString> = (1u64..(1 << basis.len()))
            .map(|combo| {
                let code = basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| combo >> i & 1 == 1)
                    .fold(0u64, |acc, (_, &v)| acc ^ v);
                PauliString::from_code(n, code)
            })
            .collect();
        members.sort_by_key(|p| p.label_key());
        CommutingSubset { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[PauliString] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &PauliString) -> bool {
        self.members.contains(p)
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|p| p.to_label()).collect()
    }

    /// `2^n - 1` members and closed under multiplication up to phase.
    pub fn is_maximal(&self) -> bool {
        if self.members.len() != (1usize << self.n) - 1 {
            return false;
        }
        let codes: HashSet<u64> = self.members.iter().map(|p| p.code()).collect();
        self.members.iter().all(|a| {
            self.members
                .iter()
                .all(|b| a == b || codes.contains(&(a.code() ^ b.code())))
        })
    }

    fn sort_key(&self) -> Vec<u64> {
        self.members.iter().map(|p| p.label_key()).collect()
    }
}

/// `∏_{k=1..n} (2^k + 1)`.
pub fn maximal_subset_count(n: usize) -> u128 {
    (1..=n as u32).map(|k| (1u128 << k) + 1).product()
}

pub fn enumerate_maximal_subsets(n: usize) -> Result<Vec<CommutingSubset>> {
    enumerate_maximal_subsets_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

/// Every maximal commuting subset on `n` qubits, each exactly once, sorted
/// lexicographically by their (label-sorted) member lists.
pub fn enumerate_maximal_subsets_with_cap(n: usize, cap: usize) -> Result<Vec<CommutingSubset>> {
    if n == 0 {
        return Err(PdcsError::validation("qubit count must be positive"));
    }
    if n > cap {
        return Err(PdcsError::Capacity {
            what: "exhaustive subset enumeration",
            n,
            cap,
            hint: "; use greedy candidates instead",
        });
    }
    let mut bases = Vec::with_capacity(maximal_subset_count(n) as usize);
    let mut basis = Vec::with_capacity(n);
    extend_isotropic(n, &mut basis, 0, None, &mut bases);
    let mut subsets: Vec<CommutingSubset> = bases
        .par_iter()
        .map(|b| CommutingSubset::from_basis(n, b))
        .collect();
    subsets.par_sort_by_cached_key(|s| s.sort_key());
    Ok(subsets)
}

fn symplectic_commute(n: usize, u: u64, v: u64) -> bool {
    let m = (1u64 << n) - 1;
    let (ux, uz) = (u >> n, u & m);
    let (vx, vz) = (v >> n, v & m);
    ((ux & vz) ^ (uz & vx)).count_ones() & 1 == 0
}

/// Depth-first walk over reduced-echelon bases. Basis vectors are added
/// with strictly increasing leading bits and are zero on every earlier
/// pivot; earlier vectors are automatically zero on later pivots because
/// a leading bit is the highest set bit. Each Lagrangian subspace
/// therefore appears exactly once.
fn extend_isotropic(
    n: usize,
    basis: &mut Vec<u64>,
    pivots: u64,
    last_pivot: Option<usize>,
    out: &mut Vec<Vec<u64>>,
) {
    if basis.len() == n {
        out.push(basis.clone());
        return;
    }
    let need = n - basis.len();
    let start = last_pivot.map_or(0, |p| p + 1);
    for pivot in start..2 * n {
        if 2 * n - pivot < need {
            break;
        }
        let free = ((1u64 << pivot) - 1) & !pivots;
        let mut low = 0u64;
        loop {
            let v = (1u64 << pivot) | low;
            if basis.iter().all(|&b| symplectic_commute(n, b, v)) {
                basis.push(v);
                extend_isotropic(n, basis, pivots | (1 << pivot), Some(pivot), out);
                basis.pop();
            }
            if low == free {
                break;
            }
            low = (low.wrapping_sub(free)) & free;
        }
    }
}

/// `|Tr[M·P]|` for every Pauli string `P`, indexed by symplectic code.
#[derive(Clone, Debug)]
pub struct OverlapTable {
    n: usize,
    magnitudes: Vec<f64>,
}

impl OverlapTable {
    pub fn new(m: &DenseOperator) -> Self {
        Self::from_matrix(m.matrix())
    }

    pub(crate) fn from_matrix(m: &CMatrix) -> Self {
        let n = m.nrows().trailing_zeros() as usize;
        let magnitudes = (0u64..1 << (2 * n))
            .into_par_iter()
            .map(|code| PauliString::from_code(n, code).trace_with(m).norm())
            .collect();
        OverlapTable { n, magnitudes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn magnitude(&self, p: &PauliString) -> f64 {
        self.magnitudes[p.code() as usize]
    }

    pub fn score(&self, s: &CommutingSubset) -> f64 {
        s.members().iter().map(|p| self.magnitude(p)).sum()
    }

    /// Index and score of the best candidate; earlier candidates win ties.
    pub fn best(&self, candidates: &[CommutingSubset]) -> Result<(usize, f64)> {
        if candidates.is_empty() {
            return Err(PdcsError::EmptyCandidates);
        }
        for c in candidates {
            ensure_same_dim(self.n, c.n())?;
        }
        let scores: Vec<f64> = candidates.par_iter().map(|c| self.score(c)).collect();
        let mut best = (0, scores[0]);
        for (i, &s) in scores.iter().enumerate().skip(1) {
            if s > best.1 + TIE_TOLERANCE * best.1.max(1.0) {
                best = (i, s);
            }
        }
        Ok(best)
    }

    /// Indices of every candidate whose score ties the maximum.
    pub(crate) fn tied_best(&self, candidates: &[CommutingSubset]) -> Vec<(usize, f64)> {
        let scores: Vec<f64> = candidates.par_iter().map(|c| self.score(c)).collect();
        let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let slack = 1e-9 * max.max(1.0);
        scores
            .into_iter()
            .enumerate()
            .filter(|(_, s)| *s >= max - slack)
            .collect()
    }
}

/// `Σ_β |Tr[r·P_β]|` over the members of `s`.
pub fn subset_overlap(r: &DenseOperator, s: &CommutingSubset) -> Result<f64> {
    ensure_same_dim(r.dim(), 1usize << s.n())?;
    Ok(s.members()
        .iter()
        .map(|p| p.trace_with(r.matrix()).norm())
        .sum())
}

pub fn select_best_subset<'a>(
    r: &DenseOperator,
    candidates: &'a [CommutingSubset],
) -> Result<&'a CommutingSubset> {
    if candidates.is_empty() {
        return Err(PdcsError::EmptyCandidates);
    }
    ensure_same_dim(r.dim(), 1usize << candidates[0].n())?;
    let (index, _) = OverlapTable::new(r).best(candidates)?;
    Ok(&candidates[index])
}

pub fn greedy_candidates(r: &DenseOperator, n: usize, k: usize) -> Result<Vec<CommutingSubset>> {
    ensure_same_dim(r.dim(), 1usize << n)?;
    Ok(greedy_from_table(&OverlapTable::new(r), k))
}

/// Ranks all strings by overlap (descending, label order on ties) and
/// grows one maximal subset per seed by scanning that ranking once.
pub(crate) fn greedy_from_table(table: &OverlapTable, k: usize) -> Vec<CommutingSubset> {
    let n = table.n();
    let mut ranked = all_pauli_strings(n);
    ranked.sort_by(|a, b| {
        table
            .magnitude(b)
            .total_cmp(&table.magnitude(a))
            .then_with(|| a.label_key().cmp(&b.label_key()))
    });
    let full = (1usize << n) - 1;
    let mut out: Vec<CommutingSubset> = Vec::new();
    let mut seen = HashSet::new();
    for seed in &ranked {
        if out.len() >= k {
            break;
        }
        let mut members = vec![*seed];
        for p in &ranked {
            if members.len() == full {
                break;
            }
            if p != seed && members.iter().all(|m| m.commutes_with(p)) {
                members.push(*p);
            }
        }
        members.sort_by_key(|p| p.label_key());
        let subset = CommutingSubset { n, members };
        if seen.insert(subset.sort_key()) {
            out.push(subset);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{C64, ONE, ZERO};
    use std::collections::BTreeSet;

    /// Oracle: Bron–Kerbosch maximal cliques of the commutation graph.
    fn brute_force_maximal(n: usize) -> BTreeSet<BTreeSet<String>> {
        let all = all_pauli_strings(n);
        let adj: Vec<Vec<bool>> = all
            .iter()
            .map(|a| {
                all.iter()
                    .map(|b| a != b && a.commutes(b).unwrap())
                    .collect()
            })
            .collect();
        let mut cliques = BTreeSet::new();
        fn bk(
            r: Vec<usize>,
            p: Vec<usize>,
            x: Vec<usize>,
            adj: &[Vec<bool>],
            all: &[PauliString],
            out: &mut BTreeSet<BTreeSet<String>>,
        ) {
            if p.is_empty() && x.is_empty() {
                out.insert(r.iter().map(|&i| all[i].to_label()).collect());
                return;
            }
            let pivot = *p.iter().chain(x.iter()).next().unwrap();
            let mut p = p;
            let mut x = x;
            let candidates: Vec<usize> = p.iter().cloned().filter(|&v| !adj[pivot][v]).collect();
            for v in candidates {
                let mut r2 = r.clone();
                r2.push(v);
                let p2 = p.iter().cloned().filter(|&u| adj[v][u]).collect();
                let x2 = x.iter().cloned().filter(|&u| adj[v][u]).collect();
                bk(r2, p2, x2, adj, all, out);
                p.retain(|&u| u != v);
                x.push(v);
            }
        }
        bk(
            Vec::new(),
            (0..all.len()).collect(),
            Vec::new(),
            &adj,
            &all,
            &mut cliques,
        );
        cliques
    }

    fn as_label_sets(subsets: &[CommutingSubset]) -> BTreeSet<BTreeSet<String>> {
        subsets
            .iter()
            .map(|s| s.labels().into_iter().collect())
            .collect()
    }

    fn cnot() -> DenseOperator {
        DenseOperator::from_fn(4, |r, c| {
            let perm = [0, 1, 3, 2];
            if perm[c] == r {
                ONE
            } else {
                ZERO
            }
        })
        .unwrap()
    }

    #[test]
    fn counts_match_closed_form() {
        for (n, expected) in [(1, 3), (2, 15), (3, 135), (4, 2295)] {
            let subsets = enumerate_maximal_subsets(n).unwrap();
            assert_eq!(subsets.len(), expected);
            assert_eq!(maximal_subset_count(n), expected as u128);
        }
        assert_eq!(maximal_subset_count(5), 75_735);
    }

    #[test]
    fn single_qubit_subsets_are_singletons() {
        let labels: Vec<Vec<String>> = enumerate_maximal_subsets(1)
            .unwrap()
            .iter()
            .map(|s| s.labels())
            .collect();
        assert_eq!(labels, vec![vec!["X"], vec!["Y"], vec!["Z"]]);
    }

    #[test]
    fn enumeration_matches_clique_oracle() {
        for n in 1..=3 {
            let fast = enumerate_maximal_subsets(n).unwrap();
            let oracle = brute_force_maximal(n);
            assert_eq!(as_label_sets(&fast), oracle, "n = {n}");
        }
    }

    #[test]
    fn every_enumerated_subset_is_valid_and_maximal() {
        for n in 1..=4 {
            let subsets = enumerate_maximal_subsets(n).unwrap();
            let unique: HashSet<_> = subsets.iter().map(|s| s.sort_key()).collect();
            assert_eq!(unique.len(), subsets.len());
            for s in &subsets {
                assert!(s.is_maximal());
                assert!(CommutingSubset::new(s.members().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_maximal_subsets(6),
            Err(PdcsError::Capacity { .. })
        ));
        assert!(enumerate_maximal_subsets_with_cap(3, 2).is_err());
    }

    #[test]
    fn constructor_rejects_bad_sets() {
        assert!(matches!(
            CommutingSubset::from_labels(&["X", "Z"]),
            Err(PdcsError::Contract(_))
        ));
        assert!(CommutingSubset::from_labels(&["II"]).is_err());
        assert!(CommutingSubset::from_labels(&["ZI", "ZI"]).is_err());
        assert!(CommutingSubset::from_labels(&[]).is_err());
        let partial = CommutingSubset::from_labels(&["ZI", "IZ"]).unwrap();
        assert!(!partial.is_maximal());
    }

    #[test]
    fn overlap_examples() {
        let id = DenseOperator::identity(2);
        for s in enumerate_maximal_subsets(2).unwrap() {
            assert_eq!(subset_overlap(&id, &s).unwrap(), 0.0);
        }
        let zz = PauliString::parse_label("ZZ").unwrap().dense().unwrap();
        let diag = CommutingSubset::from_labels(&["IZ", "ZI", "ZZ"]).unwrap();
        assert_eq!(subset_overlap(&zz, &diag).unwrap(), 4.0);
        assert!(subset_overlap(&DenseOperator::identity(1), &diag).is_err());
    }

    #[test]
    fn cnot_selects_control_target_subset() {
        let all = enumerate_maximal_subsets(2).unwrap();
        let scores: Vec<f64> = all
            .iter()
            .map(|s| subset_overlap(&cnot(), s).unwrap())
            .collect();
        let best = select_best_subset(&cnot(), &all).unwrap();
        assert_eq!(best.labels(), vec!["IX", "ZI", "ZX"]);
        let max = scores.iter().cloned().fold(0.0, f64::max);
        assert_eq!(subset_overlap(&cnot(), best).unwrap(), max);
        assert_eq!(scores.iter().filter(|&&s| s == max).count(), 1);
    }

    #[test]
    fn selection_tie_break_and_single_qubit() {
        let one = enumerate_maximal_subsets(1).unwrap();
        let x = PauliString::parse_label("X").unwrap().dense().unwrap();
        assert_eq!(select_best_subset(&x, &one).unwrap().labels(), vec!["X"]);
        let id = DenseOperator::identity(1);
        assert_eq!(select_best_subset(&id, &one).unwrap(), &one[0]);
        assert!(matches!(
            select_best_subset(&id, &[]),
            Err(PdcsError::EmptyCandidates)
        ));
    }

    #[test]
    fn selection_is_phase_invariant() {
        let all = enumerate_maximal_subsets(2).unwrap();
        let base = select_best_subset(&cnot(), &all).unwrap().clone();
        for alpha in [0.3, 1.7, -2.9] {
            let rotated = cnot().scale(C64::from_polar(1.0, alpha));
            assert_eq!(select_best_subset(&rotated, &all).unwrap(), &base);
        }
    }

    #[test]
    fn greedy_diagonal_residual() {
        let r = DenseOperator::from_fn(4, |r, c| {
            if r == c {
                C64::from_polar(1.0, 0.4 * r as f64 + 0.1)
            } else {
                ZERO
            }
        })
        .unwrap();
        let first = &greedy_candidates(&r, 2, 3).unwrap()[0];
        assert_eq!(first.labels(), vec!["IZ", "ZI", "ZZ"]);
    }

    #[test]
    fn greedy_top_candidate_on_cnot_matches_exhaustive() {
        let greedy = greedy_candidates(&cnot(), 2, 1).unwrap();
        assert_eq!(greedy.len(), 1);
        let all = enumerate_maximal_subsets(2).unwrap();
        assert_eq!(&greedy[0], select_best_subset(&cnot(), &all).unwrap());
        assert!(greedy[0].contains(&PauliString::parse_label("ZX").unwrap()));
    }

    #[test]
    fn greedy_outputs_are_enumerated_subsets() {
        for n in 1..=3 {
            let all: HashSet<Vec<u64>> = enumerate_maximal_subsets(n)
                .unwrap()
                .iter()
                .map(|s| s.sort_key())
                .collect();
            let id = DenseOperator::identity(n);
            let greedy = greedy_candidates(&id, n, 10).unwrap();
            // all-equal overlaps: distinct, deterministic
            assert_eq!(greedy, greedy_candidates(&id, n, 10).unwrap());
            let distinct: HashSet<_> = greedy.iter().map(|s| s.sort_key()).collect();
            assert_eq!(distinct.len(), greedy.len());
            assert!(!greedy.is_empty() && greedy.len() <= 10);
            for s in &greedy {
                assert!(all.contains(&s.sort_key()));
            }
        }
    }
}
