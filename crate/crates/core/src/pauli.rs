//! Pauli strings in symplectic form.
//!
//! A [`PauliString`] on `n` qubits stores two bit masks, the X part and
//! the Z part. Bit `k` of either mask refers to bit `k` of the
//! computational-basis index, so qubit 1 (the leftmost label character
//! and the leftmost tensor factor) lives in bit `n - 1`. Per qubit the
//! pairs `(x, z)` are `I = (0,0)`, `X = (1,0)`, `Y = (1,1)`, `Z = (0,1)`.
//!
//! The dense realization is the literal tensor product of the named
//! single-qubit matrices, so every string is Hermitian. Phases only show
//! up in [`PauliString::multiply`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{ensure_same_dim, PdcsError, Result};
use crate::operator::{CMatrix, DenseOperator, C64, I, ONE, ZERO};

/// Largest register a `PauliString` can describe (two 32-bit halves of a code).
pub const MAX_QUBITS: usize = 32;

/// Default cap on the qubit count for dense realizations (dimension 128).
pub const DEFAULT_DENSE_CAP: usize = 7;

/// One of `{+1, +i, -1, -i}`, stored as the exponent of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const PLUS_ONE: Phase = Phase(0);
    pub const PLUS_I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_power(power: i64) -> Phase {
        Phase(power.rem_euclid(4) as u8)
    }

    pub fn power(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> C64 {
        match self.0 {
            0 => ONE,
            1 => I,
            2 => -ONE,
            _ => -I,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        assert!(
            (1..=MAX_QUBITS).contains(&n),
            "qubit count {n} out of range"
        );
        PauliString { n, x: 0, z: 0 }
    }

    /// Builds a string from per-qubit bits, qubit 1 first.
    pub fn from_bits(x_bits: &[bool], z_bits: &[bool]) -> Result<Self> {
        ensure_same_dim(x_bits.len(), z_bits.len())?;
        let n = x_bits.len();
        check_qubit_count(n)?;
        let mut x = 0u64;
        let mut z = 0u64;
        for q in 0..n {
            let bit = 1u64 << (n - 1 - q);
            if x_bits[q] {
                x |= bit;
            }
            if z_bits[q] {
                z |= bit;
            }
        }
        Ok(PauliString { n, x, z })
    }

    /// Builds a string from masks in basis-index bit order.
    pub fn from_masks(n: usize, x: u64, z: u64) -> Result<Self> {
        check_qubit_count(n)?;
        let limit = mask(n);
        if x & !limit != 0 || z & !limit != 0 {
            return Err(PdcsError::validation(format!(
                "mask has bits beyond qubit count {n}"
            )));
        }
        Ok(PauliString { n, x, z })
    }

    pub fn parse_label(label: &str) -> Result<Self> {
        if label.is_empty() {
            return Err(PdcsError::EmptyLabel);
        }
        let mut x_bits = Vec::with_capacity(label.len());
        let mut z_bits = Vec::with_capacity(label.len());
        for (q, ch) in label.chars().enumerate() {
            let (xb, zb) = match ch {
                'I' => (false, false),
                'X' => (true, false),
                'Y' => (true, true),
                'Z' => (false, true),
                other => {
                    return Err(PdcsError::Parse {
                        position: q + 1,
                        found: other,
                    })
                }
            };
            x_bits.push(xb);
            z_bits.push(zb);
        }
        PauliString::from_bits(&x_bits, &z_bits)
    }

    pub fn to_label(&self) -> String {
        (0..self.n).map(|q| self.qubit_char(q + 1)).collect()
    }

    /// Single-qubit factor on 1-based qubit `q`.
    pub fn qubit_char(&self, q: usize) -> char {
        let bit = 1u64 << (self.n - q);
        match (self.x & bit != 0, self.z & bit != 0) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    /// X bits in qubit order (qubit 1 first).
    pub fn x_bits(&self) -> Vec<bool> {
        (0..self.n)
            .map(|q| self.x >> (self.n - 1 - q) & 1 == 1)
            .collect()
    }

    pub fn z_bits(&self) -> Vec<bool> {
        (0..self.n)
            .map(|q| self.z >> (self.n - 1 - q) & 1 == 1)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    /// 1-based qubits on which the string acts non-trivially, ascending.
    pub fn support(&self) -> Vec<usize> {
        let occupied = self.x | self.z;
        (1..=self.n)
            .filter(|&q| occupied >> (self.n - q) & 1 == 1)
            .collect()
    }

    /// Symplectic code `(x << n) | z`, unique per string of a given `n`.
    pub fn code(&self) -> u64 {
        (self.x << self.n) | self.z
    }

    pub fn from_code(n: usize, code: u64) -> Self {
        let m = mask(n);
        PauliString {
            n,
            x: (code >> n) & m,
            z: code & m,
        }
    }

    /// Base-4 digits `I=0, X=1, Y=2, Z=3` read left to right. Ordering by
    /// this key is lexicographic order on labels.
    pub fn label_key(&self) -> u64 {
        let mut key = 0u64;
        for q in 1..=self.n {
            let bit = 1u64 << (self.n - q);
            let digit = match (self.x & bit != 0, self.z & bit != 0) {
                (false, false) => 0,
                (true, false) => 1,
                (true, true) => 2,
                (false, true) => 3,
            };
            key = key.wrapping_mul(4) + digit;
        }
        key
    }

    pub fn label_cmp(&self, other: &PauliString) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.label_key().cmp(&other.label_key()))
    }

    fn symplectic_parity(&self, other: &PauliString) -> u32 {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() & 1
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        ensure_same_dim(self.n, other.n)?;
        Ok(self.symplectic_parity(other) == 0)
    }

    /// Unchecked variant for callers that already validated qubit counts.
    pub(crate) fn commutes_with(&self, other: &PauliString) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.symplectic_parity(other) == 0
    }

    /// Returns `(r, phase)` with `dense(self)·dense(other) = phase·dense(r)`.
    pub fn multiply(&self, other: &PauliString) -> Result<(PauliString, Phase)> {
        ensure_same_dim(self.n, other.n)?;
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        // Each factor is i^{xz} X^x Z^z; moving Z^{z1} past X^{x2} costs (-1)^{z1 x2}.
        let power = (self.x & self.z).count_ones() as i64 + (other.x & other.z).count_ones() as i64
            - (x & z).count_ones() as i64
            + 2 * (self.z & other.x).count_ones() as i64;
        Ok((PauliString { n: self.n, x, z }, Phase::from_power(power)))
    }

    /// `i^{|x∧z|}`: the constant part of every nonzero entry.
    fn y_phase(&self) -> C64 {
        Phase::from_power((self.x & self.z).count_ones() as i64).to_complex()
    }

    /// Nonzero entry of column `col`: `P|col⟩ = value·|row⟩`.
    #[inline]
    pub fn column_entry(&self, col: usize) -> (usize, C64) {
        let mut value = self.y_phase();
        if (self.z & col as u64).count_ones() & 1 == 1 {
            value = -value;
        }
        (col ^ self.x as usize, value)
    }

    pub fn dense(&self) -> Result<DenseOperator> {
        self.dense_with_cap(DEFAULT_DENSE_CAP)
    }

    pub fn dense_with_cap(&self, cap: usize) -> Result<DenseOperator> {
        if self.n > cap {
            return Err(PdcsError::Capacity {
                what: "dense realization",
                n: self.n,
                cap,
                hint: "",
            });
        }
        Ok(DenseOperator::from_matrix_unchecked(self.dense_matrix()))
    }

    pub(crate) fn dense_matrix(&self) -> CMatrix {
        let dim = 1usize << self.n;
        let mut m = CMatrix::zeros(dim, dim);
        for col in 0..dim {
            let (row, value) = self.column_entry(col);
            m[(row, col)] = value;
        }
        m
    }

    /// `P·M` in O(N²) using the permutation structure of `P`.
    pub fn left_multiply(&self, m: &CMatrix) -> CMatrix {
        let dim = m.nrows();
        let mut out = CMatrix::zeros(dim, m.ncols());
        for k in 0..dim {
            let (row, value) = self.column_entry(k);
            for c in 0..m.ncols() {
                out[(row, c)] = value * m[(k, c)];
            }
        }
        out
    }

    /// Tr[A·P] in O(N) without materializing the product.
    pub fn trace_with(&self, a: &CMatrix) -> C64 {
        let dim = a.nrows();
        let mut acc = ZERO;
        for col in 0..dim {
            // (A P)_{bb} = Σ_k A_{bk} P_{kb} = A_{b,row(b)}·value(b)
            let (row, value) = self.column_entry(col);
            acc += a[(col, row)] * value;
        }
        acc
    }

    /// Places this string on `targets` (1-based) of an `n_total`-qubit
    /// register, identity elsewhere. Local qubit `i` maps to `targets[i-1]`.
    pub fn embed(&self, n_total: usize, targets: &[usize]) -> Result<PauliString> {
        ensure_same_dim(self.n, targets.len())?;
        check_qubit_count(n_total)?;
        let mut x = 0u64;
        let mut z = 0u64;
        for (i, &t) in targets.iter().enumerate() {
            if t == 0 || t > n_total {
                return Err(PdcsError::validation(format!(
                    "target qubit {t} outside 1..={n_total}"
                )));
            }
            let local_bit = 1u64 << (self.n - 1 - i);
            let full_bit = 1u64 << (n_total - t);
            if self.x & local_bit != 0 {
                x |= full_bit;
            }
            if self.z & local_bit != 0 {
                z |= full_bit;
            }
        }
        Ok(PauliString { n: n_total, x, z })
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_label())
    }
}

impl FromStr for PauliString {
    type Err = PdcsError;

    fn from_str(s: &str) -> Result<Self> {
        PauliString::parse_label(s)
    }
}

pub fn parse_label(label: &str) -> Result<PauliString> {
    PauliString::parse_label(label)
}

pub fn commutes(p: &PauliString, q: &PauliString) -> Result<bool> {
    p.commutes(q)
}

pub fn multiply(p: &PauliString, q: &PauliString) -> Result<(PauliString, Phase)> {
    p.multiply(q)
}

/// Tr[a · dense(p)].
pub fn pauli_trace(a: &DenseOperator, p: &PauliString) -> Result<C64> {
    ensure_same_dim(a.dim(), 1usize << p.n())?;
    Ok(p.trace_with(a.matrix()))
}

/// All `4^n - 1` non-identity strings in lexicographic label order
/// (`I < X < Y < Z`, leftmost character most significant).
pub fn all_pauli_strings(n: usize) -> Vec<PauliString> {
    assert!(
        (1..=16).contains(&n),
        "refusing to list 4^{n} Pauli strings"
    );
    let total = 1u64 << (2 * n);
    (1..total).map(|key| from_label_key(n, key)).collect()
}

fn from_label_key(n: usize, mut key: u64) -> PauliString {
    let mut x = 0u64;
    let mut z = 0u64;
    for bit in 0..n {
        let (xb, zb) = match key & 3 {
            0 => (0, 0),
            1 => (1, 0),
            2 => (1, 1),
            _ => (0, 1),
        };
        x |= xb << bit;
        z |= zb << bit;
        key >>= 2;
    }
    PauliString { n, x, z }
}

fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(PdcsError::validation("qubit count must be positive"));
    }
    if n > MAX_QUBITS {
        return Err(PdcsError::Capacity {
            what: "Pauli string",
            n,
            cap: MAX_QUBITS,
            hint: "",
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::max_abs_diff;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(label: &str) -> PauliString {
        label.parse().unwrap()
    }

    fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
        a.kronecker(b)
    }

    fn single(ch: char) -> CMatrix {
        let v = |re: f64, im: f64| C64::new(re, im);
        match ch {
            'I' => CMatrix::identity(2, 2),
            'X' => CMatrix::from_row_slice(2, 2, &[v(0., 0.), v(1., 0.), v(1., 0.), v(0., 0.)]),
            'Y' => CMatrix::from_row_slice(2, 2, &[v(0., 0.), v(0., -1.), v(0., 1.), v(0., 0.)]),
            'Z' => CMatrix::from_row_slice(2, 2, &[v(1., 0.), v(0., 0.), v(0., 0.), v(-1., 0.)]),
            _ => unreachable!(),
        }
    }

    /// Independent oracle: literal Kronecker product of the factors.
    fn kron_oracle(label: &str) -> CMatrix {
        let mut chars = label.chars();
        let mut m = single(chars.next().unwrap());
        for ch in chars {
            m = kron(&m, &single(ch));
        }
        m
    }

    fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
        CMatrix::from_fn(dim, dim, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    #[test]
    fn parse_examples() {
        let x = p("X");
        assert_eq!(x.x_bits(), vec![true]);
        assert_eq!(x.z_bits(), vec![false]);
        let zzz = p("ZZZ");
        assert_eq!(zzz.x_bits(), vec![false; 3]);
        assert_eq!(zzz.z_bits(), vec![true; 3]);
        match PauliString::parse_label("XB") {
            Err(PdcsError::Parse { position, found }) => {
                assert_eq!(position, 2);
                assert_eq!(found, 'B');
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            PauliString::parse_label(""),
            Err(PdcsError::EmptyLabel)
        ));
    }

    #[test]
    fn dense_examples() {
        let z = p("Z").dense().unwrap();
        assert_eq!(z.get(0, 0), ONE);
        assert_eq!(z.get(1, 1), -ONE);
        assert_eq!(z.get(0, 1), ZERO);

        let xx = p("XX").dense().unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let expected = if r + c == 3 { ONE } else { ZERO };
                assert_eq!(xx.get(r, c), expected);
            }
        }

        let y = p("Y").dense().unwrap();
        assert_eq!(y.get(0, 1), -I);
        assert_eq!(y.get(1, 0), I);
    }

    #[test]
    fn dense_matches_kronecker_oracle() {
        for n in 1..=3 {
            for s in all_pauli_strings(n) {
                let label = s.to_label();
                let diff = max_abs_diff(s.dense().unwrap().matrix(), &kron_oracle(&label));
                assert_eq!(diff, 0.0, "{label}");
            }
        }
    }

    #[test]
    fn dense_cap_is_enforced() {
        let big = p(&"X".repeat(8));
        assert!(matches!(big.dense(), Err(PdcsError::Capacity { .. })));
        assert!(big.dense_with_cap(8).is_ok());
    }

    #[test]
    fn dense_is_hermitian_unitary_involution() {
        for s in all_pauli_strings(2) {
            let d = s.dense().unwrap();
            assert_eq!(d.hermiticity_error(), 0.0);
            assert!(d.is_unitary(1e-15));
            let sq = &d * &d;
            assert!(sq.is_global_phase_identity(0.0) && sq.get(0, 0) == ONE);
            // one nonzero per row and column, values in {±1, ±i}
            for r in 0..4 {
                let nonzero: Vec<C64> = (0..4)
                    .map(|c| d.get(r, c))
                    .filter(|v| v.norm() > 0.0)
                    .collect();
                assert_eq!(nonzero.len(), 1);
                let v = nonzero[0];
                assert!([ONE, -ONE, I, -I].contains(&v));
            }
        }
    }

    #[test]
    fn commutation_examples() {
        assert!(commutes(&p("XI"), &p("IX")).unwrap());
        assert!(!commutes(&p("X"), &p("Z")).unwrap());
        assert!(commutes(&p("XX"), &p("ZZ")).unwrap());
        assert!(matches!(
            commutes(&p("X"), &p("XX")),
            Err(PdcsError::DimensionMismatch { .. })
        ));
    }

    fn dense_commute(a: &PauliString, b: &PauliString) -> bool {
        let (da, db) = (a.dense().unwrap(), b.dense().unwrap());
        let comm = da.matrix() * db.matrix() - db.matrix() * da.matrix();
        comm.iter().map(|v| v.norm()).fold(0.0, f64::max) < 1e-12
    }

    #[test]
    fn commutation_agrees_with_dense_exhaustively() {
        for n in 1..=2 {
            let all = all_pauli_strings(n);
            for a in &all {
                for b in &all {
                    assert_eq!(a.commutes(b).unwrap(), dense_commute(a, b), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn commutation_agrees_with_dense_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [3usize, 4] {
            let all = all_pauli_strings(n);
            for _ in 0..1000 {
                let a = all[rng.gen_range(0..all.len())];
                let b = all[rng.gen_range(0..all.len())];
                assert_eq!(a.commutes(&b).unwrap(), dense_commute(&a, &b));
            }
        }
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(
            multiply(&p("X"), &p("X")).unwrap(),
            (p("I"), Phase::PLUS_ONE)
        );
        assert_eq!(
            multiply(&p("X"), &p("Z")).unwrap(),
            (p("Y"), Phase::MINUS_I)
        );
        assert_eq!(
            multiply(&p("ZI"), &p("IX")).unwrap(),
            (p("ZX"), Phase::PLUS_ONE)
        );
    }

    #[test]
    fn multiply_phase_exhaustive() {
        for n in 1..=2 {
            let mut all = all_pauli_strings(n);
            all.push(PauliString::identity(n));
            for a in &all {
                for b in &all {
                    let (r, phase) = a.multiply(b).unwrap();
                    let lhs = a.dense().unwrap().matrix() * b.dense().unwrap().matrix();
                    let rhs = r.dense().unwrap().matrix() * phase.to_complex();
                    assert!(max_abs_diff(&lhs, &rhs) <= 1e-14, "{a}·{b}");
                }
            }
        }
    }

    #[test]
    fn pauli_trace_examples() {
        let id = DenseOperator::identity(1);
        assert_eq!(pauli_trace(&id, &p("X")).unwrap(), ZERO);
        let z = p("Z").dense().unwrap();
        assert_eq!(pauli_trace(&z, &p("Z")).unwrap(), C64::new(2.0, 0.0));
        let h = DenseOperator::new(CMatrix::from_row_slice(2, 2, &[ONE, ONE, ONE, -ONE]))
            .unwrap()
            .scale(C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        let t = pauli_trace(&h, &p("X")).unwrap();
        assert!((t - C64::new(2f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!(pauli_trace(&h, &p("XX")).is_err());
    }

    #[test]
    fn pauli_trace_matches_naive_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=4 {
            let a = random_matrix(&mut rng, 1 << n);
            for _ in 0..50 {
                let s = all_pauli_strings(n)[rng.gen_range(0..(1 << (2 * n)) - 1)];
                let naive = (&a * s.dense().unwrap().matrix()).trace();
                assert!((s.trace_with(&a) - naive).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn pauli_basis_parseval() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=3 {
            let dim = 1usize << n;
            let a = random_matrix(&mut rng, dim);
            let mut total = (a.trace()).norm_sqr() / dim as f64;
            for s in all_pauli_strings(n) {
                total += s.trace_with(&a).norm_sqr() / dim as f64;
            }
            let frob: f64 = a.iter().map(|v| v.norm_sqr()).sum();
            assert!((total - frob).abs() <= 1e-9);
        }
    }

    #[test]
    fn left_multiply_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 8);
        for s in all_pauli_strings(3).into_iter().step_by(7) {
            let expected = s.dense().unwrap().matrix() * &a;
            assert!(max_abs_diff(&s.left_multiply(&a), &expected) < 1e-15);
        }
    }

    #[test]
    fn enumeration_sizes_and_order() {
        assert_eq!(all_pauli_strings(1).len(), 3);
        assert_eq!(all_pauli_strings(2).len(), 15);
        assert_eq!(all_pauli_strings(3).len(), 63);
        let labels: Vec<String> = all_pauli_strings(1).iter().map(|s| s.to_label()).collect();
        assert_eq!(labels, ["X", "Y", "Z"]);
        let two: Vec<String> = all_pauli_strings(2).iter().map(|s| s.to_label()).collect();
        let mut sorted = two.clone();
        sorted.sort();
        assert_eq!(two, sorted);
        assert_eq!(two[0], "IX");
    }

    #[test]
    fn embed_places_factors() {
        let local = p("ZX");
        assert_eq!(local.embed(4, &[3, 1]).unwrap().to_label(), "XIZI");
        assert!(local.embed(2, &[1, 3]).is_err());
    }

    #[test]
    fn support_and_weight() {
        let s = p("IXIZ");
        assert_eq!(s.support(), vec![2, 4]);
        assert_eq!(s.weight(), 2);
    }

    proptest! {
        #[test]
        fn label_round_trip(label in "[IXYZ]{1,12}") {
            let s = PauliString::parse_label(&label).unwrap();
            prop_assert_eq!(s.to_label(), label);
            prop_assert_eq!(PauliString::from_code(s.n(), s.code()), s);
            let rebuilt = PauliString::from_bits(&s.x_bits(), &s.z_bits()).unwrap();
            prop_assert_eq!(rebuilt, s);
        }

        #[test]
        fn multiply_is_xor_and_commutation_is_phase_symmetry(a in "[IXYZ]{3}", b in "[IXYZ]{3}") {
            let (pa, pb) = (p(&a), p(&b));
            let (r1, ph1) = pa.multiply(&pb).unwrap();
            let (r2, ph2) = pb.multiply(&pa).unwrap();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(r1.x_mask(), pa.x_mask() ^ pb.x_mask());
            prop_assert_eq!(pa.commutes(&pb).unwrap(), ph1 == ph2);
        }
    }
}
