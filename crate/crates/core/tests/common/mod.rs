//! Reference computations shared by the integration tests. Nothing here
//! goes through the crate's own Pauli or exponential code.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64 as C;
use rand::Rng;

pub type M = DMatrix<C>;

pub fn single(c: char) -> M {
    let (o, l, i) = (C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 1.0));
    match c {
        'I' => M::from_row_slice(2, 2, &[l, o, o, l]),
        'X' => M::from_row_slice(2, 2, &[o, l, l, o]),
        'Y' => M::from_row_slice(2, 2, &[o, -i, i, o]),
        'Z' => M::from_row_slice(2, 2, &[l, o, o, -l]),
        _ => panic!("bad Pauli letter {c}"),
    }
}

/// Kronecker product over the label, leftmost letter on the most
/// significant qubit.
pub fn pauli(label: &str) -> M {
    label
        .chars()
        .fold(M::identity(1, 1), |acc, c| acc.kronecker(&single(c)))
}

pub fn hamiltonian(terms: &[(&str, f64)]) -> M {
    let dim = 1 << terms[0].0.len();
    terms.iter().fold(M::zeros(dim, dim), |acc, (l, c)| {
        acc + pauli(l) * C::new(*c, 0.0)
    })
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn expm(a: &M) -> M {
    let norm = a.iter().map(|z| z.norm()).sum::<f64>();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a / C::new(2f64.powi(squarings), 0.0);
    let mut term = M::identity(a.nrows(), a.ncols());
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &scaled / C::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `exp(-i H t)`.
pub fn propagator(h: &M, t: f64) -> M {
    expm(&(h * C::new(0.0, -t)))
}

/// `|Tr[A† B]| / N`.
pub fn trace_fidelity(a: &M, b: &M) -> f64 {
    (a.adjoint() * b).trace().norm() / a.nrows() as f64
}

pub fn random_hermitian<R: Rng>(dim: usize, rng: &mut R) -> M {
    let g = M::from_fn(dim, dim, |_, _| {
        C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    (&g + g.adjoint()) * C::new(0.5, 0.0)
}

pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> M {
    propagator(&random_hermitian(dim, rng), 1.0)
}

/// Labels of the symplectic vector `(x, z)` on `n` qubits, qubit 1 leftmost.
pub fn label_of(n: usize, x: u32, z: u32) -> String {
    (0..n)
        .map(|q| {
            let bit = n - 1 - q;
            match (x >> bit & 1, z >> bit & 1) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (1, 1) => 'Y',
                _ => 'Z',
            }
        })
        .collect()
}
