//! Seeded generators and an independent linear-algebra oracle (nalgebra).
#![allow(dead_code)]

use nalgebra::DMatrix;
use ncg::fellbundle::BlockStructure;
use ncg::groupoid::Bisection;
use ncg::matops::{ComplexMatrix, C64};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let a = random_matrix(rng, n, n);
    (&a + &a.adjoint()).scale_real(0.5)
}

pub fn to_na(m: &ComplexMatrix) -> DMatrix<C64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j))
}

pub fn from_na(m: &DMatrix<C64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Haar-ish unitary from the QR factor of a random matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let qr = to_na(&random_matrix(rng, n, n)).qr();
    from_na(&qr.q())
}

/// Singular values, largest first.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = to_na(m).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Polar factor `U V*` of `M = U Σ V*`, with singular values below `cut`
/// sent to zero (so rank-deficient inputs give partial isometries).
pub fn polar_factor(m: &ComplexMatrix, cut: f64) -> ComplexMatrix {
    let svd = to_na(m).svd(true, true);
    let (u, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
    let k = svd.singular_values.len();
    let mut out = DMatrix::<C64>::zeros(m.rows(), m.cols());
    for r in 0..k {
        if svd.singular_values[r] > cut {
            out += u.column(r) * vt.row(r);
        }
    }
    from_na(&out)
}

pub fn random_rank_deficient(rng: &mut impl Rng, rows: usize, cols: usize, rank: usize) -> ComplexMatrix {
    &random_matrix(rng, rows, rank) * &random_matrix(rng, rank, cols)
}

pub fn random_blocks(rng: &mut impl Rng, max_p: usize, max_n: usize) -> BlockStructure {
    let p = rng.gen_range(1..=max_p);
    BlockStructure::new((0..p).map(|_| rng.gen_range(1..=max_n)).collect()).unwrap()
}

/// A normaliser: random nonzero blocks on a random partial injection of
/// block columns into block rows.
pub fn random_normaliser(rng: &mut impl Rng, blocks: &BlockStructure) -> ComplexMatrix {
    let p = blocks.count();
    let mut rows: Vec<usize> = (1..=p).collect();
    rows.shuffle(rng);
    let n = blocks.total();
    let mut b = ComplexMatrix::zeros(n, n);
    for j in 1..=p {
        if rng.gen_bool(0.8) {
            let i = rows[j - 1];
            let blk = random_matrix(rng, blocks.size(i), blocks.size(j));
            b.set_block(blocks.offset(i), blocks.offset(j), &blk);
        }
    }
    b
}

/// Random involutive permutation of `1..=p` pairing only equal-size blocks.
pub fn random_involution(rng: &mut impl Rng, blocks: &BlockStructure) -> Bisection {
    let p = blocks.count();
    let mut images: Vec<usize> = (1..=p).collect();
    let mut free: Vec<usize> = (1..=p).collect();
    free.shuffle(rng);
    while let Some(a) = free.pop() {
        if rng.gen_bool(0.6) {
            if let Some(pos) = free.iter().position(|&b| blocks.size(b) == blocks.size(a)) {
                let b = free.remove(pos);
                images[a - 1] = b;
                images[b - 1] = a;
            }
        }
    }
    Bisection::new(images).unwrap()
}

/// A self-adjoint matrix with exactly one nonzero block per block column,
/// placed on an involutive permutation: a valid domain section.
pub fn random_section_matrix(rng: &mut impl Rng, blocks: &BlockStructure) -> ComplexMatrix {
    let perm = random_involution(rng, blocks);
    let n = blocks.total();
    let mut s = ComplexMatrix::zeros(n, n);
    for j in 1..=blocks.count() {
        let i = perm.image(j);
        if i == j {
            let mut h = random_hermitian(rng, blocks.size(j));
            if h.frobenius_norm() < 0.1 {
                h = ComplexMatrix::identity(blocks.size(j));
            }
            s.set_block(blocks.offset(j), blocks.offset(j), &h);
        } else if i > j {
            let b = random_matrix(rng, blocks.size(i), blocks.size(j));
            s.set_block(blocks.offset(i), blocks.offset(j), &b);
            s.set_block(blocks.offset(j), blocks.offset(i), &b.adjoint());
        }
    }
    s
}
