//! The `p = 4` layout: mass matrix ↔ Dirac operator, standard γ, ε, K.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fellbundle::BlockStructure;
use crate::matops::{geodesic_scale, real_nullspace, ComplexMatrix, Tolerance, C64, I, ONE};

use super::FiniteSpectralTriple;

/// One block of the four-sector Dirac operator. Any finite complex matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MassMatrix(pub ComplexMatrix);

impl MassMatrix {
    pub fn new(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }
}

fn sectors(l: usize) -> Result<BlockStructure> {
    BlockStructure::new(vec![l; 4])
}

fn sector_diag(l: usize, signs: [f64; 4]) -> ComplexMatrix {
    let entries: Vec<f64> = signs.iter().flat_map(|&s| std::iter::repeat_n(s, l)).collect();
    ComplexMatrix::diag_real(&entries)
}

/// `γ = diag(+I, −I, +I, −I)`.
pub fn standard_gamma(l: usize) -> ComplexMatrix {
    sector_diag(l, [1.0, -1.0, 1.0, -1.0])
}

/// `ε = diag(+I, +I, −I, −I)`.
pub fn standard_epsilon(l: usize) -> ComplexMatrix {
    sector_diag(l, [1.0, 1.0, -1.0, -1.0])
}

/// `K` swapping sectors 1 ↔ 3 and 2 ↔ 4, so `J = K ∘ conj`.
pub fn standard_real_structure(l: usize) -> ComplexMatrix {
    let mut k = ComplexMatrix::zeros(4 * l, 4 * l);
    for (a, b) in [(0, 2), (1, 3), (2, 0), (3, 1)] {
        for s in 0..l {
            k.set(a * l + s, b * l + s, ONE);
        }
    }
    k
}

/// ```text
///     | 0   M*  0   0  |
/// D = | M   0   0   0  |
///     | 0   0   0   Mᵀ |
///     | 0   0   M̄   0  |
/// ```
/// with the standard γ, ε and K.
pub fn build_triple_from_mass_matrix(m: &MassMatrix) -> Result<FiniteSpectralTriple> {
    let m = m.matrix();
    if !m.is_square() || m.is_empty() {
        return Err(Error::Input(format!(
            "mass matrix must be square and nonempty, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let l = m.rows();
    let blocks = sectors(l)?;
    let mut d = ComplexMatrix::zeros(4 * l, 4 * l);
    d.set_block(0, l, &m.adjoint());
    d.set_block(l, 0, m);
    d.set_block(2 * l, 3 * l, &m.transpose());
    d.set_block(3 * l, 2 * l, &m.conj());
    FiniteSpectralTriple::new(
        blocks,
        d,
        Some(standard_gamma(l)),
        Some(standard_epsilon(l)),
        Some(standard_real_structure(l)),
    )
}

const MASS_SUPPORT: [(usize, usize); 4] = [(1, 2), (2, 1), (3, 4), (4, 3)];

/// Reads `M` back from block `(2,1)` after checking the block support and
/// the three companion blocks.
pub fn extract_mass_matrix(t: &FiniteSpectralTriple, tol: Tolerance) -> Result<MassMatrix> {
    let sizes = t.blocks.sizes();
    if sizes.len() != 4 || !t.blocks.all_equal() {
        return Err(Error::Unsupported(format!(
            "mass matrices are read from blocks [l,l,l,l], got {sizes:?}"
        )));
    }
    let d = &t.dirac;
    let scale = d.frobenius_norm();
    let norms = t.blocks.block_norms(d);
    for i in 1..=4 {
        for j in 1..=4 {
            if !MASS_SUPPORT.contains(&(i, j)) && !tol.accepts(norms[i - 1][j - 1], scale) {
                return Err(Error::Structural(format!(
                    "D has a nonzero block at ({i},{j}) (norm {:.3e}); allowed support is (1,2),(2,1),(3,4),(4,3)",
                    norms[i - 1][j - 1]
                )));
            }
        }
    }
    let b = |i, j| t.blocks.extract(d, i, j);
    let m = b(2, 1);
    let checks = [
        ("block(1,2) = M*", b(1, 2), m.adjoint()),
        ("block(3,4) = Mᵀ", b(3, 4), m.transpose()),
        ("block(4,3) = conj(M)", b(4, 3), m.conj()),
    ];
    for (what, got, want) in checks {
        let residual = (&got - &want).frobenius_norm();
        if !tol.accepts(residual, scale) {
            return Err(Error::Consistency {
                what: what.to_string(),
                residual,
            });
        }
    }
    Ok(MassMatrix(m))
}

/// `‖M(M*M − I)‖_F`.
pub fn geodesic_residual(m: &MassMatrix) -> f64 {
    let m = m.matrix();
    let gram = &(&m.adjoint() * m) - &ComplexMatrix::identity(m.cols());
    (m * &gram).frobenius_norm()
}

/// `M(M*M − I) = 0`: `M` is a partial isometry. Uses the same scale as
/// [`crate::matops::is_partial_isometry`].
pub fn check_geodesic_equation(m: &MassMatrix, tol: Tolerance) -> bool {
    tol.accepts(geodesic_residual(m), geodesic_scale(m.matrix()))
}

/// Real basis of `{D : D = D*, Dγ + γD = 0, [D, ε] = 0, DJ = JD}` under the
/// standard γ, ε, K on `ℂ^{4l}`, found by solving the linear constraints
/// over all `2(4l)²` real coordinates.
pub fn dirac_solution_space(l: usize) -> Result<Vec<ComplexMatrix>> {
    if l == 0 {
        return Err(Error::Input("sector size must be positive".into()));
    }
    let n = 4 * l;
    let (g, e, k) = (standard_gamma(l), standard_epsilon(l), standard_real_structure(l));
    let constraints = |d: &ComplexMatrix| -> Vec<C64> {
        let mut out = Vec::with_capacity(4 * n * n);
        out.extend_from_slice((d - &d.adjoint()).as_slice());
        out.extend_from_slice(d.anticommutator(&g).as_slice());
        out.extend_from_slice(d.commutator(&e).as_slice());
        out.extend_from_slice((&(d * &k) - &(&k * &d.conj())).as_slice());
        out
    };
    let coords = 2 * n * n;
    let unit = |c: usize| {
        let z = if c.is_multiple_of(2) { ONE } else { I };
        let idx = c / 2;
        let mut m = ComplexMatrix::zeros(n, n);
        m.set(idx / n, idx % n, z);
        m
    };
    let columns: Vec<Vec<f64>> = (0..coords)
        .map(|c| {
            constraints(&unit(c))
                .into_iter()
                .flat_map(|z| [z.re, z.im])
                .collect()
        })
        .collect();
    let rows = columns[0].len();
    let mut a = vec![0.0; rows * coords];
    for (c, col) in columns.iter().enumerate() {
        for (r, &x) in col.iter().enumerate() {
            a[r * coords + c] = x;
        }
    }
    Ok(real_nullspace(rows, coords, &a, 1e-12)
        .into_iter()
        .map(|v| {
            ComplexMatrix::from_fn(n, n, |i, j| {
                let idx = i * n + j;
                C64::new(v[2 * idx], v[2 * idx + 1])
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sptriple::{check_even_axioms, check_poincare, check_real_axioms, check_so_real, full_battery};

    fn m1() -> MassMatrix {
        MassMatrix(ComplexMatrix::from_real(&[&[1.0]]).unwrap())
    }

    fn complex2() -> MassMatrix {
        MassMatrix(
            ComplexMatrix::from_rows(vec![
                vec![C64::new(1.0, 0.5), C64::new(-0.3, 2.0)],
                vec![C64::new(0.0, -1.0), C64::new(0.7, 0.2)],
            ])
            .unwrap(),
        )
    }

    #[test]
    fn scalar_mass_gives_two_swaps() {
        let t = build_triple_from_mass_matrix(&m1()).unwrap();
        let want = ComplexMatrix::from_real(&[
            &[0.0, 1.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(t.dirac, want);
        assert!(full_battery(&t, Tolerance::default()).passed());
    }

    #[test]
    fn complex_mass_passes_enforced_batteries() {
        let t = build_triple_from_mass_matrix(&complex2()).unwrap();
        let tol = Tolerance::default();
        for r in [check_even_axioms(&t, tol), check_real_axioms(&t, tol), check_so_real(&t, tol)] {
            assert!(r.passed(), "{}", r.to_text());
        }
        // the order conditions are reported but do not hold for this representation
        let real = check_real_axioms(&t, tol);
        assert!(!real.get("triple.real.first_order").unwrap().passed);
        assert!(!real.get("triple.real.zeroth_order").unwrap().passed);
    }

    #[test]
    fn zero_mass_is_trivial() {
        let t = build_triple_from_mass_matrix(&MassMatrix(ComplexMatrix::zeros(2, 2))).unwrap();
        assert_eq!(t.dirac.max_abs(), 0.0);
        assert!(full_battery(&t, Tolerance::default()).passed());
    }

    #[test]
    fn non_square_mass_rejected() {
        let m = MassMatrix(ComplexMatrix::zeros(2, 3));
        assert!(matches!(build_triple_from_mass_matrix(&m), Err(Error::Input(_))));
    }

    #[test]
    fn gamma_identity_breaks_anticommutation() {
        let mut t = build_triple_from_mass_matrix(&m1()).unwrap();
        t.gamma = Some(ComplexMatrix::identity(4));
        let r = check_even_axioms(&t, Tolerance::default());
        let row = r.get("triple.even.anticommute_gamma").unwrap();
        assert!(!row.passed);
        assert!((row.worst_residual - 2.0 * t.dirac.frobenius_norm()).abs() < 1e-12);
    }

    #[test]
    fn identity_k_with_complex_d_fails_commutation() {
        let mut t = build_triple_from_mass_matrix(&complex2()).unwrap();
        t.real = Some(ComplexMatrix::identity(8));
        let r = check_real_axioms(&t, Tolerance::default());
        assert!(!r.get("triple.real.commute_D").unwrap().passed);
    }

    #[test]
    fn so_real_counterexamples() {
        let mut t = build_triple_from_mass_matrix(&m1()).unwrap();
        t.epsilon = Some(ComplexMatrix::identity(4));
        assert!(!check_so_real(&t, Tolerance::default()).get("triple.so_real.spectrum").unwrap().passed);
        t.epsilon = t.gamma.clone();
        let r = check_so_real(&t, Tolerance::default());
        assert!(!r.get("triple.so_real.anticommute_J").unwrap().passed);
    }

    #[test]
    fn poincare_dimensions() {
        let t = build_triple_from_mass_matrix(&m1()).unwrap();
        let v = check_poincare(&t).unwrap();
        assert_eq!((v.dim_right, v.dim_left, v.satisfied), (2, 2, false));
        let mut t2 = t.clone();
        t2.gamma = Some(ComplexMatrix::diag_real(&[1.0, 1.0, 1.0, -1.0]));
        assert!(check_poincare(&t2).unwrap().satisfied);
        t2.gamma = Some(ComplexMatrix::identity(4));
        let v = check_poincare(&t2).unwrap();
        assert_eq!((v.dim_right, v.dim_left, v.satisfied), (4, 0, true));
    }

    #[test]
    fn round_trip_and_extraction_errors() {
        let tol = Tolerance::default();
        let t = build_triple_from_mass_matrix(&complex2()).unwrap();
        assert_eq!(extract_mass_matrix(&t, tol).unwrap(), complex2());

        let mut bad = t.clone();
        bad.dirac.set(0, 4, ONE);
        match extract_mass_matrix(&bad, tol) {
            Err(Error::Structural(msg)) => assert!(msg.contains("(1,3)")),
            other => panic!("{other:?}"),
        }

        let mut wrong = t.clone();
        wrong.dirac.set_block(4, 6, complex2().matrix());
        match extract_mass_matrix(&wrong, tol) {
            Err(Error::Consistency { what, residual }) => {
                assert!(what.contains("3,4"));
                let m = complex2().0;
                assert!((residual - (&m - &m.transpose()).frobenius_norm()).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn geodesic_examples() {
        let tol = Tolerance::default();
        let p = MassMatrix(ComplexMatrix::from_real(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap());
        assert!(check_geodesic_equation(&p, tol));
        let two = MassMatrix(ComplexMatrix::from_real(&[&[2.0]]).unwrap());
        assert_eq!(geodesic_residual(&two), 6.0);
        assert!(!check_geodesic_equation(&two, tol));
    }

    #[test]
    fn solution_space_is_the_mass_family() {
        for l in 1..=2 {
            let basis = dirac_solution_space(l).unwrap();
            assert_eq!(basis.len(), 2 * l * l);
            let blocks = sectors(l).unwrap();
            for d in basis {
                let t = FiniteSpectralTriple::new(blocks.clone(), d, None, None, None).unwrap();
                let m = extract_mass_matrix(&t, Tolerance::default()).unwrap();
                let rebuilt = build_triple_from_mass_matrix(&m).unwrap();
                assert!((&rebuilt.dirac - &t.dirac).frobenius_norm() < 1e-12);
            }
        }
    }
}
