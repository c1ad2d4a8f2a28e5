//! Time-dependent Hamiltonians for every model family and the adiabatic
//! spectrum.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diabatic::DiabaticModel;
use crate::error::{Error, Result};
use crate::linalg::hermitian_eigen;
use crate::matrix::HermitianMatrix;
use crate::model::{LevelSpec, LzcModel};

/// Anything that can produce `H(t)`.
///
/// `fill` writes into a caller-owned matrix so a propagation loop does not
/// allocate per step.
pub trait HamiltonianBuilder: Sync {
    fn dim(&self) -> usize;

    /// Whether `H(t)` diverges at `t = 0`; such builders are only evaluated
    /// for `t > 0`.
    fn singular_at_origin(&self) -> bool {
        true
    }

    fn fill(&self, t: f64, h: &mut HermitianMatrix) -> Result<()>;

    fn at(&self, t: f64) -> Result<HermitianMatrix> {
        let mut h = HermitianMatrix::zeros(self.dim());
        self.fill(t, &mut h)?;
        Ok(h)
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl HamiltonianBuilder for LzcModel {
    fn dim(&self) -> usize {
        self.levels.len() + 1
    }

    fn fill(&self, t: f64, h: &mut HermitianMatrix) -> Result<()> {
        if t <= 0.0 {
            return Err(Error::NonPositiveTime(t));
        }
        h.set_diag(0, self.k2 / t);
        for (i, level) in self.levels.iter().enumerate() {
            h.set_diag(i + 1, level.beta * t);
            h.set_pair(0, i + 1, real(level.g));
        }
        Ok(())
    }
}

impl HamiltonianBuilder for DiabaticModel {
    fn dim(&self) -> usize {
        self.diag.len()
    }

    fn singular_at_origin(&self) -> bool {
        self.is_singular()
    }

    fn fill(&self, t: f64, h: &mut HermitianMatrix) -> Result<()> {
        if self.is_singular() && t <= 0.0 {
            return Err(Error::NonPositiveTime(t));
        }
        for (i, profile) in self.diag.iter().enumerate() {
            h.set_diag(i, profile.energy_unchecked(t));
        }
        for (i, &g) in self.couplings.iter().enumerate() {
            h.set_pair(0, i + 1, real(g));
        }
        Ok(())
    }
}

/// Wraps a closure as a builder.
pub struct FnBuilder<F> {
    dim: usize,
    singular: bool,
    f: F,
}

impl<F> FnBuilder<F>
where
    F: Fn(f64) -> Result<HermitianMatrix> + Sync,
{
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, singular: true, f }
    }

    pub fn regular(dim: usize, f: F) -> Self {
        Self { dim, singular: false, f }
    }
}

impl<F> HamiltonianBuilder for FnBuilder<F>
where
    F: Fn(f64) -> Result<HermitianMatrix> + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn singular_at_origin(&self) -> bool {
        self.singular
    }

    fn fill(&self, t: f64, h: &mut HermitianMatrix) -> Result<()> {
        let m = (self.f)(t)?;
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: m.dim() });
        }
        *h = m;
        Ok(())
    }
}

pub fn lzc_hamiltonian(model: &LzcModel, t: f64) -> Result<HermitianMatrix> {
    model.at(t)
}

pub fn generic_hamiltonian(model: &DiabaticModel, t: f64) -> Result<HermitianMatrix> {
    model.check()?;
    model.at(t)
}

/// Sorted instantaneous eigenvalues.
pub fn adiabatic_energies(h: &HermitianMatrix) -> Vec<f64> {
    hermitian_eigen(h).values
}

/// Two coupled qubits driven so that three of their four states form an
/// LZC model.
///
/// Product basis order: `|uu>, |ud>, |du>, |dd>`. The schedule is
/// `J(t) = -k2 / (2t)`, `B_z(t) = beta t / 2`, `B_x = -g / sqrt(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitModel {
    pub k2: f64,
    pub g: f64,
    pub beta: f64,
}

pub const UU: usize = 0;
pub const UD: usize = 1;
pub const DU: usize = 2;
pub const DD: usize = 3;

impl TwoQubitModel {
    pub fn exchange(&self, t: f64) -> f64 {
        -self.k2 / (2.0 * t)
    }

    pub fn field_z(&self, t: f64) -> f64 {
        self.beta * t / 2.0
    }

    pub fn field_x(&self) -> f64 {
        -self.g * FRAC_1_SQRT_2
    }

    /// The LZC model whose probabilities the reduced three-state block
    /// reproduces: level 1 is `|uu>`, level 2 is `-|dd>`.
    ///
    /// With Pauli operators the exchange term gives the singlet an energy
    /// `4 J = -2 k2 / t`, so the Coulomb strength doubles; flipping the sign
    /// of the whole Hamiltonian turns `-2 k2 / t` into `+2 k2 / t` and swaps
    /// the slope signs.
    pub fn equivalent_lzc(&self) -> Result<LzcModel> {
        LzcModel::new(
            2.0 * self.k2,
            [LevelSpec::new(self.g, -self.beta), LevelSpec::new(self.g, self.beta)],
        )
    }
}

impl HamiltonianBuilder for TwoQubitModel {
    fn dim(&self) -> usize {
        4
    }

    fn fill(&self, t: f64, h: &mut HermitianMatrix) -> Result<()> {
        if t <= 0.0 {
            return Err(Error::NonPositiveTime(t));
        }
        let j = self.exchange(t);
        let bz = self.field_z(t);
        let bx = self.field_x();
        // J (1 - s1.s2): zero on |uu>, |dd>; [[2J, -2J], [-2J, 2J]] on |ud>, |du>
        h.set_diag(UU, 2.0 * bz);
        h.set_diag(UD, 2.0 * j);
        h.set_diag(DU, 2.0 * j);
        h.set_diag(DD, -2.0 * bz);
        h.set_pair(UD, DU, real(-2.0 * j));
        h.set_pair(UU, DD, real(0.0));
        // B_x (sx1 - sx2)
        h.set_pair(UU, DU, real(bx));
        h.set_pair(UU, UD, real(-bx));
        h.set_pair(UD, DD, real(bx));
        h.set_pair(DU, DD, real(-bx));
        Ok(())
    }
}

pub fn two_qubit_hamiltonian(k2: f64, g: f64, beta: f64, t: f64) -> Result<HermitianMatrix> {
    TwoQubitModel { k2, g, beta }.at(t)
}

/// Isometry (4 x 3, row-major) onto `{(|ud> - |du>)/sqrt 2, |uu>, -|dd>}`.
pub fn qubit_isometry() -> [Complex64; 12] {
    let z = real(0.0);
    let s = real(FRAC_1_SQRT_2);
    [
        z, real(1.0), z, //
        s, z, z, //
        -s, z, z, //
        z, z, real(-1.0),
    ]
}

/// The symmetric combination `(|ud> + |du>)/sqrt 2`, which never couples.
pub fn qubit_decoupled_state() -> [Complex64; 4] {
    let s = real(FRAC_1_SQRT_2);
    [real(0.0), s, s, real(0.0)]
}

pub fn reduce_qubit_basis(h4: &HermitianMatrix) -> Result<HermitianMatrix> {
    if h4.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: h4.dim() });
    }
    h4.compress(&qubit_isometry(), 3)
}

/// Maps the reduced qubit block onto the LZC Hamiltonian of
/// [`TwoQubitModel::equivalent_lzc`]: `-D H D` with `D = diag(-1, 1, 1)`.
pub fn reduced_qubit_as_lzc(h3: &HermitianMatrix) -> Result<HermitianMatrix> {
    if h3.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: h3.dim() });
    }
    let sign = [-1.0, 1.0, 1.0];
    let mut out = HermitianMatrix::zeros(3);
    for i in 0..3 {
        for j in i..3 {
            out.set_pair(i, j, -h3.get(i, j) * sign[i] * sign[j]);
        }
    }
    Ok(out)
}

/// Projects a four-component qubit state onto the reduced basis.
pub fn project_qubit_state(psi: &[Complex64]) -> Result<[Complex64; 3]> {
    if psi.len() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: psi.len() });
    }
    let v = qubit_isometry();
    let mut out = [real(0.0); 3];
    for (a, slot) in out.iter_mut().enumerate() {
        *slot = (0..4).map(|i| v[i * 3 + a].conj() * psi[i]).sum();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diabatic::Profile;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lone_coulomb_level() {
        let m = LzcModel::new(1.0, []).unwrap();
        let h = lzc_hamiltonian(&m, 2.0).unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(h.get(0, 0), real(0.5));
    }

    #[test]
    fn bow_tie_two_state() {
        let m = LzcModel::from_pairs(0.0, &[(0.4, 1.5)]).unwrap();
        let h = lzc_hamiltonian(&m, 2.0).unwrap();
        let want = HermitianMatrix::from_real_rows(&[vec![0.0, 0.4], vec![0.4, 3.0]]).unwrap();
        assert_eq!(h, want);
    }

    #[test]
    fn rejects_nonpositive_time() {
        let m = LzcModel::from_pairs(0.5, &[(0.4, 1.5)]).unwrap();
        assert_eq!(lzc_hamiltonian(&m, 0.0), Err(Error::NonPositiveTime(0.0)));
    }

    #[test]
    fn lzc_and_generic_builders_agree() {
        let m = LzcModel::from_pairs(0.7, &[(0.3, 1.0), (0.9, 0.5), (0.2, -2.0)]).unwrap();
        let d = DiabaticModel::from(&m);
        for t in [1e-4, 0.3, 2.0, 400.0] {
            let a = lzc_hamiltonian(&m, t).unwrap();
            let b = generic_hamiltonian(&d, t).unwrap();
            assert_eq!(a, b);
            assert!(a.is_hermitian());
        }
    }

    #[test]
    fn quadratic_profile_at_origin() {
        let d = DiabaticModel::new(
            vec![Profile::Quadratic { eps0: 1.3, kappa: 2.0 }, Profile::Linear { beta: 0.0 }],
            vec![0.5],
        )
        .unwrap();
        let h = generic_hamiltonian(&d, 0.0).unwrap();
        assert_eq!(h.get(0, 0), real(1.3));
        assert_eq!(h.get(0, 1), real(0.5));
    }

    #[test]
    fn symmetric_triplet_decouples() {
        let v = qubit_decoupled_state();
        for t in [1e-3, 0.5, 7.0] {
            let h = two_qubit_hamiltonian(0.8, 0.6, 1.3, t).unwrap();
            let hv = h.mul_vec(&v);
            assert!(hv.iter().all(|x| x.norm() < 1e-15), "{hv:?}");
        }
    }

    #[test]
    fn reduced_block_entries() {
        let (k2, g, beta, t) = (0.6, 0.45, 1.2, 0.8);
        let h3 = reduce_qubit_basis(&two_qubit_hamiltonian(k2, g, beta, t).unwrap()).unwrap();
        assert!((h3.get(0, 0).re + 2.0 * k2 / t).abs() < 1e-14);
        assert!((h3.get(0, 1).re - g).abs() < 1e-14);
        assert!((h3.get(0, 2).re - g).abs() < 1e-14);
        assert!(h3.get(1, 2).norm() < 1e-15 && h3.get(2, 1).norm() < 1e-15);
        assert!((h3.get(1, 1).re - beta * t).abs() < 1e-14);
        assert!((h3.get(2, 2).re + beta * t).abs() < 1e-14);
    }

    #[test]
    fn zero_field_is_diagonal_in_reduced_basis() {
        let h3 = reduce_qubit_basis(&two_qubit_hamiltonian(0.6, 0.0, 1.2, 0.8).unwrap()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(h3.get(i, j).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn reduction_matches_equivalent_lzc_model() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let q = TwoQubitModel {
                k2: rng.gen_range(0.0..3.0),
                g: rng.gen_range(0.0..2.0),
                beta: rng.gen_range(0.1..3.0) * if rng.gen() { 1.0 } else { -1.0 },
            };
            let t = rng.gen_range(1e-3..50.0);
            let h3 = reduce_qubit_basis(&q.at(t).unwrap()).unwrap();
            let mapped = reduced_qubit_as_lzc(&h3).unwrap();
            let lzc = lzc_hamiltonian(&q.equivalent_lzc().unwrap(), t).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let d = (mapped.get(i, j) - lzc.get(i, j)).norm();
                    assert!(d <= 1e-14 * (1.0 + lzc.get(i, j).norm()), "({i},{j}): {d}");
                }
            }
        }
    }

    #[test]
    fn reduce_rejects_wrong_dimension() {
        assert!(matches!(
            reduce_qubit_basis(&HermitianMatrix::zeros(3)),
            Err(Error::DimensionMismatch { expected: 4, got: 3 })
        ));
    }
}
