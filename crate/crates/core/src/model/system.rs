use num_complex::Complex64 as C64;
use serde::Serialize;

use super::{build_hamiltonian, enumerate_basis, Configuration, StateRef, SystemParams, MAX_MANIFOLD};
use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, ComplexMatrix};

/// One excitation manifold in the configuration and eigen bases.
#[derive(Clone, Debug, Serialize)]
pub struct Manifold {
    pub index: usize,
    pub basis: Vec<Configuration>,
    #[serde(skip)]
    pub hamiltonian: ComplexMatrix,
    pub energies: Vec<f64>,
    /// Columns are eigenvectors over `basis`.
    #[serde(skip)]
    pub transform: ComplexMatrix,
}

impl Manifold {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    /// |φ_{config, state}|².
    pub fn weights(&self) -> Vec<Vec<f64>> {
        (0..self.transform.rows())
            .map(|i| (0..self.transform.cols()).map(|k| self.transform[(i, k)].norm_sqr()).collect())
            .collect()
    }
}

/// Eigenstates of the ground, one- and two-quantum manifolds together with
/// the renormalized transition dipoles between adjacent manifolds.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub params: SystemParams,
    pub manifolds: Vec<Manifold>,
    /// `dipole_01[(k, 0)]` couples the ground state to one-polariton state k.
    pub dipole_01: ComplexMatrix,
    /// `dipole_12[(f, k)]` couples one-polariton k to two-polariton f.
    pub dipole_12: ComplexMatrix,
}

impl EigenSystem {
    pub fn energy(&self, s: StateRef) -> f64 {
        self.manifolds[s.manifold].energies[s.index]
    }

    /// ω_ab = E_a − E_b.
    pub fn transition(&self, upper: StateRef, lower: StateRef) -> f64 {
        self.energy(upper) - self.energy(lower)
    }

    /// Rows are one-polariton states, columns two-polariton states:
    /// `gaps[j][k] = E(p″_k) − E(p′_j)`.
    pub fn gap_table(&self) -> Vec<Vec<f64>> {
        let one = &self.manifolds[1].energies;
        let two = &self.manifolds[2].energies;
        one.iter().map(|e1| two.iter().map(|e2| e2 - e1).collect()).collect()
    }

    /// Scales every dipole matrix element by `s`.
    pub fn with_scaled_dipoles(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.dipole_01 = out.dipole_01.scale(C64::new(s, 0.0));
        out.dipole_12 = out.dipole_12.scale(C64::new(s, 0.0));
        out
    }

    /// Keeps only the listed one- and two-polariton eigenstates (zero-based),
    /// dropping every pathway through the others.
    pub fn restricted(&self, one: &[usize], two: &[usize]) -> Result<Self> {
        check_subset(one, self.manifolds[1].len())?;
        check_subset(two, self.manifolds[2].len())?;
        let mut out = self.clone();
        for (m, keep) in [(1, one), (2, two)] {
            let src = &self.manifolds[m];
            let dst = &mut out.manifolds[m];
            dst.energies = keep.iter().map(|&k| src.energies[k]).collect();
            dst.transform = ComplexMatrix::from_fn(src.transform.rows(), keep.len(), |i, k| src.transform[(i, keep[k])]);
        }
        out.dipole_01 = ComplexMatrix::from_fn(one.len(), 1, |k, _| self.dipole_01[(one[k], 0)]);
        out.dipole_12 = ComplexMatrix::from_fn(two.len(), one.len(), |f, k| self.dipole_12[(two[f], one[k])]);
        Ok(out)
    }
}

pub(crate) fn check_subset(keep: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &k in keep {
        if k >= n || seen[k] {
            return Err(Error::Contract(format!("state subset {keep:?} is not a set of indices below {n}")));
        }
        seen[k] = true;
    }
    Ok(())
}

pub fn diagonalize(params: &SystemParams) -> Result<EigenSystem> {
    params.validate()?;
    let mut manifolds = Vec::with_capacity(MAX_MANIFOLD + 1);
    for n in 0..=MAX_MANIFOLD {
        let basis = enumerate_basis(params.n_modes(), n)?;
        let hamiltonian = build_hamiltonian(params, n)?;
        let eig = hermitian_eig(&hamiltonian)?;
        manifolds.push(Manifold {
            index: n,
            basis,
            hamiltonian,
            energies: eig.real_values(),
            transform: eig.right_vectors,
        });
    }
    let mut eig = EigenSystem {
        params: params.clone(),
        manifolds,
        dipole_01: ComplexMatrix::zeros(0, 0),
        dipole_12: ComplexMatrix::zeros(0, 0),
    };
    let (d01, d12) = transition_dipoles(params, &eig)?;
    eig.dipole_01 = d01;
    eig.dipole_12 = d12;
    Ok(eig)
}

/// Configuration-basis matrix of the pump operator d_eff·a† from `lower` to
/// `upper` (rows = upper configurations).
pub fn interaction_block(params: &SystemParams, lower: &[Configuration], upper: &[Configuration]) -> ComplexMatrix {
    let d = params.cavity_dipole();
    ComplexMatrix::from_fn(upper.len(), lower.len(), |i, j| {
        let (u, l) = (&upper[i], &lower[j]);
        if u.vibrons == l.vibrons && u.cavity == l.cavity + 1 {
            C64::new(d * (u.cavity as f64).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Eigenbasis transition dipoles `(φ1†Vφ0, φ2†Vφ1)` of the cavity pump
/// operator V = d_eff(a† + a).
pub fn transition_dipoles(params: &SystemParams, eig: &EigenSystem) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if eig.manifolds.len() != MAX_MANIFOLD + 1 {
        return Err(Error::Contract("eigensystem must contain manifolds 0, 1 and 2".into()));
    }
    let m = &eig.manifolds;
    let v10 = interaction_block(params, &m[0].basis, &m[1].basis);
    let v21 = interaction_block(params, &m[1].basis, &m[2].basis);
    let d01 = &(&m[1].transform.adjoint() * &v10) * &m[0].transform;
    let d12 = &(&m[2].transform.adjoint() * &v21) * &m[1].transform;
    Ok((d01, d12))
}
