//! Hamiltonian matrix elements by symbolic application of bosonic ladder
//! operators to occupation vectors.

use std::collections::BTreeMap;

use crate::model::{Configuration, SystemParams};

#[derive(Clone, Copy, Debug)]
pub enum Ladder {
    Create(usize),
    Annihilate(usize),
}

/// `coefficient · op_0 op_1 … op_k`, applied right to left.
#[derive(Clone, Debug)]
pub struct Term {
    pub coefficient: f64,
    pub operators: Vec<Ladder>,
}

type State = BTreeMap<Vec<u32>, f64>;

fn apply(op: Ladder, state: &State) -> State {
    let mut out = State::new();
    for (occ, &amp) in state {
        let mut next = occ.clone();
        let factor = match op {
            Ladder::Create(k) => {
                next[k] += 1;
                (next[k] as f64).sqrt()
            }
            Ladder::Annihilate(k) => {
                if occ[k] == 0 {
                    continue;
                }
                next[k] -= 1;
                (occ[k] as f64).sqrt()
            }
        };
        *out.entry(next).or_insert(0.0) += amp * factor;
    }
    out
}

/// Second-quantized terms of the number-conserving cavity/vibron Hamiltonian
/// with full bosonic exchange. Mode index `n_modes` is the cavity.
pub fn hamiltonian_terms(p: &SystemParams) -> Vec<Term> {
    use Ladder::*;
    let m = p.n_modes();
    let c = m;
    let mut terms = Vec::new();
    for i in 0..m {
        terms.push(Term { coefficient: p.vibron_energies[i], operators: vec![Create(i), Annihilate(i)] });
        terms.push(Term {
            coefficient: 0.5 * p.overtone_nonlinearity[i],
            operators: vec![Create(i), Create(i), Annihilate(i), Annihilate(i)],
        });
        for j in 0..m {
            if i != j {
                terms.push(Term { coefficient: p.hopping[i][j], operators: vec![Create(i), Annihilate(j)] });
            }
            if i < j {
                terms.push(Term {
                    coefficient: p.combination_nonlinearity[i][j],
                    operators: vec![Create(i), Create(j), Annihilate(j), Annihilate(i)],
                });
            }
        }
        terms.push(Term { coefficient: p.cavity_couplings[i], operators: vec![Create(c), Annihilate(i)] });
        terms.push(Term { coefficient: p.cavity_couplings[i], operators: vec![Create(i), Annihilate(c)] });
    }
    terms.push(Term { coefficient: p.cavity_frequency, operators: vec![Create(c), Annihilate(c)] });
    terms
}

fn occupation(cfg: &Configuration) -> Vec<u32> {
    let mut v = cfg.vibrons.clone();
    v.push(cfg.cavity);
    v
}

/// ⟨basis_i| Σ terms |basis_j⟩.
pub fn matrix(terms: &[Term], basis: &[Configuration]) -> Vec<Vec<f64>> {
    let n = basis.len();
    let mut out = vec![vec![0.0; n]; n];
    for (j, ket) in basis.iter().enumerate() {
        let mut image = State::new();
        for term in terms {
            let mut state = State::from([(occupation(ket), 1.0)]);
            for &op in term.operators.iter().rev() {
                state = apply(op, &state);
            }
            for (occ, amp) in state {
                *image.entry(occ).or_insert(0.0) += term.coefficient * amp;
            }
        }
        for (i, bra) in basis.iter().enumerate() {
            out[i][j] = image.get(&occupation(bra)).copied().unwrap_or(0.0);
        }
    }
    out
}
