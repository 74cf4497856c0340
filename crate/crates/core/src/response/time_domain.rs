//! Third-order response in the time domain, summed pathway by pathway from
//! the Green's functions. Used to cross-check the closed-form spectra.

use num_complex::Complex64 as C64;

use super::{PulseSet, Technique};
use crate::error::Result;
use crate::kinetics::{GreenTensor, RelaxationData};
use crate::model::{EigenSystem, StateRef};
use crate::units::fs_to_wavenumber_time;

/// R(t_a, t_b) for a fixed middle delay, where (t_a, t_b) is (t2, t3) for
/// DQC with t1 from the pulse set and (t1, t3) for PE with t2 from the
/// pulse set. Includes the i³ prefactor and the pulse weights.
pub struct ResponseFunction<'a> {
    eig: &'a EigenSystem,
    relax: &'a RelaxationData,
    pulses: PulseSet,
    green: GreenTensor,
}

impl<'a> ResponseFunction<'a> {
    pub fn new(eig: &'a EigenSystem, relax: &'a RelaxationData, pulses: &PulseSet) -> Result<Self> {
        pulses.validate()?;
        let green = GreenTensor::new(relax, 1, pulses.delay_fs)?;
        Ok(Self {
            eig,
            relax,
            pulses: pulses.clone(),
            green,
        })
    }

    /// e^{−i z_ab t} for t ≥ 0, zero otherwise.
    fn coherence(&self, a: StateRef, b: StateRef, t_fs: f64) -> C64 {
        if t_fs < 0.0 {
            return C64::new(0.0, 0.0);
        }
        (-C64::new(0.0, 1.0) * self.relax.resonance(a, b) * fs_to_wavenumber_time(t_fs)).exp()
    }

    pub fn at(&self, t_a: f64, t_b: f64) -> C64 {
        if t_a < 0.0 || t_b < 0.0 {
            return C64::new(0.0, 0.0);
        }
        let i3 = C64::new(0.0, -1.0);
        i3 * match self.pulses.technique {
            Technique::Dqc => self.dqc(t_a, t_b),
            Technique::Pe => self.pe(t_a, t_b),
        }
    }

    fn dqc(&self, t2: f64, t3: f64) -> C64 {
        let (eig, relax, p) = (self.eig, self.relax, &self.pulses);
        let g = StateRef::GROUND;
        let n1 = eig.manifolds[1].len();
        let n2 = eig.manifolds[2].len();
        let mut sum = C64::new(0.0, 0.0);
        for a in 0..n1 {
            let sa = StateRef::new(1, a);
            let e_a = relax.energy(sa);
            let g1 = self.coherence(sa, g, p.delay_fs);
            for f in 0..n2 {
                let sf = StateRef::new(2, f);
                let e_f = relax.energy(sf);
                let g2 = self.coherence(sf, g, t2);
                let w12 = eig.dipole_12[(f, a)] * eig.dipole_01[(a, 0)] * p.envelope(0, e_a) * p.envelope(1, e_f - e_a);
                for b in 0..n1 {
                    let sb = StateRef::new(1, b);
                    let e_b = relax.energy(sb);
                    let w3 = eig.dipole_12[(f, b)].conj() * eig.dipole_01[(b, 0)].conj();
                    // bra interaction with p2′ leaves |f⟩⟨b|, ket interaction leaves |b⟩⟨0|
                    let bra = -self.coherence(sf, sb, t3) * p.envelope(2, e_b) * p.envelope(3, e_f - e_b);
                    let ket = self.coherence(sb, g, t3) * p.envelope(2, e_f - e_b) * p.envelope(3, e_b);
                    sum += w12 * g1 * g2 * w3 * (bra + ket);
                }
            }
        }
        sum
    }

    fn pe(&self, t1: f64, t3: f64) -> C64 {
        let (eig, relax, p) = (self.eig, self.relax, &self.pulses);
        let g = StateRef::GROUND;
        let n1 = eig.manifolds[1].len();
        let n2 = eig.manifolds[2].len();
        let mu = |k: usize| eig.dipole_01[(k, 0)];
        let e1 = |k: usize| relax.energy(StateRef::new(1, k));
        let mut sum = C64::new(0.0, 0.0);
        for a in 0..n1 {
            let sa = StateRef::new(1, a);
            let g1 = self.coherence(g, sa, t1);
            // ground-state bleach: the ground population is untouched during t2
            for d in 0..n1 {
                let sd = StateRef::new(1, d);
                sum += mu(a).norm_sqr() * mu(d).norm_sqr() * g1 * self.coherence(sd, g, t3)
                    * p.envelope(0, e1(a)) * p.envelope(1, e1(a)) * p.envelope(2, e1(d)) * p.envelope(3, e1(d));
            }
            for b in 0..n1 {
                let pump = mu(b) * mu(a).conj() * g1 * p.envelope(0, e1(a)) * p.envelope(1, e1(b));
                for c in 0..n1 {
                    for d in 0..n1 {
                        let g2 = self.green.get(d, c, b, a);
                        if g2 == C64::new(0.0, 0.0) {
                            continue;
                        }
                        let sd = StateRef::new(1, d);
                        let sc = StateRef::new(1, c);
                        let se = mu(d).conj() * mu(c) * self.coherence(sd, g, t3) * p.envelope(2, e1(c)) * p.envelope(3, e1(d));
                        let mut esa = C64::new(0.0, 0.0);
                        for f in 0..n2 {
                            let sf = StateRef::new(2, f);
                            let e_f = relax.energy(sf);
                            esa += eig.dipole_12[(f, c)].conj() * eig.dipole_12[(f, d)] * self.coherence(sf, sc, t3)
                                * p.envelope(2, e_f - e1(d)) * p.envelope(3, e_f - e1(c));
                        }
                        sum += pump * g2 * (se - esa);
                    }
                }
            }
        }
        sum
    }
}

/// One-off evaluation of [`ResponseFunction::at`].
pub fn time_domain_response(
    eig: &EigenSystem,
    relax: &RelaxationData,
    pulses: &PulseSet,
    t_a: f64,
    t_b: f64,
) -> Result<C64> {
    Ok(ResponseFunction::new(eig, relax, pulses)?.at(t_a, t_b))
}
