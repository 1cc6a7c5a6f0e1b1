//! Single-qubit Kraus channels, their local application to multiqubit
//! states, and the analytic evolution law for correlation triples.

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::pauli::{pauli_matrix, PauliAxis};
use crate::states::CorrelationTriple;

const COMPLETENESS_TOL: f64 = 1e-10;

/// CPTP map on one qubit, given by its Kraus operators.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    operators: Vec<ComplexMatrix>,
    label: String,
}

impl KrausChannel {
    /// Wrap a list of 2x2 operators, checking the completeness relation
    /// sum K^dag K = I.
    pub fn new(operators: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::InvalidArgument(
                "a channel needs at least one Kraus operator".into(),
            ));
        }
        for op in &operators {
            if op.rows() != 2 || op.cols() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: op.rows(),
                });
            }
        }
        let channel = Self {
            operators,
            label: label.into(),
        };
        let dev = channel.completeness_deviation();
        if dev > COMPLETENESS_TOL {
            return Err(Error::InvalidArgument(format!(
                "Kraus completeness violated by {dev:.3e}"
            )));
        }
        Ok(channel)
    }

    pub fn identity() -> Self {
        Self {
            operators: vec![ComplexMatrix::identity(2)],
            label: "identity".into(),
        }
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Max entry of |sum K^dag K - I|.
    pub fn completeness_deviation(&self) -> f64 {
        let mut acc = ComplexMatrix::zeros(2, 2);
        for k in &self.operators {
            acc = acc.add(&k.adjoint().matmul(k));
        }
        acc.max_abs_diff(&ComplexMatrix::identity(2))
    }
}

fn check_unit_interval(name: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) || !value.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "{name} must lie in [0, 1], got {value}"
        )));
    }
    Ok(())
}

/// Phase damping: {sqrt(1 - q/2) I, sqrt(q/2) sigma_z}. Destroys
/// computational-basis coherence with no energy exchange.
pub fn phase_damping(q: f64) -> Result<KrausChannel> {
    flip_channel(PauliAxis::Z, q).map(|mut ch| {
        ch.label = "phase_damping".into();
        ch
    })
}

/// Flip-type channel toward the given spin direction:
/// {sqrt(1 - q/2) I, sqrt(q/2) sigma_k}. For k = z this is phase damping.
pub fn flip_channel(axis: PauliAxis, q: f64) -> Result<KrausChannel> {
    check_unit_interval("damping q", q)?;
    let k0 = ComplexMatrix::identity(2).scale_re((1.0 - q / 2.0).sqrt());
    let k1 = pauli_matrix(axis).scale_re((q / 2.0).sqrt());
    KrausChannel::new(vec![k0, k1], format!("flip_{}", axis.index()))
}

/// Generalized amplitude damping with damping u and equilibrium population
/// p: energy exchange with a thermal environment.
pub fn gad(u: f64, p: f64) -> Result<KrausChannel> {
    check_unit_interval("damping u", u)?;
    check_unit_interval("population p", p)?;
    let sp = p.sqrt();
    let sq = (1.0 - p).sqrt();
    let su = u.sqrt();
    let sv = (1.0 - u).sqrt();
    let k0 = ComplexMatrix::from_real(2, 2, &[sp, 0.0, 0.0, sp * sv]).unwrap();
    let k1 = ComplexMatrix::from_real(2, 2, &[0.0, sp * su, 0.0, 0.0]).unwrap();
    let k2 = ComplexMatrix::from_real(2, 2, &[sq * sv, 0.0, 0.0, sq]).unwrap();
    let k3 = ComplexMatrix::from_real(2, 2, &[0.0, 0.0, sq * su, 0.0]).unwrap();
    KrausChannel::new(vec![k0, k1, k2, k3], "gad")
}

/// Per-qubit relaxation times driving the damping functions
/// q(t) = 1 - e^{-t/T2} and u(t) = 1 - e^{-t/T1}, with thermal parameter
/// alpha giving the GAD population p = 1/2 - alpha.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseClock {
    t2: Vec<f64>,
    t1: Option<Vec<f64>>,
    alpha: Option<f64>,
}

impl NoiseClock {
    pub fn new(t2: Vec<f64>, t1: Option<Vec<f64>>, alpha: Option<f64>) -> Result<Self> {
        if t2.is_empty() {
            return Err(Error::InvalidArgument("need at least one T2 time".into()));
        }
        if t2.iter().any(|&t| !t.is_finite() || t <= 0.0) {
            return Err(Error::InvalidArgument("all T2 times must be > 0".into()));
        }
        if let Some(ref t1s) = t1 {
            if t1s.len() != t2.len() {
                return Err(Error::DimensionMismatch {
                    expected: t2.len(),
                    got: t1s.len(),
                });
            }
            if t1s.iter().any(|&t| !t.is_finite() || t <= 0.0) {
                return Err(Error::InvalidArgument("all T1 times must be > 0".into()));
            }
        }
        if let Some(a) = alpha {
            if !(0.0..=0.5).contains(&a) {
                return Err(Error::InvalidArgument(format!(
                    "alpha must lie in [0, 0.5], got {a}"
                )));
            }
        }
        Ok(Self { t2, t1, alpha })
    }

    pub fn num_qubits(&self) -> usize {
        self.t2.len()
    }

    pub fn t2(&self) -> &[f64] {
        &self.t2
    }

    pub fn t1(&self) -> Option<&[f64]> {
        self.t1.as_deref()
    }

    /// Dephasing strength q(t) = 1 - e^{-t/T2} for one qubit.
    pub fn damping_q(&self, qubit: usize, t: f64) -> f64 {
        1.0 - (-t / self.t2[qubit]).exp()
    }

    /// Relaxation strength u(t) = 1 - e^{-t/T1} for one qubit, if T1 is set.
    pub fn damping_u(&self, qubit: usize, t: f64) -> Option<f64> {
        self.t1.as_ref().map(|t1| 1.0 - (-t / t1[qubit]).exp())
    }

    /// Equilibrium population p = 1/2 - alpha; infinite temperature without
    /// an explicit alpha.
    pub fn thermal_p(&self) -> f64 {
        0.5 - self.alpha.unwrap_or(0.0)
    }

    /// Decay rate of the transversal correlators: sum_q 1/T2_q. For two
    /// qubits this is the usual 2 gamma with
    /// gamma = (T2a + T2b) / (2 T2a T2b).
    pub fn correlator_rate(&self) -> f64 {
        self.t2.iter().map(|t| 1.0 / t).sum()
    }
}

/// Apply one channel per qubit: rho' = sum over operator tuples of
/// (K_{a_1} x ... x K_{a_N}) rho (...)^dag.
pub fn apply_local(rho: &DensityMatrix, per_qubit: &[KrausChannel]) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    if per_qubit.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: per_qubit.len(),
        });
    }
    let dim = rho.dim();
    let mut acc = ComplexMatrix::zeros(dim, dim);
    let mut indices = vec![0usize; n];
    loop {
        let mut k = per_qubit[0].operators()[indices[0]].clone();
        for q in 1..n {
            k = k.kron(&per_qubit[q].operators()[indices[q]]);
        }
        acc = acc.add(&k.matmul(rho.matrix()).matmul(&k.adjoint()));

        // Advance the mixed-radix operator tuple.
        let mut q = n;
        loop {
            if q == 0 {
                return DensityMatrix::new(n, acc);
            }
            q -= 1;
            indices[q] += 1;
            if indices[q] < per_qubit[q].operators().len() {
                break;
            }
            indices[q] = 0;
        }
    }
}

/// Analytic triple evolution under flip noise toward axis k: the k component
/// is conserved and the other two decay by e^{-t sum_q 1/T2_q}. Agrees with
/// the Kraus engine because each non-k Pauli picks up a factor (1 - q_q) per
/// qubit and 1 - q_q = e^{-t/T2_q}.
pub fn evolve_triple(
    c0: &CorrelationTriple,
    clock: &NoiseClock,
    axis: PauliAxis,
    t: f64,
) -> Result<CorrelationTriple> {
    if t < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "evolution time must be nonnegative, got {t}"
        )));
    }
    if clock.num_qubits() != c0.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: c0.num_qubits(),
            got: clock.num_qubits(),
        });
    }
    let factor = (-t * clock.correlator_rate()).exp();
    let mut c = c0.components();
    for a in PauliAxis::ALL {
        if a != axis {
            c[a.index() - 1] *= factor;
        }
    }
    CorrelationTriple::new(c[0], c[1], c[2], c0.num_qubits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bd_state, triple_of};

    #[test]
    fn phase_damping_operators_match_quoted_form() {
        let ch = phase_damping(0.4).unwrap();
        assert_eq!(ch.operators().len(), 2);
        let k0 = &ch.operators()[0];
        let k1 = &ch.operators()[1];
        assert!((k0[(0, 0)].re - (1.0f64 - 0.2).sqrt()).abs() < 1e-15);
        assert!((k1[(0, 0)].re - 0.2f64.sqrt()).abs() < 1e-15);
        assert!((k1[(1, 1)].re + 0.2f64.sqrt()).abs() < 1e-15);

        // q = 0 acts as the identity.
        let id = phase_damping(0.0).unwrap();
        let rho = crate::states::random_density(1, 5);
        let out = apply_local(&rho, &[id]).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-12);
    }

    #[test]
    fn phase_flip_equals_phase_damping() {
        let a = phase_damping(0.3).unwrap();
        let b = flip_channel(PauliAxis::Z, 0.3).unwrap();
        for (x, y) in a.operators().iter().zip(b.operators()) {
            assert!(x.max_abs_diff(y) < 1e-15);
        }
    }

    #[test]
    fn completeness_holds_across_parameter_range() {
        for q in [0.0, 0.17, 0.5, 1.0] {
            for axis in PauliAxis::ALL {
                assert!(flip_channel(axis, q).unwrap().completeness_deviation() < 1e-12);
            }
        }
        assert!(gad(0.3, 0.45).unwrap().completeness_deviation() < 1e-12);
        assert!(phase_damping(1.0).unwrap().completeness_deviation() < 1e-12);
    }

    #[test]
    fn damping_law_at_one_relaxation_time() {
        let clock = NoiseClock::new(vec![2.0], None, None).unwrap();
        let q = clock.damping_q(0, 2.0);
        assert!((q - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        assert!((q - 0.63212).abs() < 1e-5);
    }

    #[test]
    fn out_of_range_parameters_rejected() {
        assert!(phase_damping(-0.1).is_err());
        assert!(phase_damping(1.1).is_err());
        assert!(gad(0.5, 1.5).is_err());
        assert!(NoiseClock::new(vec![0.0], None, None).is_err());
        assert!(NoiseClock::new(vec![1.0], None, Some(0.7)).is_err());
    }

    #[test]
    fn zero_damping_channels_act_as_identity() {
        let rho = crate::states::random_density(1, 17);
        for ch in [
            gad(0.0, 0.3).unwrap(),
            flip_channel(PauliAxis::X, 0.0).unwrap(),
            flip_channel(PauliAxis::Y, 0.0).unwrap(),
            flip_channel(PauliAxis::Z, 0.0).unwrap(),
        ] {
            let out = apply_local(&rho, &[ch]).unwrap();
            assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-12);
        }
    }

    #[test]
    fn full_amplitude_damping_drives_to_ground() {
        let ch = gad(1.0, 1.0).unwrap();
        let rho = crate::states::random_density(1, 9);
        let out = apply_local(&rho, &[ch]).unwrap();
        assert!((out.matrix()[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(out.matrix()[(1, 1)].norm() < 1e-12);
    }

    #[test]
    fn full_bit_flip_symmetrizes() {
        let ch = flip_channel(PauliAxis::X, 1.0).unwrap();
        let rho = crate::states::random_density(1, 13);
        let out = apply_local(&rho, &[ch]).unwrap();
        let sx = pauli_matrix(PauliAxis::X);
        let expect = rho
            .matrix()
            .add(&rho.matrix().conjugate_by(&sx))
            .scale_re(0.5);
        assert!(out.matrix().max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn phase_damping_scales_transversal_correlators() {
        let c = CorrelationTriple::new(1.0, 0.7, -0.7, 2).unwrap();
        let q = 0.35;
        let ch = phase_damping(q).unwrap();
        let out = apply_local(&bd_state(&c), &[ch.clone(), ch]).unwrap();
        let trip = triple_of(&out).unwrap();
        let f = (1.0 - q) * (1.0 - q);
        assert!((trip.components()[0] - f).abs() < 1e-12);
        assert!((trip.components()[1] - 0.7 * f).abs() < 1e-12);
        assert!((trip.components()[2] + 0.7).abs() < 1e-12);
    }

    #[test]
    fn gad_only_evolution_shrinks_longitudinal_correlator() {
        let c = CorrelationTriple::new(1.0, 0.7, -0.7, 2).unwrap();
        let clock = NoiseClock::new(
            vec![0.14, 0.90],
            Some(vec![7.53, 12.46]),
            None,
        )
        .unwrap();
        let t = 0.5;
        let channels: Vec<KrausChannel> = (0..2)
            .map(|q| gad(clock.damping_u(q, t).unwrap(), clock.thermal_p()).unwrap())
            .collect();
        let out = apply_local(&bd_state(&c), &channels).unwrap();
        let trip = triple_of(&out).unwrap();
        let factor = (-(t / 7.53) - (t / 12.46)).exp();
        assert!((trip.components()[2].abs() - 0.7 * factor).abs() < 1e-12);
        // Roughly a ten percent drop, and still physical (triple_of validated).
        let drop = 1.0 - trip.components()[2].abs() / 0.7;
        assert!(drop > 0.08 && drop < 0.13);
    }

    #[test]
    fn analytic_evolution_matches_quoted_values() {
        let c = CorrelationTriple::new(1.0, 0.7, -0.7, 2).unwrap();
        let clock = NoiseClock::new(vec![0.14, 0.90], None, None).unwrap();
        let out = evolve_triple(&c, &clock, PauliAxis::Z, 0.25).unwrap();
        let [c1, c2, c3] = out.components();
        assert!((c1 - 0.12700).abs() < 1e-5);
        assert!((c2 - 0.08890).abs() < 1e-5);
        assert!((c3 + 0.7).abs() < 1e-15);

        let unchanged = evolve_triple(&c, &clock, PauliAxis::Z, 0.0).unwrap();
        assert_eq!(unchanged.components(), c.components());

        let late = evolve_triple(&c, &clock, PauliAxis::Z, 100.0).unwrap();
        assert!(late.components()[0].abs() < 1e-12);
        assert!(late.components()[1].abs() < 1e-12);
        assert!((late.components()[2] + 0.7).abs() < 1e-15);

        assert!(evolve_triple(&c, &clock, PauliAxis::Z, -0.1).is_err());
    }

    #[test]
    fn channel_count_mismatch_rejected() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(apply_local(&rho, &[KrausChannel::identity()]).is_err());
    }
}
