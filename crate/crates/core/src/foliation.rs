// SPDX-License-Identifier: Apache-2.0

//! Entanglement and foliation analysis of qubit pairs.
//!
//! Two qubits are entangled when some pair of descriptor components has a
//! joint vacuum expectation that differs from the product of the individual
//! expectations. A (control, target) pair foliates sharply when the product
//! of their `z` components has expectation `+1`; the branches are then the
//! eigenvalue projectors of the control's `z` component. Expectation `-1` is
//! reported separately as anti-sharp, with the target branch sign flipped.
//!
//! Branches with zero weight are kept in the report (so a definite pair such
//! as a fresh record qubit shows weights `(1, 0)`) but carry no conditional
//! expectation.

use std::fmt;

use crate::engine::{Component, Descriptor, NetworkState, Sign};
use crate::error::{Error, Result};
use crate::pauli::PauliSum;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Sharp,
    AntiSharp,
    NonSharp,
    Unentangled,
}

impl Verdict {
    /// Sharp or anti-sharp: the pair admits relative descriptors.
    pub fn is_foliated(self) -> bool {
        matches!(self, Verdict::Sharp | Verdict::AntiSharp)
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Sharp => "sharp",
            Verdict::AntiSharp => "anti-sharp",
            Verdict::NonSharp => "non-sharp",
            Verdict::Unentangled => "unentangled",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntanglementWitness {
    pub pair: (usize, usize),
    /// The first violating component pair, or the closest one when not entangled.
    pub component_pair: (Component, Component),
    pub joint: f64,
    pub product: f64,
    pub entangled: bool,
}

impl EntanglementWitness {
    pub fn deviation(&self) -> f64 {
        (self.joint - self.product).abs()
    }
}

/// One branch of a sharp or anti-sharp foliation, labelled by the control's eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct FoliationBranch {
    pub control_sign: Sign,
    pub target_sign: Sign,
    /// `<P_sign[q_Cz]>`
    pub weight: f64,
    /// `q_T P_{control_sign}[q_Cz]`
    pub target_relative: Descriptor,
    /// `q_C P_{target_sign}[q_Tz]`
    pub control_relative: Descriptor,
    /// `<q_Tz>` conditioned on the control branch; `None` for a zero-weight branch.
    pub target_conditional_z: Option<f64>,
    /// `<q_Cz>` conditioned on the target branch; `None` for a zero-weight branch.
    pub control_conditional_z: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoliationReport {
    pub pair: (usize, usize),
    pub time: usize,
    pub verdict: Verdict,
    pub proj_plus: f64,
    pub proj_minus: f64,
    pub target_proj_plus: f64,
    pub target_proj_minus: f64,
    /// `<q_Cz q_Tz>`
    pub zz_product: f64,
    pub witness: EntanglementWitness,
    /// Both branches for sharp and anti-sharp verdicts, empty otherwise.
    pub branches: Vec<FoliationBranch>,
}

impl FoliationReport {
    pub fn branch(&self, control_sign: Sign) -> Option<&FoliationBranch> {
        self.branches.iter().find(|b| b.control_sign == control_sign)
    }

    /// Branches whose weight exceeds `tol`.
    pub fn live_branches(&self, tol: f64) -> impl Iterator<Item = &FoliationBranch> + '_ {
        self.branches.iter().filter(move |b| b.weight > tol)
    }
}

fn check_pair(state: &NetworkState, a: usize, b: usize) -> Result<()> {
    state.check_qubit(a)?;
    state.check_qubit(b)?;
    if a == b {
        return Err(Error::SameQubit(a));
    }
    Ok(())
}

fn joint_expectation(a: &PauliSum, b: &PauliSum) -> Result<f64> {
    a.checked_mul(b)?.vacuum_expectation()
}

/// Compares `<q_Qi q_Q'j>` with `<q_Qi><q_Q'j>` over all nine component pairs.
pub fn entanglement(state: &NetworkState, q: usize, q2: usize, tol: f64) -> Result<EntanglementWitness> {
    check_pair(state, q, q2)?;
    let mut closest: Option<EntanglementWitness> = None;
    for ci in Component::ALL {
        for cj in Component::ALL {
            let a = state.component(q, ci)?;
            let b = state.component(q2, cj)?;
            let witness = EntanglementWitness {
                pair: (q, q2),
                component_pair: (ci, cj),
                joint: joint_expectation(a, b)?,
                product: a.vacuum_expectation()? * b.vacuum_expectation()?,
                entangled: false,
            };
            if witness.deviation() > tol {
                return Ok(EntanglementWitness {
                    entangled: true,
                    ..witness
                });
            }
            if closest.as_ref().is_none_or(|c| witness.deviation() > c.deviation()) {
                closest = Some(witness);
            }
        }
    }
    Ok(closest.expect("nine component pairs were checked"))
}

fn classify(zz: f64, entangled: bool, tol: f64) -> Verdict {
    if (zz - 1.0).abs() <= tol {
        Verdict::Sharp
    } else if (zz + 1.0).abs() <= tol {
        Verdict::AntiSharp
    } else if entangled {
        Verdict::NonSharp
    } else {
        Verdict::Unentangled
    }
}

fn conditional(value: &PauliSum, projector: &PauliSum, weight: f64, tol: f64) -> Result<Option<f64>> {
    if weight <= tol {
        return Ok(None);
    }
    Ok(Some(joint_expectation(value, projector)? / weight))
}

/// Decides whether `(control, target)` foliates sharply at the state's time.
pub fn sharp_foliation(state: &NetworkState, control: usize, target: usize, tol: f64) -> Result<FoliationReport> {
    check_pair(state, control, target)?;
    let cz = state.component(control, Component::Z)?;
    let tz = state.component(target, Component::Z)?;
    let zz_product = joint_expectation(cz, tz)?;
    let witness = entanglement(state, control, target, tol)?;
    let verdict = classify(zz_product, witness.entangled, tol);

    let proj_plus = state.projector(control, Sign::Plus)?.vacuum_expectation()?;
    let target_proj_plus = state.projector(target, Sign::Plus)?.vacuum_expectation()?;

    let mut branches = Vec::new();
    if verdict.is_foliated() {
        let c = state.descriptor(control)?;
        let t = state.descriptor(target)?;
        for control_sign in Sign::BOTH {
            let target_sign = if verdict == Verdict::Sharp {
                control_sign
            } else {
                control_sign.flip()
            };
            let on_control = state.projector(control, control_sign)?;
            let on_target = state.projector(target, target_sign)?;
            let weight = on_control.vacuum_expectation()?;
            let target_weight = on_target.vacuum_expectation()?;
            branches.push(FoliationBranch {
                control_sign,
                target_sign,
                weight,
                target_relative: t.right_mul(&on_control)?,
                control_relative: c.right_mul(&on_target)?,
                target_conditional_z: conditional(tz, &on_control, weight, tol)?,
                control_conditional_z: conditional(cz, &on_target, target_weight, tol)?,
            });
        }
    }

    Ok(FoliationReport {
        pair: (control, target),
        time: state.time(),
        verdict,
        proj_plus,
        proj_minus: 1.0 - proj_plus,
        target_proj_plus,
        target_proj_minus: 1.0 - target_proj_plus,
        zz_product,
        witness,
        branches,
    })
}

/// `q_T P_sign[q_Cz]`, defined only when the pair is sharp or anti-sharp.
pub fn relative_descriptor(
    state: &NetworkState,
    target: usize,
    control: usize,
    sign: Sign,
    tol: f64,
) -> Result<Descriptor> {
    check_pair(state, target, control)?;
    let zz = joint_expectation(
        state.component(control, Component::Z)?,
        state.component(target, Component::Z)?,
    )?;
    if !classify(zz, false, tol).is_foliated() {
        return Err(Error::NotSharp {
            control,
            target,
            time: state.time(),
        });
    }
    state.descriptor(target)?.right_mul(&state.projector(control, sign)?)
}

/// `<q_{T,comp} P_sign[q_Cz]> / <P_sign[q_Cz]>`.
pub fn conditional_expectation(
    state: &NetworkState,
    target: usize,
    comp: Component,
    control: usize,
    sign: Sign,
    tol: f64,
) -> Result<f64> {
    check_pair(state, target, control)?;
    let projector = state.projector(control, sign)?;
    let weight = projector.vacuum_expectation()?;
    conditional(state.component(target, comp)?, &projector, weight, tol)?.ok_or(Error::ZeroWeight {
        control,
        sign,
        time: state.time(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = DEFAULT_TOLERANCE;

    fn rotated_pair(angle: f64) -> NetworkState {
        NetworkState::new(2)
            .unwrap()
            .apply_rotation_y(0, angle)
            .unwrap()
            .apply_cnot(0, 1)
            .unwrap()
    }

    #[test]
    fn fresh_pairs_are_unentangled() {
        let s = NetworkState::new(3).unwrap();
        for (a, b) in [(0, 1), (1, 2), (2, 0)] {
            assert!(!entanglement(&s, a, b, TOL).unwrap().entangled);
        }
        assert!(matches!(entanglement(&s, 1, 1, TOL), Err(Error::SameQubit(1))));
        assert!(entanglement(&s, 0, 3, TOL).is_err());
    }

    #[test]
    fn bell_pair_is_sharp_with_half_weights() {
        let s = rotated_pair(std::f64::consts::FRAC_PI_2);
        let r = sharp_foliation(&s, 0, 1, TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Sharp);
        assert!(r.witness.entangled);
        assert!((r.proj_plus - 0.5).abs() < TOL);
        for b in &r.branches {
            assert!((b.target_conditional_z.unwrap() - b.control_sign.value()).abs() < TOL);
            assert!((b.control_conditional_z.unwrap() - b.target_sign.value()).abs() < TOL);
        }
    }

    #[test]
    fn anti_correlated_pair_is_anti_sharp() {
        // X on the target before the CNOT records the opposite eigenvalue
        let s = NetworkState::new(2)
            .unwrap()
            .apply_rotation_y(0, 1.0)
            .unwrap()
            .apply_rotation_y(1, std::f64::consts::PI)
            .unwrap()
            .apply_cnot(0, 1)
            .unwrap();
        let r = sharp_foliation(&s, 0, 1, TOL).unwrap();
        assert_eq!(r.verdict, Verdict::AntiSharp);
        assert!((r.zz_product + 1.0).abs() < TOL);
        let plus = r.branch(Sign::Plus).unwrap();
        assert_eq!(plus.target_sign, Sign::Minus);
        assert!((plus.target_conditional_z.unwrap() + 1.0).abs() < TOL);
        assert!(relative_descriptor(&s, 1, 0, Sign::Plus, TOL).is_ok());
    }

    #[test]
    fn product_state_with_indefinite_qubit_is_unentangled() {
        let s = NetworkState::new(2).unwrap().apply_rotation_y(0, 0.8).unwrap();
        let r = sharp_foliation(&s, 0, 1, TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Unentangled);
        assert!(r.branches.is_empty());
        assert!((r.zz_product - 0.8f64.cos()).abs() < TOL);
        assert!(matches!(
            relative_descriptor(&s, 1, 0, Sign::Plus, TOL),
            Err(Error::NotSharp {
                control: 0,
                target: 1,
                time: 1
            })
        ));
    }

    #[test]
    fn definite_record_is_sharp_with_one_live_branch() {
        let s = NetworkState::new(2).unwrap().apply_cnot(0, 1).unwrap();
        let r = sharp_foliation(&s, 0, 1, TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Sharp);
        assert!(!r.witness.entangled);
        assert_eq!(r.proj_plus, 1.0);
        assert_eq!(r.live_branches(TOL).count(), 1);
        assert_eq!(r.branch(Sign::Minus).unwrap().target_conditional_z, None);
        assert!(matches!(
            conditional_expectation(&s, 1, Component::Z, 0, Sign::Minus, TOL),
            Err(Error::ZeroWeight {
                control: 0,
                sign: Sign::Minus,
                ..
            })
        ));
        assert_eq!(
            conditional_expectation(&s, 1, Component::Z, 0, Sign::Plus, TOL).unwrap(),
            1.0
        );
    }

    #[test]
    fn relative_descriptors_obey_reduced_algebra() {
        let s = rotated_pair(1.3);
        for sign in Sign::BOTH {
            let rel = relative_descriptor(&s, 1, 0, sign, TOL).unwrap();
            let p = s.projector(0, sign).unwrap();
            assert!(rel.algebra_defect(&p).unwrap() < TOL);
            assert!((&rel.z * &rel.z).approx_eq(&p, TOL));
        }
    }

    #[test]
    fn weighted_average_reconstructs_target_expectation() {
        let s = rotated_pair(2.1);
        let r = sharp_foliation(&s, 0, 1, TOL).unwrap();
        let total: f64 = r
            .branches
            .iter()
            .map(|b| b.weight * b.target_conditional_z.unwrap())
            .sum();
        assert!((total - s.expectation(1, Component::Z).unwrap()).abs() < TOL);
    }
}
