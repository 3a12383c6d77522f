//! Decay curves and death thresholds for the noisy families.
//!
//! Every curve is evaluated on the family mixture pushed through the
//! equal-rate three-qubit dephasing channel with `p = 1 - e^{-kappa_t}`.
//! Witness curves carry the detection sign `-Tr(W rho)` and may go
//! negative; measure curves clamp at zero. The threshold solvers bisect the
//! unclamped signed detectors, which cross zero cleanly.

use crate::channels::{apply_channel, p_of_time, three_qubit_dephasing};
use crate::error::{Error, Result};
use crate::linalg::DensityMatrix;
use crate::measures;
use crate::scalar::Real;
use crate::states::{noisy_mixture, Family};
use crate::witnesses::{self, WitnessLabel};

/// The curves tracked per family.
///
/// `N` is the negativity across the first-qubit bipartition, `N3` the
/// geometric mean over all three bipartitions, `Cab` the concurrence of the
/// embedded pair `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    WitnessG,
    WitnessW,
    N,
    N3,
    C12,
    C13,
    C23,
}

impl Quantity {
    pub const ALL: [Quantity; 7] = [
        Quantity::WitnessG,
        Quantity::WitnessW,
        Quantity::N,
        Quantity::N3,
        Quantity::C12,
        Quantity::C13,
        Quantity::C23,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::WitnessG => "witness_G",
            Quantity::WitnessW => "witness_W",
            Quantity::N => "N",
            Quantity::N3 => "N3",
            Quantity::C12 => "C12",
            Quantity::C13 => "C13",
            Quantity::C23 => "C23",
        }
    }
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Quantities a family's sweep emits. The W family carries no GHZ-class
/// witness, every other curve is shared.
pub fn supported_quantities(family: Family) -> &'static [Quantity] {
    match family {
        Family::Ghz | Family::Gb => &Quantity::ALL,
        Family::W => &[
            Quantity::WitnessW,
            Quantity::N,
            Quantity::N3,
            Quantity::C12,
            Quantity::C13,
            Quantity::C23,
        ],
    }
}

fn witness_for<T: Real>(family: Family, quantity: Quantity) -> Result<witnesses::Witness<T>> {
    match (family, quantity) {
        (Family::Ghz, Quantity::WitnessG) => witnesses::build(WitnessLabel::G, None),
        (Family::Ghz, Quantity::WitnessW) => witnesses::build(WitnessLabel::W2, None),
        (Family::W, Quantity::WitnessW) => witnesses::build(WitnessLabel::W1, None),
        (Family::W, Quantity::WitnessG) => Err(Error::UnsupportedQuantity {
            family: "w",
            quantity: "witness_G",
        }),
        (Family::Gb, Quantity::WitnessG) => {
            witnesses::build(WitnessLabel::Ggb, Some(witnesses::gb_angle()))
        }
        (Family::Gb, Quantity::WitnessW) => {
            witnesses::build(WitnessLabel::Wgb, Some(witnesses::gb_angle()))
        }
        _ => unreachable!("witness_for is only called with witness quantities"),
    }
}

/// The family mixture at weight `q` after dephasing time `kappa_t`.
pub fn evolve<T: Real>(family: Family, q: T, kappa_t: T) -> Result<DensityMatrix<T>> {
    let rho = noisy_mixture(&family.state(), q)?;
    let p = p_of_time(kappa_t)?;
    apply_channel(&rho, &three_qubit_dephasing(p, p, p)?)
}

fn value_from<T: Real>(
    family: Family,
    rho: &DensityMatrix<T>,
    quantity: Quantity,
) -> Result<T> {
    match quantity {
        Quantity::WitnessG | Quantity::WitnessW => {
            Ok(-witnesses::expectation(&witness_for(family, quantity)?, rho)?)
        }
        Quantity::N => measures::negativity(rho, 1),
        Quantity::N3 => measures::tri_negativity(rho),
        Quantity::C12 => measures::pair_concurrence(rho, 1, 2),
        Quantity::C13 => measures::pair_concurrence(rho, 1, 3),
        Quantity::C23 => measures::pair_concurrence(rho, 2, 3),
    }
}

/// Reported value of one curve at one point.
pub fn quantity_value<T: Real>(
    family: Family,
    q: T,
    kappa_t: T,
    quantity: Quantity,
) -> Result<T> {
    let rho = evolve(family, q, kappa_t)?;
    value_from(family, &rho, quantity)
}

/// Unclamped signed detector: positive exactly while the quantity is alive.
fn signed_value<T: Real>(family: Family, q: T, kappa_t: T, quantity: Quantity) -> Result<T> {
    let rho = evolve(family, q, kappa_t)?;
    match quantity {
        Quantity::WitnessG | Quantity::WitnessW => {
            Ok(-witnesses::expectation(&witness_for(family, quantity)?, &rho)?)
        }
        Quantity::N => measures::negativity_detector(&rho, 1),
        Quantity::N3 => {
            let mut worst = T::infinity();
            for qubit in 1..=3 {
                worst = worst.min(measures::negativity_detector(&rho, qubit)?);
            }
            Ok(worst)
        }
        Quantity::C12 => measures::pair_concurrence_lambda(&rho, 1, 2),
        Quantity::C13 => measures::pair_concurrence_lambda(&rho, 1, 3),
        Quantity::C23 => measures::pair_concurrence_lambda(&rho, 2, 3),
    }
}

/// One point of one curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample<T> {
    pub family: Family,
    pub q: T,
    pub kappa_t: T,
    pub quantity: Quantity,
    pub value: T,
}

/// Evaluates every supported quantity of the family over the grid, in
/// deterministic (q, kappa_t, quantity) order.
pub fn sweep<T: Real>(family: Family, qs: &[T], kappa_ts: &[T]) -> Result<Vec<CurveSample<T>>> {
    let quantities = supported_quantities(family);
    let mut out = Vec::with_capacity(qs.len() * kappa_ts.len() * quantities.len());
    for &q in qs {
        for &kappa_t in kappa_ts {
            let rho = evolve(family, q, kappa_t)?;
            for &quantity in quantities {
                out.push(CurveSample {
                    family,
                    q,
                    kappa_t,
                    quantity,
                    value: value_from(family, &rho, quantity)?,
                });
            }
        }
    }
    Ok(out)
}

/// Closed-form value of a curve point, when one exists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm<T> {
    /// Verified expression.
    Value(T),
    /// Expression reproduced as published but flagged; compare, don't trust.
    Unverified(T),
    /// No closed form available for this combination (or inputs out of
    /// domain).
    None,
}

fn max0<T: Real>(v: T) -> T {
    v.max(T::zero())
}

/// Closed-form curve value where one is on record.
///
/// Covered: the family's W-class witness, `N`, `N3` where it coincides with
/// `N`, and `C12`. The gb family's `N3` has no closed form and its `C12`
/// comes back flagged [`ClosedForm::Unverified`]. Everything else, and any
/// out-of-domain input, yields [`ClosedForm::None`].
pub fn closed_form<T: Real>(family: Family, quantity: Quantity, q: T, kappa_t: T) -> ClosedForm<T> {
    if !(q >= T::zero()) || q > T::one() || !(kappa_t >= T::zero()) {
        return ClosedForm::None;
    }
    let e1 = (-kappa_t).exp();
    let e32 = (T::of(-1.5) * kappa_t).exp();
    match (family, quantity) {
        (Family::Ghz, Quantity::WitnessW) => {
            ClosedForm::Value((q * (T::of(3.0) + T::of(4.0) * e32) - T::of(3.0)) / T::of(8.0))
        }
        (Family::Ghz, Quantity::N) | (Family::Ghz, Quantity::N3) => {
            ClosedForm::Value(max0((q + T::of(4.0) * q * e32 - T::one()) / T::of(8.0)))
        }
        (Family::Ghz, Quantity::C12) => ClosedForm::Value(T::zero()),
        (Family::W, Quantity::WitnessW) => {
            ClosedForm::Value((q * (T::of(5.0) + T::of(16.0) * e1) - T::of(13.0)) / T::of(24.0))
        }
        (Family::W, Quantity::N) | (Family::W, Quantity::N3) => {
            let root8 = T::of(8.0) * T::of(std::f64::consts::SQRT_2);
            ClosedForm::Value(max0(
                (q * (T::of(3.0) + root8 * e1) - T::of(3.0)) / T::of(24.0),
            ))
        }
        (Family::W, Quantity::C12) => {
            let inside = T::of(3.0) * (T::one() - q) * (q + T::of(3.0));
            ClosedForm::Value(max0(
                (T::of(4.0) * q * e1 - inside.sqrt()) / T::of(6.0),
            ))
        }
        (Family::Gb, Quantity::WitnessW) => {
            let theta = witnesses::gb_angle::<T>();
            let (ct, st) = (theta.cos(), theta.sin());
            let eh = (T::of(-0.5) * kappa_t).exp();
            let inner = T::of(9.0)
                + T::of(14.0) * ct
                + T::of(8.0) * st * e1
                + T::of(16.0) * e32 * (T::one() + ct)
                + T::of(8.0) * st * eh;
            ClosedForm::Value((q * inner - T::of(27.0)) / T::of(72.0))
        }
        (Family::Gb, Quantity::N) => {
            let root = (T::of(4.0) * (T::of(-3.0) * kappa_t).exp()
                + (T::of(-2.0) * kappa_t).exp())
            .sqrt();
            ClosedForm::Value(max0(
                (T::of(9.0) * (q - T::one()) + T::of(16.0) * q * root) / T::of(72.0),
            ))
        }
        (Family::Gb, Quantity::C12) => {
            // recorded as a pair of nested radicals; kept verbatim and flagged
            let e2 = (T::of(-2.0) * kappa_t).exp();
            let big_a = T::of(81.0)
                + q * q * (T::of(77.0) + T::of(64.0) * e2)
                + T::of(162.0) * q;
            let big_b = T::of(16.0)
                * q
                * e1
                * ((T::of(9.0) + T::of(7.0) * q) * (T::of(9.0) + T::of(11.0) * q)).sqrt();
            let cell = (q - T::one()) * T::of(0.5) - (big_a - big_b).sqrt() / T::of(36.0)
                + (big_a + big_b).sqrt() / T::of(36.0);
            ClosedForm::Unverified(max0(cell))
        }
        _ => ClosedForm::None,
    }
}

/// Outcome of a death-time search at fixed `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult<T> {
    pub family: Family,
    pub quantity: Quantity,
    pub q: T,
    /// Dimensionless death time, `None` while the quantity is still alive
    /// at the scan cap `kappa_t = 50`.
    pub kappa_t_star: Option<T>,
    /// Width of the final bisection bracket; zero when no bisection ran.
    pub bracket_width: T,
}

const SCAN_STEPS: usize = 1000;
const SCAN_CAP: f64 = 50.0;

/// Finds where the signed detector for the quantity crosses from positive
/// to negative as `kappa_t` grows.
///
/// Endpoints are classified inside a dead-band of `EQ_TOL` so that floating
/// point noise around zero cannot masquerade as a crossing: a detector
/// already inside the band at `kappa_t = 0` is dead on arrival (threshold
/// zero), and one that has not turned genuinely negative by the cap of
/// `kappa_t = 50` reports `None`, which also covers curves that only decay
/// to zero asymptotically. A genuine crossing is bracketed by a scan in
/// steps of 0.05 and bisected down to `BISECT_TOL`; more than one sign
/// change over the scan is refused as oscillating.
pub fn esd_threshold<T: Real>(
    family: Family,
    quantity: Quantity,
    q: T,
) -> Result<ThresholdResult<T>> {
    let band = T::EQ_TOL;
    let done = |kappa_t_star, bracket_width| {
        Ok(ThresholdResult {
            family,
            quantity,
            q,
            kappa_t_star,
            bracket_width,
        })
    };
    if signed_value(family, q, T::zero(), quantity)? <= band {
        return done(Some(T::zero()), T::zero());
    }
    if signed_value(family, q, T::of(SCAN_CAP), quantity)? >= -band {
        return done(None, T::zero());
    }
    let step = T::of(SCAN_CAP) / T::of(SCAN_STEPS as f64);
    let mut samples = Vec::with_capacity(SCAN_STEPS + 1);
    for i in 0..=SCAN_STEPS {
        samples.push(signed_value(family, q, T::of(i as f64) * step, quantity)?);
    }
    let alive = |v: T| v > T::zero();
    let mut changes = 0usize;
    let mut last_change = 0usize;
    for i in 0..SCAN_STEPS {
        if alive(samples[i]) != alive(samples[i + 1]) {
            changes += 1;
            last_change = i;
        }
    }
    if changes > 1 {
        return Err(Error::Oscillating {
            sign_changes: changes,
        });
    }
    let mut lo = T::of(last_change as f64) * step;
    let mut hi = T::of((last_change + 1) as f64) * step;
    while hi - lo > T::BISECT_TOL {
        let mid = (lo + hi) * T::of(0.5);
        if alive(signed_value(family, q, mid, quantity)?) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    done(Some((lo + hi) * T::of(0.5)), hi - lo)
}

/// Smallest mixing weight at which the quantity is alive at `kappa_t = 0`,
/// by bisection over `q`; `None` when even the pure state shows nothing.
pub fn q_threshold<T: Real>(family: Family, quantity: Quantity) -> Result<Option<T>> {
    let value_at = |q: T| signed_value(family, q, T::zero(), quantity);
    let mut lo = T::zero();
    let mut hi = T::one();
    if !(value_at(hi)? > T::zero()) {
        return Ok(None);
    }
    if value_at(lo)? > T::zero() {
        return Ok(Some(T::zero()));
    }
    while hi - lo > T::BISECT_TOL {
        let mid = (lo + hi) * T::of(0.5);
        if value_at(mid)? > T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some((lo + hi) * T::of(0.5)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn closed_value(family: Family, quantity: Quantity, q: f64, kt: f64) -> f64 {
        match closed_form(family, quantity, q, kt) {
            ClosedForm::Value(v) => v,
            other => panic!("expected a verified closed form, got {other:?}"),
        }
    }

    #[test]
    fn closed_form_spot_values_at_the_pure_origin() {
        assert_close(closed_value(Family::Ghz, Quantity::WitnessW, 1.0, 0.0), 0.5, 1e-15);
        assert_close(
            closed_value(Family::W, Quantity::WitnessW, 1.0, 0.0),
            1.0 / 3.0,
            1e-15,
        );
        assert_close(
            closed_value(Family::Gb, Quantity::WitnessW, 1.0, 0.0),
            4.0 / 9.0,
            1e-14,
        );
        assert_close(closed_value(Family::Ghz, Quantity::N, 1.0, 0.0), 0.5, 1e-15);
    }

    #[test]
    fn numeric_curves_match_their_closed_forms_at_spot_points() {
        let cases = [
            (Family::Ghz, Quantity::WitnessW),
            (Family::Ghz, Quantity::N),
            (Family::Ghz, Quantity::N3),
            (Family::Ghz, Quantity::C12),
            (Family::W, Quantity::WitnessW),
            (Family::W, Quantity::N),
            (Family::W, Quantity::C12),
            (Family::Gb, Quantity::WitnessW),
            (Family::Gb, Quantity::N),
        ];
        for (family, quantity) in cases {
            for (q, kt) in [(1.0, 0.0), (0.9, 0.4), (0.7, 1.3), (0.35, 2.2)] {
                let numeric = quantity_value(family, q, kt, quantity).unwrap();
                let closed = closed_value(family, quantity, q, kt);
                assert_close(numeric, closed, 1e-10);
            }
        }
    }

    #[test]
    fn gb_concurrence_cell_matches_numerics_despite_its_flag() {
        for (q, kt) in [(1.0, 0.0), (0.8, 0.5), (0.6, 0.1), (0.9, 2.0)] {
            let numeric = quantity_value(Family::Gb, q, kt, Quantity::C12).unwrap();
            match closed_form(Family::Gb, Quantity::C12, q, kt) {
                ClosedForm::Unverified(v) => assert_close(numeric, v, 1e-10),
                other => panic!("expected the flagged cell, got {other:?}"),
            }
        }
    }

    #[test]
    fn ghz_witness_and_negativity_coincide_on_the_pure_curve() {
        for kt in [0.0, 0.3, 0.7, 1.1] {
            let w = quantity_value(Family::Ghz, 1.0, kt, Quantity::WitnessW).unwrap();
            let n = quantity_value(Family::Ghz, 1.0, kt, Quantity::N).unwrap();
            assert_close(w, n, 1e-12);
            assert_close(w, 0.5 * (-1.5 * kt).exp(), 1e-12);
        }
    }

    #[test]
    fn sentinels_cover_the_unsupported_combinations() {
        assert_eq!(
            closed_form(Family::Gb, Quantity::N3, 0.9, 0.1),
            ClosedForm::None
        );
        assert_eq!(
            closed_form(Family::Ghz, Quantity::WitnessG, 1.0, 0.0),
            ClosedForm::None
        );
        assert_eq!(
            closed_form(Family::W, Quantity::C13, 1.0, 0.0),
            ClosedForm::None
        );
        assert_eq!(closed_form(Family::W, Quantity::N, 1.4, 0.0), ClosedForm::None);
        assert_eq!(closed_form(Family::W, Quantity::N, 0.4, -0.1), ClosedForm::None);
    }

    #[test]
    fn ghz_witness_dies_at_two_thirds_ln_two() {
        let r = esd_threshold(Family::Ghz, Quantity::WitnessG, 1.0).unwrap();
        let want = 2.0 / 3.0 * std::f64::consts::LN_2;
        assert_close(r.kappa_t_star.unwrap(), want, 1e-6);
        assert!(r.bracket_width <= 1e-8);
    }

    #[test]
    fn w_witness_dies_at_ln_two() {
        let r = esd_threshold(Family::W, Quantity::WitnessW, 1.0).unwrap();
        assert_close(r.kappa_t_star.unwrap(), std::f64::consts::LN_2, 1e-6);
    }

    #[test]
    fn w_pair_concurrence_death_matches_the_closed_root() {
        let q: f64 = 0.95;
        let r = esd_threshold(Family::W, Quantity::C12, q).unwrap();
        let want = (4.0 * q / (3.0 * (1.0 - q) * (q + 3.0)).sqrt()).ln();
        assert_close(r.kappa_t_star.unwrap(), want, 1e-6);
    }

    #[test]
    fn pure_ghz_negativity_never_dies() {
        let r = esd_threshold(Family::Ghz, Quantity::N, 1.0).unwrap();
        assert_eq!(r.kappa_t_star, None);
    }

    #[test]
    fn ghz_pair_concurrence_is_dead_on_arrival() {
        let r = esd_threshold(Family::Ghz, Quantity::C12, 1.0).unwrap();
        assert_eq!(r.kappa_t_star, Some(0.0));
        assert_eq!(r.bracket_width, 0.0);
    }

    #[test]
    fn q_thresholds_recover_the_exact_fractions() {
        let got = q_threshold(Family::Ghz, Quantity::WitnessG).unwrap().unwrap();
        assert_close(got, 5.0 / 7.0, 1e-6);
        let got = q_threshold(Family::Ghz, Quantity::N).unwrap().unwrap();
        assert_close(got, 0.2, 1e-6);
        let got = q_threshold(Family::W, Quantity::C12).unwrap().unwrap();
        assert_close(got, (-3.0 + 6.0 * 5f64.sqrt()) / 19.0, 1e-6);
    }

    #[test]
    fn ghz_pair_concurrence_has_no_weight_threshold() {
        assert_eq!(q_threshold::<f64>(Family::Ghz, Quantity::C12).unwrap(), None);
    }

    #[test]
    fn sweep_is_deterministic_and_ordered() {
        let qs = [0.5, 1.0];
        let kts = [0.0, 0.5];
        let a = sweep(Family::W, &qs, &kts).unwrap();
        let b = sweep(Family::W, &qs, &kts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2 * 2 * 6);
        assert_eq!(a[0].quantity, Quantity::WitnessW);
        assert_eq!(a[0].q, 0.5);
        assert_eq!(a[6].kappa_t, 0.5);
        let last = a.last().unwrap();
        assert_eq!(last.q, 1.0);
        assert_eq!(last.quantity, Quantity::C23);
    }

    #[test]
    fn evolve_validates_its_inputs() {
        assert!(evolve(Family::Ghz, 1.2, 0.0).is_err());
        assert!(evolve(Family::Ghz, 0.5, -1.0).is_err());
    }

    #[test]
    fn the_w_family_refuses_the_ghz_witness() {
        assert!(matches!(
            quantity_value(Family::W, 1.0, 0.0, Quantity::WitnessG),
            Err(Error::UnsupportedQuantity { .. })
        ));
    }
}
