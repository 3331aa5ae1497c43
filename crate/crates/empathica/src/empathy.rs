//! The other-regarding payoff transform and the equilibrium map of the
//! empathy plane.
//!
//! [`empathize`] turns a base game into one where each player maximizes
//! `own + lambda * other`. For the default questionnaire payoffs the
//! resulting equilibrium structure is governed by exactly two cutoffs on
//! each player's weight: below [`low_threshold`] (6/114) defection dominates
//! that player unconditionally, above [`high_threshold`] (2/3) cooperation
//! dominates, and strictly between the two the game has CC, NN, and one
//! interior mixed equilibrium whose cooperation probability is
//! [`mixed_prob`].
//!
//! [`classify_region`] evaluates those cutoffs in exact rational arithmetic
//! (every `f64` is converted losslessly), so a weight that sits exactly on a
//! threshold is detected as such and labeled [`RegionLabel::Boundary`]
//! rather than being pushed to one side by rounding.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::bimatrix::{self, Action, Dominance, EquilibriumSet, Game2x2, MixedProfile, Strictness};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float converts exactly")
}

/// Weight below which defection dominates a player unconditionally: 6/114.
pub fn low_threshold() -> BigRational {
    ratio(6, 114)
}

/// Weight above which cooperation dominates a player unconditionally: 2/3.
pub fn high_threshold() -> BigRational {
    ratio(2, 3)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmpathyError {
    #[error("empathy weights must be finite")]
    NonFinite,
    #[error("rational empathy weight has zero denominator")]
    ZeroDenominator,
}

/// The ordered pair of empathy weights: `lambda12` is the weight player 1
/// puts on player 2's payoff, `lambda21` the reverse.
///
/// Weights are held as exact rationals. [`EmpathyPair::new`] converts its
/// `f64` arguments losslessly; [`EmpathyPair::from_rationals`] admits values
/// like 2/3 that no float can represent, which is the only way to land
/// exactly on a region boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpathyPair {
    l12: BigRational,
    l21: BigRational,
}

impl EmpathyPair {
    pub fn new(lambda12: f64, lambda21: f64) -> Result<Self, EmpathyError> {
        if !lambda12.is_finite() || !lambda21.is_finite() {
            return Err(EmpathyError::NonFinite);
        }
        Ok(EmpathyPair {
            l12: exact(lambda12),
            l21: exact(lambda21),
        })
    }

    pub fn from_rationals(l12: (i64, i64), l21: (i64, i64)) -> Result<Self, EmpathyError> {
        if l12.1 == 0 || l21.1 == 0 {
            return Err(EmpathyError::ZeroDenominator);
        }
        Ok(EmpathyPair {
            l12: ratio(l12.0, l12.1),
            l21: ratio(l21.0, l21.1),
        })
    }

    pub fn from_exact(l12: BigRational, l21: BigRational) -> Self {
        EmpathyPair { l12, l21 }
    }

    pub fn lambda12(&self) -> f64 {
        self.l12.to_f64().unwrap_or(f64::NAN)
    }

    pub fn lambda21(&self) -> f64 {
        self.l21.to_f64().unwrap_or(f64::NAN)
    }

    pub fn lambda12_exact(&self) -> &BigRational {
        &self.l12
    }

    pub fn lambda21_exact(&self) -> &BigRational {
        &self.l21
    }

    /// The pair with the two players' roles exchanged.
    pub fn swapped(&self) -> EmpathyPair {
        EmpathyPair {
            l12: self.l21.clone(),
            l21: self.l12.clone(),
        }
    }

    /// Whether both weights sit in the plotted square `[-1, 1]^2`. Values
    /// outside are still processed; classifications carry a warning flag.
    pub fn in_plot_range(&self) -> bool {
        let one = BigRational::one();
        self.l12.abs() <= one && self.l21.abs() <= one
    }
}

/// The four base payoffs of the symmetric one-shot game, in utility units.
///
/// Defaults are the questionnaire values: mutual cooperation -6, cooperating
/// against a defector -120, defecting against a cooperator 0, mutual
/// defection -72.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BasePayoffs {
    pub cc: f64,
    pub sucker: f64,
    pub temptation: f64,
    pub nn: f64,
}

impl Default for BasePayoffs {
    fn default() -> Self {
        BasePayoffs {
            cc: -6.0,
            sucker: -120.0,
            temptation: 0.0,
            nn: -72.0,
        }
    }
}

impl BasePayoffs {
    /// The symmetric 2x2 game these payoffs describe.
    pub fn to_game(&self) -> Game2x2 {
        Game2x2::new(
            (self.cc, self.cc),
            (self.sucker, self.temptation),
            (self.temptation, self.sucker),
            (self.nn, self.nn),
        )
        .expect("finite base payoffs")
    }

    pub fn is_default(&self) -> bool {
        *self == BasePayoffs::default()
    }

    /// Canonical dilemma ordering: temptation > cc > nn > sucker. Holds for
    /// the defaults.
    pub fn is_dilemma(&self) -> bool {
        self.temptation > self.cc && self.cc > self.nn && self.nn > self.sucker
    }

    /// The stricter ordering cc > nn > sucker > temptation, under which both
    /// mutual outcomes beat both asymmetric ones. The defaults violate it
    /// (the temptation payoff 0 is the largest of the four). Checkable, not
    /// enforced.
    pub fn mutual_outcomes_rank_highest(&self) -> bool {
        self.cc > self.nn && self.nn > self.sucker && self.sucker > self.temptation
    }
}

/// Apply the empathy transform to a symmetric base game.
pub fn empathize(base: &BasePayoffs, e: &EmpathyPair) -> Game2x2 {
    empathize_game(&base.to_game(), e)
}

/// Apply the empathy transform to an arbitrary 2x2 game: each player's
/// payoff at every profile becomes `own + lambda_own * other`.
pub fn empathize_game(g: &Game2x2, e: &EmpathyPair) -> Game2x2 {
    let l12 = e.lambda12();
    let l21 = e.lambda21();
    let cell = |a1: Action, a2: Action| {
        let (u1, u2) = g.payoff_pair(a1, a2);
        (u1 + l12 * u2, u2 + l21 * u1)
    };
    Game2x2::new(
        cell(Action::C, Action::C),
        cell(Action::C, Action::N),
        cell(Action::N, Action::C),
        cell(Action::N, Action::N),
    )
    .expect("finite payoffs stay finite under finite weights")
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("weight -1 is a pole of the mixed cooperation probability")]
pub struct PoleError;

/// A mixed cooperation probability with its validity flag: the formula value
/// lies in `[0, 1]` exactly when the weight lies in `[6/114, 2/3]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixedProb {
    pub value: f64,
    pub in_unit_interval: bool,
}

/// The interior mixed cooperation probability `(8 - 12*lambda) / (7*(1 +
/// lambda))` determined by the opponent's indifference condition on the
/// default payoffs.
pub fn mixed_prob(lambda: f64) -> Result<MixedProb, PoleError> {
    if lambda == -1.0 {
        return Err(PoleError);
    }
    let value = (8.0 - 12.0 * lambda) / (7.0 * (1.0 + lambda));
    let p = mixed_prob_exact(&exact(lambda))?;
    let in_unit_interval = !p.is_negative() && p <= BigRational::one();
    Ok(MixedProb {
        value,
        in_unit_interval,
    })
}

/// Exact-rational form of [`mixed_prob`].
pub fn mixed_prob_exact(lambda: &BigRational) -> Result<BigRational, PoleError> {
    let minus_one = -BigRational::one();
    if *lambda == minus_one {
        return Err(PoleError);
    }
    let num = ratio(8, 1) - ratio(12, 1) * lambda;
    let den = ratio(7, 1) * (BigRational::one() + lambda);
    Ok(num / den)
}

/// Region tags for the partition of the empathy plane, named after the
/// qualitative weight levels of the two players (low is below 6/114, medium
/// between the thresholds, high above 2/3) and, off the nonnegative
/// quadrant, after the sign pattern.
///
/// Geometry notes: the box where both weights are below 6/114 shares its
/// equilibrium structure (NN unique) with the medium-low strip and carries
/// the `MediumLow` tag; the strips where exactly one weight exceeds 2/3 and
/// the other stays above 6/114 share CC-uniqueness with `HighHigh` and
/// carry that tag. `NegPosHighPosNearZeroNeg` covers the whole strip with
/// `lambda12 < 0` and `lambda21 > 2/3`, where NC is the unique equilibrium.
/// Points exactly on a partition line (a threshold or a sign axis) are
/// tagged `Boundary` with the touching open-region labels listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionLabel {
    MediumMedium,
    HighHigh,
    HighLow,
    LowHigh,
    MediumLow,
    LowMedium,
    BothNegative,
    PosNegHighPos,
    PosNegLowPos,
    NegPosHighPosNearZeroNeg,
    NegPosLowPos,
    Boundary,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 12] = [
        RegionLabel::MediumMedium,
        RegionLabel::HighHigh,
        RegionLabel::HighLow,
        RegionLabel::LowHigh,
        RegionLabel::MediumLow,
        RegionLabel::LowMedium,
        RegionLabel::BothNegative,
        RegionLabel::PosNegHighPos,
        RegionLabel::PosNegLowPos,
        RegionLabel::NegPosHighPosNearZeroNeg,
        RegionLabel::NegPosLowPos,
        RegionLabel::Boundary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::MediumMedium => "medium-medium",
            RegionLabel::HighHigh => "high-high",
            RegionLabel::HighLow => "high-low",
            RegionLabel::LowHigh => "low-high",
            RegionLabel::MediumLow => "medium-low",
            RegionLabel::LowMedium => "low-medium",
            RegionLabel::BothNegative => "both-negative",
            RegionLabel::PosNegHighPos => "pos-neg-high-pos",
            RegionLabel::PosNegLowPos => "pos-neg-low-pos",
            RegionLabel::NegPosHighPosNearZeroNeg => "neg-pos-high-pos-near-zero-neg",
            RegionLabel::NegPosLowPos => "neg-pos-low-pos",
            RegionLabel::Boundary => "boundary",
        }
    }

    /// Fill color used by the SVG renderer; the palette is fixed and
    /// documented in the README.
    pub fn color(self) -> &'static str {
        match self {
            RegionLabel::MediumMedium => "#ffd92f",
            RegionLabel::HighHigh => "#66c2a5",
            RegionLabel::HighLow => "#8da0cb",
            RegionLabel::LowHigh => "#e78ac3",
            RegionLabel::MediumLow => "#fc8d62",
            RegionLabel::LowMedium => "#fdbf6f",
            RegionLabel::BothNegative => "#b3b3b3",
            RegionLabel::PosNegHighPos => "#a6d854",
            RegionLabel::PosNegLowPos => "#e5c494",
            RegionLabel::NegPosHighPosNearZeroNeg => "#80b1d3",
            RegionLabel::NegPosLowPos => "#bebada",
            RegionLabel::Boundary => "#000000",
        }
    }
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Full classification of one point of the empathy plane.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionClassification {
    pub label: RegionLabel,
    /// For `Boundary` points, the distinct labels of the touching open
    /// regions; empty otherwise.
    pub adjacent: Vec<RegionLabel>,
    pub equilibria: EquilibriumSet,
    /// Set when a weight falls outside the plotted square `[-1, 1]^2`.
    pub outside_plot_range: bool,
    /// The two cutoffs the classification used, for display.
    pub thresholds: (f64, f64),
}

/// Open bands of one axis, cut at 0, 6/114, and 2/3, plus the three cut
/// points themselves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum AxisBand {
    Neg,
    AtZero,
    LowPos,
    AtLow,
    Medium,
    AtHigh,
    High,
}

impl AxisBand {
    fn of(lambda: &BigRational, low: &BigRational, high: &BigRational) -> AxisBand {
        if lambda.is_zero() {
            return AxisBand::AtZero;
        }
        if lambda.is_negative() {
            return AxisBand::Neg;
        }
        match lambda.cmp(low) {
            Ordering::Less => AxisBand::LowPos,
            Ordering::Equal => AxisBand::AtLow,
            Ordering::Greater => match lambda.cmp(high) {
                Ordering::Less => AxisBand::Medium,
                Ordering::Equal => AxisBand::AtHigh,
                Ordering::Greater => AxisBand::High,
            },
        }
    }

    fn is_cut(self) -> bool {
        matches!(self, AxisBand::AtZero | AxisBand::AtLow | AxisBand::AtHigh)
    }

    /// The open bands a cut point touches; an open band expands to itself.
    fn expand(self) -> &'static [AxisBand] {
        match self {
            AxisBand::AtZero => &[AxisBand::Neg, AxisBand::LowPos],
            AxisBand::AtLow => &[AxisBand::LowPos, AxisBand::Medium],
            AxisBand::AtHigh => &[AxisBand::Medium, AxisBand::High],
            AxisBand::Neg => &[AxisBand::Neg],
            AxisBand::LowPos => &[AxisBand::LowPos],
            AxisBand::Medium => &[AxisBand::Medium],
            AxisBand::High => &[AxisBand::High],
        }
    }
}

fn open_label(b1: AxisBand, b2: AxisBand) -> RegionLabel {
    use AxisBand::*;
    use RegionLabel::*;
    match (b1, b2) {
        (Neg, Neg) => BothNegative,
        (Neg, LowPos) | (Neg, Medium) => NegPosLowPos,
        (Neg, High) => NegPosHighPosNearZeroNeg,
        (LowPos, Neg) | (Medium, Neg) => PosNegLowPos,
        (High, Neg) => PosNegHighPos,
        (LowPos, LowPos) | (Medium, LowPos) => MediumLow,
        (LowPos, Medium) => LowMedium,
        (LowPos, High) => LowHigh,
        (Medium, Medium) => MediumMedium,
        (Medium, High) | (High, Medium) | (High, High) => HighHigh,
        (High, LowPos) => HighLow,
        _ => unreachable!("cut bands are expanded before labeling"),
    }
}

/// Sign of one player's cooperation advantage against each opponent action,
/// expressed through the two threshold comparisons.
#[derive(Clone, Copy)]
struct AxisSigns {
    /// sign(lambda - 6/114): C vs N against a cooperator.
    vs_c: Ordering,
    /// sign(lambda - 2/3): C vs N against a defector.
    vs_n: Ordering,
}

fn axis_signs(lambda: &BigRational, low: &BigRational, high: &BigRational) -> AxisSigns {
    AxisSigns {
        vs_c: lambda.cmp(low),
        vs_n: lambda.cmp(high),
    }
}

fn dominance_from_signs(s: AxisSigns) -> Option<Dominance> {
    if s.vs_c != Ordering::Less && s.vs_n != Ordering::Less {
        Some(Dominance {
            action: Action::C,
            strictness: if s.vs_c == Ordering::Greater && s.vs_n == Ordering::Greater {
                Strictness::Strict
            } else {
                Strictness::Weak
            },
        })
    } else if s.vs_c != Ordering::Greater && s.vs_n != Ordering::Greater {
        Some(Dominance {
            action: Action::N,
            strictness: if s.vs_c == Ordering::Less && s.vs_n == Ordering::Less {
                Strictness::Strict
            } else {
                Strictness::Weak
            },
        })
    } else {
        None
    }
}

fn closed_form_equilibria(e: &EmpathyPair, low: &BigRational, high: &BigRational) -> EquilibriumSet {
    let s1 = axis_signs(&e.l12, low, high);
    let s2 = axis_signs(&e.l21, low, high);

    let mut pure = Vec::new();
    if s1.vs_c != Ordering::Less && s2.vs_c != Ordering::Less {
        pure.push((Action::C, Action::C));
    }
    if s1.vs_n != Ordering::Less && s2.vs_c != Ordering::Greater {
        pure.push((Action::C, Action::N));
    }
    if s1.vs_c != Ordering::Greater && s2.vs_n != Ordering::Less {
        pure.push((Action::N, Action::C));
    }
    if s1.vs_n != Ordering::Greater && s2.vs_n != Ordering::Greater {
        pure.push((Action::N, Action::N));
    }

    // Interior mixed point exists only when both weights sit strictly
    // between the thresholds. Player 1's weight pins player 2's equalizing
    // probability and vice versa.
    let mut mixed = Vec::new();
    let interior = |s: AxisSigns| s.vs_c == Ordering::Greater && s.vs_n == Ordering::Less;
    if interior(s1) && interior(s2) {
        let p2 = mixed_prob_exact(&e.l12).expect("interior weight is not the pole");
        let p1 = mixed_prob_exact(&e.l21).expect("interior weight is not the pole");
        mixed.push(MixedProfile {
            p1: p1.to_f64().expect("unit-interval rational"),
            p2: p2.to_f64().expect("unit-interval rational"),
        });
    }

    EquilibriumSet {
        pure,
        mixed,
        dominant: [dominance_from_signs(s1), dominance_from_signs(s2)],
        mixed_continuum: false,
    }
}

fn classify_with_thresholds(
    e: &EmpathyPair,
    low: &BigRational,
    high: &BigRational,
    equilibria: EquilibriumSet,
) -> RegionClassification {
    let b1 = AxisBand::of(&e.l12, low, high);
    let b2 = AxisBand::of(&e.l21, low, high);
    let (label, adjacent) = if b1.is_cut() || b2.is_cut() {
        let mut touching: Vec<RegionLabel> = b1
            .expand()
            .iter()
            .flat_map(|&x1| b2.expand().iter().map(move |&x2| open_label(x1, x2)))
            .collect();
        touching.sort();
        touching.dedup();
        (RegionLabel::Boundary, touching)
    } else {
        (open_label(b1, b2), Vec::new())
    };
    RegionClassification {
        label,
        adjacent,
        equilibria,
        outside_plot_range: !e.in_plot_range(),
        thresholds: (
            low.to_f64().unwrap_or(f64::NAN),
            high.to_f64().unwrap_or(f64::NAN),
        ),
    }
}

/// Classify a point of the empathy plane for the default base payoffs.
///
/// The equilibrium set is evaluated in exact rational arithmetic against the
/// cutoffs 6/114 and 2/3, with weak (non-strict) best-response semantics, so
/// a point exactly on a cutoff reports the equilibria of both sides.
pub fn classify_region(e: &EmpathyPair) -> RegionClassification {
    let low = low_threshold();
    let high = high_threshold();
    let eq = closed_form_equilibria(e, &low, &high);
    classify_with_thresholds(e, &low, &high, eq)
}

#[derive(Debug, Error)]
pub enum RegionError {
    #[error(
        "region thresholds are undefined for these payoffs ({0}); \
         analyze the transformed game with bimatrix::analyze instead"
    )]
    DegenerateBase(String),
}

/// Thresholds recomputed from an arbitrary symmetric base via the generic
/// indifference inequalities: the low cutoff is
/// `(temptation - cc) / (cc - sucker)` and the high cutoff
/// `(nn - sucker) / (temptation - nn)`. Defined only when both denominators
/// are positive and the low cutoff stays below the high one.
pub fn recomputed_thresholds(base: &BasePayoffs) -> Result<(BigRational, BigRational), RegionError> {
    let r = exact(base.cc);
    let s = exact(base.sucker);
    let t = exact(base.temptation);
    let p = exact(base.nn);
    if r <= s {
        return Err(RegionError::DegenerateBase(
            "cc payoff does not exceed the sucker payoff".into(),
        ));
    }
    if t <= p {
        return Err(RegionError::DegenerateBase(
            "temptation payoff does not exceed the mutual-defection payoff".into(),
        ));
    }
    let low = (&t - &r) / (&r - &s);
    let high = (&p - &s) / (&t - &p);
    if !low.is_positive() || low >= high {
        return Err(RegionError::DegenerateBase(
            "recomputed thresholds must satisfy 0 < low < high for the region \
             geometry to apply"
                .into(),
        ));
    }
    Ok((low, high))
}

/// Classify a point for overridden base payoffs.
///
/// The default base takes the exact closed-form path. Any other base
/// delegates the equilibrium set to the generic bimatrix solver on the
/// transformed game and derives the label from symbolically recomputed
/// thresholds.
pub fn classify_region_with(
    base: &BasePayoffs,
    e: &EmpathyPair,
) -> Result<RegionClassification, RegionError> {
    if base.is_default() {
        return Ok(classify_region(e));
    }
    let (low, high) = recomputed_thresholds(base)?;
    let eq = bimatrix::analyze(&empathize(base, e));
    Ok(classify_with_thresholds(e, &low, &high, eq))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("invalid bounds: min must be strictly below max on each axis")]
    InvalidBounds,
    #[error("grid resolution must be at least 2 per axis")]
    InvalidResolution,
}

/// Axis-aligned rectangle in the empathy plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub min12: f64,
    pub max12: f64,
    pub min21: f64,
    pub max21: f64,
}

impl Rect {
    /// The square `[min, max]^2`.
    pub fn square(min: f64, max: f64) -> Rect {
        Rect {
            min12: min,
            max12: max,
            min21: min,
            max21: max,
        }
    }
}

/// One evaluated grid cell, carrying the cell-center coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GridCell {
    pub lambda12: f64,
    pub lambda21: f64,
    pub label: RegionLabel,
    pub equilibria: EquilibriumSet,
}

/// A row-major region map: cell `(ix, iy)` sits at index `iy * nx + ix`,
/// with `lambda12` increasing along a row and `lambda21` increasing across
/// rows.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionGrid {
    pub rect: Rect,
    pub nx: usize,
    pub ny: usize,
    pub cells: Vec<GridCell>,
}

/// Center of cell `i` of `n` cells spanning `[min, max]`, computed as a
/// single convex combination so symmetric bounds yield exact centers (the
/// middle cell of an odd grid over `[-1, 1]` lands exactly on 0).
fn cell_center(min: f64, max: f64, i: usize, n: usize) -> f64 {
    let w_hi = (2 * i + 1) as f64;
    let w_lo = (2 * (n - i) - 1) as f64;
    (w_lo * min + w_hi * max) / (2 * n) as f64
}

fn classify_cell(rect: &Rect, nx: usize, ny: usize, idx: usize) -> GridCell {
    let ix = idx % nx;
    let iy = idx / nx;
    let l12 = cell_center(rect.min12, rect.max12, ix, nx);
    let l21 = cell_center(rect.min21, rect.max21, iy, ny);
    let c = classify_region(&EmpathyPair::new(l12, l21).expect("finite center"));
    GridCell {
        lambda12: l12,
        lambda21: l21,
        label: c.label,
        equilibria: c.equilibria,
    }
}

fn grid_checked(rect: Rect, resolution: (usize, usize)) -> Result<(usize, usize), GridError> {
    let (nx, ny) = resolution;
    if !(rect.min12 < rect.max12 && rect.min21 < rect.max21) {
        return Err(GridError::InvalidBounds);
    }
    if nx < 2 || ny < 2 {
        return Err(GridError::InvalidResolution);
    }
    Ok((nx, ny))
}

/// Evaluate [`classify_region`] at every cell center, sequentially.
pub fn region_grid_sequential(rect: Rect, resolution: (usize, usize)) -> Result<RegionGrid, GridError> {
    let (nx, ny) = grid_checked(rect, resolution)?;
    let cells = (0..nx * ny).map(|i| classify_cell(&rect, nx, ny, i)).collect();
    Ok(RegionGrid { rect, nx, ny, cells })
}

/// Evaluate [`classify_region`] at every cell center across the rayon pool.
/// Output ordering is row-major regardless of evaluation order.
#[cfg(feature = "parallel")]
pub fn region_grid_parallel(rect: Rect, resolution: (usize, usize)) -> Result<RegionGrid, GridError> {
    let (nx, ny) = grid_checked(rect, resolution)?;
    let cells = (0..nx * ny)
        .into_par_iter()
        .map(|i| classify_cell(&rect, nx, ny, i))
        .collect();
    Ok(RegionGrid { rect, nx, ny, cells })
}

/// Evaluate the region map; parallel when the `parallel` feature is on.
pub fn region_grid(rect: Rect, resolution: (usize, usize)) -> Result<RegionGrid, GridError> {
    #[cfg(feature = "parallel")]
    {
        region_grid_parallel(rect, resolution)
    }
    #[cfg(not(feature = "parallel"))]
    {
        region_grid_sequential(rect, resolution)
    }
}

impl RegionGrid {
    pub fn cell(&self, ix: usize, iy: usize) -> &GridCell {
        &self.cells[iy * self.nx + ix]
    }

    /// CSV rendering with header `lambda12,lambda21,label,equilibria`.
    pub fn to_csv(&self, sig_digits: usize) -> String {
        let mut out = String::from("lambda12,lambda21,label,equilibria\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{}\n",
                crate::stats::format_sig(c.lambda12, sig_digits),
                crate::stats::format_sig(c.lambda21, sig_digits),
                c.label,
                c.equilibria.summary(sig_digits)
            ));
        }
        out
    }

    /// Deterministic SVG rendering of the map (identical across runs modulo
    /// the version comment line). `lambda12` increases rightward, `lambda21`
    /// upward; colors come from [`RegionLabel::color`].
    pub fn to_svg(&self) -> String {
        const PLOT: f64 = 720.0;
        const MARGIN: f64 = 50.0;
        const LEGEND_W: f64 = 250.0;
        let width = MARGIN * 2.0 + PLOT + LEGEND_W;
        let height = MARGIN * 2.0 + PLOT;

        let mut s = String::new();
        s.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
             viewBox=\"0 0 {width} {height}\">\n"
        ));
        s.push_str(&format!(
            "<!-- generated by empathica {} -->\n",
            env!("CARGO_PKG_VERSION")
        ));
        s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

        let cw = PLOT / self.nx as f64;
        let ch = PLOT / self.ny as f64;
        for iy in 0..self.ny {
            for ix in 0..self.nx {
                let cell = self.cell(ix, iy);
                let x = MARGIN + ix as f64 * cw;
                // lambda21 grows upward: row 0 sits at the bottom.
                let y = MARGIN + PLOT - (iy + 1) as f64 * ch;
                s.push_str(&format!(
                    "<rect x=\"{x:.3}\" y=\"{y:.3}\" width=\"{cw:.3}\" height=\"{ch:.3}\" \
                     fill=\"{}\"><title>({}, {}) {}</title></rect>\n",
                    cell.label.color(),
                    crate::stats::format_sig(cell.lambda12, 6),
                    crate::stats::format_sig(cell.lambda21, 6),
                    cell.label,
                ));
            }
        }

        s.push_str(&format!(
            "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{PLOT}\" height=\"{PLOT}\" \
             fill=\"none\" stroke=\"black\"/>\n"
        ));
        for (anchor, x, text) in [
            ("start", MARGIN, self.rect.min12),
            ("end", MARGIN + PLOT, self.rect.max12),
        ] {
            s.push_str(&format!(
                "<text x=\"{x}\" y=\"{}\" text-anchor=\"{anchor}\" font-size=\"12\">{}</text>\n",
                MARGIN + PLOT + 16.0,
                crate::stats::format_sig(text, 6)
            ));
        }
        for (y, text) in [(MARGIN + PLOT, self.rect.min21), (MARGIN + 10.0, self.rect.max21)] {
            s.push_str(&format!(
                "<text x=\"{}\" y=\"{y}\" text-anchor=\"end\" font-size=\"12\">{}</text>\n",
                MARGIN - 6.0,
                crate::stats::format_sig(text, 6)
            ));
        }
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\">lambda12</text>\n",
            MARGIN + PLOT / 2.0,
            MARGIN + PLOT + 34.0
        ));
        s.push_str(&format!(
            "<text x=\"16\" y=\"{}\" font-size=\"13\" transform=\"rotate(-90 16 {})\" \
             text-anchor=\"middle\">lambda21</text>\n",
            MARGIN + PLOT / 2.0,
            MARGIN + PLOT / 2.0
        ));

        let lx = MARGIN + PLOT + 20.0;
        for (i, label) in RegionLabel::ALL.iter().enumerate() {
            let ly = MARGIN + i as f64 * 24.0;
            s.push_str(&format!(
                "<rect x=\"{lx}\" y=\"{ly}\" width=\"16\" height=\"16\" fill=\"{}\" \
                 stroke=\"black\"/>\n<text x=\"{}\" y=\"{}\" font-size=\"12\">{label}</text>\n",
                label.color(),
                lx + 22.0,
                ly + 12.0,
            ));
        }

        s.push_str("</svg>\n");
        s
    }
}
