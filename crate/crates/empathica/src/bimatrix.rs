//! Generic 2x2 two-player games and their exact equilibrium analysis.
//!
//! Payoffs are plain `f64` and all tie detection uses exact equality, so
//! games built from integer or small-rational payoffs are analyzed without
//! tolerance fuzz. Best responses are set-valued: ties are reported, never
//! silently broken.
//!
//! Orientation convention used everywhere in this crate: player 1 picks the
//! first action of a profile, player 2 the second, and `payoff(player, a1,
//! a2)` is that player's utility at profile `(a1, a2)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Mixed-profile indifference residuals are accepted up to this bound.
pub const MIXED_TOLERANCE: f64 = 1e-12;

/// One of the two actions available to each player.
///
/// `C` is cooperate/confess and `N` is defect/deny. The ordering `C < N` is
/// fixed so every set-valued result iterates deterministically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Action {
    C,
    N,
}

impl Action {
    /// Both actions in canonical order.
    pub const ALL: [Action; 2] = [Action::C, Action::N];

    pub fn index(self) -> usize {
        match self {
            Action::C => 0,
            Action::N => 1,
        }
    }

    pub fn other(self) -> Action {
        match self {
            Action::C => Action::N,
            Action::N => Action::C,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Action::C => 'C',
            Action::N => 'N',
        }
    }
}

impl std::fmt::Display for Action {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Player identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::One, Player::Two];

    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }

    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

#[derive(Debug, Error)]
pub enum GameError {
    #[error("payoff for player {player} at profile ({a1},{a2}) is not finite")]
    NonFinitePayoff { player: usize, a1: Action, a2: Action },
    #[error("malformed game JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// A 2x2 two-player game in normal form.
///
/// ```
/// use empathica::bimatrix::{Action, Game2x2, Player, pure_nash};
///
/// // The questionnaire game: confess dominates, (N,N) is the lone equilibrium.
/// let g = Game2x2::new((-6.0, -6.0), (-120.0, 0.0), (0.0, -120.0), (-72.0, -72.0)).unwrap();
/// assert_eq!(g.payoff(Player::One, Action::C, Action::N), -120.0);
/// assert_eq!(pure_nash(&g), vec![(Action::N, Action::N)]);
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct Game2x2 {
    /// `payoffs[a1][a2][player]`.
    payoffs: [[[f64; 2]; 2]; 2],
    labels: [String; 2],
}

impl Game2x2 {
    /// Build a game from the four payoff pairs `(u1, u2)`, ordered CC, CN,
    /// NC, NN, where the first letter is player 1's action.
    pub fn new(
        cc: (f64, f64),
        cn: (f64, f64),
        nc: (f64, f64),
        nn: (f64, f64),
    ) -> Result<Self, GameError> {
        let payoffs = [[[cc.0, cc.1], [cn.0, cn.1]], [[nc.0, nc.1], [nn.0, nn.1]]];
        for a1 in Action::ALL {
            for a2 in Action::ALL {
                for p in Player::BOTH {
                    let u = payoffs[a1.index()][a2.index()][p.index()];
                    if !u.is_finite() {
                        return Err(GameError::NonFinitePayoff {
                            player: p.index() + 1,
                            a1,
                            a2,
                        });
                    }
                }
            }
        }
        Ok(Game2x2 {
            payoffs,
            labels: ["C".to_string(), "N".to_string()],
        })
    }

    pub fn with_labels(mut self, first: &str, second: &str) -> Self {
        self.labels = [first.to_string(), second.to_string()];
        self
    }

    pub fn labels(&self) -> [&str; 2] {
        [&self.labels[0], &self.labels[1]]
    }

    pub fn payoff(&self, player: Player, a1: Action, a2: Action) -> f64 {
        self.payoffs[a1.index()][a2.index()][player.index()]
    }

    /// Both payoffs at a profile, as `(u1, u2)`.
    pub fn payoff_pair(&self, a1: Action, a2: Action) -> (f64, f64) {
        let cell = self.payoffs[a1.index()][a2.index()];
        (cell[0], cell[1])
    }

    /// The payoff a player receives at a profile where the player itself
    /// plays `own` and the opponent plays `opp`.
    pub fn own_payoff(&self, player: Player, own: Action, opp: Action) -> f64 {
        match player {
            Player::One => self.payoff(Player::One, own, opp),
            Player::Two => self.payoff(Player::Two, opp, own),
        }
    }

    /// For symmetric games, the quadruple each player faces; `None` when the
    /// game is asymmetric.
    pub fn symmetric_form(&self) -> Option<SymmetricForm> {
        let sym = Player::BOTH.iter().all(|&p| {
            Action::ALL.iter().all(|&own| {
                Action::ALL.iter().all(|&opp| {
                    self.own_payoff(p, own, opp) == self.own_payoff(p.other(), own, opp)
                })
            })
        });
        if !sym {
            return None;
        }
        Some(SymmetricForm {
            reward: self.payoff(Player::One, Action::C, Action::C),
            sucker: self.payoff(Player::One, Action::C, Action::N),
            temptation: self.payoff(Player::One, Action::N, Action::C),
            punishment: self.payoff(Player::One, Action::N, Action::N),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&GameJson::from(self)).expect("game serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, GameError> {
        let repr: GameJson = serde_json::from_str(s)?;
        repr.try_into()
    }
}

/// Payoff quadruple seen by either player of a symmetric game.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetricForm {
    pub reward: f64,
    pub sucker: f64,
    pub temptation: f64,
    pub punishment: f64,
}

impl SymmetricForm {
    /// Canonical dilemma ordering: temptation > reward > punishment > sucker.
    /// Defection then dominates while mutual cooperation beats mutual
    /// defection.
    pub fn is_dilemma(&self) -> bool {
        self.temptation > self.reward
            && self.reward > self.punishment
            && self.punishment > self.sucker
    }

    /// Stricter ordering requiring both mutual outcomes to beat both
    /// asymmetric ones: reward > punishment > sucker > temptation.
    pub fn mutual_outcomes_rank_highest(&self) -> bool {
        self.reward > self.punishment
            && self.punishment > self.sucker
            && self.sucker > self.temptation
    }
}

#[derive(Serialize, Deserialize)]
struct GameJson {
    labels: [String; 2],
    payoffs: PayoffsJson,
}

#[derive(Serialize, Deserialize)]
struct PayoffsJson {
    #[serde(rename = "CC")]
    cc: [f64; 2],
    #[serde(rename = "CN")]
    cn: [f64; 2],
    #[serde(rename = "NC")]
    nc: [f64; 2],
    #[serde(rename = "NN")]
    nn: [f64; 2],
}

impl From<&Game2x2> for GameJson {
    fn from(g: &Game2x2) -> Self {
        let cell = |a1: Action, a2: Action| {
            [
                g.payoff(Player::One, a1, a2),
                g.payoff(Player::Two, a1, a2),
            ]
        };
        GameJson {
            labels: [g.labels[0].clone(), g.labels[1].clone()],
            payoffs: PayoffsJson {
                cc: cell(Action::C, Action::C),
                cn: cell(Action::C, Action::N),
                nc: cell(Action::N, Action::C),
                nn: cell(Action::N, Action::N),
            },
        }
    }
}

impl TryFrom<GameJson> for Game2x2 {
    type Error = GameError;

    fn try_from(repr: GameJson) -> Result<Self, GameError> {
        let p = &repr.payoffs;
        let g = Game2x2::new(
            (p.cc[0], p.cc[1]),
            (p.cn[0], p.cn[1]),
            (p.nc[0], p.nc[1]),
            (p.nn[0], p.nn[1]),
        )?;
        Ok(g.with_labels(&repr.labels[0], &repr.labels[1]))
    }
}

impl Serialize for Game2x2 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GameJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Game2x2 {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = GameJson::deserialize(deserializer)?;
        repr.try_into().map_err(serde::de::Error::custom)
    }
}

/// Whether a dominant action beats the alternative strictly in both columns
/// or only weakly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strictness {
    Strict,
    Weak,
}

/// A dominant action for one player.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dominance {
    pub action: Action,
    pub strictness: Strictness,
}

/// A profile of cooperation probabilities, `p1` for player 1 and `p2` for
/// player 2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixedProfile {
    pub p1: f64,
    pub p2: f64,
}

impl MixedProfile {
    /// Strictly interior to the open unit square.
    pub fn is_interior(&self) -> bool {
        self.p1 > 0.0 && self.p1 < 1.0 && self.p2 > 0.0 && self.p2 < 1.0
    }

    /// Largest deviation from indifference across both players' pure
    /// actions, given the game. Zero (up to rounding) at a mixed equilibrium.
    pub fn indifference_residual(&self, g: &Game2x2) -> f64 {
        let ev1 = |a: Action| {
            self.p2 * g.payoff(Player::One, a, Action::C)
                + (1.0 - self.p2) * g.payoff(Player::One, a, Action::N)
        };
        let ev2 = |a: Action| {
            self.p1 * g.payoff(Player::Two, Action::C, a)
                + (1.0 - self.p1) * g.payoff(Player::Two, Action::N, a)
        };
        let r1 = (ev1(Action::C) - ev1(Action::N)).abs();
        let r2 = (ev2(Action::C) - ev2(Action::N)).abs();
        r1.max(r2)
    }
}

/// Result of the interior mixed-equilibrium solve.
///
/// `continuum` is set when some player is indifferent against every opponent
/// mixture (both payoff differences vanish); such equilibrium components are
/// flagged rather than enumerated, and `profiles` stays empty for them.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedEquilibria {
    pub profiles: Vec<MixedProfile>,
    pub continuum: bool,
}

/// Everything the solver knows about a game's equilibria.
#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumSet {
    /// Pure Nash profiles in the fixed order CC, CN, NC, NN.
    pub pure: Vec<(Action, Action)>,
    /// Strictly interior mixed equilibria (at most one for nondegenerate
    /// games).
    pub mixed: Vec<MixedProfile>,
    /// Per-player dominant action, if any.
    pub dominant: [Option<Dominance>; 2],
    /// True when a player is indifferent everywhere; see [`MixedEquilibria`].
    pub mixed_continuum: bool,
}

impl EquilibriumSet {
    pub fn pure_contains(&self, a1: Action, a2: Action) -> bool {
        self.pure.contains(&(a1, a2))
    }

    /// Deterministic compact rendering, e.g. `CC NN mixed(0.19,0.19)`.
    pub fn summary(&self, sig_digits: usize) -> String {
        let mut parts: Vec<String> = self
            .pure
            .iter()
            .map(|(a, b)| format!("{}{}", a, b))
            .collect();
        for m in &self.mixed {
            parts.push(format!(
                "mixed(p1={};p2={})",
                crate::stats::format_sig(m.p1, sig_digits),
                crate::stats::format_sig(m.p2, sig_digits)
            ));
        }
        if self.mixed_continuum {
            parts.push("mixed-continuum".to_string());
        }
        if parts.is_empty() {
            parts.push("none".to_string());
        }
        parts.join("+")
    }
}

/// All actions maximizing `player`'s payoff against a fixed opponent action.
/// Ties return both actions, `C` first.
pub fn best_response(g: &Game2x2, player: Player, opponent_action: Action) -> Vec<Action> {
    let uc = g.own_payoff(player, Action::C, opponent_action);
    let un = g.own_payoff(player, Action::N, opponent_action);
    if uc > un {
        vec![Action::C]
    } else if un > uc {
        vec![Action::N]
    } else {
        vec![Action::C, Action::N]
    }
}

/// Pure Nash equilibria: profiles where each action is a (weak) best
/// response to the other, in the fixed order CC, CN, NC, NN.
pub fn pure_nash(g: &Game2x2) -> Vec<(Action, Action)> {
    let mut out = Vec::new();
    for a1 in Action::ALL {
        for a2 in Action::ALL {
            if best_response(g, Player::One, a2).contains(&a1)
                && best_response(g, Player::Two, a1).contains(&a2)
            {
                out.push((a1, a2));
            }
        }
    }
    out
}

/// The action that is a best response against both opponent actions, if one
/// exists. Strict iff strictly better in both columns. When both actions
/// qualify (all payoffs tied), returns `C` flagged weak.
pub fn dominant_action(g: &Game2x2, player: Player) -> Option<Dominance> {
    for own in Action::ALL {
        let alt = own.other();
        let mut weak = true;
        let mut strict = true;
        for opp in Action::ALL {
            let u = g.own_payoff(player, own, opp);
            let v = g.own_payoff(player, alt, opp);
            weak &= u >= v;
            strict &= u > v;
        }
        if weak {
            return Some(Dominance {
                action: own,
                strictness: if strict {
                    Strictness::Strict
                } else {
                    Strictness::Weak
                },
            });
        }
    }
    None
}

/// Profiles not strictly Pareto-dominated: no other profile is weakly better
/// for both players and strictly better for at least one.
pub fn pareto_set(g: &Game2x2) -> Vec<(Action, Action)> {
    let profiles: Vec<(Action, Action)> = Action::ALL
        .iter()
        .flat_map(|&a1| Action::ALL.iter().map(move |&a2| (a1, a2)))
        .collect();
    let dominates = |p: (Action, Action), q: (Action, Action)| {
        let (pu1, pu2) = g.payoff_pair(p.0, p.1);
        let (qu1, qu2) = g.payoff_pair(q.0, q.1);
        pu1 >= qu1 && pu2 >= qu2 && (pu1 > qu1 || pu2 > qu2)
    };
    profiles
        .iter()
        .copied()
        .filter(|&q| !profiles.iter().any(|&p| dominates(p, q)))
        .collect()
}

/// Interior mixed equilibria via the two indifference equations.
///
/// Returns an empty profile list when the indifference point falls outside
/// the open unit square or when some player has a dominant action (no
/// interior pivot); fully degenerate players raise the `continuum` flag.
pub fn mixed_equilibria(g: &Game2x2) -> MixedEquilibria {
    // Payoff advantage of C over N for player 1, per opponent column, and
    // symmetrically for player 2.
    let d1c = g.payoff(Player::One, Action::C, Action::C) - g.payoff(Player::One, Action::N, Action::C);
    let d1n = g.payoff(Player::One, Action::C, Action::N) - g.payoff(Player::One, Action::N, Action::N);
    let d2c = g.payoff(Player::Two, Action::C, Action::C) - g.payoff(Player::Two, Action::C, Action::N);
    let d2n = g.payoff(Player::Two, Action::N, Action::C) - g.payoff(Player::Two, Action::N, Action::N);

    let continuum = (d1c == 0.0 && d1n == 0.0) || (d2c == 0.0 && d2n == 0.0);
    if continuum {
        return MixedEquilibria {
            profiles: Vec::new(),
            continuum,
        };
    }

    // Player 1 is indifferent at p2 = d1n / (d1n - d1c); interior only when
    // the two advantages have strictly opposite signs.
    let pivot = |dc: f64, dn: f64| -> Option<f64> {
        if (dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0) {
            Some(dn / (dn - dc))
        } else {
            None
        }
    };
    let profiles = match (pivot(d2c, d2n), pivot(d1c, d1n)) {
        (Some(p1), Some(p2)) => {
            let m = MixedProfile { p1, p2 };
            if m.is_interior() {
                vec![m]
            } else {
                Vec::new()
            }
        }
        _ => Vec::new(),
    };
    MixedEquilibria {
        profiles,
        continuum: false,
    }
}

/// Full equilibrium analysis of a game.
pub fn analyze(g: &Game2x2) -> EquilibriumSet {
    let mixed = mixed_equilibria(g);
    EquilibriumSet {
        pure: pure_nash(g),
        mixed: mixed.profiles,
        dominant: [
            dominant_action(g, Player::One),
            dominant_action(g, Player::Two),
        ],
        mixed_continuum: mixed.continuum,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn questionnaire_game() -> Game2x2 {
        Game2x2::new((-6.0, -6.0), (-120.0, 0.0), (0.0, -120.0), (-72.0, -72.0)).unwrap()
    }

    fn all_zero() -> Game2x2 {
        Game2x2::new((0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)).unwrap()
    }

    #[test]
    fn best_response_classical_vs_cooperator() {
        let g = questionnaire_game();
        // 0 > -6 for the defector against a cooperator.
        assert_eq!(best_response(&g, Player::One, Action::C), vec![Action::N]);
        assert_eq!(best_response(&g, Player::Two, Action::C), vec![Action::N]);
    }

    #[test]
    fn best_response_full_tie_returns_both() {
        let g = all_zero();
        for p in Player::BOTH {
            for a in Action::ALL {
                assert_eq!(best_response(&g, p, a), vec![Action::C, Action::N]);
            }
        }
    }

    #[test]
    fn best_response_under_strong_row_empathy() {
        // Row empathy 0.8: against a cooperator, cooperating yields
        // -6 - 6*0.8 = -10.8, defecting yields -120*0.8 = -96.
        let g = Game2x2::new(
            (-10.8, -6.0),
            (-120.0, 0.0),
            (-96.0, -120.0),
            (-129.6, -72.0),
        )
        .unwrap();
        assert_eq!(best_response(&g, Player::One, Action::C), vec![Action::C]);
    }

    #[test]
    fn pure_nash_classical_is_nn_only() {
        assert_eq!(pure_nash(&questionnaire_game()), vec![(Action::N, Action::N)]);
    }

    #[test]
    fn pure_nash_all_zero_is_every_profile() {
        assert_eq!(pure_nash(&all_zero()).len(), 4);
    }

    #[test]
    fn pure_nash_symmetric_medium_empathy() {
        // lambda12 = lambda21 = 0.5 on the questionnaire payoffs.
        let g = crate::empathy::empathize(
            &crate::empathy::BasePayoffs::default(),
            &crate::empathy::EmpathyPair::new(0.5, 0.5).unwrap(),
        );
        assert_eq!(
            pure_nash(&g),
            vec![(Action::C, Action::C), (Action::N, Action::N)]
        );
    }

    #[test]
    fn dominant_action_classical_is_strict_n() {
        let g = questionnaire_game();
        for p in Player::BOTH {
            assert_eq!(
                dominant_action(&g, p),
                Some(Dominance {
                    action: Action::N,
                    strictness: Strictness::Strict
                })
            );
        }
    }

    #[test]
    fn dominant_action_all_zero_is_weak_c() {
        assert_eq!(
            dominant_action(&all_zero(), Player::One),
            Some(Dominance {
                action: Action::C,
                strictness: Strictness::Weak
            })
        );
    }

    #[test]
    fn dominant_action_high_row_empathy_is_strict_c() {
        let g = crate::empathy::empathize(
            &crate::empathy::BasePayoffs::default(),
            &crate::empathy::EmpathyPair::new(0.7, 0.0).unwrap(),
        );
        assert_eq!(
            dominant_action(&g, Player::One),
            Some(Dominance {
                action: Action::C,
                strictness: Strictness::Strict
            })
        );
    }

    #[test]
    fn pareto_set_classical() {
        assert_eq!(
            pareto_set(&questionnaire_game()),
            vec![
                (Action::C, Action::C),
                (Action::C, Action::N),
                (Action::N, Action::C)
            ]
        );
    }

    #[test]
    fn pareto_set_all_zero_is_every_profile() {
        assert_eq!(pareto_set(&all_zero()).len(), 4);
    }

    #[test]
    fn pareto_set_single_dominating_profile() {
        let g = Game2x2::new((5.0, 5.0), (0.0, 0.0), (1.0, 1.0), (2.0, 2.0)).unwrap();
        assert_eq!(pareto_set(&g), vec![(Action::C, Action::C)]);
    }

    #[test]
    fn mixed_matching_pennies_is_half_half() {
        let g = Game2x2::new((1.0, -1.0), (-1.0, 1.0), (-1.0, 1.0), (1.0, -1.0)).unwrap();
        let m = mixed_equilibria(&g);
        assert!(!m.continuum);
        assert_eq!(m.profiles, vec![MixedProfile { p1: 0.5, p2: 0.5 }]);
    }

    #[test]
    fn mixed_classical_is_empty() {
        let m = mixed_equilibria(&questionnaire_game());
        assert!(m.profiles.is_empty());
        assert!(!m.continuum);
    }

    #[test]
    fn mixed_continuum_flagged_not_enumerated() {
        // Player 1 indifferent everywhere.
        let g = Game2x2::new((1.0, 3.0), (2.0, 0.0), (1.0, 4.0), (2.0, 1.0)).unwrap();
        let m = mixed_equilibria(&g);
        assert!(m.continuum);
        assert!(m.profiles.is_empty());
    }

    #[test]
    fn symmetric_form_orderings() {
        let g = questionnaire_game();
        let sym = g.symmetric_form().unwrap();
        assert_eq!(sym.temptation, 0.0);
        assert!(sym.is_dilemma());
        assert!(!sym.mutual_outcomes_rank_highest());
        let asym = Game2x2::new((1.0, 2.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)).unwrap();
        assert!(asym.symmetric_form().is_none());
    }

    #[test]
    fn json_round_trip() {
        let g = questionnaire_game();
        let s = g.to_json_string();
        assert!(s.contains("\"CC\""));
        let back = Game2x2::from_json_str(&s).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn json_rejects_non_finite() {
        let s = r#"{"labels":["C","N"],"payoffs":{"CC":[0,0],"CN":[0,0],"NC":[0,0],"NN":[1e999,0]}}"#;
        assert!(Game2x2::from_json_str(s).is_err());
    }
}
