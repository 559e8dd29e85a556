//! The eight navigation operators and words over them.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// One of the eight operators that carry highest weight vectors to highest
/// weight vectors (equivalently, the eight classical differential operators).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NavOp {
    P0m,
    L,
    U,
    Xp,
    Ep,
    Em,
    Dp,
    Dm,
}

impl NavOp {
    pub const ALL: [NavOp; 8] = [
        NavOp::P0m,
        NavOp::L,
        NavOp::U,
        NavOp::Xp,
        NavOp::Ep,
        NavOp::Em,
        NavOp::Dp,
        NavOp::Dm,
    ];

    /// The raising four, whose words make up the structure-theorem monoid.
    pub const RAISING: [NavOp; 4] = [NavOp::Xp, NavOp::U, NavOp::Ep, NavOp::Dp];

    pub fn token(self) -> &'static str {
        match self {
            NavOp::P0m => "P0m",
            NavOp::L => "L",
            NavOp::U => "U",
            NavOp::Xp => "Xp",
            NavOp::Ep => "Ep",
            NavOp::Em => "Em",
            NavOp::Dp => "Dp",
            NavOp::Dm => "Dm",
        }
    }

    pub fn is_raising(self) -> bool {
        matches!(self, NavOp::Xp | NavOp::U | NavOp::Ep | NavOp::Dp)
    }

    /// Shift `(Δℓ, Δm, Δp)` on classical data of weight `(ℓ, m)` and degree `p`.
    pub fn shift(self) -> (i64, i64, i64) {
        match self {
            NavOp::P0m => (-2, 2, -1),
            NavOp::L => (0, -2, -1),
            NavOp::U => (2, -2, 1),
            NavOp::Xp => (0, 2, 1),
            NavOp::Ep => (1, 0, 1),
            NavOp::Em => (-1, 0, -1),
            NavOp::Dp => (2, 0, 2),
            NavOp::Dm => (-2, 0, -2),
        }
    }

    /// Shift of the `K`-weight `(x, y)` of a highest weight vector.
    pub fn weight_shift(self) -> (i64, i64) {
        let (dl, dm, _) = self.shift();
        (dl + dm, dl)
    }

    /// True for `U` and `L`, which are zero by convention when `m < 2`.
    pub fn needs_m_ge_2(self) -> bool {
        matches!(self, NavOp::U | NavOp::L)
    }
}

impl fmt::Display for NavOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for NavOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NavOp::ALL
            .iter()
            .copied()
            .find(|op| op.token() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown operator token {s:?}")))
    }
}

/// A word `X₁ X₂ … X_r`, stored left to right as written; it acts on a vector
/// or form right to left, so `X_r` is applied first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperatorWord(pub Vec<NavOp>);

impl OperatorWord {
    pub fn identity() -> Self {
        OperatorWord(Vec::new())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Builds `X₁^{e₁} X₂^{e₂} …` from `(op, exponent)` pairs, left to right.
    pub fn from_powers(powers: &[(NavOp, usize)]) -> Self {
        OperatorWord(
            powers
                .iter()
                .flat_map(|&(op, e)| std::iter::repeat_n(op, e))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Operators in application order (rightmost first).
    pub fn application_order(&self) -> impl Iterator<Item = NavOp> + '_ {
        self.0.iter().rev().copied()
    }

    /// Degree `v`: the total increase in nearly holomorphic degree.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|op| op.shift().2).sum()
    }

    /// Compact power notation, e.g. `Ep Xp^2 Dp`; `1` for the identity.
    pub fn pretty(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            let n = j - i;
            parts.push(if n == 1 {
                self.0[i].token().to_string()
            } else {
                format!("{}^{n}", self.0[i].token())
            });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<&str> = self.0.iter().map(|op| op.token()).collect();
        f.write_str(&toks.join(","))
    }
}

impl FromStr for OperatorWord {
    type Err = Error;

    /// Comma-separated tokens; the empty string is the identity word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(OperatorWord::identity());
        }
        s.split(',').map(str::parse).collect::<Result<_, _>>().map(OperatorWord)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w: OperatorWord = "P0m,U,Xp".parse().unwrap();
        assert_eq!(w.0, vec![NavOp::P0m, NavOp::U, NavOp::Xp]);
        assert_eq!(w.to_string(), "P0m,U,Xp");
        assert_eq!(w.application_order().next(), Some(NavOp::Xp));
        assert!("Xp,Q".parse::<OperatorWord>().is_err());
        assert!("".parse::<OperatorWord>().unwrap().is_identity());
    }

    #[test]
    fn degrees() {
        let w = OperatorWord::from_powers(&[(NavOp::Dp, 2), (NavOp::U, 3)]);
        assert_eq!(w.degree(), 7);
        assert_eq!(w.pretty(), "Dp^2 U^3");
    }

    #[test]
    fn weight_shifts_match_directions() {
        assert_eq!(NavOp::P0m.weight_shift(), (0, -2));
        assert_eq!(NavOp::L.weight_shift(), (-2, 0));
        assert_eq!(NavOp::U.weight_shift(), (0, 2));
        assert_eq!(NavOp::Xp.weight_shift(), (2, 0));
        assert_eq!(NavOp::Ep.weight_shift(), (1, 1));
        assert_eq!(NavOp::Em.weight_shift(), (-1, -1));
        assert_eq!(NavOp::Dp.weight_shift(), (2, 2));
        assert_eq!(NavOp::Dm.weight_shift(), (-2, -2));
    }
}
