//! Coalitions, set functions, Möbius/zeta transforms, and structural
//! predicates (k-additivity, monotonicity, additivity, supermodularity).
//!
//! Players are numbered `1..=n`. A [`Coalition`] is a bit-set over them, and a
//! [`SetFunction`] stores one scalar per coalition, indexed by bit mask. The
//! same structure holds both game values and Möbius coefficients; which space
//! an instance lives in is a matter of documentation, not representation.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value;

use crate::{Error, Result, Scalar};

/// Hard cap on the player count; everything here is dense over `2^n` masks.
pub const MAX_PLAYERS: usize = 20;

/// A subset of the player set `{1, …, n}`, encoded as a bit mask
/// (bit `i` set means player `i + 1` belongs).
///
/// Two coalitions are equal iff their member sets are equal; the player count
/// is context the coalition is used in, not part of its identity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Coalition(pub u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_PLAYERS);
        Coalition(((1u64 << n) - 1) as u32)
    }

    /// Coalition `{player}`; players are 1-based.
    pub fn singleton(player: usize) -> Self {
        assert!((1..=MAX_PLAYERS).contains(&player));
        Coalition(1 << (player - 1))
    }

    pub fn from_players(players: &[usize]) -> Self {
        players
            .iter()
            .fold(Coalition::EMPTY, |c, &p| c.union(Coalition::singleton(p)))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, player: usize) -> bool {
        (1..=MAX_PLAYERS).contains(&player) && self.0 & (1 << (player - 1)) != 0
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Coalition) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Coalition) -> Coalition {
        Coalition(self.0 & other.0)
    }

    pub fn minus(self, other: Coalition) -> Coalition {
        Coalition(self.0 & !other.0)
    }

    pub fn with(self, player: usize) -> Coalition {
        self.union(Coalition::singleton(player))
    }

    pub fn without(self, player: usize) -> Coalition {
        self.minus(Coalition::singleton(player))
    }

    /// Members in ascending order, 1-based.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i + 1)
            }
        })
    }

    pub fn min_member(self) -> Option<usize> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// All subsets of `self`, the empty coalition first, `self` last.
    pub fn subsets(self) -> impl Iterator<Item = Coalition> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Coalition(cur))
        })
    }

    /// All coalitions over `n` players in ascending mask order, `{}` included.
    pub fn all(n: usize) -> impl Iterator<Item = Coalition> {
        assert!(n <= MAX_PLAYERS);
        (0..(1u64 << n) as u32).map(Coalition)
    }

    /// Nonempty coalitions over `n` players in ascending mask order.
    pub fn nonempty(n: usize) -> impl Iterator<Item = Coalition> {
        Coalition::all(n).skip(1)
    }

    /// File key: comma-separated ascending player indices, e.g. `"1,3"`.
    /// The empty coalition has the empty key.
    pub fn key(self) -> String {
        let parts: Vec<String> = self.members().map(|p| p.to_string()).collect();
        parts.join(",")
    }

    /// Parses a file key; `n` bounds the admissible players.
    pub fn parse_key(key: &str, n: usize) -> Result<Coalition> {
        let key = key.trim();
        if key.is_empty() {
            return Ok(Coalition::EMPTY);
        }
        let mut c = Coalition::EMPTY;
        let mut last = 0usize;
        for part in key.split(',') {
            let p: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad player index {part:?} in key {key:?}")))?;
            if p < 1 || p > n {
                return Err(Error::Parse(format!(
                    "player {p} out of range 1..={n} in key {key:?}"
                )));
            }
            if p <= last {
                return Err(Error::Parse(format!(
                    "players must be strictly ascending in key {key:?}"
                )));
            }
            last = p;
            c = c.with(p);
        }
        Ok(c)
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

/// A total map from coalitions over `n` players to scalars, with value 0 on
/// the empty coalition. Holds either game values or Möbius coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetFunction<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Scalar> SetFunction<T> {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_PLAYERS).contains(&n), "player count out of range");
        SetFunction {
            n,
            values: vec![T::zero(); 1 << n],
        }
    }

    /// Builds from a closure; the value on the empty coalition is forced to 0.
    pub fn from_fn(n: usize, mut f: impl FnMut(Coalition) -> T) -> Self {
        let mut sf = SetFunction::zero(n);
        for c in Coalition::nonempty(n) {
            sf.values[c.mask() as usize] = f(c);
        }
        sf
    }

    pub fn player_count(&self) -> usize {
        self.n
    }

    pub fn grand_coalition(&self) -> Coalition {
        Coalition::full(self.n)
    }

    pub fn value(&self, c: Coalition) -> &T {
        &self.values[c.mask() as usize]
    }

    pub fn set(&mut self, c: Coalition, value: T) -> Result<()> {
        if !c.is_subset_of(self.grand_coalition()) {
            return Err(Error::InvalidArgument(format!(
                "coalition {c} exceeds the player set of size {}",
                self.n
            )));
        }
        if c.is_empty() && !value.is_zero() {
            return Err(Error::InvalidArgument(
                "the empty coalition must have value 0".into(),
            ));
        }
        self.values[c.mask() as usize] = value;
        Ok(())
    }

    /// `(coalition, value)` pairs in ascending mask order, empty included.
    pub fn iter(&self) -> impl Iterator<Item = (Coalition, &T)> {
        self.values
            .iter()
            .enumerate()
            .map(|(m, v)| (Coalition(m as u32), v))
    }

    /// Möbius transform, computed by the in-place subset-sum scheme in
    /// `O(n·2^n)` exact operations.
    pub fn mobius_transform(&self) -> SetFunction<T> {
        let mut vals = self.values.clone();
        for b in 0..self.n {
            let bit = 1usize << b;
            for mask in 0..vals.len() {
                if mask & bit != 0 {
                    let lower = vals[mask ^ bit].clone();
                    vals[mask] -= lower;
                }
            }
        }
        SetFunction {
            n: self.n,
            values: vals,
        }
    }

    /// Zeta transform (inverse of [`Self::mobius_transform`]):
    /// `v(S) = Σ_{T ⊆ S} m(T)`.
    pub fn zeta_transform(&self) -> SetFunction<T> {
        let mut vals = self.values.clone();
        for b in 0..self.n {
            let bit = 1usize << b;
            for mask in 0..vals.len() {
                if mask & bit != 0 {
                    let lower = vals[mask ^ bit].clone();
                    vals[mask] += lower;
                }
            }
        }
        SetFunction {
            n: self.n,
            values: vals,
        }
    }

    /// At-most-k-additivity of a Möbius-space function: all coefficients on
    /// coalitions of more than `k` players vanish. With `exactly` set, some
    /// coalition of exactly `k` players must carry a nonzero coefficient.
    pub fn is_k_additive(&self, k: usize, exactly: bool) -> Result<bool> {
        if k < 1 || k > self.n {
            return Err(Error::InvalidArgument(format!(
                "k = {k} out of range 1..={}",
                self.n
            )));
        }
        let at_most = self
            .iter()
            .all(|(c, m)| c.len() <= k || m.is_zero());
        if !at_most {
            return Ok(false);
        }
        if exactly {
            return Ok(self.iter().any(|(c, m)| c.len() == k && !m.is_zero()));
        }
        Ok(true)
    }

    /// `v(S) ≤ v(S ∪ {i})` for every `S` and `i ∉ S`; equivalent to full
    /// monotonicity by transitivity.
    pub fn is_monotone(&self) -> bool {
        for c in Coalition::all(self.n) {
            for i in 1..=self.n {
                if !c.contains(i) && self.value(c) > self.value(c.with(i)) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff the Möbius transform vanishes on all coalitions of size ≥ 2.
    pub fn is_additive(&self) -> bool {
        self.mobius_transform()
            .iter()
            .all(|(c, m)| c.len() < 2 || m.is_zero())
    }

    /// Supermodularity (convexity): `v(S∪{i,j}) − v(S∪{i}) ≥ v(S∪{j}) − v(S)`
    /// for all `S` and `i ≠ j` outside `S`.
    pub fn is_supermodular(&self) -> bool {
        for c in Coalition::all(self.n) {
            for i in 1..=self.n {
                if c.contains(i) {
                    continue;
                }
                for j in i + 1..=self.n {
                    if c.contains(j) {
                        continue;
                    }
                    let lhs = self.value(c.with(i).with(j)).clone() - self.value(c.with(i)).clone();
                    let rhs = self.value(c.with(j)).clone() - self.value(c).clone();
                    if lhs < rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// One exact payoff per player.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PayoffVector<T> {
    values: Vec<T>,
}

impl<T: Scalar> PayoffVector<T> {
    pub fn new(values: Vec<T>) -> Self {
        assert!(!values.is_empty());
        PayoffVector { values }
    }

    pub fn player_count(&self) -> usize {
        self.values.len()
    }

    /// Payoff of one player, 1-based.
    pub fn payoff(&self, player: usize) -> &T {
        &self.values[player - 1]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<T> {
        self.values
    }

    /// The shorthand `x(S) = Σ_{i∈S} x_i`.
    pub fn coalition_sum(&self, c: Coalition) -> T {
        let mut acc = T::zero();
        for p in c.members() {
            acc += self.values[p - 1].clone();
        }
        acc
    }

    pub fn total(&self) -> T {
        self.coalition_sum(Coalition::full(self.values.len()))
    }
}

impl<T: fmt::Display> fmt::Display for PayoffVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Parses the game file format: a JSON document with an integer field `"n"`
/// and a map `"v"` from coalition keys (`"1,3"`) to rational strings or
/// integers. Missing coalitions default to 0; the empty key must be absent
/// or hold 0.
pub fn parse_game<T: Scalar>(text: &str) -> Result<SetFunction<T>> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid game document: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse("game document must be a JSON object".into()))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("missing or non-integer field \"n\"".into()))? as usize;
    if !(1..=MAX_PLAYERS).contains(&n) {
        return Err(Error::Parse(format!(
            "player count {n} out of range 1..={MAX_PLAYERS}"
        )));
    }
    let mut sf = SetFunction::zero(n);
    let Some(map) = obj.get("v") else {
        return Ok(sf);
    };
    let map = map
        .as_object()
        .ok_or_else(|| Error::Parse("field \"v\" must be an object".into()))?;
    for (key, raw) in map {
        let c = Coalition::parse_key(key, n)?;
        let value = scalar_from_json::<T>(raw)
            .map_err(|e| Error::Parse(format!("value for key {key:?}: {e}")))?;
        if c.is_empty() {
            if !value.is_zero() {
                return Err(Error::Parse(
                    "the empty coalition key must be absent or map to 0".into(),
                ));
            }
            continue;
        }
        sf.set(c, value)?;
    }
    Ok(sf)
}

fn scalar_from_json<T: Scalar>(raw: &Value) -> Result<T> {
    match raw {
        Value::String(s) => T::parse(s),
        Value::Number(num) => num
            .as_i64()
            .map(T::from_int)
            .ok_or_else(|| Error::Parse(format!("non-integer number {num}; use a \"p/q\" string"))),
        other => Err(Error::Parse(format!("expected string or integer, got {other}"))),
    }
}

/// Serializes in the game file format. Zero values are omitted, so the output
/// parses back to the same set function.
pub fn game_to_json<T: Scalar>(sf: &SetFunction<T>) -> String {
    let mut map = BTreeMap::new();
    for (c, v) in sf.iter() {
        if !c.is_empty() && !v.is_zero() {
            map.insert(c.key(), v.to_string());
        }
    }
    let doc = serde_json::json!({ "n": sf.player_count(), "v": map });
    serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games;
    use crate::Rat;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    /// Direct double-sum Möbius: `m(S) = Σ_{T⊆S} (−1)^{|S∖T|} v(T)`.
    /// Independent oracle for the subset-sum implementation.
    fn mobius_by_double_sum(v: &SetFunction<Rat>) -> SetFunction<Rat> {
        SetFunction::from_fn(v.player_count(), |s| {
            let mut acc = Rat::zero();
            for t in s.subsets() {
                let term = v.value(t).clone();
                if (s.len() - t.len()) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
    }

    /// Direct double-sum zeta: `v(S) = Σ_{T⊆S} m(T)`.
    fn zeta_by_double_sum(m: &SetFunction<Rat>) -> SetFunction<Rat> {
        SetFunction::from_fn(m.player_count(), |s| {
            let mut acc = Rat::zero();
            for t in s.subsets() {
                acc += m.value(t).clone();
            }
            acc
        })
    }

    #[test]
    fn coalition_basics() {
        let c = Coalition::from_players(&[1, 3]);
        assert_eq!(c.len(), 2);
        assert!(c.contains(1) && !c.contains(2) && c.contains(3));
        assert_eq!(c.key(), "1,3");
        assert_eq!(c.to_string(), "{1,3}");
        assert_eq!(Coalition::parse_key("1,3", 3).unwrap(), c);
        assert_eq!(Coalition::parse_key("", 3).unwrap(), Coalition::EMPTY);
        assert!(Coalition::parse_key("3,1", 3).is_err());
        assert!(Coalition::parse_key("4", 3).is_err());
        let subs: Vec<_> = c.subsets().collect();
        assert_eq!(subs.len(), 4);
        assert_eq!(subs[0], Coalition::EMPTY);
        assert_eq!(*subs.last().unwrap(), c);
    }

    #[test]
    fn mobius_of_cardinality_game_is_singleton_indicator() {
        // additive v(S) = |S| has unit dividends on singletons only
        let v = SetFunction::from_fn(3, |c| Rat::from_int(c.len() as i64));
        let m = v.mobius_transform();
        for (c, val) in m.iter() {
            if c.len() == 1 {
                assert!(val.is_one());
            } else {
                assert!(val.is_zero());
            }
        }
    }

    #[test]
    fn mobius_of_unanimity_game_is_indicator() {
        let t = Coalition::from_players(&[1, 2]);
        let v = games::unanimity_game::<Rat>(3, t);
        let m = v.mobius_transform();
        for (c, val) in m.iter() {
            assert_eq!(!val.is_zero(), c == t);
        }
    }

    #[test]
    fn zeta_of_pair_indicator_is_unanimity() {
        let t = Coalition::from_players(&[1, 2]);
        let mut m = SetFunction::<Rat>::zero(3);
        m.set(t, Rat::one()).unwrap();
        assert_eq!(m.zeta_transform(), games::unanimity_game::<Rat>(3, t));
    }

    #[test]
    fn zeta_of_zero_is_zero() {
        let m = SetFunction::<Rat>::zero(3);
        assert_eq!(m.zeta_transform(), m);
    }

    #[test]
    fn round_trip_on_seeded_random_games() {
        // n = 5 instance, checked against the double-sum oracle as well
        let v = games::random_game::<Rat>(5, 77, games::GameClass::General);
        let m = v.mobius_transform();
        assert_eq!(m, mobius_by_double_sum(&v));
        assert_eq!(m.zeta_transform(), v);
        assert_eq!(zeta_by_double_sum(&m), v);
        for seed in 0..100 {
            let n = 1 + (seed as usize % 6);
            let v = games::random_game::<Rat>(n, seed, games::GameClass::General);
            assert_eq!(v.mobius_transform().zeta_transform(), v);
        }
    }

    #[test]
    fn k_additivity_checks() {
        let additive = SetFunction::from_fn(3, |c| Rat::from_int(c.len() as i64));
        let m = additive.mobius_transform();
        assert!(m.is_k_additive(1, false).unwrap());
        assert!(m.is_k_additive(1, true).unwrap());
        assert!(m.is_k_additive(2, false).unwrap());
        assert!(!m.is_k_additive(2, true).unwrap());

        let u123 = games::unanimity_game::<Rat>(3, Coalition::full(3));
        let m = u123.mobius_transform();
        assert!(!m.is_k_additive(2, false).unwrap());

        // m(i) = 2/3, m(ij) = -1/3: at most and exactly 2-additive
        let m = SetFunction::from_fn(3, |c| match c.len() {
            1 => r(2, 3),
            2 => r(-1, 3),
            _ => Rat::zero(),
        });
        assert!(m.is_k_additive(2, false).unwrap());
        assert!(m.is_k_additive(2, true).unwrap());
        assert!(m.is_k_additive(0, false).is_err());
        assert!(m.is_k_additive(4, false).is_err());
    }

    #[test]
    fn monotonicity_checks() {
        let t = Coalition::from_players(&[1, 2]);
        assert!(games::unanimity_game::<Rat>(3, t).is_monotone());
        assert!(games::pair_game::<Rat>().is_monotone());

        let mut v = SetFunction::<Rat>::zero(2);
        v.set(Coalition::singleton(1), Rat::one()).unwrap();
        // v({1,2}) = 0 < v({1}) = 1
        assert!(!v.is_monotone());
    }

    #[test]
    fn additivity_checks() {
        let v = SetFunction::from_fn(3, |c| Rat::from_int(c.len() as i64));
        assert!(v.is_additive());
        let u12 = games::unanimity_game::<Rat>(3, Coalition::from_players(&[1, 2]));
        assert!(!u12.is_additive());
    }

    #[test]
    fn game_file_round_trip_and_diagnostics() {
        let text = r#"{ "n": 3, "v": { "1,2": "1", "1,2,3": "3/2", "2": 2 } }"#;
        let v: SetFunction<Rat> = parse_game(text).unwrap();
        assert_eq!(*v.value(Coalition::from_players(&[1, 2])), Rat::one());
        assert_eq!(*v.value(Coalition::full(3)), r(3, 2));
        assert_eq!(*v.value(Coalition::singleton(2)), Rat::from_int(2));
        assert_eq!(*v.value(Coalition::singleton(1)), Rat::zero());

        let back: SetFunction<Rat> = parse_game(&game_to_json(&v)).unwrap();
        assert_eq!(back, v);

        assert!(parse_game::<Rat>(r#"{ "n": 3, "v": { "": "1" } }"#).is_err());
        assert!(parse_game::<Rat>(r#"{ "n": 3, "v": { "": 0 } }"#).is_ok());
        assert!(parse_game::<Rat>(r#"{ "n": 3, "v": { "5": "1" } }"#).is_err());
        assert!(parse_game::<Rat>(r#"{ "n": 3, "v": { "1": 0.5 } }"#).is_err());
        assert!(parse_game::<Rat>(r#"{ "v": {} }"#).is_err());
    }

    proptest! {
        #[test]
        fn prop_mobius_zeta_round_trip(seed in 0u64..500, n in 1usize..=5) {
            let v = games::random_game::<Rat>(n, seed, games::GameClass::General);
            let m = v.mobius_transform();
            prop_assert_eq!(m.zeta_transform(), v.clone());
            prop_assert_eq!(v.zeta_transform().mobius_transform(), v);
        }

        #[test]
        fn prop_mobius_is_linear(sa in -4i64..=4, sb in -4i64..=4, seed in 0u64..100) {
            let a = games::random_game::<Rat>(4, seed, games::GameClass::General);
            let b = games::random_game::<Rat>(4, seed + 1000, games::GameClass::General);
            let combo = SetFunction::from_fn(4, |c| {
                Rat::from_int(sa) * a.value(c).clone() + Rat::from_int(sb) * b.value(c).clone()
            });
            let expect = SetFunction::from_fn(4, |c| {
                Rat::from_int(sa) * a.mobius_transform().value(c).clone()
                    + Rat::from_int(sb) * b.mobius_transform().value(c).clone()
            });
            prop_assert_eq!(combo.mobius_transform(), expect);
        }

        #[test]
        fn prop_additive_iff_one_additive(seed in 0u64..100) {
            // zeta of a random m supported on singletons is additive
            let singles = games::random_game::<Rat>(4, seed, games::GameClass::General);
            let m = SetFunction::from_fn(4, |c| {
                if c.len() == 1 { singles.value(c).clone() } else { Rat::zero() }
            });
            let v = m.zeta_transform();
            prop_assert!(v.is_additive());
            prop_assert!(v.mobius_transform().is_k_additive(1, false).unwrap());
        }
    }
}
