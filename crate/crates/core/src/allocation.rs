//! Selectors, sharing functions, permutations, and the payoff maps they
//! induce: sharing value, selector value, marginal value, Shapley value,
//! selectope/Weber vertex generation, and the blocked-coalition collection
//! that governs which rationality constraints survive a selector projection.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::Value;

use crate::set_functions::{Coalition, SetFunction, PayoffVector};
use crate::{Error, Result, Scalar};

/// Picks one member out of every nonempty coalition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Selector {
    n: usize,
    // indexed by mask; entry 0 is unused
    choice: Vec<usize>,
}

impl Selector {
    /// The minimum-element selector.
    pub fn min_element(n: usize) -> Self {
        let choice = Coalition::all(n)
            .map(|c| c.min_member().unwrap_or(0))
            .collect();
        Selector { n, choice }
    }

    /// Builds from explicit choices; coalitions absent from `choices` default
    /// to their minimum element.
    pub fn from_choices(n: usize, choices: &BTreeMap<Coalition, usize>) -> Result<Self> {
        let mut sel = Selector::min_element(n);
        for (&c, &p) in choices {
            sel.set_choice(c, p)?;
        }
        Ok(sel)
    }

    pub fn set_choice(&mut self, c: Coalition, player: usize) -> Result<()> {
        if c.is_empty() || !c.is_subset_of(Coalition::full(self.n)) {
            return Err(Error::InvalidArgument(format!(
                "coalition {c} is not a nonempty subset of the {}-player set",
                self.n
            )));
        }
        if !c.contains(player) {
            return Err(Error::InvalidArgument(format!(
                "selector must choose a member: player {player} is not in {c}"
            )));
        }
        self.choice[c.mask() as usize] = player;
        Ok(())
    }

    pub fn player_count(&self) -> usize {
        self.n
    }

    /// The chosen member of a nonempty coalition.
    pub fn choose(&self, c: Coalition) -> usize {
        debug_assert!(!c.is_empty());
        self.choice[c.mask() as usize]
    }

    /// The equivalent 0/1 sharing function.
    pub fn to_sharing<T: Scalar>(&self) -> SharingFunction<T> {
        SharingFunction::from_fn(self.n, |c, i| {
            if self.choose(c) == i {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    /// Compact description such as `{1,2}->1 {1,3}->3 ...`, pairs and larger
    /// coalitions only (singleton choices are forced).
    pub fn describe(&self) -> String {
        let parts: Vec<String> = Coalition::nonempty(self.n)
            .filter(|c| c.len() >= 2)
            .map(|c| format!("{c}->{}", self.choose(c)))
            .collect();
        parts.join(" ")
    }
}

/// Weights `q(K, i)` distributing each coalition's Möbius coefficient among
/// its members: nonnegative, supported on members, summing to 1 per
/// nonempty coalition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SharingFunction<T> {
    n: usize,
    // weights[mask][player-1]
    weights: Vec<Vec<T>>,
}

impl<T: Scalar> SharingFunction<T> {
    /// Panics on weights violating the sharing invariants; use
    /// [`Self::try_from_fn`] for untrusted input.
    pub fn from_fn(n: usize, f: impl FnMut(Coalition, usize) -> T) -> Self {
        Self::try_from_fn(n, f).expect("invalid sharing weights")
    }

    pub fn try_from_fn(n: usize, mut f: impl FnMut(Coalition, usize) -> T) -> Result<Self> {
        let weights = Coalition::all(n)
            .map(|c| {
                (1..=n)
                    .map(|i| if c.contains(i) { f(c, i) } else { T::zero() })
                    .collect()
            })
            .collect();
        let sharing = SharingFunction { n, weights };
        sharing.validate()?;
        Ok(sharing)
    }

    /// The uniform sharing function `q(K, i) = 1/|K|`.
    pub fn uniform(n: usize) -> Self {
        SharingFunction::from_fn(n, |c, _| {
            T::one() / T::from_int(c.len() as i64)
        })
    }

    fn validate(&self) -> Result<()> {
        for c in Coalition::nonempty(self.n) {
            let mut total = T::zero();
            for i in 1..=self.n {
                let w = self.weight(c, i);
                if w.is_negative() {
                    return Err(Error::InvalidArgument(format!(
                        "negative weight q({c}, {i}) = {w}"
                    )));
                }
                if !c.contains(i) && !w.is_zero() {
                    return Err(Error::InvalidArgument(format!(
                        "nonzero weight q({c}, {i}) on a non-member"
                    )));
                }
                total += w.clone();
            }
            if !total.is_one() {
                return Err(Error::InvalidArgument(format!(
                    "weights of {c} sum to {total}, expected 1"
                )));
            }
        }
        Ok(())
    }

    pub fn player_count(&self) -> usize {
        self.n
    }

    pub fn weight(&self, c: Coalition, player: usize) -> &T {
        &self.weights[c.mask() as usize][player - 1]
    }

    /// True when every weight on a member coalition of size ≤ `max_size`
    /// is strictly positive.
    pub fn is_strictly_positive_up_to(&self, max_size: usize) -> bool {
        Coalition::nonempty(self.n)
            .filter(|c| c.len() <= max_size)
            .all(|c| c.members().all(|i| self.weight(c, i).is_positive()))
    }
}

/// A permutation of the players; `player_at_rank(i)` is the player of rank
/// `i`, ranks counted from 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Permutation {
    players: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            players: (1..=n).collect(),
        }
    }

    /// Builds from players listed in rank order, e.g. `[2, 3, 1]`.
    pub fn from_rank_order(players: Vec<usize>) -> Result<Self> {
        let n = players.len();
        let mut seen = vec![false; n + 1];
        for &p in &players {
            if p < 1 || p > n || seen[p] {
                return Err(Error::InvalidArgument(format!(
                    "not a permutation of 1..={n}: {players:?}"
                )));
            }
            seen[p] = true;
        }
        Ok(Permutation { players })
    }

    pub fn parse_list(text: &str) -> Result<Self> {
        let players = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad rank entry {s:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_rank_order(players)
    }

    pub fn player_count(&self) -> usize {
        self.players.len()
    }

    pub fn player_at_rank(&self, rank: usize) -> usize {
        self.players[rank - 1]
    }

    pub fn rank_of(&self, player: usize) -> usize {
        1 + self
            .players
            .iter()
            .position(|&p| p == player)
            .expect("player in permutation")
    }

    /// The coalition of the first `i` players in rank order.
    pub fn prefix(&self, i: usize) -> Coalition {
        Coalition::from_players(&self.players[..i])
    }

    /// The member of `c` with maximal rank.
    pub fn last_member(&self, c: Coalition) -> usize {
        debug_assert!(!c.is_empty());
        c.members().max_by_key(|&p| self.rank_of(p)).unwrap()
    }

    /// The selector picking the last member (in this order) of each coalition.
    pub fn last_member_selector(&self) -> Selector {
        let n = self.player_count();
        let mut sel = Selector::min_element(n);
        for c in Coalition::nonempty(n) {
            sel.set_choice(c, self.last_member(c)).expect("member");
        }
        sel
    }

    /// All permutations of `1..=n` in lexicographic rank-order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation {
                    players: current.clone(),
                });
                return;
            }
            for p in 1..=n {
                if !used[p] {
                    used[p] = true;
                    current.push(p);
                    rec(n, current, used, out);
                    current.pop();
                    used[p] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.players.iter().map(|p| p.to_string()).collect();
        parts.join(",")
    }
}

/// Sharing value `x_i = Σ_{S∋i} q(S, i)·m(S)` over the Möbius transform of
/// `v`. Distributes every coalition's dividend among its members, so the
/// total is exactly `v(N)`.
pub fn sharing_value<T: Scalar>(q: &SharingFunction<T>, v: &SetFunction<T>) -> PayoffVector<T> {
    sharing_value_of_mobius(q, &v.mobius_transform())
}

/// Same as [`sharing_value`] with the Möbius transform precomputed.
pub fn sharing_value_of_mobius<T: Scalar>(
    q: &SharingFunction<T>,
    mobius: &SetFunction<T>,
) -> PayoffVector<T> {
    let n = mobius.player_count();
    assert_eq!(q.player_count(), n);
    let mut x = vec![T::zero(); n];
    for (c, m) in mobius.iter() {
        if c.is_empty() || m.is_zero() {
            continue;
        }
        for i in c.members() {
            x[i - 1] += q.weight(c, i).clone() * m.clone();
        }
    }
    PayoffVector::new(x)
}

/// Selector value: each coalition's dividend goes entirely to the chosen
/// member.
pub fn selector_value<T: Scalar>(alpha: &Selector, v: &SetFunction<T>) -> PayoffVector<T> {
    selector_value_of_mobius(alpha, &v.mobius_transform())
}

pub fn selector_value_of_mobius<T: Scalar>(
    alpha: &Selector,
    mobius: &SetFunction<T>,
) -> PayoffVector<T> {
    let n = mobius.player_count();
    assert_eq!(alpha.player_count(), n);
    let mut x = vec![T::zero(); n];
    for (c, m) in mobius.iter() {
        if !c.is_empty() && !m.is_zero() {
            x[alpha.choose(c) - 1] += m.clone();
        }
    }
    PayoffVector::new(x)
}

/// Marginal value along `sigma`: the player of rank `i` receives
/// `v(S_i) − v(S_{i−1})` over the prefix chain. Coincides with the selector
/// value of the last-member selector.
pub fn marginal_value<T: Scalar>(sigma: &Permutation, v: &SetFunction<T>) -> PayoffVector<T> {
    let n = v.player_count();
    assert_eq!(sigma.player_count(), n);
    let mut x = vec![T::zero(); n];
    let mut prev = T::zero();
    for rank in 1..=n {
        let cur = v.value(sigma.prefix(rank)).clone();
        x[sigma.player_at_rank(rank) - 1] = cur.clone() - prev;
        prev = cur;
    }
    PayoffVector::new(x)
}

/// Shapley value, realized as the uniform sharing value: every coalition's
/// dividend is split evenly among its members.
pub fn shapley_value<T: Scalar>(v: &SetFunction<T>) -> PayoffVector<T> {
    sharing_value(&SharingFunction::uniform(v.player_count()), v)
}

/// Number of selectors on coalitions of size ≤ `max_size`, i.e. the product
/// of the coalition sizes. `None` on overflow.
pub fn selector_count(n: usize, max_size: usize) -> Option<u128> {
    let mut count: u128 = 1;
    for c in Coalition::nonempty(n) {
        if c.len() <= max_size {
            count = count.checked_mul(c.len() as u128)?;
        }
    }
    Some(count)
}

/// Streams every selector whose choices on coalitions of size ≤ `max_size`
/// vary; larger coalitions are fixed to their minimum element. Selectors are
/// produced in lexicographic order of their choice table.
///
/// Fails up front with a resource error when the count exceeds `budget`.
pub fn enumerate_selectors(
    n: usize,
    max_size: usize,
    budget: u128,
) -> Result<impl Iterator<Item = Selector>> {
    let count = selector_count(n, max_size).unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::Resource(format!(
            "selector enumeration needs {count} selectors, budget is {budget}"
        )));
    }
    let free: Vec<Coalition> = Coalition::nonempty(n)
        .filter(|c| c.len() >= 2 && c.len() <= max_size)
        .collect();
    let mut indices = vec![0usize; free.len()];
    let mut done = false;
    let base = Selector::min_element(n);
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mut sel = base.clone();
        for (c, &ix) in free.iter().zip(&indices) {
            let player = c.members().nth(ix).expect("index within coalition");
            sel.set_choice(*c, player).expect("member");
        }
        // odometer increment
        done = true;
        for (slot, c) in indices.iter_mut().zip(&free).rev() {
            let (ix, c) = (slot, *c);
            if *ix + 1 < c.len() {
                *ix += 1;
                done = false;
                break;
            }
            *ix = 0;
        }
        Some(sel)
    }))
}

/// The collection of proper nonempty coalitions whose rationality constraint
/// is dropped from the image of an order-k core under the selector value:
/// `S` is blocked when some coalition `K` with `2 ≤ |K| ≤ bound` reaches into
/// `S` from outside (`K ⊄ S`, `α(K) ∈ S`).
pub fn blocked_coalitions(alpha: &Selector, bound: usize) -> Result<BTreeSet<Coalition>> {
    let n = alpha.player_count();
    if bound < 2 || bound > n {
        return Err(Error::InvalidArgument(format!(
            "bound {bound} out of range 2..={n}"
        )));
    }
    let full = Coalition::full(n);
    let mut blocked = BTreeSet::new();
    for s in Coalition::nonempty(n) {
        if s == full {
            continue;
        }
        let hit = Coalition::nonempty(n).any(|k| {
            k.len() >= 2 && k.len() <= bound && !k.is_subset_of(s) && s.contains(alpha.choose(k))
        });
        if hit {
            blocked.insert(s);
        }
    }
    Ok(blocked)
}

/// A witness that a selector is not union-closed at order `k`: coalitions
/// `(K, K', K'')` with `α(K) = α(K') = i`, `K'' ⊆ K ∪ K'`, `i ∈ K''`,
/// `2 ≤ |K''| ≤ k`, but `α(K'') ≠ i`.
pub fn union_closure_violation(
    alpha: &Selector,
    k: usize,
) -> Result<Option<(Coalition, Coalition, Coalition)>> {
    let n = alpha.player_count();
    if k < 2 || k > n {
        return Err(Error::InvalidArgument(format!(
            "k = {k} out of range 2..={n}"
        )));
    }
    let mids: Vec<Coalition> = Coalition::nonempty(n)
        .filter(|c| c.len() >= 2 && c.len() <= k)
        .collect();
    for &a in &mids {
        for &b in &mids {
            let i = alpha.choose(a);
            if alpha.choose(b) != i {
                continue;
            }
            let hull = a.union(b);
            for &c in &mids {
                if c.is_subset_of(hull) && c.contains(i) && alpha.choose(c) != i {
                    return Ok(Some((a, b, c)));
                }
            }
        }
    }
    Ok(None)
}

/// Union-closure property required of selectors for monotone-core images at
/// order `k`: whenever two coalitions of size ≤ k share the same chosen
/// player, every sub-coalition of their union containing that player is also
/// assigned to it.
pub fn is_union_closed_selector(alpha: &Selector, k: usize) -> Result<bool> {
    Ok(union_closure_violation(alpha, k)?.is_none())
}

/// Deduplicated selector values over all selectors, sorted. The selectope is
/// their convex hull.
pub fn selectope_vertices<T: Scalar>(
    v: &SetFunction<T>,
    budget: u128,
) -> Result<Vec<PayoffVector<T>>> {
    let n = v.player_count();
    let mobius = v.mobius_transform();
    let mut points = BTreeSet::new();
    for sel in enumerate_selectors(n, n, budget)? {
        points.insert(selector_value_of_mobius(&sel, &mobius));
    }
    Ok(points.into_iter().collect())
}

/// Deduplicated marginal values over all permutations, sorted. The Weber set
/// is their convex hull.
pub fn weber_vertices<T: Scalar>(v: &SetFunction<T>) -> Vec<PayoffVector<T>> {
    let points: BTreeSet<PayoffVector<T>> = Permutation::all(v.player_count())
        .iter()
        .map(|sigma| marginal_value(sigma, v))
        .collect();
    points.into_iter().collect()
}

/// Parses a selector file: a JSON map from coalition keys to the chosen
/// player, e.g. `{"1,2": 1}`. Missing coalitions default to their minimum
/// element.
pub fn parse_selector(text: &str, n: usize) -> Result<Selector> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid selector document: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse("selector document must be a JSON object".into()))?;
    let mut choices = BTreeMap::new();
    for (key, raw) in obj {
        let c = Coalition::parse_key(key, n)?;
        let player = raw.as_u64().ok_or_else(|| {
            Error::Parse(format!("choice for key {key:?} must be a player index"))
        })? as usize;
        choices.insert(c, player);
    }
    Selector::from_choices(n, &choices)
}

/// Parses a sharing-function file: a JSON map from `"coalition|player"` keys
/// to rational strings, e.g. `{"1,2|1": "1/2", "1,2|2": "1/2"}`. Coalitions
/// with no entry at all default to the uniform split; a coalition with any
/// entry must list all of its members.
pub fn parse_sharing<T: Scalar>(text: &str, n: usize) -> Result<SharingFunction<T>> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid sharing document: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse("sharing document must be a JSON object".into()))?;
    let mut given: BTreeMap<Coalition, BTreeMap<usize, T>> = BTreeMap::new();
    for (key, raw) in obj {
        let (ckey, pkey) = key
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("key {key:?} must look like \"1,2|1\"")))?;
        let c = Coalition::parse_key(ckey, n)?;
        let player: usize = pkey
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad player index in key {key:?}")))?;
        if c.is_empty() || !c.contains(player) {
            return Err(Error::Parse(format!(
                "key {key:?}: player {player} is not a member of {c}"
            )));
        }
        let value = match raw {
            Value::String(s) => T::parse(s)?,
            Value::Number(num) => num
                .as_i64()
                .map(T::from_int)
                .ok_or_else(|| Error::Parse(format!("non-integer weight {num} for {key:?}")))?,
            other => {
                return Err(Error::Parse(format!(
                    "weight for {key:?} must be a string or integer, got {other}"
                )))
            }
        };
        given.entry(c).or_default().insert(player, value);
    }
    for (c, weights) in &given {
        for i in c.members() {
            if !weights.contains_key(&i) {
                return Err(Error::Parse(format!(
                    "coalition {c} lists some weights but omits player {i}"
                )));
            }
        }
    }
    SharingFunction::try_from_fn(n, |c, i| match given.get(&c) {
        Some(weights) => weights.get(&i).cloned().unwrap_or_else(T::zero),
        None => T::one() / T::from_int(c.len() as i64),
    })
}

/// Parses a permutation file: a JSON array of players in rank order.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid permutation document: {e}")))?;
    let arr = doc
        .as_array()
        .ok_or_else(|| Error::Parse("permutation document must be a JSON array".into()))?;
    let players = arr
        .iter()
        .map(|v| {
            v.as_u64()
                .map(|p| p as usize)
                .ok_or_else(|| Error::Parse(format!("bad rank entry {v}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::from_rank_order(players)
}
