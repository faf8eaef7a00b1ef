//! Named desk-scale games and seeded random game generation.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::set_functions::{Coalition, SetFunction};
use crate::Scalar;

/// Additive game with weights `w_i = i`: `v(S) = Σ_{i∈S} i`.
pub fn additive_game<T: Scalar>(n: usize) -> SetFunction<T> {
    SetFunction::from_fn(n, |c| {
        let mut acc = T::zero();
        for p in c.members() {
            acc += T::from_int(p as i64);
        }
        acc
    })
}

/// Unanimity game `u_T`: worth 1 exactly on supersets of `t`.
pub fn unanimity_game<T: Scalar>(n: usize, t: Coalition) -> SetFunction<T> {
    assert!(!t.is_empty() && t.is_subset_of(Coalition::full(n)));
    SetFunction::from_fn(n, |c| if t.is_subset_of(c) { T::one() } else { T::zero() })
}

/// The 3-player pair game: worth 1 on every coalition of two or more players.
/// Its classical core is empty while its order-2 core is not.
pub fn pair_game<T: Scalar>() -> SetFunction<T> {
    SetFunction::from_fn(3, |c| if c.len() >= 2 { T::one() } else { T::zero() })
}

/// Convex square game `v(S) = |S|²`.
pub fn square_game<T: Scalar>(n: usize) -> SetFunction<T> {
    SetFunction::from_fn(n, |c| T::from_int((c.len() * c.len()) as i64))
}

/// Requested structure of a generated game.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GameClass {
    General,
    Monotone,
    Convex,
}

impl GameClass {
    pub fn parse(text: &str) -> Option<GameClass> {
        match text {
            "general" => Some(GameClass::General),
            "monotone" => Some(GameClass::Monotone),
            "convex" => Some(GameClass::Convex),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GameClass::General => "general",
            GameClass::Monotone => "monotone",
            GameClass::Convex => "convex",
        }
    }
}

fn small_rational<T: Scalar>(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> T {
    let numer = rng.gen_range(lo..=hi);
    let denom = [1i64, 2, 3, 4][rng.gen_range(0..4)];
    T::from_ratio(numer, denom)
}

/// Reproducible pseudo-random game with small numerators and denominators.
/// The same `(n, seed, class)` always yields the same game.
///
/// Generated monotone games are monotone by construction (cumulative maxima
/// plus nonnegative increments); convex games carry nonnegative dividends on
/// all non-singleton coalitions, which makes them supermodular. Both
/// properties are asserted before returning.
pub fn random_game<T: Scalar>(n: usize, seed: u64, class: GameClass) -> SetFunction<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b636f7265); // per-class streams share a seed base
    match class {
        GameClass::General => SetFunction::from_fn(n, |_| small_rational(&mut rng, -8, 8)),
        GameClass::Monotone => {
            let mut sf: SetFunction<T> = SetFunction::zero(n);
            for c in Coalition::nonempty(n) {
                let mut floor = T::zero();
                for p in c.members() {
                    let below = sf.value(c.without(p)).clone();
                    if below > floor {
                        floor = below;
                    }
                }
                let bump: T = small_rational(&mut rng, 0, 4);
                sf.set(c, floor + bump).expect("in range");
            }
            debug_assert!(sf.is_monotone());
            sf
        }
        GameClass::Convex => {
            let mobius = SetFunction::from_fn(n, |c| {
                if c.len() == 1 {
                    small_rational(&mut rng, -4, 6)
                } else {
                    small_rational(&mut rng, 0, 4)
                }
            });
            let sf = mobius.zeta_transform();
            debug_assert!(sf.is_supermodular());
            sf
        }
    }
}
