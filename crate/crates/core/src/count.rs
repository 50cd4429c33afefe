//! Exact shortest-path counts.
//!
//! Counts grow exponentially on dense graphs, so a machine word is not enough in
//! general. Almost all counts fit in a `u64` though, so storage is a flat `u64`
//! vector with a side map for the rare overflowing entries.

use std::collections::HashMap;
use std::fmt;
use std::ops::AddAssign;

use num_bigint::{BigUint, RandBigInt};
use num_traits::ToPrimitive;
use rand::Rng;

/// Sentinel in [`SigmaStore`]: the value lives in the overflow map.
const SPILLED: u64 = u64::MAX;

/// An unbounded non-negative integer. `Big` is only used for values that do not
/// fit below `u64::MAX`, so equal values always compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PathCount {
    Small(u64),
    Big(BigUint),
}

impl PathCount {
    pub const ZERO: PathCount = PathCount::Small(0);
    pub const ONE: PathCount = PathCount::Small(1);

    fn from_big(b: BigUint) -> Self {
        match b.to_u64() {
            Some(x) if x != SPILLED => PathCount::Small(x),
            _ => PathCount::Big(b),
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match self {
            PathCount::Small(x) => BigUint::from(*x),
            PathCount::Big(b) => b.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            PathCount::Small(x) => *x as f64,
            PathCount::Big(b) => b.to_f64().unwrap_or(f64::INFINITY),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PathCount::Small(0))
    }

    /// Uniform draw from `[0, self)`. Panics on zero.
    pub fn sample_below<R: Rng + ?Sized>(&self, rng: &mut R) -> PathCount {
        match self {
            PathCount::Small(x) => PathCount::Small(rng.gen_range(0..*x)),
            PathCount::Big(b) => PathCount::from_big(rng.gen_biguint_below(b)),
        }
    }

    /// `self -= other` when `self >= other`; returns false and leaves `self`
    /// unchanged otherwise.
    pub fn checked_sub_assign(&mut self, other: &PathCount) -> bool {
        match (&*self, other) {
            (PathCount::Small(a), PathCount::Small(b)) => {
                if a < b {
                    return false;
                }
                *self = PathCount::Small(a - b);
                true
            }
            (PathCount::Small(_), PathCount::Big(_)) => false,
            (PathCount::Big(a), _) => {
                let b = other.to_biguint();
                if *a < b {
                    return false;
                }
                *self = PathCount::from_big(a - b);
                true
            }
        }
    }
}

impl Default for PathCount {
    fn default() -> Self {
        PathCount::ZERO
    }
}

impl From<u64> for PathCount {
    fn from(x: u64) -> Self {
        if x == SPILLED {
            PathCount::Big(BigUint::from(x))
        } else {
            PathCount::Small(x)
        }
    }
}

impl From<BigUint> for PathCount {
    fn from(b: BigUint) -> Self {
        PathCount::from_big(b)
    }
}

impl AddAssign<&PathCount> for PathCount {
    fn add_assign(&mut self, rhs: &PathCount) {
        if let (PathCount::Small(a), PathCount::Small(b)) = (&*self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                if s != SPILLED {
                    *self = PathCount::Small(s);
                    return;
                }
            }
        }
        let sum = self.to_biguint() + rhs.to_biguint();
        *self = PathCount::from_big(sum);
    }
}

impl PartialOrd for PathCount {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PathCount {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (PathCount::Small(a), PathCount::Small(b)) => a.cmp(b),
            (PathCount::Small(_), PathCount::Big(_)) => std::cmp::Ordering::Less,
            (PathCount::Big(_), PathCount::Small(_)) => std::cmp::Ordering::Greater,
            (PathCount::Big(a), PathCount::Big(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for PathCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathCount::Small(x) => write!(f, "{x}"),
            PathCount::Big(b) => write!(f, "{b}"),
        }
    }
}

/// Per-node path counts.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SigmaStore {
    small: Vec<u64>,
    big: HashMap<u32, BigUint>,
}

impl SigmaStore {
    pub fn zeros(n: usize) -> Self {
        Self {
            small: vec![0; n],
            big: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.small.len()
    }

    pub fn is_empty(&self) -> bool {
        self.small.is_empty()
    }

    pub fn get(&self, v: usize) -> PathCount {
        match self.small[v] {
            SPILLED => PathCount::Big(self.big[&(v as u32)].clone()),
            x => PathCount::Small(x),
        }
    }

    /// Fast path for the common case; `None` when the value spilled.
    #[inline]
    pub fn get_small(&self, v: usize) -> Option<u64> {
        match self.small[v] {
            SPILLED => None,
            x => Some(x),
        }
    }

    pub fn set(&mut self, v: usize, c: PathCount) {
        if self.small[v] == SPILLED {
            self.big.remove(&(v as u32));
        }
        match c {
            PathCount::Small(x) => self.small[v] = x,
            PathCount::Big(b) => {
                self.small[v] = SPILLED;
                self.big.insert(v as u32, b);
            }
        }
    }

    /// Adds the count of `from` into the accumulator `acc`.
    #[inline]
    pub fn add_into(&self, from: usize, acc: &mut PathCount) {
        match (self.small[from], &mut *acc) {
            (SPILLED, _) => *acc += &self.get(from),
            (x, PathCount::Small(a)) => match a.checked_add(x) {
                Some(s) if s != SPILLED => *a = s,
                _ => *acc += &PathCount::Small(x),
            },
            (x, _) => *acc += &PathCount::Small(x),
        }
    }

    pub fn spilled(&self) -> usize {
        self.big.len()
    }
}
