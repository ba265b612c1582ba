use crate::bounds::ramsey_upper;

/// Classical exact Ramsey numbers for small parameters. `R(1, k) = 1` and
/// `R(2, k) = k` for every `k`; the remaining entries are the known values
/// of `R(3, k)` for `k <= 9` and `R(4, 4)`, `R(4, 5)`.
pub struct KnownRamseyTable;

const TABLE: &[(u64, u64, u64)] = &[
    (3, 3, 6),
    (3, 4, 9),
    (3, 5, 14),
    (3, 6, 18),
    (3, 7, 23),
    (3, 8, 28),
    (3, 9, 36),
    (4, 4, 18),
    (4, 5, 25),
];

/// A Ramsey threshold together with whether it is the exact value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RamseyThreshold {
    pub value: u64,
    pub exact: bool,
}

impl KnownRamseyTable {
    pub fn exact(s: u64, t: u64) -> Option<u64> {
        let (a, b) = if s <= t { (s, t) } else { (t, s) };
        match a {
            0 => None,
            1 => Some(1),
            2 => Some(b),
            _ => TABLE.iter().find(|&&(x, y, _)| x == a && y == b).map(|&(_, _, r)| r),
        }
    }

    /// The exact value when known, else the binomial upper bound (saturated
    /// at `u64::MAX`).
    pub fn threshold(s: u64, t: u64) -> RamseyThreshold {
        match Self::exact(s, t) {
            Some(value) => RamseyThreshold { value, exact: true },
            None => {
                let value = ramsey_upper(s, t).ok().and_then(|b| b.to_u64()).unwrap_or(u64::MAX);
                RamseyThreshold { value, exact: false }
            }
        }
    }

    pub fn entries() -> impl Iterator<Item = (u64, u64, u64)> {
        TABLE.iter().copied()
    }
}
