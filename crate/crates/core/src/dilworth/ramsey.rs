//! Ramsey numbers: exact where known, otherwise the binomial upper bound.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RamseyBound {
    pub s: u64,
    pub t: u64,
    pub value: u64,
    /// True for a known Ramsey number; false for the binomial upper bound.
    pub exact: bool,
}

/// Known values `R(s, t)` with `3 <= s <= t`.
const EXACT: &[(u64, u64, u64)] = &[
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

/// An upper bound for `R(s, t)`, exact where the value is known.
pub fn ramsey_bound(s: u64, t: u64) -> Result<RamseyBound> {
    if s == 0 || t == 0 {
        return Err(Error::BadParams(format!("R({s},{t}) needs s, t >= 1")));
    }
    let (a, b) = (s.min(t), s.max(t));
    let exact = match a {
        1 => Some(1),
        2 => Some(b),
        _ => EXACT
            .iter()
            .find(|&&(x, y, _)| (x, y) == (a, b))
            .map(|&(_, _, v)| v),
    };
    let (value, exact) = match exact {
        Some(v) => (v, true),
        None => (binomial(s + t - 2, s - 1), false),
    };
    Ok(RamseyBound { s, t, value, exact })
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KBound {
    pub d: u64,
    pub n: u64,
    pub value: u64,
    pub ramsey: RamseyBound,
}

/// `K(D, N) = R(D + 1, N + 1) - 1`: the antichain bound for a wall set of
/// dimension `D` without facing `(N + 1)`-tuples.
pub fn k_bound(d: u64, n: u64) -> Result<KBound> {
    if d == 0 || n == 0 {
        return Err(Error::BadParams(format!("K({d},{n}) needs D, N >= 1")));
    }
    let ramsey = ramsey_bound(d + 1, n + 1)?;
    Ok(KBound {
        d,
        n,
        value: ramsey.value - 1,
        ramsey,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        assert_eq!(ramsey_bound(2, 2).unwrap().value, 2);
        assert_eq!(ramsey_bound(3, 3).unwrap().value, 6);
        let r = ramsey_bound(4, 3).unwrap();
        assert_eq!((r.value, r.exact), (9, true));
        assert_eq!(ramsey_bound(5, 3).unwrap().value, 14);
        assert_eq!(ramsey_bound(4, 4).unwrap().value, 18);
        assert_eq!(ramsey_bound(1, 7).unwrap().value, 1);
        assert_eq!(ramsey_bound(7, 2).unwrap().value, 7);
    }

    #[test]
    fn binomial_fallback() {
        let r = ramsey_bound(5, 5).unwrap();
        assert!(!r.exact);
        assert_eq!(r.value, 70);
        assert_eq!(ramsey_bound(6, 4).unwrap().value, 56);
        assert!(ramsey_bound(0, 3).is_err());
    }

    #[test]
    fn exact_values_never_exceed_binomial_bound() {
        for &(s, t, v) in EXACT {
            assert!(v <= binomial(s + t - 2, s - 1));
        }
    }

    /// R(3,3) = 6 by colouring every edge set of K_5 and K_6.
    #[test]
    fn r33_by_exhaustion() {
        fn has_mono(n: usize, colour: u64, s: usize, t: usize) -> bool {
            let edge = |a: usize, b: usize| {
                let (a, b) = (a.min(b), a.max(b));
                let idx = a * n - a * (a + 1) / 2 + (b - a - 1);
                colour >> idx & 1 == 1
            };
            for mask in 0u32..1 << n {
                let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let clique = |want: bool| {
                    members.iter().enumerate().all(|(i, &a)| members[i + 1..].iter().all(|&b| edge(a, b) == want))
                };
                if (members.len() == s && clique(true)) || (members.len() == t && clique(false)) {
                    return true;
                }
            }
            false
        }
        let all_coloured = |n: usize, s: usize, t: usize| {
            let edges = n * (n - 1) / 2;
            (0u64..1 << edges).all(|c| has_mono(n, c, s, t))
        };
        assert!(!all_coloured(5, 3, 3));
        assert!(all_coloured(6, 3, 3));
        assert_eq!(k_bound(2, 2).unwrap().value, 5);
        assert_eq!(k_bound(3, 2).unwrap().value, 8);
        assert_eq!(k_bound(1, 1).unwrap().value, 1);
    }
}
