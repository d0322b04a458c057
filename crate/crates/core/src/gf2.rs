//! Row reduction over F2 on `u64` row masks.
//!
//! Pivots are the lowest set bit of a row, so a reduced echelon form read
//! as bitstrings (coefficient of `e_1` first) looks like the usual one.

/// Reduced row echelon form: every row has a distinct pivot (lowest set bit),
/// no other row has that bit set, and rows are sorted by pivot.
pub fn rref(rows: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::with_capacity(rows.len());
    for &r in rows {
        let r = reduce(&basis, r);
        if r == 0 {
            continue;
        }
        let p = r & r.wrapping_neg();
        for b in basis.iter_mut() {
            if *b & p != 0 {
                *b ^= r;
            }
        }
        basis.push(r);
    }
    basis.sort_by_key(|r| r.trailing_zeros());
    basis
}

/// Reduce `v` against rows in reduced echelon form.
pub fn reduce(basis: &[u64], mut v: u64) -> u64 {
    for &b in basis {
        let p = b & b.wrapping_neg();
        if v & p != 0 {
            v ^= b;
        }
    }
    v
}

pub fn rank(rows: &[u64]) -> usize {
    rref(rows).len()
}

/// Basis of `{ x : x & !support == 0, parity(x & g) == 0 for all g }`.
pub fn nullspace(functionals: &[u64], support: u64) -> Vec<u64> {
    // Unknowns are the support bits; eliminate on the transposed system.
    let positions: Vec<u32> = (0..64).filter(|&k| support >> k & 1 == 1).collect();
    let n = positions.len();
    // Each equation becomes a mask over unknown indices 0..n.
    let eqs: Vec<u64> = functionals
        .iter()
        .map(|&g| {
            positions
                .iter()
                .enumerate()
                .filter(|(_, &p)| g >> p & 1 == 1)
                .fold(0u64, |acc, (u, _)| acc | 1 << u)
        })
        .collect();
    let reduced = rref(&eqs);
    let pivots: u64 = reduced
        .iter()
        .fold(0, |acc, r| acc | (r & r.wrapping_neg()));
    let mut out = Vec::new();
    for free in 0..n {
        if pivots >> free & 1 == 1 {
            continue;
        }
        let mut sol = 1u64 << free;
        for r in &reduced {
            if r >> free & 1 == 1 {
                sol |= r & r.wrapping_neg();
            }
        }
        let x = (0..n)
            .filter(|u| sol >> u & 1 == 1)
            .fold(0u64, |acc, u| acc | 1 << positions[u]);
        out.push(x);
    }
    rref(&out)
}

/// Basis of the intersection of `span(rows)` with the coordinate subspace
/// whose support is `mask`.
pub fn intersect_coordinate(rows: &[u64], mask: u64) -> Vec<u64> {
    // Echelonize on the bits outside the mask; rows whose outside part
    // vanishes span the intersection.
    let outside = !mask;
    let mut pending: Vec<u64> = rows.to_vec();
    let mut pivots: Vec<u64> = Vec::new();
    let mut inside = Vec::new();
    while let Some(mut r) = pending.pop() {
        for &p in &pivots {
            let bit = p & outside & (p & outside).wrapping_neg();
            if r & bit != 0 {
                r ^= p;
            }
        }
        let out_part = r & outside;
        if out_part == 0 {
            if r != 0 {
                inside.push(r);
            }
        } else {
            let bit = out_part & out_part.wrapping_neg();
            for p in pivots.iter_mut() {
                if *p & bit != 0 {
                    *p ^= r;
                }
            }
            pivots.push(r);
        }
    }
    rref(&inside)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn span_brute(rows: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64];
        for &r in rows {
            let extra: Vec<u64> = out.iter().map(|x| x ^ r).collect();
            out.extend(extra);
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    #[test]
    fn rref_small() {
        assert_eq!(rref(&[0b11, 0b01]), vec![0b01, 0b10]);
        assert_eq!(rref(&[0b110, 0b011, 0b101]), vec![0b101, 0b110]);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn nullspace_of_single_functional() {
        // x1 + x2 = 0 on 3 coordinates
        let ns = nullspace(&[0b011], 0b111);
        assert_eq!(span_brute(&ns), vec![0, 0b011, 0b100, 0b111]);
    }

    proptest! {
        #[test]
        fn rref_preserves_span(rows in proptest::collection::vec(0u64..256, 0..6)) {
            let r = rref(&rows);
            prop_assert_eq!(span_brute(&r), span_brute(&rows));
            for (k, a) in r.iter().enumerate() {
                let p = a & a.wrapping_neg();
                for (l, b) in r.iter().enumerate() {
                    if k != l { prop_assert_eq!(b & p, 0); }
                }
            }
        }

        #[test]
        fn intersection_matches_brute_force(rows in proptest::collection::vec(0u64..256, 0..6), mask in 0u64..256) {
            let got = span_brute(&intersect_coordinate(&rows, mask));
            let want: Vec<u64> = span_brute(&rows).into_iter().filter(|x| x & !mask == 0).collect();
            prop_assert_eq!(got, want);
        }

        #[test]
        fn nullspace_matches_brute_force(fs in proptest::collection::vec(0u64..256, 0..4), support in 0u64..256) {
            let got = span_brute(&nullspace(&fs, support));
            let want: Vec<u64> = (0u64..256)
                .filter(|x| x & !support == 0)
                .filter(|x| fs.iter().all(|g| (x & g).count_ones() % 2 == 0))
                .collect();
            prop_assert_eq!(got, want);
        }
    }
}
