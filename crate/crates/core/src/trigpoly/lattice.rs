//! Integer lattices in row Hermite normal form.
//!
//! A frequency module with rational coordinates becomes an integer lattice
//! once every coordinate is scaled by a common denominator. Two generating
//! sets span the same lattice iff their reduced row Hermite normal forms are
//! identical, which makes module comparison an exact test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result has one row per rank, pivots strictly increasing in column,
/// positive pivots, and entries above each pivot reduced into `[0, pivot)`.
/// Zero rows are dropped, so the zero lattice has an empty form.
pub fn hermite_normal_form(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    debug_assert!(m.iter().all(|r| r.len() == ncols));

    let mut rank = 0;
    for col in 0..ncols {
        if rank == m.len() {
            break;
        }
        // Euclid down the column until a single nonzero entry remains.
        let mut found = false;
        loop {
            let pivot = (rank..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&i, &j| m[i][col].abs().cmp(&m[j][col].abs()));
            let Some(pivot) = pivot else { break };
            found = true;
            m.swap(rank, pivot);
            let mut clean = true;
            for i in rank + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[rank][col]);
                sub_scaled_row(&mut m, i, rank, &q);
                if !m[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if m[rank][col].is_negative() {
            for x in m[rank].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..rank {
            let q = m[i][col].div_floor(&m[rank][col]);
            if !q.is_zero() {
                sub_scaled_row(&mut m, i, rank, &q);
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

fn sub_scaled_row(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(src.iter()) {
        *t -= q * s;
    }
}

/// `true` when every row of `sub` lies in the lattice spanned by `sup`.
pub fn is_sublattice(sub: &[Vec<BigInt>], sup: &[Vec<BigInt>], ncols: usize) -> bool {
    let base = hermite_normal_form(sup, ncols);
    let mut joined = sup.to_vec();
    joined.extend_from_slice(sub);
    hermite_normal_form(&joined, ncols) == base
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn one_dimensional_lattice_is_gcd() {
        let h = hermite_normal_form(&rows(&[&[6], &[-10], &[15]]), 1);
        assert_eq!(h, rows(&[&[1]]));
        let h = hermite_normal_form(&rows(&[&[6], &[-10]]), 1);
        assert_eq!(h, rows(&[&[2]]));
    }

    #[test]
    fn zero_lattice_is_empty() {
        assert!(hermite_normal_form(&rows(&[&[0, 0]]), 2).is_empty());
        assert!(hermite_normal_form(&[], 2).is_empty());
    }

    #[test]
    fn reduced_form_of_known_lattice() {
        // Spanned by (2, 1) and (0, 3): already triangular, entry above pivot 3
        // reduced mod 3.
        let h = hermite_normal_form(&rows(&[&[2, 4], &[0, 3]]), 2);
        assert_eq!(h, rows(&[&[2, 1], &[0, 3]]));
    }

    #[test]
    fn sublattice_relations() {
        let even = rows(&[&[2]]);
        let all = rows(&[&[1]]);
        assert!(is_sublattice(&even, &all, 1));
        assert!(!is_sublattice(&all, &even, 1));
        let x_axis = rows(&[&[1, 0]]);
        let y_axis = rows(&[&[0, 1]]);
        assert!(!is_sublattice(&x_axis, &y_axis, 2));
        assert!(!is_sublattice(&y_axis, &x_axis, 2));
    }

    /// Brute-force membership: is `v` an integer combination of `gens` with
    /// coefficients in `[-k, k]`? Only used as a one-sided oracle.
    fn brute_member(v: &[i64; 2], gens: &[[i64; 2]; 2], k: i64) -> bool {
        for c0 in -k..=k {
            for c1 in -k..=k {
                if c0 * gens[0][0] + c1 * gens[1][0] == v[0] && c0 * gens[0][1] + c1 * gens[1][1] == v[1] {
                    return true;
                }
            }
        }
        false
    }

    proptest! {
        #[test]
        fn hnf_invariant_under_unimodular_moves(
            a in -6i64..6, b in -6i64..6, c in -6i64..6, d in -6i64..6, k in -3i64..3,
        ) {
            let base = rows(&[&[a, b], &[c, d]]);
            // row1 += k·row0, then swap and negate: same lattice.
            let moved = rows(&[&[-(c + k * a), -(d + k * b)], &[a, b]]);
            prop_assert_eq!(hermite_normal_form(&base, 2), hermite_normal_form(&moved, 2));
        }

        #[test]
        fn membership_agrees_with_enumeration(
            a in 1i64..5, b in -4i64..5, d in 1i64..5, x in -6i64..7, y in -6i64..7,
        ) {
            // Triangular generators keep the enumeration range small and exact.
            let gens = [[a, b], [0, d]];
            let v = [x, y];
            let lattice = rows(&[&[a, b], &[0, d]]);
            let member = is_sublattice(&rows(&[&[x, y]]), &lattice, 2);
            prop_assert_eq!(member, brute_member(&v, &gens, 60));
        }
    }
}
