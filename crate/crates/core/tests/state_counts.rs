use num_bigint::BigInt;
use shape_forge::multipoly::slater_basis;
use shape_forge::qseries::{shape_poly, state_count_series, Statistics};

/// Number of sets of `n` distinct `d`-tuples of occupation numbers with total
/// `g`, for every `g <= max`: a subset-sum count over single-particle orbitals.
fn brute_force_states(n: usize, d: usize, max: usize) -> Vec<Vec<u64>> {
    let mut orbitals = Vec::new();
    let mut tuple = vec![0usize; d];
    loop {
        let s: usize = tuple.iter().sum();
        if s <= max {
            orbitals.push(s);
        }
        let mut pos = 0;
        loop {
            if pos == d {
                // ways[k][g]: k particles, total g
                let mut ways = vec![vec![0u64; max + 1]; n + 1];
                ways[0][0] = 1;
                for &e in &orbitals {
                    for k in (1..=n).rev() {
                        for g in (e..=max).rev() {
                            ways[k][g] += ways[k - 1][g - e];
                        }
                    }
                }
                return ways;
            }
            tuple[pos] += 1;
            if tuple[pos] <= max {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

#[test]
fn series_matches_direct_count() {
    for n in 1..=4 {
        for d in 1..=3 {
            let max = 10;
            let ways = brute_force_states(n, d, max);
            let series = state_count_series(n, d, max);
            for (g, &count) in ways[n].iter().enumerate() {
                assert_eq!(series.coeff(g), Some(&BigInt::from(count)), "N={n} d={d} g={g}");
            }
        }
    }
}

#[test]
fn slater_basis_sizes_match_direct_count() {
    for (n, d) in [(2, 2), (3, 2), (3, 3), (4, 1), (4, 2)] {
        let ways = brute_force_states(n, d, 8);
        for (g, &count) in ways[n].iter().enumerate() {
            assert_eq!(slater_basis(n, d, g).len() as u64, count, "N={n} d={d} g={g}");
        }
    }
}

#[test]
fn three_particles_three_dimensions_by_grade() {
    let ways = brute_force_states(3, 3, 9);
    assert_eq!(ways[3], vec![0, 0, 3, 19, 63, 180, 443, 978, 1998, 3838]);
}

#[test]
fn boson_and_fermion_counts_agree_on_one_particle() {
    for d in 1..=5 {
        assert_eq!(shape_poly(1, d, Statistics::Fermion), shape_poly(1, d, Statistics::Boson));
    }
}
