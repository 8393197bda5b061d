// not every test binary uses every helper
#![allow(dead_code)]

use plumbing::{City, Permutation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Triangular cities, strip cities, and a handful of seeded random cities,
/// all small enough for exhaustive configuration sweeps.
pub fn corpus() -> Vec<City> {
    let mut cities = Vec::new();
    for n in 1..=4 {
        cities.push(City::yoshi_hill(n).unwrap());
    }
    for n in 2..=5 {
        cities.push(City::yoshi_graph(n).unwrap());
    }
    cities.extend(random_cities(0xC0FFEE, 10, 12));
    cities
}

pub fn random_cities(seed: u64, count: usize, max_cells: usize) -> Vec<City> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let m = 4 + (i % 5); // wire counts 4..=8
            City::random(&mut rng, m, max_cells).unwrap()
        })
        .collect()
}

/// Every permutation of `[m]` by plain recursion, for brute-force oracles.
pub fn all_permutations(m: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut values: Vec<usize> = (1..=m).collect();
    heap(&mut values, m, &mut out);
    out
}

fn heap(values: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == 1 {
        out.push(Permutation::from_images(values.clone()).unwrap());
        return;
    }
    for i in 0..k {
        heap(values, k - 1, out);
        if k.is_multiple_of(2) {
            values.swap(i, k - 1);
        } else {
            values.swap(0, k - 1);
        }
    }
}
