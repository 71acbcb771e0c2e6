//! Clebsch-Gordan coefficients rebuilt from the lowering operator, with no
//! reference to the Racah sum, compared against `cg` and `wigner_3jm`.

use quadft::wigner_racah::{cg, wigner_3jm, HalfInt};

/// Coupled states `|J M⟩` as vectors over `|m1⟩|m2⟩`, indexed `i1 * k2 + i2`
/// with `m = j - i`.
fn coupled_states(two_j1: i32, two_j2: i32) -> Vec<(i32, i32, Vec<f64>)> {
    let (k1, k2) = ((two_j1 + 1) as usize, (two_j2 + 1) as usize);
    let n = k1 * k2;
    let m_of = |two_j: i32, i: usize| two_j - 2 * i as i32;
    // ⟨m-1| j₋ |m⟩ = √(j(j+1) - m(m-1)), all quantities doubled
    let lower_coeff = |two_j: i32, two_m: i32| (((two_j * (two_j + 2)) - two_m * (two_m - 2)) as f64 / 4.0).sqrt();
    let lower = |v: &[f64]| {
        let mut out = vec![0.0; n];
        for i1 in 0..k1 {
            for i2 in 0..k2 {
                let c = v[i1 * k2 + i2];
                if c == 0.0 {
                    continue;
                }
                if i1 + 1 < k1 {
                    out[(i1 + 1) * k2 + i2] += c * lower_coeff(two_j1, m_of(two_j1, i1));
                }
                if i2 + 1 < k2 {
                    out[i1 * k2 + i2 + 1] += c * lower_coeff(two_j2, m_of(two_j2, i2));
                }
            }
        }
        out
    };
    let total_m = |idx: usize| m_of(two_j1, idx / k2) + m_of(two_j2, idx % k2);

    let mut states: Vec<(i32, i32, Vec<f64>)> = Vec::new();
    let mut two_big_j = two_j1 + two_j2;
    while two_big_j >= (two_j1 - two_j2).abs() {
        // highest weight: the M = J subspace minus everything already built there
        let mut candidates: Vec<Vec<f64>> = (0..n)
            .filter(|&i| total_m(i) == two_big_j)
            .map(|i| {
                let mut e = vec![0.0; n];
                e[i] = 1.0;
                e
            })
            .collect();
        let taken: Vec<&Vec<f64>> = states.iter().filter(|s| s.1 == two_big_j).map(|s| &s.2).collect();
        let mut top = None;
        for c in candidates.iter_mut() {
            for t in &taken {
                let dot: f64 = c.iter().zip(t.iter()).map(|(x, y)| x * y).sum();
                c.iter_mut().zip(t.iter()).for_each(|(x, y)| *x -= dot * y);
            }
            let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-8 {
                top = Some(c.iter().map(|x| x / norm).collect::<Vec<f64>>());
                break;
            }
        }
        let mut v = top.expect("highest weight state");
        // Condon-Shortley: ⟨j1 j1; j2 J-j1 | J J⟩ > 0
        let anchor = v.iter().position(|x| x.abs() > 1e-10).unwrap();
        if v[anchor] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let mut two_m = two_big_j;
        loop {
            states.push((two_big_j, two_m, v.clone()));
            if two_m == -two_big_j {
                break;
            }
            let c = lower_coeff(two_big_j, two_m);
            v = lower(&v).into_iter().map(|x| x / c).collect();
            two_m -= 2;
        }
        two_big_j -= 2;
    }
    states
}

#[test]
fn lowering_recursion_matches_racah_sum() {
    let h = HalfInt::from_doubled;
    let mut compared = 0;
    for two_j1 in 0..=6 {
        for two_j2 in 0..=6 {
            let k2 = (two_j2 + 1) as usize;
            for (two_big_j, two_m, v) in coupled_states(two_j1, two_j2) {
                for (idx, &expected) in v.iter().enumerate() {
                    let m1 = two_j1 - 2 * (idx / k2) as i32;
                    let m2 = two_j2 - 2 * (idx % k2) as i32;
                    if m1 + m2 != two_m {
                        assert!(expected.abs() < 1e-12);
                        continue;
                    }
                    let got = cg(h(two_j1), h(m1), h(two_j2), h(m2), h(two_big_j), h(two_m)).unwrap();
                    assert!(
                        (got - expected).abs() < 1e-10,
                        "j1={two_j1}/2 m1={m1}/2 j2={two_j2}/2 m2={m2}/2 J={two_big_j}/2 M={two_m}/2: {got} vs {expected}"
                    );
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 1000);
}

#[test]
fn three_jm_from_recursion() {
    // (j1 j2 j3; m1 m2 m3) = (-1)^(j1-j2-m3) ⟨j1 m1 j2 m2 | j3 -m3⟩ / √(2j3+1)
    let h = HalfInt::from_doubled;
    for two_j1 in 0..=4 {
        for two_j2 in 0..=4 {
            let k2 = (two_j2 + 1) as usize;
            for (two_j3, two_m, v) in coupled_states(two_j1, two_j2) {
                for (idx, &c) in v.iter().enumerate() {
                    let m1 = two_j1 - 2 * (idx / k2) as i32;
                    let m2 = two_j2 - 2 * (idx % k2) as i32;
                    if m1 + m2 != two_m {
                        continue;
                    }
                    let m3 = -two_m;
                    let exponent = (two_j1 - two_j2 - m3) / 2;
                    let sign = if exponent.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                    let expected = sign * c / ((two_j3 + 1) as f64).sqrt();
                    let got = wigner_3jm([h(two_j1), h(two_j2), h(two_j3)], [h(m1), h(m2), h(m3)]).unwrap();
                    assert!((got - expected).abs() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn spin_half_pair() {
    let states = coupled_states(1, 1);
    let singlet = states.iter().find(|s| s.0 == 0).unwrap();
    let r = 1.0 / 2f64.sqrt();
    assert_eq!(singlet.2.len(), 4);
    assert!((singlet.2[1] - r).abs() < 1e-14 && (singlet.2[2] + r).abs() < 1e-14);
}
