use std::collections::BTreeSet;

use anticonc::ensembles::sample_dense_iqp;
use anticonc::experiment::quench_conditional_draws;
use anticonc::quench::{
    assign_roles, build_interaction_sublattice, sample_beta, LatticeSpec, QuenchConventions, QuenchInstance, Role,
};
use anticonc::stats::{two_sample_ks_statistic, two_sample_threshold};
use anticonc::Rng;

// Straight transcription of the indicator, 1-based rows and columns, pinks on
// the left end of even rows, blue iff i + j odd.
fn oracle_role(i: usize, j: usize) -> Role {
    if i.is_multiple_of(2) && j == 1 {
        Role::Pink
    } else if (i + j) % 2 == 1 {
        Role::Blue
    } else {
        Role::Yellow
    }
}

fn oracle_delta(a: (usize, usize), b: (usize, usize)) -> bool {
    let ((i, j), (k, _)) = (a, b);
    let r = oracle_role(i, j);
    !((i != k && j % 4 == 0 && r == Role::Blue) || (i != k && j % 4 == 2 && r == Role::Yellow))
}

fn oracle_edges(m: usize) -> BTreeSet<((usize, usize), (usize, usize))> {
    let (rows, cols) = (m, 2 * m + 1);
    let sites: Vec<(usize, usize)> = (1..=rows).flat_map(|i| (1..=cols).map(move |j| (i, j))).collect();
    let mut out = BTreeSet::new();
    for &a in &sites {
        for &b in &sites {
            let adjacent = a.0.abs_diff(b.0) + a.1.abs_diff(b.1) == 1;
            if adjacent && a.0 <= b.0 && a.1 <= b.1 && oracle_delta(a, b) {
                out.insert((a, b));
            }
        }
    }
    out
}

fn library_edges(m: usize) -> BTreeSet<((usize, usize), (usize, usize))> {
    let lat = LatticeSpec::new(m).unwrap();
    let conv = QuenchConventions::default();
    let roles = assign_roles(&lat, &conv);
    build_interaction_sublattice(&lat, &roles, &conv)
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (sa, sb) = (lat.site(a), lat.site(b));
            if sa <= sb {
                (sa, sb)
            } else {
                (sb, sa)
            }
        })
        .collect()
}

#[test]
fn edge_set_matches_enumeration() {
    for m in 1..=5 {
        assert_eq!(library_edges(m), oracle_edges(m), "m = {m}");
    }
}

#[test]
fn m2_vertical_pattern() {
    let edges = oracle_edges(2);
    let horizontal = edges.iter().filter(|(a, b)| a.0 == b.0).count();
    assert_eq!(horizontal, 2 * 4);
    let vertical_cols: Vec<usize> = edges.iter().filter(|(a, b)| a.0 != b.0).map(|(a, _)| a.1).collect();
    // column 2 is blue in row 1 (kept), column 4 is blue (dropped)
    assert_eq!(vertical_cols, vec![1, 2, 3, 5]);
    assert_eq!(library_edges(2).len(), 12);
}

#[test]
fn deletion_pattern_is_periodic() {
    let conv = QuenchConventions::default();
    for m in 3..=6 {
        let lat = LatticeSpec::new(m).unwrap();
        let roles = assign_roles(&lat, &conv);
        let sub = build_interaction_sublattice(&lat, &roles, &conv);
        let kept = |i: usize, j: usize| sub.contains(lat.qubit(i, j), lat.qubit(i + 1, j));
        let pink = |i: usize, j: usize| roles.role(lat.qubit(i, j)) == Role::Pink;
        for i in 1..lat.rows() {
            for j in 1..=lat.cols() {
                if pink(i, j) {
                    continue;
                }
                if j + 4 <= lat.cols() {
                    assert_eq!(kept(i, j), kept(i, j + 4), "m={m} column period at ({i},{j})");
                }
                if i + 2 < lat.rows() && !pink(i + 2, j) {
                    assert_eq!(kept(i, j), kept(i + 2, j), "m={m} row period at ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn roles_have_no_blue_corners_and_differ_on_neighbours() {
    for m in 1..=5 {
        let lat = LatticeSpec::new(m).unwrap();
        let roles = assign_roles(&lat, &QuenchConventions::default());
        assert_eq!(roles.role(lat.qubit(1, 1)), Role::Yellow);
        assert_eq!(roles.role(lat.qubit(1, lat.cols())), Role::Yellow);
        assert_eq!(roles.count(Role::Pink), m / 2);
        for i in 1..=lat.rows() {
            for j in 1..lat.cols() {
                let (a, b) = (roles.role(lat.qubit(i, j)), roles.role(lat.qubit(i, j + 1)));
                if a != Role::Pink && b != Role::Pink {
                    assert_ne!(a, b);
                }
            }
        }
    }
}

#[test]
fn beta_is_uniform() {
    let lat = LatticeSpec::new(2).unwrap();
    let roles = assign_roles(&lat, &QuenchConventions::default());
    let master = Rng::new(31);
    let draws = 8000;
    let mut k_counts = [0usize; 4];
    let mut ones = 0usize;
    let mut bits = 0usize;
    for t in 0..draws {
        let b = sample_beta(&roles, &mut master.substream(t));
        assert_eq!(b.pink_bits.len(), roles.count(Role::Pink));
        assert_eq!(b.yellow_k.len(), roles.count(Role::Yellow));
        for &k in &b.yellow_k {
            k_counts[k as usize] += 1;
        }
        ones += b.pink_bits.iter().filter(|&&x| x).count();
        bits += b.pink_bits.len();
    }
    let total: usize = k_counts.iter().sum();
    let e = total as f64 / 4.0;
    let chi2: f64 = k_counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
    // chi-square with 3 dof, 0.1% upper tail
    assert!(chi2 < 16.266, "chi2 {chi2}, counts {k_counts:?}");
    let half = bits as f64 / 2.0;
    let z = (ones as f64 - half) / (bits as f64 / 4.0).sqrt();
    assert!(z.abs() < 3.29, "pink bit z {z}");
}

#[test]
fn instance_sampling_is_deterministic() {
    let a = QuenchInstance::sample(3, QuenchConventions::default(), &mut Rng::new(5)).unwrap();
    let b = QuenchInstance::sample(3, QuenchConventions::default(), &mut Rng::new(5)).unwrap();
    assert_eq!(a.beta, b.beta);
}

// A 1 x 3 lattice has no pinks and its single-bit conditionals should follow
// the one-qubit dense IQP law.
#[test]
fn single_row_matches_dense_iqp() {
    let draws = quench_conditional_draws(1, QuenchConventions::default(), 3000, 77).unwrap();
    let quench: Vec<f64> = draws.iter().flat_map(|d| d.conditionals.iter().copied()).collect();
    let master = Rng::new(78);
    let iqp: Vec<f64> = (0..3000)
        .flat_map(|t| {
            sample_dense_iqp(1, &mut master.substream(t))
                .unwrap()
                .output_state()
                .unwrap()
                .distribution()
        })
        .collect();
    let d = two_sample_ks_statistic(&quench, &iqp);
    assert!(d <= two_sample_threshold(quench.len(), iqp.len()), "D = {d}");
}
