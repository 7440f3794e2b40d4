//! The quench architecture Q_ac: an `m x (2m+1)` lattice prepared in a random
//! product state, evolved by CZ gates on a periodic interaction sublattice,
//! and measured in the X basis.
//!
//! Sites are addressed 1-based as `[i, j]` (row, column). Site `[i, j]` is
//! qubit `(i-1)(2m+1) + (j-1)`, so the statevector index is row-major.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bits::Bitstring;
use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::statevector::{State, MAX_QUBITS};

/// Largest `m` for which the exact output distribution is computed (n = 21).
pub const MAX_EXACT_M: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    m: usize,
}

impl LatticeSpec {
    pub fn new(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::Input("lattice needs m >= 1".into()));
        }
        Ok(Self { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        2 * self.m + 1
    }

    pub fn n(&self) -> usize {
        self.m * (2 * self.m + 1)
    }

    /// Qubit index of 1-based site `[i, j]`.
    pub fn qubit(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.rows()).contains(&i) && (1..=self.cols()).contains(&j));
        (i - 1) * self.cols() + (j - 1)
    }

    /// 1-based site of a qubit.
    pub fn site(&self, q: usize) -> (usize, usize) {
        (q / self.cols() + 1, q % self.cols() + 1)
    }

    /// Qubits of the rightmost column, top to bottom.
    pub fn right_column(&self) -> Vec<usize> {
        (1..=self.rows()).map(|i| self.qubit(i, self.cols())).collect()
    }

    /// All other qubits in row-major order.
    pub fn left_block(&self) -> Vec<usize> {
        (0..self.n()).filter(|q| q % self.cols() != self.cols() - 1).collect()
    }
}

/// Which checkerboard parity is blue: `Odd` means `[i, j]` is blue iff `i + j` is odd.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColoringParity {
    #[default]
    Odd,
    Even,
}

/// Which even-row boundary sites hold classical `|0>`/`|1>` inputs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PinkPlacement {
    /// Column 1 only. A classical input in the readout column cuts that
    /// row's chain and breaks the uniform `x_L` marginal.
    #[default]
    Left,
    /// Columns 1 and 2m+1.
    Both,
}

impl FromStr for ColoringParity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(Self::Odd),
            "even" => Ok(Self::Even),
            _ => Err(Error::Input(format!("coloring parity must be odd or even, got {s:?}"))),
        }
    }
}

impl FromStr for PinkPlacement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Self::Left),
            "both" => Ok(Self::Both),
            _ => Err(Error::Input(format!("pink placement must be left or both, got {s:?}"))),
        }
    }
}

impl fmt::Display for ColoringParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Odd => "odd",
            Self::Even => "even",
        })
    }
}

impl fmt::Display for PinkPlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Left => "left",
            Self::Both => "both",
        })
    }
}

/// Convention switches for the parts of the construction the lattice
/// description leaves open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuenchConventions {
    #[serde(default)]
    pub coloring_parity: ColoringParity,
    /// Column index base used in the `j mod 4` tests (0 or 1).
    #[serde(default = "one")]
    pub column_base: u8,
    #[serde(default)]
    pub pink: PinkPlacement,
}

fn one() -> u8 {
    1
}

impl Default for QuenchConventions {
    fn default() -> Self {
        Self {
            coloring_parity: ColoringParity::Odd,
            column_base: 1,
            pink: PinkPlacement::Left,
        }
    }
}

impl QuenchConventions {
    pub fn validate(&self) -> Result<()> {
        if self.column_base > 1 {
            return Err(Error::Input(format!(
                "column base must be 0 or 1, got {}",
                self.column_base
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Pink,
    Blue,
    Yellow,
}

/// Role per qubit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteRoles {
    roles: Vec<Role>,
}

impl SiteRoles {
    pub fn role(&self, q: usize) -> Role {
        self.roles[q]
    }

    pub fn as_slice(&self) -> &[Role] {
        &self.roles
    }

    pub fn count(&self, role: Role) -> usize {
        self.roles.iter().filter(|&&r| r == role).count()
    }

    pub fn qubits_with(&self, role: Role) -> Vec<usize> {
        (0..self.roles.len()).filter(|&q| self.roles[q] == role).collect()
    }
}

pub fn assign_roles(lattice: &LatticeSpec, conv: &QuenchConventions) -> SiteRoles {
    let cols = lattice.cols();
    let roles = (0..lattice.n())
        .map(|q| {
            let (i, j) = lattice.site(q);
            let boundary = match conv.pink {
                PinkPlacement::Left => j == 1,
                PinkPlacement::Both => j == 1 || j == cols,
            };
            if i % 2 == 0 && boundary {
                return Role::Pink;
            }
            let odd = (i + j) % 2 == 1;
            let blue = match conv.coloring_parity {
                ColoringParity::Odd => odd,
                ColoringParity::Even => !odd,
            };
            if blue {
                Role::Blue
            } else {
                Role::Yellow
            }
        })
        .collect();
    SiteRoles { roles }
}

/// Edge set `E_I` and the induced degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionSublattice {
    edges: Vec<(usize, usize)>,
    degree: Vec<usize>,
}

impl InteractionSublattice {
    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut degree = vec![0; n];
        for &(a, b) in &edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Input(format!("invalid edge ({a}, {b})")));
            }
            degree[a] += 1;
            degree[b] += 1;
        }
        Ok(Self { edges, degree })
    }

    /// Edges as qubit pairs, upper/left endpoint first.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, q: usize) -> usize {
        self.degree[q]
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.edges.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
    }
}

/// Keeps every horizontal edge. The vertical edge below `[i, j]` is dropped
/// when `j = 0 mod 4` and `[i, j]` is blue, or `j = 2 mod 4` and it is yellow.
pub fn build_interaction_sublattice(
    lattice: &LatticeSpec,
    roles: &SiteRoles,
    conv: &QuenchConventions,
) -> InteractionSublattice {
    let mut edges = Vec::new();
    for i in 1..=lattice.rows() {
        for j in 1..=lattice.cols() {
            let q = lattice.qubit(i, j);
            if j < lattice.cols() {
                edges.push((q, lattice.qubit(i, j + 1)));
            }
            if i < lattice.rows() && vertical_kept(j, roles.role(q), conv) {
                edges.push((q, lattice.qubit(i + 1, j)));
            }
        }
    }
    InteractionSublattice::from_edges(lattice.n(), edges).expect("grid edges are valid")
}

fn vertical_kept(j: usize, role: Role, conv: &QuenchConventions) -> bool {
    let jj = if conv.column_base == 1 { j } else { j - 1 };
    !matches!((jj % 4, role), (0, Role::Blue) | (2, Role::Yellow))
}

/// Input parameters `beta`: one bit per pink site and one `k in {0..3}` per
/// yellow site, both in qubit order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaSample {
    pub pink_bits: Vec<bool>,
    pub yellow_k: Vec<u8>,
}

pub fn sample_beta(roles: &SiteRoles, rng: &mut Rng) -> BetaSample {
    BetaSample {
        pink_bits: (0..roles.count(Role::Pink)).map(|_| rng.coin()).collect(),
        yellow_k: (0..roles.count(Role::Yellow)).map(|_| rng.below(4) as u8).collect(),
    }
}

/// `|S_ac| = 2^{#pink} 4^{#yellow}`.
pub fn family_size(roles: &SiteRoles) -> u128 {
    1u128 << (roles.count(Role::Pink) + 2 * roles.count(Role::Yellow))
}

#[derive(Clone, Debug)]
pub struct QuenchInstance {
    pub lattice: LatticeSpec,
    pub conventions: QuenchConventions,
    pub roles: SiteRoles,
    pub sublattice: InteractionSublattice,
    pub beta: BetaSample,
}

impl QuenchInstance {
    pub fn with_beta(m: usize, conventions: QuenchConventions, beta: BetaSample) -> Result<Self> {
        conventions.validate()?;
        let lattice = LatticeSpec::new(m)?;
        let roles = assign_roles(&lattice, &conventions);
        if beta.pink_bits.len() != roles.count(Role::Pink) || beta.yellow_k.len() != roles.count(Role::Yellow) {
            return Err(Error::Input("beta does not match the site roles".into()));
        }
        if beta.yellow_k.iter().any(|&k| k > 3) {
            return Err(Error::Input("yellow k must lie in {0,1,2,3}".into()));
        }
        let sublattice = build_interaction_sublattice(&lattice, &roles, &conventions);
        Ok(Self {
            lattice,
            conventions,
            roles,
            sublattice,
            beta,
        })
    }

    pub fn sample(m: usize, conventions: QuenchConventions, rng: &mut Rng) -> Result<Self> {
        let lattice = LatticeSpec::new(m)?;
        let beta = sample_beta(&assign_roles(&lattice, &conventions), rng);
        Self::with_beta(m, conventions, beta)
    }

    /// Per-qubit input amplitudes.
    pub fn input_factors(&self) -> Vec<[Complex64; 2]> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let mut pinks = self.beta.pink_bits.iter();
        let mut yellows = self.beta.yellow_k.iter();
        self.roles
            .as_slice()
            .iter()
            .map(|role| match role {
                Role::Pink => {
                    if *pinks.next().expect("pink bit per pink site") {
                        [zero, one]
                    } else {
                        [one, zero]
                    }
                }
                Role::Blue => [h, h],
                Role::Yellow => {
                    let k = *yellows.next().expect("k per yellow site");
                    [h, Complex64::from_polar(FRAC_1_SQRT_2, f64::from(k) * FRAC_PI_4)]
                }
            })
            .collect()
    }
}

pub fn prepare_input_state(instance: &QuenchInstance) -> Result<State> {
    State::product(&instance.input_factors())
}

/// One CZ per edge of `E_I`.
pub fn evolve(instance: &QuenchInstance, state: &mut State) -> Result<()> {
    if state.n() != instance.lattice.n() {
        return Err(Error::Input(format!(
            "state has {} qubits, lattice has {}",
            state.n(),
            instance.lattice.n()
        )));
    }
    for &(a, b) in instance.sublattice.edges() {
        state.apply_cz(a, b)?;
    }
    Ok(())
}

fn check_dense(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(Error::Resource(format!(
            "{n} qubits exceeds the dense limit of {MAX_QUBITS}"
        )));
    }
    Ok(())
}

#[inline]
fn z_of(x: usize, n: usize, q: usize) -> f64 {
    if (x >> (n - 1 - q)) & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Diagonal of `exp(-i H_ac)` with
/// `H_ac = sum_{E_I} (pi/4) Z_a Z_b - sum_v (pi/4) deg(v) Z_v`.
pub fn hamiltonian_phases(n: usize, sublattice: &InteractionSublattice) -> Result<Vec<Complex64>> {
    check_dense(n)?;
    Ok((0..1usize << n)
        .map(|x| {
            let mut h = 0.0;
            for &(a, b) in sublattice.edges() {
                h += FRAC_PI_4 * z_of(x, n, a) * z_of(x, n, b);
            }
            for v in 0..n {
                h -= FRAC_PI_4 * sublattice.degree(v) as f64 * z_of(x, n, v);
            }
            Complex64::from_polar(1.0, -h)
        })
        .collect())
}

/// Diagonal of the product of CZ gates over `E_I`.
pub fn cz_phases(n: usize, sublattice: &InteractionSublattice) -> Result<Vec<Complex64>> {
    check_dense(n)?;
    Ok((0..1usize << n)
        .map(|x| {
            let ones = sublattice
                .edges()
                .iter()
                .filter(|&&(a, b)| (x >> (n - 1 - a)) & (x >> (n - 1 - b)) & 1 == 1)
                .count();
            Complex64::new(if ones % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        })
        .collect())
}

/// Max modulus deviation after dividing each vector by the phase of its first
/// nonzero entry. Infinite if the lengths differ or either vector is zero.
pub fn phase_deviation(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let first = |v: &[Complex64]| v.iter().find(|z| z.norm() > 1e-12).map(|z| z / z.norm());
    let (Some(pa), Some(pb)) = (first(a), first(b)) else {
        return f64::INFINITY;
    };
    a.iter()
        .zip(b)
        .map(|(x, y)| (x / pa - y / pb).norm())
        .fold(0.0, f64::max)
}

/// Conditional output distribution `q_ac(x | beta)` over all `x in {0,1}^n`.
pub fn q_ac_distribution(instance: &QuenchInstance) -> Result<Vec<f64>> {
    if instance.lattice.m() > MAX_EXACT_M {
        return Err(Error::Resource(format!(
            "exact quench distribution is limited to m <= {MAX_EXACT_M}, got m = {}",
            instance.lattice.m()
        )));
    }
    let mut state = prepare_input_state(instance)?;
    evolve(instance, &mut state)?;
    state.hadamard_all();
    Ok(state.distribution())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeSplit {
    pub x_r: Bitstring,
    pub x_l: Bitstring,
}

pub fn split_outcome(lattice: &LatticeSpec, x: &Bitstring) -> Result<OutcomeSplit> {
    if x.len() != lattice.n() {
        return Err(Error::Input(format!(
            "outcome has {} bits, lattice has {}",
            x.len(),
            lattice.n()
        )));
    }
    let pick = |qs: Vec<usize>| Bitstring::from_bits(qs.into_iter().map(|q| x.bit(q)).collect());
    Ok(OutcomeSplit {
        x_r: pick(lattice.right_column()),
        x_l: pick(lattice.left_block()),
    })
}

pub fn recombine(lattice: &LatticeSpec, split: &OutcomeSplit) -> Result<Bitstring> {
    if split.x_r.len() != lattice.m() || split.x_l.len() != lattice.n() - lattice.m() {
        return Err(Error::Input("split does not match the lattice".into()));
    }
    let mut bits = vec![false; lattice.n()];
    for (k, q) in lattice.right_column().into_iter().enumerate() {
        bits[q] = split.x_r.bit(k);
    }
    for (k, q) in lattice.left_block().into_iter().enumerate() {
        bits[q] = split.x_l.bit(k);
    }
    Ok(Bitstring::from_bits(bits))
}

/// Splits every full index into `(x_L index, x_R index)`, both big-endian.
fn split_indices(lattice: &LatticeSpec) -> impl Fn(usize) -> (usize, usize) {
    let n = lattice.n();
    let right = lattice.right_column();
    let left = lattice.left_block();
    move |x| {
        let gather = |qs: &[usize]| qs.iter().fold(0usize, |acc, &q| (acc << 1) | ((x >> (n - 1 - q)) & 1));
        (gather(&left), gather(&right))
    }
}

fn check_distribution(lattice: &LatticeSpec, dist: &[f64]) -> Result<()> {
    if dist.len() != 1usize << lattice.n() {
        return Err(Error::Input(format!(
            "distribution has {} entries, expected 2^{}",
            dist.len(),
            lattice.n()
        )));
    }
    Ok(())
}

/// `q_ac(x_L | beta)` indexed by the big-endian `x_L` index.
pub fn marginal_xl(lattice: &LatticeSpec, dist: &[f64]) -> Result<Vec<f64>> {
    check_distribution(lattice, dist)?;
    let split = split_indices(lattice);
    let mut out = vec![0.0; 1usize << (lattice.n() - lattice.m())];
    for (x, p) in dist.iter().enumerate() {
        out[split(x).0] += p;
    }
    Ok(out)
}

/// All conditionals `q_ac(x_R | x_L, beta)`, row `x_L`, column `x_R`.
pub fn conditionals_xr(lattice: &LatticeSpec, dist: &[f64]) -> Result<Vec<Vec<f64>>> {
    check_distribution(lattice, dist)?;
    let split = split_indices(lattice);
    let mut joint = vec![vec![0.0; 1usize << lattice.m()]; 1usize << (lattice.n() - lattice.m())];
    for (x, p) in dist.iter().enumerate() {
        let (l, r) = split(x);
        joint[l][r] = *p;
    }
    for (l, row) in joint.iter_mut().enumerate() {
        let marginal: f64 = row.iter().sum();
        if marginal <= 0.0 {
            return Err(Error::Numerical(format!("zero marginal at x_L index {l}")));
        }
        row.iter_mut().for_each(|p| *p /= marginal);
    }
    Ok(joint)
}

/// `q_ac(x_R | x_L, beta)` for one `x_L`.
pub fn conditional_xr(lattice: &LatticeSpec, dist: &[f64], x_l: &Bitstring) -> Result<Vec<f64>> {
    check_distribution(lattice, dist)?;
    if x_l.len() != lattice.n() - lattice.m() {
        return Err(Error::Input(format!(
            "x_L has {} bits, expected {}",
            x_l.len(),
            lattice.n() - lattice.m()
        )));
    }
    let split = OutcomeSplit {
        x_r: Bitstring::zeros(lattice.m()),
        x_l: x_l.clone(),
    };
    let mut row: Vec<f64> = (0..1usize << lattice.m())
        .map(|r| {
            let s = OutcomeSplit {
                x_r: Bitstring::from_index(lattice.m(), r),
                ..split.clone()
            };
            recombine(lattice, &s).map(|x| dist[x.index()])
        })
        .collect::<Result<_>>()?;
    let marginal: f64 = row.iter().sum();
    if marginal <= 0.0 {
        return Err(Error::Numerical(format!("zero marginal at x_L = {x_l}")));
    }
    row.iter_mut().for_each(|p| *p /= marginal);
    Ok(row)
}

/// JSON view of a lattice: sites with roles and the `E_I` edges.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeExport {
    pub m: usize,
    pub rows: usize,
    pub cols: usize,
    pub n: usize,
    pub conventions: QuenchConventions,
    pub sites: Vec<SiteExport>,
    pub edges: Vec<EdgeExport>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SiteExport {
    pub row: usize,
    pub col: usize,
    pub qubit: usize,
    pub role: Role,
    pub degree: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeExport {
    pub a: [usize; 2],
    pub b: [usize; 2],
    pub vertical: bool,
}

pub fn export_lattice(m: usize, conv: &QuenchConventions) -> Result<LatticeExport> {
    conv.validate()?;
    let lattice = LatticeSpec::new(m)?;
    let roles = assign_roles(&lattice, conv);
    let sub = build_interaction_sublattice(&lattice, &roles, conv);
    let sites = (0..lattice.n())
        .map(|q| {
            let (row, col) = lattice.site(q);
            SiteExport {
                row,
                col,
                qubit: q,
                role: roles.role(q),
                degree: sub.degree(q),
            }
        })
        .collect();
    let edges = sub
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (sa, sb) = (lattice.site(a), lattice.site(b));
            EdgeExport {
                a: [sa.0, sa.1],
                b: [sb.0, sb.1],
                vertical: sa.0 != sb.0,
            }
        })
        .collect();
    Ok(LatticeExport {
        m,
        rows: lattice.rows(),
        cols: lattice.cols(),
        n: lattice.n(),
        conventions: *conv,
        sites,
        edges,
    })
}
