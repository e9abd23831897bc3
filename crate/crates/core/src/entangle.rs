//! Three-qubit states, tangle measures and Schmidt analysis.
//!
//! The spin-1/2 block operator is 8-dimensional, so its eigenvectors live in
//! a three-qubit register. Amplitudes are indexed by (q1 q2 q3) read as a
//! binary number with q1 the most significant bit. The 3-tangle is computed
//! from the degree-4 hyperdeterminant of the amplitude tensor; the
//! epsilon-contraction form of the n-tangle is implemented independently and
//! their agreement at n = 3 is a test, not an assumption.

use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{vec_norm, CMatrix};
use crate::spectral::{rank_from_singular_values, svd};

/// Tangle threshold that separates "entangled" from "non-entangled":
/// every tangle arising here is either exactly 0 or at least 1/4, so the
/// absolute threshold has nine orders of magnitude of margin.
pub const TANGLE_THRESHOLD: f64 = 1e-9;

/// States with norm below this are treated as a cancelled combination.
const ZERO_NORM: f64 = 1e-12;

/// A normalized three-qubit pure state. Index = 4 q1 + 2 q2 + q3.
#[derive(Clone, Debug)]
pub struct ThreeQubitState {
    amps: [Complex64; 8],
}

impl ThreeQubitState {
    /// Normalizes the amplitudes; errors when they are numerically zero.
    pub fn new(amps: [Complex64; 8]) -> Result<Self> {
        let norm = vec_norm(&amps);
        if norm <= ZERO_NORM {
            return Err(Error::ZeroCombination);
        }
        let inv = Complex64::new(1.0 / norm, 0.0);
        Ok(ThreeQubitState { amps: amps.map(|a| a * inv) })
    }

    pub fn from_slice(amps: &[Complex64]) -> Result<Self> {
        let arr: [Complex64; 8] = amps
            .try_into()
            .map_err(|_| Error::BadStateLength { expected: 8, got: amps.len() })?;
        ThreeQubitState::new(arr)
    }

    /// Product state q1 ⊗ q2 ⊗ q3 from three single-qubit amplitude pairs.
    pub fn product(q1: [Complex64; 2], q2: [Complex64; 2], q3: [Complex64; 2]) -> Result<Self> {
        let mut amps = [Complex64::ZERO; 8];
        for (idx, amp) in amps.iter_mut().enumerate() {
            *amp = q1[idx >> 2 & 1] * q2[idx >> 1 & 1] * q3[idx & 1];
        }
        ThreeQubitState::new(amps)
    }

    pub fn amplitudes(&self) -> &[Complex64; 8] {
        &self.amps
    }

    /// Amplitude of the basis state |q1 q2 q3>.
    pub fn amplitude(&self, q1: usize, q2: usize, q3: usize) -> Complex64 {
        self.amps[4 * q1 + 2 * q2 + q3]
    }
}

/// The four normalized eigenvectors of the spin-1/2 block operator for its
/// real eigenvalue 1/2 (four-fold degenerate):
/// v1 = (|010> + |111>)/sqrt2, v2 = (|100> + i|111>)/sqrt2,
/// v3 = (|011> - |110>)/sqrt2, v4 = (|101> + i|110>)/sqrt2.
pub fn spin_half_eigenvectors() -> [ThreeQubitState; 4] {
    let one = Complex64::ONE;
    let i = Complex64::i();
    let mut v = [[Complex64::ZERO; 8]; 4];
    v[0][0b010] = one;
    v[0][0b111] = one;
    v[1][0b100] = one;
    v[1][0b111] = i;
    v[2][0b011] = one;
    v[2][0b110] = -one;
    v[3][0b101] = one;
    v[3][0b110] = i;
    v.map(|amps| ThreeQubitState::new(amps).expect("fixed nonzero amplitudes"))
}

/// Normalized linear combination sum c_k state_k; cancellation to the zero
/// vector is an explicit error.
pub fn combine(states: &[ThreeQubitState], coeffs: &[Complex64]) -> Result<ThreeQubitState> {
    if states.len() != coeffs.len() {
        return Err(Error::LengthMismatch { left: coeffs.len(), right: states.len() });
    }
    let mut amps = [Complex64::ZERO; 8];
    for (state, &c) in states.iter().zip(coeffs) {
        for (a, &b) in amps.iter_mut().zip(&state.amps) {
            *a += c * b;
        }
    }
    ThreeQubitState::new(amps)
}

/// The 3-tangle, 4 |d1 - 2 d2 + 4 d3| on the amplitude tensor (the Cayley
/// hyperdeterminant, equal to the n-tangle at n = 3). Clamped to [0, 1]
/// against rounding noise.
pub fn three_tangle(psi: &ThreeQubitState) -> f64 {
    let a = |q1: usize, q2: usize, q3: usize| psi.amplitude(q1, q2, q3);

    let d1 = a(0, 0, 0).powu(2) * a(1, 1, 1).powu(2)
        + a(0, 0, 1).powu(2) * a(1, 1, 0).powu(2)
        + a(0, 1, 0).powu(2) * a(1, 0, 1).powu(2)
        + a(1, 0, 0).powu(2) * a(0, 1, 1).powu(2);

    let d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1)
        + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);

    let d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1)
        + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);

    let tau = 4.0 * (d1 - d2 * 2.0 + d3 * 4.0).norm();
    tau.clamp(0.0, 1.0)
}

fn epsilon(a: usize, b: usize) -> f64 {
    match (a, b) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    }
}

/// Direct epsilon-contraction form of the n-tangle for n in {2, 3, 4}:
/// 2 |sum a_alpha a_beta a_gamma a_delta eps(alpha_k, beta_k)...|
/// over all index tuples. O(2^(4n)) — fine at these sizes.
pub fn epsilon_contraction_tangle(amps: &[Complex64], n: usize) -> Result<f64> {
    if !(2..=4).contains(&n) {
        return Err(Error::UnsupportedArity { n });
    }
    let dim = 1usize << n;
    if amps.len() != dim {
        return Err(Error::BadStateLength { expected: dim, got: amps.len() });
    }
    let norm = vec_norm(amps);
    if norm <= ZERO_NORM {
        return Err(Error::ZeroCombination);
    }
    let a: Vec<Complex64> = amps.iter().map(|&z| z / norm).collect();

    // qubit k of index, k = 1..n, with qubit 1 the most significant bit
    let bit = |idx: usize, k: usize| (idx >> (n - k)) & 1;

    let mut sum = Complex64::ZERO;
    for alpha in 0..dim {
        if a[alpha] == Complex64::ZERO {
            continue;
        }
        for beta in 0..dim {
            if a[beta] == Complex64::ZERO {
                continue;
            }
            let mut f_ab = 1.0;
            for k in 1..n {
                f_ab *= epsilon(bit(alpha, k), bit(beta, k));
                if f_ab == 0.0 {
                    break;
                }
            }
            if f_ab == 0.0 {
                continue;
            }
            for gamma in 0..dim {
                if a[gamma] == Complex64::ZERO || epsilon(bit(alpha, n), bit(gamma, n)) == 0.0 {
                    continue;
                }
                for delta in 0..dim {
                    if a[delta] == Complex64::ZERO {
                        continue;
                    }
                    let mut f = f_ab
                        * epsilon(bit(alpha, n), bit(gamma, n))
                        * epsilon(bit(beta, n), bit(delta, n));
                    if f == 0.0 {
                        continue;
                    }
                    for k in 1..n {
                        f *= epsilon(bit(gamma, k), bit(delta, k));
                        if f == 0.0 {
                            break;
                        }
                    }
                    if f == 0.0 {
                        continue;
                    }
                    sum += a[alpha] * a[beta] * a[gamma] * a[delta] * f;
                }
            }
        }
    }
    Ok((2.0 * sum.norm()).clamp(0.0, 1.0))
}

/// The n-tangle for n in {2, 3, 4}: the epsilon contraction for even n, the
/// hyperdeterminant form at n = 3.
pub fn n_tangle(amps: &[Complex64], n: usize) -> Result<f64> {
    match n {
        3 => Ok(three_tangle(&ThreeQubitState::from_slice(amps)?)),
        2 | 4 => epsilon_contraction_tangle(amps, n),
        _ => Err(Error::UnsupportedArity { n }),
    }
}

/// A bipartition of the three qubits: the named qubit against the other two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cut {
    Q1,
    Q2,
    Q3,
}

impl Cut {
    pub const ALL: [Cut; 3] = [Cut::Q1, Cut::Q2, Cut::Q3];

    pub fn label(&self) -> &'static str {
        match self {
            Cut::Q1 => "1|23",
            Cut::Q2 => "2|13",
            Cut::Q3 => "3|12",
        }
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Cut {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1|23" | "1" => Ok(Cut::Q1),
            "2|13" | "2" => Ok(Cut::Q2),
            "3|12" | "3" => Ok(Cut::Q3),
            other => Err(Error::StateSpec(format!("unknown cut '{other}', expected 1|23, 2|13 or 3|12"))),
        }
    }
}

/// Schmidt data across one cut: the singular values of the 2x4 amplitude
/// matrix with the cut qubit as the row index.
#[derive(Clone, Debug)]
pub struct SchmidtResult {
    pub rank: usize,
    /// The min(2,4) = 2 singular values, descending; their squares sum to 1.
    pub coefficients: Vec<f64>,
}

/// Reshape across the cut and take singular values; rank counts those above
/// `tol * sigma_max`. Rank 1 means the state is separable across the cut.
pub fn schmidt_analysis(psi: &ThreeQubitState, cut: Cut, tol: f64) -> SchmidtResult {
    let mut m = CMatrix::zeros(2, 4);
    for idx in 0..8 {
        let bits = [idx >> 2 & 1, idx >> 1 & 1, idx & 1];
        let (row, rest) = match cut {
            Cut::Q1 => (bits[0], [bits[1], bits[2]]),
            Cut::Q2 => (bits[1], [bits[0], bits[2]]),
            Cut::Q3 => (bits[2], [bits[0], bits[1]]),
        };
        m[(row, 2 * rest[0] + rest[1])] = psi.amps[idx];
    }
    let decomp = svd(&m);
    let rank = rank_from_singular_values(&decomp.singular_values, tol);
    let coefficients = decomp.singular_values[..2].to_vec();
    SchmidtResult { rank, coefficients }
}

/// Entanglement classes of a three-qubit pure state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateClass {
    /// All three cuts have Schmidt rank 1.
    Product,
    /// Exactly the named cut has Schmidt rank 1.
    Biseparable(Cut),
    /// All cuts entangled but the 3-tangle vanishes.
    WClass,
    /// Nonzero 3-tangle.
    GhzClass,
}

impl fmt::Display for StateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateClass::Product => f.write_str("product"),
            StateClass::Biseparable(cut) => write!(f, "biseparable({cut})"),
            StateClass::WClass => f.write_str("w-class"),
            StateClass::GhzClass => f.write_str("ghz-class"),
        }
    }
}

/// Combined verdict: the tangle, the Schmidt rank across each cut, the
/// resulting class, and the tangle-threshold criterion (`entangled` holds
/// exactly when tangle > [`TANGLE_THRESHOLD`]).
#[derive(Clone, Debug)]
pub struct EntanglementVerdict {
    pub tangle: f64,
    /// Ranks for the cuts 1|23, 2|13, 3|12 in that order.
    pub schmidt_ranks: [usize; 3],
    pub class: StateClass,
    pub entangled: bool,
}

pub fn classify(psi: &ThreeQubitState, tol: f64) -> EntanglementVerdict {
    let tangle = three_tangle(psi);
    let schmidt: Vec<SchmidtResult> = Cut::ALL.iter().map(|&cut| schmidt_analysis(psi, cut, tol)).collect();
    let schmidt_ranks = [schmidt[0].rank, schmidt[1].rank, schmidt[2].rank];

    let rank_one: Vec<Cut> = Cut::ALL
        .iter()
        .zip(&schmidt_ranks)
        .filter(|(_, &r)| r == 1)
        .map(|(&c, _)| c)
        .collect();

    let class = if tangle > tol {
        StateClass::GhzClass
    } else if rank_one.len() == 3 {
        StateClass::Product
    } else if rank_one.len() == 1 {
        StateClass::Biseparable(rank_one[0])
    } else {
        StateClass::WClass
    };

    EntanglementVerdict {
        tangle,
        schmidt_ranks,
        class,
        entangled: tangle > TANGLE_THRESHOLD,
    }
}

/// Multiply the |1> amplitude of one qubit (0-based) by e^(i theta).
pub fn apply_phase(psi: &ThreeQubitState, qubit: usize, theta: f64) -> ThreeQubitState {
    assert!(qubit < 3, "qubit index out of range");
    let phase = Complex64::from_polar(1.0, theta);
    let mut amps = psi.amps;
    for (idx, amp) in amps.iter_mut().enumerate() {
        if idx >> (2 - qubit) & 1 == 1 {
            *amp *= phase;
        }
    }
    ThreeQubitState { amps }
}

/// Reorder qubits: new qubit k is old qubit perm[k] (0-based).
pub fn permute_qubits(psi: &ThreeQubitState, perm: [usize; 3]) -> ThreeQubitState {
    let mut seen = [false; 3];
    for &p in &perm {
        assert!(p < 3 && !seen[p], "not a permutation");
        seen[p] = true;
    }
    let mut amps = [Complex64::ZERO; 8];
    for (idx, amp) in amps.iter_mut().enumerate() {
        let mut src = 0usize;
        for (k, &p) in perm.iter().enumerate() {
            let bit = idx >> (2 - k) & 1;
            src |= bit << (2 - p);
        }
        *amp = psi.amps[src];
    }
    ThreeQubitState { amps }
}

// --- state-specification mini-grammar ---------------------------------------
//
// spec  := [sign] term { sign term }
// term  := [ coeff '*' ] vref
// coeff := real | '(' real ',' real ')'
// vref  := 'v' digit in 1..4
//
// Whitespace-insensitive; e.g. "v1+v4", "v2-v3", "0.5*v1 + (0,1)*v2".

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    Comma,
    Number(f64),
    Vref(usize),
}

fn tokenize(spec: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let c = chars[pos];
        match c {
            '+' => { tokens.push(Token::Plus); pos += 1; }
            '-' => { tokens.push(Token::Minus); pos += 1; }
            '*' => { tokens.push(Token::Star); pos += 1; }
            '(' => { tokens.push(Token::LParen); pos += 1; }
            ')' => { tokens.push(Token::RParen); pos += 1; }
            ',' => { tokens.push(Token::Comma); pos += 1; }
            'v' | 'V' => {
                let digit = chars.get(pos + 1).and_then(|d| d.to_digit(10));
                match digit {
                    Some(k @ 1..=4) => {
                        tokens.push(Token::Vref(k as usize - 1));
                        pos += 2;
                    }
                    _ => return Err(Error::StateSpec(format!("expected v1..v4 at position {pos}"))),
                }
            }
            '0'..='9' | '.' => {
                let start = pos;
                while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '.') {
                    pos += 1;
                }
                // optional exponent
                if pos < chars.len() && (chars[pos] == 'e' || chars[pos] == 'E') {
                    let mut next = pos + 1;
                    if next < chars.len() && (chars[next] == '+' || chars[next] == '-') {
                        next += 1;
                    }
                    if next < chars.len() && chars[next].is_ascii_digit() {
                        pos = next;
                        while pos < chars.len() && chars[pos].is_ascii_digit() {
                            pos += 1;
                        }
                    }
                }
                let text: String = chars[start..pos].iter().collect();
                let value: f64 = text
                    .parse()
                    .map_err(|_| Error::StateSpec(format!("bad number '{text}'")))?;
                tokens.push(Token::Number(value));
            }
            other => return Err(Error::StateSpec(format!("unexpected character '{other}'"))),
        }
    }
    Ok(tokens)
}

/// Parse a linear combination of v1..v4 and return the normalized state.
pub fn parse_state_spec(spec: &str) -> Result<ThreeQubitState> {
    let tokens = tokenize(spec)?;
    if tokens.is_empty() {
        return Err(Error::StateSpec("empty expression".into()));
    }
    let basis = spin_half_eigenvectors();
    let mut states = Vec::new();
    let mut coeffs = Vec::new();

    let mut pos = 0;
    let mut sign = 1.0;
    if tokens[pos] == Token::Plus || tokens[pos] == Token::Minus {
        sign = if tokens[pos] == Token::Minus { -1.0 } else { 1.0 };
        pos += 1;
    }
    loop {
        // coefficient
        let coeff = match tokens.get(pos) {
            Some(Token::Number(x)) => {
                pos += 1;
                match tokens.get(pos) {
                    Some(Token::Star) => pos += 1,
                    _ => return Err(Error::StateSpec("expected '*' after coefficient".into())),
                }
                Complex64::new(*x, 0.0)
            }
            Some(Token::LParen) => {
                let (re, im) = match (tokens.get(pos + 1), tokens.get(pos + 2), tokens.get(pos + 3), tokens.get(pos + 4)) {
                    (Some(Token::Number(re)), Some(Token::Comma), Some(Token::Number(im)), Some(Token::RParen)) => (*re, *im),
                    _ => return Err(Error::StateSpec("expected '(re,im)' coefficient".into())),
                };
                pos += 5;
                match tokens.get(pos) {
                    Some(Token::Star) => pos += 1,
                    _ => return Err(Error::StateSpec("expected '*' after coefficient".into())),
                }
                Complex64::new(re, im)
            }
            _ => Complex64::ONE,
        };
        // basis vector
        let vref = match tokens.get(pos) {
            Some(Token::Vref(k)) => {
                pos += 1;
                *k
            }
            _ => return Err(Error::StateSpec("expected v1..v4".into())),
        };
        states.push(basis[vref].clone());
        coeffs.push(coeff * sign);

        match tokens.get(pos) {
            None => break,
            Some(Token::Plus) => {
                sign = 1.0;
                pos += 1;
            }
            Some(Token::Minus) => {
                sign = -1.0;
                pos += 1;
            }
            Some(t) => return Err(Error::StateSpec(format!("unexpected token {t:?}"))),
        }
    }

    combine(&states, &coeffs)
}
