//! The five vector fields spanning the Lie algebra of the Hamiltonian system,
//! their brackets, and the group action of `R^2 ⋊ SL(2, R)` on `p < 0`.
//!
//! With `r = sqrt(-p)`:
//!
//! ```text
//! X1 = (1/r) ∂x
//! X2 = ∂x
//! X3 = x ∂x - p ∂p
//! X4 = x^2 ∂x - 2xp ∂p
//! X5 = (x/r) ∂x + 2r ∂p
//! ```
//!
//! Brackets use `[X, Y]^i = X^j ∂_j Y^i - Y^j ∂_j X^i`.

use std::fmt;

use crate::model::{PhasePoint, PotentialSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VectorFieldId {
    X1,
    X2,
    X3,
    X4,
    X5,
}

impl VectorFieldId {
    pub const ALL: [VectorFieldId; 5] = [Self::X1, Self::X2, Self::X3, Self::X4, Self::X5];

    /// Zero-based position in [`Self::ALL`].
    pub fn slot(self) -> usize {
        self as usize
    }

    /// One-based label, `X1 -> 1`.
    pub fn label(self) -> usize {
        self.slot() + 1
    }

    pub fn from_label(label: usize) -> Option<Self> {
        Self::ALL.get(label.wrapping_sub(1)).copied()
    }

    pub fn eval(self, s: PhasePoint) -> Result<[f64; 2]> {
        s.require_domain()?;
        let (x, p) = (s.x, s.p);
        let r = s.root();
        Ok(match self {
            Self::X1 => [1.0 / r, 0.0],
            Self::X2 => [1.0, 0.0],
            Self::X3 => [x, -p],
            Self::X4 => [x * x, -2.0 * x * p],
            Self::X5 => [x / r, 2.0 * r],
        })
    }

    /// Rows are components `(vx, vp)`, columns are `(∂x, ∂p)`.
    pub fn jacobian(self, s: PhasePoint) -> Result<[[f64; 2]; 2]> {
        s.require_domain()?;
        let (x, p) = (s.x, s.p);
        let r = s.root();
        let r3 = r * r * r;
        Ok(match self {
            Self::X1 => [[0.0, 0.5 / r3], [0.0, 0.0]],
            Self::X2 => [[0.0, 0.0], [0.0, 0.0]],
            Self::X3 => [[1.0, 0.0], [0.0, -1.0]],
            Self::X4 => [[2.0 * x, 0.0], [-2.0 * p, -2.0 * x]],
            Self::X5 => [[1.0 / r, 0.5 * x / r3], [0.0, -1.0 / r]],
        })
    }
}

impl fmt::Display for VectorFieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.label())
    }
}

pub fn vf_eval(id: VectorFieldId, s: PhasePoint) -> Result<[f64; 2]> {
    id.eval(s)
}

pub fn vf_jacobian(id: VectorFieldId, s: PhasePoint) -> Result<[[f64; 2]; 2]> {
    id.jacobian(s)
}

fn mat_vec(m: &[[f64; 2]; 2], v: &[f64; 2]) -> [f64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

/// `[Xa, Xb](s) = J_b(s) Xa(s) - J_a(s) Xb(s)`.
pub fn lie_bracket(a: VectorFieldId, b: VectorFieldId, s: PhasePoint) -> Result<[f64; 2]> {
    let (va, vb) = (a.eval(s)?, b.eval(s)?);
    let (ja, jb) = (a.jacobian(s)?, b.jacobian(s)?);
    let u = mat_vec(&jb, &va);
    let w = mat_vec(&ja, &vb);
    Ok([u[0] - w[0], u[1] - w[1]])
}

/// Evaluates `Σ coeffs[k] X_{k+1}` at `s`.
pub fn combination(coeffs: &[f64; 5], s: PhasePoint) -> Result<[f64; 2]> {
    let mut out = [0.0; 2];
    for id in VectorFieldId::ALL {
        let c = coeffs[id.slot()];
        if c != 0.0 {
            let v = id.eval(s)?;
            out[0] += c * v[0];
            out[1] += c * v[1];
        }
    }
    Ok(out)
}

/// Structure constants: `[X_a, X_b] = Σ_c table[a][b][c] X_c` (zero-based slots).
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    table: [[[f64; 5]; 5]; 5],
}

impl StructureConstants {
    pub fn zero() -> Self {
        Self {
            table: [[[0.0; 5]; 5]; 5],
        }
    }

    /// Sets `[a, b] = coeffs` and `[b, a] = -coeffs`.
    pub fn set(&mut self, a: VectorFieldId, b: VectorFieldId, coeffs: [f64; 5]) {
        self.table[a.slot()][b.slot()] = coeffs;
        self.table[b.slot()][a.slot()] = coeffs.map(|c| -c);
    }

    pub fn get(&self, a: VectorFieldId, b: VectorFieldId) -> [f64; 5] {
        self.table[a.slot()][b.slot()]
    }

    /// The commutation relations of `X1..X5`.
    pub fn standard() -> Self {
        use VectorFieldId::*;
        let mut t = Self::zero();
        t.set(X1, X3, [0.5, 0.0, 0.0, 0.0, 0.0]);
        t.set(X1, X4, [0.0, 0.0, 0.0, 0.0, 1.0]);
        t.set(X2, X3, [0.0, 1.0, 0.0, 0.0, 0.0]);
        t.set(X2, X4, [0.0, 0.0, 2.0, 0.0, 0.0]);
        t.set(X2, X5, [1.0, 0.0, 0.0, 0.0, 0.0]);
        t.set(X3, X4, [0.0, 0.0, 0.0, 1.0, 0.0]);
        t.set(X3, X5, [0.0, 0.0, 0.0, 0.0, 0.5]);
        t
    }

    /// Matrix of `ad_a` restricted to the slots in `basis`.
    fn ad(&self, a: usize, basis: &[usize]) -> Vec<Vec<f64>> {
        basis
            .iter()
            .map(|&row| basis.iter().map(|&col| self.table[a][col][row]).collect())
            .collect()
    }
}

/// Sup over points, pairs and components of `|[Xa, Xb] - Σ c X|`.
pub fn check_commutation_table_with(
    table: &StructureConstants,
    points: &[PhasePoint],
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &s in points {
        for (i, &a) in VectorFieldId::ALL.iter().enumerate() {
            for &b in &VectorFieldId::ALL[i + 1..] {
                let got = lie_bracket(a, b, s)?;
                let want = combination(&table.get(a, b), s)?;
                worst = worst
                    .max((got[0] - want[0]).abs())
                    .max((got[1] - want[1]).abs());
            }
        }
    }
    Ok(worst)
}

pub fn check_commutation_table(points: &[PhasePoint]) -> Result<f64> {
    check_commutation_table_with(&StructureConstants::standard(), points)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assertion {
    pub name: &'static str,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeviReport {
    pub assertions: Vec<Assertion>,
}

impl LeviReport {
    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

const SEMISIMPLE: [usize; 3] = [1, 2, 3];
const RADICAL: [usize; 2] = [0, 4];

/// Checks, on the structure constants alone, that `<X2, X3, X4>` is a
/// subalgebra of `sl(2, R)` type and `<X1, X5>` an abelian ideal.
pub fn levi_structure_check_with(table: &StructureConstants) -> LeviReport {
    let t = &table.table;
    let mut assertions = Vec::new();
    let mut check = |name, passed| assertions.push(Assertion { name, passed });

    let antisymmetric = (0..5).all(|a| (0..5).all(|b| (0..5).all(|c| t[a][b][c] == -t[b][a][c])));
    check("antisymmetry", antisymmetric);

    let jacobi = (0..5).all(|a| {
        (0..5).all(|b| {
            (0..5).all(|c| {
                (0..5).all(|out| {
                    // [a,[b,c]] + [b,[c,a]] + [c,[a,b]]
                    let cyc = |x: usize, y: usize, z: usize| -> f64 {
                        (0..5).map(|m| t[y][z][m] * t[x][m][out]).sum()
                    };
                    (cyc(a, b, c) + cyc(b, c, a) + cyc(c, a, b)).abs() < 1e-12
                })
            })
        })
    });
    check("jacobi identity", jacobi);

    let closes = SEMISIMPLE.iter().all(|&a| {
        SEMISIMPLE
            .iter()
            .all(|&b| RADICAL.iter().all(|&c| t[a][b][c] == 0.0))
    });
    check("<X2,X3,X4> closes", closes);

    // Killing form of the 3-dimensional subalgebra: nondegenerate and
    // indefinite means sl(2, R) rather than so(3).
    let ads: Vec<_> = SEMISIMPLE
        .iter()
        .map(|&a| table.ad(a, &SEMISIMPLE))
        .collect();
    let mut killing = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            killing[i][j] = (0..3)
                .map(|r| (0..3).map(|k| ads[i][r][k] * ads[j][k][r]).sum::<f64>())
                .sum();
        }
    }
    let det = det3(&killing);
    check("<X2,X3,X4> semisimple", det.abs() > 1e-9);
    let indefinite = !is_definite3(&killing);
    check("<X2,X3,X4> is sl(2,R) type", det.abs() > 1e-9 && indefinite);

    let abelian = RADICAL
        .iter()
        .all(|&a| RADICAL.iter().all(|&b| t[a][b].iter().all(|&c| c == 0.0)));
    check("<X1,X5> abelian", abelian);

    let ideal = (0..5).all(|a| {
        RADICAL
            .iter()
            .all(|&b| SEMISIMPLE.iter().all(|&c| t[a][b][c] == 0.0))
    });
    check("<X1,X5> ideal", ideal);

    LeviReport { assertions }
}

pub fn levi_structure_check() -> LeviReport {
    levi_structure_check_with(&StructureConstants::standard())
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Sylvester's criterion, for either sign.
fn is_definite3(m: &[[f64; 3]; 3]) -> bool {
    let d1 = m[0][0];
    let d2 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let d3 = det3(m);
    (d1 > 0.0 && d2 > 0.0 && d3 > 0.0) || (d1 < 0.0 && d2 > 0.0 && d3 < 0.0)
}

/// `|hamilton_rhs - (X1 - a0 X2 - a1 X3 - a2 X4)|`, max over components.
pub fn decompose_rhs_check(potential: &PotentialSpec, t: f64, s: PhasePoint) -> Result<f64> {
    let rhs = potential.hamilton_rhs(t, s)?;
    let [a0, a1, a2] = potential.coefficients(t);
    let field = combination(&[1.0, -a0, -a1, -a2, 0.0], s)?;
    Ok((rhs[0] - field[0]).abs().max((rhs[1] - field[1]).abs()))
}

/// An element `((λ1, λ5), A)` of `R^2 ⋊ SL(2, R)` with `A = [[α, β], [γ, δ]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub lambda1: f64,
    pub lambda5: f64,
    pub a: [[f64; 2]; 2],
}

const IDENTITY: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, 1.0]];

impl GroupElement {
    pub fn new(lambda1: f64, lambda5: f64, a: [[f64; 2]; 2]) -> Result<Self> {
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if (det - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("det A = {det}, expected 1")));
        }
        Ok(Self {
            lambda1,
            lambda5,
            a,
        })
    }

    pub fn identity() -> Self {
        Self::translation(0.0, 0.0)
    }

    pub fn translation(lambda1: f64, lambda5: f64) -> Self {
        Self {
            lambda1,
            lambda5,
            a: IDENTITY,
        }
    }

    pub fn linear(a: [[f64; 2]; 2]) -> Result<Self> {
        Self::new(0.0, 0.0, a)
    }

    pub fn is_translation(&self) -> bool {
        self.a == IDENTITY
    }

    pub fn is_linear(&self) -> bool {
        self.lambda1 == 0.0 && self.lambda5 == 0.0
    }
}

/// `Φ(g, (x, p)) = ((r̄ x̄ - λ1)/(r̄ + λ5), -(r̄ + λ5)^2)` with
/// `x̄ = (αx + β)/(γx + δ)`, `p̄ = p (γx + δ)^2`, `r̄ = sqrt(-p̄)`.
pub fn act(g: &GroupElement, s: PhasePoint) -> Result<PhasePoint> {
    s.require_domain()?;
    let [[alpha, beta], [gamma, delta]] = g.a;
    let den = gamma * s.x + delta;
    if den == 0.0 {
        return Err(Error::SingularFraction);
    }
    let x_bar = (alpha * s.x + beta) / den;
    let r_bar = s.root() * den.abs();
    let shifted = r_bar + g.lambda5;
    if !(shifted > 0.0) {
        return Err(Error::OrbitExit(shifted));
    }
    // With λ5 = 0 the pure Möbius part is evaluated without the round trip
    // through sqrt, so the identity acts exactly.
    let out = if g.lambda5 == 0.0 {
        PhasePoint::new(x_bar - g.lambda1 / r_bar, s.p * den * den)
    } else {
        PhasePoint::new((r_bar * x_bar - g.lambda1) / shifted, -shifted * shifted)
    };
    if !(out.x.is_finite() && out.p < 0.0) {
        return Err(Error::SingularFraction);
    }
    Ok(out)
}

/// Product inside one of the two distinguished subgroups: translations add,
/// matrices multiply.
pub fn compose_subgroup(g1: &GroupElement, g2: &GroupElement) -> Result<GroupElement> {
    if g1.is_translation() && g2.is_translation() {
        return Ok(GroupElement::translation(
            g1.lambda1 + g2.lambda1,
            g1.lambda5 + g2.lambda5,
        ));
    }
    if g1.is_linear() && g2.is_linear() {
        let (a, b) = (g1.a, g2.a);
        let m =
            std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]));
        return Ok(GroupElement {
            lambda1: 0.0,
            lambda5: 0.0,
            a: m,
        });
    }
    Err(Error::MixedElement)
}

/// One-parameter subgroups through the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Lambda1,
    Lambda5,
    /// `A = [[1, s], [0, 1]]`
    Beta,
    /// `A = [[1, 0], [s, 1]]`
    Gamma,
    /// `A = diag(e^s, e^-s)`
    Diag,
}

impl Direction {
    pub const ALL: [Direction; 5] = [
        Self::Lambda1,
        Self::Lambda5,
        Self::Beta,
        Self::Gamma,
        Self::Diag,
    ];

    pub fn element(self, s: f64) -> GroupElement {
        match self {
            Self::Lambda1 => GroupElement::translation(s, 0.0),
            Self::Lambda5 => GroupElement::translation(0.0, s),
            Self::Beta => GroupElement {
                lambda1: 0.0,
                lambda5: 0.0,
                a: [[1.0, s], [0.0, 1.0]],
            },
            Self::Gamma => GroupElement {
                lambda1: 0.0,
                lambda5: 0.0,
                a: [[1.0, 0.0], [s, 1.0]],
            },
            Self::Diag => GroupElement {
                lambda1: 0.0,
                lambda5: 0.0,
                a: [[s.exp(), 0.0], [0.0, (-s).exp()]],
            },
        }
    }

    /// Coefficients of the generator in the basis `X1..X5`:
    /// `-X1, -X5, X2, -X4, 2 X3`.
    pub fn generator(self) -> [f64; 5] {
        match self {
            Self::Lambda1 => [-1.0, 0.0, 0.0, 0.0, 0.0],
            Self::Lambda5 => [0.0, 0.0, 0.0, 0.0, -1.0],
            Self::Beta => [0.0, 1.0, 0.0, 0.0, 0.0],
            Self::Gamma => [0.0, 0.0, 0.0, -1.0, 0.0],
            Self::Diag => [0.0, 0.0, 2.0, 0.0, 0.0],
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::Lambda1 => "lambda1",
            Self::Lambda5 => "lambda5",
            Self::Beta => "beta",
            Self::Gamma => "gamma",
            Self::Diag => "diag",
        };
        f.write_str(name)
    }
}

pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Central difference of the action along a one-parameter subgroup.
pub fn fundamental_vf(direction: Direction, s: PhasePoint, h: f64) -> Result<[f64; 2]> {
    let plus = act(&direction.element(h), s)?;
    let minus = act(&direction.element(-h), s)?;
    Ok([
        (plus.x - minus.x) / (2.0 * h),
        (plus.p - minus.p) / (2.0 * h),
    ])
}
