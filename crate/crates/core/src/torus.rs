//! Strong chirality of mapping tori `M_f` of the n-torus.
//!
//! A matrix `F ∈ SL(n, Z)` gives a strongly chiral `(n+1)`-manifold when
//!
//! * (a) `det(F − I) = ±1`,
//! * (b) no `G ∈ GL(n, Z)` with `det G = −1` commutes with `F`,
//! * (c) no `G ∈ SL(n, Z)` satisfies `G·F = F⁻¹·G`.
//!
//! Each condition is certified by an exact argument; a bounded exhaustive
//! search for counterexamples runs alongside and is recorded, but never
//! upgrades an inapplicable argument to a pass.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::certificate::{
    json_int, json_matrix, json_poly, Certificate, CertificateKind, Check, Verdict,
};
use crate::error::{Error, Result};
use crate::exact::lattice::{intertwiner_lattice, intertwiner_operator};
use crate::exact::search::{enumerate_box_solutions, CancelToken, LinearSystem};
use crate::exact::{
    poly_is_squarefree, reciprocal_poly, sturm_real_root_count, IntMatrix, IntPolynomial,
};

/// Records how the degree of a self-map splits and which algebraic data the
/// three conditions constrain.
pub const RATIONALE: &str = "A self-map K of M_f is homotopic to a fibre-preserving map covering \
K' on the circle and restricting to K'' on the fibre T^n, and deg K = deg K' * det(K''_* on H_1(T^n)). \
Correspondence: F <-> f_* = psi(id) on pi_1(T^n); F^-1 <-> psi(-id); J^ab(id) = K'_*(id) = +-id in pi_1(S^1); \
G <-> J^(1) = K''_* on pi_1(T^n). Condition (a) makes pi_1(S^1) the abelianization of pi_1(M_f) and pi_1(T^n) \
its commutator subgroup. Degree -1 needs either deg K' = 1 and det G = -1 with G F = F G (excluded by (b)) \
or deg K' = -1 and det G = 1 with G F = F^-1 G (excluded by (c)).";

/// The companion matrix of `X^n − X + 1`: ones on the subdiagonal, last
/// column `(−1, 1, 0, …, 0)`.
pub fn build_family_matrix(n: usize) -> Result<IntMatrix> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "family matrix needs even n >= 2, got {n}"
        )));
    }
    let mut f = IntMatrix::zeros(n, n);
    for i in 1..n {
        f.set(i, i - 1, BigInt::one());
    }
    f.set(0, n - 1, BigInt::from(-1));
    f.set(1, n - 1, f.get(1, n - 1) + BigInt::one());
    Ok(f)
}

/// `X^n − X + 1`.
pub fn family_polynomial(n: usize) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[0] += 1;
    coeffs[1] -= 1;
    coeffs[n] += 1;
    IntPolynomial::new(coeffs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionA {
    pub det_f_minus_identity: BigInt,
    pub verdict: Verdict,
}

impl ConditionA {
    pub fn to_check(&self) -> Check {
        Check::new(
            "condition_a:det(F-I)=+-1",
            self.verdict,
            json!({ "det_f_minus_identity": json_int(&self.det_f_minus_identity) }),
        )
    }
}

pub fn certify_condition_a(f: &IntMatrix) -> Result<ConditionA> {
    if !f.is_square() {
        return Err(Error::NotSquare {
            rows: f.rows(),
            cols: f.cols(),
        });
    }
    let det = (f - &IntMatrix::identity(f.rows())).determinant()?;
    let verdict = Verdict::from_bool(det.abs().is_one());
    Ok(ConditionA {
        det_f_minus_identity: det,
        verdict,
    })
}

/// Outcome of an exhaustive bounded search for a counterexample matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FalsifierReport {
    pub bound: u64,
    /// Required determinant of a counterexample.
    pub target_det: i64,
    /// Number of box points solving the linear equation.
    pub solutions_in_box: u64,
    pub counterexamples: u64,
    /// Lexicographically first counterexample (row-major order).
    pub first_counterexample: Option<IntMatrix>,
}

impl FalsifierReport {
    pub fn to_json(&self) -> Value {
        json!({
            "bound": self.bound,
            "target_det": self.target_det,
            "solutions_in_box": self.solutions_in_box,
            "counterexamples": self.counterexamples,
            "first_counterexample": self.first_counterexample.as_ref().map(json_matrix),
        })
    }
}

/// Enumerates every `G` with entries in `[−bound, bound]` and `G·F1 = F2·G`,
/// recording those with `det G = target_det`.
pub fn falsify_intertwiner(
    f1: &IntMatrix,
    f2: &IntMatrix,
    target_det: i64,
    bound: u64,
    cancel: Option<&CancelToken>,
) -> Result<FalsifierReport> {
    let n = f1.rows();
    if bound == 0 {
        // the box holds only the zero matrix, which has determinant 0
        if f1.rows() != f2.rows() || !f1.is_square() || !f2.is_square() {
            return Err(Error::DimensionMismatch(
                "intertwiner needs square matrices of equal size".into(),
            ));
        }
        return Ok(FalsifierReport {
            bound,
            target_det,
            solutions_in_box: 1,
            counterexamples: 0,
            first_counterexample: None,
        });
    }
    let op = intertwiner_operator(f1, f2)?;
    let system = LinearSystem::from_dense(&op, n * n)?;
    let target = BigInt::from(target_det);
    let mut first: Option<Vec<i64>> = None;
    let mut counterexamples = 0u64;
    let stats = enumerate_box_solutions(&system, bound as i64, cancel, |g| {
        let m = IntMatrix::new(n, n, g.iter().map(|&x| BigInt::from(x)).collect()).unwrap();
        if m.determinant().unwrap() == target {
            counterexamples += 1;
            if first.as_deref().is_none_or(|cur| g < cur) {
                first = Some(g.to_vec());
            }
        }
    })?;
    Ok(FalsifierReport {
        bound,
        target_det,
        solutions_in_box: stats.solutions,
        counterexamples,
        first_counterexample: first
            .map(|g| IntMatrix::new(n, n, g.into_iter().map(BigInt::from).collect()).unwrap()),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionB {
    pub char_poly: IntPolynomial,
    pub squarefree: bool,
    /// Distinct real roots of the characteristic polynomial, when squarefree.
    pub real_root_count: Option<usize>,
    pub falsifier: FalsifierReport,
    pub verdict: Verdict,
}

impl ConditionB {
    pub fn to_check(&self) -> Check {
        Check::new(
            "condition_b:no_commuting_G_with_det_-1",
            self.verdict,
            json!({
                "char_poly": json_poly(&self.char_poly),
                "squarefree": self.squarefree,
                "real_root_count": self.real_root_count,
                "route": "distinct non-real conjugate eigenvalue pairs force det G = prod |p(lambda_i)|^2 >= 0",
                "falsifier": self.falsifier.to_json(),
            }),
        )
    }
}

/// Passes when `χ_F` is squarefree with no real roots: every rational matrix
/// commuting with `F` is then a polynomial in `F` and has non-negative
/// determinant.
pub fn certify_condition_b(f: &IntMatrix, brute_bound: u64) -> Result<ConditionB> {
    certify_condition_b_with(f, brute_bound, None)
}

pub fn certify_condition_b_with(
    f: &IntMatrix,
    brute_bound: u64,
    cancel: Option<&CancelToken>,
) -> Result<ConditionB> {
    let chi = f.char_poly()?;
    let squarefree = poly_is_squarefree(&chi)?;
    let real_root_count = if squarefree {
        Some(sturm_real_root_count(&chi)?)
    } else {
        None
    };
    let analytic = squarefree && real_root_count == Some(0);
    let falsifier = falsify_intertwiner(f, f, -1, brute_bound, cancel)?;
    let verdict = match (analytic, falsifier.counterexamples > 0) {
        (true, false) => Verdict::Pass,
        (true, true) => Verdict::Fail,
        (false, _) => Verdict::Inconclusive,
    };
    Ok(ConditionB {
        char_poly: chi,
        squarefree,
        real_root_count,
        falsifier,
        verdict,
    })
}

/// Binary form `a·x² + b·xy + c·y²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryQuadraticForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl BinaryQuadraticForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    pub fn is_negative_definite(&self) -> bool {
        self.a.is_negative() && self.discriminant().is_negative()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.discriminant().is_negative()
    }

    pub fn negate(&self) -> Self {
        Self {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
        }
    }

    /// Gauss-reduced representative of a positive definite form:
    /// `|b| ≤ a ≤ c`, and `b ≥ 0` when `|b| = a` or `a = c`. Two positive
    /// definite forms are `SL(2, Z)`-equivalent iff their reductions agree.
    pub fn reduced(&self) -> Option<Self> {
        if !self.is_positive_definite() {
            return None;
        }
        let (mut a, mut b, mut c) = (self.a.clone(), self.b.clone(), self.c.clone());
        loop {
            // normalize b into (-a, a]
            let two_a = BigInt::from(2) * &a;
            let k = num_integer::Integer::div_floor(&(&a - &b), &two_a);
            // x -> x + k y
            let nb = &b + &two_a * &k;
            let nc = &a * &k * &k + &b * &k + &c;
            b = nb;
            c = nc;
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b.is_negative() {
                b = -b;
            }
            return Some(Self { a, b, c });
        }
    }

    pub fn to_json(&self) -> Value {
        json!([json_int(&self.a), json_int(&self.b), json_int(&self.c)])
    }
}

/// `det(x·B1 + y·B2)` for 2×2 integer matrices.
pub fn determinant_form(b1: &IntMatrix, b2: &IntMatrix) -> Result<BinaryQuadraticForm> {
    let d1 = b1.determinant()?;
    let d2 = b2.determinant()?;
    let d12 = (b1 + b2).determinant()?;
    Ok(BinaryQuadraticForm {
        b: &d12 - &d1 - &d2,
        a: d1,
        c: d2,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConditionCRoute {
    /// `χ_F` differs from its reciprocal, so `F` and `F⁻¹` are not similar.
    NonPalindromic {
        reciprocal: IntPolynomial,
    },
    /// Palindromic `χ_F`; the intertwiner lattice and the determinant on it.
    DeterminantForm {
        lattice: Vec<IntMatrix>,
        form: Option<BinaryQuadraticForm>,
        never_one: bool,
    },
    Inapplicable {
        reason: String,
        lattice_rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionC {
    pub char_poly: IntPolynomial,
    pub route: ConditionCRoute,
    pub falsifier: FalsifierReport,
    pub verdict: Verdict,
}

impl ConditionC {
    pub fn to_check(&self) -> Check {
        let route = match &self.route {
            ConditionCRoute::NonPalindromic { reciprocal } => json!({
                "kind": "non-palindromic",
                "char_poly": json_poly(&self.char_poly),
                "reciprocal": json_poly(reciprocal),
            }),
            ConditionCRoute::DeterminantForm {
                lattice,
                form,
                never_one,
            } => json!({
                "kind": "determinant-form",
                "lattice_basis": lattice.iter().map(json_matrix).collect::<Vec<_>>(),
                "form": form.as_ref().map(BinaryQuadraticForm::to_json),
                "discriminant": form.as_ref().map(|q| json_int(&q.discriminant())),
                "negative_definite": form.as_ref().map(BinaryQuadraticForm::is_negative_definite),
                "reduced_negated_form": form.as_ref().and_then(|q| q.negate().reduced()).map(|r| r.to_json()),
                "never_represents_one": never_one,
            }),
            ConditionCRoute::Inapplicable {
                reason,
                lattice_rank,
            } => json!({
                "kind": "inapplicable",
                "reason": reason,
                "lattice_rank": lattice_rank,
            }),
        };
        Check::new(
            "condition_c:no_SL_G_with_GF=F^-1G",
            self.verdict,
            json!({ "route": route, "falsifier": self.falsifier.to_json() }),
        )
    }

    pub fn form(&self) -> Option<&BinaryQuadraticForm> {
        match &self.route {
            ConditionCRoute::DeterminantForm { form, .. } => form.as_ref(),
            _ => None,
        }
    }
}

pub fn certify_condition_c(f: &IntMatrix, brute_bound: u64) -> Result<ConditionC> {
    certify_condition_c_with(f, brute_bound, None)
}

pub fn certify_condition_c_with(
    f: &IntMatrix,
    brute_bound: u64,
    cancel: Option<&CancelToken>,
) -> Result<ConditionC> {
    let inv = f.inverse()?;
    let chi = f.char_poly()?;
    let reciprocal = reciprocal_poly(&chi)?;
    let n = f.rows();
    let route = if reciprocal != chi {
        ConditionCRoute::NonPalindromic { reciprocal }
    } else {
        let lattice = intertwiner_lattice(f, &inv)?;
        match (n, lattice.len()) {
            (_, 0) => ConditionCRoute::DeterminantForm {
                lattice,
                form: None,
                never_one: true,
            },
            (2, 1) => {
                let d = lattice[0].determinant()?;
                ConditionCRoute::DeterminantForm {
                    never_one: !d.is_one(),
                    lattice,
                    form: None,
                }
            }
            (2, 2) => {
                let form = determinant_form(&lattice[0], &lattice[1])?;
                let never_one = form.is_negative_definite();
                ConditionCRoute::DeterminantForm {
                    lattice,
                    form: Some(form),
                    never_one,
                }
            }
            (_, rank) => ConditionCRoute::Inapplicable {
                reason: "determinant is not a binary quadratic form on this lattice".into(),
                lattice_rank: rank,
            },
        }
    };
    let analytic = match &route {
        ConditionCRoute::NonPalindromic { .. } => true,
        ConditionCRoute::DeterminantForm { never_one, .. } => *never_one,
        ConditionCRoute::Inapplicable { .. } => false,
    };
    let falsifier = falsify_intertwiner(f, &inv, 1, brute_bound, cancel)?;
    let verdict = match (analytic, falsifier.counterexamples > 0) {
        (true, false) => Verdict::Pass,
        (true, true) => Verdict::Fail,
        (false, _) => Verdict::Inconclusive,
    };
    Ok(ConditionC {
        char_poly: chi,
        route,
        falsifier,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MappingTorusCertificate {
    pub n: usize,
    pub matrix: IntMatrix,
    pub determinant: BigInt,
    pub char_poly: IntPolynomial,
    pub condition_a: ConditionA,
    pub condition_b: ConditionB,
    pub condition_c: ConditionC,
    pub rationale: &'static str,
    pub verdict: Verdict,
}

impl MappingTorusCertificate {
    /// Dimension of the mapping torus, `n + 1`.
    pub fn dimension(&self) -> usize {
        self.n + 1
    }

    pub fn to_certificate(&self) -> Certificate {
        let det_check = Check::new(
            "det(F)=1",
            Verdict::from_bool(self.determinant.is_one()),
            json!({ "det": json_int(&self.determinant) }),
        );
        Certificate::builder(
            CertificateKind::MappingTorus,
            format!(
                "the {}-dimensional mapping torus of T^{} under F is strongly chiral",
                self.n + 1,
                self.n
            ),
        )
        .dimension(self.dimension() as u64)
        .input("n", self.n)
        .input("brute_bound", self.condition_b.falsifier.bound)
        .input("matrix", json_matrix(&self.matrix))
        .check(det_check)
        .check(self.condition_a.to_check())
        .check(self.condition_b.to_check())
        .check(self.condition_c.to_check())
        .witness("char_poly", json_poly(&self.char_poly))
        .witness("char_poly_text", self.char_poly.to_string())
        .witness("rationale", RATIONALE)
        .reference("a reversing map of the mapping torus induces an integer matrix commuting with F of determinant -1, or one conjugating F to its inverse")
        .reference("family X^n - X + 1")
        .reference("degree formula deg K' * deg K''")
        .finish()
    }
}

/// Certifies the mapping torus for an arbitrary `F` with `det F = 1`.
pub fn certify_matrix(f: &IntMatrix, brute_bound: u64) -> Result<MappingTorusCertificate> {
    if !f.is_square() {
        return Err(Error::NotSquare {
            rows: f.rows(),
            cols: f.cols(),
        });
    }
    let determinant = f.determinant()?;
    if !determinant.is_one() {
        return Err(Error::InvalidArgument(format!(
            "F must lie in SL(n, Z), det = {determinant}"
        )));
    }
    let condition_a = certify_condition_a(f)?;
    let condition_b = certify_condition_b(f, brute_bound)?;
    let condition_c = certify_condition_c(f, brute_bound)?;
    let verdict = condition_a
        .verdict
        .combine(condition_b.verdict)
        .combine(condition_c.verdict);
    Ok(MappingTorusCertificate {
        n: f.rows(),
        matrix: f.clone(),
        determinant,
        char_poly: condition_b.char_poly.clone(),
        condition_a,
        condition_b,
        condition_c,
        rationale: RATIONALE,
        verdict,
    })
}

/// Builds the family matrix for even `n` and certifies its mapping torus.
pub fn certify_mapping_torus(n: usize, brute_bound: u64) -> Result<MappingTorusCertificate> {
    let f = build_family_matrix(n)?;
    certify_matrix(&f, brute_bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_matrix_small_cases() {
        let f2 = build_family_matrix(2).unwrap();
        assert_eq!(f2, IntMatrix::from_rows(&[[0, -1], [1, 1]]));
        assert_eq!(
            f2.char_poly().unwrap(),
            IntPolynomial::from_i64(&[1, -1, 1])
        );
        let f4 = build_family_matrix(4).unwrap();
        let chi = f4.char_poly().unwrap();
        assert_eq!(chi, family_polynomial(4));
        assert_eq!(chi.eval(&BigInt::zero()), BigInt::one());
        assert_eq!(chi.eval(&BigInt::one()), BigInt::one());
        assert!(build_family_matrix(3).is_err());
        assert!(build_family_matrix(0).is_err());
    }

    #[test]
    fn condition_a_examples() {
        let a2 = certify_condition_a(&build_family_matrix(2).unwrap()).unwrap();
        assert_eq!(
            (a2.det_f_minus_identity.clone(), a2.verdict),
            (BigInt::one(), Verdict::Pass)
        );
        let id = certify_condition_a(&IntMatrix::identity(2)).unwrap();
        assert_eq!(
            (id.det_f_minus_identity.clone(), id.verdict),
            (BigInt::zero(), Verdict::Fail)
        );
        let a6 = certify_condition_a(&build_family_matrix(6).unwrap()).unwrap();
        assert_eq!(a6.det_f_minus_identity, BigInt::one());
    }

    #[test]
    fn condition_b_examples() {
        let b2 = certify_condition_b(&build_family_matrix(2).unwrap(), 10).unwrap();
        assert_eq!(b2.verdict, Verdict::Pass);
        assert_eq!(b2.real_root_count, Some(0));
        assert_eq!(b2.falsifier.counterexamples, 0);

        let reflect = IntMatrix::diagonal(&[1, -1]);
        let br = certify_condition_b(&reflect, 2).unwrap();
        assert_eq!(br.verdict, Verdict::Inconclusive);
        assert_eq!(
            br.falsifier.first_counterexample,
            Some(IntMatrix::diagonal(&[-1, 1]))
        );

        let b4 = certify_condition_b(&build_family_matrix(4).unwrap(), 5).unwrap();
        assert_eq!(b4.verdict, Verdict::Pass);
    }

    #[test]
    fn condition_c_examples() {
        let c4 = certify_condition_c(&build_family_matrix(4).unwrap(), 1).unwrap();
        assert_eq!(c4.verdict, Verdict::Pass);
        assert!(matches!(c4.route, ConditionCRoute::NonPalindromic { .. }));

        let c2 = certify_condition_c(&build_family_matrix(2).unwrap(), 10).unwrap();
        assert_eq!(c2.verdict, Verdict::Pass);
        let form = c2.form().unwrap();
        assert!(form.is_negative_definite());
        assert_eq!(
            form.negate().reduced(),
            Some(BinaryQuadraticForm::new(1, 1, 1))
        );

        let cid = certify_condition_c(&IntMatrix::identity(2), 1).unwrap();
        assert_eq!(cid.verdict, Verdict::Inconclusive);
        assert!(cid.falsifier.counterexamples > 0);

        assert_eq!(
            certify_condition_c(&IntMatrix::diagonal(&[2, 1]), 1).unwrap_err(),
            Error::NotUnimodular
        );
    }

    #[test]
    fn form_reduction() {
        // x^2 + 3xy + 3y^2 ~ x^2 + xy + y^2 via x -> x - y
        let q = BinaryQuadraticForm::new(1, 3, 3);
        assert_eq!(q.reduced(), Some(BinaryQuadraticForm::new(1, 1, 1)));
        assert_eq!(
            BinaryQuadraticForm::new(5, 0, 2).reduced(),
            Some(BinaryQuadraticForm::new(2, 0, 5))
        );
        assert_eq!(BinaryQuadraticForm::new(1, 0, -1).reduced(), None);
    }

    #[test]
    fn whole_certificates() {
        let c2 = certify_mapping_torus(2, 10).unwrap();
        assert_eq!(c2.verdict, Verdict::Pass);
        assert_eq!(c2.dimension(), 3);
        let c8 = certify_mapping_torus(8, 1).unwrap();
        assert_eq!(c8.verdict, Verdict::Pass);
        assert!(certify_mapping_torus(5, 1).is_err());
        let cert = c2.to_certificate();
        assert_eq!(cert.verdict, Verdict::Pass);
        assert!(cert.hash_is_valid());
    }
}
