//! Self-map degrees of lens spaces and lens spaces whose orientation
//! reversals all have large order.
//!
//! A self-map of `L_t(q_1, …, q_n)` inducing multiplication by `e` on
//! `π_1 = Z/t` has degree `d` exactly when `e^n ≡ d (mod t)`.

use std::collections::BTreeMap;

use serde_json::json;

use crate::certificate::{Certificate, CertificateKind, Check, Verdict};
use crate::error::{Error, Result};
use crate::exact::modular::{
    factorize, is_prime, multiplicative_order, pow_mod, primitive_root, two_adic_valuation,
    MinusOneQr,
};
use crate::exact::{minus_one_is_qr, CancelToken};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LensSpace {
    t: u64,
    params: Vec<u64>,
}

impl LensSpace {
    /// Parameters are reduced mod `t` and must be units.
    pub fn new(t: u64, params: &[u64]) -> Result<Self> {
        if t < 2 {
            return Err(Error::InvalidArgument(format!(
                "lens space order must be at least 2, got {t}"
            )));
        }
        if params.is_empty() {
            return Err(Error::InvalidArgument(
                "lens space needs at least one rotation parameter".into(),
            ));
        }
        let params: Vec<u64> = params.iter().map(|q| q % t).collect();
        if let Some(q) = params.iter().find(|&&q| num_integer::gcd(q, t) != 1) {
            return Err(Error::InvalidArgument(format!(
                "parameter {q} is not coprime to {t}"
            )));
        }
        Ok(Self { t, params })
    }

    pub fn order(&self) -> u64 {
        self.t
    }

    pub fn params(&self) -> &[u64] {
        &self.params
    }

    /// Number of complex coordinates.
    pub fn n(&self) -> u64 {
        self.params.len() as u64
    }

    pub fn dimension(&self) -> u64 {
        2 * self.n() - 1
    }

    pub fn name(&self) -> String {
        let q: Vec<String> = self.params.iter().map(u64::to_string).collect();
        format!("L_{}({})", self.t, q.join(","))
    }

    fn json(&self) -> serde_json::Value {
        json!({ "t": self.t, "q": self.params, "dimension": self.dimension() })
    }
}

/// All residues `e^n mod t`, each with its smallest `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSet {
    pub modulus: u64,
    pub exponent: u64,
    pub witnesses: BTreeMap<u64, u64>,
}

impl DegreeSet {
    pub fn contains(&self, d: u64) -> bool {
        self.witnesses.contains_key(&(d % self.modulus))
    }

    pub fn witness(&self, d: u64) -> Option<u64> {
        self.witnesses.get(&(d % self.modulus)).copied()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.witnesses.keys().copied().collect()
    }
}

pub fn degree_set(lens: &LensSpace) -> DegreeSet {
    power_image(lens.t, lens.n())
}

/// `{e^n mod t : e ∈ Z/t}`.
pub fn power_image(t: u64, n: u64) -> DegreeSet {
    let mut witnesses = BTreeMap::new();
    for e in 0..t {
        witnesses.entry(pow_mod(e, n, t)).or_insert(e);
    }
    DegreeSet {
        modulus: t,
        exponent: n,
        witnesses,
    }
}

/// Whether `−1` is an `n`-th power mod `t`, from the structure of the unit
/// group: for odd `n` take `e = −1`; for even `n` it fails when `4 | t`, and
/// otherwise holds iff every odd prime `p | t` has `v₂(n) < v₂(p − 1)`.
pub fn minus_one_is_nth_power(t: u64, n: u64) -> Result<bool> {
    if t < 2 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "need t >= 2 and n >= 1, got t = {t}, n = {n}"
        )));
    }
    if n % 2 == 1 {
        return Ok(true);
    }
    let factors = factorize(t)?;
    if factors.get(&2).is_some_and(|&e| e >= 2) {
        return Ok(false);
    }
    let vn = two_adic_valuation(n);
    Ok(factors
        .keys()
        .filter(|&&p| p != 2)
        .all(|&p| vn < two_adic_valuation(p - 1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LensChirality {
    StronglyChiral,
    /// `e^n ≡ −1 (mod t)` for this smallest `e`.
    DegreeMinusOne {
        witness: u64,
    },
}

/// Decides strong chirality; the structural criterion and the witness sweep
/// must agree.
pub fn is_strongly_chiral(lens: &LensSpace) -> Result<LensChirality> {
    let t = lens.t;
    if t <= 2 {
        return Err(Error::InvalidArgument(format!(
            "chirality of lens spaces needs t > 2, got {t}"
        )));
    }
    let n = lens.n();
    let expected = minus_one_is_nth_power(t, n)?;
    let found = if expected {
        (1..t).find(|&e| pow_mod(e, n, t) == t - 1)
    } else {
        None
    };
    assert_eq!(
        found.is_some(),
        expected,
        "power criterion disagrees with witness sweep for t = {t}, n = {n}"
    );
    Ok(match found {
        Some(witness) => LensChirality::DegreeMinusOne { witness },
        None => LensChirality::StronglyChiral,
    })
}

pub fn chirality_certificate(lens: &LensSpace) -> Result<Certificate> {
    let verdict = is_strongly_chiral(lens)?;
    let (v, data) = match verdict {
        LensChirality::StronglyChiral => (Verdict::Pass, json!({ "status": "STRONGLY_CHIRAL" })),
        LensChirality::DegreeMinusOne { witness } => (
            Verdict::Fail,
            json!({ "status": "DEGREE_MINUS_ONE", "witness_e": witness, "e^n mod t": lens.t - 1 }),
        ),
    };
    Ok(Certificate::builder(
        CertificateKind::LensChirality,
        format!("{} admits no self-map of degree -1", lens.name()),
    )
    .dimension(lens.dimension())
    .input("lens", lens.json())
    .check(Check::new("no e with e^n = -1 mod t", v, data))
    .witness(
        "note",
        "self-map degrees of a lens space are exactly the residues e^n mod t, so the sweep is exhaustive at the homotopy level",
    )
    .reference("degree equation e^n = d mod t for lens space self-maps")
    .reference("finite fundamental group is Hopfian")
    .finish())
}

pub fn degrees_certificate(lens: &LensSpace) -> Certificate {
    let set = degree_set(lens);
    let witnesses: BTreeMap<String, u64> = set
        .witnesses
        .iter()
        .map(|(d, e)| (d.to_string(), *e))
        .collect();
    Certificate::builder(
        CertificateKind::LensChirality,
        format!(
            "the self-map degrees of {} mod {} are the n-th power residues",
            lens.name(),
            lens.t
        ),
    )
    .dimension(lens.dimension())
    .input("lens", lens.json())
    .check(Check::informational(
        "degree set",
        Verdict::Pass,
        json!({
            "degrees": set.degrees(),
            "witnesses": witnesses,
            "contains_minus_one": set.contains(lens.t - 1),
        }),
    ))
    .reference("degree equation e^n = d mod t for lens space self-maps")
    .finish()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingEvidence {
    pub t: u64,
    pub dimension: u64,
    pub qr: MinusOneQr,
    pub verdict: Verdict,
}

impl LinkingEvidence {
    pub fn to_check(&self) -> Check {
        Check::new(
            format!("linking form: -1 not a square mod {}", self.t),
            self.verdict,
            json!({ "t": self.t, "dimension": self.dimension, "minus_one_is_qr": self.qr.is_qr, "witness_k": self.qr.witness }),
        )
    }

    pub fn to_certificate(&self) -> Certificate {
        Certificate::builder(
            CertificateKind::Obstruction,
            format!(
                "a closed {}-manifold with torsion linking group Z/{} in the middle is strongly chiral",
                self.dimension, self.t
            ),
        )
        .dimension(self.dimension)
        .input("t", self.t)
        .input("dimension", self.dimension)
        .check(self.to_check())
        .reference("linking form obstruction in dimensions 3 mod 4")
        .finish()
    }
}

/// In dimension `4k − 1` with `H_{2k−1} ≅ Z/t`, orientation reversal
/// negates the linking form, forcing `−1` to be a square mod `t`.
pub fn linking_obstruction(t: u64, dimension: u64) -> Result<LinkingEvidence> {
    if dimension % 4 != 3 {
        return Err(Error::InvalidArgument(format!(
            "linking obstruction needs dimension 3 mod 4, got {dimension}"
        )));
    }
    let qr = minus_one_is_qr(t)?;
    let verdict = if qr.is_qr {
        Verdict::NoObstruction
    } else {
        Verdict::Pass
    };
    Ok(LinkingEvidence {
        t,
        dimension,
        qr,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderEvidence {
    pub t: u64,
    pub n: u64,
    pub order: u64,
    /// Number of `e` with `e^order ≡ 1` that were checked.
    pub units_checked: u64,
    pub counterexample: Option<u64>,
    /// `order | n`, so `e^n ≡ 1 ≢ −1` without any sweep.
    pub closed_argument: bool,
    pub verdict: Verdict,
}

impl OrderEvidence {
    pub fn to_check(&self) -> Check {
        Check::new(
            format!("no degree -1 self-map of order dividing {}", self.order),
            self.verdict,
            json!({
                "t": self.t,
                "n": self.n,
                "order": self.order,
                "units_checked": self.units_checked,
                "counterexample_e": self.counterexample,
                "closed_argument": self.closed_argument,
            }),
        )
    }
}

/// A self-map of order `m` induces `e` with `e^m ≡ 1`; sweeping all such `e`
/// rules out degree `−1` for maps of order dividing `m`.
pub fn no_reversal_of_order(lens: &LensSpace, m: u64) -> Result<OrderEvidence> {
    no_reversal_of_order_with(lens, m, None)
}

pub fn no_reversal_of_order_with(
    lens: &LensSpace,
    m: u64,
    cancel: Option<&CancelToken>,
) -> Result<OrderEvidence> {
    let (t, n) = (lens.t, lens.n());
    if t <= 2 {
        return Err(Error::InvalidArgument(format!(
            "order sweep needs t > 2, got {t}"
        )));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    let mut units_checked = 0;
    let mut counterexample = None;
    for e in 1..t {
        if e % 65536 == 0 && cancel.is_some_and(CancelToken::is_cancelled) {
            return Err(Error::Cancelled);
        }
        if pow_mod(e, m, t) != 1 {
            continue;
        }
        units_checked += 1;
        if pow_mod(e, n, t) == t - 1 {
            counterexample = Some(e);
            break;
        }
    }
    let closed_argument = n % m == 0;
    if closed_argument {
        assert!(
            counterexample.is_none(),
            "order {m} divides n = {n} but a reversal was found"
        );
    }
    Ok(OrderEvidence {
        t,
        n,
        order: m,
        units_checked,
        counterexample,
        closed_argument,
        verdict: Verdict::from_bool(counterexample.is_none()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalOrderCertificate {
    pub k: u32,
    pub p: u64,
    /// Odd part of `p − 1`.
    pub l: u64,
    pub c: u64,
    pub n: u64,
    pub lens: LensSpace,
    pub primitive_root_order: u64,
    /// `c^n mod p`, which must be `p − 1`.
    pub c_pow_n: u64,
    /// `(c^l)^n mod p`: the degree of `f^l`.
    pub reverser_degree: u64,
    pub order_sweep: OrderEvidence,
    pub verdict: Verdict,
}

impl MinimalOrderCertificate {
    pub fn to_certificate(&self) -> Certificate {
        let p = self.p;
        Certificate::builder(
            CertificateKind::LensMinOrder,
            format!(
                "{}-dimensional lens space L_{}(c, c^2, ..., c^{}) with c = {} is amphicheiral and every orientation-reversing self-diffeomorphism of it has order divisible by 2^{}",
                self.lens.dimension(),
                p,
                self.n,
                self.c,
                self.k
            ),
        )
        .dimension(self.lens.dimension())
        .input("k", self.k)
        .input("p", p)
        .check(Check::new(
            "p prime with p - 1 = 2^k * l, l odd",
            Verdict::Pass,
            json!({ "p": p, "l": self.l, "k": self.k }),
        ))
        .check(Check::new(
            "c is a primitive root mod p",
            Verdict::from_bool(self.primitive_root_order == p - 1),
            json!({ "c": self.c, "order": self.primitive_root_order }),
        ))
        .check(Check::new(
            "c^n = -1 mod p",
            Verdict::from_bool(self.c_pow_n == p - 1),
            json!({ "n": self.n, "c^n mod p": self.c_pow_n }),
        ))
        .check(Check::new(
            "f^l reverses orientation and has order 2^k",
            Verdict::from_bool(self.reverser_degree == p - 1),
            json!({
                "order_of_f": p - 1,
                "order_of_f^l": (p - 1) / self.l,
                "degree_of_f^l mod p": self.reverser_degree,
            }),
        ))
        .check(self.order_sweep.to_check())
        .witness("lens", self.lens.json())
        .witness(
            "odd_part_reduction",
            "if g reverses orientation with order 2^j * r, r odd, then g^r reverses orientation with order 2^j",
        )
        .reference("lens spaces L_p(c, c^2, ..., c^n) with orbit-permuting diffeomorphism")
        .reference("primes in the progression m * 2^k + 1 (Dirichlet)")
        .reference("no degree -1 self-map of order dividing n")
        .finish()
    }
}

/// Smallest prime `p ≥ 5` with `v₂(p − 1) = k`, the lens space
/// `L_p(c, c², …, c^n)` for the smallest primitive root `c`, `n = (p−1)/2`,
/// and the checks that its orientation reversals have order divisible by `2^k`.
pub fn construct_minimal_order(k: u32, search_limit: u64) -> Result<MinimalOrderCertificate> {
    if k == 0 || k >= 63 {
        return Err(Error::InvalidArgument(format!(
            "k must lie in 1..63, got {k}"
        )));
    }
    let step = 1u64 << k;
    let mut p = None;
    let mut m = 1u64;
    while let Some(candidate) = m.checked_mul(step).and_then(|x| x.checked_add(1)) {
        if candidate > search_limit {
            break;
        }
        if candidate >= 5 && is_prime(candidate)? {
            p = Some(candidate);
            break;
        }
        m += 2;
    }
    let p = p.ok_or(Error::SearchExhausted {
        limit: search_limit,
    })?;
    let l = (p - 1) >> k;
    let c = primitive_root(p)?.value();
    let n = (p - 1) / 2;
    let params: Vec<u64> = (1..=n).map(|i| pow_mod(c, i, p)).collect();
    let lens = LensSpace::new(p, &params)?;
    let primitive_root_order = multiplicative_order(c, p).expect("c is a unit");
    let c_pow_n = pow_mod(c, n, p);
    let reverser_degree = pow_mod(pow_mod(c, l, p), n, p);
    let order_sweep = no_reversal_of_order(&lens, 1 << (k - 1))?;
    let verdict = Verdict::from_bool(
        primitive_root_order == p - 1
            && c_pow_n == p - 1
            && reverser_degree == p - 1
            && order_sweep.verdict.is_pass(),
    );
    Ok(MinimalOrderCertificate {
        k,
        p,
        l,
        c,
        n,
        lens,
        primitive_root_order,
        c_pow_n,
        reverser_degree,
        order_sweep,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_sets() {
        let l5 = LensSpace::new(5, &[1, 1]).unwrap();
        let d = degree_set(&l5);
        assert_eq!(d.degrees(), vec![0, 1, 4]);
        assert_eq!(d.witness(4), Some(2));
        let l7 = LensSpace::new(7, &[1, 1]).unwrap();
        assert_eq!(degree_set(&l7).degrees(), vec![0, 1, 2, 4]);
        assert_eq!(
            degree_set(&LensSpace::new(2, &[1, 1, 1]).unwrap()).degrees(),
            vec![0, 1]
        );
    }

    #[test]
    fn chirality_examples() {
        let chir = |t, q: &[u64]| is_strongly_chiral(&LensSpace::new(t, q).unwrap()).unwrap();
        assert_eq!(chir(7, &[1, 1]), LensChirality::StronglyChiral);
        assert_eq!(
            chir(5, &[1, 1]),
            LensChirality::DegreeMinusOne { witness: 2 }
        );
        assert_eq!(
            chir(5, &[2, 4]),
            LensChirality::DegreeMinusOne { witness: 2 }
        );
        assert!(is_strongly_chiral(&LensSpace::new(2, &[1]).unwrap()).is_err());
        assert!(LensSpace::new(6, &[2]).is_err());
        assert!(LensSpace::new(1, &[1]).is_err());
    }

    #[test]
    fn linking_examples() {
        assert_eq!(linking_obstruction(6, 7).unwrap().verdict, Verdict::Pass);
        assert_eq!(
            linking_obstruction(5, 3).unwrap().verdict,
            Verdict::NoObstruction
        );
        assert!(linking_obstruction(3, 5).is_err());
    }

    #[test]
    fn order_sweeps() {
        let l = LensSpace::new(5, &[2, 4]).unwrap();
        let two = no_reversal_of_order(&l, 2).unwrap();
        assert_eq!(
            (two.verdict, two.units_checked, two.closed_argument),
            (Verdict::Pass, 2, true)
        );
        let four = no_reversal_of_order(&l, 4).unwrap();
        assert_eq!(
            (four.verdict, four.counterexample),
            (Verdict::Fail, Some(2))
        );
        let l7 = LensSpace::new(7, &[1, 2, 3]).unwrap();
        assert!(no_reversal_of_order(&l7, 3).unwrap().closed_argument);
        assert!(no_reversal_of_order(&l, 0).is_err());
    }

    #[test]
    fn construction_small_k() {
        let expect = [(1, 7, 3, 3), (2, 5, 2, 2), (3, 41, 6, 20), (4, 17, 3, 8)];
        for (k, p, c, n) in expect {
            let cert = construct_minimal_order(k, 1 << 20).unwrap();
            assert_eq!((cert.p, cert.c, cert.n), (p, c, n), "k = {k}");
            assert_eq!(cert.lens.dimension(), p - 2);
            assert_eq!(cert.verdict, Verdict::Pass);
            assert!(cert.to_certificate().all_mandatory_pass());
        }
        assert_eq!(
            construct_minimal_order(5, 10),
            Err(Error::SearchExhausted { limit: 10 })
        );
    }
}
