//! Exact p-adic local densities, L-value closed forms, and the Siegel count
//! assembly for idoneal ternary forms.
//!
//! The density d_{f,p}(n) = lim p^{−2k}·#{v mod p^k : f(v) ≡ n} is computed by
//! stratified Hensel lifting (never a raw (p^k)³ scan for large k), iterated
//! to stabilization.  For p ∤ 2Δ the two-case closed form is available, and
//! the full product over p collapses to 32·(2^A·D/Δ)·r with the L-value's
//! π/√m cancelling against the archimedean factor — so the Siegel count comes
//! out as an exact rational that must be a nonnegative integer.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, four_power_decompose, is_squarefree, kronecker, ord_p, prime_divisors};
use crate::binaryqf::class_number;
use crate::forms::TernaryForm;

fn br(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A stabilized local density with the lift depth that achieved it.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalDensityValue {
    pub value: BigRational,
    pub p: u64,
    pub k_used: u32,
}

/// Density computation failure modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DensityError {
    /// No stabilization within the configured depth; pathological input.
    DepthExceeded { p: u64, n: u64, max_k: u32 },
    /// p > 97 dividing 2Δ needs a p³-point stratification we refuse to run.
    UnsupportedPrime { p: u64 },
}

impl fmt::Display for DensityError {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityError::DepthExceeded { p, n, max_k } => write!(
                w,
                "local density at p={p}, n={n} did not stabilize within k={max_k}"
            ),
            DensityError::UnsupportedPrime { p } => {
                write!(w, "prime {p} divides 2Δ and exceeds the stratification cap")
            }
        }
    }
}

impl std::error::Error for DensityError {}

/// Counts solutions of Q(v) + l·v + c ≡ 0 (mod p^j) by recursive lifting,
/// memoized on (j, l mod p^j, c mod p^j).
struct HenselCounter {
    form: TernaryForm,
    gram: [[i64; 3]; 3],
    p: u64,
    memo: HashMap<(u32, [u64; 3], u64), u128>,
}

impl HenselCounter {
    fn new(form: TernaryForm, p: u64) -> Self {
        HenselCounter {
            form,
            gram: form.gram(),
            p,
            memo: HashMap::new(),
        }
    }

    fn g_value(&self, v: [i128; 3], l: [i128; 3], c: i128) -> i128 {
        let q = self.form.evaluate_i128(v[0], v[1], v[2]);
        q + l[0] * v[0] + l[1] * v[1] + l[2] * v[2] + c
    }

    fn gradient(&self, v: [i128; 3], l: [i128; 3]) -> [i128; 3] {
        let mut grad = [0i128; 3];
        for i in 0..3 {
            grad[i] = l[i];
            for (k, vk) in v.iter().enumerate() {
                grad[i] += self.gram[i][k] as i128 * vk;
            }
        }
        grad
    }

    /// #{v mod p^j : Q(v) + l·v + c ≡ 0 (mod p^j)}.
    fn count(&mut self, j: u32, l: [i128; 3], c: i128) -> u128 {
        if j == 0 {
            return 1;
        }
        let p = self.p as i128;
        let pj = p.checked_pow(j).expect("p^j overflow");
        let lr = [l[0].rem_euclid(pj), l[1].rem_euclid(pj), l[2].rem_euclid(pj)];
        let cr = c.rem_euclid(pj);
        let key = (j, [lr[0] as u64, lr[1] as u64, lr[2] as u64], cr as u64);
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        let result = self.count_uncached(j, lr, cr, pj);
        self.memo.insert(key, result);
        result
    }

    fn count_uncached(&mut self, j: u32, l: [i128; 3], c: i128, pj: i128) -> u128 {
        let p = self.p as i128;
        // Direct scan only while p^j stays tiny (well under the p^j ≤ 100
        // ceiling raw scans must never exceed); lifting is cheaper beyond.
        if pj <= 31 {
            let mut total = 0u128;
            for x in 0..pj {
                for y in 0..pj {
                    for z in 0..pj {
                        if self.g_value([x, y, z], l, c).rem_euclid(pj) == 0 {
                            total += 1;
                        }
                    }
                }
            }
            return total;
        }
        if j == 1 {
            return self.count_mod_p(l, c);
        }
        // Stratify v ≡ v₀ (mod p): smooth points (∇g ≢ 0 mod p) contribute
        // p^{2(j−1)} each; singular points recurse two levels down via
        // g(v₀ + pw) = g(v₀) + p²·(G₀·w + Q(w)) with ∇g(v₀) = p·G₀.
        if self.p > 97 {
            return self.count_large_prime(j, l, c);
        }
        let mut total = 0u128;
        let smooth_weight = (p as u128).pow(2 * (j - 1));
        for x in 0..p {
            for y in 0..p {
                for z in 0..p {
                    let v0 = [x, y, z];
                    let g0 = self.g_value(v0, l, c);
                    if g0.rem_euclid(p) != 0 {
                        continue;
                    }
                    let grad = self.gradient(v0, l);
                    if grad.iter().any(|&gi| gi.rem_euclid(p) != 0) {
                        total += smooth_weight;
                    } else if g0.rem_euclid(p * p) == 0 {
                        let l2 = [grad[0] / p, grad[1] / p, grad[2] / p];
                        total += (p as u128).pow(3) * self.count(j - 2, l2, g0 / (p * p));
                    }
                }
            }
        }
        total
    }

    /// #{v mod p : g(v) ≡ 0}, odd p, in O(p²) via the root count of the
    /// quadratic in x: a·x² + B(y,z)·x + C(y,z) has 1 + (disc/p) roots when
    /// a ≢ 0, handling the degenerate linear/constant cases directly.
    fn count_mod_p(&self, l: [i128; 3], c: i128) -> u128 {
        let p = self.p as i128;
        assert!(p > 2, "p=2 is always handled by the direct scan");
        let TernaryForm { a, b, c: cc, d, e, f } = self.form;
        let (a, b, cc, d, e, f) = (a as i128, b as i128, cc as i128, d as i128, e as i128, f as i128);
        let mut total = 0u128;
        for y in 0..p {
            for z in 0..p {
                let bx = (f * y + e * z + l[0]).rem_euclid(p);
                let cx = (b * y * y + cc * z * z + d * y * z + l[1] * y + l[2] * z + c)
                    .rem_euclid(p);
                let ax = a.rem_euclid(p);
                total += if ax != 0 {
                    let disc = (bx * bx - 4 * ax * cx).rem_euclid(p);
                    (1 + kronecker(disc as i64, p as i64) as i128).max(0) as u128
                } else if bx != 0 {
                    1
                } else if cx == 0 {
                    p as u128
                } else {
                    0
                };
            }
        }
        total
    }

    /// j ≥ 2 at p > 97: closed-form smooth count plus the unique singular
    /// candidate from the invertible-Gram linear system (requires p ∤ 2Δ).
    fn count_large_prime(&mut self, j: u32, l: [i128; 3], c: i128) -> u128 {
        let p = self.p as i128;
        let two_delta = 2 * self.form.discriminant() as i128;
        if two_delta.rem_euclid(p) == 0 {
            panic!("{}", DensityError::UnsupportedPrime { p: self.p });
        }
        let n1 = self.count_mod_p(l, c);
        // Singular point: Gram·v ≡ −l (mod p), unique since det(Gram) = 2Δ is
        // a unit; solve by Cramer.
        let det = two_delta.rem_euclid(p);
        let det_inv = mod_inverse(det, p);
        let g = self.gram.map(|row| row.map(|x| x as i128));
        let rhs = [-l[0], -l[1], -l[2]];
        let mut v0 = [0i128; 3];
        for i in 0..3 {
            let mut m = g;
            for (row, &r) in m.iter_mut().zip(rhs.iter()) {
                row[i] = r;
            }
            let det_i = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            v0[i] = (det_i.rem_euclid(p) * det_inv).rem_euclid(p);
        }
        let g0 = self.g_value(v0, l, c);
        let mut singular_on_quadric = 0u128;
        let mut singular_lift = 0u128;
        if g0.rem_euclid(p) == 0 {
            singular_on_quadric = 1;
            if g0.rem_euclid(p * p) == 0 {
                let grad = self.gradient(v0, l);
                debug_assert!(grad.iter().all(|&gi| gi.rem_euclid(p) == 0));
                let l2 = [grad[0] / p, grad[1] / p, grad[2] / p];
                singular_lift = (p as u128).pow(3) * self.count(j - 2, l2, g0 / (p * p));
            }
        }
        (n1 - singular_on_quadric) * (p as u128).pow(2 * (j - 1)) + singular_lift
    }
}

fn mod_inverse(a: i128, p: i128) -> i128 {
    // Fermat: a^{p−2} mod p.
    let mut base = a.rem_euclid(p);
    let mut exp = p - 2;
    let mut acc = 1i128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// p^{−2k} · #{(x,y,z) mod p^k : f(x,y,z) ≡ n (mod p^k)}, exactly.
pub fn local_density_finite(form: &TernaryForm, p: u64, n: u64, k: u32) -> BigRational {
    assert!(k >= 1, "need k ≥ 1");
    let mut counter = HenselCounter::new(*form, p);
    let count = counter.count(k, [0, 0, 0], -(n as i128));
    BigRational::new(
        BigInt::from(count),
        BigInt::from(p).pow(2 * k),
    )
}

/// Iterate k until two consecutive densities agree and k > ord_p(4nΔ).
pub fn local_density(form: &TernaryForm, p: u64, n: u64) -> Result<LocalDensityValue, DensityError> {
    let ord = ord_p(4 * n.max(1) as i64 * form.discriminant().abs().max(1), p);
    local_density_with_depth(form, p, n, ord + 12)
}

/// As `local_density` with an explicit depth ceiling.
pub fn local_density_with_depth(
    form: &TernaryForm,
    p: u64,
    n: u64,
    max_k: u32,
) -> Result<LocalDensityValue, DensityError> {
    let ord = ord_p(4 * n.max(1) as i64 * form.discriminant().abs().max(1), p);
    let mut counter = HenselCounter::new(*form, p);
    let mut previous: Option<BigRational> = None;
    for k in 1..=max_k {
        let count = counter.count(k, [0, 0, 0], -(n as i128));
        let value = BigRational::new(BigInt::from(count), BigInt::from(p).pow(2 * k));
        if let Some(prev) = previous.take() {
            if prev == value && k > ord {
                return Ok(LocalDensityValue { value, p, k_used: k });
            }
        }
        previous = Some(value);
    }
    Err(DensityError::DepthExceeded { p, n, max_k })
}

/// Bad-prime usage error for the good-prime closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadPrime(pub u64);

impl fmt::Display for BadPrime {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(w, "prime {} divides 2Δ; closed form needs (2Δ,p)=1", self.0)
    }
}

impl std::error::Error for BadPrime {}

/// d_{t,p}(n) for p ∤ 2Δ:
/// 1 + 1/p + p^{−(k+1)}((−mΔ/p) − 1) when n = m·p^{2k}, p ∤ m;
/// (1 + 1/p)(1 − p^{−(k+1)}) when n = m·p^{2k+1}, p ∤ m.
pub fn good_prime_density(delta: i64, p: u64, n: u64) -> Result<BigRational, BadPrime> {
    assert!(n >= 1 && delta != 0);
    if (2 * delta).rem_euclid(p as i64) == 0 {
        return Err(BadPrime(p));
    }
    let ord = ord_p(n as i64, p);
    let m = (n / p.pow(ord)) as i64;
    let pk = |e: u32| BigRational::new(BigInt::one(), BigInt::from(p).pow(e));
    let one_plus = BigRational::one() + pk(1);
    Ok(if ord % 2 == 0 {
        let k = ord / 2;
        let chi = kronecker(
            (-(m as i128 * delta as i128)).rem_euclid(p as i128) as i64,
            p as i64,
        );
        one_plus + pk(k + 1) * br(chi as i64 - 1, 1)
    } else {
        let k = (ord - 1) / 2;
        one_plus * (BigRational::one() - pk(k + 1))
    })
}

/// An exact real of the shape r·π/√m with m squarefree; normalization makes
/// equality syntactic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicReal {
    pub r: BigRational,
    pub m: u64,
}

impl SymbolicReal {
    pub fn new(r: BigRational, m: u64) -> Self {
        assert!(m >= 1);
        let (core, sq) = crate::arith::squarefree_decompose(m);
        SymbolicReal {
            r: r / BigRational::from(BigInt::from(sq)),
            m: core,
        }
    }

    pub fn scale(&self, factor: &BigRational) -> SymbolicReal {
        SymbolicReal {
            r: &self.r * factor,
            m: self.m,
        }
    }

    /// Floating approximation (used only by sanity tests and --explain).
    pub fn to_f64(&self) -> f64 {
        self.r.to_f64().unwrap() * std::f64::consts::PI / (self.m as f64).sqrt()
    }
}

impl fmt::Display for SymbolicReal {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(w, "({})·π/√{}", self.r, self.m)
    }
}

/// Non-squarefree argument to `l_value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotSquarefree(pub u64);

impl fmt::Display for NotSquarefree {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(w, "{} is not squarefree", self.0)
    }
}

impl std::error::Error for NotSquarefree {}

/// L(1,χ(m)) for squarefree m, as the five-case closed form:
/// π/4 (m=1); π/(2√3) (m=3); (3π/(2√m))h(−m) (3<m≡3 mod 8);
/// (π/(2√m))h(−m) (m≡7 mod 8); (π/(2√m))h(−4m) (1<m≡1,2 mod 4).
pub fn l_value(m: u64) -> Result<SymbolicReal, NotSquarefree> {
    if !is_squarefree(m) {
        return Err(NotSquarefree(m));
    }
    let h = |d: i64| -> i64 { class_number(d).expect("valid discriminant") as i64 };
    Ok(match m {
        1 => SymbolicReal::new(br(1, 4), 1),
        3 => SymbolicReal::new(br(1, 2), 3),
        _ => match m % 8 {
            3 => SymbolicReal::new(br(3 * h(-(m as i64)), 2), m),
            7 => SymbolicReal::new(br(h(-(m as i64)), 2), m),
            _ => {
                debug_assert!(matches!(m % 4, 1 | 2));
                SymbolicReal::new(br(h(-4 * m as i64), 2), m)
            }
        },
    })
}

/// L(1,χ(n)) for arbitrary n ≥ 1 via n = 4^a·m·d²:
/// L(1,χ(n)) = L(1,χ(m)) · ∏_{p|d} (1 − (−m/p)/p).
pub fn l_value_general(n: u64) -> SymbolicReal {
    assert!(n >= 1);
    let (_a, m, d) = four_power_decompose(n);
    let base = l_value(m).expect("core is squarefree");
    let mut correction = BigRational::one();
    for p in prime_divisors(d) {
        let chi = kronecker(-(m as i64), p as i64);
        correction *= BigRational::one() - br(chi as i64, p as i64);
    }
    base.scale(&correction)
}

/// P(n,Δ): over primes p ∤ 2Δ with p² | n, with b = ⌊ord_p(n)/2⌋,
/// 1 + 1/p + … + 1/p^{b−1} + 1/(p^b(1 − (−Δn·p^{−2b}/p)/p)); empty product 1.
pub fn p_correction(n: u64, delta: i64) -> BigRational {
    assert!(n >= 1 && delta != 0);
    let mut product = BigRational::one();
    for (p, ord) in factorize(n) {
        if ord < 2 || (2 * delta).rem_euclid(p as i64) == 0 {
            continue;
        }
        let b = ord / 2;
        let mut term = BigRational::zero();
        for i in 0..b {
            term += BigRational::new(BigInt::one(), BigInt::from(p).pow(i));
        }
        let reduced = (n / p.pow(2 * b)) as i128;
        let chi = kronecker(
            (-(delta as i128) * reduced).rem_euclid(p as i128) as i64,
            p as i64,
        );
        let tail = BigRational::new(BigInt::one(), BigInt::from(p).pow(b))
            / (BigRational::one() - br(chi as i64, p as i64));
        product *= term + tail;
    }
    product
}

/// The factor-by-factor Siegel assembly for an idoneal form; `total` is the
/// exact rational that must be a nonnegative integer.
#[derive(Clone, Debug)]
pub struct SiegelAssembly {
    pub form: TernaryForm,
    pub n: u64,
    /// 32·√(n/(Δ·m)) = 32·2^A·D/Δ where Δn = 4^A·m·D².
    pub prefactor: BigRational,
    pub l_value: SymbolicReal,
    pub p_correction: BigRational,
    pub bad_factors: Vec<LocalDensityValue>,
    /// ∏_{2<p|Δ} (1 − p⁻²)⁻¹.
    pub odd_delta_factor: BigRational,
    pub total: BigRational,
}

impl SiegelAssembly {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "form": self.form.to_string(),
            "n": self.n,
            "prefactor": self.prefactor.to_string(),
            "l_value": { "r": self.l_value.r.to_string(), "m": self.l_value.m },
            "p_correction": self.p_correction.to_string(),
            "bad_primes": self.bad_factors.iter().map(|b| serde_json::json!({
                "p": b.p,
                "density": b.value.to_string(),
                "k_used": b.k_used,
            })).collect::<Vec<_>>(),
            "odd_delta_factor": self.odd_delta_factor.to_string(),
            "total": self.total.to_string(),
        })
    }
}

/// A Siegel total that failed to be a nonnegative integer (non-idoneal input
/// or an internal inconsistency); carries the full factor breakdown.
#[derive(Debug, Clone)]
pub struct SiegelError(pub Box<SiegelAssembly>);

impl fmt::Display for SiegelError {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            w,
            "Siegel total {} for form {} at n={} is not a nonnegative integer",
            self.0.total, self.0.form, self.0.n
        )
    }
}

impl std::error::Error for SiegelError {}

/// Assemble every factor of the Siegel formula at n ≥ 1.
pub fn siegel_assembly(form: &TernaryForm, n: u64) -> Result<SiegelAssembly, DensityError> {
    assert!(n >= 1, "the Siegel formula needs n ≥ 1");
    let delta = form.discriminant();
    assert!(delta > 0, "need a positive definite form");
    // Δn = 4^A · m · D²: √(n/(Δm)) = 2^A·D/Δ exactly.
    let (a_exp, m, d_odd) = four_power_decompose(delta as u64 * n);
    let lval = l_value_general(delta as u64 * n);
    debug_assert_eq!(lval.m, m);
    let prefactor = br(32, 1) * br(2i64.pow(a_exp) * d_odd as i64, delta);
    let pcorr = p_correction(n, delta);
    let mut bad_factors = Vec::new();
    let mut bad_product = BigRational::one();
    for p in prime_divisors(2 * delta as u64) {
        let ldv = local_density(form, p, n)?;
        bad_product *= ldv.value.clone();
        bad_factors.push(ldv);
    }
    let mut odd_delta_factor = BigRational::one();
    for p in prime_divisors(delta as u64) {
        if p > 2 {
            let p2 = br((p * p) as i64, 1);
            odd_delta_factor *= (BigRational::one() - p2.recip()).recip();
        }
    }
    let total = &prefactor * &lval.r * &pcorr * &bad_product * &odd_delta_factor;
    Ok(SiegelAssembly {
        form: *form,
        n,
        prefactor,
        l_value: lval,
        p_correction: pcorr,
        bad_factors,
        odd_delta_factor,
        total,
    })
}

/// The exact representation count of an idoneal form by the Siegel formula.
pub fn siegel_count(form: &TernaryForm, n: u64) -> Result<u64, SiegelError> {
    let assembly = siegel_assembly(form, n).map_err(|e| {
        panic!("density stabilization failed for {form} at n={n}: {e}")
    })?;
    if assembly.total.is_integer() && !assembly.total.is_negative() {
        let count = assembly
            .total
            .to_integer()
            .to_u64()
            .expect("count fits u64");
        Ok(count)
    } else {
        Err(SiegelError(Box::new(assembly)))
    }
}
