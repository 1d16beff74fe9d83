//! Positive ternary quadratic forms: exact evaluation and complete
//! lattice-point enumeration of representations.
//!
//! A form (a,b,c,d,e,f) is the polynomial ax²+by²+cz²+dyz+exz+fxy.  The
//! enumeration engine decomposes the Gram matrix as an exact rational LDL
//! product, giving nested per-coordinate interval bounds (ellipsoid pruning).
//! Every bound computation uses exact integer/rational arithmetic, so no
//! boundary lattice point can be dropped by rounding.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Euclid, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A ternary quadratic form ax²+by²+cz²+dyz+exz+fxy with integer coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TernaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
    pub f: i64,
}

/// All integer solutions of f(x,y,z) = n, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationSet {
    pub n: i64,
    pub triples: Vec<[i64; 3]>,
}

impl TernaryForm {
    pub fn new(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Self {
        TernaryForm { a, b, c, d, e, f }
    }

    /// Gram matrix [[2a,f,e],[f,2b,d],[e,d,2c]]; symmetric, determinant 2Δ.
    pub fn gram(&self) -> [[i64; 3]; 3] {
        [
            [2 * self.a, self.f, self.e],
            [self.f, 2 * self.b, self.d],
            [self.e, self.d, 2 * self.c],
        ]
    }

    /// Discriminant Δ = 4abc + def − ad² − be² − cf² = det(Gram)/2.
    pub fn discriminant(&self) -> i64 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (d, e, f) = (self.d as i128, self.e as i128, self.f as i128);
        let delta = 4 * a * b * c + d * e * f - a * d * d - b * e * e - c * f * f;
        i64::try_from(delta).expect("discriminant overflows i64")
    }

    /// True iff the three leading principal minors of the Gram matrix are
    /// positive, i.e. the form is positive definite.
    pub fn is_positive_definite(&self) -> bool {
        let (a, b) = (self.a as i128, self.b as i128);
        let f = self.f as i128;
        let m1 = 2 * a;
        let m2 = 4 * a * b - f * f;
        let m3 = 2 * self.discriminant() as i128;
        m1 > 0 && m2 > 0 && m3 > 0
    }

    /// The quadratic polynomial value at (x,y,z).
    pub fn evaluate(&self, x: i64, y: i64, z: i64) -> i64 {
        let (x, y, z) = (x as i128, y as i128, z as i128);
        let v = self.a as i128 * x * x
            + self.b as i128 * y * y
            + self.c as i128 * z * z
            + self.d as i128 * y * z
            + self.e as i128 * x * z
            + self.f as i128 * x * y;
        i64::try_from(v).expect("form value overflows i64")
    }

    /// As `evaluate`, in full i128 arithmetic (for residue computations).
    pub fn evaluate_i128(&self, x: i128, y: i128, z: i128) -> i128 {
        self.a as i128 * x * x
            + self.b as i128 * y * y
            + self.c as i128 * z * z
            + self.d as i128 * y * z
            + self.e as i128 * x * z
            + self.f as i128 * x * y
    }

    /// All integer triples with f(x,y,z) = n, lexicographically ordered.
    /// Requires a positive definite form; empty for n < 0.
    pub fn enumerate_representations(&self, n: i64) -> RepresentationSet {
        assert!(
            self.is_positive_definite(),
            "enumerate_representations requires a positive definite form, got {self}"
        );
        let mut triples = Vec::new();
        if n >= 0 {
            let zero = [
                BigRational::zero(),
                BigRational::zero(),
                BigRational::zero(),
            ];
            let bound = BigRational::from(BigInt::from(n));
            sweep_shifted(self, &zero, &bound, &mut |v, fv| {
                if fv == n {
                    triples.push(v);
                }
            });
            triples.sort();
        }
        RepresentationSet { n, triples }
    }

    /// R_f(n) = |enumerate_representations(n)|; 0 for n < 0.
    pub fn representation_count(&self, n: i64) -> u64 {
        if n < 0 {
            return 0;
        }
        self.enumerate_representations(n).triples.len() as u64
    }

    /// Histogram of representation counts: entry n holds R_f(n), 0 ≤ n ≤ n_max,
    /// computed by a single enumeration sweep rather than n_max separate counts.
    pub fn theta_counts(&self, n_max: i64) -> Vec<u64> {
        assert!(n_max >= 0);
        assert!(
            self.is_positive_definite(),
            "theta_counts requires a positive definite form, got {self}"
        );
        let mut counts = vec![0u64; n_max as usize + 1];
        let zero = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        let bound = BigRational::from(BigInt::from(n_max));
        sweep_shifted(self, &zero, &bound, &mut |_, fv| {
            debug_assert!(fv >= 0);
            if fv <= n_max {
                counts[fv as usize] += 1;
            }
        });
        counts
    }
}

impl RepresentationSet {
    pub fn count(&self) -> u64 {
        self.triples.len() as u64
    }

    pub fn contains(&self, v: &[i64; 3]) -> bool {
        self.triples.binary_search(v).is_ok()
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            w,
            "{},{},{},{},{},{}",
            self.a, self.b, self.c, self.d, self.e, self.f
        )
    }
}

/// Error from parsing the "a,b,c,d,e,f" form grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseFormError(pub String);

impl fmt::Display for ParseFormError {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(w, "invalid form string: {}", self.0)
    }
}

impl std::error::Error for ParseFormError {}

impl FromStr for TernaryForm {
    type Err = ParseFormError;

    /// Parses "a,b,c,d,e,f": six optionally-signed decimal integers,
    /// comma-separated, no spaces.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 6 {
            return Err(ParseFormError(format!(
                "expected 6 comma-separated integers, got {} in {s:?}",
                parts.len()
            )));
        }
        let mut vals = [0i64; 6];
        for (i, part) in parts.iter().enumerate() {
            if part.contains(char::is_whitespace) {
                return Err(ParseFormError(format!("whitespace not allowed in {s:?}")));
            }
            vals[i] = part
                .parse::<i64>()
                .map_err(|e| ParseFormError(format!("component {part:?}: {e}")))?;
        }
        Ok(TernaryForm::new(
            vals[0], vals[1], vals[2], vals[3], vals[4], vals[5],
        ))
    }
}

impl Serialize for TernaryForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TernaryForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(DeError::custom)
    }
}

/// Exact LDL data: f(u) = q0(u0 + r01·u1 + r02·u2)² + q1(u1 + r12·u2)² + q2·u2².
struct Ldl {
    q: [BigRational; 3],
    r01: BigRational,
    r02: BigRational,
    r12: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn ldl(form: &TernaryForm) -> Ldl {
    let q0 = rat(form.a);
    assert!(q0.is_positive(), "LDL requires a > 0");
    let r01 = rat(form.f) / (rat(2) * &q0);
    let r02 = rat(form.e) / (rat(2) * &q0);
    let q1 = rat(form.b) - &q0 * &r01 * &r01;
    assert!(q1.is_positive(), "LDL requires 4ab − f² > 0");
    let r12 = (rat(form.d) / rat(2) - &q0 * &r01 * &r02) / &q1;
    let q2 = rat(form.c) - &q0 * &r02 * &r02 - &q1 * &r12 * &r12;
    assert!(q2.is_positive(), "LDL requires Δ > 0");
    Ldl {
        q: [q0, q1, q2],
        r01,
        r02,
        r12,
    }
}

/// floor(α + √β) for rationals α and β ≥ 0, exactly.
///
/// Uses the integer square root of β's numerator×denominator to bracket √β
/// within 1/denominator, then fixes the candidate with the exact predicate
/// x ≤ α + √β  ⟺  x − α ≤ 0  ∨  (x − α)² ≤ β.
fn floor_alpha_plus_sqrt(alpha: &BigRational, beta: &BigRational) -> BigInt {
    assert!(!beta.is_negative());
    let w = (beta.numer() * beta.denom()).sqrt();
    // candidate = floor(α + w/bd) = floor((an·bd + w·ad) / (ad·bd))
    let num = alpha.numer() * beta.denom() + &w * alpha.denom();
    let den = alpha.denom() * beta.denom();
    let mut x = num.div_euclid(&den);
    let holds = |x: &BigInt| {
        let s = BigRational::from(x.clone()) - alpha;
        !s.is_positive() || &s * &s <= *beta
    };
    while holds(&(&x + 1)) {
        x += 1;
    }
    while !holds(&x) {
        x -= 1;
    }
    x
}

/// Integer range [lo, hi] of x with q·(x + α)² ≤ t; empty when t < 0.
fn coordinate_range(alpha: &BigRational, q: &BigRational, t: &BigRational) -> Option<(i64, i64)> {
    if t.is_negative() {
        return None;
    }
    let beta = t / q;
    let hi = floor_alpha_plus_sqrt(&(-alpha), &beta);
    let lo = -floor_alpha_plus_sqrt(alpha, &beta);
    if lo > hi {
        return None;
    }
    Some((
        lo.to_i64().expect("enumeration bound overflows i64"),
        hi.to_i64().expect("enumeration bound overflows i64"),
    ))
}

/// Visit every integer v with f(v + center) ≤ bound, passing (v, f(v)).
///
/// `center` may be any rational vector (used to realize quadratic-plus-linear
/// exponents by completing the square); the reported value is always the pure
/// quadratic f(v) at the integer point, computed in integer arithmetic.
pub(crate) fn sweep_shifted(
    form: &TernaryForm,
    center: &[BigRational; 3],
    bound: &BigRational,
    visit: &mut dyn FnMut([i64; 3], i64),
) {
    let l = ldl(form);
    let (h0, h1, h2) = (&center[0], &center[1], &center[2]);
    let Some((zlo, zhi)) = coordinate_range(h2, &l.q[2], bound) else {
        return;
    };
    for z in zlo..=zhi {
        let u2 = rat(z) + h2;
        let rem2 = bound - &l.q[2] * &u2 * &u2;
        let cy = h1 + &l.r12 * &u2;
        let Some((ylo, yhi)) = coordinate_range(&cy, &l.q[1], &rem2) else {
            continue;
        };
        for y in ylo..=yhi {
            let sy = rat(y) + &cy;
            let rem1 = &rem2 - &l.q[1] * &sy * &sy;
            let u1 = rat(y) + h1;
            let cx = h0 + &l.r01 * &u1 + &l.r02 * &u2;
            let Some((xlo, xhi)) = coordinate_range(&cx, &l.q[0], &rem1) else {
                continue;
            };
            // Incremental integer evaluation along the x run:
            // f(x+1,y,z) − f(x,y,z) = a(2x+1) + f·y + e·z.
            let mut fv = form.evaluate(xlo, y, z);
            let lin = form.f * y + form.e * z;
            for x in xlo..=xhi {
                visit([x, y, z], fv);
                fv += form.a * (2 * x + 1) + lin;
            }
        }
    }
}

/// Solve Gram·h = l exactly (used to complete the square for
/// quadratic-plus-linear exponents).
pub(crate) fn solve_gram(form: &TernaryForm, l: [i64; 3]) -> [BigRational; 3] {
    let g = form.gram();
    let det = rat(2 * form.discriminant());
    assert!(!det.is_zero());
    // Cramer's rule on the 3×3 system.
    let minor = |m: &[[i64; 3]; 3]| -> i128 {
        let m: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let mut h: Vec<BigRational> = Vec::with_capacity(3);
    for col in 0..3 {
        let mut gk = g;
        for row in 0..3 {
            gk[row][col] = l[row];
        }
        h.push(BigRational::from(BigInt::from(minor(&gk))) / &det);
    }
    [h[0].clone(), h[1].clone(), h[2].clone()]
}

/// Independently-coded reference enumeration: a plain box scan whose cube
/// bound comes from the exact eigenvalue underestimate
/// λ_min(Gram) ≥ det(Gram)/trace(Gram)², so f(v) ≥ det/(2·tr²)·|v|².
/// Quadratic in runtime versus the pruned sweep; used to cross-check it.
pub fn box_scan_representations(form: &TernaryForm, n: i64) -> Vec<[i64; 3]> {
    assert!(form.is_positive_definite());
    let mut out = Vec::new();
    if n < 0 {
        return out;
    }
    let g = form.gram();
    let det = BigInt::from(2 * form.discriminant() as i128);
    let tr = BigInt::from(g[0][0] + g[1][1] + g[2][2]);
    // |v_i|² ≤ |v|² ≤ 2n·tr²/det  ⇒  |v_i| ≤ isqrt(2n·tr²/det) + 1
    let bound_sq = (BigInt::from(2 * n) * &tr * &tr).div_euclid(&det);
    let m = bound_sq.sqrt().to_i64().expect("box bound overflow") + 1;
    for x in -m..=m {
        for y in -m..=m {
            for z in -m..=m {
                if form.evaluate(x, y, z) == n {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out
}
