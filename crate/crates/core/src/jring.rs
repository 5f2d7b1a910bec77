//! The graded ring J-hat = Z_p tensor J at a finite p-power truncation:
//! Z_p (mod p^M) in degree 0, Q_p/Z_p (denominators dividing p^M) in degree
//! -2, and a cyclic group of order p^{v_p(k)+1} generated by alpha_k in
//! degree 2(p-1)k - 1 for every nonzero integer k.
//!
//! All data is exact at truncation level M; products that would need a
//! deeper denominator than p^M report a truncation error instead of
//! rounding. Degree -2 is genuinely infinite, so the duality check there is
//! a truncated-level statement and says so in its report.

use crate::error::Error;
use crate::Result;

/// Largest e with p^e dividing k.
pub fn vp(k: i64, p: u64) -> Result<u32> {
    if k == 0 {
        return Err(Error::pre("v_p(0) is undefined"));
    }
    let mut k = k.unsigned_abs();
    let mut e = 0;
    while k.is_multiple_of(p) {
        k /= p;
        e += 1;
    }
    Ok(e)
}

fn pow(p: u64, e: u32) -> u64 {
    p.checked_pow(e).expect("power fits u64")
}

/// Shape of one graded piece at truncation level M.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeGroup {
    /// degree 0: Z_p truncated to Z/p^M
    ZpTrunc { level: u32 },
    /// degree -2: Q_p/Z_p truncated to denominators dividing p^M
    QpModZpTrunc { level: u32 },
    /// degree 2(p-1)k - 1: cyclic of order p^{v_p(k)+1} on alpha_k
    Cyclic { order: u64, k: i64 },
    Zero,
}

impl DegreeGroup {
    pub fn order_at_truncation(&self, p: u64) -> u64 {
        match self {
            DegreeGroup::ZpTrunc { level } | DegreeGroup::QpModZpTrunc { level } => {
                pow(p, *level)
            }
            DegreeGroup::Cyclic { order, .. } => *order,
            DegreeGroup::Zero => 1,
        }
    }
}

pub struct JRing {
    pub p: u64,
    pub m: u32,
}

impl JRing {
    pub fn new(p: u64, m: u32) -> Result<JRing> {
        if p < 3 || p.is_multiple_of(2) {
            return Err(Error::pre("the construction needs an odd prime"));
        }
        let mut d = 3;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::pre(format!("{p} is not prime")));
            }
            d += 2;
        }
        if m == 0 || pow(p, m) > (1 << 40) {
            return Err(Error::invalid("truncation level out of range"));
        }
        Ok(JRing { p, m })
    }

    pub fn degree_group(&self, d: i64) -> DegreeGroup {
        match d {
            0 => DegreeGroup::ZpTrunc { level: self.m },
            -2 => DegreeGroup::QpModZpTrunc { level: self.m },
            _ => {
                let step = 2 * (self.p as i64 - 1);
                if (d + 1) % step == 0 {
                    let k = (d + 1) / step;
                    if k != 0 {
                        let order = pow(self.p, vp(k, self.p).unwrap() + 1);
                        return DegreeGroup::Cyclic { order, k };
                    }
                }
                DegreeGroup::Zero
            }
        }
    }

    pub fn gen_degree(&self, k: i64) -> i64 {
        2 * (self.p as i64 - 1) * k - 1
    }

    pub fn eta(&self, a: u64) -> JElem {
        JElem::normalized(0, JValue::Unit(a % pow(self.p, self.m)))
    }

    /// zeta^{-1}(num / p^M): the degree -2 element with value num/p^M mod 1.
    pub fn zeta_inv(&self, num: u64) -> JElem {
        JElem::normalized(-2, JValue::Fraction(num % pow(self.p, self.m)))
    }

    /// c * alpha_k.
    pub fn alpha(&self, k: i64, c: u64) -> Result<JElem> {
        let order = pow(self.p, vp(k, self.p)? + 1);
        Ok(JElem::normalized(
            self.gen_degree(k),
            JValue::Gen { k, c: c % order },
        ))
    }

    pub fn zero(&self, degree: i64) -> JElem {
        JElem {
            degree,
            value: JValue::Zero,
        }
    }

    /// The product rules of the ring. Products that need denominators
    /// beyond p^M are rejected with a truncation error.
    pub fn mul(&self, a: &JElem, b: &JElem) -> Result<JElem> {
        let degree = a.degree + b.degree;
        let pm = pow(self.p, self.m);
        let val = match (&a.value, &b.value) {
            (JValue::Zero, _) | (_, JValue::Zero) => JValue::Zero,
            (JValue::Unit(x), JValue::Unit(y)) => {
                JValue::Unit(((*x as u128 * *y as u128) % pm as u128) as u64)
            }
            (JValue::Unit(x), JValue::Fraction(n)) | (JValue::Fraction(n), JValue::Unit(x)) => {
                JValue::Fraction(((*x as u128 * *n as u128) % pm as u128) as u64)
            }
            (JValue::Unit(x), JValue::Gen { k, c }) | (JValue::Gen { k, c }, JValue::Unit(x)) => {
                let order = pow(self.p, vp(*k, self.p)? + 1);
                JValue::Gen {
                    k: *k,
                    c: ((*x as u128 * *c as u128) % order as u128) as u64,
                }
            }
            (JValue::Fraction(_), JValue::Fraction(_)) => JValue::Zero,
            (JValue::Fraction(_), JValue::Gen { .. })
            | (JValue::Gen { .. }, JValue::Fraction(_)) => JValue::Zero,
            (JValue::Gen { k: j, c: cj }, JValue::Gen { k, c: ck }) => {
                if j + k != 0 {
                    JValue::Zero
                } else {
                    let v = vp(*j, self.p)?;
                    if self.m < v + 1 {
                        return Err(Error::Truncation {
                            m: self.m,
                            reason: format!(
                                "alpha_{j} alpha_{k} needs denominator p^{}",
                                v + 1
                            ),
                        });
                    }
                    // alpha_j alpha_{-j} = zeta^{-1}(p^{-1-v}) for j > 0,
                    // and the graded sign flips it for j < 0
                    let unit = ((*cj as u128 * *ck as u128)
                        % pow(self.p, self.m) as u128) as u64;
                    let num = (unit as u128 * pow(self.p, self.m - 1 - v) as u128
                        % pm as u128) as u64;
                    let num = if *j > 0 { num } else { (pm - num) % pm };
                    JValue::Fraction(num)
                }
            }
        };
        Ok(JElem::normalized(degree, val))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JValue {
    /// residue mod p^M (degree 0)
    Unit(u64),
    /// numerator of n/p^M mod 1 (degree -2)
    Fraction(u64),
    /// c * alpha_k, c mod p^{v_p(k)+1}
    Gen { k: i64, c: u64 },
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JElem {
    pub degree: i64,
    pub value: JValue,
}

impl JElem {
    fn normalized(degree: i64, value: JValue) -> JElem {
        let value = match value {
            JValue::Unit(0) | JValue::Fraction(0) => JValue::Zero,
            JValue::Gen { c: 0, .. } => JValue::Zero,
            v => v,
        };
        JElem { degree, value }
    }

    pub fn is_zero(&self) -> bool {
        self.value == JValue::Zero
    }
}

/// Additive order of n/p^M in Q_p/Z_p.
fn fraction_order(num: u64, pm: u64) -> u64 {
    if num == 0 {
        return 1;
    }
    pm / gcd(num, pm)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub degree: i64,
    pub pass: bool,
    pub detail: String,
    /// the check is exact at this truncation level; degree -2 against 0 is
    /// the truncated shadow of an inverse limit statement
    pub truncation_level: u32,
}

/// Verify that pairing into degree -2 identifies J-hat_{-2-d} with the
/// Pontrjagin dual of J-hat_d, at truncation level M.
pub fn pontrjagin_check(ring: &JRing, d: i64) -> Result<DualityReport> {
    let g_here = ring.degree_group(d);
    let g_dual = ring.degree_group(-2 - d);
    let pm = pow(ring.p, ring.m);
    let (pass, detail) = match (&g_here, &g_dual) {
        (DegreeGroup::Zero, DegreeGroup::Zero) => (true, "both sides vanish".to_string()),
        (DegreeGroup::Zero, _) | (_, DegreeGroup::Zero) => (
            false,
            format!("one-sided vanishing: {g_here:?} against {g_dual:?}"),
        ),
        (DegreeGroup::Cyclic { order, k }, DegreeGroup::Cyclic { order: o2, k: k2 }) => {
            if order != o2 || *k2 != -k {
                (false, format!("order mismatch: {order} vs {o2}"))
            } else if ring.m < vp(*k, ring.p)? + 1 {
                return Err(Error::Truncation {
                    m: ring.m,
                    reason: format!("pairing at k = {k} needs level {}", vp(*k, ring.p)? + 1),
                });
            } else {
                // the pairing of generators must have full order
                let a = ring.alpha(*k, 1)?;
                let b = ring.alpha(-k, 1)?;
                let prod = ring.mul(&b, &a)?;
                match prod.value {
                    JValue::Fraction(num) => {
                        let got = fraction_order(num, pm);
                        if got == *order {
                            (
                                true,
                                format!(
                                    "alpha_{}·alpha_{} pairs with order {got}",
                                    -k, k
                                ),
                            )
                        } else {
                            (false, format!("pairing order {got}, group order {order}"))
                        }
                    }
                    _ => (false, "pairing landed outside degree -2".to_string()),
                }
            }
        }
        (DegreeGroup::ZpTrunc { .. }, DegreeGroup::QpModZpTrunc { .. })
        | (DegreeGroup::QpModZpTrunc { .. }, DegreeGroup::ZpTrunc { .. }) => {
            // truncated avatar of Z_p dual to Q_p/Z_p, pairing
            // (a, b/p^M) -> ab/p^M mod 1
            let mut ok = fraction_order(1, pm) == pm;
            if pm <= (1 << 12) {
                // explicit nondegeneracy on both sides
                for a in 1..pm {
                    if !(1..pm).any(|b| !(a as u128 * b as u128).is_multiple_of(pm as u128)) {
                        ok = false;
                        break;
                    }
                }
            }
            (
                ok,
                format!("Z/p^{m} pairs perfectly with (1/p^{m})Z/Z at level {m}", m = ring.m),
            )
        }
        other => (false, format!("unexpected group combination {other:?}")),
    };
    Ok(DualityReport {
        degree: d,
        pass,
        detail,
        truncation_level: ring.m,
    })
}
