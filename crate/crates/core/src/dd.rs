//! Minimal double-double helpers.
//!
//! Only what the Euler–Maclaurin main sum needs: `ln n` to ~32 digits and an
//! accurate reduction of the phase `t·ln n` modulo 2π, so that `n^{-s}` keeps
//! full relative precision at large heights.

use std::sync::OnceLock;

/// An unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let r = self.add(Dd::from_f64(b).mul_f64(-q1));
        let q2 = r.hi / b;
        let r = r.add(Dd::from_f64(b).mul_f64(-q2));
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }
}

const TWO_PI: Dd = Dd::new(6.283185307179586, 2.4492935982947064e-16);
const TWO_PI_TAIL: f64 = -5.989539619436679e-33;

/// Largest `n` for which `ln n` is tabulated.
pub(crate) const LN_TABLE_LEN: usize = 1 << 18;

fn atanh_inv_odd(m: u64) -> Dd {
    // atanh(1/m) = Σ 1/((2j+1) m^{2j+1})
    let x = Dd::from_f64(1.0).div_f64(m as f64);
    let x2 = x.mul(x);
    let mut power = x;
    let mut sum = x;
    let mut j = 1u32;
    loop {
        power = power.mul(x2);
        let term = power.div_f64((2 * j + 1) as f64);
        sum = sum.add(term);
        if term.hi.abs() < 1e-34 * sum.hi.abs() {
            break;
        }
        j += 1;
    }
    sum
}

/// `ln n` for `1 <= n < LN_TABLE_LEN`, in double-double.
pub(crate) fn ln_table() -> &'static [Dd] {
    static TABLE: OnceLock<Vec<Dd>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LN_TABLE_LEN);
        t.push(Dd::from_f64(f64::NAN));
        t.push(Dd::from_f64(0.0));
        // ln n = ln(n-1) + 2 atanh(1/(2n-1)); re-anchor at powers of two so
        // rounding does not accumulate along the recurrence.
        let ln2 = atanh_inv_odd(3).mul_f64(2.0);
        let mut anchor_pow = 1usize;
        let mut anchor_k = 0.0;
        for n in 2..LN_TABLE_LEN {
            if n == anchor_pow * 2 {
                anchor_pow = n;
                anchor_k += 1.0;
                t.push(ln2.mul_f64(anchor_k));
                continue;
            }
            let prev = t[n - 1];
            t.push(prev.add(atanh_inv_odd(2 * n as u64 - 1).mul_f64(2.0)));
        }
        t
    })
}

/// Reduce `t·x` modulo 2π to a value in `[-π, π]`, carrying ~32 digits
/// through the product.
pub(crate) fn reduced_phase(t: f64, x: Dd) -> f64 {
    let theta = x.mul_f64(t);
    let q = (theta.hi / TWO_PI.hi).round();
    if q == 0.0 {
        return theta.hi + theta.lo;
    }
    let r = theta.add(TWO_PI.mul_f64(-q));
    r.hi + (r.lo - q * TWO_PI_TAIL)
}
