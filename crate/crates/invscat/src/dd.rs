//! Double-double arithmetic (~31 significant decimal digits).
//!
//! A [`Dd`] value is an unevaluated sum `hi + lo` of two `f64`s with
//! `|lo| <= ulp(hi)/2`.  The handful of operations needed by the moment
//! solver are implemented here: the Cauchy-matrix solve and the evaluation of
//! the resulting exponential sums suffer catastrophic cancellation in plain
//! `f64` once more than a dozen moments are involved, and extended precision
//! in those spots is what keeps the pipeline exact for noise-free data.
//!
//! The algorithms are the classic error-free transformations (Knuth's
//! two-sum, FMA-based two-product) plus the usual double-double add, multiply,
//! divide and a reduced-argument Taylor exponential.

/// Double-double number: value is `hi + lo`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// ln 2 to double-double precision.
    pub const LN2: Dd = Dd {
        hi: 0.693_147_180_559_945_3,
        lo: 2.319_046_813_846_299_6e-17,
    };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn add_f64(self, x: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, x);
        let s2 = s2 + self.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, x);
        let p2 = p2 + self.lo * x;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add_f64(q3)
    }

    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        self.div(Dd::from_f64(x))
    }

    #[inline]
    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Exact scaling by a power of two.
    #[inline]
    pub fn ldexp(self, k: i32) -> Dd {
        let f = 2f64.powi(k);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    /// `exp(self)` by argument reduction `self = k ln2 + r` and a Taylor
    /// series for `exp(r)` carried in double-double.
    pub fn exp(self) -> Dd {
        if self.hi.abs() > 700.0 {
            // outside the range the pipeline ever needs; avoid overflow
            return Dd::from_f64(self.hi.exp());
        }
        let k = (self.hi / std::f64::consts::LN_2).round();
        let r = self.sub(Dd::LN2.mul_f64(k));
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for m in 1..40 {
            term = term.mul(r).div_f64(m as f64);
            sum = sum.add(term);
            if term.hi.abs() < 1e-35 * sum.hi.abs() {
                break;
            }
        }
        sum.ldexp(k as i32)
    }
}

/// Solve a dense linear system `A x = b` in double-double precision by
/// Gaussian elimination with partial pivoting.  Dimensions here are small
/// (at most a few dozen), so the cubic cost is negligible; the point is the
/// precision.
pub fn solve_linear(mut a: Vec<Vec<Dd>>, mut b: Vec<Dd>) -> Option<Vec<Dd>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            a[i][col]
                .hi
                .abs()
                .partial_cmp(&a[j][col].hi.abs())
                .unwrap()
        })?;
        if a[piv][col].hi == 0.0 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let factor = a[row][col].div(a[col][col]);
            for j in col..n {
                let t = factor.mul(a[col][j]);
                a[row][j] = a[row][j].sub(t);
            }
            let t = factor.mul(b[col]);
            b[row] = b[row].sub(t);
        }
    }
    let mut x = vec![Dd::ZERO; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for j in row + 1..n {
            s = s.sub(a[row][j].mul(x[j]));
        }
        x[row] = s.div(a[row][row]);
    }
    Some(x)
}
