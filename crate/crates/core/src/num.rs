//! Integer rounding of real-valued thresholds.
//!
//! Thresholds such as `νn` or `βn` are products of small fractions and counts,
//! so plain `ceil`/`floor` can be off by one when the product is an integer
//! that floating point lands just beside.

const EPS: f64 = 1e-9;

#[inline]
pub fn ceil_tol(x: f64) -> i64 {
    let r = x.round();
    if (x - r).abs() < EPS {
        r as i64
    } else {
        x.ceil() as i64
    }
}

#[inline]
pub fn floor_tol(x: f64) -> i64 {
    let r = x.round();
    if (x - r).abs() < EPS {
        r as i64
    } else {
        x.floor() as i64
    }
}

/// `a >= b` with tolerance.
#[inline]
pub fn ge(a: f64, b: f64) -> bool {
    a + EPS >= b
}

/// `a <= b` with tolerance.
#[inline]
pub fn le(a: f64, b: f64) -> bool {
    a <= b + EPS
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(ceil_tol(0.1 * 30.0), 3);
        assert_eq!(floor_tol(0.1 * 30.0), 3);
        assert_eq!(ceil_tol(2.01), 3);
        assert_eq!(floor_tol(2.99), 2);
        assert!(ge(1.3 * 10.0, 13.0));
    }
}
