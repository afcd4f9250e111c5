//! Decimal rendering used wherever values leave the library.

use rug::Float;

/// Significant decimal digits carried by `bits` binary digits.
pub fn digits_for(bits: u32) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1
}

/// `x` as a decimal string with as many digits as `bits` justifies.
pub fn decimal(x: &Float, bits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = x.to_string_radix(10, Some(digits_for(bits)));
    normalize(&s)
}

/// MPFR prints `1.25e0`; keep plain notation for moderate exponents.
fn normalize(s: &str) -> String {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i32>().unwrap_or(0)),
        None => (s, 0),
    };
    if !(-8..=20).contains(&exp) {
        return format!("{mant}e{exp}");
    }
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: String = format!("{ip}{fp}");
    let point = ip.len() as i32 + exp;
    let out = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (a, b) = digits.split_at(point as usize);
        format!("{a}.{b}")
    };
    if neg {
        format!("-{out}")
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_notation() {
        let x = Float::with_val(64, 1.25);
        assert!(decimal(&x, 64).starts_with("1.25"));
        let y = Float::with_val(64, -0.001953125);
        assert!(decimal(&y, 64).starts_with("-0.001953125"));
        let z = Float::with_val(64, 1e30);
        assert!(decimal(&z, 64).contains('e'));
    }
}
