//! Integer polynomials and the text form the CLI accepts.
//!
//! Coefficients are stored constant term first. A polynomial must have
//! degree at least 1 and a positive leading coefficient so that it is
//! eventually positive; reducible inputs are allowed (the constants
//! they produce are still well defined numbers) but construction runs
//! a rational-root screen and records what it found.

use std::fmt;

use crate::error::{Error, Result};

/// Exponent bound accepted by the parser. Far beyond any degree the
/// evaluator can take without overflowing, but it keeps hostile input
/// from allocating absurd coefficient vectors.
const MAX_PARSE_DEGREE: usize = 30;

/// Largest |constant term| the rational-root screen will factor.
/// Beyond this the screen reports `Undetermined` instead of stalling
/// in divisor enumeration.
const MAX_SCREEN_CONSTANT: i64 = 1_000_000_000_000;

/// Outcome of the construction-time irreducibility screen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrreducibilityScreen {
    /// Degree 1, or degree 2..3 with no rational root: irreducible
    /// over the rationals.
    Irreducible,
    /// A rational root num/den was found, so the polynomial factors.
    Reducible { root_num: i64, root_den: i64 },
    /// Degree 4 and up (or a screen-size bailout): the rational-root
    /// test cannot decide irreducibility.
    Undetermined,
}

/// Integer polynomial with coefficients in ascending order of power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
    screen: IrreducibilityScreen,
}

impl IntPolynomial {
    /// Builds from ascending-power coefficients. Trailing zeros are
    /// trimmed; what remains must have degree >= 1 and a positive
    /// leading coefficient.
    pub fn new(mut coeffs: Vec<i64>) -> Result<Self> {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::Domain(
                "polynomial must have degree at least 1".into(),
            ));
        }
        if *coeffs.last().expect("nonempty") < 0 {
            return Err(Error::Domain(format!(
                "leading coefficient must be positive, got {}",
                coeffs.last().expect("nonempty")
            )));
        }
        let screen = rational_root_screen(&coeffs);
        Ok(Self { coeffs, screen })
    }

    /// Parses forms like "x^2+1", "2x^3-5x+3", "x + 2". Whitespace is
    /// ignored; coefficients must be integers.
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<i64> = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let mut negative = false;
            if chars[i] == '+' || chars[i] == '-' {
                negative = chars[i] == '-';
                i += 1;
            } else if i > 0 {
                return Err(Error::Parse(format!(
                    "expected '+' or '-' before {:?} in {text:?}",
                    chars[i]
                )));
            }
            let digit_start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits = &chars[digit_start..i];
            if i < chars.len() && chars[i] == '.' {
                return Err(Error::Parse(format!("non-integer coefficient in {text:?}")));
            }
            let (magnitude, exp) = if i < chars.len() && chars[i] == 'x' {
                i += 1;
                let coef = if digits.is_empty() {
                    1
                } else {
                    digits_to_i64(digits, text)?
                };
                let exp = if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let exp_start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if exp_start == i {
                        return Err(Error::Parse(format!(
                            "missing exponent after '^' in {text:?}"
                        )));
                    }
                    digits_to_i64(&chars[exp_start..i], text)? as usize
                } else {
                    1
                };
                (coef, exp)
            } else if digits.is_empty() {
                return if i < chars.len() {
                    Err(Error::Parse(format!(
                        "unexpected character {:?} in {text:?}",
                        chars[i]
                    )))
                } else {
                    Err(Error::Parse(format!("dangling sign in {text:?}")))
                };
            } else {
                (digits_to_i64(digits, text)?, 0)
            };
            if exp > MAX_PARSE_DEGREE {
                return Err(Error::Parse(format!(
                    "exponent {exp} too large in {text:?} (max {MAX_PARSE_DEGREE})"
                )));
            }
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            let signed = if negative { -magnitude } else { magnitude };
            coeffs[exp] = coeffs[exp].checked_add(signed).ok_or_else(|| {
                Error::Parse(format!("coefficient overflow for x^{exp} in {text:?}"))
            })?;
        }
        Self::new(coeffs)
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// Coefficients in ascending order of power, trailing zeros
    /// trimmed. Always at least two entries, last one positive.
    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> i64 {
        *self.coeffs.last().expect("nonempty")
    }

    pub fn screen(&self) -> IrreducibilityScreen {
        self.screen
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (exp, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { "-" } else { "+" })?;
            }
            let mag = c.unsigned_abs();
            match exp {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    if exp == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{exp}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

fn digits_to_i64(digits: &[char], text: &str) -> Result<i64> {
    let mut v: i64 = 0;
    for &d in digits {
        v = v
            .checked_mul(10)
            .and_then(|v| v.checked_add((d as u8 - b'0') as i64))
            .ok_or_else(|| Error::Parse(format!("number too large in {text:?}")))?;
    }
    Ok(v)
}

/// Exact g(x) by Horner's rule in 128-bit integers. Every intermediate
/// must fit in i128: with unit-scale coefficients that admits degree 4
/// at x = 10^9, or degree 8 up to x around 6 * 10^4. Exceeding it is a
/// hard overflow error, never a wraparound.
pub fn poly_eval(g: &IntPolynomial, x: u64) -> Result<i128> {
    let xi = x as i128;
    let mut acc: i128 = 0;
    for &c in g.coeffs.iter().rev() {
        acc = acc
            .checked_mul(xi)
            .and_then(|v| v.checked_add(c as i128))
            .ok_or_else(|| {
                Error::Overflow(format!(
                    "evaluating degree {} polynomial at x = {x}",
                    g.degree()
                ))
            })?;
    }
    Ok(acc)
}

/// Rational-root screen. Complete for degree <= 3 (where a rational
/// root is equivalent to reducibility over Q, and degree 1 is
/// irreducible outright); degree >= 4 only ever upgrades to
/// `Reducible` when a root happens to exist.
fn rational_root_screen(coeffs: &[i64]) -> IrreducibilityScreen {
    let degree = coeffs.len() - 1;
    if degree == 1 {
        return IrreducibilityScreen::Irreducible;
    }
    if coeffs[0] == 0 {
        // x divides the polynomial
        return IrreducibilityScreen::Reducible {
            root_num: 0,
            root_den: 1,
        };
    }
    if coeffs[0].unsigned_abs() > MAX_SCREEN_CONSTANT as u64 {
        return IrreducibilityScreen::Undetermined;
    }
    let lead = *coeffs.last().expect("nonempty");
    for num in divisors(coeffs[0].unsigned_abs()) {
        for den in divisors(lead.unsigned_abs()) {
            if gcd(num, den) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let Some(root_num) = i64::try_from(num).ok().map(|n| n * sign) else {
                    continue;
                };
                let Ok(root_den) = i64::try_from(den) else {
                    continue;
                };
                match evaluates_to_zero(coeffs, root_num, root_den) {
                    Some(true) => return IrreducibilityScreen::Reducible { root_num, root_den },
                    Some(false) => {}
                    None => return IrreducibilityScreen::Undetermined,
                }
            }
        }
    }
    if degree <= 3 {
        IrreducibilityScreen::Irreducible
    } else {
        IrreducibilityScreen::Undetermined
    }
}

/// Whether sum_i c_i num^i den^(d-i) vanishes, or `None` when the exact
/// check leaves i128.
fn evaluates_to_zero(coeffs: &[i64], num: i64, den: i64) -> Option<bool> {
    let d = coeffs.len() - 1;
    let mut total: i128 = 0;
    for (i, &c) in coeffs.iter().enumerate() {
        let mut term = c as i128;
        for _ in 0..i {
            term = term.checked_mul(num as i128)?;
        }
        for _ in i..d {
            term = term.checked_mul(den as i128)?;
        }
        total = total.checked_add(term)?;
    }
    Some(total == 0)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    divs
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Nonempty collection of polynomials treated as one family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialFamily {
    polys: Vec<IntPolynomial>,
}

impl PolynomialFamily {
    pub fn new(polys: Vec<IntPolynomial>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::Domain("family needs at least one polynomial".into()));
        }
        Ok(Self { polys })
    }

    /// Parses one polynomial per input string.
    pub fn parse<S: AsRef<str>>(texts: &[S]) -> Result<Self> {
        Self::new(
            texts
                .iter()
                .map(|t| IntPolynomial::parse(t.as_ref()))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn polys(&self) -> &[IntPolynomial] {
        &self.polys
    }

    pub fn k(&self) -> usize {
        self.polys.len()
    }

    /// H, the product of the degrees.
    pub fn degree_product(&self) -> Result<u64> {
        self.polys.iter().try_fold(1u64, |acc, g| {
            acc.checked_mul(g.degree() as u64)
                .ok_or_else(|| Error::Overflow("degree product exceeds u64".into()))
        })
    }

    pub fn all_linear(&self) -> bool {
        self.polys.iter().all(|g| g.degree() == 1)
    }
}

impl fmt::Display for PolynomialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.polys.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}
