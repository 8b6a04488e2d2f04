use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::{LatticeError, Result};

/// Which arithmetic a value lives in. All entries of a matrix share one
/// backend; mixing backends in scalar arithmetic is a programming error and
/// panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Backend {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "float")]
    Float,
}

/// A complex scalar: either a Gaussian rational (exact) or a
/// double-precision complex number (float).
#[derive(Debug, Clone)]
pub enum Scalar {
    Exact { re: BigRational, im: BigRational },
    Float(Complex64),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact { .. } => Backend::Exact,
            Scalar::Float(_) => Backend::Float,
        }
    }

    pub fn zero(backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact {
                re: BigRational::zero(),
                im: BigRational::zero(),
            },
            Backend::Float => Scalar::Float(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn one(backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact {
                re: BigRational::one(),
                im: BigRational::zero(),
            },
            Backend::Float => Scalar::Float(Complex64::new(1.0, 0.0)),
        }
    }

    /// The imaginary unit.
    pub fn i(backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact {
                re: BigRational::zero(),
                im: BigRational::one(),
            },
            Backend::Float => Scalar::Float(Complex64::new(0.0, 1.0)),
        }
    }

    pub fn from_int(n: i64, backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact {
                re: BigRational::from_integer(BigInt::from(n)),
                im: BigRational::zero(),
            },
            Backend::Float => Scalar::Float(Complex64::new(n as f64, 0.0)),
        }
    }

    pub fn from_bigint(n: &BigInt, backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact {
                re: BigRational::from_integer(n.clone()),
                im: BigRational::zero(),
            },
            Backend::Float => Scalar::Float(Complex64::new(
                n.to_f64().expect("integer out of f64 range"),
                0.0,
            )),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar::Exact {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_rationals(re: BigRational, im: BigRational) -> Self {
        Scalar::Exact { re, im }
    }

    /// Exact rational a/b as a real scalar. Panics if `den == 0`.
    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::Exact {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact { re, im } => re.is_zero() && im.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    /// True when the imaginary part is exactly zero (float: bitwise zero).
    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Exact { im, .. } => im.is_zero(),
            Scalar::Float(z) => z.im == 0.0,
        }
    }

    /// Exact integers report true; floats report true when both parts are
    /// integral doubles.
    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Exact { re, im } => im.is_zero() && re.is_integer(),
            Scalar::Float(z) => z.im == 0.0 && z.re.fract() == 0.0,
        }
    }

    /// The value as an integer, if it is one.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Exact { re, im } => {
                if im.is_zero() && re.is_integer() {
                    Some(re.to_integer())
                } else {
                    None
                }
            }
            Scalar::Float(z) => {
                if z.im == 0.0 && z.re.fract() == 0.0 {
                    BigInt::from_f64(z.re)
                } else {
                    None
                }
            }
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        match self {
            Scalar::Exact { re, im } => Complex64::new(
                re.to_f64().unwrap_or(f64::NAN),
                im.to_f64().unwrap_or(f64::NAN),
            ),
            Scalar::Float(z) => *z,
        }
    }

    /// Real part as an exact rational; None on the float backend.
    pub fn rational_re(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact { re, .. } => Some(re),
            Scalar::Float(_) => None,
        }
    }

    pub fn rational_im(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact { im, .. } => Some(im),
            Scalar::Float(_) => None,
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact {
                re: re.clone(),
                im: -im.clone(),
            },
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Exact { re, im } => Scalar::Exact {
                re: -re.clone(),
                im: -im.clone(),
            },
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }

    pub fn add(&self, other: &Scalar) -> Self {
        match (self, other) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => Scalar::Exact {
                re: a + c,
                im: b + d,
            },
            (Scalar::Float(x), Scalar::Float(y)) => Scalar::Float(x + y),
            _ => panic!("scalar backend mismatch in add"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Self {
        match (self, other) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => Scalar::Exact {
                re: a * c - b * d,
                im: a * d + b * c,
            },
            (Scalar::Float(x), Scalar::Float(y)) => Scalar::Float(x * y),
            _ => panic!("scalar backend mismatch in mul"),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Self> {
        if other.is_zero() {
            return Err(LatticeError::DivisionByZero);
        }
        match (self, other) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => {
                let norm = c * c + d * d;
                Ok(Scalar::Exact {
                    re: (a * c + b * d) / norm.clone(),
                    im: (b * c - a * d) / norm,
                })
            }
            (Scalar::Float(x), Scalar::Float(y)) => Ok(Scalar::Float(x / y)),
            _ => panic!("scalar backend mismatch in div"),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Scalar::one(self.backend()).div(self)
    }

    /// |z| as f64, used for pivot selection. Exact values go through f64.
    pub fn abs(&self) -> f64 {
        self.to_complex64().norm()
    }

    /// Canonical string form of an exact scalar: "a/b" or "a/b+c/d*i" with
    /// the denominator always written and the separating sign explicit.
    pub fn exact_string(&self) -> Option<String> {
        match self {
            Scalar::Exact { re, im } => {
                let rat = |r: &BigRational| format!("{}/{}", r.numer(), r.denom());
                if im.is_zero() {
                    Some(rat(re))
                } else {
                    let sign = if im.is_negative() { '-' } else { '+' };
                    Some(format!("{}{}{}*i", rat(re), sign, rat(&im.abs())))
                }
            }
            Scalar::Float(_) => None,
        }
    }

    /// Parses the canonical exact form; also accepts bare integers and a
    /// missing denominator.
    pub fn parse_exact(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(LatticeError::Parse("empty scalar".into()));
        }
        let parse_rat = |t: &str| -> Result<BigRational> {
            let t = t.trim();
            let (num, den) = match t.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (t, "1"),
            };
            let n = BigInt::from_str(num)
                .map_err(|_| LatticeError::Parse(format!("bad numerator in {t:?}")))?;
            let d = BigInt::from_str(den)
                .map_err(|_| LatticeError::Parse(format!("bad denominator in {t:?}")))?;
            if d.is_zero() {
                return Err(LatticeError::Parse(format!("zero denominator in {t:?}")));
            }
            Ok(BigRational::new(n, d))
        };
        if let Some(body) = s.strip_suffix("*i").or_else(|| s.strip_suffix("i")) {
            // Find the sign separating the real part from the imaginary
            // coefficient: the last '+'/'-' that is not a leading sign and
            // does not follow '/'.
            let bytes = body.as_bytes();
            let mut split = None;
            for k in (1..bytes.len()).rev() {
                if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                    split = Some(k);
                    break;
                }
            }
            match split {
                Some(k) => {
                    let re = parse_rat(&body[..k])?;
                    let sign = if bytes[k] == b'-' {
                        -BigRational::one()
                    } else {
                        BigRational::one()
                    };
                    let im = parse_rat(&body[k + 1..])?;
                    Ok(Scalar::Exact { re, im: sign * im })
                }
                None => Ok(Scalar::Exact {
                    re: BigRational::zero(),
                    im: parse_rat(body)?,
                }),
            }
        } else {
            Ok(Scalar::Exact {
                re: parse_rat(s)?,
                im: BigRational::zero(),
            })
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact { re: a, im: b }, Scalar::Exact { re: c, im: d }) => a == c && b == d,
            (Scalar::Float(x), Scalar::Float(y)) => x == y,
            _ => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact { .. } => write!(f, "{}", self.exact_string().unwrap()),
            Scalar::Float(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

// Exact scalars serialize as strings, float scalars as [re, im] pairs; the
// two are distinguishable on deserialization.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact { .. } => serializer.serialize_str(&self.exact_string().unwrap()),
            Scalar::Float(z) => {
                let mut seq = serializer.serialize_seq(Some(2))?;
                seq.serialize_element(&z.re)?;
                seq.serialize_element(&z.im)?;
                seq.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ScalarVisitor;
        impl<'de> Visitor<'de> for ScalarVisitor {
            type Value = Scalar;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an exact scalar string \"a/b[+c/d*i]\" or a float pair [re, im]")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Scalar, E> {
                Scalar::parse_exact(v).map_err(|e| E::custom(e.to_string()))
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Scalar, A::Error> {
                let re: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::custom("missing real part"))?;
                let im: f64 = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::custom("missing imaginary part"))?;
                if seq.next_element::<f64>()?.is_some() {
                    return Err(de::Error::custom("float scalar must be a pair"));
                }
                Ok(Scalar::Float(Complex64::new(re, im)))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::from_int(v, Backend::Exact))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
                Ok(Scalar::from_bigint(&BigInt::from(v), Backend::Exact))
            }
        }
        deserializer.deserialize_any(ScalarVisitor)
    }
}

use num_traits::FromPrimitive;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_is_closed() {
        let a = Scalar::rational(1, 2);
        let b = Scalar::from_rationals(
            BigRational::new(BigInt::from(2), BigInt::from(3)),
            BigRational::new(BigInt::from(-1), BigInt::from(5)),
        );
        let q = a.mul(&b).div(&b).unwrap();
        assert_eq!(q, a);
        assert!(b.div(&Scalar::zero(Backend::Exact)).is_err());
    }

    #[test]
    fn conjugation_involution_fixes_reals() {
        let z = Scalar::from_rationals(
            BigRational::new(BigInt::from(3), BigInt::from(7)),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
        );
        assert_eq!(z.conj().conj(), z);
        assert_ne!(z.conj(), z);
        let r = Scalar::rational(-4, 9);
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn exact_string_round_trip() {
        let cases = [
            Scalar::rational(0, 1),
            Scalar::rational(-3, 4),
            Scalar::from_rationals(
                BigRational::new(BigInt::from(1), BigInt::from(2)),
                BigRational::new(BigInt::from(-5), BigInt::from(3)),
            ),
            Scalar::i(Backend::Exact),
        ];
        for s in &cases {
            let text = s.exact_string().unwrap();
            assert_eq!(&Scalar::parse_exact(&text).unwrap(), s);
        }
        assert_eq!(Scalar::rational(1, 2).exact_string().unwrap(), "1/2");
        assert_eq!(
            Scalar::from_rationals(
                BigRational::new(BigInt::from(1), BigInt::from(2)),
                BigRational::new(BigInt::from(-1), BigInt::from(3)),
            )
            .exact_string()
            .unwrap(),
            "1/2-1/3*i"
        );
    }

    #[test]
    fn serde_formats() {
        let e = Scalar::rational(2, 6);
        assert_eq!(serde_json::to_string(&e).unwrap(), "\"1/3\"");
        let f = Scalar::complex(0.5, -1.25);
        assert_eq!(serde_json::to_string(&f).unwrap(), "[0.5,-1.25]");
        let back: Scalar = serde_json::from_str("\"1/3\"").unwrap();
        assert_eq!(back, e);
        let back: Scalar = serde_json::from_str("[0.5,-1.25]").unwrap();
        assert_eq!(back, f);
    }
}
