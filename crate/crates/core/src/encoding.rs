//! JSON encodings of every value type, as used by the command-line tool and
//! the golden files.
//!
//! An element of `Q_p(ζ_{p^m})` is `{"p":3,"m":2,"N":24,"coeffs":[...]}` with
//! decimal residues in the `ζ`-basis. Two optional keys extend this for
//! values the plain form cannot carry: `"shift"` (the element is
//! `p^shift · Σ c_i ζ^i`, used for negative valuations) and `"abs_e"` (absolute
//! precision in units of `1/e` when it differs from `N`). Rational exponents
//! are JSON integers when integral and `"a/b"` strings otherwise; `null`
//! stands for the bound of the zero function.
//!
//! On input, any element may also be given as an expression string such as
//! `"1 + 2*z - p^3"`, read in the field of the current working level.

use num_bigint::BigInt;
use num_rational::Rational64;
use serde_json::{json, Map, Value};

use crate::config::Config;
use crate::distribution::BoundedDistribution;
use crate::error::{Error, Result};
use crate::fourier::BSenElement;
use crate::galois::GaloisElement;
use crate::padic::{parse_element, FieldDesc, PadicElement};
use crate::series::TateSeries;
use crate::weight::WeightPoint;

/// Decoding context: the effective configuration and the working level.
#[derive(Clone, Debug)]
pub struct Context {
    pub config: Config,
    pub m: u32,
}

impl Context {
    pub fn new(config: Config, m: u32) -> Result<Self> {
        config.validate()?;
        if m > config.m_max {
            return Err(Error::InvalidField(format!(
                "working level m = {m} exceeds m_max = {}",
                config.m_max
            )));
        }
        Ok(Context { config, m })
    }

    pub fn field(&self) -> Result<FieldDesc> {
        self.config.field(self.m)
    }

    pub fn field_at(&self, m: u32) -> Result<FieldDesc> {
        if m > self.config.m_max {
            return Err(Error::InvalidField(format!(
                "cyclotomic level {m} exceeds m_max = {}",
                self.config.m_max
            )));
        }
        self.config.field(m)
    }

    /// The generator `γ` from the configuration, in `Q_p`.
    pub fn gamma(&self) -> Result<PadicElement> {
        parse_element(&self.config.field(0)?, &self.config.gamma)
    }
}

fn malformed(what: impl Into<String>) -> Error {
    Error::Parse(what.into())
}

pub fn encode_rational(q: Option<Rational64>) -> Value {
    match q {
        None => Value::Null,
        Some(q) if q.is_integer() => json!(q.to_integer()),
        Some(q) => json!(q.to_string()),
    }
}

pub fn decode_rational(v: &Value) -> Result<Option<Rational64>> {
    match v {
        Value::Null => Ok(None),
        Value::Number(n) => n
            .as_i64()
            .map(|k| Some(Rational64::from_integer(k)))
            .ok_or_else(|| malformed(format!("exponent {n} is not an integer or a fraction"))),
        Value::String(s) => s
            .trim()
            .parse::<Rational64>()
            .map(Some)
            .map_err(|_| malformed(format!("cannot read exponent {s:?}"))),
        _ => Err(malformed("an exponent must be a number, a string \"a/b\" or null")),
    }
}

pub fn encode_element(x: &PadicElement) -> Value {
    let f = x.field();
    let e = f.ram_index();
    let mut obj = Map::new();
    obj.insert("p".into(), json!(f.p()));
    obj.insert("m".into(), json!(f.level()));
    obj.insert("N".into(), json!(f.prec()));
    let coeffs: Vec<BigInt> = if x.shift() >= 0 {
        let s = f.ppow(x.shift());
        x.unit_coeffs().iter().map(|c| c * &s).collect()
    } else {
        x.unit_coeffs().to_vec()
    };
    obj.insert(
        "coeffs".into(),
        Value::Array(coeffs.iter().map(|c| json!(c.to_string())).collect()),
    );
    if x.shift() < 0 {
        obj.insert("shift".into(), json!(x.shift()));
    }
    if x.abs_e() != e * f.prec() {
        obj.insert("abs_e".into(), json!(x.abs_e()));
    }
    Value::Object(obj)
}

fn as_u64(v: &Value, key: &str) -> Result<u64> {
    v.get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| malformed(format!("missing or invalid {key:?}")))
}

fn as_i64_opt(v: &Value, key: &str) -> Result<Option<i64>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(x) => x
            .as_i64()
            .map(Some)
            .ok_or_else(|| malformed(format!("{key:?} must be an integer"))),
    }
}

fn decode_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| malformed(format!("coefficient {s:?} is not an integer"))),
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| malformed(format!("coefficient {n} is not an integer"))),
        _ => Err(malformed("coefficients are decimal strings")),
    }
}

pub fn decode_element(ctx: &Context, v: &Value) -> Result<PadicElement> {
    match v {
        Value::String(s) => parse_element(&ctx.field()?, s),
        Value::Number(_) => {
            let n = decode_bigint(v)?;
            Ok(PadicElement::from_bigint(&ctx.field()?, &n))
        }
        Value::Object(_) => {
            let p = as_u64(v, "p")?;
            if p != ctx.config.p {
                return Err(Error::Incompatible(format!(
                    "element over p = {p}, configuration has p = {}",
                    ctx.config.p
                )));
            }
            let m = as_u64(v, "m")? as u32;
            let n = v.get("N").and_then(Value::as_i64).unwrap_or(ctx.config.prec);
            if n != ctx.config.prec {
                return Err(Error::Incompatible(format!(
                    "element at N = {n}, configuration has N = {}",
                    ctx.config.prec
                )));
            }
            let field = ctx.field_at(m)?;
            let coeffs = v
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| malformed("element needs a \"coeffs\" array"))?
                .iter()
                .map(decode_bigint)
                .collect::<Result<Vec<_>>>()?;
            if coeffs.len() > field.degree() {
                return Err(malformed(format!(
                    "{} coefficients for a field of degree {}",
                    coeffs.len(),
                    field.degree()
                )));
            }
            let shift = as_i64_opt(v, "shift")?.unwrap_or(0);
            let abs = as_i64_opt(v, "abs_e")?.unwrap_or(field.ram_index() * field.prec());
            Ok(PadicElement::from_parts(&field, shift, &coeffs, abs))
        }
        _ => Err(malformed("an element is an expression string or an object")),
    }
}

fn decode_elements(ctx: &Context, v: Option<&Value>, key: &str) -> Result<Vec<PadicElement>> {
    let arr = v
        .and_then(Value::as_array)
        .ok_or_else(|| malformed(format!("missing array {key:?}")))?;
    if arr.is_empty() {
        return Err(malformed(format!("{key:?} must not be empty")));
    }
    arr.iter().map(|x| decode_element(ctx, x)).collect()
}

fn get_u32(v: &Value, key: &str) -> Result<u32> {
    Ok(as_u64(v, key)? as u32)
}

pub fn encode_point(psi: &WeightPoint) -> Value {
    json!({
        "i": psi.i(),
        "t": encode_element(psi.t()),
        "gamma": encode_element(psi.gamma()),
    })
}

/// A point object, or an expression for `t` (component `0`, configured `γ`).
pub fn decode_point(ctx: &Context, v: &Value) -> Result<WeightPoint> {
    let gamma = match v.get("gamma") {
        Some(Value::String(s)) => parse_element(&ctx.field_at(0)?, s)?,
        Some(g) => decode_element(ctx, g)?,
        None => ctx.gamma()?,
    };
    match v {
        Value::Object(_) => {
            let i = v.get("i").and_then(Value::as_u64).unwrap_or(0);
            let t = decode_element(ctx, v.get("t").ok_or_else(|| malformed("point needs \"t\""))?)?;
            WeightPoint::new(i, t, gamma)
        }
        _ => WeightPoint::new(0, decode_element(ctx, v)?, gamma),
    }
}

pub fn encode_series(f: &TateSeries) -> Value {
    json!({
        "level": f.level(),
        "coeffs": f.coeffs().iter().map(encode_element).collect::<Vec<_>>(),
        "tail_bound_exp": encode_rational(f.tail_exp()),
    })
}

pub fn decode_series(ctx: &Context, v: &Value) -> Result<TateSeries> {
    let level = get_u32(v, "level")?;
    let coeffs = decode_elements(ctx, v.get("coeffs"), "coeffs")?;
    let tail = match v.get("tail_bound_exp") {
        Some(t) => decode_rational(t)?,
        None => None,
    };
    TateSeries::with_tail(&ctx.field()?, level, coeffs, tail)
}

pub fn encode_distribution(mu: &BoundedDistribution) -> Value {
    json!({
        "level": mu.level(),
        "moments": mu.moments().iter().map(encode_element).collect::<Vec<_>>(),
        "C_exp": encode_rational(mu.bound_exp()),
    })
}

/// Without `"C_exp"` the smallest certifying constant is used.
pub fn decode_distribution(ctx: &Context, v: &Value) -> Result<BoundedDistribution> {
    let level = get_u32(v, "level")?;
    let moments = decode_elements(ctx, v.get("moments"), "moments")?;
    let bound = match v.get("C_exp") {
        Some(c) => decode_rational(c)?,
        None => BoundedDistribution::minimal_bound(&moments, level),
    };
    BoundedDistribution::from_moments(&ctx.field()?, moments, level, bound)
}

pub fn encode_galois(g: &GaloisElement) -> Value {
    json!({
        "chi": encode_element(g.chi()),
        "scope_m": g.scope(),
    })
}

/// A Galois object, or an expression for `χ(g)` with scope `m_max`.
pub fn decode_galois(ctx: &Context, v: &Value) -> Result<GaloisElement> {
    let q = ctx.field_at(0)?;
    let (chi, scope) = match v {
        Value::Object(_) => {
            let chi = v.get("chi").ok_or_else(|| malformed("Galois element needs \"chi\""))?;
            let scope = v
                .get("scope_m")
                .and_then(Value::as_u64)
                .map_or(ctx.config.m_max, |s| s as u32);
            (chi, scope)
        }
        _ => (v, ctx.config.m_max),
    };
    let chi = match chi {
        Value::String(s) => parse_element(&q, s)?,
        other => decode_element(ctx, other)?,
    };
    GaloisElement::new(chi, scope)
}

pub fn encode_bsen(b: &BSenElement) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "coeffs".into(),
        Value::Array(b.coeffs().iter().map(encode_element).collect()),
    );
    obj.insert("filtration".into(), json!(b.filtration()));
    obj.insert("bound_exp".into(), encode_rational(b.bound_exp()));
    if b.is_polynomial() {
        obj.insert("polynomial".into(), json!(true));
    }
    Value::Object(obj)
}

/// Without `"bound_exp"`, or with `"polynomial": true`, the input is read as a
/// polynomial in `T` and certified with its own coefficients.
pub fn decode_bsen(ctx: &Context, v: &Value) -> Result<BSenElement> {
    let filtration = get_u32(v, "filtration")?;
    let coeffs = decode_elements(ctx, v.get("coeffs"), "coeffs")?;
    let polynomial = v.get("polynomial").and_then(Value::as_bool).unwrap_or(false);
    match v.get("bound_exp") {
        Some(b) if !polynomial => BSenElement::new(&ctx.field()?, coeffs, filtration, decode_rational(b)?),
        _ => BSenElement::polynomial(&ctx.field()?, coeffs, filtration),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: u32) -> Context {
        Context::new(Config::default(), m).unwrap()
    }

    #[test]
    fn element_round_trip() {
        let c = ctx(2);
        for src in ["0", "1", "z", "1 + 2*z^5", "p^3*z - 7", "1/p + z", "p^-2*(1+z)"] {
            let x = decode_element(&c, &json!(src)).unwrap();
            let enc = encode_element(&x);
            let y = decode_element(&c, &enc).unwrap();
            assert!(x.identical(&y), "{src}");
            assert_eq!(encode_element(&y), enc);
        }
    }

    #[test]
    fn plain_encoding_has_no_extension_keys() {
        let c = ctx(1);
        let x = decode_element(&c, &json!("2 + p*z")).unwrap();
        let enc = encode_element(&x);
        assert_eq!(enc, json!({"p":3,"m":1,"N":24,"coeffs":["2","3"]}));
        let neg = encode_element(&decode_element(&c, &json!("1/p")).unwrap());
        assert_eq!(neg["shift"], json!(-1));
    }

    #[test]
    fn rationals() {
        assert_eq!(encode_rational(Some(Rational64::new(3, 2))), json!("3/2"));
        assert_eq!(encode_rational(Some(Rational64::from_integer(-2))), json!(-2));
        assert_eq!(decode_rational(&json!("-1/2")).unwrap(), Some(Rational64::new(-1, 2)));
        assert_eq!(decode_rational(&Value::Null).unwrap(), None);
        assert!(decode_rational(&json!(true)).is_err());
    }

    #[test]
    fn wrong_prime_is_incompatible() {
        let c = ctx(0);
        let err = decode_element(&c, &json!({"p":5,"m":0,"N":24,"coeffs":["1"]})).unwrap_err();
        assert_eq!(err.code(), "INCOMPATIBLE");
    }

    #[test]
    fn distribution_and_series_round_trip() {
        let c = ctx(1);
        let mu = decode_distribution(&c, &json!({"level":1,"moments":["1","p","z"]})).unwrap();
        let enc = encode_distribution(&mu);
        assert_eq!(encode_distribution(&decode_distribution(&c, &enc).unwrap()), enc);
        let f = decode_series(&c, &json!({"level":0,"coeffs":["1","z"],"tail_bound_exp":"-1/2"})).unwrap();
        let enc = encode_series(&f);
        assert_eq!(enc["tail_bound_exp"], json!("-1/2"));
        assert_eq!(encode_series(&decode_series(&c, &enc).unwrap()), enc);
        let b = decode_bsen(&c, &json!({"filtration":1,"coeffs":["1","z"]})).unwrap();
        let enc = encode_bsen(&b);
        assert_eq!(encode_bsen(&decode_bsen(&c, &enc).unwrap()), enc);
    }
}
