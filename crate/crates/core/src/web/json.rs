use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::{Plane, Web, WebError, AMBIENT};
use crate::arith::{FieldCtx, PrimeField, Rationals, Q};
use crate::linalg::{Mat, Subspace};

/// JSON encoding of field elements: residues in `[0, p)` for `F_p`,
/// `[numerator, denominator]` string pairs for `Q`.
pub trait JsonField: FieldCtx {
    fn encode(&self, x: &Self::Elem) -> Value;
    fn decode(&self, v: &Value) -> Result<Self::Elem, WebError>;
    /// `Some(p)` for a prime field.
    fn json_prime(&self) -> Option<u64>;
}

impl JsonField for PrimeField {
    fn encode(&self, x: &Self::Elem) -> Value {
        Value::from(self.elem(0).try_add(x).map(|v| v.value()).unwrap_or(0))
    }

    fn decode(&self, v: &Value) -> Result<Self::Elem, WebError> {
        let n = v.as_u64().ok_or_else(|| WebError::Json(format!("expected residue, got {v}")))?;
        if n >= self.p() {
            return Err(WebError::Json(format!("residue {n} out of range for p = {}", self.p())));
        }
        Ok(self.residue(n))
    }

    fn json_prime(&self) -> Option<u64> {
        Some(self.p())
    }
}

impl JsonField for Rationals {
    fn encode(&self, x: &Q) -> Value {
        Value::from(vec![x.numer().to_string(), x.denom().to_string()])
    }

    fn decode(&self, v: &Value) -> Result<Q, WebError> {
        let bad = || WebError::Json(format!("expected [numerator, denominator], got {v}"));
        let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
        let parse = |x: &Value| -> Result<BigInt, WebError> {
            match x {
                Value::String(s) => s.parse().map_err(|_| bad()),
                Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad),
                _ => Err(bad()),
            }
        };
        let (n, d) = (parse(&pair[0])?, parse(&pair[1])?);
        if d == BigInt::from(0) {
            return Err(WebError::Json("zero denominator".into()));
        }
        Ok(Q::new(n, d))
    }

    fn json_prime(&self) -> Option<u64> {
        None
    }
}

/// Serialized web: `prime` is `null` over `Q`, `plane` is an 8x3 basis
/// (rows are coordinates) or `null`, `quadrics` are four 8x8 symmetric
/// matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WebJson {
    pub prime: Option<u64>,
    pub seed: Option<u64>,
    pub plane: Option<Vec<Vec<Value>>>,
    pub quadrics: Vec<Vec<Vec<Value>>>,
}

fn encode_mat<C: JsonField>(ctx: &C, m: &Mat<C::Elem>) -> Vec<Vec<Value>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| ctx.encode(x)).collect()).collect()
}

fn decode_mat<C: JsonField>(ctx: &C, rows: &[Vec<Value>]) -> Result<Mat<C::Elem>, WebError> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|v| ctx.decode(v)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Mat::from_rows(rows)?)
}

impl WebJson {
    pub fn from_web<C: JsonField>(ctx: &C, web: &Web<C::Elem>) -> Self {
        WebJson {
            prime: ctx.json_prime(),
            seed: web.seed(),
            plane: web.plane().map(|p| encode_mat(ctx, p.basis())),
            quadrics: web.quadrics().iter().map(|q| encode_mat(ctx, q)).collect(),
        }
    }

    pub fn to_web<C: JsonField>(&self, ctx: &C) -> Result<Web<C::Elem>, WebError> {
        if self.prime != ctx.json_prime() {
            return Err(WebError::Json(format!(
                "field mismatch: file has prime {:?}, expected {:?}",
                self.prime,
                ctx.json_prime()
            )));
        }
        let plane = match &self.plane {
            Some(rows) => {
                let b = decode_mat(ctx, rows)?;
                if b.rows() != AMBIENT {
                    return Err(WebError::Json("plane basis must have 8 rows".into()));
                }
                Some(Plane::new(Subspace::column_span(&b))?)
            }
            None => None,
        };
        let quadrics = self.quadrics.iter().map(|q| decode_mat(ctx, q)).collect::<Result<_, _>>()?;
        Web::new(quadrics, plane, self.seed)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, WebError> {
        serde_json::from_str(s).map_err(|e| WebError::Json(e.to_string()))
    }

    /// SHA-256 of the field, plane and quadrics (the seed is excluded).
    pub fn content_hash(&self) -> String {
        let body = serde_json::json!({ "prime": self.prime, "plane": self.plane, "quadrics": self.quadrics });
        Sha256::digest(body.to_string().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::sample_web;

    #[test]
    fn round_trip_prime_field() {
        let f = PrimeField::default();
        let web = sample_web(&f, 11, Some(Plane::standard(&f))).unwrap();
        let j = WebJson::from_web(&f, &web);
        let back = WebJson::from_json_str(&j.to_json_string()).unwrap().to_web(&f).unwrap();
        assert_eq!(back, web);
        assert_eq!(j.content_hash().len(), 64);
    }

    #[test]
    fn round_trip_rationals() {
        let q = Rationals::default();
        let web = sample_web(&q, 2, None).unwrap();
        let j = WebJson::from_web(&q, &web);
        assert_eq!(WebJson::from_json_str(&j.to_json_string()).unwrap().to_web(&q).unwrap(), web);
    }

    #[test]
    fn wrong_field_is_rejected() {
        let f = PrimeField::default();
        let web = sample_web(&f, 1, None).unwrap();
        let j = WebJson::from_web(&f, &web);
        assert!(j.to_web(&PrimeField::new(101).unwrap()).is_err());
    }
}
