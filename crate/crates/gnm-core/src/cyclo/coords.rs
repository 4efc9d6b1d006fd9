//! Coordinate vectors for cyclotomic integers, with a machine-word fast lane.
//!
//! A value is a vector of integers of length phi(N), the coordinates in the
//! power basis 1, x, ..., x^{phi(N)-1} modulo Phi_N. Almost every vector that
//! arises in practice fits in i128, so the representation carries two lanes
//! and keeps the invariant that the big lane is used only when some entry
//! does not fit. That makes the lane choice canonical, so derived equality
//! and hashing agree with numeric equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::intpoly::FieldTable;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coords {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl Coords {
    pub fn zeros(len: usize) -> Self {
        Coords::Small(vec![0; len])
    }

    pub fn len(&self) -> usize {
        match self {
            Coords::Small(v) => v.len(),
            Coords::Big(v) => v.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coords::Small(v) => v.iter().all(|&c| c == 0),
            Coords::Big(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    /// True when only the constant coordinate may be nonzero.
    pub fn is_constant(&self) -> bool {
        match self {
            Coords::Small(v) => v[1..].iter().all(|&c| c == 0),
            Coords::Big(v) => v[1..].iter().all(|c| c.is_zero()),
        }
    }

    pub fn get_big(&self, i: usize) -> BigInt {
        match self {
            Coords::Small(v) => BigInt::from(v[i]),
            Coords::Big(v) => v[i].clone(),
        }
    }

    pub fn to_big(&self) -> Vec<BigInt> {
        match self {
            Coords::Small(v) => v.iter().map(|&c| BigInt::from(c)).collect(),
            Coords::Big(v) => v.clone(),
        }
    }

    /// Wrap a big vector, dropping to the small lane when everything fits.
    pub fn demote(v: Vec<BigInt>) -> Self {
        let small: Option<Vec<i128>> = v.iter().map(|c| c.to_i128()).collect();
        match small {
            Some(s) => Coords::Small(s),
            None => Coords::Big(v),
        }
    }

    pub fn from_small(v: Vec<i128>) -> Self {
        Coords::Small(v)
    }

    pub fn neg(&self) -> Self {
        match self {
            Coords::Small(v) => {
                if let Some(out) = v.iter().map(|&c| c.checked_neg()).collect() {
                    return Coords::Small(out);
                }
                Coords::demote(v.iter().map(|&c| -BigInt::from(c)).collect())
            }
            Coords::Big(v) => Coords::demote(v.iter().map(|c| -c).collect()),
        }
    }

    /// sa * a + sb * b, elementwise; lengths must match.
    pub fn linear_comb(a: &Coords, sa: &BigInt, b: &Coords, sb: &BigInt) -> Coords {
        debug_assert_eq!(a.len(), b.len());
        if let (Coords::Small(av), Coords::Small(bv), Some(sa_s), Some(sb_s)) =
            (a, b, sa.to_i128(), sb.to_i128())
        {
            let small: Option<Vec<i128>> = av
                .iter()
                .zip(bv.iter())
                .map(|(&x, &y)| {
                    let p = x.checked_mul(sa_s)?;
                    let q = y.checked_mul(sb_s)?;
                    p.checked_add(q)
                })
                .collect();
            if let Some(out) = small {
                return Coords::Small(out);
            }
        }
        let av = a.to_big();
        let bv = b.to_big();
        let out: Vec<BigInt> = av
            .iter()
            .zip(bv.iter())
            .map(|(x, y)| x * sa + y * sb)
            .collect();
        Coords::demote(out)
    }

    /// Multiply two canonical vectors and reduce modulo Phi_N via the table's
    /// sparse recurrence.
    pub fn mul_reduce(a: &Coords, b: &Coords, table: &FieldTable) -> Coords {
        debug_assert_eq!(a.len(), table.phi);
        debug_assert_eq!(b.len(), table.phi);
        if let (Coords::Small(av), Coords::Small(bv)) = (a, b) {
            if let Some(out) = mul_reduce_small(av, bv, table) {
                return Coords::Small(out);
            }
        }
        let av = a.to_big();
        let bv = b.to_big();
        Coords::demote(mul_reduce_big(&av, &bv, table))
    }

    /// Reduce a raw coefficient vector of any length modulo Phi_N.
    pub fn reduce_raw_big(mut raw: Vec<BigInt>, table: &FieldTable) -> Coords {
        let phi = table.phi;
        if raw.len() < phi {
            raw.resize(phi, BigInt::zero());
        }
        for e in (phi..raw.len()).rev() {
            if raw[e].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut raw[e]);
            for &(j, coef) in &table.reduction {
                let add = &c * coef;
                raw[e - phi + j] += add;
            }
        }
        raw.truncate(phi);
        Coords::demote(raw)
    }

    /// gcd of all entries, as a nonnegative BigInt (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        match self {
            Coords::Small(v) => {
                let mut g: i128 = 0;
                for &c in v {
                    g = g.gcd(&c);
                    if g == 1 {
                        break;
                    }
                }
                BigInt::from(g)
            }
            Coords::Big(v) => {
                let mut g = BigInt::zero();
                for c in v {
                    g = g.gcd(c);
                }
                g.abs()
            }
        }
    }

    /// Divide every entry by g exactly.
    pub fn div_exact(&self, g: &BigInt) -> Coords {
        match (self, g.to_i128()) {
            (Coords::Small(v), Some(gs)) => Coords::Small(v.iter().map(|&c| c / gs).collect()),
            _ => {
                let out: Vec<BigInt> = self.to_big().iter().map(|c| c / g).collect();
                Coords::demote(out)
            }
        }
    }
}

fn mul_reduce_small(a: &[i128], b: &[i128], table: &FieldTable) -> Option<Vec<i128>> {
    let phi = table.phi;
    if phi == 0 {
        return Some(vec![]);
    }
    let mut buf = vec![0i128; 2 * phi - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let p = x.checked_mul(y)?;
            buf[i + j] = buf[i + j].checked_add(p)?;
        }
    }
    for e in (phi..buf.len()).rev() {
        let c = buf[e];
        if c == 0 {
            continue;
        }
        buf[e] = 0;
        for &(j, coef) in &table.reduction {
            let p = c.checked_mul(coef)?;
            buf[e - phi + j] = buf[e - phi + j].checked_add(p)?;
        }
    }
    buf.truncate(phi);
    Some(buf)
}

fn mul_reduce_big(a: &[BigInt], b: &[BigInt], table: &FieldTable) -> Vec<BigInt> {
    let phi = table.phi;
    if phi == 0 {
        return vec![];
    }
    let mut buf = vec![BigInt::zero(); 2 * phi - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            buf[i + j] += x * y;
        }
    }
    for e in (phi..buf.len()).rev() {
        if buf[e].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut buf[e]);
        for &(j, coef) in &table.reduction {
            buf[e - phi + j] += &c * coef;
        }
    }
    buf.truncate(phi);
    buf
}
