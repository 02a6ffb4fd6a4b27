//! Text forms: `B5:[0,0,1,1,1]`, `B5:[1/2,0,3]`, `D4:SU(4)-`, `B5:B2xSU(3)`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::element::{ElementType, SignClass, TorusElement};
use crate::error::{Error, Result};
use crate::root_system::Family;

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

/// An integer or a fraction `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    parse_rational_at(s, 0)
}

fn parse_rational_at(s: &str, pos: usize) -> Result<BigRational> {
    let t = s.trim();
    let lead = pos + (s.len() - s.trim_start().len());
    let int = |part: &str, at: usize| -> Result<BigInt> {
        let p = part.trim();
        let body = p.strip_prefix(['+', '-']).unwrap_or(p);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return perr(at, format!("expected an integer or p/q, found {t:?}"));
        }
        Ok(BigInt::from_str(p.strip_prefix('+').unwrap_or(p)).expect("digits checked"))
    };
    match t.split_once('/') {
        None => Ok(BigRational::from_integer(int(t, lead)?)),
        Some((p, q)) => {
            let num = int(p, lead)?;
            let den = int(q, lead + p.len() + 1)?;
            if den.is_zero() {
                return perr(lead + p.len() + 1, "zero denominator");
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Split `B5:...` into the family, rank and the offset of the body.
fn parse_head(s: &str) -> Result<(Family, usize, usize)> {
    let Some(colon) = s.find(':') else {
        return perr(0, "expected FAMILY RANK ':' e.g. B5:[0,1,1]");
    };
    let head = s[..colon].trim();
    let mut chars = head.chars();
    let family = match chars.next() {
        Some(c) => Family::from_str(&c.to_string()).or_else(|_| perr(0, format!("unknown family {c:?}")))?,
        None => return perr(0, "missing family"),
    };
    let rank_str = chars.as_str();
    let rank: usize = rank_str.parse().or_else(|_| perr(1, format!("bad rank {rank_str:?}")))?;
    family.check_rank(rank).or_else(|e| perr(1, e.to_string()))?;
    Ok((family, rank, colon + 1))
}

/// Parse either the value form or the type form. The type form yields the
/// standard witness of the type.
pub fn parse_element(s: &str) -> Result<TorusElement> {
    let (family, rank, at) = parse_head(s)?;
    let body = &s[at..];
    let lead = body.len() - body.trim_start().len();
    if body.trim_start().starts_with('[') {
        parse_values(family, rank, body.trim(), at + lead)
    } else {
        Ok(parse_type_at(family, rank, body, at)?.witness())
    }
}

fn parse_values(family: Family, rank: usize, body: &str, at: usize) -> Result<TorusElement> {
    let Some(inner) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) else {
        return perr(at, "expected a bracketed list [v1,v2,...]");
    };
    let mut values = Vec::new();
    let mut off = at + 1;
    if !inner.trim().is_empty() {
        for item in inner.split(',') {
            values.push(parse_rational_at(item, off)?);
            off += item.len() + 1;
        }
    }
    TorusElement::new(family, rank, values).or_else(|e| perr(at, e.to_string()))
}

/// Parse a type such as `B2xSU(3)` or `SU(4)-` for the given ambient algebra.
/// Unlisted coordinates become SU(1) blocks.
pub fn parse_type(family: Family, rank: usize, body: &str) -> Result<ElementType> {
    family.check_rank(rank)?;
    parse_type_at(family, rank, body, 0)
}

fn parse_type_at(family: Family, rank: usize, body: &str, at: usize) -> Result<ElementType> {
    let mut text = body.trim_end();
    let mut sign = None;
    if let Some(rest) = text.strip_suffix('+') {
        sign = Some((SignClass::Plus, at + rest.len()));
        text = rest;
    } else if let Some(rest) = text.strip_suffix('-') {
        sign = Some((SignClass::Minus, at + rest.len()));
        text = rest;
    }
    let mut zero_block = None;
    let mut parts = Vec::new();
    let mut off = at;
    for raw in text.split(['x', '×', '*']) {
        let lead = raw.len() - raw.trim_start().len();
        let f = raw.trim();
        let pos = off + lead;
        off += raw.len() + 1;
        if f.is_empty() {
            return perr(pos, "empty factor");
        }
        if let Some(arg) = f.strip_prefix("SU(").and_then(|r| r.strip_suffix(')')) {
            let k: usize = arg.trim().parse().or_else(|_| perr(pos + 3, format!("bad SU size {arg:?}")))?;
            if k == 0 {
                return perr(pos + 3, "SU(0) is not a factor");
            }
            parts.push(k);
            continue;
        }
        let letter = f.chars().next().expect("nonempty");
        let digits = &f[letter.len_utf8()..];
        let j = match (Family::from_str(&letter.to_string()), digits.parse::<usize>()) {
            (Ok(fam), Ok(j)) if fam == family && family != Family::A => j,
            (Ok(fam), Ok(_)) if fam != Family::A => {
                return perr(pos, format!("a {fam} factor cannot occur in {family}{rank}"));
            }
            _ => return perr(pos, format!("unrecognized factor {f:?}")),
        };
        if zero_block.replace(j).is_some() {
            return perr(pos, format!("more than one {family} factor"));
        }
    }
    let zero_block = zero_block.unwrap_or(0);
    let total = family.ambient_dim(rank);
    let used = zero_block + parts.iter().sum::<usize>();
    if used > total {
        return perr(at, format!("factors use {used} coordinates but {family}{rank} has {total}"));
    }
    parts.extend(std::iter::repeat_n(1, total - used));
    parts.sort_unstable_by(|a, b| b.cmp(a));
    if zero_block == total || (family == Family::A && parts.len() == 1) {
        return perr(at, "this type is the zero element");
    }
    let sign = if ElementType::sign_is_meaningful(family, zero_block, &parts) {
        match sign {
            Some((s, _)) => s,
            None if rank == 4 => {
                return perr(at + body.len(), "D4 types with only even blocks need a sign class (+ or -)");
            }
            None => SignClass::Plus,
        }
    } else {
        match sign {
            Some((SignClass::Minus, p)) => return perr(p, "no sign class for this type"),
            _ => SignClass::NotApplicable,
        }
    };
    Ok(ElementType { family, rank, zero_block, parts, sign })
}

impl FromStr for TorusElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_element(s)
    }
}

impl FromStr for ElementType {
    type Err = Error;

    /// `D4:SU(4)-` style; a value list is also accepted and classified.
    fn from_str(s: &str) -> Result<Self> {
        let (family, rank, at) = parse_head(s)?;
        if s[at..].trim_start().starts_with('[') {
            parse_element(s)?.element_type()
        } else {
            parse_type_at(family, rank, &s[at..], at)
        }
    }
}
