//! Shared text syntax for polynomials: `c*v1^e*w2 + ... - ...`.

use std::fmt;

use super::{AlgError, Scalar};

pub(crate) struct Factor {
    pub name: String,
    pub index: u32,
    pub exp: u32,
}

fn parse_factor(tok: &str) -> Result<Result<Scalar, Factor>, AlgError> {
    let bad = || AlgError::Parse(format!("invalid factor {tok:?}"));
    if tok.starts_with(|c: char| c.is_ascii_digit()) {
        return Ok(Ok(tok.parse()?));
    }
    let (base, exp) = match tok.split_once('^') {
        Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad())?),
        None => (tok, 1),
    };
    let split = base.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let (name, idx) = base.split_at(split);
    if name.is_empty() {
        return Err(bad());
    }
    let index = idx.parse::<u32>().map_err(|_| bad())?;
    Ok(Err(Factor { name: name.to_string(), index, exp }))
}

/// Splits a sum into signed terms, each a coefficient and a factor list in order.
pub(crate) fn parse_sum(s: &str) -> Result<Vec<(Scalar, Vec<Factor>)>, AlgError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(AlgError::Parse("empty polynomial".into()));
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut neg = false;
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && !cur.ends_with('^') {
            if cur.is_empty() && i > 0 {
                return Err(AlgError::Parse(format!("dangling sign in {s:?}")));
            }
            if !cur.is_empty() {
                pieces.push((neg, std::mem::take(&mut cur)));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(AlgError::Parse(format!("trailing sign in {s:?}")));
    }
    pieces.push((neg, cur));
    let mut out = Vec::new();
    for (neg, piece) in pieces {
        let mut coeff = Scalar::one();
        let mut factors = Vec::new();
        for tok in piece.split('*') {
            if tok.is_empty() {
                return Err(AlgError::Parse(format!("empty factor in {s:?}")));
            }
            match parse_factor(tok)? {
                Ok(c) => coeff *= &c,
                Err(f) => factors.push(f),
            }
        }
        if neg {
            coeff = -coeff;
        }
        out.push((coeff, factors));
    }
    Ok(out)
}

/// Writes `c1*m1 + c2*m2 - ...`; unit coefficients are elided on non-constant terms.
pub(crate) fn write_sum<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a Scalar, Option<String>)>,
{
    let mut first = true;
    for (c, mono) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        match mono {
            None => write!(f, "{abs}")?,
            Some(m) if abs.is_one() => write!(f, "{m}")?,
            Some(m) => write!(f, "{abs}*{m}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
