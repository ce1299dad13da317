//! Coalitions as bit masks: bit `i - 1` stands for player `i`.

use crate::error::{Error, Result};

pub fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

pub fn mask_of(members: &[usize]) -> u64 {
    members.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

pub fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// `{1,2}` or `{}`.
pub fn render(mask: u64) -> String {
    let parts: Vec<String> = members(mask).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Accepts `{1,2}`, `1,2`, `{}`, `∅` or the empty string.
pub fn parse(n: usize, text: &str) -> Result<u64> {
    let s = text.trim();
    let inner = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .unwrap_or(s)
        .trim();
    if inner.is_empty() || inner == "∅" {
        return Ok(0);
    }
    let mut mask = 0u64;
    for part in inner.split(',') {
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad coalition {text:?}")))?;
        if i == 0 || i > n {
            return Err(Error::parse(format!("player {i} outside 1..{n} in {text:?}")));
        }
        if mask >> (i - 1) & 1 == 1 {
            return Err(Error::parse(format!("player {i} repeated in {text:?}")));
        }
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        assert_eq!(render(0b101), "{1,3}");
        assert_eq!(render(0), "{}");
        assert_eq!(parse(3, "{1,3}").unwrap(), 0b101);
        assert_eq!(parse(3, "2,3").unwrap(), 0b110);
        assert_eq!(parse(3, "∅").unwrap(), 0);
        assert!(parse(3, "{4}").is_err());
        assert!(parse(3, "{1,1}").is_err());
    }
}
