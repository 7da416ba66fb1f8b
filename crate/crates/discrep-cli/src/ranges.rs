//! Flag-value parsers for integer lists: inclusive `a:b` ranges, comma
//! lists, and ellipsis progressions like `2,4,...,256` (geometric when the
//! leading terms have a constant integer ratio that lands exactly on the
//! endpoint, arithmetic otherwise).

use discrep_core::Error;

fn parse_int(tok: &str) -> Result<u64, Error> {
    tok.trim()
        .parse::<u64>()
        .map_err(|e| Error::Parse(format!("bad integer {tok:?}: {e}")))
}

/// Parses `"7"`, `"a:b"`, `"x,y,z"`, or `"x,y,...,end"`.
pub fn parse_u64_list(text: &str) -> Result<Vec<u64>, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty list".into()));
    }
    if let Some((a, b)) = text.split_once(':') {
        let (lo, hi) = (parse_int(a)?, parse_int(b)?);
        if lo > hi {
            return Err(Error::Parse(format!("range {lo}:{hi} is reversed")));
        }
        return Ok((lo..=hi).collect());
    }
    let tokens: Vec<&str> = text.split(',').map(str::trim).collect();
    if let Some(pos) = tokens.iter().position(|t| *t == "...") {
        if pos < 2 || pos + 2 != tokens.len() {
            return Err(Error::Parse(format!(
                "ellipsis list needs at least two leading terms and one endpoint: {text:?}"
            )));
        }
        let head: Vec<u64> = tokens[..pos].iter().map(|t| parse_int(t)).collect::<Result<_, _>>()?;
        let end = parse_int(tokens[pos + 1])?;
        return extend_progression(&head, end);
    }
    tokens.iter().map(|t| parse_int(t)).collect()
}

fn extend_progression(head: &[u64], end: u64) -> Result<Vec<u64>, Error> {
    let last = *head.last().unwrap();
    if end <= last {
        return Err(Error::Parse(format!(
            "ellipsis endpoint {end} does not extend the sequence"
        )));
    }
    // geometric if consecutive ratios are a constant integer >= 2 and the
    // endpoint is reached exactly
    let geometric_ratio = || -> Option<u64> {
        let first = head[0];
        if first == 0 {
            return None;
        }
        let r = head[1].checked_div(first)?;
        if r < 2 || head[1] != first * r {
            return None;
        }
        for w in head.windows(2) {
            if w[1] != w[0].checked_mul(r)? {
                return None;
            }
        }
        let mut v = last;
        while v < end {
            v = v.checked_mul(r)?;
        }
        (v == end).then_some(r)
    };
    if let Some(r) = geometric_ratio() {
        let mut out = head.to_vec();
        let mut v = last;
        while v < end {
            v *= r;
            out.push(v);
        }
        return Ok(out);
    }
    let d = head[1]
        .checked_sub(head[0])
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::Parse("ellipsis list must be increasing".into()))?;
    for w in head.windows(2) {
        if w[1] - w[0] != d {
            return Err(Error::Parse(
                "ellipsis terms form neither a geometric nor an arithmetic progression".into(),
            ));
        }
    }
    if (end - last) % d != 0 {
        return Err(Error::Parse(format!(
            "endpoint {end} is not reachable with step {d}"
        )));
    }
    let mut out = head.to_vec();
    let mut v = last;
    while v < end {
        v += d;
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_and_comma() {
        assert_eq!(parse_u64_list("7").unwrap(), vec![7]);
        assert_eq!(parse_u64_list("1, 5,10").unwrap(), vec![1, 5, 10]);
    }

    #[test]
    fn colon_range() {
        assert_eq!(parse_u64_list("2:5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_u64_list("3:3").unwrap(), vec![3]);
        assert!(parse_u64_list("5:2").is_err());
    }

    #[test]
    fn geometric_ellipsis() {
        assert_eq!(
            parse_u64_list("2,4,...,256").unwrap(),
            vec![2, 4, 8, 16, 32, 64, 128, 256]
        );
        assert_eq!(parse_u64_list("1,3,9,...,81").unwrap(), vec![1, 3, 9, 27, 81]);
    }

    #[test]
    fn arithmetic_ellipsis() {
        assert_eq!(parse_u64_list("1,2,...,6").unwrap(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(parse_u64_list("10,20,...,50").unwrap(), vec![10, 20, 30, 40, 50]);
        // ratio 2 but endpoint off the doubling track falls back to step 2
        assert_eq!(parse_u64_list("2,4,...,10").unwrap(), vec![2, 4, 6, 8, 10]);
    }

    #[test]
    fn malformed_lists() {
        assert!(parse_u64_list("").is_err());
        assert!(parse_u64_list("2,...,16").is_err());
        assert!(parse_u64_list("2,4,...,").is_err());
        assert!(parse_u64_list("2,4,...,15").is_err());
        assert!(parse_u64_list("5,5,...,10").is_err());
        assert!(parse_u64_list("a:b").is_err());
        assert!(parse_u64_list("1,x").is_err());
    }
}
