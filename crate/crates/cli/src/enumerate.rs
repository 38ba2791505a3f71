//! CSV tables behind `g2verify enumerate`.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use g2l_core::cubicforms::{index_p_sublattices, subring_counts, subring_csv, BinaryCubic};
use g2l_core::localzeta::{coset_table_csv, LocalSetting};

use crate::config::{MAX_SUBRING_INDEX, MAX_VAL_BOUND};

/// Subring counts of `Z^3` for every index up to `bound`.
pub fn subrings(bound: u64) -> Result<String> {
    if bound == 0 || bound > MAX_SUBRING_INDEX {
        bail!("bound must lie in 1..={}", MAX_SUBRING_INDEX);
    }
    Ok(subring_csv(&subring_counts(bound)?))
}

/// Coset representatives for the split form with `val(det) <= val_bound`.
pub fn cosets(p: u64, val_bound: u32) -> Result<String> {
    if val_bound > MAX_VAL_BOUND {
        bail!("val-bound {} exceeds {}", val_bound, MAX_VAL_BOUND);
    }
    Ok(coset_table_csv(&LocalSetting::split(p), val_bound))
}

/// Histogram of the contents of the `p + 1` index-p sublattice forms.
pub fn sublattice_contents(form: &[i64; 4], p: u64) -> Result<String> {
    let f = BinaryCubic::from_ints(form[0], form[1], form[2], form[3]);
    if f.is_zero() {
        bail!("the zero form has no content");
    }
    let mut hist: BTreeMap<i64, usize> = BTreeMap::new();
    for (_, c) in index_p_sublattices(&f, p)? {
        *hist.entry(c).or_default() += 1;
    }
    let mut out = String::from("content,count\n");
    for (c, n) in hist {
        out.push_str(&format!("{},{}\n", c, n));
    }
    Ok(out)
}

/// Parse `a,b,c,d`.
pub fn parse_form(s: &str) -> Result<[i64; 4]> {
    let v: Vec<i64> = s.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>()?;
    match v.as_slice() {
        [a, b, c, d] => Ok([*a, *b, *c, *d]),
        _ => bail!("a form needs four coefficients a,b,c,d"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_histogram() {
        assert_eq!(sublattice_contents(&[1, 0, 0, 0], 2).unwrap(), "content,count\n-1,2\n2,1\n");
    }

    #[test]
    fn coset_rows() {
        assert_eq!(cosets(2, 2).unwrap().lines().count(), 1 + 11);
    }

    #[test]
    fn subring_first_row() {
        let csv = subrings(10).unwrap();
        assert_eq!(csv.lines().nth(1).unwrap(), "1,1,1:1");
        assert!(subrings(MAX_SUBRING_INDEX + 1).is_err());
    }
}
