//! Inversion of piecewise-linear connection functions onto index intervals.

use std::ops::Range;

use crate::topology::LinearSegment;

#[inline]
pub(crate) fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

#[inline]
pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    -floor_div(-a, b)
}

fn clamp(lo: i64, hi: i64, within: &Range<u64>) -> Range<u64> {
    let lo = lo.max(within.start as i64);
    let hi = hi.min(within.end as i64);
    if lo >= hi {
        0..0
    } else {
        lo as u64..hi as u64
    }
}

/// Indices `c` in `within` with `seg.eval(c)` in `[target.start, target.end)`.
pub fn invert_segment(seg: &LinearSegment, target: &Range<i64>, within: &Range<u64>) -> Range<u64> {
    let (slope, icpt) = (seg.slope, seg.intercept);
    let range = intersect(&seg.c_range, within);
    if range.is_empty() || target.is_empty() {
        return 0..0;
    }
    let (lo, hi) = match slope {
        0 if target.contains(&icpt) => return range,
        0 => return 0..0,
        s if s > 0 => (ceil_div(target.start - icpt, s), floor_div(target.end - 1 - icpt, s) + 1),
        s => (ceil_div(target.end - 1 - icpt, s), floor_div(target.start - icpt, s) + 1),
    };
    clamp(lo, hi, &range)
}

pub(crate) fn intersect(a: &Range<u64>, b: &Range<u64>) -> Range<u64> {
    let lo = a.start.max(b.start);
    let hi = a.end.min(b.end);
    if lo >= hi {
        0..0
    } else {
        lo..hi
    }
}

/// Indices `c` where `f(c)` and `g(c)` fall in the same block of `block`
/// consecutive values.
pub fn co_block(f: &LinearSegment, g: &LinearSegment, block: u64) -> Vec<Range<u64>> {
    let range = intersect(&f.c_range, &g.c_range);
    if range.is_empty() {
        return Vec::new();
    }
    // Walk the blocks visited by the flatter function.
    let (pivot, other) = if f.slope.abs() <= g.slope.abs() { (f, g) } else { (g, f) };
    let block = block as i64;
    let (v0, v1) = (pivot.eval(range.start), pivot.eval(range.end - 1));
    let (j0, j1) = (floor_div(v0.min(v1), block), floor_div(v0.max(v1), block));
    let mut out = Vec::new();
    for j in j0..=j1 {
        let target = j * block..(j + 1) * block;
        let a = invert_segment(pivot, &target, &range);
        if a.is_empty() {
            continue;
        }
        let both = invert_segment(other, &target, &a);
        if !both.is_empty() {
            out.push(both);
        }
    }
    out
}

/// Sorted, disjoint, non-empty half-open intervals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntervalSet {
    ranges: Vec<Range<u64>>,
}

impl IntervalSet {
    pub fn from_ranges(ranges: impl IntoIterator<Item = Range<u64>>) -> Self {
        let mut ranges: Vec<_> = ranges.into_iter().filter(|r| !r.is_empty()).collect();
        ranges.sort_by_key(|r| r.start);
        let mut merged: Vec<Range<u64>> = Vec::with_capacity(ranges.len());
        for r in ranges {
            match merged.last_mut() {
                Some(last) if r.start <= last.end => last.end = last.end.max(r.end),
                _ => merged.push(r),
            }
        }
        IntervalSet { ranges: merged }
    }

    pub fn ranges(&self) -> &[Range<u64>] {
        &self.ranges
    }

    pub fn len(&self) -> u64 {
        self.ranges.iter().map(|r| r.end - r.start).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        let i = self.ranges.partition_point(|r| r.end <= x);
        self.ranges.get(i).is_some_and(|r| r.start <= x)
    }

    /// Removes a single index, splitting its interval if needed.
    pub fn remove(&mut self, x: u64) {
        let i = self.ranges.partition_point(|r| r.end <= x);
        let Some(r) = self.ranges.get(i).cloned() else { return };
        if r.start > x {
            return;
        }
        let parts = [r.start..x, x + 1..r.end];
        self.ranges.splice(i..=i, parts.into_iter().filter(|p| !p.is_empty()));
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.ranges.iter().flat_map(|r| r.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn division_rounding() {
        assert_eq!(floor_div(7, 2), 3);
        assert_eq!(floor_div(-7, 2), -4);
        assert_eq!(floor_div(7, -2), -4);
        assert_eq!(floor_div(-7, -2), 3);
        assert_eq!(ceil_div(7, 2), 4);
        assert_eq!(ceil_div(-7, 2), -3);
        assert_eq!(ceil_div(7, -2), -3);
        assert_eq!(ceil_div(6, 3), 2);
    }

    #[test]
    fn interval_set_ops() {
        let mut s = IntervalSet::from_ranges([5..8, 0..2, 7..10, 3..3]);
        assert_eq!(s.ranges(), &[0..2, 5..10]);
        assert_eq!(s.len(), 7);
        s.remove(6);
        assert_eq!(s.ranges(), &[0..2, 5..6, 7..10]);
        s.remove(0);
        s.remove(5);
        s.remove(4);
        assert_eq!(s.ranges(), &[1..2, 7..10]);
        assert!(s.contains(8) && !s.contains(5));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 7, 8, 9]);
    }

    proptest! {
        #[test]
        fn inversion_matches_pointwise(
            slope in -9i64..10, icpt in -60i64..60,
            start in 0u64..20, len in 0u64..30,
            lo in -40i64..60, width in 1i64..15,
        ) {
            let seg = LinearSegment::new(start..start + len, slope, icpt);
            let target = lo..lo + width;
            let got = invert_segment(&seg, &target, &(0..u64::MAX));
            let want: Vec<u64> = (start..start + len).filter(|&c| target.contains(&seg.eval(c))).collect();
            prop_assert_eq!(got.collect::<Vec<_>>(), want);
        }

        #[test]
        fn co_block_matches_pointwise(
            s1 in -4i64..5, i1 in 0i64..80, s2 in -4i64..5, i2 in 0i64..80,
            a in 0u64..10, b in 0u64..10, block in 1u64..9,
        ) {
            let f = LinearSegment::new(0..20 + a, s1, i1);
            let g = LinearSegment::new(b..25, s2, i2);
            let got = IntervalSet::from_ranges(co_block(&f, &g, block));
            let bi = block as i64;
            let want: Vec<u64> = (b..(20 + a).min(25))
                .filter(|&c| floor_div(f.eval(c), bi) == floor_div(g.eval(c), bi))
                .collect();
            prop_assert_eq!(got.iter().collect::<Vec<_>>(), want);
        }
    }
}
