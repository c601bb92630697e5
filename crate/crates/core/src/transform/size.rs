//! Supported transform lengths: the 3-smooth integers `2^a 3^b`.
//!
//! Block sizes are drawn from this set as well; the block transforms always
//! have even length `2m`, so they carry at least one factor of two.

/// Strips all factors of 2 and 3 and reports whether anything else remains.
pub fn is_supported(n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let mut k = n;
    while k.is_multiple_of(2) {
        k /= 2;
    }
    while k.is_multiple_of(3) {
        k /= 3;
    }
    k == 1
}

/// Smallest 3-smooth integer that is `>= n`.
pub fn next_supported(n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    let mut best = usize::MAX;
    let mut pow3 = 1usize;
    loop {
        let mut v = pow3;
        while v < n {
            v *= 2;
        }
        best = best.min(v);
        if pow3 >= n {
            break;
        }
        pow3 *= 3;
    }
    best
}

/// Ascending iterator over the 3-smooth integers starting at 1.
pub fn supported_sizes() -> impl Iterator<Item = usize> {
    let mut current = 0usize;
    std::iter::from_fn(move || {
        current = next_supported(current + 1);
        Some(current)
    })
}

/// Radix schedule used by the FFT: fours first, then a two, then threes.
pub(crate) fn factorize(n: usize) -> Option<Vec<usize>> {
    if !is_supported(n) {
        return None;
    }
    let mut factors = Vec::new();
    let mut k = n;
    while k.is_multiple_of(4) {
        factors.push(4);
        k /= 4;
    }
    if k.is_multiple_of(2) {
        factors.push(2);
        k /= 2;
    }
    while k.is_multiple_of(3) {
        factors.push(3);
        k /= 3;
    }
    Some(factors)
}
