//! Bitmask arithmetic for subsets of `(Z/m)^2` at a fixed square modulus.
//!
//! Cell `(ra, rb)` maps to bit `ra * m + rb`. Moduli are divisors of 8, so a
//! mask always fits in a `u64`.

pub fn cell(m: u8, ra: u8, rb: u8) -> u32 {
    u32::from(ra) * u32::from(m) + u32::from(rb)
}

pub fn cell_coords(m: u8, idx: u32) -> (u8, u8) {
    ((idx / u32::from(m)) as u8, (idx % u32::from(m)) as u8)
}

pub fn cells(m: u8) -> u32 {
    u32::from(m) * u32::from(m)
}

/// Reduce an integer vector into `(Z/m)^2`.
pub fn wrap(m: u8, v: (i64, i64)) -> (u8, u8) {
    let md = i64::from(m);
    ((v.0.rem_euclid(md)) as u8, (v.1.rem_euclid(md)) as u8)
}

pub fn iter_cells(m: u8, mask: u64) -> impl Iterator<Item = (u8, u8)> {
    (0..cells(m)).filter_map(move |i| {
        if mask >> i & 1 == 1 {
            Some(cell_coords(m, i))
        } else {
            None
        }
    })
}

/// Translate every member by `t`.
pub fn translate(m: u8, mask: u64, t: (i64, i64)) -> u64 {
    let (ta, tb) = wrap(m, t);
    let mut out = 0u64;
    for (ra, rb) in iter_cells(m, mask) {
        let na = (ra + ta) % m;
        let nb = (rb + tb) % m;
        out |= 1 << cell(m, na, nb);
    }
    out
}

/// Image under negation `v -> -v`.
pub fn negate(m: u8, mask: u64) -> u64 {
    let mut out = 0u64;
    for (ra, rb) in iter_cells(m, mask) {
        let na = (m - ra) % m;
        let nb = (m - rb) % m;
        out |= 1 << cell(m, na, nb);
    }
    out
}

/// Whether `t2 - k*v` stays inside `t2` for every member `v` of `t1`.
///
/// This is the residue form of the reflection closure condition: reflecting
/// roots translated by `t1` map roots translated by `t2` to roots translated
/// by `t2 - k*t1`.
pub fn scale_sub_closed(m: u8, t2: u64, k: i64, t1: u64) -> bool {
    if k == 0 || t1 == 0 {
        return true;
    }
    for (ra, rb) in iter_cells(m, t1) {
        let shift = (-k * i64::from(ra), -k * i64::from(rb));
        let image = translate(m, t2, shift);
        if image & !t2 != 0 {
            return false;
        }
    }
    true
}

/// Apply a matrix (mod `m`) to every member cell.
pub fn permute(m: u8, mask: u64, mat: &[[i64; 2]; 2]) -> u64 {
    let mut out = 0u64;
    for (ra, rb) in iter_cells(m, mask) {
        let v = (i64::from(ra), i64::from(rb));
        let image = (
            mat[0][0] * v.0 + mat[0][1] * v.1,
            mat[1][0] * v.0 + mat[1][1] * v.1,
        );
        let (na, nb) = wrap(m, image);
        out |= 1 << cell(m, na, nb);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translate_wraps() {
        let m = 4;
        let mask = 1 << cell(m, 3, 2);
        let out = translate(m, mask, (1, 3));
        assert_eq!(out, 1 << cell(m, 0, 1));
    }

    #[test]
    fn negate_involutive() {
        let m = 4;
        let mask = (1 << cell(m, 1, 2)) | (1 << cell(m, 0, 3));
        assert_eq!(negate(m, negate(m, mask)), mask);
    }
}
