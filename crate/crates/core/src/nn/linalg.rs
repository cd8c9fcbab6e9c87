//! Thin row-major wrappers over the dgemm kernel. Shapes are asserted here
//! so the unsafe FFI-style calls stay contained in one place.

/// c = a(m x k) * b(k x n), overwriting c.
pub(crate) fn gemm(m: usize, k: usize, n: usize, a: &[f64], b: &[f64], c: &mut [f64]) {
    assert_eq!(a.len(), m * k);
    assert_eq!(b.len(), k * n);
    assert_eq!(c.len(), m * n);
    unsafe {
        matrixmultiply::dgemm(
            m,
            k,
            n,
            1.0,
            a.as_ptr(),
            k as isize,
            1,
            b.as_ptr(),
            n as isize,
            1,
            0.0,
            c.as_mut_ptr(),
            n as isize,
            1,
        );
    }
}

/// c = a(m x k) * b(n x k)^T, overwriting c.
pub(crate) fn gemm_nt(m: usize, k: usize, n: usize, a: &[f64], b: &[f64], c: &mut [f64]) {
    assert_eq!(a.len(), m * k);
    assert_eq!(b.len(), n * k);
    assert_eq!(c.len(), m * n);
    unsafe {
        matrixmultiply::dgemm(
            m,
            k,
            n,
            1.0,
            a.as_ptr(),
            k as isize,
            1,
            b.as_ptr(),
            1,
            k as isize,
            0.0,
            c.as_mut_ptr(),
            n as isize,
            1,
        );
    }
}

/// c = a(k x m)^T * b(k x n), overwriting c.
pub(crate) fn gemm_tn(m: usize, k: usize, n: usize, a: &[f64], b: &[f64], c: &mut [f64]) {
    assert_eq!(a.len(), k * m);
    assert_eq!(b.len(), k * n);
    assert_eq!(c.len(), m * n);
    unsafe {
        matrixmultiply::dgemm(
            m,
            k,
            n,
            1.0,
            a.as_ptr(),
            1,
            m as isize,
            b.as_ptr(),
            n as isize,
            1,
            0.0,
            c.as_mut_ptr(),
            n as isize,
            1,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gemm_matches_hand_product() {
        // a = [[1, 2], [3, 4], [5, 6]], b = [[1, 0, 2], [0, 1, 3]]
        let a = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let b = [1.0, 0.0, 2.0, 0.0, 1.0, 3.0];
        let mut c = [0.0; 9];
        gemm(3, 2, 3, &a, &b, &mut c);
        assert_eq!(c, [1.0, 2.0, 8.0, 3.0, 4.0, 18.0, 5.0, 6.0, 28.0]);
    }

    #[test]
    fn transposed_variants_agree_with_gemm() {
        let a = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]; // 3x2
        let b = [1.0, 0.0, 2.0, 0.0, 1.0, 3.0]; // 2x3
        let mut expected = [0.0; 9];
        gemm(3, 2, 3, &a, &b, &mut expected);

        // b^T is 3x2; a * (b^T)^T must equal a * b.
        let bt = [1.0, 0.0, 0.0, 1.0, 2.0, 3.0];
        let mut c = [0.0; 9];
        gemm_nt(3, 2, 3, &a, &bt, &mut c);
        assert_eq!(c, expected);

        // a^T is 2x3; (a^T)^T * b must equal a * b.
        let at = [1.0, 3.0, 5.0, 2.0, 4.0, 6.0];
        let mut c = [0.0; 9];
        gemm_tn(3, 2, 3, &at, &b, &mut c);
        assert_eq!(c, expected);
    }
}
