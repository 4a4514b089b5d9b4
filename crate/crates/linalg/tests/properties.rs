use num_traits::Zero;
use proptest::prelude::*;
use subfan_linalg::{
    int, lp_solve, strict_feasibility, verify_strict, Direction, LinearProgram, Rational,
    RationalMatrix, Sense,
};

fn matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(lo..=hi, rows * cols).prop_map(move |v| {
        let rows_v: Vec<Vec<i64>> = v.chunks(cols).map(<[i64]>::to_vec).collect();
        RationalMatrix::from_i64_rows(&rows_v).unwrap()
    })
}

fn sized(max_r: usize, max_c: usize) -> impl Strategy<Value = RationalMatrix> {
    (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| matrix(r, c, -5, 5))
}

fn square_pair(max: usize) -> impl Strategy<Value = (RationalMatrix, RationalMatrix)> {
    (1..=max).prop_flat_map(|n| (matrix(n, n, -4, 4), matrix(n, n, -4, 4)))
}

fn sense() -> impl Strategy<Value = Sense> {
    prop_oneof![Just(Sense::Le), Just(Sense::Eq), Just(Sense::Ge)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_orthogonal_with_complementary_rank(m in sized(4, 6)) {
        let b = m.nullspace();
        prop_assert!(m.mul(&b.transpose()).unwrap().is_zero());
        prop_assert_eq!(b.rank(), m.cols() - m.rank());
        prop_assert_eq!(b.rows(), b.rank());
        prop_assert_eq!(m.kernel_basis().is_ok(), m.rank() == m.rows());
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in square_pair(4)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
        prop_assert_eq!(a.transpose().determinant().unwrap(), a.determinant().unwrap());
    }

    #[test]
    fn inverse_when_nonsingular(a in (1usize..=4).prop_flat_map(|n| matrix(n, n, -4, 4))) {
        match a.inverse() {
            Ok(inv) => prop_assert_eq!(a.mul(&inv).unwrap(), RationalMatrix::identity(a.rows())),
            Err(_) => prop_assert!(a.determinant().unwrap().is_zero()),
        }
    }

    #[test]
    fn lp_certificates_verify(
        (a, b, senses, obj, dir) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| (
            matrix(r, c, -4, 4),
            prop::collection::vec(-6i64..=6, r),
            prop::collection::vec(sense(), r),
            prop::collection::vec(-3i64..=3, c),
            prop_oneof![Just(Direction::Maximize), Just(Direction::Minimize)],
        ))
    ) {
        let p = LinearProgram::new(
            a,
            b.into_iter().map(int).collect(),
            senses,
            obj.into_iter().map(int).collect(),
            dir,
        ).unwrap();
        let out = lp_solve(&p).unwrap();
        prop_assert!(out.verify(&p), "{:?}", out.status);
    }

    #[test]
    fn strict_systems_certify(rows in (1usize..=8, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c, -3, 3))) {
        let rows: Vec<Vec<Rational>> = rows.row_vectors();
        let out = strict_feasibility(&rows).unwrap();
        prop_assert!(verify_strict(&rows, &out));
    }

    #[test]
    fn json_and_csv_round_trip(m in sized(4, 4), d in 1i64..=9) {
        let m = m.scale(&subfan_linalg::frac(1, d));
        prop_assert_eq!(RationalMatrix::from_json(&m.to_json()).unwrap(), m.clone());
        prop_assert_eq!(RationalMatrix::from_csv(&m.to_csv()).unwrap(), m);
    }
}
