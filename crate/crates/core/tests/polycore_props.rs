use cdv_core::polycore::{
    discriminant, parse_polynomial, rat, univariate_gcd, Ambient, Monomial, PolyMatrix, Polynomial,
    Rational,
};
use proptest::prelude::*;

fn ambient(n: usize) -> Ambient {
    let names = ["x", "y", "z", "w"];
    Ambient::new(&names[..n]).unwrap()
}

fn coefficient() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

/// Exponent vector with total degree at most `max_deg`.
fn exponents(nvars: usize, max_deg: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_deg, nvars).prop_map(move |mut e| {
        while e.iter().sum::<u32>() > max_deg {
            let i = e.iter().position(|&x| x > 0).unwrap();
            e[i] -= 1;
        }
        e
    })
}

fn polynomial(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((exponents(nvars, max_deg), coefficient()), 0..=max_terms).prop_map(
        move |terms| {
            Polynomial::from_terms(
                &ambient(nvars),
                terms.into_iter().map(|(e, c)| (Monomial::new(e), c)),
            )
        },
    )
}

fn any_polynomial() -> impl Strategy<Value = Polynomial> {
    (1usize..=4).prop_flat_map(|n| polynomial(n, 8, 8))
}

fn triple() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    (1usize..=3).prop_flat_map(|n| {
        (
            polynomial(n, 4, 5),
            polynomial(n, 4, 5),
            polynomial(n, 4, 5),
        )
    })
}

/// Leibniz formula over all permutations.
fn leibniz(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    let amb = m[0][0].ambient().clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Polynomial::zero(&amb);
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = Polynomial::one(&amb);
        for (r, &c) in p.iter().enumerate() {
            term = &term * &m[r][c];
        }
        total = if inversions % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn square_matrix() -> impl Strategy<Value = Vec<Vec<Polynomial>>> {
    (1usize..=4).prop_flat_map(|size| {
        prop::collection::vec(prop::collection::vec(polynomial(2, 2, 3), size), size)
    })
}

/// Univariate in `w` of degree 2..=8, sometimes forced to have a repeated root.
fn univariate() -> impl Strategy<Value = Polynomial> {
    let amb = Ambient::new(&["w"]).unwrap();
    (
        prop::collection::vec(coefficient(), 2..=6),
        any::<bool>(),
        -3i64..=3,
    )
        .prop_map(move |(cs, repeated, root)| {
            let w = Polynomial::var(&amb, 0);
            let mut p = Polynomial::from_terms(
                &amb,
                cs.iter()
                    .enumerate()
                    .map(|(i, c)| (Monomial::new(vec![i as u32]), c.clone())),
            );
            // make the top coefficient nonzero so the degree is what we asked for
            let top = Monomial::new(vec![cs.len() as u32]);
            p = &p + &Polynomial::monomial(&amb, top, rat(1, 1));
            if repeated {
                let lin = &w - &Polynomial::from_int(&amb, root);
                p = &(&p * &lin) * &lin;
            }
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_print_round_trip(p in any_polynomial()) {
        let text = p.to_string();
        let back = parse_polynomial(&text, p.ambient()).unwrap();
        prop_assert_eq!(back, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(a.ambient()), a.clone());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn determinants_agree_with_leibniz(rows in square_matrix()) {
        let expected = leibniz(&rows);
        let m = PolyMatrix::from_rows(rows).unwrap();
        prop_assert_eq!(m.determinant().unwrap(), expected.clone());
        prop_assert_eq!(m.determinant_cofactor(), expected.clone());
        prop_assert_eq!(m.determinant_bareiss().unwrap(), expected);
    }

    #[test]
    fn discriminant_vanishes_iff_repeated_root(p in univariate()) {
        let dp = p.differentiate(0).unwrap();
        let g = univariate_gcd(&p, &dp, 0).unwrap();
        let disc = discriminant(&p, 0).unwrap();
        prop_assert_eq!(disc.is_zero(), g.total_degree().unwrap_or(0) >= 1);
    }
}
