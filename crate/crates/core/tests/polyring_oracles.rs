use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use thomas::polyring::factor::factor;
use thomas::polyring::*;

fn x() -> Var {
    Var::indet_var(0)
}
fn y() -> Var {
    Var::indet_var(1)
}
fn t() -> Var {
    Var::param(0)
}
fn p(v: Var) -> Poly {
    Poly::var(v)
}
fn c(k: i64) -> Poly {
    Poly::constant(k)
}

/// Determinant by Laplace expansion along the first row.
fn det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = &m[0][col] * &det(&minor);
        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Subresultant S_j from its determinantal definition.
fn subresultant_oracle(a: &Poly, b: &Poly, v: Var, j: usize) -> Poly {
    let (m, n) = (a.degree(v) as usize, b.degree(v) as usize);
    let ca = a.coeffs(v);
    let cb = b.coeffs(v);
    let width = m + n - j;
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    // Columns index powers from width-1 down to 0.
    for k in (0..n - j).rev() {
        let mut row = vec![Poly::zero(); width];
        for (d, coef) in ca.iter().enumerate() {
            row[width - 1 - (d + k)] = coef.clone();
        }
        rows.push(row);
    }
    for k in (0..m - j).rev() {
        let mut row = vec![Poly::zero(); width];
        for (d, coef) in cb.iter().enumerate() {
            row[width - 1 - (d + k)] = coef.clone();
        }
        rows.push(row);
    }
    let size = m + n - 2 * j;
    let mut out = Poly::zero();
    for i in 0..=j {
        let mat: Vec<Vec<Poly>> = rows
            .iter()
            .map(|row| {
                let mut r: Vec<Poly> = row[..size - 1].to_vec();
                r.push(row[width - 1 - i].clone());
                r
            })
            .collect();
        out = &out + &(&det(&mat) * &Poly::var_pow(v, i as u32));
    }
    out
}

fn poly_strategy(vars: Vec<Var>, max_terms: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    let nv = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_deg, nv), -5i64..=5), 1..=max_terms).prop_map(move |ts| {
        let terms = ts
            .into_iter()
            .map(|(es, k)| (Monomial::from_pairs(vars.iter().copied().zip(es).collect()), Int::from(k)))
            .collect();
        Poly::from_terms(terms)
    })
}

#[test]
fn discriminant_examples() {
    // x^2 + y^2 - 1 wrt x
    let circle = &(&p(x()).pow(2) + &p(y()).pow(2)) - &c(1);
    assert_eq!(discriminant(&circle, x()), &p(y()).pow(2).scale(&Int::from(-4)) + &c(4));
    // u_x^3 - 4 x u u_x + 8 u^2 wrt u_x, x an independent variable.
    let ux = Var::jet(0, &[1]);
    let u = Var::jet(0, &[0]);
    let xi = Var::indep(0);
    let ode = &(&p(ux).pow(3) - &(&(&p(xi) * &p(u)) * &p(ux)).scale(&Int::from(4))) + &p(u).pow(2).scale(&Int::from(8));
    let expected = &p(u).pow(3).scale(&Int::from(-64)) * &(&p(u).scale(&Int::from(27)) - &p(xi).pow(3).scale(&Int::from(4)));
    assert_eq!(discriminant(&ode, ux), expected);
    assert_eq!(discriminant(&(&p(x()) + &p(y())), x()), Poly::one());
}

#[test]
fn pseudo_division_example() {
    let p1 = &(&p(x()).pow(2) + &p(y()).pow(2)) - &c(1);
    let p2 = &(&p(x()) + &(&p(t()) * &p(y()))) - &p(t());
    let pd = pseudo_divide(&p1, &p2, x());
    let t2 = p(t()).pow(2);
    let expected = &(&(&(&c(1) + &t2) * &p(y()).pow(2)) - &(&t2 * &p(y())).scale(&Int::from(2))) + &(&t2 - &c(1));
    assert_eq!(pd.remainder, expected);
    assert_eq!(pd.c1, Poly::one());
    assert_eq!(pd.c2, &(&p(x()) - &(&p(t()) * &p(y()))) + &p(t()));
}

#[test]
fn subresultants_match_determinants_on_fixed_cases() {
    let a = &(&p(x()).pow(4) + &(&p(y()) * &p(x()).pow(2))) + &c(3);
    let b = &(&p(x()).pow(2).scale(&Int::from(2)) - &p(y())) + &p(x());
    check_chain(&a, &b);
    let a = &p(x()).pow(5) - &c(1);
    let b = &(&p(x()).pow(2) - &c(1)) * &(&p(x()) + &p(y()));
    check_chain(&a, &b);
}

fn check_chain(a: &Poly, b: &Poly) {
    let v = x();
    let (da, db) = (a.degree(v) as usize, b.degree(v) as usize);
    let chain = euclid_prs(a, b, v);
    let (hi, lo) = if da >= db { (a, b) } else { (b, a) };
    for j in 0..da.min(db) {
        let s = subresultant_oracle(hi, lo, v, j);
        let listed = chain.regular.iter().find(|(k, _)| *k == j).map(|(_, s)| s.clone());
        if !s.is_zero() && s.degree(v) as usize == j {
            assert_eq!(listed.as_ref(), Some(&s), "S_{} mismatch", j);
        } else {
            assert!(listed.is_none(), "S_{} listed but defective", j);
        }
        assert_eq!(chain.psc(j), s.coeff(v, j as u32));
    }
    let res = subresultant_oracle(hi, lo, v, 0);
    assert_eq!(resultant(hi, lo, v), res);
}

/// Brute force: a univariate integer polynomial has a repeated complex root
/// iff its gcd with the derivative is nonconstant; compare with disc = 0.
#[test]
fn discriminant_vanishes_exactly_for_repeated_roots() {
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            // x^3 + a x + b and (x - a)^2 (x - b)
            let f = &(&p(x()).pow(3) + &p(x()).scale(&Int::from(a))) + &c(b);
            let g = gcd(&f, &f.derivative(x()));
            assert_eq!(discriminant(&f, x()).is_zero(), !g.is_constant());
            let h = &(&p(x()) - &c(a)).pow(2) * &(&p(x()) - &c(b));
            assert!(discriminant(&h, x()).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, rng_seed: RngSeed::Fixed(0x7401), ..ProptestConfig::default() })]

    #[test]
    fn pseudo_division_identity(
        p1 in poly_strategy(vec![x(), y(), t()], 6, 3),
        p2 in poly_strategy(vec![x(), y(), t()], 4, 2),
    ) {
        prop_assume!(p2.degree(x()) >= 1);
        let pd = pseudo_divide(&p1, &p2, x());
        prop_assert_eq!(&pd.remainder, &(&(&pd.c1 * &p1) - &(&pd.c2 * &p2)));
        prop_assert!(pd.remainder.degree(x()) < p2.degree(x()));
        let init = p2.coeff(x(), p2.degree(x()));
        // c1 is a power of the initial.
        let mut k = pd.c1.clone();
        while !k.is_one() {
            k = k.exact_div(&init).expect("c1 is not a power of the initial");
        }
    }

    #[test]
    fn chain_matches_oracle(
        a in poly_strategy(vec![x(), y()], 4, 3),
        b in poly_strategy(vec![x(), y()], 4, 2),
    ) {
        prop_assume!(b.degree(x()) >= 1 && a.degree(x()) >= b.degree(x()));
        check_chain(&a, &b);
    }

    #[test]
    fn gcd_divides_and_is_maximal(
        a in poly_strategy(vec![x(), y(), t()], 3, 2),
        b in poly_strategy(vec![x(), y(), t()], 3, 2),
        g in poly_strategy(vec![x(), y(), t()], 3, 2),
    ) {
        prop_assume!(!g.is_zero() && !a.is_zero() && !b.is_zero());
        let fa = &a * &g;
        let fb = &b * &g;
        let h = gcd(&fa, &fb);
        prop_assert!(fa.exact_div(&h).is_some());
        prop_assert!(fb.exact_div(&h).is_some());
        prop_assert!(h.exact_div(&g.primitive_int()).is_some() || g.is_constant());
    }

    #[test]
    fn factorisation_reproduces_input(
        a in poly_strategy(vec![x(), y()], 3, 2),
        b in poly_strategy(vec![x(), y()], 3, 2),
    ) {
        let f = (&a * &b).primitive_int();
        prop_assume!(!f.is_constant());
        let fs = factor(&f);
        let prod = fs.iter().fold(Poly::one(), |acc, (g, e)| &acc * &g.pow(*e));
        prop_assert!(prod == f || prod == -&f);
        if !a.is_constant() && !b.is_constant() && !a.primitive_int().is_one() && !b.primitive_int().is_one() {
            let total: u32 = fs.iter().map(|x| x.1).sum();
            prop_assert!(total >= 2);
        }
    }
}
