use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use thomas::diffthomas::differential_decompose;
use thomas::algthomas::algebraic_decompose;
use thomas::polyring::{Poly, Var};
use thomas::sysfile::{self, format_declarations, format_poly, format_system};
use thomas::system::Options;
use thomas::Error;

fn unit_eq(a: &Poly, b: &Poly) -> bool {
    a.primitive_int() == b.primitive_int() || a.primitive_int() == -&b.primitive_int()
}

#[test]
fn decompositions_print_as_valid_files() {
    let files = [
        include_str!("../../../systems/circle.sys"),
        include_str!("../../../systems/pde.sys"),
        include_str!("../../../systems/cauchy_riemann.sys"),
        include_str!("../../../systems/crane.sys"),
        include_str!("../../../systems/tank.sys"),
    ];
    for text in files {
        let f = sysfile::parse(text).unwrap();
        let sys = f.system().unwrap();
        let d = if f.is_differential() {
            differential_decompose(&sys, &Options::factorized()).unwrap()
        } else {
            algebraic_decompose(&sys, &Options::factorized()).unwrap()
        };
        for s in &d.systems {
            let printed = format!("{}{}", format_declarations(&d.ring), format_system(&d.ring, s));
            let g = sysfile::parse(&printed).unwrap_or_else(|e| panic!("{}\n{}", e, printed));
            let back = g.system().unwrap();
            assert_eq!(back.ring.indets, d.ring.indets);
            assert_eq!(back.equations.len(), s.equations.len());
            for (p, e) in back.equations.iter().zip(&s.equations) {
                assert!(unit_eq(p, &e.poly), "{}", printed);
            }
            for (p, q) in back.inequations.iter().zip(&s.inequations) {
                assert!(unit_eq(p, &q.poly));
            }
        }
    }
}

#[test]
fn error_positions() {
    match sysfile::parse("indep t;\ndep u;\neq u[t] + w;") {
        Err(Error::UndeclaredSymbol { name, line, col }) => assert_eq!((name.as_str(), line, col), ("w", 3, 11)),
        other => panic!("{:?}", other),
    }
    match sysfile::parse("dep u;\neq (u + 1;") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("{:?}", other),
    }
    assert!(matches!(sysfile::parse("indep x y; dep u; eq u[z];"), Err(Error::BadJetIndex { line: 1, .. })));
    let f = sysfile::parse("dep u; eq sin(u);").unwrap();
    assert!(matches!(f.system(), Err(Error::Parse { line: 1, col: 11, .. })));
}

#[test]
fn rational_coefficients_are_cleared() {
    let f = sysfile::parse("dep x y; eq x/2 - y/3;").unwrap();
    let s = f.system().unwrap();
    let r = &s.ring;
    let x = Poly::var(r.jet("x", &[]));
    let y = Poly::var(r.jet("y", &[]));
    assert!(unit_eq(&s.equations[0], &(&(&Poly::constant(3) * &x) - &(&Poly::constant(2) * &y))));
    assert_eq!(s.equations[0].primitive_int(), s.equations[0]);
}

fn random_poly(seed: &[(i64, u8, u8, u8)]) -> Poly {
    let vars = [Var::jet(0, &[0, 0]), Var::jet(0, &[1, 0]), Var::jet(1, &[0, 2]), Var::indep(1), Var::param(0)];
    let mut p = Poly::zero();
    for &(c, a, b, e) in seed {
        let t = &(&Poly::constant(c) * &Poly::var(vars[a as usize % 5]).pow(e as u32 % 3))
            * &Poly::var(vars[b as usize % 5]);
        p = &p + &t;
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, rng_seed: RngSeed::Fixed(0x5f11e), ..ProptestConfig::default() })]

    #[test]
    fn printed_polynomials_parse_back(seed in prop::collection::vec((-20i64..20, any::<u8>(), any::<u8>(), any::<u8>()), 0..6)) {
        let f = sysfile::parse("indep x y; dep u v; param k;").unwrap();
        let ring = f.ring().unwrap();
        let p = random_poly(&seed);
        let text = format_poly(&ring, &p, None);
        let q = f.parse_poly(&ring, &text).unwrap();
        prop_assert!(unit_eq(&p, &q), "{} -> {:?}", text, q);
    }
}
