use lumpcheck_core::classifier::{
    d_definitional_domain, d_ij, d_ij_definitional, hierarchy_degree, p_definitional_domain, p_ij, p_ij_definitional,
    sigma_seq, solve_degree, uniqueness_certificate,
};
use lumpcheck_core::polyring::rat;
use num_bigint::BigInt;

#[test]
fn pairing_constants_agree_with_their_definitions() {
    let mut checked = 0;
    for n in [6u64, 10, 15] {
        for i in 0..=5u64 {
            for j in 0..=5u64 {
                if d_definitional_domain(n, i, j) {
                    assert_eq!(d_ij_definitional(n, i, j).unwrap(), d_ij(i, j), "d n={n} i={i} j={j}");
                    checked += 1;
                }
                if p_definitional_domain(n, i, j) {
                    assert_eq!(p_ij_definitional(n, i, j).unwrap(), p_ij(n, i, j), "p n={n} i={i} j={j}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 50, "only {checked} pairs in range");
}

#[test]
fn outside_the_domain_the_definition_refuses() {
    assert!(!p_definitional_domain(6, 2, 2));
    assert!(p_ij_definitional(6, 2, 2).is_err());
}

#[test]
fn first_sigma_is_minus_half_n_times_n_minus_one() {
    for n in 2..=50u64 {
        let s = sigma_seq(n).unwrap();
        let n = n as i64;
        assert_eq!(s[0], rat(1, 1));
        assert_eq!(s[1], rat(n - n * n, 2), "n={n}");
    }
}

#[test]
fn degree_solver_balances_even_orders() {
    for k in 0..=10u64 {
        let m = solve_degree(k);
        let kk = k as i64;
        assert_eq!(m, rat(-3 * kk * (kk + 1), 2), "k={k}");
        assert!(hierarchy_degree(2 * k, &m).balanced, "k={k}");
        if k > 0 {
            assert!(!hierarchy_degree(2 * k, &(m.clone() + rat(1, 2))).balanced);
        }
    }
}

#[test]
fn gamma_table_for_fifteen() {
    let cert = uniqueness_certificate(15).unwrap();
    let expected = [
        (1u64, "3219950475/374"),
        (2, "-800391375/416"),
        (3, "24045525/4"),
        (4, "34505100/187"),
        (5, "-74025/52"),
        (6, "55335/2"),
        (7, "-5460/17"),
    ];
    for (q, want) in expected {
        let got = cert.gammas.iter().find(|(k, _)| *k == q).unwrap();
        assert_eq!(got.1.to_string(), want, "q={q}");
    }
    assert!(cert.all_nonzero);
    assert_eq!(cert.gammas.len(), 7);
    assert!(cert.gammas.iter().all(|(_, g)| *g.denom() > BigInt::from(0)));
}
