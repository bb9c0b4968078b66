use givental_core::gauss::*;
use givental_core::glrep::*;
use givental_core::toda::*;

#[test]
fn representation_suites_small_ranks() {
    for n in 2..=3 {
        assert!(verify_gl_relations(n).unwrap().all_pass());
        assert!(verify_whittaker(n).unwrap().all_pass());
        assert!(verify_pairing_antisymmetry(n).unwrap().all_pass());
        assert!(verify_appendix_b(n).unwrap().all_pass());
    }
}

#[test]
fn rank_limits_are_enforced() {
    assert!(verify_gl_relations(1).is_err());
    assert!(verify_gl_relations(givental_core::glrep::DEFAULT_MAX_RANK + 1).is_err());
    assert!(verify_intertwining(1).is_err());
}

#[test]
fn rank_two_report_text() {
    let r = verify_gl_relations(2).unwrap();
    let text = r.to_string();
    assert!(text.lines().last().unwrap().starts_with("all gl(2) relations: PASS"));
    assert!(text.contains("PASS [E12,E21]"));
}

#[test]
fn intertwining_rank_four() {
    let r = verify_intertwining(4).unwrap();
    assert!(r.all_pass(), "{r}");
}

#[test]
fn hamiltonian_text_is_canonical() {
    let h = char_poly_operator(2).unwrap().hamiltonian(2).unwrap();
    let again = char_poly_operator(2).unwrap().hamiltonian(2).unwrap();
    assert_eq!(h.to_string(), again.to_string());
    assert!(h.to_string().contains("e^(x1-x2)"));
}

#[test]
fn rational_charts_factorize_consistently() {
    for n in 2..=4 {
        for c in 0..5 {
            let mut rng = chart_rng(7, c);
            let chart = random_rational_chart(n, &mut rng);
            assert_eq!(matrix_from_givental(&chart), matrix_from_jacobi(&chart));
            assert!(verify_minor_formulas(&chart).unwrap().all_pass());
            assert!(check_total_positivity(&matrix_from_givental(&chart)).unwrap().all_pass());
        }
    }
}
