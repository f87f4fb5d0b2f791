use sbdo_core::bernstein::{bs_apply_in, double_sharp_scalar, sharp_matches_points, w_space};
use sbdo_core::jordan::{Block, JordanAlgebra};

const ALGEBRAS: &[&str] = &["R", "Rpq:1,1", "Rpq:2,1", "Rpq:1,2", "Rpq:2,2", "Sym2", "Sym3", "spin:4"];

#[test]
fn every_w_basis_element_satisfies_the_identity() {
    for id in ALGEBRAS {
        let a = JordanAlgebra::from_id(id).unwrap();
        let w = w_space(&a);
        for p in &w.basis {
            let cert = bs_apply_in(&a, &w, p).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert!(sharp_matches_points(&a, p, &cert.sharp, 10), "{id}: {}", p);
            assert_eq!(cert.sharp.total_degree().unwrap_or(0), a.r as u32 - cert.k);
        }
    }
}

#[test]
fn minors_lie_in_w_for_euclidean_instances() {
    for id in ["R", "Sym2", "Sym3", "spin:3", "Rpq:1,1"] {
        let a = JordanAlgebra::from_id(id).unwrap();
        let w = w_space(&a);
        let minors = a.minors(Block::X);
        assert_eq!(minors.last().unwrap(), &a.det(Block::X), "{id}");
        for m in &minors {
            assert!(w.coordinates(&a, m).is_some(), "{id}: {m}");
            assert_eq!(a.det_at(&a.unit), m.eval(&{
                let mut g = a.unit.clone();
                g.resize(4 * a.n, Default::default());
                g
            }, &[]));
        }
    }
}

#[test]
fn double_sharp_is_a_nonzero_multiple() {
    for id in ALGEBRAS {
        let a = JordanAlgebra::from_id(id).unwrap();
        for p in w_space(&a).basis.iter().take(6) {
            let c = double_sharp_scalar(&a, p).unwrap_or_else(|| panic!("{id}: {p}"));
            assert!(c != Default::default());
        }
    }
}
