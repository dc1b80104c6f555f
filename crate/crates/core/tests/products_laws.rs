mod common;

use common::*;
use pointfree_core::frames::{frame_from_space, frame_iso, is_spatial, product_space, Frame};
use pointfree_core::order::{refines, Cover};
use pointfree_core::products::{
    canonical_cov, canonical_monoid, coproduct_frames, embed_phi_check, fine_monoid,
    locale_from_cov, point_correspondence, rect_basis_check, spatial_product_eq, star_variant_eq,
};

fn fixture_frames() -> Vec<Frame> {
    let mut fs = vec![chain_frame(2), chain_frame(3), boolean4(), chain_frame(4)];
    fs.extend(six_element_spaces().iter().map(|s| frame_from_space(s).unwrap().frame));
    fs
}

#[test]
fn canonical_locale_recovers_the_frame() {
    for f in fixture_frames() {
        let l = locale_from_cov(&canonical_cov(&f).unwrap()).unwrap();
        let lf = l.to_frame().unwrap();
        assert!(frame_iso(&lf.frame, &f).is_some(), "{:?}", f.order().names());
    }
}

#[test]
fn coproducts_of_small_spaces() {
    let spaces = factor_spaces();
    for (i, (xn, x)) in spaces.iter().enumerate() {
        for (yn, y) in &spaces[i..] {
            let fx = frame_from_space(x).unwrap().frame;
            let fy = frame_from_space(y).unwrap().frame;
            let fs = [fx.clone(), fy.clone()];
            let cp = coproduct_frames(&fs).unwrap();
            let lf = cp.locale.to_frame().unwrap();
            let prod = frame_from_space(&product_space(&[x.clone(), y.clone()]).unwrap().space).unwrap();
            assert!(frame_iso(&lf.frame, &prod.frame).is_some(), "{xn} x {yn}");
            let pc = point_correspondence(&fs, &cp).unwrap();
            assert!(pc.bijective, "{xn} x {yn}");
            assert_eq!(pc.coproduct_points, x.carrier().len() * y.carrier().len());
            let ms = [canonical_monoid(&fx).unwrap(), canonical_monoid(&fy).unwrap()];
            let report = embed_phi_check(&ms, &cp).unwrap();
            assert!(report.is_empty(), "{xn} x {yn}: {report:?}");
            assert!(is_spatial(&lf.frame).spatial);
        }
    }
}

#[test]
fn saturation_is_a_closure_on_antichains() {
    let fs = [
        frame_from_space(&sierpinski()).unwrap().frame,
        frame_from_space(&discrete(2)).unwrap().frame,
    ];
    let cp = coproduct_frames(&fs).unwrap();
    let b = cp.base();
    let ants = b.antichains(1 << 16).unwrap();
    for u in &ants {
        let s = cp.locale.sat(u);
        assert_eq!(cp.locale.sat_set(s), s);
        for &m in u.members() {
            assert!(s.contains(m.index()));
        }
        for v in &ants {
            if refines(u, v, b).unwrap() {
                assert!(s.is_subset(cp.locale.sat(v)));
            }
        }
    }
    assert!(cp.locale.elements().contains(&cp.locale.sat(&Cover::empty())));
}

#[test]
fn rectangles_form_a_basis_for_fine_products() {
    let mut factors = Vec::new();
    for n in 1..=2 {
        for t in topologies(n) {
            factors.push(fine_monoid(&space(n, &t)));
        }
    }
    for a in &factors {
        for b in &factors {
            let r = rect_basis_check(&[a.clone(), b.clone()]).unwrap();
            assert!(r.is_empty(), "{r:?}");
        }
    }
}

#[test]
fn spatial_products_are_consistent() {
    let mut spaces: Vec<_> = factor_spaces().into_iter().map(|(_, s)| s).collect();
    spaces.extend(six_element_spaces().into_iter().take(1));
    for (i, x) in spaces.iter().enumerate() {
        for y in &spaces[i..] {
            let r = spatial_product_eq(&[x.clone(), y.clone()]).unwrap();
            assert!(r.monoids_equal && r.coproduct_spatial && r.consistent(), "{r:?}");
        }
    }
}

#[test]
fn star_variant_on_discrete_pairs() {
    for n in 1..=2 {
        for k in 1..=2 {
            let x = discrete(n).with_regular_flag(true);
            let y = discrete(k).with_regular_flag(true);
            let r = star_variant_eq(&[x, y]).unwrap();
            assert!(r.equivalence_holds && r.regular_asserted, "{r:?}");
        }
    }
    assert!(star_variant_eq(&[discrete(1), discrete(1)]).is_err());
}
