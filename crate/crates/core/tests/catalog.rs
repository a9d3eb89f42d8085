use moridream::io::{parse_fan, write_fan, FanDocument};
use moridream::{catalog, mds, mmp, BigFan};

#[test]
fn entries_match_expected_properties() {
    for e in catalog::catalog() {
        let f = e.build::<i64>();
        let x = &e.expected;
        assert_eq!(f.picard_number(), x.rho, "{}", e.name);
        assert_eq!(f.is_smooth(), x.smooth, "{}", e.name);
        assert_eq!(f.is_fano(), x.fano, "{}", e.name);
        assert!(f.is_projective(), "{}", e.name);
        assert_eq!(moridream::fano::c_invariant(&f).0, x.c, "{}", e.name);
    }
}

#[test]
fn documents_round_trip() {
    for e in catalog::catalog() {
        let f = e.build::<i64>();
        let text = write_fan(&FanDocument::from_fan(&e.name, &f));
        let (doc, g) = parse_fan::<i64>(&text).unwrap();
        assert_eq!(doc.name, e.name);
        assert_eq!(g, f, "{}", e.name);
        assert_eq!(write_fan(&doc), text, "{}", e.name);
    }
}

#[test]
fn big_integers_give_the_same_fans() {
    for name in ["blpt2-p3", "fano-flip-model", "dp-bl2-bl3"] {
        let f = catalog::lookup(name).unwrap().build::<i64>();
        let b: BigFan = catalog::lookup(name).unwrap().build();
        assert_eq!(b.map_scalar::<i64>(), f);
        assert_eq!(b.picard_number(), f.picard_number());
        assert_eq!(b.extremal_rays().len(), f.extremal_rays().len());
    }
}

#[test]
fn flips_are_reversible_across_atlases() {
    for name in ["blpt2-p3", "blpt-p1x3", "blpt-p1x4"] {
        let f = catalog::lookup(name).unwrap().build::<i64>();
        let atlas = mds::chamber_atlas(&f, mds::DEFAULT_CHAMBER_CAP).unwrap();
        for ch in &atlas.chambers {
            for r in ch.model.extremal_rays().into_iter().filter(|r| r.kind == moridream::toric::ContractionType::Small) {
                let g = mmp::flip(&ch.model, &r).unwrap();
                let back = g
                    .extremal_rays()
                    .into_iter()
                    .find(|s| s.relation == moridream::scalar::neg_vec(&r.relation))
                    .expect("flipped ray is extremal");
                assert_eq!(mmp::flip(&g, &back).unwrap(), ch.model);
            }
        }
    }
}

#[test]
fn shipped_documents_match_builtins() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog");
    let entries = catalog::catalog();
    for e in &entries {
        let text = std::fs::read_to_string(dir.join(format!("{}.fan", e.name))).unwrap();
        let (doc, f) = parse_fan::<i64>(&text).unwrap();
        assert_eq!(doc.name, e.name);
        assert_eq!(f, e.build::<i64>(), "{}", e.name);
    }
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), entries.len());
}
