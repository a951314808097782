use std::fs;

use starlike_core::affine::{gl_generators, ConstructionInput};
use starlike_core::catalog::{build, Instance, InstanceSpec, DESIGN_FILE, DOT_FILE, GROUPS_FILE};

fn specs() -> Vec<InstanceSpec> {
    let gl: Vec<Vec<Vec<u32>>> = gl_generators(3, 2).into_iter().map(|m| m.rows).collect();
    vec![
        InstanceSpec::AffineSpace { d: 3, p: 2 },
        InstanceSpec::AffineSpace { d: 3, p: 3 },
        InstanceSpec::Selfdual { d: 3, p: 2, u: None },
        InstanceSpec::Selfdual { d: 3, p: 3, u: Some(vec![1, 2, 0]) },
        InstanceSpec::Construction(ConstructionInput {
            d: 3,
            p: 2,
            g0_generators: gl,
            m1_basis: vec![vec![1, 0, 0], vec![0, 1, 0]],
        }),
        InstanceSpec::Degenerate { k: 2, l: 2 },
        InstanceSpec::Grid { k: 3, l: 2 },
        InstanceSpec::Complete { v: 4 },
        InstanceSpec::CycleSubdivision { l: 3 },
        InstanceSpec::CompleteBipartite { n: 3, m: 2 },
    ]
}

#[test]
fn files_reserialise_byte_for_byte() {
    let tmp = tempfile::tempdir().unwrap();
    for (i, spec) in specs().into_iter().enumerate() {
        let first = tmp.path().join(format!("{i}a"));
        let second = tmp.path().join(format!("{i}b"));
        let inst = build(&spec).unwrap();
        inst.write_to(&first).unwrap();
        let back = build(&InstanceSpec::FromFile { dir: first.clone() }).unwrap();
        assert_eq!(back.design, inst.design);
        assert_eq!(back.g, inst.g);
        assert_eq!(back.n, inst.n);
        back.write_to(&second).unwrap();
        for file in [DESIGN_FILE, GROUPS_FILE, DOT_FILE] {
            let a = fs::read(first.join(file)).unwrap();
            let b = fs::read(second.join(file)).unwrap();
            assert_eq!(a, b, "{} {file}", inst.name);
        }
    }
}

#[test]
fn files_carry_schema_version() {
    let tmp = tempfile::tempdir().unwrap();
    build(&InstanceSpec::AffineSpace { d: 3, p: 2 }).unwrap().write_to(tmp.path()).unwrap();
    for file in [DESIGN_FILE, GROUPS_FILE] {
        let json: serde_json::Value = serde_json::from_slice(&fs::read(tmp.path().join(file)).unwrap()).unwrap();
        assert_eq!(json["schema_version"], 1);
    }
}

#[test]
fn tampered_group_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let inst = build(&InstanceSpec::Grid { k: 3, l: 2 }).unwrap();
    inst.write_to(tmp.path()).unwrap();
    let path = tmp.path().join(GROUPS_FILE);
    let mut json: serde_json::Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    // swap a point with a block
    let gens = json["G"]["generators"].as_array_mut().unwrap();
    let mut images: Vec<u64> = gens[0].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    let v = inst.design.v();
    images.swap(0, v);
    gens[0] = serde_json::json!(images);
    fs::write(&path, serde_json::to_string(&json).unwrap()).unwrap();
    assert!(Instance::read_from(tmp.path()).is_err());
}
