//! The collection backend against brute force over the multiplication table.

use rps_core::family::{build_family, FamilySpec};
use rps_core::pc::{parse_presentation, PcGroup};
use rps_core::structure;
use rps_core::table::TableGroup;
use rps_core::GroupHandle;

fn compare(g: &GroupHandle) {
    let table = g.tabulate().unwrap();
    let oracle = table.table().unwrap();
    let name = g.name().to_string();
    for x in g.elements().unwrap() {
        assert_eq!(g.element_order(x), oracle.element_order(x) as u64, "{name}: order of {x}");
    }
    let e = structure::exponent_log(g).unwrap();
    assert_eq!(structure::exponent(g).unwrap(), oracle.exponent() as u64, "{name}");
    assert_eq!(structure::center(g).unwrap().members, oracle.center().members, "{name}: center");
    assert_eq!(structure::derived_subgroup(g).unwrap().members, oracle.derived().members, "{name}: derived");
    for i in 1..=e {
        assert_eq!(structure::agemo(g, i).unwrap().members, oracle.agemo(i).members, "{name}: agemo {i}");
        assert_eq!(structure::omega(g, i).unwrap().members, oracle.omega(i).members, "{name}: omega {i}");
        assert_eq!(structure::power_image(g, i).unwrap(), oracle.power_image(i), "{name}: powers {i}");
    }
    let f = structure::frattini_and_rank(g).unwrap();
    assert_eq!(f.frattini.members, oracle.frattini().members, "{name}: frattini");
    assert_eq!(f.rank, oracle.rank(), "{name}: rank");
}

#[test]
fn presentation_backend_matches_table() {
    for spec in [
        "cyclic p=3 e=2",
        "abelian p=2 type=2,1",
        "heisenberg p=3 e=1",
        "heisenberg p=3 e=2",
        "extraspecial p=3 n=3 variant=p2",
        "modular p=3 n=4",
        "modular p=2 n=4",
    ] {
        let g = build_family(&spec.parse::<FamilySpec>().unwrap()).unwrap().handle().unwrap();
        compare(&g);
    }
}

#[test]
fn table_ids_follow_presentation_ids() {
    let pres = parse_presentation("group p=3 n=4\n[g2,g1] = g3\n[g3,g1] = g4\n").unwrap();
    let pc = PcGroup::consistent(pres.clone()).unwrap();
    let table = TableGroup::from_presentation(&pc, 6561).unwrap();
    assert!(table.associativity_exhaustive().is_none());
    let g = GroupHandle::from_presentation(pres).unwrap();
    for x in 0..81 {
        for y in 0..81 {
            assert_eq!(g.mul(x, y), table.mul(x, y));
        }
    }
}

#[test]
fn table_backed_families_pass_exhaustive_associativity() {
    for spec in ["dihedral n=3", "quaternion n=3", "dihedral n=5", "quaternion n=5", "semidihedral n=5"] {
        let g = build_family(&spec.parse::<FamilySpec>().unwrap()).unwrap().handle().unwrap();
        let t = g.table().unwrap();
        assert!(t.associativity_exhaustive().is_none(), "{spec}");
        assert!(t.associativity_light().is_none(), "{spec}");
    }
}
