//! Compares three labelings of the same papers and finds the papers that
//! stay together under all of them.
//!
//! cargo run --example cocluster_table

use std::collections::BTreeMap;

use citation_edr::clustering::FeatureGroup;
use citation_edr::pipeline::{report_cocluster, GroupLabels};

fn main() -> citation_edr::Result<()> {
    // (edr7, concat10, gvalue3) labels of twenty cited papers.
    let rows: [(&str, [usize; 3]); 20] = [
        ("P07-1033", [1, 1, 1]),
        ("N04-1035", [0, 0, 0]),
        ("A92-1018", [0, 0, 0]),
        ("W06-1615", [1, 1, 1]),
        ("J96-2004", [0, 0, 0]),
        ("J93-1007", [0, 0, 0]),
        ("D07-1031", [1, 1, 1]),
        ("P04-1035", [0, 0, 1]),
        ("P90-1034", [0, 0, 0]),
        ("J90-1003", [0, 0, 0]),
        ("C98-2122", [0, 0, 1]),
        ("N06-1020", [0, 0, 1]),
        ("P05-1045", [0, 0, 0]),
        ("N03-1003", [0, 0, 0]),
        ("P02-1053", [0, 0, 0]),
        ("W05-0909", [0, 0, 1]),
        ("W02-1011", [0, 0, 1]),
        ("P04-1015", [0, 0, 1]),
        ("W04-1013", [0, 0, 1]),
        ("P04-1041", [1, 1, 1]),
    ];
    let labeling = |group, j: usize| {
        let map: BTreeMap<String, usize> =
            rows.iter().map(|(id, l)| (id.to_string(), l[j])).collect();
        GroupLabels::from_map(group, &map)
    };
    let table = report_cocluster(&[
        labeling(FeatureGroup::Edr7, 0),
        labeling(FeatureGroup::Concat10, 1),
        labeling(FeatureGroup::Gvalue3, 2),
    ])?;
    print!("{}", table.render());
    println!(
        "\nP07-1033, W06-1615, D07-1031, P04-1041 together in every group: {}",
        table.together(&["P07-1033", "W06-1615", "D07-1031", "P04-1041"])
    );
    Ok(())
}
