//! The bundled spec corpus: every instance the verification suites use.

use crate::cli::Input;
use crate::error::{Error, Result};

pub const CORPUS: &[(&str, &str)] = &[
    ("A_2_1_0", include_str!("../corpus/A_2_1_0.json")),
    ("A_2_1_0_gf3", include_str!("../corpus/A_2_1_0_gf3.json")),
    ("A_2_1_1", include_str!("../corpus/A_2_1_1.json")),
    ("A_2_1_1_gf3", include_str!("../corpus/A_2_1_1_gf3.json")),
    ("A_3_1_0", include_str!("../corpus/A_3_1_0.json")),
    ("A_3_1_1", include_str!("../corpus/A_3_1_1.json")),
    ("A_4_1_0", include_str!("../corpus/A_4_1_0.json")),
    ("A_4_1_1", include_str!("../corpus/A_4_1_1.json")),
    ("B_1_1_0", include_str!("../corpus/B_1_1_0.json")),
    ("B_1_1_1", include_str!("../corpus/B_1_1_1.json")),
    ("B_2_1_0", include_str!("../corpus/B_2_1_0.json")),
    ("B_2_1_1", include_str!("../corpus/B_2_1_1.json")),
    ("B_5_1_0", include_str!("../corpus/B_5_1_0.json")),
    ("B_5_1_1", include_str!("../corpus/B_5_1_1.json")),
    ("D_b1_0", include_str!("../corpus/D_b1_0.json")),
    ("D_b1_0_b2_1", include_str!("../corpus/D_b1_0_b2_1.json")),
    ("D_b1_1", include_str!("../corpus/D_b1_1.json")),
    ("D_b1_1_b2_1", include_str!("../corpus/D_b1_1_b2_1.json")),
    ("D_split_b1_0", include_str!("../corpus/D_split_b1_0.json")),
    ("D_split_b1_1", include_str!("../corpus/D_split_b1_1.json")),
    ("Q2A_2_0_gf4", include_str!("../corpus/Q2A_2_0_gf4.json")),
    ("Q2A_2_1", include_str!("../corpus/Q2A_2_1.json")),
    ("Q2A_2_1_gf4", include_str!("../corpus/Q2A_2_1_gf4.json")),
    ("Q2A_2_w1_gf4", include_str!("../corpus/Q2A_2_w1_gf4.json")),
    ("Q2A_2_w_gf4", include_str!("../corpus/Q2A_2_w_gf4.json")),
    ("Q2A_3_0_gf4", include_str!("../corpus/Q2A_3_0_gf4.json")),
    ("Q2A_3_1", include_str!("../corpus/Q2A_3_1.json")),
    ("Q2A_3_1_gf4", include_str!("../corpus/Q2A_3_1_gf4.json")),
    ("Q2A_3_w1_gf4", include_str!("../corpus/Q2A_3_w1_gf4.json")),
    ("Q2A_3_w_gf4", include_str!("../corpus/Q2A_3_w_gf4.json")),
    ("Q2B3_3_w_0_gf4", include_str!("../corpus/Q2B3_3_w_0_gf4.json")),
    ("Q2B3_3_w_1_gf4", include_str!("../corpus/Q2B3_3_w_1_gf4.json")),
    ("Q2B3_3_w_w1_gf4", include_str!("../corpus/Q2B3_3_w_w1_gf4.json")),
    ("Q2B3_3_w_w_gf4", include_str!("../corpus/Q2B3_3_w_w_gf4.json")),
    ("Q2B3_4_0", include_str!("../corpus/Q2B3_4_0.json")),
    ("Q2B3_4_1", include_str!("../corpus/Q2B3_4_1.json")),
    ("Q2B3_5_0", include_str!("../corpus/Q2B3_5_0.json")),
    ("Q2B3_5_0_gf4", include_str!("../corpus/Q2B3_5_0_gf4.json")),
    ("Q2B3_5_1", include_str!("../corpus/Q2B3_5_1.json")),
    ("Q2B3_5_1_gf4", include_str!("../corpus/Q2B3_5_1_gf4.json")),
    ("Q2B3_5_w1_gf4", include_str!("../corpus/Q2B3_5_w1_gf4.json")),
    ("Q2B3_5_w_gf4", include_str!("../corpus/Q2B3_5_w_gf4.json")),
    ("control_nonsymmetric", include_str!("../corpus/control_nonsymmetric.json")),
    ("corner_b_1_0", include_str!("../corpus/corner_b_1_0.json")),
    ("corner_b_1_1", include_str!("../corpus/corner_b_1_1.json")),
    ("corner_b_2_0", include_str!("../corpus/corner_b_2_0.json")),
    ("corner_b_2_1", include_str!("../corpus/corner_b_2_1.json")),
    ("corner_d_b1_0", include_str!("../corpus/corner_d_b1_0.json")),
    ("corner_d_b1_1", include_str!("../corpus/corner_d_b1_1.json")),
    ("disc_2_2", include_str!("../corpus/disc_2_2.json")),
    ("disc_corner_b3_0", include_str!("../corpus/disc_corner_b3_0.json")),
    ("disc_corner_b3_1", include_str!("../corpus/disc_corner_b3_1.json")),
    ("triangle_b1_0", include_str!("../corpus/triangle_b1_0.json")),
    ("triangle_b1_1", include_str!("../corpus/triangle_b1_1.json")),
    ("two_vertex_1_4", include_str!("../corpus/two_vertex_1_4.json")),
    ("two_vertex_1_5", include_str!("../corpus/two_vertex_1_5.json")),
    ("two_vertex_2_2", include_str!("../corpus/two_vertex_2_2.json")),
    ("two_vertex_2_3", include_str!("../corpus/two_vertex_2_3.json")),
    ("two_vertex_3_4", include_str!("../corpus/two_vertex_3_4.json")),
    ("two_vertex_quiver_gf3", include_str!("../corpus/two_vertex_quiver_gf3.json")),
];

/// A corpus spec by name, labelled `corpus/<name>.json` in reports.
pub fn input(name: &str) -> Result<Input> {
    let (n, text) = CORPUS.iter().find(|(n, _)| *n == name).ok_or_else(|| Error::input(format!("no corpus entry {name}")))?;
    Input::from_text(&format!("corpus/{n}.json"), text)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|(n, _)| *n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses_and_matches_its_name() {
        for n in names() {
            let i = input(n).unwrap();
            assert_eq!(i.spec.name.as_deref(), Some(n));
        }
    }

    #[test]
    fn list_covers_the_directory() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        let mut on_disk: Vec<String> = std::fs::read_dir(dir)
            .unwrap()
            .filter_map(|e| e.unwrap().file_name().to_str()?.strip_suffix(".json").map(String::from))
            .collect();
        on_disk.sort();
        assert_eq!(on_disk, names().collect::<Vec<_>>());
    }
}
