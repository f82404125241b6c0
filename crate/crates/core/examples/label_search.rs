//! Re-derives the bundled letter labels of the fixed points of `(P²)^[3]`.
use hilbchow::assembly::labels::search_label_assignments;
use hilbchow::assembly::{equivariant_chow, RelationFile};
use hilbchow::toric::ToricSurface;

fn main() -> hilbchow::Result<()> {
    let s = ToricSurface::projective_plane();
    let module = equivariant_chow(&s, 3, 6)?;
    let rels = RelationFile::parse(include_str!("../data/thm53.json"))?;
    for found in search_label_assignments(&s, 3, &module, &rels.relations)? {
        let file = found.to_file("P2", 3)?;
        println!(
            "{}",
            serde_json::to_string_pretty(&file).expect("serializable")
        );
    }
    Ok(())
}
