//! Data files shipped with the crate.

/// Congruence relations on `A_T^*((P²)^[3])`, with both readings of the
/// relation whose sign is ambiguous.
pub const P2_D3_RELATIONS: &str = include_str!("../data/thm53.json");

/// Letter labels for the fixed points of `(P²)^[3]`.
pub const P2_D3_LABELS: &str = include_str!("../data/p2_d3_labels.json");

/// A bundled file by name, for command-line arguments that are not paths.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        "thm53.json" => Some(P2_D3_RELATIONS),
        "p2_d3_labels.json" => Some(P2_D3_LABELS),
        _ => None,
    }
}
