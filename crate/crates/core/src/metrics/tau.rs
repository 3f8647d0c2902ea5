use crate::modularity::{CompositionTable, TauChoice};

/// Purity ratio at or above which strict weights are suggested.
pub const STRICT_THRESHOLD: f64 = 0.8;
/// Purity ratio at or above which τ = 3 is suggested.
pub const TAU3_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct TauRecommendation {
    pub purity_ratio: f64,
    pub suggested: TauChoice,
    pub rationale: String,
}

/// Picks a τ from how pure the community edges of size at least 3 are.
///
/// Size-2 edges are ignored. With no community edge of size 3 or more the
/// suggestion is τ = 2.
pub fn suggest_tau(composition: &CompositionTable) -> TauRecommendation {
    let mut pure = 0.0;
    let mut community = 0.0;
    for row in composition.rows.iter().filter(|r| r.d >= 3 && r.is_community_edge()) {
        community += row.frequency;
        if row.c == row.d {
            pure += row.frequency;
        }
    }
    if community <= 0.0 {
        return TauRecommendation {
            purity_ratio: 0.0,
            suggested: TauChoice::Tau(2.0),
            rationale: "insufficient signal".to_string(),
        };
    }
    let ratio = pure / community;
    let (suggested, rationale) = if ratio >= STRICT_THRESHOLD {
        (TauChoice::Strict, format!("mostly pure community edges ({:.1}%)", 100.0 * ratio))
    } else if ratio >= TAU3_THRESHOLD {
        (TauChoice::Tau(3.0), format!("mixed community edges ({:.1}% pure)", 100.0 * ratio))
    } else {
        (TauChoice::Tau(2.0), format!("mostly impure community edges ({:.1}% pure)", 100.0 * ratio))
    };
    TauRecommendation {
        purity_ratio: ratio,
        suggested,
        rationale,
    }
}
