//! Security-game harnesses and proof-artifact samplers.
//!
//! Nothing in this module belongs to the production API: the transparent
//! setup retains trapdoors the schemes must erase, the semi-functional
//! samplers implement objects that exist only inside the dual-system proof,
//! and the challengers drive scripted adversaries for the self-test and the
//! acceptance suite. The types intentionally are not re-exported at the
//! crate root.

mod challenger;
mod fixtures;
mod semifunctional;
mod transparent;
mod vandermonde;

pub use challenger::{
    run_active_adaptive_game, run_adaptive_game, run_semi_static_game, AdAdversary,
    AdChallengeView, AdQuery, AdView, GameEvent, GameKind, GameOptions, GameOutcome,
    GameTranscript, ScriptStep, ScriptedAdAdversary, SsAdversary, SsChallengeView,
    SsGuessingAdversary, SsOverreachAdversary, SsView,
};
pub use fixtures::{gsd_fixture, sd_fixture, GsdFixture, SdFixture, SubgroupCase};
pub use semifunctional::{
    g2_component, sample_ch_sf, sample_ch_sf_with, sample_hybrid_coeffs, sample_ul_eta,
    sample_ul_sf, sample_ul_sf_with_deltas, HybridCoeffs, HybridStage,
};
pub use transparent::TransparentSetup;
pub use vandermonde::{
    vandermonde_bijection_check, vandermonde_det_nonzero, vandermonde_exhaustive_bijection,
};

#[cfg(test)]
mod tests;
