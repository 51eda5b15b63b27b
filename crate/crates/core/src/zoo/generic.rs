use crate::error::Result;
use crate::language::LanguageOracle;
use crate::strategy::{materialize_local, LocalConstructor};
use crate::strings::Bits;

/// Boundaries of one strategy block of a generic prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericBlock {
    /// Index `i` of the strategy `h_i` served by this block.
    pub index: u64,
    /// Length of the prefix `B_0 ⋯ B_{2i−2}` the strategy was applied to.
    pub tau_len: u64,
    /// Length of `B_{2i−1} = ext(h_i(τ))`.
    pub ext_len: u64,
    /// Length of the zero block `B_{2i}`.
    pub zeros: u64,
}

/// A language that meets each given strategy and has long zero zones.
#[derive(Debug, Clone)]
pub struct GenericLanguage {
    pub prefix: Bits,
    pub blocks: Vec<GenericBlock>,
    pub lang: LanguageOracle,
}

/// `χ_G = 1 · ext(h_1(B_0)) · 0^{5|B_0B_1|} · ext(h_2(B_0⋯B_2)) · ⋯`, for `i = 1..=K`, then zeros.
///
/// `hs[i−1]` is queried at index `i`.
pub fn generic_builder(
    hs: &[&dyn LocalConstructor],
    k: usize,
    ext_cap: u64,
) -> Result<GenericLanguage> {
    if k > hs.len() {
        return Err(crate::error::Error::InvalidArgument(format!(
            "K = {k} but only {} strategies given",
            hs.len()
        )));
    }
    let mut prefix = Bits::ones(1);
    let mut blocks = Vec::with_capacity(k);
    for (i, h) in hs.iter().take(k).enumerate() {
        let index = i as u64 + 1;
        let tau_len = prefix.len() as u64;
        let w = materialize_local(*h, index, &prefix, ext_cap)?;
        prefix.extend_from(&w);
        let zeros = 5 * prefix.len();
        prefix.extend_from(&Bits::zeros(zeros));
        blocks.push(GenericBlock {
            index,
            tau_len,
            ext_len: w.len() as u64,
            zeros: zeros as u64,
        });
    }
    let lang = LanguageOracle::from_prefix(format!("generic[K={k}]"), prefix.clone());
    Ok(GenericLanguage {
        prefix,
        blocks,
        lang,
    })
}
