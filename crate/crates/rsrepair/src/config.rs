use rsrepair_core::gf::DEFAULT_MAX_FIELD_BITS;

use crate::error::{AppError, AppResult};

pub const MAX_FIELD_BITS_VAR: &str = "RSREPAIR_MAX_FIELD_BITS";

/// Cap on `log2 |F|`, from the environment when set.
pub fn max_field_bits() -> AppResult<u32> {
    match std::env::var(MAX_FIELD_BITS_VAR) {
        Ok(v) => parse_bits(&v),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_FIELD_BITS),
        Err(e) => Err(AppError::Invalid(format!("{MAX_FIELD_BITS_VAR}: {e}"))),
    }
}

fn parse_bits(v: &str) -> AppResult<u32> {
    v.trim()
        .parse::<u32>()
        .ok()
        .filter(|&b| b > 0)
        .ok_or_else(|| AppError::Invalid(format!("{MAX_FIELD_BITS_VAR} must be a positive integer, got {v:?}")))
}
