use lucaskit_core::exact::DEFAULT_FACTORIAL_CAP;

/// Overrides the exact-oracle factorial cap.
pub const FACTORIAL_CAP_VAR: &str = "LUCASKIT_FACTORIAL_CAP";

/// Reads the factorial cap from the environment, falling back to the default.
pub fn factorial_cap() -> Result<u64, String> {
    match std::env::var(FACTORIAL_CAP_VAR) {
        Ok(raw) => parse_cap(&raw),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_FACTORIAL_CAP),
        Err(e) => Err(format!("{FACTORIAL_CAP_VAR}: {e}")),
    }
}

fn parse_cap(raw: &str) -> Result<u64, String> {
    let trimmed = raw.trim();
    if trimmed.is_empty() || !trimmed.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!(
            "{FACTORIAL_CAP_VAR} must be a decimal natural, got {raw:?}"
        ));
    }
    trimmed
        .parse()
        .map_err(|_| format!("{FACTORIAL_CAP_VAR} is out of range: {raw:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_parsing() {
        assert_eq!(parse_cap("3000"), Ok(3000));
        assert_eq!(parse_cap(" 12 "), Ok(12));
        assert!(parse_cap("").is_err());
        assert!(parse_cap("-1").is_err());
        assert!(parse_cap("1e5").is_err());
        assert!(parse_cap("99999999999999999999999").is_err());
    }
}
