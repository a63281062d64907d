//! Outcome of an exhaustive verification pass.

/// Number of cases checked plus the first one that failed, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport<T> {
    pub checked: usize,
    pub first_failure: Option<T>,
}

impl<T> VerificationReport<T> {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// A big integer as a JSON number with every digit preserved.
pub(crate) fn json_int(value: &num_bigint::BigInt) -> serde_json::Value {
    let number: serde_json::Number = value
        .to_string()
        .parse()
        .expect("decimal integers are valid JSON numbers");
    serde_json::Value::Number(number)
}
