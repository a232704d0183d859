use crate::element_set::MAX_ORDER;

/// Environment variable that overrides both order caps.
pub const MAX_ORDER_ENV: &str = "POWCOV_MAX_ORDER";

/// Size caps for group construction and lattice enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group that may be constructed. Every constructed group is
    /// checked exhaustively for associativity.
    pub max_order: usize,
    /// Largest group whose subgroup lattice may be enumerated.
    pub lattice_max_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: MAX_ORDER,
            lattice_max_order: 256,
        }
    }
}

impl Limits {
    /// Both caps set to `order`, clamped to the 512-element hard ceiling.
    pub fn uniform(order: usize) -> Self {
        let order = order.min(MAX_ORDER);
        Limits {
            max_order: order,
            lattice_max_order: order,
        }
    }

    /// Defaults, or [`Limits::uniform`] when `POWCOV_MAX_ORDER` holds an integer.
    pub fn from_env() -> Self {
        std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(Limits::uniform)
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_clamps_to_hard_ceiling() {
        assert_eq!(Limits::uniform(4096).max_order, 512);
        assert_eq!(Limits::uniform(64).lattice_max_order, 64);
    }
}
