//! Parameter symbols and their printed names.

use serde::{Deserialize, Serialize};

/// Every power of `q` is materialized through `V = q^(1/Q_DENOM)`.
///
/// 24 is even and divisible by `2m` and by 4 for every supported type
/// (`m` in {1, 2, 3}), so `q^(1/m)`, `q^(1/2)` and `t^(1/2) = q^(k/2)`
/// with `k` a quarter-integer are all integral powers of `V`.
pub const Q_DENOM: i64 = 24;

/// Index of the `V` symbol.
pub const VAR_Q: usize = 0;

/// Symbol index holding `t_nu^(1/2)` (or `k_nu` for Jack computations) for
/// the root-length class with the given rank (0 = long).
pub fn length_var(class: usize) -> usize {
    1 + class
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymbolKind {
    /// Symbols 1.. are half-powers `t_nu^(1/2)`.
    Macdonald,
    /// Symbols 1.. are the Jack parameters `k_nu` themselves.
    Jack,
}

/// Names and exponent units for the parameter symbols.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSymbols {
    pub q_root_denominator: i64,
    pub kind: SymbolKind,
    /// Printed names for symbols 1 and 2.
    pub length_names: [String; 2],
}

impl Default for ParamSymbols {
    fn default() -> Self {
        ParamSymbols::macdonald(1)
    }
}

impl ParamSymbols {
    /// Symbols for a root system with `lengths` root-length classes.
    pub fn macdonald(lengths: usize) -> ParamSymbols {
        let names = if lengths <= 1 {
            ["t".to_string(), "ts".to_string()]
        } else {
            ["tl".to_string(), "ts".to_string()]
        };
        ParamSymbols {
            q_root_denominator: Q_DENOM,
            kind: SymbolKind::Macdonald,
            length_names: names,
        }
    }

    pub fn jack(lengths: usize) -> ParamSymbols {
        let names = if lengths <= 1 {
            ["k".to_string(), "ks".to_string()]
        } else {
            ["kl".to_string(), "ks".to_string()]
        };
        ParamSymbols {
            q_root_denominator: Q_DENOM,
            kind: SymbolKind::Jack,
            length_names: names,
        }
    }

    /// `(name, unit)`: a raw exponent `e` of symbol `var` prints as
    /// `name^(e/unit)`.
    pub fn symbol(&self, var: usize) -> (&str, i64) {
        match var {
            0 => ("q", self.q_root_denominator),
            v => {
                let unit = match self.kind {
                    SymbolKind::Macdonald => 2,
                    SymbolKind::Jack => 1,
                };
                (&self.length_names[v - 1], unit)
            }
        }
    }
}
