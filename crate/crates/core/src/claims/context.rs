use std::sync::OnceLock;

use crate::error::Result;
use crate::exact::Integer;
use crate::padic::{FactorialTable, Modulus, MAX_PRECISION};
use crate::sequences::{euler_exact, euler_p_minus_3};

/// Per-prime data shared by every claim evaluated at that prime.
///
/// Tables are built on first use and read-only afterwards; the factorial table
/// is kept at `p^4` and results are reduced to each claim's own modulus.
#[derive(Debug)]
pub struct PrimeContext {
    p: u64,
    factorials: OnceLock<FactorialTable>,
    euler_mod_p: OnceLock<u64>,
    euler_exact: OnceLock<Integer>,
}

impl PrimeContext {
    pub fn new(p: u64) -> Self {
        PrimeContext {
            p,
            factorials: OnceLock::new(),
            euler_mod_p: OnceLock::new(),
            euler_exact: OnceLock::new(),
        }
    }

    /// Seeds the exact `E_{p-3}` from a table computed elsewhere.
    pub fn with_exact_euler(self, e: Integer) -> Self {
        let _ = self.euler_exact.set(e);
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self) -> Result<Modulus> {
        Modulus::new(self.p, MAX_PRECISION)
    }

    /// Factorials `0!..=(4p)!` modulo `p^4`.
    pub fn factorials(&self) -> Result<&FactorialTable> {
        let m = self.modulus()?;
        Ok(self
            .factorials
            .get_or_init(|| FactorialTable::new(m, 4 * self.p)))
    }

    /// `E_{p-3} mod p` from the recurrence mod `p`.
    pub fn euler_mod_p(&self) -> Result<u64> {
        if let Some(e) = self.euler_mod_p.get() {
            return Ok(*e);
        }
        let e = euler_p_minus_3(self.p)?;
        Ok(*self.euler_mod_p.get_or_init(|| e))
    }

    /// Exact `E_{p-3}`.
    pub fn euler_exact(&self) -> &Integer {
        self.euler_exact.get_or_init(|| {
            let n = (self.p - 3) as usize;
            euler_exact(n).swap_remove(n)
        })
    }
}
