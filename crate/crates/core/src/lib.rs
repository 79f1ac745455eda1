//! Words over `Σ_m = {0, …, m-1}`, extended Parikh vectors, and the
//! `k`-binomial complexity of the generalized Thue–Morse words `t_m`.

mod error;
pub mod binomial;
pub mod decompose;
pub mod host;
pub mod periodicity;
pub mod table;
pub mod tm;
pub mod verify;
pub mod word;

pub use binomial::{
    binom_words, count_classes, equivalent_k, extended_parikh, window_classes, BinomialValue,
    ExtendedParikhVector, PsiLayout,
};
pub use error::{Error, Result};
pub use host::{HostStrategy, PrefixPolicy, WordSource};
pub use table::{complexity_profile, ComplexityTable, Provenance, TableMeta};
pub use word::{CircularInterval, IntervalKind, Letter, Morphism, Word};
pub use verify::{run_suite, Suite, SuiteConfig, VerificationReport};
