//! Mining the top-k substrings of a symbol string with the largest Pearson
//! chi-square deviation from the expected symbol composition.
//!
//! Positions are 1-based and inclusive throughout the public API.
//!
//! ```
//! use chisub_core::{Alphabet, mine_arlm};
//!
//! let alphabet = Alphabet::new(vec!["a", "b"], vec![0.2, 0.8]).unwrap();
//! let seq = alphabet.encode_chars("aaaabbba").unwrap();
//! let top = mine_arlm(&seq, &alphabet, 2).unwrap();
//! assert_eq!((top[0].start, top[0].end, top[0].score), (1, 4, 16.0));
//! assert_eq!((top[1].start, top[1].end), (1, 8));
//! ```

pub mod alphabet;
pub mod bench;
pub mod datagen;
pub mod error;
pub mod io;
pub mod maxima;
pub mod miners;
pub mod prefix;
pub mod topk;

pub use alphabet::{chi_square, Alphabet, CountVector, Sequence};
pub use error::{Error, Result};
pub use maxima::{
    best_suffix_position, build_position_lists, compress_to_blocks, expected_local_maxima,
    find_local_maxima, Block, LocalMaximum, MaximaAnalysis, PositionLists,
};
pub use miners::{mine_agmm, mine_arlm, mine_blocking, mine_naive, Algorithm};
pub use prefix::{chi_square_range, PrefixCountTable};
pub use topk::{ScoredSpan, TopK};
