//! Text formats and proof search.

mod cert;
mod search;
mod trs_parser;

pub use cert::{parse_cert, render_cert, CertError};
pub use search::{
    search_interpretation, SearchConfig, SearchError, SearchStats, MAX_RULES, MAX_SYMBOLS,
};
pub use trs_parser::{parse_rule, parse_trs, render_trs, ParseError, TrsFile};
