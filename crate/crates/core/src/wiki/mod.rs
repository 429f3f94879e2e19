//! MediaWiki dump ingestion: streaming page parsing, wikitext cleaning and
//! article pairing through interlanguage links.

mod clean;
mod dump;
mod langlinks;
mod pairing;

pub use clean::{clean_text, clean_wikitext, has_markup_residue, CleanArticle, MARKUP_RESIDUE};
pub use dump::{parse_dump, DumpReader, RawPage};
pub use langlinks::{load_langlinks, LangLink, LinkFormat, LinkOptions, LoadedLinks};
pub use pairing::{
    pair_articles, resolve_pairs, ArticlePair, ArticlePairRecord, PairOptions, Pairing,
};
