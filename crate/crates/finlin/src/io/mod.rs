pub mod commands;
pub mod documents;
pub mod report;

pub use commands::{run, RunOptions};
pub use documents::{parse, parse_file, serialize, InputDocument};
pub use report::{CheckItem, Report, Verdict, Witness};
