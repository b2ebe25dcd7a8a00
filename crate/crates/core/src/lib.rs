//! Security-header auditing: fetch a site, parse its security headers and
//! landing page, and score it on a 0 to 135 scale with a letter grade.

pub mod batch;
pub mod fetcher;
pub mod headers;
pub mod html;
pub mod parsers;
pub mod reporting;
mod scan;
pub mod scoring;
pub mod target;

pub use fetcher::{FetchConfig, Fetcher, HttpExchange};
pub use headers::Headers;
pub use scan::Scanner;
pub use scoring::{assess, Category, Grade, Outcome, ScanReport, ScoringConfig, TestResult};
pub use target::{ScanTarget, TargetError};
