//! Library side of the `rainbowkit` command: instance loading and the
//! theorem-verification campaigns.

pub mod campaign;
pub mod io;

pub use campaign::{run_campaign, CampaignError, CampaignParams, CampaignReport, Theorem};
pub use io::{load_json, InputError};
