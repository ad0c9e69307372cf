use std::path::PathBuf;

use thiserror::Error;

use agroline_core::ingest::IngestError;
use agroline_core::planner::PlanError;
use agroline_core::surface::SurfaceError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Ingest {
        path: PathBuf,
        #[source]
        source: IngestError,
    },
    #[error("{}: {source}", path.display())]
    Surface {
        path: PathBuf,
        #[source]
        source: SurfaceError,
    },
    #[error("planning failed: {0}")]
    Plan(#[source] PlanError),
    #[error(
        "plot {} is concave and needs subdivision pairs: run `agroline serve`, pick the pairs in the web UI, save them and pass the file with --eplot",
        path.display()
    )]
    NeedsSubdivision { path: PathBuf },
    #[error("{}: {source}", path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot listen on {addr}: {source}")]
    Bind {
        addr: String,
        #[source]
        source: std::io::Error,
    },
    #[error("server stopped: {0}")]
    Server(#[source] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::NeedsSubdivision { .. } => crate::EXIT_NEEDS_SUBDIVISION,
            _ => crate::EXIT_INPUT,
        }
    }
}
