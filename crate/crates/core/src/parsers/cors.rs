use crate::headers::Headers;

/// Origin sent on the second request to detect blind reflection.
pub const PROBE_ORIGIN: &str = "https://observatory-probe.invalid";

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CorsEvidence {
    /// Raw `Access-Control-Allow-Origin` of the landing response.
    pub acao: Option<String>,
    pub allow_credentials: bool,
    /// The server echoed [`PROBE_ORIGIN`] back.
    pub reflects_arbitrary_origin: bool,
}

impl CorsEvidence {
    /// Builds evidence from the landing response and, when it was made, the
    /// response to the request carrying `Origin: PROBE_ORIGIN`.
    pub fn from_responses(landing: &Headers, probe: Option<&Headers>) -> Self {
        let acao = landing
            .get("access-control-allow-origin")
            .map(|v| v.trim().to_string());
        let credentials = |h: &Headers| {
            h.get("access-control-allow-credentials")
                .is_some_and(|v| v.trim().eq_ignore_ascii_case("true"))
        };
        let reflects = probe.is_some_and(|h| {
            h.get("access-control-allow-origin")
                .is_some_and(|v| v.trim().eq_ignore_ascii_case(PROBE_ORIGIN))
        });
        Self {
            acao,
            allow_credentials: credentials(landing) || probe.is_some_and(credentials),
            reflects_arbitrary_origin: reflects,
        }
    }
}
