//! `designlab bounds`: evaluate every applicable analytic bound at the given
//! setting and order, next to the exact moment when it is computable.

use designlab::entropy::ChoiPartition;
use designlab::moments::Setting;

use crate::report::Record;
use crate::table::setting_bound_rows;

/// Which averaged object the bounds apply to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SettingKind {
    /// Reduced Choi state of a Haar-random unitary channel.
    Choi,
    /// Reduced state of a Haar-random bipartite pure state.
    State,
}

impl SettingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SettingKind::Choi => "choi",
            SettingKind::State => "state",
        }
    }
}

fn parse_dims(dims: &str) -> Result<Vec<usize>, String> {
    dims.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("dimension {t:?} is not a positive integer"))
                .and_then(|v| {
                    if v == 0 {
                        Err("dimensions must be positive".to_string())
                    } else {
                        Ok(v)
                    }
                })
        })
        .collect()
}

/// Errors are configuration errors (exit 2).
pub fn run_bounds(kind: SettingKind, dims: &str, alpha: usize) -> Result<(String, Vec<Record>), String> {
    if alpha == 0 {
        return Err("--alpha must be at least 1".to_string());
    }
    let parsed = parse_dims(dims)?;
    let (setting, dims_label) = match (kind, parsed.as_slice()) {
        (SettingKind::Choi, &[d_a, d_b]) => {
            let part = ChoiPartition::symmetric(d_a, d_b)
                .map_err(|e| format!("invalid partition: {e}"))?;
            (Setting::Choi(part), format!("({d_a},{d_b}|{d_a},{d_b})"))
        }
        (SettingKind::Choi, &[d_a, d_b, d_c, d_d]) => {
            let part = ChoiPartition::new(d_a, d_b, d_c, d_d)
                .map_err(|e| format!("invalid partition: {e}"))?;
            (
                Setting::Choi(part),
                format!("({d_a},{d_b}|{d_c},{d_d})"),
            )
        }
        (SettingKind::Choi, _) => {
            return Err(
                "--kind choi needs --dims d_A,d_B (symmetric split) or d_A,d_B,d_C,d_D".to_string(),
            )
        }
        (SettingKind::State, &[d_a, d_b]) => (
            Setting::State { d_a, d_b },
            format!("({d_a},{d_b})"),
        ),
        (SettingKind::State, _) => return Err("--kind state needs --dims d_A,d_B".to_string()),
    };
    let records = setting_bound_rows(&setting, alpha, dims_label);
    let params = format!("kind={} dims={} alpha={}", kind.as_str(), dims, alpha);
    Ok((params, records))
}
