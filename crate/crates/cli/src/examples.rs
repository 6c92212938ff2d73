//! Built-in function descriptions for the standard example families.

use innerfn::{AtomFamily, Spec, ZeroFamily};

use crate::specfile::to_spec_text;

pub const NAMES: &[&str] = &["geometric2", "power2", "doubleexp", "tangential-3-2", "dyadic-square"];

/// The built-in description called `name`.
pub fn builtin(name: &str) -> Option<Spec> {
    let spec = match name {
        "geometric2" => Spec::blaschke(ZeroFamily::geometric(2.0, 20).ok()?),
        "power2" => Spec::blaschke(ZeroFamily::power(2.0, 200).ok()?),
        "doubleexp" => Spec::blaschke(ZeroFamily::double_exp(6).ok()?),
        "tangential-3-2" => Spec::blaschke(ZeroFamily::tangential(3.0, 2.0, 1000).ok()?),
        "dyadic-square" => Spec::singular(AtomFamily::dyadic_square(1.0, 30).ok()?),
        _ => return None,
    };
    Some(spec)
}

/// Spec-file text for the built-in `name`, headed by a comment line.
pub fn example_text(name: &str) -> Option<String> {
    builtin(name).map(|spec| format!("# example: {name}\n{}", to_spec_text(&spec)))
}
