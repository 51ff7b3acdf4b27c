//! Parsing of complex parameters with symbolic i pi/2h shifts.

use num_complex::Complex64;
use qorep::qarith::ShiftedArg;

const SUFFIXES: [(&str, i32); 3] = [("+3pi/2h", 3), ("+pi/2h", 1), ("+pi/h", 2)];

/// Parses `a+bi` optionally followed by `+pi/2h`, `+pi/h` or `+3pi/2h`.
pub fn parse_arg(s: &str) -> Result<ShiftedArg, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = compact.as_str();
    let mut quarter = 0;
    for (suffix, q) in SUFFIXES {
        let bare = &suffix[1..];
        if let Some(head) = rest.strip_suffix(suffix) {
            rest = head;
            quarter = q;
            break;
        }
        if rest == bare {
            rest = "";
            quarter = q;
            break;
        }
    }
    let base = if rest.is_empty() {
        Complex64::new(0.0, 0.0)
    } else {
        rest.parse::<Complex64>().map_err(|_| format!("cannot parse complex number `{s}`"))?
    };
    if !base.re.is_finite() || !base.im.is_finite() {
        return Err(format!("non-finite value `{s}`"));
    }
    Ok(ShiftedArg::new(base, quarter))
}
