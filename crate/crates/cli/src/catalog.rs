//! Published reference values, kept as the exact decimal strings they were
//! printed with.

use serde::Serialize;

use starkres_core::StateLabel;

/// Where a reference row comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Source {
    /// Riccati-Pade table row.
    Rpm,
    /// Riccati-Pade real part with all 68 digits.
    RpmFull,
    /// Asymptotic width formula.
    Asymptotic,
    /// Earlier low-precision mesh calculation.
    Crlm2013,
    /// Mesh calculation whose ground-state width is only a bound.
    CrlmBound,
    /// Mesh calculation with accurate integrals.
    CrlmRefined,
    LinHo,
    Kolosov,
    /// Perturbation series summed through 130 terms.
    Pt130,
}

impl Source {
    pub fn label(self) -> &'static str {
        match self {
            Source::Rpm => "rpm",
            Source::RpmFull => "rpm-full",
            Source::Asymptotic => "asymptotic",
            Source::Crlm2013 => "crlm-2013",
            Source::CrlmBound => "crlm-bound",
            Source::CrlmRefined => "crlm-refined",
            Source::LinHo => "lin-ho",
            Source::Kolosov => "kolosov",
            Source::Pt130 => "pt-130",
        }
    }

    /// Method family shown in the `method` column of comparison tables.
    pub fn method(self) -> &'static str {
        match self {
            Source::Rpm | Source::RpmFull => "rpm",
            Source::Asymptotic => "asymptotic",
            Source::Crlm2013 | Source::CrlmBound | Source::CrlmRefined => "crlm",
            Source::LinHo | Source::Kolosov => "literature",
            Source::Pt130 => "pt",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReferenceEntry {
    pub source: Source,
    /// Ket `|n q m>`.
    pub state: (u32, i32, i32),
    pub field: &'static str,
    pub re_e: Option<&'static str>,
    pub gamma: Option<&'static str>,
    /// The width column holds an upper bound, not a value.
    pub gamma_is_bound: bool,
    pub table: &'static str,
    pub note: &'static str,
}

impl ReferenceEntry {
    pub fn state_label(&self) -> StateLabel {
        let (n, q, m) = self.state;
        StateLabel::from_ket(n, q, m).expect("catalog kets are valid")
    }

    /// One line per entry; used for the integrity checksum.
    pub fn canonical_line(&self) -> String {
        format!(
            "{}|{:?}|{}|{}|{}|{}|{}",
            self.source.label(),
            self.state,
            self.field,
            self.re_e.unwrap_or("-"),
            self.gamma.unwrap_or("-"),
            if self.gamma_is_bound { "bound" } else { "value" },
            self.table,
        )
    }
}

const F: &str = "0.005";

const fn entry(
    source: Source,
    state: (u32, i32, i32),
    re_e: Option<&'static str>,
    gamma: Option<&'static str>,
    table: &'static str,
    note: &'static str,
) -> ReferenceEntry {
    ReferenceEntry { source, state, field: F, re_e, gamma, gamma_is_bound: false, table, note }
}

pub static CATALOG: &[ReferenceEntry] = &[
    entry(Source::RpmFull, (1, 0, 0), Some("-0.50005628479379296933177394769143288196325092731889137262135731287257"), None, "text", "ground-state real part, all digits"),
    entry(Source::Pt130, (1, 0, 0), Some("-0.5000562847937929693317739476914328819632509273188913726"), None, "text", "partial sum of 130 terms"),
    entry(Source::Crlm2013, (1, 0, 0), Some("-0.5000553416"), Some("0.8944475605e-7"), "I", "low-precision integrals"),
    ReferenceEntry {
        source: Source::CrlmBound,
        state: (1, 0, 0),
        field: F,
        re_e: Some("-0.500056284793"),
        gamma: Some("1e-13"),
        gamma_is_bound: true,
        table: "I",
        note: "width below resolution",
    },
    entry(Source::Rpm, (1, 0, 0), Some("-0.5000562847938"), Some("9.49802741674e-56"), "I", ""),
    entry(Source::Asymptotic, (1, 0, 0), None, Some("9.4983e-56"), "I", "width only"),
    entry(Source::Crlm2013, (2, -1, 0), Some("-0.1426203564"), Some("1.057292433e-4"), "II", "low-precision integrals"),
    entry(Source::CrlmRefined, (2, -1, 0), Some("-0.1426186075727079"), Some("1.05944463673e-4"), "II", ""),
    entry(Source::LinHo, (2, -1, 0), Some("-0.1426186076"), Some("1.059444711e-4"), "II", ""),
    entry(Source::Crlm2013, (2, 1, 0), Some("-0.1120633027"), Some("4.930560122e-6"), "II", "width known to be mis-transcribed"),
    entry(Source::CrlmRefined, (2, 1, 0), Some("-0.1120619240019936"), Some("5.72936843930e-6"), "II", ""),
    entry(Source::LinHo, (2, 1, 0), Some("-0.1120619240"), Some("5.72939466e-6"), "II", ""),
    entry(Source::Crlm2013, (2, 0, 1), Some("-0.1271464039"), Some("2.671348551e-5"), "II", "low-precision integrals"),
    entry(Source::CrlmRefined, (2, 0, 1), Some("-0.127146612703972"), Some("2.6152854466430e-5"), "II", ""),
    entry(Source::Kolosov, (2, 0, 1), Some("-0.127 146 612"), Some("2.61528545e-5"), "II", "printed with digit grouping"),
];

/// All entries for `state` at field `f` (compared as decimal strings).
pub fn lookup(state: StateLabel, f: &str) -> Vec<&'static ReferenceEntry> {
    let f = f.trim();
    CATALOG
        .iter()
        .filter(|e| e.state_label() == state && same_field(e.field, f))
        .collect()
}

/// The single entry for `source` and `state`, if any.
pub fn find(source: Source, state: StateLabel) -> Option<&'static ReferenceEntry> {
    CATALOG.iter().find(|e| e.source == source && e.state_label() == state)
}

fn same_field(a: &str, b: &str) -> bool {
    let norm = |s: &str| {
        let s = s.trim();
        let s = s.trim_end_matches('0');
        s.trim_end_matches('.').trim_start_matches('0').to_string()
    };
    if !a.contains('.') || !b.contains('.') {
        return a.trim() == b.trim();
    }
    norm(a) == norm(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_strings_compare_without_trailing_zeros() {
        assert!(same_field("0.005", "0.0050"));
        assert!(same_field("0.005", ".005"));
        assert!(!same_field("0.005", "0.05"));
    }

    #[test]
    fn each_source_and_state_appears_once() {
        for (i, a) in CATALOG.iter().enumerate() {
            for b in &CATALOG[i + 1..] {
                assert!(!(a.source == b.source && a.state == b.state), "{}", a.canonical_line());
            }
        }
    }

    #[test]
    fn lookup_by_state() {
        assert_eq!(lookup(StateLabel::ground(), "0.005").len(), 6);
        assert_eq!(lookup(StateLabel::from_ket(2, 0, 1).unwrap(), "0.005").len(), 3);
        assert!(lookup(StateLabel::ground(), "0.004").is_empty());
    }
}
