use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::ehrhart::{ehrhart_polynomial, hstar_from_descents, hstar_from_ehrhart, is_ehrhart_positive, Algorithm};
use crate::polycheck::{is_log_concave, is_real_rooted, is_unimodal, IntPolynomial};
use crate::poset::{canonical_form, count_linear_extensions, Poset};

/// Certificate for one poset. Serialized as one JSONL line with rationals as
/// `num/den` strings and big integers as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VerificationRecord {
    /// Canonical byte string, hex.
    pub canon: String,
    pub p: usize,
    pub num_linear_extensions: String,
    /// Ehrhart coefficients, ascending power.
    pub ehr_coeffs: Vec<String>,
    pub hstar: Vec<String>,
    pub ehrhart_positive: bool,
    pub real_rooted: bool,
    pub log_concave: bool,
    pub unimodal: bool,
    pub narrow: bool,
    pub graded: bool,
}

/// The four properties a sweep certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    EhrhartPositive,
    RealRooted,
    LogConcave,
    Unimodal,
}

impl Property {
    pub const ALL: [Property; 4] =
        [Property::EhrhartPositive, Property::RealRooted, Property::LogConcave, Property::Unimodal];

    pub fn name(self) -> &'static str {
        match self {
            Property::EhrhartPositive => "ehrhart_positive",
            Property::RealRooted => "real_rooted",
            Property::LogConcave => "log_concave",
            Property::Unimodal => "unimodal",
        }
    }
}

impl VerificationRecord {
    pub fn holds(&self, property: Property) -> bool {
        match property {
            Property::EhrhartPositive => self.ehrhart_positive,
            Property::RealRooted => self.real_rooted,
            Property::LogConcave => self.log_concave,
            Property::Unimodal => self.unimodal,
        }
    }

    pub fn failed_properties(&self) -> Vec<Property> {
        Property::ALL.into_iter().filter(|&q| !self.holds(q)).collect()
    }

    pub fn is_counterexample(&self) -> bool {
        !self.failed_properties().is_empty()
    }

    /// `h₀ = 1`, `Σh = e(P)`, and real-rooted ⇒ log-concave ⇒ unimodal.
    pub fn check_invariants(&self) -> Result<(), String> {
        let h: Vec<BigInt> = self
            .hstar
            .iter()
            .map(|s| s.parse().map_err(|_| format!("bad h* entry {s}")))
            .collect::<Result<_, _>>()?;
        if !h.first().is_some_and(One::is_one) {
            return Err("h*_0 != 1".into());
        }
        let e: BigInt = self
            .num_linear_extensions
            .parse()
            .map_err(|_| format!("bad extension count {}", self.num_linear_extensions))?;
        if h.iter().sum::<BigInt>() != e {
            return Err(format!("sum of h* differs from e(P) = {e}"));
        }
        if self.real_rooted && !self.log_concave {
            return Err("real-rooted but not log-concave".into());
        }
        if self.log_concave && !self.unimodal {
            return Err("log-concave but not unimodal".into());
        }
        Ok(())
    }
}

/// Computes every certificate for `poset`; the two h* routes must agree.
pub fn verify_poset(poset: &Poset) -> Result<VerificationRecord, HarnessError> {
    let p = poset.len();
    let canon = canonical_form(poset).to_hex();
    let extensions = count_linear_extensions(poset);
    let ehr = ehrhart_polynomial(poset, Algorithm::Auto);

    let from_descents = hstar_from_descents(poset);
    let from_ehrhart = hstar_from_ehrhart(&ehr, p).map_err(|source| HarnessError::HStar { canon: canon.clone(), source })?;
    if from_ehrhart != from_descents {
        return Err(HarnessError::HStarMismatch {
            canon,
            from_ehrhart: from_ehrhart.to_decimal_strings(),
            from_descents: from_descents.to_decimal_strings(),
        });
    }
    let hstar = from_descents;
    let top = hstar.truncated();
    let real_rooted = is_real_rooted(&IntPolynomial::new(top.to_vec())).map_err(|source| HarnessError::Poly { canon: canon.clone(), source })?;

    let record = VerificationRecord {
        canon,
        p,
        num_linear_extensions: extensions.to_string(),
        ehr_coeffs: ehr.to_fraction_strings(),
        hstar: hstar.to_decimal_strings(),
        ehrhart_positive: is_ehrhart_positive(&ehr),
        real_rooted,
        log_concave: is_log_concave(top),
        unimodal: is_unimodal(top),
        narrow: poset.is_narrow(),
        graded: poset.is_graded(),
    };
    record
        .check_invariants()
        .map_err(|detail| HarnessError::Invariant { canon: record.canon.clone(), detail })?;
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_record() {
        let r = verify_poset(&Poset::antichain(3).unwrap()).unwrap();
        assert_eq!(r.ehr_coeffs, ["1/1", "3/1", "3/1", "1/1"]);
        assert_eq!(r.hstar, ["1", "4", "1", "0"]);
        assert_eq!(r.num_linear_extensions, "6");
        assert!(r.ehrhart_positive && r.real_rooted && r.log_concave && r.unimodal);
        assert!(!r.narrow);
        assert!(r.graded);
        assert!(!r.is_counterexample());
    }

    #[test]
    fn chain_record() {
        let r = verify_poset(&Poset::chain(3).unwrap()).unwrap();
        assert_eq!(r.ehr_coeffs, ["1/1", "11/6", "1/1", "1/6"]);
        assert_eq!(r.hstar, ["1", "0", "0", "0"]);
        assert!(r.ehrhart_positive && r.real_rooted && r.log_concave && r.unimodal);
        assert!(r.narrow && r.graded);
    }

    #[test]
    fn v_poset_record() {
        let r = verify_poset(&Poset::from_arcs(3, &[(0, 2), (1, 2)]).unwrap()).unwrap();
        assert_eq!(r.hstar, ["1", "1", "0", "0"]);
        assert!(r.ehrhart_positive && r.real_rooted);
        assert_eq!(r.ehr_coeffs, ["1/1", "13/6", "3/2", "1/3"]);
    }

    #[test]
    fn json_field_names() {
        let r = verify_poset(&Poset::chain(2).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        let mut expect = vec![
            "canon",
            "p",
            "num_linear_extensions",
            "ehr_coeffs",
            "hstar",
            "ehrhart_positive",
            "real_rooted",
            "log_concave",
            "unimodal",
            "narrow",
            "graded",
        ];
        expect.sort();
        let mut keys = keys;
        keys.sort();
        assert_eq!(keys, expect);
        let line = serde_json::to_string(&r).unwrap();
        assert!(line.starts_with("{\"canon\":\""));
    }

    #[test]
    fn invariant_checks_catch_bad_records() {
        let mut r = verify_poset(&Poset::antichain(2).unwrap()).unwrap();
        assert!(r.check_invariants().is_ok());
        r.num_linear_extensions = "3".into();
        assert!(r.check_invariants().is_err());
        let mut r = verify_poset(&Poset::antichain(2).unwrap()).unwrap();
        r.log_concave = false;
        assert!(r.check_invariants().is_err());
        assert_eq!(r.failed_properties(), vec![Property::LogConcave]);
    }
}
