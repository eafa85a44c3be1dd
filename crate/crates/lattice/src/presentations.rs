//! The isomorphic-presentation lists for the polarizing lattices of the
//! restricted families, and the extension-chain check.

use crate::gram::LatticeError;
use crate::invariants::{triple_equal, NikulinTriple};

/// One family of presentations asserted to give the same lattice.
#[derive(Clone, Debug)]
pub struct PresentationFamily {
    pub name: &'static str,
    pub specs: &'static [&'static str],
    /// Expected (rank, length, parity); `None` when only internal agreement
    /// is asserted.
    pub expected: Option<(usize, usize, u8)>,
}

/// All presentation lists: the rank 16..19 chain and the rank-17 Kummer
/// locus pair.
pub const PRESENTATIONS: &[PresentationFamily] = &[
    PresentationFamily {
        name: "rank16",
        specs: &[
            "H + E8(-1) + 6*A1(-1)",
            "H + E7(-1) + D4(-1) + 3*A1(-1)",
            "H + D6(-1) + 2*D4(-1)",
            "H + 2*D6(-1) + 2*A1(-1)",
            "H + D10(-1) + 4*A1(-1)",
            "H + D8(-1) + D4(-1) + 2*A1(-1)",
        ],
        expected: Some((16, 6, 1)),
    },
    PresentationFamily {
        name: "rank17",
        specs: &[
            "H + E8(-1) + D4(-1) + 3*A1(-1)",
            "H + E7(-1) + 2*D4(-1)",
            "H + D12(-1) + 3*A1(-1)",
            "H + D10(-1) + D4(-1) + A1(-1)",
            "H + D8(-1) + D6(-1) + A1(-1)",
        ],
        expected: Some((17, 5, 1)),
    },
    PresentationFamily {
        name: "rank18",
        specs: &[
            "H + E8(-1) + D6(-1) + 2*A1(-1)",
            "H + 2*E7(-1) + 2*A1(-1)",
            "H + E7(-1) + D8(-1) + A1(-1)",
            "H + D14(-1) + 2*A1(-1)",
            "H + D10(-1) + D6(-1)",
        ],
        expected: Some((18, 4, 1)),
    },
    PresentationFamily {
        name: "rank19",
        specs: &[
            "H + E8(-1) + E7(-1) + 2*A1(-1)",
            "H + E7(-1) + D10(-1)",
            "H + E8(-1) + D8(-1) + A1(-1)",
            "H + D16(-1) + A1(-1)",
        ],
        expected: Some((19, 3, 1)),
    },
    PresentationFamily {
        name: "kummer_locus",
        specs: &[
            "H + D8(-1) + D4(-1) + A3(-1)",
            "H + D7(-1) + 2*D4(-1)",
        ],
        expected: None,
    },
];

/// Outcome of verifying one presentation family.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub name: &'static str,
    pub all_equal: bool,
    pub matches_expected: bool,
    pub triples: Vec<NikulinTriple>,
}

/// Verify every presentation list: each family must agree internally and,
/// where stated, give the expected (rank, length, parity) with signature
/// (1, rank-1). The rank 16..19 families realize (16+k, 6-k, 1) for
/// k = 0..3.
pub fn polarization_chain_check() -> Result<Vec<ChainReport>, LatticeError> {
    let mut out = Vec::new();
    for fam in PRESENTATIONS {
        let (all_equal, triples) = triple_equal(fam.specs)?;
        let matches_expected = match fam.expected {
            None => all_equal,
            Some((r, l, p)) => {
                all_equal
                    && triples.iter().all(|t| {
                        t.triple() == (r, l, p)
                            && t.signature == (1, r - 1)
                            && t.is_two_elementary()
                    })
            }
        };
        out.push(ChainReport {
            name: fam.name,
            all_equal,
            matches_expected,
            triples,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presentation_families_verify() {
        let reports = polarization_chain_check().unwrap();
        assert_eq!(reports.len(), 5);
        for r in &reports {
            assert!(r.all_equal, "family {} disagrees internally", r.name);
            assert!(r.matches_expected, "family {} misses expectation", r.name);
        }
    }

    #[test]
    fn chain_is_sixteen_plus_k() {
        let reports = polarization_chain_check().unwrap();
        for (k, name) in ["rank16", "rank17", "rank18", "rank19"].iter().enumerate() {
            let r = reports.iter().find(|r| &r.name == name).unwrap();
            let t = &r.triples[0];
            assert_eq!(t.triple(), (16 + k, 6 - k, 1));
        }
    }

    #[test]
    fn kummer_locus_invariants() {
        // the two rank-17 Kummer presentations agree and are NOT
        // two-elementary (their discriminant group contains Z/4)
        let reports = polarization_chain_check().unwrap();
        let r = reports.iter().find(|r| r.name == "kummer_locus").unwrap();
        assert!(r.all_equal);
        assert_eq!(r.triples[0].rank, 17);
        assert!(!r.triples[0].is_two_elementary());
    }
}
