//! Order-based hints about the shape of a finite image. These are
//! heuristics: only the group order and derived series are consulted.

use std::fmt;

use super::StructureReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CandidateKind {
    ConstantImage,
    Permutation,
    Classical,
    Unrecognized,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Candidate {
    pub kind: CandidateKind,
    pub description: String,
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.kind {
            CandidateKind::ConstantImage => "constant image",
            CandidateKind::Permutation => "permutation type candidate",
            CandidateKind::Classical => "classical type candidate",
            CandidateKind::Unrecognized => "unrecognized",
        };
        if self.description.is_empty() {
            write!(f, "{}", label)
        } else {
            write!(f, "{}: {}", label, self.description)
        }
    }
}

/// `|Sp(2r, q)| = q^{r²} ∏_{i=1}^{r} (q^{2i} - 1)`.
pub fn symplectic_order(r: u32, q: u128) -> u128 {
    let mut order = q.pow(r * r);
    for i in 1..=r {
        order *= q.pow(2 * i) - 1;
    }
    order
}

fn factorial(m: u32) -> u128 {
    (1..=m as u128).product()
}

/// `Some(a)` when `x = p^a`.
fn prime_power_exponent(mut x: u128, p: u128) -> Option<u32> {
    let mut a = 0;
    while x > 1 {
        if x % p != 0 {
            return None;
        }
        x /= p;
        a += 1;
    }
    (x == 1).then_some(a)
}

fn describe(base: &str, quotient: u128, p: u128) -> Option<String> {
    match prime_power_exponent(quotient, p)? {
        0 => Some(base.to_string()),
        a => Some(format!("{} extended by {}^{}", base, p, a)),
    }
}

/// Matches the order against symmetric and alternating groups, symplectic
/// groups over small fields, and their extensions by groups of prime-power order.
pub fn classify_candidates(report: &StructureReport) -> Vec<Candidate> {
    if report.constant {
        return vec![Candidate { kind: CandidateKind::ConstantImage, description: String::new() }];
    }
    let abelian = report.series.len() <= 2 && report.series.last() == Some(&1);
    if abelian {
        return vec![Candidate { kind: CandidateKind::Unrecognized, description: "abelian image".into() }];
    }
    let order = report.order as u128;
    let mut out = Vec::new();
    for m in 3..=12u32 {
        let f = factorial(m);
        let mut bases = vec![(format!("S_{}", m), f)];
        if m >= 5 {
            bases.push((format!("A_{}", m), f / 2));
        }
        for (name, base) in bases {
            if order % base == 0 {
                if let Some(d) = describe(&name, order / base, 2) {
                    out.push(Candidate { kind: CandidateKind::Permutation, description: d });
                }
            }
        }
    }
    for r in 1..=3u32 {
        for (q, p) in [(2u128, 2u128), (3, 3), (4, 2), (5, 5), (7, 7), (8, 2), (9, 3)] {
            let sp = symplectic_order(r, q);
            let mut bases = vec![(format!("Sp({},{})", 2 * r, q), sp)];
            if q % 2 == 1 {
                bases.push((format!("PSp({},{})", 2 * r, q), sp / 2));
            }
            for (name, base) in bases {
                if base > 0 && order % base == 0 {
                    if let Some(d) = describe(&name, order / base, p) {
                        out.push(Candidate { kind: CandidateKind::Classical, description: d });
                    }
                }
            }
        }
    }
    if out.is_empty() {
        out.push(Candidate { kind: CandidateKind::Unrecognized, description: String::new() });
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::super::ImageLabel;
    use super::*;

    fn report(order: usize, series: Vec<usize>, constant: bool) -> StructureReport {
        let solvable = series.last() == Some(&1);
        let label = if constant {
            ImageLabel::Constant
        } else if solvable {
            ImageLabel::SolvableNonconstant
        } else {
            ImageLabel::Nonsolvable
        };
        StructureReport { order, series, solvable, constant, label, candidates: Vec::new() }
    }

    #[test]
    fn symplectic_orders() {
        assert_eq!(symplectic_order(1, 3), 24);
        assert_eq!(symplectic_order(2, 3), 51840);
        assert_eq!(symplectic_order(2, 2), 720);
    }

    #[test]
    fn symmetric_group_of_degree_three() {
        let c = classify_candidates(&report(6, vec![6, 3, 1], false));
        assert!(c.iter().any(|x| x.kind == CandidateKind::Permutation && x.description == "S_3"));
    }

    #[test]
    fn extension_of_s6() {
        let c = classify_candidates(&report(720 * 64, vec![46080, 23040], false));
        assert!(c.iter().any(|x| x.description == "S_6 extended by 2^6"));
    }

    #[test]
    fn cyclic_is_constant_or_unrecognized() {
        let c = classify_candidates(&report(6, vec![6, 1], true));
        assert_eq!(c[0].to_string(), "constant image");
        let c = classify_candidates(&report(6, vec![6, 1], false));
        assert_eq!(c[0].kind, CandidateKind::Unrecognized);
    }

    #[test]
    fn nothing_matches() {
        let c = classify_candidates(&report(11 * 13, vec![143, 13], false));
        assert_eq!(c, vec![Candidate { kind: CandidateKind::Unrecognized, description: String::new() }]);
    }
}
