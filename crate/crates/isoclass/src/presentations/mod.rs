//! Finite group presentations: a text grammar, free-word algebra, coset
//! enumeration, and certified identification of the two-generator
//! Berkovich–Janko presentations with the non-metacyclic family.
//!
//! Words are sequences of `(generator index, exponent)` pairs held freely
//! reduced. The built-in presentation builders cover both parametrised
//! families, the simplified order-16 presentation, and the Berkovich–Janko
//! form in two shapes: over the two true generators `{a, x}` with the
//! auxiliaries `v = [a, x]`, `b = [v, a]`, `z = v^(2^r)`, `u = b^(2^(r-1))`,
//! `w = z^l` substituted away, and as an unreduced seven-generator
//! presentation keeping the auxiliaries as generators with definitional
//! relators. Both shapes must enumerate to the same order.

pub mod parser;
mod todd_coxeter;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cayley::{self, GroupTable};
use crate::families::{
    nf_inverse, nf_multiply, nf_power, FamiliesError, GroupParams, NFElement,
};

pub use parser::parse_presentation;
pub use todd_coxeter::{
    todd_coxeter, CosetTable, EnumerationStatus, Strategy, DEFAULT_COSET_CAP,
};

/// The live-coset cap for enumerations, overridable through the
/// `ISOCLASS_COSET_CAP` environment variable (unparseable values fall back
/// to the default).
pub fn coset_cap_from_env() -> usize {
    std::env::var("ISOCLASS_COSET_CAP")
        .ok()
        .and_then(|value| value.trim().parse().ok())
        .unwrap_or(DEFAULT_COSET_CAP)
}

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator `{name}` at byte {position}")]
    UnknownSymbol { name: String, position: usize },
    #[error("invalid generator name `{0}` (expected a letter followed by digits)")]
    BadGeneratorName(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("relator refers to generator {index} but only {count} generators exist")]
    SymbolOutOfRange { index: usize, count: usize },
    #[error("invalid presentation spec: {0}")]
    InvalidSpec(String),
    #[error("cannot parse `{0}` as a presentation spec")]
    ParseSpec(String),
    #[error("certificate failure: {detail}")]
    CertificateFailure { detail: String },
    #[error("coset enumeration did not complete within {cap} live cosets")]
    EnumerationIncomplete { cap: usize },
    #[error(transparent)]
    Families(#[from] FamiliesError),
}

/// A freely reduced word over indexed generators.
pub type Word = Vec<(usize, i64)>;

/// Merges adjacent equal-generator pairs and drops zero exponents.
pub fn reduce_word(word: &[(usize, i64)]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &(g, e) in word {
        if e == 0 {
            continue;
        }
        if let Some(last) = out.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    out.pop();
                }
                continue;
            }
        }
        out.push((g, e));
    }
    out
}

pub fn word_inverse(word: &[(usize, i64)]) -> Word {
    word.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

pub fn word_concat(left: &[(usize, i64)], right: &[(usize, i64)]) -> Word {
    let mut joined = left.to_vec();
    joined.extend_from_slice(right);
    reduce_word(&joined)
}

/// `word^exponent` (negative exponents invert first).
pub fn word_pow(word: &[(usize, i64)], exponent: i64) -> Word {
    if let [(g, e)] = word {
        return reduce_word(&[(*g, e * exponent)]);
    }
    let base = if exponent < 0 { word_inverse(word) } else { word.to_vec() };
    let mut out = Word::new();
    for _ in 0..exponent.unsigned_abs() {
        out = word_concat(&out, &base);
    }
    out
}

/// `by⁻¹ · word · by`.
pub fn word_conjugate(word: &[(usize, i64)], by: &[(usize, i64)]) -> Word {
    word_concat(&word_concat(&word_inverse(by), word), by)
}

/// `[x, y] = x⁻¹ y⁻¹ x y`.
pub fn word_commutator(x: &[(usize, i64)], y: &[(usize, i64)]) -> Word {
    word_concat(&word_concat(&word_inverse(x), &word_inverse(y)), &word_concat(x, y))
}

/// A finite presentation: named generators and freely reduced relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Creates a relator-free presentation, validating the generator names.
    pub fn new(generators: Vec<String>) -> Result<Self, PresentationError> {
        for name in &generators {
            let mut chars = name.chars();
            let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
            if !head_ok || !chars.all(|c| c.is_ascii_digit()) {
                return Err(PresentationError::BadGeneratorName(name.clone()));
            }
        }
        for (i, name) in generators.iter().enumerate() {
            if generators[..i].contains(name) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        Ok(Presentation { generators, relators: Vec::new() })
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Adds a relator after free reduction, checking its symbols.
    pub fn push_relator(&mut self, word: Word) -> Result<(), PresentationError> {
        let word = reduce_word(&word);
        if let Some(&(index, _)) = word.iter().find(|&&(g, _)| g >= self.generators.len()) {
            return Err(PresentationError::SymbolOutOfRange {
                index,
                count: self.generators.len(),
            });
        }
        self.relators.push(word);
        Ok(())
    }

    /// Renders a word in the grammar (`1` for the empty word).
    pub fn format_word(&self, word: &[(usize, i64)]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.iter()
            .map(|&(g, e)| {
                if e == 1 {
                    self.generators[g].clone()
                } else {
                    format!("{}^{}", self.generators[g], e)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "< {} |", self.generators.join(", "))?;
        for (i, relator) in self.relators.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(out, "{sep}{}", self.format_word(relator))?;
        }
        write!(out, " >")
    }
}

/// Selector for the built-in presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationSpec {
    /// The metacyclic family member `G1(e, f)` on `{h, g}`.
    G1 { e: u32, f: u32 },
    /// The non-metacyclic family member `G2(e; k, l)` on `{a, b}`.
    G2 { e: u32, k: u8, l: u8 },
    /// The simplified five-relator presentation of the order-16 group
    /// `G2(2; 0, 0)`.
    G2Simple,
    /// The Berkovich–Janko two-generator presentation with `x² = z^k`,
    /// `w = z^l`, auxiliaries substituted away.
    Bj { r: u32, k: u8, l: u8 },
    /// The same presentation kept on all seven symbols with definitional
    /// relators.
    BjFull { r: u32, k: u8, l: u8 },
}

impl fmt::Display for PresentationSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PresentationSpec::G1 { e, f } => write!(out, "G1({e},{f})"),
            PresentationSpec::G2 { e, k, l } => write!(out, "G2({e};{k},{l})"),
            PresentationSpec::G2Simple => write!(out, "G2-simple(2)"),
            PresentationSpec::Bj { r, k, l } => write!(out, "BJ({r},{k},{l})"),
            PresentationSpec::BjFull { r, k, l } => write!(out, "BJ-full({r},{k},{l})"),
        }
    }
}

impl FromStr for PresentationSpec {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PresentationError::ParseSpec(s.to_string());
        let body = s.trim();
        if body.starts_with("G1(") || body.starts_with("G2(") {
            let params: GroupParams = body.parse().map_err(|_| bad())?;
            return Ok(match params {
                GroupParams::Metacyclic { e, f } => PresentationSpec::G1 { e, f },
                GroupParams::NonMetacyclic { e, k, l } => PresentationSpec::G2 { e, k, l },
            });
        }
        if let Some(args) = body.strip_prefix("G2-simple(").and_then(|r| r.strip_suffix(')')) {
            if args.trim() == "2" {
                return Ok(PresentationSpec::G2Simple);
            }
            return Err(bad());
        }
        let bj = |args: &str| -> Option<(u32, u8, u8)> {
            let mut parts = args.split(',');
            let r = parts.next()?.trim().parse().ok()?;
            let k = parts.next()?.trim().parse().ok()?;
            let l = parts.next()?.trim().parse().ok()?;
            if parts.next().is_some() {
                return None;
            }
            Some((r, k, l))
        };
        if let Some(args) = body.strip_prefix("BJ-full(").and_then(|r| r.strip_suffix(')')) {
            let (r, k, l) = bj(args).ok_or_else(bad)?;
            return Ok(PresentationSpec::BjFull { r, k, l });
        }
        if let Some(args) = body.strip_prefix("BJ(").and_then(|r| r.strip_suffix(')')) {
            let (r, k, l) = bj(args).ok_or_else(bad)?;
            return Ok(PresentationSpec::Bj { r, k, l });
        }
        Err(bad())
    }
}

fn check_bj_params(r: u32, k: u8, l: u8) -> Result<(), PresentationError> {
    if r < 2 {
        return Err(PresentationError::InvalidSpec(format!("need r ≥ 2, got r = {r}")));
    }
    if r > 16 {
        return Err(PresentationError::InvalidSpec(format!(
            "r = {r} would materialise relators of length 2^{}",
            r + 2
        )));
    }
    if k > 1 || l > 1 {
        return Err(PresentationError::InvalidSpec(format!(
            "need k, l ∈ {{0, 1}}, got k = {k}, l = {l}"
        )));
    }
    Ok(())
}

/// Builds the relator set of the selected presentation.
pub fn make_presentation(spec: &PresentationSpec) -> Result<Presentation, PresentationError> {
    match *spec {
        PresentationSpec::G1 { e, f } => {
            GroupParams::metacyclic(e, f)?;
            let n = 1u64 << e;
            let q = 1u64 + (1 << f);
            parse_presentation(&format!("< h, g | h^{n}, g^{n}, h^g = h^{q} >"))
        }
        PresentationSpec::G2 { e, k, l } => {
            GroupParams::non_metacyclic(e, k, l)?;
            let n = 1u64 << e;
            let m = n / 2;
            let z = |power: u8| {
                if power == 1 {
                    format!(" a^{m} b^{m}")
                } else {
                    String::new()
                }
            };
            parse_presentation(&format!(
                "< a, b | a^{n}, b^{n}, [b^2, a^2], [b, a] = a^2 b^-2{}, \
                 (b^2)^a = b^-2{}, (a^2)^b = a^-2{} >",
                z(k),
                z(l),
                z(l)
            ))
        }
        PresentationSpec::G2Simple => {
            parse_presentation("< a, b | a^4, b^4, [a^2, b], [b^2, a], [b, a] = a^2 b^2 >")
        }
        PresentationSpec::Bj { r, k, l } => {
            check_bj_params(r, k, l)?;
            let mut p = Presentation::new(vec!["a".into(), "x".into()])?;
            let a: Word = vec![(0, 1)];
            let x: Word = vec![(1, 1)];
            let v = word_commutator(&a, &x);
            let b = word_commutator(&v, &a);
            let z = word_pow(&v, 1 << r);
            let w = word_pow(&z, i64::from(l));
            p.push_relator(word_pow(&a, 1 << (r + 2)))?;
            p.push_relator(word_pow(&v, 1 << (r + 1)))?;
            p.push_relator(word_pow(&b, 1 << r))?;
            p.push_relator(word_commutator(&v, &b))?;
            p.push_relator(word_concat(&word_pow(&x, 2), &word_pow(&z, -i64::from(k))))?;
            p.push_relator(word_concat(&word_conjugate(&b, &x), &b))?;
            p.push_relator(word_concat(&word_conjugate(&v, &x), &v))?;
            p.push_relator(word_concat(&word_conjugate(&b, &a), &b))?;
            let rhs = word_concat(&word_concat(&word_pow(&v, -2), &word_inverse(&b)), &w);
            p.push_relator(word_concat(&word_pow(&a, 4), &word_inverse(&rhs)))?;
            Ok(p)
        }
        PresentationSpec::BjFull { r, k, l } => {
            check_bj_params(r, k, l)?;
            let names = ["a", "x", "v", "b", "z", "u", "w"];
            let mut p = Presentation::new(names.iter().map(|s| s.to_string()).collect())?;
            let sym = |name: &str| -> Word {
                vec![(names.iter().position(|&n| n == name).unwrap(), 1)]
            };
            let (a, x, v, b, z, u, w) =
                (sym("a"), sym("x"), sym("v"), sym("b"), sym("z"), sym("u"), sym("w"));
            p.push_relator(word_pow(&a, 1 << (r + 2)))?;
            p.push_relator(word_concat(&word_commutator(&a, &x), &word_inverse(&v)))?;
            p.push_relator(word_concat(&word_commutator(&v, &a), &word_inverse(&b)))?;
            p.push_relator(word_pow(&v, 1 << (r + 1)))?;
            p.push_relator(word_pow(&b, 1 << r))?;
            p.push_relator(word_commutator(&v, &b))?;
            p.push_relator(word_concat(&word_pow(&v, 1 << r), &word_inverse(&z)))?;
            p.push_relator(word_concat(&word_pow(&b, 1 << (r - 1)), &word_inverse(&u)))?;
            p.push_relator(word_concat(&word_pow(&x, 2), &word_pow(&z, -i64::from(k))))?;
            p.push_relator(word_concat(&word_conjugate(&b, &x), &b))?;
            p.push_relator(word_concat(&word_conjugate(&v, &x), &v))?;
            p.push_relator(word_concat(&word_conjugate(&b, &a), &b))?;
            let rhs = word_concat(&word_concat(&word_pow(&v, -2), &word_inverse(&b)), &w);
            p.push_relator(word_concat(&word_pow(&a, 4), &word_inverse(&rhs)))?;
            p.push_relator(word_concat(&w, &word_pow(&z, -i64::from(l))))?;
            Ok(p)
        }
    }
}

/// Evaluates a word in a multiplication table under `images[i]` for
/// generator `i`.
pub fn evaluate_word(table: &GroupTable, images: &[usize], word: &[(usize, i64)]) -> usize {
    word.iter().fold(table.identity(), |acc, &(g, e)| table.mul(acc, table.power(images[g], e)))
}

/// Certificate that the two-generator Berkovich–Janko presentation with
/// parameters `(r, k, l)` presents `G2(e; k, l)` for `e = r + 2`.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem42Certificate {
    pub r: u32,
    pub k: u8,
    pub l: u8,
    pub e: u32,
    /// Normal-form image of each presentation symbol under the verified
    /// homomorphism.
    pub images: Vec<(String, String)>,
    pub relators_checked: usize,
    /// Order of the subgroup generated by the images of `a` and `x` (must be
    /// the full group order, making the homomorphism onto).
    pub generated_order: u64,
    /// Coset count of the two-generator presentation over the trivial
    /// subgroup (must equal the group order, making it injective).
    pub enumerated_order: u64,
}

/// Certifies the isomorphism from the two-generator presentation
/// `BJ(r, k, l)` onto `G2(r + 2; k, l)` by (1) evaluating all fourteen
/// relators of the seven-symbol form on the claimed images `a ↦ a₁`,
/// `x ↦ a₁⁻¹b₁`, `v ↦ a₁⁻²b₁²z₁^k`, `b ↦ b₁⁻⁴z₁^l`, `z ↦ z₁`,
/// `u ↦ b₁^(2^(e-1))`, `w ↦ z₁^l`; (2) checking the images of `a` and `x`
/// generate; (3) enumerating the two-generator presentation to order
/// `2^(2e)`; and (4) checking the consequence relations `v^a = vb` and
/// `x^a = xv⁻¹`.
pub fn verify_theorem_4_2(
    r: u32,
    k: u8,
    l: u8,
    cap: usize,
) -> Result<Theorem42Certificate, PresentationError> {
    check_bj_params(r, k, l)?;
    let e = r + 2;
    let p = GroupParams::non_metacyclic(e, k, l)?;
    let n = p.n();
    let m = p.m() as i64;

    let a1 = NFElement::new(1, 0);
    let b1 = NFElement::new(0, 1);
    let z1 = nf_multiply(&p, nf_power(&p, a1, m), nf_power(&p, b1, m));
    let image_a = a1;
    let image_x = nf_multiply(&p, nf_inverse(&p, a1), b1);
    let image_v = nf_multiply(
        &p,
        nf_multiply(&p, nf_power(&p, a1, -2), nf_power(&p, b1, 2)),
        nf_power(&p, z1, i64::from(k)),
    );
    let image_b = nf_multiply(&p, nf_power(&p, b1, -4), nf_power(&p, z1, i64::from(l)));
    let image_z = z1;
    let image_u = nf_power(&p, b1, m);
    let image_w = nf_power(&p, z1, i64::from(l));
    let images =
        [image_a, image_x, image_v, image_b, image_z, image_u, image_w];

    let full = make_presentation(&PresentationSpec::BjFull { r, k, l })?;
    let evaluate = |word: &Word| -> NFElement {
        word.iter().fold(NFElement::IDENTITY, |acc, &(g, exp)| {
            nf_multiply(&p, acc, nf_power(&p, images[g], exp))
        })
    };
    for relator in &full.relators {
        if evaluate(relator) != NFElement::IDENTITY {
            return Err(PresentationError::CertificateFailure {
                detail: format!(
                    "relator {} does not map to the identity in {p}",
                    full.format_word(relator)
                ),
            });
        }
    }

    // consequence relations quoted alongside the presentation
    let conj = |x: NFElement, y: NFElement| {
        nf_multiply(&p, nf_multiply(&p, nf_inverse(&p, y), x), y)
    };
    if conj(image_v, image_a) != nf_multiply(&p, image_v, image_b) {
        return Err(PresentationError::CertificateFailure {
            detail: "consequence v^a = vb fails".into(),
        });
    }
    if conj(image_x, image_a) != nf_multiply(&p, image_x, nf_inverse(&p, image_v)) {
        return Err(PresentationError::CertificateFailure {
            detail: "consequence x^a = x v^-1 fails".into(),
        });
    }

    let generated_order = cayley::closure_order(
        |x: &NFElement, y: &NFElement| nf_multiply(&p, *x, *y),
        &[image_a, image_x],
        (n * n) as usize + 1,
    )
    .map_err(|_| PresentationError::CertificateFailure {
        detail: "closure of the generator images overflowed the group order".into(),
    })? as u64;
    if generated_order != p.group_order() {
        return Err(PresentationError::CertificateFailure {
            detail: format!(
                "images of a and x generate a subgroup of order {generated_order}, not {}",
                p.group_order()
            ),
        });
    }

    let two_gen = make_presentation(&PresentationSpec::Bj { r, k, l })?;
    let table = todd_coxeter(&two_gen, &[], cap, Strategy::RelatorFirst);
    if !table.is_complete() {
        return Err(PresentationError::EnumerationIncomplete { cap });
    }
    let enumerated_order = table.cosets as u64;
    if enumerated_order != p.group_order() {
        return Err(PresentationError::CertificateFailure {
            detail: format!(
                "coset enumeration gives order {enumerated_order}, expected {}",
                p.group_order()
            ),
        });
    }

    Ok(Theorem42Certificate {
        r,
        k,
        l,
        e,
        images: full
            .generators
            .iter()
            .zip(images)
            .map(|(name, nf)| (name.clone(), p.format_element(nf)))
            .collect(),
        relators_checked: full.relators.len(),
        generated_order,
        enumerated_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::to_cayley;

    fn order_of(spec: &PresentationSpec) -> usize {
        let p = make_presentation(spec).unwrap();
        let table = todd_coxeter(&p, &[], DEFAULT_COSET_CAP, Strategy::RelatorFirst);
        assert!(table.is_complete(), "{spec}");
        table.cosets
    }

    #[test]
    fn relator_counts_match_the_sources() {
        let g1 = make_presentation(&PresentationSpec::G1 { e: 2, f: 2 }).unwrap();
        assert_eq!(g1.generators, vec!["h", "g"]);
        assert_eq!(g1.relators.len(), 3);
        let g2 = make_presentation(&PresentationSpec::G2 { e: 3, k: 0, l: 0 }).unwrap();
        assert_eq!(g2.generators, vec!["a", "b"]);
        assert_eq!(g2.relators.len(), 6);
        assert_eq!(make_presentation(&PresentationSpec::G2Simple).unwrap().relators.len(), 5);
        let bj = make_presentation(&PresentationSpec::Bj { r: 2, k: 1, l: 0 }).unwrap();
        assert_eq!(bj.generators, vec!["a", "x"]);
        assert_eq!(bj.relators.len(), 9);
        let full = make_presentation(&PresentationSpec::BjFull { r: 2, k: 1, l: 0 }).unwrap();
        assert_eq!(full.generators.len(), 7);
        assert_eq!(full.relators.len(), 14);
    }

    #[test]
    fn spec_strings_round_trip() {
        for text in ["G1(3,2)", "G2(4;1,0)", "G2-simple(2)", "BJ(2,0,1)", "BJ-full(3,1,1)"] {
            let spec: PresentationSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("G2-simple(3)".parse::<PresentationSpec>().is_err());
        assert!("BJ(1,0,0)".parse::<PresentationSpec>().and_then(|s| make_presentation(&s)).is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let specs = [
            PresentationSpec::G1 { e: 3, f: 2 },
            PresentationSpec::G2 { e: 3, k: 1, l: 1 },
            PresentationSpec::G2Simple,
            PresentationSpec::Bj { r: 2, k: 0, l: 1 },
            PresentationSpec::BjFull { r: 2, k: 1, l: 1 },
        ];
        for spec in specs {
            let p = make_presentation(&spec).unwrap();
            let reparsed = parse_presentation(&p.to_string()).unwrap();
            assert_eq!(reparsed, p, "{spec}");
        }
        let empty = parse_presentation("< a, b | >").unwrap();
        assert_eq!(parse_presentation(&empty.to_string()).unwrap(), empty);
    }

    #[test]
    fn enumerated_orders_match_the_families() {
        assert_eq!(order_of(&PresentationSpec::G2Simple), 16);
        assert_eq!(order_of(&PresentationSpec::G1 { e: 3, f: 2 }), 64);
        for e in 2..=3 {
            for params in GroupParams::all_for(e) {
                let spec = match params {
                    GroupParams::Metacyclic { e, f } => PresentationSpec::G1 { e, f },
                    GroupParams::NonMetacyclic { e, k, l } => PresentationSpec::G2 { e, k, l },
                };
                assert_eq!(order_of(&spec) as u64, params.group_order(), "{params}");
            }
        }
    }

    #[test]
    fn berkovich_janko_orders() {
        for k in 0..=1u8 {
            for l in 0..=1u8 {
                assert_eq!(order_of(&PresentationSpec::Bj { r: 2, k, l }), 256);
                assert_eq!(order_of(&PresentationSpec::BjFull { r: 2, k, l }), 256);
            }
        }
    }

    #[test]
    fn canonical_generators_satisfy_family_relators() {
        for e in 2..=3 {
            for params in GroupParams::all_for(e) {
                let fam = to_cayley(&params).unwrap();
                let (spec, images) = match params {
                    // normal forms are g^i h^j, so h is the second canonical
                    // generator and g the first
                    GroupParams::Metacyclic { e, f } => {
                        (PresentationSpec::G1 { e, f }, vec![fam.b, fam.a])
                    }
                    GroupParams::NonMetacyclic { e, k, l } => {
                        (PresentationSpec::G2 { e, k, l }, vec![fam.a, fam.b])
                    }
                };
                let p = make_presentation(&spec).unwrap();
                for relator in &p.relators {
                    assert_eq!(
                        evaluate_word(&fam.table, &images, relator),
                        fam.table.identity(),
                        "{params}: relator {} does not hold",
                        p.format_word(relator)
                    );
                }
            }
        }
        let simple = make_presentation(&PresentationSpec::G2Simple).unwrap();
        let fam = to_cayley(&"G2(2;0,0)".parse().unwrap()).unwrap();
        for relator in &simple.relators {
            assert_eq!(evaluate_word(&fam.table, &[fam.a, fam.b], relator), fam.table.identity());
        }
    }

    #[test]
    fn subgroup_enumeration_gives_the_index() {
        let p = make_presentation(&PresentationSpec::G2Simple).unwrap();
        let a = vec![(p.generator_index("a").unwrap(), 1i64)];
        let table = todd_coxeter(&p, &[a], DEFAULT_COSET_CAP, Strategy::RelatorFirst);
        assert!(table.is_complete());
        assert_eq!(table.cosets, 4);
    }

    #[test]
    fn theorem_4_2_certificates() {
        for k in 0..=1u8 {
            for l in 0..=1u8 {
                let cert = verify_theorem_4_2(2, k, l, DEFAULT_COSET_CAP).unwrap();
                assert_eq!(cert.e, 4);
                assert_eq!(cert.relators_checked, 14);
                assert_eq!(cert.generated_order, 256);
                assert_eq!(cert.enumerated_order, 256);
                // x ↦ a₁⁻¹b₁ = a^15 b^1 in normal form
                assert_eq!(cert.images[1], ("x".to_string(), "a^15 b^1".to_string()));
            }
        }
        assert!(verify_theorem_4_2(1, 0, 0, DEFAULT_COSET_CAP).is_err());
    }

    #[test]
    fn strategies_agree_on_family_presentations() {
        for spec in [
            PresentationSpec::G2 { e: 2, k: 0, l: 0 },
            PresentationSpec::G1 { e: 3, f: 2 },
            PresentationSpec::G2 { e: 3, k: 1, l: 0 },
        ] {
            let p = make_presentation(&spec).unwrap();
            let first = todd_coxeter(&p, &[], DEFAULT_COSET_CAP, Strategy::RelatorFirst);
            let second = todd_coxeter(&p, &[], DEFAULT_COSET_CAP, Strategy::CosetFirst);
            assert!(first.is_complete() && second.is_complete());
            assert_eq!(first.cosets, second.cosets, "{spec}");
        }
    }
}
