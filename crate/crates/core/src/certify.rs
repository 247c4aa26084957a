//! Lower-bound arguments replayed as data.
//!
//! Two pipelines produce [`Certificate`]s:
//!
//! * [`certify_refutation_thm2`]: for a set smaller than the (δ,γ) degree bound,
//!   finds a homogeneous vanishing polynomial `g`, pushes its zeros along every
//!   qualifying direction, and shows that the set cannot have the claimed
//!   (δ,γ) profile.
//! * [`certify_cascade`]: for a Kakeya set, either records that it meets the
//!   `C(q+n-2, n)` bound, or (for a smaller set) peels the homogeneous parts
//!   of a degree `<= q-1` vanishing polynomial from the top down.
//!
//! Every step stores the values it checked. [`verify_certificate`] re-derives
//! each of them from the serialized certificate alone.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bounds::{
    alon_tao_bound, binomial, count_zeros, homogeneous_monomial_count, schwartz_zippel_bound, thm2_bound,
    DEFAULT_ZERO_COUNT_LIMIT,
};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::kakeya::{check_delta_gamma, cone_closure, is_kakeya, PointSet};
use crate::linalg::vanishing_polynomial;
use crate::poly::{monomials_of_degree, DegreeMode, Polynomial, MONOMIAL_ORDER};
use crate::rational::{parse_rational, Rational};
use crate::space::{Direction, LineRecord, Space};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// The set is too small for the claimed property; the steps derive the contradiction.
    Refutation,
    /// The set meets the bound; nothing to refute.
    Consistency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pipeline {
    Thm2,
    Cascade,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub pipeline: Pipeline,
    /// Field spec string, e.g. `"2^2 mod=1,1,1"`.
    pub field: String,
    pub n: usize,
    pub monomial_order: String,
    /// SHA-256 of the set file text of `set`.
    pub set_digest: String,
    pub set: Vec<Vec<u32>>,
    pub delta: Option<String>,
    pub gamma: Option<String>,
    pub d: i64,
    pub bound: u64,
    /// Text form of the vanishing polynomial, when one was used.
    pub polynomial: Option<String>,
    pub steps: Vec<Step>,
}

/// One checked fact in a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    /// `|K| >= bound`.
    BoundSatisfied { set_size: u64, bound: u64 },
    /// A contained line for every canonical direction.
    KakeyaWitnesses { lines: Vec<LineRecord> },
    /// `|K|` is below the number of degree-`d` monomials, so a nonzero
    /// homogeneous `g` vanishing on `K` exists.
    MonomialCount { set_size: u64, monomials: u64 },
    /// `g` is nonzero, homogeneous of degree `d`, and zero on every point of `K`.
    VanishesOnSet { degree: u32, points_checked: u64 },
    /// `g(c x) = c^d g(x) = 0` for every `x ∈ K`, `c ∈ F`.
    VanishesOnCone { cone_size: u64 },
    /// For a qualifying direction `y` with rich line `{z + a y}`: the points
    /// `w_i = a_i^{-1} z + y` lie in the cone, so `g` has `d + 1` zeros on the
    /// line through `y` in direction `z`, hence vanishes there and `g(y) = 0`.
    LineClaim(Box<LineClaim>),
    /// `g` vanishes on every qualifying vector, so their number is at most the
    /// zero count, which Schwartz–Zippel caps at `d q^{n-1} < δ q^n`.
    ZeroCount {
        qualifying_directions: u64,
        qualifying_vectors: u64,
        zero_count: u64,
        schwartz_zippel_bound: u64,
        required: String,
        failing_direction: Option<Vec<u32>>,
        profile_fails: bool,
    },
    /// A nonzero `P` of degree `<= q - 1` vanishing on `K`.
    VanishingPolynomial { degree_bound: u32, set_size: u64, monomials: u64 },
    /// Level `j` of the cascade: on each witness line the restriction of `P`
    /// vanishes identically, its `a^j` coefficient equals `P_j(y)`, and so
    /// `P_j` vanishes on all of `F^n`.
    CascadeLevel {
        level: u32,
        lines: Vec<CascadeLine>,
        part_vanishes_everywhere: bool,
        part_is_zero: bool,
    },
    /// After the cascade only the constant term remains.
    ConstantTerm { value: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineClaim {
    pub direction: Vec<u32>,
    pub base: Vec<u32>,
    pub count: u32,
    /// The `d + 2` smallest parameters `a` with `z + a y ∈ K`.
    pub parameters: Vec<u32>,
    pub dropped_zero: bool,
    /// The `d + 1` nonzero parameters kept.
    pub used: Vec<u32>,
    pub inverses: Vec<u32>,
    pub points: Vec<Vec<u32>>,
    pub base_is_zero: bool,
    /// Coefficients of `b -> g(y + b z)`; empty means identically zero.
    pub restriction: Vec<u32>,
    pub value_at_direction: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeLine {
    pub direction: Vec<u32>,
    pub base: Vec<u32>,
    pub restriction_is_zero: bool,
    pub coefficient: u32,
    pub part_value: u32,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        crate::to_sorted_json(self)
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    }
}

pub fn set_digest(k: &PointSet) -> String {
    hex::encode(Sha256::digest(k.to_set_file().as_bytes()))
}

fn values(v: &[FieldElement]) -> Vec<u32> {
    v.iter().map(|c| c.value()).collect()
}

fn elements(f: &FieldSpec, v: &[u32]) -> Result<Vec<FieldElement>> {
    v.iter().map(|&x| f.element(x)).collect()
}

fn skeleton(k: &PointSet, pipeline: Pipeline, kind: CertificateKind) -> Certificate {
    Certificate {
        kind,
        pipeline,
        field: k.spec().to_string(),
        n: k.dim(),
        monomial_order: MONOMIAL_ORDER.to_string(),
        set_digest: set_digest(k),
        set: k.point_values(),
        delta: None,
        gamma: None,
        d: 0,
        bound: 0,
        polynomial: None,
        steps: Vec::new(),
    }
}

/// Replays the degree argument against the claim that `k` is (δ,γ)-Kakeya.
///
/// Returns a consistency certificate when `|K|` already meets the bound.
pub fn certify_refutation_thm2(k: &PointSet, delta: Rational, gamma: Rational) -> Result<Certificate> {
    let f = k.spec();
    let sp = k.space();
    let q = f.order() as u64;
    let n = k.dim();
    let report = thm2_bound(q, n, delta, gamma)?;
    let d = report.d;
    let set_size = k.len() as u64;

    let kind = if set_size < report.bound {
        CertificateKind::Refutation
    } else {
        CertificateKind::Consistency
    };
    let mut cert = skeleton(k, Pipeline::Thm2, kind);
    cert.delta = Some(delta.to_string());
    cert.gamma = Some(gamma.to_string());
    cert.d = d;
    cert.bound = report.bound;
    if kind == CertificateKind::Consistency {
        cert.steps.push(Step::BoundSatisfied {
            set_size,
            bound: report.bound,
        });
        return Ok(cert);
    }
    // bound > 0 here, so d >= 0
    let d = d as u32;
    cert.steps.push(Step::MonomialCount {
        set_size,
        monomials: report.bound,
    });

    let g = vanishing_polynomial(k, d, DegreeMode::Exactly)
        .ok_or_else(|| Error::Inconsistent("no homogeneous vanishing polynomial below the monomial count".into()))?;
    if g.homogeneous_degree() != Some(d) || g.is_zero() {
        return Err(Error::Inconsistent("vanishing polynomial is not homogeneous of degree d".into()));
    }
    if !k.points().all(|x| g.evaluate_unchecked(&x).is_zero()) {
        return Err(Error::Inconsistent("g does not vanish on K".into()));
    }
    cert.polynomial = Some(g.to_string());
    cert.steps.push(Step::VanishesOnSet {
        degree: d,
        points_checked: set_size,
    });

    let cone = cone_closure(k);
    if !cone.points().all(|x| g.evaluate_unchecked(&x).is_zero()) {
        return Err(Error::Inconsistent("g does not vanish on the cone closure".into()));
    }
    cert.steps.push(Step::VanishesOnCone {
        cone_size: cone.len() as u64,
    });

    let dg = check_delta_gamma(k, delta, gamma)?;
    for entry in dg.profile.entries.iter().filter(|e| e.count >= dg.threshold) {
        let claim = line_claim(&g, d, k, &cone, sp, &entry.direction, &entry.base, entry.count)?;
        cert.steps.push(Step::LineClaim(Box::new(claim)));
    }

    let zero_count = count_zeros(&g, DEFAULT_ZERO_COUNT_LIMIT)?;
    let sz = schwartz_zippel_bound(d as u64, q, n);
    let required = delta * Rational::from_integer(sp.size());
    let profile_fails = Rational::from_integer(dg.qualifying_vectors) < required;
    if dg.qualifying_vectors > zero_count || zero_count > sz || !profile_fails {
        return Err(Error::Inconsistent(format!(
            "zero count {zero_count}, bound {sz}, qualifying vectors {}",
            dg.qualifying_vectors
        )));
    }
    cert.steps.push(Step::ZeroCount {
        qualifying_directions: dg.qualifying_directions,
        qualifying_vectors: dg.qualifying_vectors,
        zero_count,
        schwartz_zippel_bound: sz,
        required: required.to_string(),
        failing_direction: dg.failing_direction,
        profile_fails,
    });
    Ok(cert)
}

#[allow(clippy::too_many_arguments)]
fn line_claim(
    g: &Polynomial,
    d: u32,
    k: &PointSet,
    cone: &PointSet,
    sp: &Space,
    direction: &[u32],
    base: &[u32],
    count: u32,
) -> Result<LineClaim> {
    let f = sp.spec();
    let y = elements(f, direction)?;
    let z = elements(f, base)?;
    let on_line: Vec<FieldElement> = f
        .elements()
        .filter(|&a| k.contains_point(&sp.line_point(&z, a, &y)))
        .collect();
    let need = d as usize + 2;
    if on_line.len() < need {
        return Err(Error::Inconsistent(format!(
            "direction {direction:?} has only {} points on its best line, need {need}",
            on_line.len()
        )));
    }
    let parameters: Vec<FieldElement> = on_line[..need].to_vec();
    let dropped_zero = parameters.contains(&FieldElement::ZERO);
    let used: Vec<FieldElement> = parameters
        .iter()
        .copied()
        .filter(|a| !a.is_zero())
        .take(need - 1)
        .collect();
    let inverses = used.iter().map(|&a| f.inv(a)).collect::<Result<Vec<_>>>()?;
    let points: Vec<Vec<FieldElement>> = inverses.iter().map(|&b| sp.line_point(&y, b, &z)).collect();
    for w in &points {
        if !cone.contains_point(w) || !g.evaluate_unchecked(w).is_zero() {
            return Err(Error::Inconsistent(format!("w = {:?} is not a zero of g in the cone", values(w))));
        }
    }
    let base_is_zero = z.iter().all(|c| c.is_zero());
    let restriction = if base_is_zero {
        Vec::new()
    } else {
        g.restrict_to_line(&y, &z)?.coefficients().iter().map(|c| c.value()).collect()
    };
    let value = g.evaluate_unchecked(&y);
    if !restriction.is_empty() || !value.is_zero() {
        return Err(Error::Inconsistent(format!("g does not vanish at direction {direction:?}")));
    }
    Ok(LineClaim {
        direction: direction.to_vec(),
        base: base.to_vec(),
        count,
        parameters: values(&parameters),
        dropped_zero,
        used: values(&used),
        inverses: values(&inverses),
        points: points.iter().map(|w| values(w)).collect(),
        base_is_zero,
        restriction,
        value_at_direction: value.value(),
    })
}

/// Certifies a Kakeya set against the `C(q+n-2, n)` bound.
///
/// Fails with [`Error::NoWitnessLine`] when `k` is not Kakeya.
pub fn certify_cascade(k: &PointSet) -> Result<Certificate> {
    let report = is_kakeya(k);
    if let Some(direction) = report.failing_direction {
        return Err(Error::NoWitnessLine { direction });
    }
    cascade(k)
}

/// Runs the cascade without first checking the Kakeya property. The pipeline
/// stops at the first canonical direction that has no contained line.
pub fn certify_cascade_unchecked(k: &PointSet) -> Result<Certificate> {
    cascade(k)
}

fn cascade(k: &PointSet) -> Result<Certificate> {
    let f = k.spec();
    let sp = k.space();
    let q = f.order() as u64;
    let n = k.dim();
    let bound = alon_tao_bound(q, n)?.bound;
    let set_size = k.len() as u64;
    let witnesses = is_kakeya(k).witnesses;
    let dirs = sp.canonical_directions();
    let witness_for = |d: &Direction| -> Result<Vec<FieldElement>> {
        let vals = d.values();
        witnesses
            .iter()
            .find(|w| w.direction == vals)
            .map(|w| elements(f, &w.base))
            .unwrap_or(Err(Error::NoWitnessLine { direction: vals }))
    };

    if set_size >= bound {
        let mut cert = skeleton(k, Pipeline::Cascade, CertificateKind::Consistency);
        cert.d = q as i64 - 1;
        cert.bound = bound;
        let lines = dirs
            .iter()
            .map(|d| {
                witness_for(d).map(|b| LineRecord {
                    direction: d.values(),
                    base: values(&b),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        cert.steps.push(Step::KakeyaWitnesses { lines });
        cert.steps.push(Step::BoundSatisfied { set_size, bound });
        return Ok(cert);
    }

    let top = q as u32 - 1;
    let mut cert = skeleton(k, Pipeline::Cascade, CertificateKind::Refutation);
    cert.d = top as i64;
    cert.bound = bound;
    let monomials = binomial(top as u64 + n as u64, n as u64);
    let p = vanishing_polynomial(k, top, DegreeMode::AtMost)
        .ok_or_else(|| Error::Inconsistent("no vanishing polynomial of degree <= q-1".into()))?;
    cert.polynomial = Some(p.to_string());
    cert.steps.push(Step::VanishingPolynomial {
        degree_bound: top,
        set_size,
        monomials,
    });

    let mut current = p.clone();
    for j in (1..=top).rev() {
        let part = current.homogeneous_part(j);
        let mut lines = Vec::with_capacity(dirs.len());
        for d in &dirs {
            let b = witness_for(d)?;
            let r = current.restrict_to_line(&b, d.coords())?;
            let coefficient = r.coefficient(j as usize);
            let part_value = part.evaluate_unchecked(d.coords());
            if !r.is_zero() || coefficient != part_value {
                return Err(Error::Inconsistent(format!(
                    "level {j}: restriction to the line in direction {:?} does not vanish",
                    d.values()
                )));
            }
            lines.push(CascadeLine {
                direction: d.values(),
                base: values(&b),
                restriction_is_zero: true,
                coefficient: coefficient.value(),
                part_value: part_value.value(),
            });
        }
        let vanishes = sp.points().all(|x| part.evaluate_unchecked(&x).is_zero());
        if !vanishes {
            return Err(Error::Inconsistent(format!("level {j}: P_{j} does not vanish everywhere")));
        }
        cert.steps.push(Step::CascadeLevel {
            level: j,
            lines,
            part_vanishes_everywhere: true,
            part_is_zero: part.is_zero(),
        });
        current = current.sub(&part)?;
    }
    let p0 = current.coefficient(&crate::poly::Monomial::one(n));
    cert.steps.push(Step::ConstantTerm { value: p0.value() });
    // P = P_0 vanishes on the nonempty K, so P_0 = 0, contradicting P != 0.
    Err(Error::Inconsistent(format!(
        "cascade reached the constant term {p0} of a nonzero polynomial vanishing on K"
    )))
}

/// Outcome of one re-checked step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCheck {
    pub step: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub checks: Vec<StepCheck>,
}

struct Checker {
    checks: Vec<StepCheck>,
}

impl Checker {
    fn check(&mut self, step: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push(StepCheck {
            step: step.to_string(),
            ok,
            detail: detail.into(),
        });
    }
}

/// Re-verifies every step of `cert` from its serialized contents.
///
/// Returns `Err` only when the certificate cannot be interpreted at all
/// (unknown field, malformed polynomial); failed checks are reported in the
/// returned [`VerificationReport`].
pub fn verify_certificate(cert: &Certificate) -> Result<VerificationReport> {
    let f = FieldSpec::parse(&cert.field)?;
    let k = PointSet::from_values(&f, cert.n, &cert.set)?;
    let sp = k.space().clone();
    let q = f.order() as u64;
    let n = cert.n;
    let mut c = Checker { checks: Vec::new() };

    c.check("header", cert.monomial_order == MONOMIAL_ORDER, format!("monomial order {}", cert.monomial_order));
    c.check(
        "header",
        set_digest(&k) == cert.set_digest && k.len() == cert.set.len(),
        "set digest matches the embedded points",
    );

    let poly = cert
        .polynomial
        .as_deref()
        .map(|s| Polynomial::parse(&f, n, s))
        .transpose()?;
    let set_size = k.len() as u64;

    let (delta, gamma) = match (&cert.delta, &cert.gamma) {
        (Some(d), Some(g)) => (Some(parse_rational(d)?), Some(parse_rational(g)?)),
        _ => (None, None),
    };
    match cert.pipeline {
        Pipeline::Thm2 => {
            let (Some(delta), Some(gamma)) = (delta, gamma) else {
                return Err(Error::parse(0, "thm2 certificate without delta/gamma"));
            };
            let r = thm2_bound(q, n, delta, gamma)?;
            c.check("header", r.d == cert.d && r.bound == cert.bound, format!("d = {}, bound = {}", r.d, r.bound));
            let expect_kind = if set_size < r.bound {
                CertificateKind::Refutation
            } else {
                CertificateKind::Consistency
            };
            c.check("header", cert.kind == expect_kind, format!("{set_size} points vs bound {}", r.bound));
        }
        Pipeline::Cascade => {
            let bound = alon_tao_bound(q, n)?.bound;
            c.check(
                "header",
                bound == cert.bound && cert.d == q as i64 - 1,
                format!("bound C(q+n-2, n) = {bound}"),
            );
            let expect_kind = if set_size < bound {
                CertificateKind::Refutation
            } else {
                CertificateKind::Consistency
            };
            c.check("header", cert.kind == expect_kind, format!("{set_size} points vs bound {bound}"));
        }
    }

    let need_poly = |c: &mut Checker, step: &str| -> Option<Polynomial> {
        if poly.is_none() {
            c.check(step, false, "certificate carries no polynomial");
        }
        poly.clone()
    };

    let mut cascade_current = poly.clone();
    for step in &cert.steps {
        match step {
            Step::BoundSatisfied { set_size: s, bound } => {
                c.check(
                    "bound_satisfied",
                    *s == set_size && *bound == cert.bound && set_size >= cert.bound,
                    format!("{set_size} >= {}", cert.bound),
                );
            }
            Step::KakeyaWitnesses { lines } => {
                let dirs = sp.canonical_directions();
                let mut ok = lines.len() == dirs.len();
                for (d, l) in dirs.iter().zip(lines) {
                    ok &= l.direction == d.values();
                    ok &= elements(&f, &l.base)
                        .map(|b| sp.line(&b, d.coords()).iter().all(|&p| k.contains(p)))
                        .unwrap_or(false);
                }
                c.check("kakeya_witnesses", ok, format!("{} directions covered", lines.len()));
            }
            Step::MonomialCount { set_size: s, monomials } => {
                let expect = homogeneous_monomial_count(cert.d, n);
                c.check(
                    "monomial_count",
                    *s == set_size && *monomials == expect && set_size < expect,
                    format!("{set_size} < C(d+n-1, n-1) = {expect}"),
                );
            }
            Step::VanishesOnSet { degree, points_checked } => {
                let Some(g) = need_poly(&mut c, "vanishes_on_set") else { continue };
                let ok = !g.is_zero()
                    && g.homogeneous_degree() == Some(*degree)
                    && *degree as i64 == cert.d
                    && *points_checked == set_size
                    && k.points().all(|x| g.evaluate_unchecked(&x).is_zero());
                c.check("vanishes_on_set", ok, format!("g = {g}"));
            }
            Step::VanishesOnCone { cone_size } => {
                let Some(g) = need_poly(&mut c, "vanishes_on_cone") else { continue };
                let cone = cone_closure(&k);
                let ok = cone.len() as u64 == *cone_size && cone.points().all(|x| g.evaluate_unchecked(&x).is_zero());
                c.check("vanishes_on_cone", ok, format!("{cone_size} cone points"));
            }
            Step::LineClaim(claim) => {
                let Some(g) = need_poly(&mut c, "line_claim") else { continue };
                let ok = check_line_claim(&g, cert.d, &k, &sp, claim).unwrap_or(false);
                c.check("line_claim", ok, format!("direction {:?}", claim.direction));
            }
            Step::ZeroCount {
                qualifying_directions,
                qualifying_vectors,
                zero_count,
                schwartz_zippel_bound: szb,
                required,
                failing_direction,
                profile_fails,
            } => {
                let Some(g) = need_poly(&mut c, "zero_count") else { continue };
                let (Some(delta), Some(gamma)) = (delta, gamma) else { continue };
                let dg = check_delta_gamma(&k, delta, gamma)?;
                let zeros = count_zeros(&g, DEFAULT_ZERO_COUNT_LIMIT)?;
                let sz = schwartz_zippel_bound(cert.d.max(0) as u64, q, n);
                let req = delta * Rational::from_integer(sp.size());
                // every qualifying vector is a zero of g
                let claimed_dirs: Vec<&Vec<u32>> = cert
                    .steps
                    .iter()
                    .filter_map(|s| match s {
                        Step::LineClaim(l) => Some(&l.direction),
                        _ => None,
                    })
                    .collect();
                let covered = dg
                    .profile
                    .entries
                    .iter()
                    .filter(|e| e.count >= dg.threshold)
                    .all(|e| claimed_dirs.contains(&&e.direction));
                let ok = covered
                    && dg.qualifying_directions == *qualifying_directions
                    && dg.qualifying_vectors == *qualifying_vectors
                    && zeros == *zero_count
                    && sz == *szb
                    && req.to_string() == *required
                    && dg.failing_direction == *failing_direction
                    && zeros <= sz
                    && *qualifying_vectors <= zeros
                    && *profile_fails == (Rational::from_integer(*qualifying_vectors) < req)
                    && *profile_fails;
                c.check(
                    "zero_count",
                    ok,
                    format!("|L| = {qualifying_vectors} <= zeros {zeros} <= {sz}, required {required}"),
                );
            }
            Step::VanishingPolynomial {
                degree_bound,
                set_size: s,
                monomials,
            } => {
                let Some(p) = need_poly(&mut c, "vanishing_polynomial") else { continue };
                let expect = monomials_of_degree(n, *degree_bound, DegreeMode::AtMost).len() as u64;
                let ok = !p.is_zero()
                    && p.degree().finite().is_some_and(|d| d <= *degree_bound)
                    && *degree_bound as u64 == q - 1
                    && *s == set_size
                    && *monomials == expect
                    && set_size < expect
                    && k.points().all(|x| p.evaluate_unchecked(&x).is_zero());
                c.check("vanishing_polynomial", ok, format!("P = {p}"));
            }
            Step::CascadeLevel {
                level,
                lines,
                part_vanishes_everywhere,
                part_is_zero,
            } => {
                let Some(cur) = cascade_current.clone() else {
                    c.check("cascade_level", false, "certificate carries no polynomial");
                    continue;
                };
                let part = cur.homogeneous_part(*level);
                let dirs = sp.canonical_directions();
                let mut ok = lines.len() == dirs.len() && cur.degree().finite().is_none_or(|d| d <= *level);
                for (d, l) in dirs.iter().zip(lines) {
                    let Ok(b) = elements(&f, &l.base) else {
                        ok = false;
                        continue;
                    };
                    let contained = sp.line(&b, d.coords()).iter().all(|&p| k.contains(p));
                    let r = cur.restrict_to_line(&b, d.coords())?;
                    let coef = r.coefficient(*level as usize);
                    let pv = part.evaluate_unchecked(d.coords());
                    ok &= l.direction == d.values()
                        && contained
                        && r.is_zero() == l.restriction_is_zero
                        && l.restriction_is_zero
                        && coef.value() == l.coefficient
                        && pv.value() == l.part_value
                        && coef == pv;
                }
                let everywhere = sp.points().all(|x| part.evaluate_unchecked(&x).is_zero());
                ok &= everywhere == *part_vanishes_everywhere && *part_is_zero == part.is_zero();
                c.check("cascade_level", ok, format!("level {level}"));
                cascade_current = Some(cur.sub(&part)?);
            }
            Step::ConstantTerm { value } => {
                let ok = cascade_current.as_ref().is_some_and(|p| {
                    p.degree().finite().is_none_or(|d| d == 0)
                        && p.coefficient(&crate::poly::Monomial::one(n)).value() == *value
                });
                c.check("constant_term", ok, format!("P_0 = {value}"));
            }
        }
    }

    let expected_shape = match (cert.pipeline, cert.kind) {
        (_, CertificateKind::Consistency) => cert.steps.iter().any(|s| matches!(s, Step::BoundSatisfied { .. })),
        (Pipeline::Thm2, CertificateKind::Refutation) => {
            matches!(cert.steps.last(), Some(Step::ZeroCount { .. }))
        }
        (Pipeline::Cascade, CertificateKind::Refutation) => {
            matches!(cert.steps.last(), Some(Step::ConstantTerm { .. }))
        }
    };
    c.check("structure", expected_shape, "certificate has the steps its kind requires");
    if cert.pipeline == Pipeline::Cascade && cert.kind == CertificateKind::Consistency {
        let has_witnesses = cert.steps.iter().any(|s| matches!(s, Step::KakeyaWitnesses { .. }));
        c.check("structure", has_witnesses, "cascade consistency lists witness lines");
    }

    Ok(VerificationReport {
        ok: c.checks.iter().all(|s| s.ok),
        checks: c.checks,
    })
}

fn check_line_claim(g: &Polynomial, d: i64, k: &PointSet, sp: &Space, claim: &LineClaim) -> Result<bool> {
    let f = sp.spec();
    let y = elements(f, &claim.direction)?;
    let z = elements(f, &claim.base)?;
    let need = d as usize + 2;
    let Ok(dir) = Direction::canonicalize(f, &y) else {
        return Ok(false);
    };
    if dir.coords() != y.as_slice() {
        return Ok(false);
    }
    let params = elements(f, &claim.parameters)?;
    let used = elements(f, &claim.used)?;
    let inverses = elements(f, &claim.inverses)?;
    let mut ok = params.len() == need
        && params.windows(2).all(|w| w[0] < w[1])
        && params.iter().all(|&a| k.contains_point(&sp.line_point(&z, a, &y)))
        && claim.dropped_zero == params.contains(&FieldElement::ZERO)
        && used.len() == need - 1
        && used.iter().all(|a| !a.is_zero() && params.contains(a))
        && used.windows(2).all(|w| w[0] < w[1])
        && inverses.len() == used.len()
        && used.iter().zip(&inverses).all(|(&a, &b)| f.mul(a, b) == FieldElement::ONE)
        && claim.points.len() == used.len();
    if !ok {
        return Ok(false);
    }
    let cone = cone_closure(k);
    for (w, &b) in claim.points.iter().zip(&inverses) {
        let w = elements(f, w)?;
        ok &= w == sp.line_point(&y, b, &z) && cone.contains_point(&w) && g.evaluate_unchecked(&w).is_zero();
    }
    let base_is_zero = z.iter().all(|c| c.is_zero());
    ok &= base_is_zero == claim.base_is_zero;
    if !base_is_zero {
        let r = g.restrict_to_line(&y, &z)?;
        // d + 1 distinct roots b_i of a polynomial of degree <= d force it to vanish
        let distinct = {
            let mut b = inverses.clone();
            b.sort();
            b.dedup();
            b.len() == inverses.len()
        };
        ok &= distinct
            && r.degree().finite().is_none_or(|e| e as i64 <= d)
            && inverses.iter().all(|&b| r.evaluate(b).is_zero())
            && r.is_zero()
            && values(r.coefficients()) == claim.restriction;
    }
    let gy = g.evaluate_unchecked(&y);
    ok &= gy.is_zero() && gy.value() == claim.value_at_direction;
    Ok(ok)
}
