//! Serre's intersection multiplicity via reduction to the diagonal, and the
//! comparisons between `chi`, multiplicities and tangent cones.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::groebner::monomial_ideal::HilbertSeries;
use crate::groebner::{self, Ideal};
use crate::localalg::{self, MultiplicityCertificate};
use crate::polyalg::{FieldSpec, Polynomial, RingSignature};
use crate::settings::Settings;

/// Two rings side by side, with the embeddings of each factor.
#[derive(Debug, Clone)]
pub struct DoubledRing {
    pub left: Arc<RingSignature>,
    pub right: Arc<RingSignature>,
    pub doubled: Arc<RingSignature>,
    pub left_map: Vec<Option<usize>>,
    pub right_map: Vec<Option<usize>>,
}

fn suffixed(name: &str, clash: bool, k: u8) -> String {
    if clash {
        format!("{name}_{k}")
    } else {
        String::from(name)
    }
}

fn check_fields(a: &RingSignature, b: &RingSignature) -> Result<FieldSpec> {
    if a.field() != b.field() {
        return Err(Error::SignatureMismatch);
    }
    Ok(a.field())
}

impl DoubledRing {
    /// `k[x] ⊗_k k[y]`: all variables of both factors. Names occurring in
    /// both factors get suffixes `_1` and `_2`.
    pub fn over_field(left: &Arc<RingSignature>, right: &Arc<RingSignature>) -> Result<DoubledRing> {
        let field = check_fields(left, right)?;
        let mut names = Vec::new();
        for v in left.variables() {
            names.push(suffixed(v, right.index_of(v).is_some(), 1));
        }
        for v in right.variables() {
            names.push(suffixed(v, left.index_of(v).is_some(), 2));
        }
        let doubled = RingSignature::new(field, &names, None)?;
        let n = left.arity();
        Ok(DoubledRing {
            left: left.clone(),
            right: right.clone(),
            doubled,
            left_map: (0..n).map(Some).collect(),
            right_map: (0..right.arity()).map(|i| Some(n + i)).collect(),
        })
    }

    /// `k[t, x] ⊗_{k[t]} k[t, y] = k[t, x, y]`: the two uniformizers are
    /// identified; other clashing names get suffixes.
    pub fn over_uniformizer(left: &Arc<RingSignature>, right: &Arc<RingSignature>) -> Result<DoubledRing> {
        let field = check_fields(left, right)?;
        let lt = left.uniformizer().ok_or(Error::MissingUniformizer)?;
        let rt = right.uniformizer().ok_or(Error::MissingUniformizer)?;
        let lt_name = left.variable(lt);
        let others_l: Vec<usize> = (0..left.arity()).filter(|&i| i != lt).collect();
        let others_r: Vec<usize> = (0..right.arity()).filter(|&i| i != rt).collect();
        let clash_l = |name: &str| others_r.iter().any(|&j| right.variable(j) == name);
        let clash_r = |name: &str| others_l.iter().any(|&j| left.variable(j) == name) || name == lt_name;
        let mut names = vec![String::from(lt_name)];
        let mut left_map = vec![None; left.arity()];
        let mut right_map = vec![None; right.arity()];
        left_map[lt] = Some(0);
        right_map[rt] = Some(0);
        for &i in &others_l {
            left_map[i] = Some(names.len());
            names.push(suffixed(left.variable(i), clash_l(left.variable(i)), 1));
        }
        for &j in &others_r {
            right_map[j] = Some(names.len());
            names.push(suffixed(right.variable(j), clash_r(right.variable(j)), 2));
        }
        let doubled = RingSignature::new(field, &names, Some(lt_name))?;
        Ok(DoubledRing { left: left.clone(), right: right.clone(), doubled, left_map, right_map })
    }
}

/// The diagonal `(x_i ⊗ 1 - 1 ⊗ x_i)` of a ring doubled over the field.
#[derive(Debug, Clone)]
pub struct DiagonalIdeal {
    pub ring: DoubledRing,
    pub ideal: Ideal,
}

impl DiagonalIdeal {
    pub fn new(base: &Arc<RingSignature>) -> Result<DiagonalIdeal> {
        let ring = DoubledRing::over_field(base, base)?;
        let n = base.arity();
        let gens = (0..n)
            .map(|i| &Polynomial::var(&ring.doubled, i) - &Polynomial::var(&ring.doubled, n + i))
            .collect();
        let ideal = Ideal::new(&ring.doubled, gens)?;
        Ok(DiagonalIdeal { ring, ideal })
    }
}

/// `I ⊗ 1 + 1 ⊗ J` in the ring doubled over the field.
pub fn tensor_over_field(i: &Ideal, j: &Ideal) -> Result<(DoubledRing, Ideal)> {
    let ring = DoubledRing::over_field(i.signature(), j.signature())?;
    let t = tensor_in(&ring, i, j)?;
    Ok((ring, t))
}

/// `I + J` after identifying the uniformizers of both rings.
pub fn tensor_over_dvr(i: &Ideal, j: &Ideal) -> Result<(DoubledRing, Ideal)> {
    let ring = DoubledRing::over_uniformizer(i.signature(), j.signature())?;
    let t = tensor_in(&ring, i, j)?;
    Ok((ring, t))
}

fn tensor_in(ring: &DoubledRing, i: &Ideal, j: &Ideal) -> Result<Ideal> {
    let a = i.rename_embed(&ring.doubled, &ring.left_map)?;
    let b = j.rename_embed(&ring.doubled, &ring.right_map)?;
    groebner::ideal_sum(&a, &b)
}

fn uniformizer_poly(sig: &Arc<RingSignature>) -> Result<Polynomial> {
    Ok(Polynomial::var(sig, sig.uniformizer().ok_or(Error::MissingUniformizer)?))
}

/// Whether the uniformizer is a non-zerodivisor on `A/I`.
pub fn flatness_over_uniformizer(i: &Ideal, settings: &Settings) -> Result<bool> {
    let t = uniformizer_poly(i.signature())?;
    let colon = groebner::ideal_quotient_by_poly(i, &t, settings.budget)?;
    groebner::ideal_equal(&colon, i, settings.budget)
}

fn check_proper_intersection(i: &Ideal, j: &Ideal, settings: &Settings) -> Result<()> {
    if i.signature() != j.signature() {
        return Err(Error::SignatureMismatch);
    }
    let sum = groebner::ideal_sum(i, j)?;
    if groebner::colength(&sum, settings.budget)?.is_none() {
        return Err(Error::ImproperIntersection);
    }
    let sig = i.signature();
    for v in 0..sig.arity() {
        if !groebner::radical_membership(&Polynomial::var(sig, v), &sum, settings.budget)? {
            return Err(Error::SupportNotOrigin);
        }
    }
    Ok(())
}

/// `chi(A/I, A/J)` as the diagonal multiplicity `e_d(A/I ⊗ A/J)` in degree `dim A`.
///
/// In coordinates `y = x + u` the diagonal becomes `(u)`, so the
/// Hilbert–Samuel values come from one truncated local basis per level.
pub fn chi(i: &Ideal, j: &Ideal, settings: &Settings) -> Result<MultiplicityCertificate> {
    check_proper_intersection(i, j, settings)?;
    let sig = i.signature();
    let n = sig.arity();
    let mut names: Vec<String> = sig.variables().to_vec();
    for v in sig.variables() {
        let mut u = format!("d{v}");
        while names.contains(&u) {
            u.push('\'');
        }
        names.push(u);
    }
    let shifted = RingSignature::new(sig.field(), &names, None)?;
    let embed: Vec<Option<usize>> = (0..n).map(Some).collect();
    let images: Vec<Polynomial> = (0..n)
        .map(|k| &Polynomial::var(&shifted, k) + &Polynomial::var(&shifted, n + k))
        .collect();
    let mut gens = i.rename_embed(&shifted, &embed)?.generators().to_vec();
    for g in j.generators() {
        gens.push(g.compose(&shifted, &images)?);
    }
    let t = Ideal::new(&shifted, gens)?;
    let mask: u32 = (n..2 * n).fold(0, |m, k| m | 1 << k);
    localalg::stabilize(n, settings, |level| {
        let counts = groebner::truncated_standard_counts(&t, mask, level, settings.budget)?.ok_or(Error::ImproperIntersection)?;
        Ok(localalg::Sample::from_counts(counts))
    })
}

/// `dim(gr(A/I) ⊗ gr(A/J)) = dim k[x]/(in(I) + in(J))`.
pub fn tangent_tensor_dim(i: &Ideal, j: &Ideal, settings: &Settings) -> Result<usize> {
    if i.signature() != j.signature() {
        return Err(Error::SignatureMismatch);
    }
    let sum = groebner::ideal_sum(&localalg::initial_ideal_of(i, settings)?, &localalg::initial_ideal_of(j, settings)?)?;
    groebner::krull_dim(&sum, settings.budget)
}

/// `chi - e(A/I) e(A/J)` for complementary pairs.
pub fn excess(i: &Ideal, j: &Ideal, settings: &Settings) -> Result<i64> {
    let dim_a = i.signature().arity();
    let em = localalg::multiplicity(i, settings)?;
    let en = localalg::multiplicity(j, settings)?;
    if em.dim + en.dim != dim_a {
        return Err(Error::NotComplementary { dim_m: em.dim, dim_n: en.dim, dim_a });
    }
    let c = chi(i, j, settings)?;
    Ok(c.value as i64 - (em.value * en.value) as i64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamuelCheck {
    pub ideal_match: bool,
    pub convolution_match: bool,
    /// Hilbert function of the tangent cone of the tensor product.
    pub tensor_hf: Vec<u64>,
    /// Cauchy product of the two factor Hilbert functions.
    pub convolution: Vec<u64>,
}

/// Series of `gr(A/I)`, accepting the zero ideal.
fn graded_series(i: &Ideal, settings: &Settings) -> Result<HilbertSeries> {
    match localalg::multiplicity(i, settings)?.method {
        localalg::Method::ExactHilbertSeries { series } => Ok(series),
        localalg::Method::FiniteDifference { .. } => unreachable!("multiplicity is exact"),
    }
}

fn hf(series: &HilbertSeries, up_to: usize) -> Result<Vec<u64>> {
    use num_traits::ToPrimitive;
    series
        .hilbert_function(up_to)
        .iter()
        .map(|c| c.to_u64().ok_or_else(|| Error::BudgetExceeded(format!("value {c} out of range"))))
        .collect()
}

/// `gr(A/I) ⊗ gr(B/J) ≅ gr(A/I ⊗ B/J)`, checked on ideals and Hilbert functions.
pub fn samuel_check(i: &Ideal, j: &Ideal, settings: &Settings) -> Result<SamuelCheck> {
    let (ring, t) = tensor_over_field(i, j)?;
    let budget = settings.budget;
    let cone = localalg::initial_ideal_of(&t, settings)?;
    let expected = tensor_in(&ring, &localalg::initial_ideal_of(i, settings)?, &localalg::initial_ideal_of(j, settings)?)?;
    let ideal_match = groebner::ideal_equal(&cone, &expected, budget)?;

    let top = settings.convolution_degree;
    let tensor_hf = hf(&graded_series(&t, settings)?, top)?;
    let a = hf(&graded_series(i, settings)?, top)?;
    let b = hf(&graded_series(j, settings)?, top)?;
    let convolution: Vec<u64> = (0..=top).map(|n| (0..=n).map(|k| a[k] * b[n - k]).sum()).collect();
    Ok(SamuelCheck { ideal_match, convolution_match: tensor_hf == convolution, tensor_hf, convolution })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiDefect {
    pub containment: bool,
    pub dim_src: usize,
    pub dim_tgt: usize,
    pub e_src: u64,
    pub e_tgt: u64,
    pub homeomorphic_proxy: bool,
}

/// `in(I) + in(J)` transported into the ring with shared uniformizer.
fn source_ideal(ring: &DoubledRing, i: &Ideal, j: &Ideal, settings: &Settings) -> Result<Ideal> {
    tensor_in(ring, &localalg::initial_ideal_of(i, settings)?, &localalg::initial_ideal_of(j, settings)?)
}

fn require_flat(i: &Ideal, j: &Ideal, settings: &Settings) -> Result<()> {
    if !flatness_over_uniformizer(i, settings)? || !flatness_over_uniformizer(j, settings)? {
        return Err(Error::NotFlat);
    }
    Ok(())
}

/// Compares `gr M ⊗_{gr R} gr N` with `gr(M ⊗_R N)` through the surjection between them.
pub fn psi_defect(i: &Ideal, j: &Ideal, settings: &Settings) -> Result<PsiDefect> {
    require_flat(i, j, settings)?;
    let (ring, t) = tensor_over_dvr(i, j)?;
    let src = source_ideal(&ring, i, j, settings)?;
    let tgt = localalg::initial_ideal_of(&t, settings)?;
    let gb = tgt.grevlex(settings.budget)?;
    let mut containment = true;
    for g in src.generators() {
        containment &= gb.contains(g)?;
    }
    let s_series = groebner::hilbert_series(&src, settings.budget)?;
    let t_series = graded_series(&t, settings)?;
    use num_traits::ToPrimitive;
    let e_src = s_series.multiplicity().to_u64().unwrap_or(u64::MAX);
    let e_tgt = t_series.multiplicity().to_u64().unwrap_or(u64::MAX);
    let (dim_src, dim_tgt) = (s_series.dim, t_series.dim);
    Ok(PsiDefect { containment, dim_src, dim_tgt, e_src, e_tgt, homeomorphic_proxy: dim_src == dim_tgt && e_src == e_tgt })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimCut {
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub e_tensor: u64,
    pub e_product: u64,
    pub consistent: bool,
}

/// Checks `dim gr M ⊗ gr N = dim gr(M ⊗ N)` iff `e(M ⊗_R N) = e(M) e(N)`.
pub fn dimcut_check(i: &Ideal, j: &Ideal, settings: &Settings) -> Result<DimCut> {
    require_flat(i, j, settings)?;
    let (ring, t) = tensor_over_dvr(i, j)?;
    let src = source_ideal(&ring, i, j, settings)?;
    let lhs_dim = groebner::krull_dim(&src, settings.budget)?;
    let et = localalg::multiplicity(&t, settings)?;
    let e_product = localalg::multiplicity(i, settings)?.value * localalg::multiplicity(j, settings)?.value;
    let consistent = (lhs_dim == et.dim) == (et.value == e_product);
    Ok(DimCut { lhs_dim, rhs_dim: et.dim, e_tensor: et.value, e_product, consistent })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
    /// Hypotheses not established (e.g. equidimensionality not asserted).
    Caveat,
    /// The equality criterion fails on an input satisfying its hypotheses.
    CounterexampleCandidate,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::NotApplicable => "not-applicable",
            Verdict::Caveat => "caveat",
            Verdict::CounterexampleCandidate => "counterexample-candidate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportFlags {
    pub complementary: bool,
    pub finite_colength: bool,
    pub origin_supported: bool,
    pub m_flat_over_t: Option<bool>,
    pub n_flat_over_t: Option<bool>,
    pub equidim_asserted: bool,
    /// Coefficients lie in a field that is not algebraically closed.
    pub non_closed_field: bool,
}

/// Conditions (ii)–(v) of the last equality criterion, with `M = A/I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EConditions {
    pub e_n_equals_e_n_mod_t: bool,
    pub dim_m_is_codim_one: bool,
    pub dim_m_is_one: bool,
    pub cones_meet_t_at_point: bool,
}

impl EConditions {
    pub fn any(&self) -> bool {
        self.e_n_equals_e_n_mod_t || self.dim_m_is_codim_one || self.dim_m_is_one || self.cones_meet_t_at_point
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdicts {
    /// `excess >= 0` on complementary pairs.
    pub theorem_a: Verdict,
    /// `chi = 0` below complementary dimension, `chi > 0` at it.
    pub vanishing: Verdict,
    /// `excess = 0 <=> tangent_dim = 0` for equidimensional complementary pairs.
    pub conjecture_i: Verdict,
    /// The same criterion when `t` is nilpotent on `M` or on `N`.
    pub theorem_c: Verdict,
    /// `excess = 0` forces `e(M) = e(M/tM)` or `e(N) = e(N/tN)` for flat pairs.
    pub theorem_d: Verdict,
    /// The criterion when one of the conditions in `e_conditions` holds.
    pub theorem_e: Verdict,
    /// `tangent_dim = 0 => excess = 0`.
    pub tennison: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiReport {
    pub chi: u64,
    pub chi_certificate: MultiplicityCertificate,
    pub e_m: MultiplicityCertificate,
    pub e_n: MultiplicityCertificate,
    /// `e(M ⊗_R N)` over the uniformizer, when there is one.
    pub e_tensor: Option<MultiplicityCertificate>,
    pub e_m_mod_t: Option<u64>,
    pub e_n_mod_t: Option<u64>,
    pub dim_m: usize,
    pub dim_n: usize,
    pub dim_a: usize,
    pub excess: i64,
    pub tangent_dim: usize,
    pub flags: ReportFlags,
    pub e_conditions: Option<EConditions>,
    pub verdicts: Verdicts,
}

fn criterion(excess: i64, tangent_dim: usize) -> Verdict {
    if (excess == 0) == (tangent_dim == 0) {
        Verdict::Holds
    } else {
        Verdict::CounterexampleCandidate
    }
}

/// Everything known about the pair `(A/I, A/J)`.
pub fn serre_report(i: &Ideal, j: &Ideal, equidim_asserted: bool, settings: &Settings) -> Result<ChiReport> {
    let c = chi(i, j, settings)?;
    let sig = i.signature().clone();
    let dim_a = sig.arity();
    let e_m = localalg::multiplicity(i, settings)?;
    let e_n = localalg::multiplicity(j, settings)?;
    let (dim_m, dim_n) = (e_m.dim, e_n.dim);
    let complementary = dim_m + dim_n == dim_a;
    let excess = c.value as i64 - (e_m.value * e_n.value) as i64;
    let tangent_dim = tangent_tensor_dim(i, j, settings)?;

    let mut flags = ReportFlags {
        complementary,
        finite_colength: true,
        origin_supported: true,
        m_flat_over_t: None,
        n_flat_over_t: None,
        equidim_asserted,
        non_closed_field: true,
    };

    let checked = equidim_asserted && complementary;
    let conjecture_i = if checked { criterion(excess, tangent_dim) } else { Verdict::Caveat };
    let theorem_a = if complementary { Verdict::from_bool(excess >= 0) } else { Verdict::NotApplicable };
    let vanishing = if dim_m + dim_n < dim_a {
        Verdict::from_bool(c.value == 0)
    } else if complementary {
        Verdict::from_bool(c.value >= 1)
    } else {
        Verdict::NotApplicable
    };
    let tennison = if complementary && tangent_dim == 0 {
        Verdict::from_bool(excess == 0)
    } else {
        Verdict::NotApplicable
    };

    let mut theorem_c = Verdict::NotApplicable;
    let mut theorem_d = Verdict::NotApplicable;
    let mut theorem_e = Verdict::NotApplicable;
    let mut e_tensor = None;
    let mut e_conditions = None;
    let (mut e_m_mod_t, mut e_n_mod_t) = (None, None);
    if sig.uniformizer().is_some() {
        let budget = settings.budget;
        let t = uniformizer_poly(&sig)?;
        let t_ideal = Ideal::new(&sig, vec![t.clone()])?;
        let m_flat = flatness_over_uniformizer(i, settings)?;
        let n_flat = flatness_over_uniformizer(j, settings)?;
        flags.m_flat_over_t = Some(m_flat);
        flags.n_flat_over_t = Some(n_flat);
        let emt = localalg::multiplicity(&groebner::ideal_sum(i, &t_ideal)?, settings)?.value;
        let ent = localalg::multiplicity(&groebner::ideal_sum(j, &t_ideal)?, settings)?.value;
        e_m_mod_t = Some(emt);
        e_n_mod_t = Some(ent);

        let t_in_support = groebner::radical_membership(&t, i, budget)? || groebner::radical_membership(&t, j, budget)?;
        if t_in_support {
            theorem_c = conjecture_i;
        }
        if m_flat && n_flat {
            theorem_d = Verdict::from_bool(excess != 0 || e_m.value == emt || e_n.value == ent);
            e_tensor = Some(localalg::multiplicity(&tensor_over_dvr(i, j)?.1, settings)?);
        }
        let cones = groebner::ideal_sum(
            &groebner::ideal_sum(&localalg::initial_ideal_of(i, settings)?, &localalg::initial_ideal_of(j, settings)?)?,
            &t_ideal,
        )?;
        let conds = EConditions {
            e_n_equals_e_n_mod_t: e_n.value == ent,
            dim_m_is_codim_one: dim_m + 1 == dim_a,
            dim_m_is_one: dim_m == 1,
            cones_meet_t_at_point: groebner::krull_dim(&cones, budget)? == 0,
        };
        if conds.any() {
            theorem_e = conjecture_i;
        }
        e_conditions = Some(conds);
    }

    Ok(ChiReport {
        chi: c.value,
        chi_certificate: c,
        e_m,
        e_n,
        e_tensor,
        e_m_mod_t,
        e_n_mod_t,
        dim_m,
        dim_n,
        dim_a,
        excess,
        tangent_dim,
        flags,
        e_conditions,
        verdicts: Verdicts { theorem_a, vanishing, conjecture_i, theorem_c, theorem_d, theorem_e, tennison },
    })
}
