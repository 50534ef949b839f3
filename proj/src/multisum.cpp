#include "tilecount/multisum.hpp"
#include "tilecount/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace tilecount {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::SizeLimit, "affine arithmetic overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::SizeLimit, "affine arithmetic overflow");
  return r;
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) fail(ErrorCode::SizeLimit, "bound does not fit in 64 bits");
  return z.get_si();
}

std::vector<std::int64_t> trimmed(std::vector<std::int64_t> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

}  // namespace

AffineForm AffineForm::var(std::size_t j, std::int64_t c) {
  AffineForm f;
  f.coeffs.assign(j + 1, 0);
  f.coeffs[j] = c;
  return f;
}

AffineForm AffineForm::n(std::int64_t c) {
  AffineForm f;
  f.n_coeff = c;
  return f;
}

AffineForm AffineForm::cst(std::int64_t c) {
  AffineForm f;
  f.constant = c;
  return f;
}

std::int64_t AffineForm::eval(const std::vector<std::int64_t>& v, std::int64_t n) const {
  std::int64_t acc = checked_add(checked_mul(n_coeff, n), constant);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (coeffs[j] != 0) acc = checked_add(acc, checked_mul(coeffs[j], v.at(j)));
  return acc;
}

bool AffineForm::operator==(const AffineForm& o) const {
  return n_coeff == o.n_coeff && constant == o.constant && trimmed(coeffs) == trimmed(o.coeffs);
}

bool AffineForm::is_constant_in_v() const { return last_var() == 0; }

std::size_t AffineForm::last_var() const { return trimmed(coeffs).size(); }

AffineForm AffineForm::operator+(const AffineForm& o) const {
  AffineForm r;
  r.coeffs.assign(std::max(coeffs.size(), o.coeffs.size()), 0);
  for (std::size_t j = 0; j < r.coeffs.size(); ++j) r.coeffs[j] = checked_add(coeff(j), o.coeff(j));
  r.n_coeff = checked_add(n_coeff, o.n_coeff);
  r.constant = checked_add(constant, o.constant);
  return r;
}

AffineForm AffineForm::operator-(const AffineForm& o) const { return *this + o * -1; }

AffineForm AffineForm::operator*(std::int64_t k) const {
  AffineForm r;
  for (std::int64_t c : coeffs) r.coeffs.push_back(checked_mul(c, k));
  r.n_coeff = checked_mul(n_coeff, k);
  r.constant = checked_mul(constant, k);
  return r;
}

std::string AffineForm::to_string() const {
  std::ostringstream out;
  bool first = true;
  auto term = [&](std::int64_t c, const std::string& name) {
    if (c == 0) return;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    std::int64_t a = c < 0 ? -c : c;
    if (a != 1 || name.empty()) out << a;
    out << name;
    first = false;
  };
  for (std::size_t j = 0; j < coeffs.size(); ++j) term(coeffs[j], "v" + std::to_string(j + 1));
  term(n_coeff, "n");
  term(constant, "");
  if (first) out << "0";
  return out.str();
}

Integer ext_binom(std::int64_t a, std::int64_t b) {
  if (a == -1 && b == 0) return 1;
  if (a < 0 || b < 0 || b > a) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return r;
}

// ---------------------------------------------------------------------------
// Support bounding.

namespace {

enum class Pattern { Relaxed, Regular, Special };

// form >= 0 over (v, n) with n either fixed or appended as a variable.
void add_row(std::vector<LinearConstraint>& sys, const AffineForm& f, std::size_t dims, const std::int64_t* fixed_n,
             std::int64_t shift = 0) {
  LinearConstraint c;
  c.coeffs.resize(dims + (fixed_n ? 0 : 1));
  for (std::size_t j = 0; j < dims; ++j) c.coeffs[j] = static_cast<long>(f.coeff(j));
  if (fixed_n) {
    c.constant = Integer(static_cast<long>(f.n_coeff)) * static_cast<long>(*fixed_n);
  } else {
    c.coeffs[dims] = static_cast<long>(f.n_coeff);
    c.constant = 0;
  }
  c.constant += static_cast<long>(f.constant) + static_cast<long>(shift);
  sys.push_back(std::move(c));
}

void add_factor_rows(std::vector<LinearConstraint>& sys, const BinomialFactor& fac, Pattern p, std::size_t dims,
                     const std::int64_t* fixed_n) {
  switch (p) {
    case Pattern::Relaxed:
      add_row(sys, fac.beta, dims, fixed_n);
      add_row(sys, fac.alpha - fac.beta, dims, fixed_n, 1);
      add_row(sys, fac.alpha, dims, fixed_n, 1);
      break;
    case Pattern::Regular:
      add_row(sys, fac.beta, dims, fixed_n);
      add_row(sys, fac.alpha - fac.beta, dims, fixed_n);
      break;
    case Pattern::Special:
      add_row(sys, fac.alpha, dims, fixed_n, 1);
      add_row(sys, -fac.alpha, dims, fixed_n, -1);
      add_row(sys, fac.beta, dims, fixed_n);
      add_row(sys, -fac.beta, dims, fixed_n);
      break;
  }
}

std::vector<LinearConstraint> pattern_system(const BinomialMultiSum& ms, std::uint64_t special_mask, bool relaxed,
                                             const std::int64_t* fixed_n) {
  std::vector<LinearConstraint> sys;
  for (std::size_t i = 0; i < ms.factors.size(); ++i) {
    Pattern p = relaxed ? Pattern::Relaxed : ((special_mask >> i) & 1 ? Pattern::Special : Pattern::Regular);
    add_factor_rows(sys, ms.factors[i], p, ms.dims, fixed_n);
  }
  return sys;
}

constexpr std::size_t kMaxPatternFactors = 16;

}  // namespace

SupportBox bound_support(const BinomialMultiSum& ms, std::int64_t n) {
  SupportBox box;
  if (ms.dims == 0) return box;
  if (ms.hint) {
    for (std::size_t j = 0; j < ms.dims; ++j) {
      box.lo.push_back(ms.hint->lo[j].at(n));
      box.hi.push_back(ms.hint->hi[j].at(n));
      if (box.lo.back() > box.hi.back()) box.empty = true;
    }
    return box;
  }
  auto relaxed = fm_bounds(pattern_system(ms, 0, true, &n), ms.dims);
  if (!relaxed) {
    box.empty = true;
    return box;
  }
  bool bounded = std::all_of(relaxed->begin(), relaxed->end(), [](const CoordinateBounds& b) { return b.lo && b.hi; });
  if (bounded) {
    for (const CoordinateBounds& b : *relaxed) {
      box.lo.push_back(to_int64(*b.lo));
      box.hi.push_back(to_int64(*b.hi));
    }
    return box;
  }
  if (ms.factors.size() > kMaxPatternFactors) {
    box.unbounded = true;
    return box;
  }
  bool any = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << ms.factors.size()); ++mask) {
    auto b = fm_bounds(pattern_system(ms, mask, false, &n), ms.dims);
    if (!b) continue;
    for (std::size_t j = 0; j < ms.dims; ++j) {
      if (!(*b)[j].lo || !(*b)[j].hi) {
        box.unbounded = true;
        return box;
      }
      std::int64_t lo = to_int64(*(*b)[j].lo);
      std::int64_t hi = to_int64(*(*b)[j].hi);
      if (!any) {
        box.lo.push_back(lo);
        box.hi.push_back(hi);
      } else {
        box.lo[j] = std::min(box.lo[j], lo);
        box.hi[j] = std::max(box.hi[j], hi);
      }
    }
    any = true;
  }
  if (!any) box.empty = true;
  return box;
}

bool UniformBounds::complete() const {
  if (empty) return true;
  for (std::size_t j = 0; j < lo.size(); ++j)
    if (!lo[j] || !hi[j]) return false;
  return true;
}

namespace {

// Affine lower/upper bounds on coordinate 0 from constraints over (x, n).
void bounds_from_projection(const std::vector<LinearConstraint>& proj, std::optional<AffineBound>& lo,
                            std::optional<AffineBound>& hi) {
  for (const LinearConstraint& c : proj) {
    const Integer& a = c.coeffs[0];
    const Integer& b = c.coeffs[1];
    if (a > 0) {
      // x >= (-b n - c) / a
      Integer s, k;
      Integer nb = -b, nc = -c.constant;
      mpz_fdiv_q(s.get_mpz_t(), nb.get_mpz_t(), a.get_mpz_t());
      mpz_fdiv_q(k.get_mpz_t(), nc.get_mpz_t(), a.get_mpz_t());
      AffineBound cand{to_int64(s), to_int64(k)};
      if (!lo || cand.n_coeff > lo->n_coeff || (cand.n_coeff == lo->n_coeff && cand.constant > lo->constant))
        lo = cand;
    } else if (a < 0) {
      // x <= (b n + c) / -a
      Integer s, k;
      Integer na = -a;
      mpz_cdiv_q(s.get_mpz_t(), b.get_mpz_t(), na.get_mpz_t());
      mpz_cdiv_q(k.get_mpz_t(), c.constant.get_mpz_t(), na.get_mpz_t());
      AffineBound cand{to_int64(s), to_int64(k)};
      if (!hi || cand.n_coeff < hi->n_coeff || (cand.n_coeff == hi->n_coeff && cand.constant < hi->constant))
        hi = cand;
    }
  }
}

AffineBound lower_envelope(const AffineBound& a, const AffineBound& b) {
  return {std::min(a.n_coeff, b.n_coeff), std::min(a.constant, b.constant)};
}

AffineBound upper_envelope(const AffineBound& a, const AffineBound& b) {
  return {std::max(a.n_coeff, b.n_coeff), std::max(a.constant, b.constant)};
}

// Returns false when the system is infeasible.
bool uniform_from_system(std::vector<LinearConstraint> sys, std::size_t dims, std::int64_t n_min, UniformBounds& out) {
  LinearConstraint nge;
  nge.coeffs.assign(dims + 1, 0);
  nge.coeffs[dims] = 1;
  nge.constant = static_cast<long>(-n_min);
  sys.push_back(nge);
  out.lo.assign(dims, std::nullopt);
  out.hi.assign(dims, std::nullopt);
  if (!fm_feasible(sys, dims + 1)) return false;
  for (std::size_t j = 0; j < dims; ++j) {
    auto proj = fm_project(sys, dims + 1, {j, dims});
    if (!proj) return false;
    bounds_from_projection(*proj, out.lo[j], out.hi[j]);
  }
  return true;
}

}  // namespace

UniformBounds uniform_bounds(const BinomialMultiSum& ms, std::int64_t n_min) {
  UniformBounds out;
  if (!uniform_from_system(pattern_system(ms, 0, true, nullptr), ms.dims, n_min, out)) {
    out.empty = true;
    return out;
  }
  if (out.complete() || ms.factors.size() > kMaxPatternFactors) return out;
  UniformBounds acc;
  acc.lo.assign(ms.dims, std::nullopt);
  acc.hi.assign(ms.dims, std::nullopt);
  bool any = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << ms.factors.size()); ++mask) {
    UniformBounds part;
    if (!uniform_from_system(pattern_system(ms, mask, false, nullptr), ms.dims, n_min, part)) continue;
    if (!part.complete()) return out;
    for (std::size_t j = 0; j < ms.dims; ++j) {
      acc.lo[j] = any ? lower_envelope(*acc.lo[j], *part.lo[j]) : *part.lo[j];
      acc.hi[j] = any ? upper_envelope(*acc.hi[j], *part.hi[j]) : *part.hi[j];
    }
    any = true;
  }
  if (!any) acc.empty = true;
  return acc;
}

BinomialMultiSum with_hint(BinomialMultiSum ms) {
  if (ms.hint || ms.dims == 0) return ms;
  UniformBounds ub = uniform_bounds(ms, 0);
  if (!ub.complete()) return ms;
  SupportHint h;
  for (std::size_t j = 0; j < ms.dims; ++j) {
    if (ub.empty) {
      h.lo.push_back({0, 0});
      h.hi.push_back({0, -1});
    } else {
      h.lo.push_back(*ub.lo[j]);
      h.hi.push_back(*ub.hi[j]);
    }
  }
  ms.hint = h;
  return ms;
}

// ---------------------------------------------------------------------------
// Evaluation: depth-first over the box, memoizing suffix sums on the partial
// values of the forms that still involve unassigned variables.

namespace {

struct Kernel {
  std::vector<AffineForm> forms;
  bool balanced = false;
};

class SuffixEvaluator {
 public:
  SuffixEvaluator(std::size_t dims, const std::vector<Kernel>& kernels, std::int64_t n, EvalStats* stats)
      : dims_(dims), kernels_(kernels), stats_(stats) {
    finalize_.resize(dims);
    key_forms_.resize(dims);
    updates_.resize(dims);
    memo_.resize(dims);
    for (std::size_t k = 0; k < kernels.size(); ++k) {
      std::size_t last = 0;
      for (const AffineForm& f : kernels[k].forms) last = std::max(last, f.last_var());
      std::vector<std::size_t> idx;
      for (const AffineForm& f : kernels[k].forms) {
        idx.push_back(partial_.size());
        form_of_.push_back(&f);
        partial_.push_back(checked_add(checked_mul(f.n_coeff, n), f.constant));
      }
      form_index_.push_back(idx);
      if (last == 0) {
        constants_.push_back(k);
        continue;
      }
      std::size_t lv = last - 1;
      if (lv >= dims) fail(ErrorCode::InvalidArgument, "form uses a variable beyond the declared dimension");
      finalize_[lv].push_back(k);
      for (std::size_t j = 0; j <= lv; ++j)
        for (std::size_t fi : idx) key_forms_[j].push_back(fi);
      for (std::size_t j = 0; j < lv; ++j)
        for (std::size_t fi : idx)
          if (form_of_[fi]->coeff(j) != 0) updates_[j].push_back(fi);
    }
  }

  Integer run(const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi) {
    lo_ = lo;
    hi_ = hi;
    Integer head = 1;
    for (std::size_t k : constants_) {
      Integer v = value(k, 0, 0);
      if (v == 0) return 0;
      head *= v;
    }
    if (dims_ == 0) return head;
    return head * rec(0);
  }

 private:
  Integer value(std::size_t k, std::size_t j, std::int64_t x) {
    const std::vector<std::size_t>& idx = form_index_[k];
    std::int64_t vals[3] = {0, 0, 0};
    for (std::size_t t = 0; t < idx.size(); ++t) {
      std::int64_t c = j < dims_ ? form_of_[idx[t]]->coeff(j) : 0;
      vals[t] = checked_add(partial_[idx[t]], checked_mul(c, x));
    }
    if (stats_) ++stats_->factor_evaluations;
    if (kernels_[k].balanced) {
      if (vals[1] < 0 || vals[2] < 0) return 0;
      return ext_binom(vals[0], vals[1]);
    }
    if (stats_ && vals[0] == -1 && vals[1] == 0) ++stats_->extended_hits;
    return ext_binom(vals[0], vals[1]);
  }

  Integer rec(std::size_t j) {
    if (j == dims_) return 1;
    std::vector<std::int64_t> key;
    key.reserve(key_forms_[j].size());
    for (std::size_t fi : key_forms_[j]) key.push_back(partial_[fi]);
    auto& memo = memo_[j];
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Integer total = 0;
    for (std::int64_t x = lo_[j]; x <= hi_[j]; ++x) {
      Integer prod = 1;
      bool zero = false;
      for (std::size_t k : finalize_[j]) {
        Integer v = value(k, j, x);
        if (v == 0) {
          zero = true;
          break;
        }
        prod *= v;
      }
      if (zero) continue;
      for (std::size_t fi : updates_[j]) partial_[fi] = checked_add(partial_[fi], checked_mul(form_of_[fi]->coeff(j), x));
      Integer sub = rec(j + 1);
      for (std::size_t fi : updates_[j]) partial_[fi] -= form_of_[fi]->coeff(j) * x;
      if (sub != 0) mpz_addmul(total.get_mpz_t(), prod.get_mpz_t(), sub.get_mpz_t());
    }
    memo.emplace(std::move(key), total);
    return total;
  }

  struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& k) const {
      std::size_t h = 0xcbf29ce484222325ULL;
      for (std::int64_t x : k) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
      return h;
    }
  };

  std::size_t dims_;
  const std::vector<Kernel>& kernels_;
  EvalStats* stats_;
  std::vector<std::int64_t> lo_, hi_;
  std::vector<std::int64_t> partial_;
  std::vector<const AffineForm*> form_of_;
  std::vector<std::vector<std::size_t>> form_index_;
  std::vector<std::size_t> constants_;
  std::vector<std::vector<std::size_t>> finalize_;
  std::vector<std::vector<std::size_t>> key_forms_;
  std::vector<std::vector<std::size_t>> updates_;
  std::vector<std::unordered_map<std::vector<std::int64_t>, Integer, KeyHash>> memo_;
};

std::vector<Kernel> kernels_of(const BinomialMultiSum& ms) {
  std::vector<Kernel> ks;
  for (const BinomialFactor& f : ms.factors) ks.push_back({{f.alpha, f.beta}, false});
  return ks;
}

std::vector<Kernel> kernels_of(const PositiveMultiSum& ps) {
  std::vector<Kernel> ks;
  for (const BalancedFactor& f : ps.factors) ks.push_back({{f.alpha, f.beta, f.gamma}, true});
  return ks;
}

}  // namespace

Integer eval_multisum_in_box(const BinomialMultiSum& ms, std::int64_t n, const SupportBox& box, EvalStats* stats) {
  if (box.unbounded) fail(ErrorCode::UnboundedSupport, "support is unbounded at n = " + std::to_string(n));
  if (box.empty) return 0;
  std::vector<Kernel> ks = kernels_of(ms);
  SuffixEvaluator ev(ms.dims, ks, n, stats);
  return ev.run(box.lo, box.hi);
}

Integer eval_multisum(const BinomialMultiSum& ms, std::int64_t n, EvalStats* stats) {
  return eval_multisum_in_box(ms, n, bound_support(ms, n), stats);
}

Integer eval_positive(const PositiveMultiSum& ps, std::int64_t n) {
  std::vector<LinearConstraint> sys;
  for (const BalancedFactor& f : ps.factors) {
    add_row(sys, f.beta, ps.dims, &n);
    add_row(sys, f.gamma, ps.dims, &n);
  }
  std::vector<std::int64_t> lo, hi;
  if (ps.dims > 0) {
    auto b = fm_bounds(sys, ps.dims);
    if (!b) return 0;
    for (const CoordinateBounds& c : *b) {
      if (!c.lo || !c.hi) fail(ErrorCode::UnboundedSupport, "positive multisum has unbounded support");
      lo.push_back(to_int64(*c.lo));
      hi.push_back(to_int64(*c.hi));
    }
  }
  std::vector<Kernel> ks = kernels_of(ps);
  SuffixEvaluator ev(ps.dims, ks, n, nullptr);
  return ev.run(lo, hi);
}

Integer eval_balanced(const BalancedMultiSum& bs, std::int64_t n) {
  Integer total = 0;
  for (const PositiveMultiSum& ps : bs.components) total += eval_positive(ps, n);
  return total;
}

// ---------------------------------------------------------------------------
// Balanced form.

void check_balanced(const PositiveMultiSum& ps) {
  for (const BalancedFactor& f : ps.factors)
    if (!(f.alpha == f.beta + f.gamma))
      fail(ErrorCode::InvalidArgument, "triple (" + f.alpha.to_string() + ", " + f.beta.to_string() + ", " +
                                           f.gamma.to_string() + ") is not balanced");
}

BalancedMultiSum to_balanced(const BinomialMultiSum& ms) {
  std::size_t r = ms.factors.size();
  if (r > kMaxPatternFactors) fail(ErrorCode::SizeLimit, "too many factors for the subset expansion");
  BalancedMultiSum out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << r); ++mask) {
    std::vector<LinearConstraint> sys = pattern_system(ms, mask, false, nullptr);
    LinearConstraint nge;
    nge.coeffs.assign(ms.dims + 1, 0);
    nge.coeffs[ms.dims] = 1;
    nge.constant = 0;
    sys.push_back(nge);
    for (const BinomialFactor& f : ms.factors) (void)f;
    if (!fm_feasible(sys, ms.dims + 1)) continue;
    PositiveMultiSum ps;
    ps.dims = ms.dims;
    for (std::size_t i = 0; i < r; ++i) {
      const BinomialFactor& f = ms.factors[i];
      if ((mask >> i) & 1) {
        ps.factors.push_back({AffineForm::cst(0), f.alpha + 1, -(f.alpha + 1)});
        ps.factors.push_back({AffineForm::cst(0), f.beta, -f.beta});
      } else {
        ps.factors.push_back({f.alpha, f.beta, f.alpha - f.beta});
      }
    }
    out.components.push_back(std::move(ps));
  }
  return out;
}

BinomialMultiSum positive_to_binomial(const PositiveMultiSum& ps) {
  check_balanced(ps);
  BinomialMultiSum ms;
  ms.dims = ps.dims;
  // binom(gamma, gamma) = [gamma >= 0] without touching binom(-1, 0); it goes
  // first so the evaluator stops before binom(alpha, beta) at gamma = -1.
  for (const BalancedFactor& f : ps.factors) {
    ms.factors.push_back({f.gamma, f.gamma});
    ms.factors.push_back({f.alpha, f.beta});
  }
  return with_hint(ms);
}

BinomialMultiSum ms_zero() {
  BinomialMultiSum z;
  z.factors.push_back({AffineForm::cst(0), AffineForm::cst(1)});
  return z;
}

BinomialMultiSum from_balanced(const BalancedMultiSum& bs) {
  if (bs.components.empty()) return ms_zero();
  BinomialMultiSum acc = positive_to_binomial(bs.components[0]);
  for (std::size_t i = 1; i < bs.components.size(); ++i) acc = ms_sum(acc, positive_to_binomial(bs.components[i]));
  return acc;
}

// ---------------------------------------------------------------------------
// Closure constructions.

namespace {

AffineForm shifted_vars(const AffineForm& f, std::size_t by) {
  AffineForm r = f;
  r.coeffs.insert(r.coeffs.begin(), by, 0);
  return r;
}

std::pair<AffineBound, AffineBound> with_zero(const AffineBound& lo, const AffineBound& hi) {
  return {{std::min<std::int64_t>(lo.n_coeff, 0), std::min<std::int64_t>(lo.constant, 0)},
          {std::max<std::int64_t>(hi.n_coeff, 0), std::max<std::int64_t>(hi.constant, 0)}};
}

}  // namespace

BinomialMultiSum ms_sum(const BinomialMultiSum& a_in, const BinomialMultiSum& b_in) {
  BinomialMultiSum a = with_hint(a_in);
  BinomialMultiSum b = with_hint(b_in);
  if ((a.dims > 0 && !a.hint) || (b.dims > 0 && !b.hint))
    fail(ErrorCode::UnboundedSupport, "sum needs certified support bounds for both operands");
  const std::size_t da = a.dims;
  const std::size_t db = b.dims;
  const std::size_t off_a = 2;
  const std::size_t off_b = 2 + da;
  const AffineForm t = AffineForm::var(0);
  const AffineForm w = AffineForm::var(1);
  const AffineForm n = AffineForm::n();

  BinomialMultiSum out;
  out.dims = 2 + da + db;
  out.factors.push_back({AffineForm::cst(1), t});
  out.factors.push_back({n - w - t, n - w});
  out.factors.push_back({w + t - 1, w});

  for (const BinomialFactor& f : a.factors) {
    auto gate = [&](const AffineForm& g) { return shifted_vars(g, off_a) - w * g.n_coeff - t * g.constant; };
    out.factors.push_back({gate(f.alpha), gate(f.beta)});
  }
  for (std::size_t j = 0; j < da; ++j) {
    const AffineBound& l = a.hint->lo[j];
    AffineForm x = AffineForm::var(off_a + j) - n * l.n_coeff - AffineForm::cst(l.constant) + w * l.n_coeff +
                   t * l.constant;
    out.factors.push_back({x - t, x});
  }
  for (const BinomialFactor& f : b.factors) {
    auto gate = [&](const AffineForm& g) {
      AffineForm r = shifted_vars(g, off_b);
      r.n_coeff = 0;
      r.constant = 0;
      return r + w * g.n_coeff + t * g.constant;
    };
    out.factors.push_back({gate(f.alpha), gate(f.beta)});
  }
  for (std::size_t j = 0; j < db; ++j) {
    const AffineBound& l = b.hint->lo[j];
    AffineForm y = AffineForm::var(off_b + j) - w * l.n_coeff - t * l.constant;
    out.factors.push_back({y - 1 + t, y});
  }

  SupportHint h;
  h.lo = {{0, 0}, {0, 0}};
  h.hi = {{0, 1}, {1, 0}};
  for (std::size_t j = 0; j < da; ++j) {
    auto [lo, hi] = with_zero(a.hint->lo[j], a.hint->hi[j]);
    h.lo.push_back(lo);
    h.hi.push_back(hi);
  }
  for (std::size_t j = 0; j < db; ++j) {
    auto [lo, hi] = with_zero(b.hint->lo[j], b.hint->hi[j]);
    h.lo.push_back(lo);
    h.hi.push_back(hi);
  }
  out.hint = h;
  return out;
}

BinomialMultiSum ms_prod(const BinomialMultiSum& a_in, const BinomialMultiSum& b_in) {
  BinomialMultiSum a = with_hint(a_in);
  BinomialMultiSum b = with_hint(b_in);
  BinomialMultiSum out;
  out.dims = a.dims + b.dims;
  out.factors = a.factors;
  for (const BinomialFactor& f : b.factors)
    out.factors.push_back({shifted_vars(f.alpha, a.dims), shifted_vars(f.beta, a.dims)});
  if ((a.hint || a.dims == 0) && (b.hint || b.dims == 0)) {
    SupportHint h;
    if (a.hint) h = *a.hint;
    if (b.hint) {
      h.lo.insert(h.lo.end(), b.hint->lo.begin(), b.hint->lo.end());
      h.hi.insert(h.hi.end(), b.hint->hi.begin(), b.hint->hi.end());
    }
    if (out.dims > 0) out.hint = h;
  }
  return out;
}

BinomialMultiSum ms_scale(const BinomialMultiSum& a, std::int64_t m) {
  if (m < 0) fail(ErrorCode::InvalidArgument, "scale factor must be nonnegative");
  BinomialMultiSum out = a;
  out.factors.push_back({AffineForm::cst(m), AffineForm::cst(1)});
  return out;
}

BinomialMultiSum ms_shift(const BinomialMultiSum& a, std::int64_t k) {
  if (k < 0) fail(ErrorCode::InvalidArgument, "shift must be nonnegative");
  BinomialMultiSum out = a;
  auto shift = [&](AffineForm& f) { f.constant = checked_add(f.constant, -checked_mul(f.n_coeff, k)); };
  for (BinomialFactor& f : out.factors) {
    shift(f.alpha);
    shift(f.beta);
  }
  out.factors.push_back({AffineForm::n() - (k + 1), AffineForm::cst(0)});
  if (out.hint) {
    for (AffineBound& b : out.hint->lo) b.constant -= b.n_coeff * k;
    for (AffineBound& b : out.hint->hi) b.constant -= b.n_coeff * k;
  }
  return out;
}

BinomialMultiSum ms_substitute(const BinomialMultiSum& a, const std::vector<std::vector<std::int64_t>>& u) {
  if (u.size() != a.dims) fail(ErrorCode::InvalidArgument, "substitution matrix has the wrong size");
  IntMatrix um(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].size() != a.dims) fail(ErrorCode::InvalidArgument, "substitution matrix has the wrong size");
    for (std::int64_t x : u[i]) um[i].push_back(Integer(static_cast<long>(x)));
  }
  if (a.dims > 0 && abs(determinant(um)) != 1) fail(ErrorCode::InvalidArgument, "substitution matrix is not unimodular");
  auto sub = [&](const AffineForm& f) {
    AffineForm r;
    r.coeffs.assign(a.dims, 0);
    for (std::size_t col = 0; col < a.dims; ++col)
      for (std::size_t row = 0; row < a.dims; ++row)
        r.coeffs[col] = checked_add(r.coeffs[col], checked_mul(f.coeff(row), u[row].at(col)));
    r.n_coeff = f.n_coeff;
    r.constant = f.constant;
    return r;
  };
  BinomialMultiSum out;
  out.dims = a.dims;
  for (const BinomialFactor& f : a.factors) out.factors.push_back({sub(f.alpha), sub(f.beta)});
  return out;
}

BalancedMultiSum bs_sum(const BalancedMultiSum& a, const BalancedMultiSum& b) {
  BalancedMultiSum out = a;
  out.components.insert(out.components.end(), b.components.begin(), b.components.end());
  return out;
}

BalancedMultiSum bs_prod(const BalancedMultiSum& a, const BalancedMultiSum& b) {
  BalancedMultiSum out;
  for (const PositiveMultiSum& x : a.components)
    for (const PositiveMultiSum& y : b.components) {
      PositiveMultiSum p;
      p.dims = x.dims + y.dims;
      p.factors = x.factors;
      for (const BalancedFactor& f : y.factors)
        p.factors.push_back(
            {shifted_vars(f.alpha, x.dims), shifted_vars(f.beta, x.dims), shifted_vars(f.gamma, x.dims)});
      out.components.push_back(std::move(p));
    }
  return out;
}

// ---------------------------------------------------------------------------

std::size_t MultiSumBuilder::add_var(AffineBound lo, AffineBound hi) {
  lo_.push_back(lo);
  hi_.push_back(hi);
  return lo_.size() - 1;
}

void MultiSumBuilder::add_factor(const AffineForm& alpha, const AffineForm& beta) {
  factors_.push_back({alpha, beta});
}

void MultiSumBuilder::require_nonnegative(const AffineForm& form) { add_factor(form - 1, AffineForm::cst(0)); }

void MultiSumBuilder::require_zero(const AffineForm& form) {
  require_nonnegative(form);
  require_nonnegative(-form);
}

void MultiSumBuilder::add_constant(std::int64_t m) {
  if (m < 0) fail(ErrorCode::InvalidArgument, "constant must be nonnegative");
  add_factor(AffineForm::cst(m), AffineForm::cst(1));
}

void MultiSumBuilder::add_power(const Integer& base, const AffineForm& exponent, AffineBound exponent_hi) {
  if (base < 1) fail(ErrorCode::InvalidArgument, "power base must be positive");
  AffineBound zero{0, 0};
  for (const auto& [p, mult] : factorize(base)) {
    if (!p.fits_slong_p() || p > 1000) fail(ErrorCode::SizeLimit, "prime factor too large for a binomial chain");
    long prime = p.get_si();
    for (unsigned copy = 0; copy < mult; ++copy) {
      AffineForm rest = exponent;
      for (long i = 0; i + 1 < prime; ++i) {
        std::size_t u = add_var(zero, exponent_hi);
        AffineForm uf = AffineForm::var(u);
        add_factor(rest, uf);
        rest = rest - uf;
      }
    }
  }
}

BinomialMultiSum MultiSumBuilder::build() const {
  BinomialMultiSum ms;
  ms.dims = lo_.size();
  ms.factors = factors_;
  if (ms.dims > 0) ms.hint = SupportHint{lo_, hi_};
  return ms;
}

std::vector<std::pair<Integer, unsigned>> factorize(const Integer& m) {
  std::vector<std::pair<Integer, unsigned>> out;
  Integer rest = m;
  for (Integer p = 2; p * p <= rest; ++p) {
    unsigned k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    if (k > 0) out.emplace_back(p, k);
  }
  if (rest > 1) out.emplace_back(rest, 1);
  return out;
}

bool is_prime(const Integer& p) { return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0; }

}  // namespace tilecount
