#include "tilecount/exactnum.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace tilecount {

namespace {

int rational_sign(const Rational& q) { return sgn(q); }

bool contains(const Interval& outer, const Interval& inner) {
  return outer.lo <= inner.lo && inner.hi <= outer.hi;
}

}  // namespace

std::size_t hash_integer(const Integer& z) {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(mpz_size(p)) * 0x9e3779b97f4a7c15ULL;
  h ^= static_cast<std::size_t>(mpz_sgn(p) + 1);
  for (std::size_t i = 0; i < mpz_size(p); ++i)
    h = (h ^ static_cast<std::size_t>(mpz_getlimbn(p, static_cast<mp_size_t>(i)))) * 0x100000001b3ULL;
  return h;
}

Rational rational_from_string(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0)
    fail(ErrorCode::SyntaxError, "bad rational '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational eval_polynomial(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational acc = 0;
  for (const Rational& c : coeffs) acc = acc * x + c;
  return acc;
}

std::shared_ptr<const IrrationalBasis> IrrationalBasis::create(std::vector<BasisSymbol> symbols) {
  std::set<std::string> seen;
  for (const BasisSymbol& s : symbols) {
    if (s.name.empty()) fail(ErrorCode::InvalidArgument, "basis symbol without a name");
    if (!seen.insert(s.name).second) fail(ErrorCode::InvalidArgument, "duplicate basis symbol " + s.name);
    if (!(s.enclosure.lo < s.enclosure.hi))
      fail(ErrorCode::InvalidArgument, "enclosure of " + s.name + " needs lo < hi");
    if (!s.allow_nonpositive && s.enclosure.lo <= 0)
      fail(ErrorCode::InvalidArgument, "enclosure of " + s.name + " must be positive");
    if (const auto* root = std::get_if<PolynomialRoot>(&s.refine)) {
      if (root->coeffs.size() < 2) fail(ErrorCode::InvalidArgument, "root rule of " + s.name + " needs degree >= 1");
      int a = rational_sign(eval_polynomial(root->coeffs, s.enclosure.lo));
      int b = rational_sign(eval_polynomial(root->coeffs, s.enclosure.hi));
      if (a * b >= 0)
        fail(ErrorCode::InvalidArgument, "polynomial of " + s.name + " must change sign strictly inside the enclosure");
    }
    if (const auto* table = std::get_if<IntervalTable>(&s.refine)) {
      Interval prev = s.enclosure;
      for (const Interval& iv : table->levels) {
        if (!(iv.lo <= iv.hi) || !contains(prev, iv))
          fail(ErrorCode::InvalidArgument, "interval table of " + s.name + " is not nested");
        prev = iv;
      }
    }
  }
  return std::shared_ptr<const IrrationalBasis>(new IrrationalBasis(std::move(symbols)));
}

std::optional<std::size_t> IrrationalBasis::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

bool IrrationalBasis::refine(std::size_t i, Interval& current) const {
  const BasisSymbol& s = symbols_.at(i);
  if (current.lo == current.hi) return false;
  if (const auto* root = std::get_if<PolynomialRoot>(&s.refine)) {
    Rational mid = (current.lo + current.hi) / 2;
    int sm = rational_sign(eval_polynomial(root->coeffs, mid));
    if (sm == 0) {
      current = {mid, mid};
      return true;
    }
    int sl = rational_sign(eval_polynomial(root->coeffs, current.lo));
    if (sl * sm < 0)
      current.hi = mid;
    else
      current.lo = mid;
    return true;
  }
  if (const auto* table = std::get_if<IntervalTable>(&s.refine)) {
    Rational width = current.hi - current.lo;
    for (const Interval& iv : table->levels) {
      if (iv.hi - iv.lo < width && contains(current, iv)) {
        current = iv;
        return true;
      }
    }
    return false;
  }
  return false;
}

bool IrrationalBasis::same_as(const IrrationalBasis& other) const {
  if (this == &other) return true;
  if (symbols_.size() != other.symbols_.size()) return false;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const BasisSymbol& a = symbols_[i];
    const BasisSymbol& b = other.symbols_[i];
    if (a.name != b.name || a.enclosure.lo != b.enclosure.lo || a.enclosure.hi != b.enclosure.hi ||
        a.allow_nonpositive != b.allow_nonpositive || a.refine.index() != b.refine.index())
      return false;
    if (const auto* ra = std::get_if<PolynomialRoot>(&a.refine)) {
      if (ra->coeffs != std::get<PolynomialRoot>(b.refine).coeffs) return false;
    } else if (const auto* ta = std::get_if<IntervalTable>(&a.refine)) {
      const auto& tb = std::get<IntervalTable>(b.refine);
      if (ta->levels.size() != tb.levels.size()) return false;
      for (std::size_t k = 0; k < ta->levels.size(); ++k)
        if (ta->levels[k].lo != tb.levels[k].lo || ta->levels[k].hi != tb.levels[k].hi) return false;
    }
  }
  return true;
}

BasisPtr common_basis(const BasisPtr& a, const BasisPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (a == b || a->same_as(*b)) return a;
  fail(ErrorCode::BasisMismatch, "field elements over different bases");
}

FieldElement::FieldElement(const Rational& q) {
  if (q != 0) {
    terms_.emplace_back(0, q);
    terms_.back().second.canonicalize();
  }
}

FieldElement FieldElement::symbol(BasisPtr basis, std::size_t index, const Rational& coeff) {
  if (!basis || index >= basis->size()) fail(ErrorCode::InvalidArgument, "symbol index out of range");
  FieldElement e;
  e.basis_ = std::move(basis);
  if (coeff != 0) {
    e.terms_.emplace_back(index + 1, coeff);
    e.terms_.back().second.canonicalize();
  }
  return e;
}

FieldElement FieldElement::from_terms(BasisPtr basis, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  FieldElement e;
  for (Term& t : terms) {
    t.second.canonicalize();
    if (t.first > 0 && (!basis || t.first > basis->size()))
      fail(ErrorCode::InvalidArgument, "coordinate outside the basis");
    if (!e.terms_.empty() && e.terms_.back().first == t.first)
      e.terms_.back().second += t.second;
    else
      e.terms_.push_back(std::move(t));
  }
  std::erase_if(e.terms_, [](const Term& t) { return t.second == 0; });
  e.basis_ = std::move(basis);
  return e;
}

Rational FieldElement::coefficient(std::size_t coord) const {
  for (const Term& t : terms_)
    if (t.first == coord) return t.second;
  return 0;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  FieldElement r;
  r.basis_ = common_basis(basis_, o.basis_);
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
      r.terms_.push_back(*i++);
    } else if (i == terms_.end() || j->first < i->first) {
      r.terms_.push_back(*j++);
    } else {
      Rational s = i->second + j->second;
      if (s != 0) r.terms_.emplace_back(i->first, s);
      ++i;
      ++j;
    }
  }
  return r;
}

FieldElement FieldElement::operator-() const { return scaled(-1); }

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::scaled(const Rational& q) const {
  FieldElement r;
  r.basis_ = basis_;
  if (q == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const Term& t : terms_) r.terms_.emplace_back(t.first, t.second * q);
  return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  if (!is_rational() || !o.is_rational()) common_basis(basis_, o.basis_);
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second) return false;
  return true;
}

int FieldElement::structural_compare(const FieldElement& a, const FieldElement& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.terms_[i].first != b.terms_[i].first) return a.terms_[i].first < b.terms_[i].first ? -1 : 1;
    int c = cmp(a.terms_[i].second, b.terms_[i].second);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a.terms_.size() == b.terms_.size()) return 0;
  return a.terms_.size() < b.terms_.size() ? -1 : 1;
}

std::size_t FieldElement::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const Term& t : terms_) {
    h = (h ^ t.first) * 0x100000001b3ULL;
    h = (h ^ hash_integer(t.second.get_num())) * 0x100000001b3ULL;
    h = (h ^ hash_integer(t.second.get_den())) * 0x100000001b3ULL;
  }
  return h;
}

std::string FieldElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const Term& t : terms_) {
    Rational c = t.second;
    if (first) {
      if (c < 0) {
        out << "-";
        c = -c;
      }
    } else {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    if (t.first == 0)
      out << c.get_str();
    else
      out << c.get_str() << " " << basis_->symbol(t.first - 1).name;
  }
  return out.str();
}

Interval FieldElement::enclose(const std::vector<Interval>& symbol_intervals) const {
  Interval acc{0, 0};
  for (const Term& t : terms_) {
    if (t.first == 0) {
      acc.lo += t.second;
      acc.hi += t.second;
      continue;
    }
    const Interval& iv = symbol_intervals.at(t.first - 1);
    if (t.second > 0) {
      acc.lo += t.second * iv.lo;
      acc.hi += t.second * iv.hi;
    } else {
      acc.lo += t.second * iv.hi;
      acc.hi += t.second * iv.lo;
    }
  }
  return acc;
}

Sign fe_sign(const FieldElement& a, unsigned precision_budget) {
  if (a.is_zero()) return Sign::Zero;
  if (a.is_rational()) return a.rational_part() > 0 ? Sign::Positive : Sign::Negative;
  const IrrationalBasis& basis = *a.basis();
  std::vector<Interval> current;
  current.reserve(basis.size());
  for (const BasisSymbol& s : basis.symbols()) current.push_back(s.enclosure);
  for (unsigned level = 0;; ++level) {
    Interval iv = a.enclose(current);
    if (iv.lo > 0) return Sign::Positive;
    if (iv.hi < 0) return Sign::Negative;
    if (level >= precision_budget) break;
    bool moved = false;
    for (const FieldElement::Term& t : a.terms())
      if (t.first > 0) moved = basis.refine(t.first - 1, current[t.first - 1]) || moved;
    if (!moved) break;
  }
  fail(ErrorCode::SignUndecided, "cannot separate " + a.to_string() + " from 0");
}

Sign fe_compare(const FieldElement& a, const FieldElement& b, unsigned precision_budget) {
  return fe_sign(a - b, precision_budget);
}

}  // namespace tilecount
