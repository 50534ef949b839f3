#include "tilecount/tiles.hpp"

#include <algorithm>
#include <sstream>

namespace tilecount {

Profile::Profile() : breaks_{Rational(0), Rational(1)}, offsets_{FieldElement()} {}

Profile Profile::make(std::vector<Rational> breaks, std::vector<FieldElement> offsets,
                      unsigned precision_budget) {
  if (offsets.empty() || breaks.size() != offsets.size() + 1)
    fail(ErrorCode::InvalidArgument, "profile needs one offset per height interval");
  if (breaks.front() != 0 || breaks.back() != 1)
    fail(ErrorCode::InvalidArgument, "profile heights must run from 0 to 1");
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j)
    if (!(breaks[j] < breaks[j + 1])) fail(ErrorCode::InvalidArgument, "profile heights must increase");

  Profile p;
  p.breaks_ = {breaks[0]};
  p.offsets_.clear();
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    if (!p.offsets_.empty() && p.offsets_.back() == offsets[j]) {
      p.breaks_.back() = breaks[j + 1];
      continue;
    }
    p.offsets_.push_back(offsets[j]);
    p.breaks_.push_back(breaks[j + 1]);
  }
  std::size_t lowest = 0;
  for (std::size_t j = 1; j < p.offsets_.size(); ++j)
    if (fe_compare(p.offsets_[j], p.offsets_[lowest], precision_budget) == Sign::Negative) lowest = j;
  FieldElement base = p.offsets_[lowest];
  for (FieldElement& o : p.offsets_) o = o - base;
  return p;
}

const FieldElement& Profile::offset_at(const Rational& h) const {
  for (std::size_t j = 0; j < offsets_.size(); ++j)
    if (h < breaks_[j + 1]) return offsets_[j];
  return offsets_.back();
}

FieldElement Profile::integral() const {
  FieldElement acc;
  for (std::size_t j = 0; j < offsets_.size(); ++j) acc += offsets_[j].scaled(breaks_[j + 1] - breaks_[j]);
  return acc;
}

bool Profile::operator==(const Profile& o) const { return breaks_ == o.breaks_ && offsets_ == o.offsets_; }

int Profile::order(const Profile& a, const Profile& b) {
  if (a.breaks_.size() != b.breaks_.size()) return a.breaks_.size() < b.breaks_.size() ? -1 : 1;
  for (std::size_t j = 0; j < a.breaks_.size(); ++j) {
    int c = cmp(a.breaks_[j], b.breaks_[j]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  for (std::size_t j = 0; j < a.offsets_.size(); ++j) {
    int c = FieldElement::structural_compare(a.offsets_[j], b.offsets_[j]);
    if (c != 0) return c;
  }
  return 0;
}

std::string Profile::to_string() const {
  std::ostringstream out;
  for (std::size_t j = 0; j < offsets_.size(); ++j) {
    if (j > 0) out << " @" << breaks_[j].get_str() << " ";
    out << offsets_[j].to_string();
  }
  return out.str();
}

std::vector<Rational> merge_breaks(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FieldElement tile_shift(const Tile& t) { return t.area - (t.right.integral() - t.left.integral()); }

TileDiagnostic validate_tile(const Tile& t, unsigned precision_budget) {
  if (fe_sign(t.area, precision_budget) != Sign::Positive)
    return {TileStatus::NonpositiveArea, "area " + t.area.to_string() + " is not positive"};
  FieldElement shift = tile_shift(t);
  std::vector<Rational> hs = merge_breaks(t.left.breaks(), t.right.breaks());
  for (std::size_t j = 0; j + 1 < hs.size(); ++j) {
    Rational mid = (hs[j] + hs[j + 1]) / 2;
    FieldElement width = t.right.offset_at(mid) + shift - t.left.offset_at(mid);
    if (fe_sign(width, precision_budget) != Sign::Positive) {
      std::ostringstream msg;
      msg << "width " << width.to_string() << " on heights [" << hs[j].get_str() << ", " << hs[j + 1].get_str()
          << "] is not positive";
      return {TileStatus::InconsistentProfile, msg.str()};
    }
  }
  return {};
}

void validate_tile_set(const TileSet& ts, unsigned precision_budget) {
  if (fe_sign(ts.epsilon, precision_budget) == Sign::Negative)
    fail(ErrorCode::InvalidArgument, "epsilon must be nonnegative");
  for (std::size_t i = 0; i < ts.tiles.size(); ++i) {
    TileDiagnostic d = validate_tile(ts.tiles[i], precision_budget);
    if (d.status == TileStatus::NonpositiveArea)
      fail(ErrorCode::NonpositiveArea, "tile " + std::to_string(i) + ": " + d.detail);
    if (d.status == TileStatus::InconsistentProfile)
      fail(ErrorCode::InconsistentProfile, "tile " + std::to_string(i) + ": " + d.detail);
  }
}

std::vector<Profile> canonical_profiles(const TileSet& ts) {
  std::vector<Profile> all;
  for (const Tile& t : ts.tiles) {
    all.push_back(t.left);
    all.push_back(t.right);
  }
  std::sort(all.begin(), all.end(), [](const Profile& a, const Profile& b) { return Profile::order(a, b) < 0; });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  Profile vertical;
  std::erase(all, vertical);
  all.insert(all.begin(), vertical);
  return all;
}

Tile rectangle(const FieldElement& width) { return Tile{Profile(), Profile(), width}; }

}  // namespace tilecount
