#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tilecount/exactnum.hpp"

namespace tilecount {

// Step function over heights [0, 1]: offsets[j] holds on [breaks[j], breaks[j+1]].
class Profile {
 public:
  Profile();  // the vertical line

  // Canonicalizes: merges equal neighbours and shifts the minimum offset to 0.
  static Profile make(std::vector<Rational> breaks, std::vector<FieldElement> offsets,
                      unsigned precision_budget = kDefaultPrecisionBudget);

  const std::vector<Rational>& breaks() const { return breaks_; }
  const std::vector<FieldElement>& offsets() const { return offsets_; }
  std::size_t segments() const { return offsets_.size(); }
  bool is_vertical() const { return offsets_.size() == 1; }

  // Offset on the segment containing the open interval (h, h').
  const FieldElement& offset_at(const Rational& h) const;
  // Integral of the offset over [0, 1].
  FieldElement integral() const;

  bool operator==(const Profile& o) const;
  bool operator!=(const Profile& o) const { return !(*this == o); }
  static int order(const Profile& a, const Profile& b);

  std::string to_string() const;

 private:
  std::vector<Rational> breaks_;
  std::vector<FieldElement> offsets_;
};

struct Tile {
  Profile left;
  Profile right;
  FieldElement area;
};

struct TileSet {
  std::vector<Tile> tiles;
  FieldElement epsilon;
  BasisPtr basis;  // may be null when everything is rational
};

enum class TileStatus { Ok, NonpositiveArea, InconsistentProfile };

struct TileDiagnostic {
  TileStatus status = TileStatus::Ok;
  std::string detail;
  bool ok() const { return status == TileStatus::Ok; }
};

// Horizontal placement of the right profile relative to the left one.
FieldElement tile_shift(const Tile& t);

TileDiagnostic validate_tile(const Tile& t, unsigned precision_budget = kDefaultPrecisionBudget);
// Throws the matching error for the first invalid tile or a negative epsilon.
void validate_tile_set(const TileSet& ts, unsigned precision_budget = kDefaultPrecisionBudget);

std::vector<Profile> canonical_profiles(const TileSet& ts);

// Common refinement of the breakpoints of two profiles.
std::vector<Rational> merge_breaks(const std::vector<Rational>& a, const std::vector<Rational>& b);

Tile rectangle(const FieldElement& width);

}  // namespace tilecount
