#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tilecount/gf.hpp"
#include "tilecount/multisum.hpp"
#include "tilecount/tiles.hpp"
#include "tilecount/translate.hpp"

namespace tilecount {

// Text container: an optional basis block followed by one representation.
//
//   basis alpha in [41/100, 21/50] refine root 1 2 -1;
//   tiles {
//     epsilon 2 alpha;
//     tile { left 0; right 0 @1/3 1/20 @2/3 0; area 1 alpha; }
//   }
//
//   gf { expr "Q(x1 + x2)"; vars 2; }
//
//   multisum {
//     dims 1;
//     factor { alpha = 0 | n:1 | c:0; beta = 1 | n:0 | c:0; }
//     bound 0 lo = n:0 c:0 hi = n:1 c:0;
//   }
enum class RepKind { Tiles, GF, Multisum };

std::string to_string(RepKind k);
RepKind rep_kind_from_string(const std::string& s);

struct TcfDocument {
  BasisPtr basis;
  std::variant<TileSet, GFExpr, BinomialMultiSum> rep;

  RepKind kind() const { return RepKind(rep.index()); }
};

TcfDocument parse_tcf(std::string_view text);
std::string emit_tcf(const TcfDocument& doc);
TcfDocument read_tcf_file(const std::string& path);

TcfDocument make_document(const TileSet& ts);
TcfDocument make_document(const GFExpr& e);
TcfDocument make_document(const BinomialMultiSum& ms);

Integer eval_document(const TcfDocument& doc, std::size_t n, unsigned precision_budget = kDefaultPrecisionBudget);
std::vector<Integer> eval_document_range(const TcfDocument& doc, std::size_t n0, std::size_t n1,
                                         unsigned precision_budget = kDefaultPrecisionBudget);

// Routes through the three translations; tiles -> gf goes via multisum and
// gf -> multisum via tiles.
TcfDocument convert_document(const TcfDocument& doc, RepKind to, const TranslateOptions& opt = {});

}  // namespace tilecount
