#include "tilecount/tcf.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "tilecount/transfer.hpp"

namespace tilecount {

std::string to_string(RepKind k) {
  switch (k) {
    case RepKind::Tiles: return "tiles";
    case RepKind::GF: return "gf";
    case RepKind::Multisum: return "multisum";
  }
  return "tiles";
}

RepKind rep_kind_from_string(const std::string& s) {
  if (s == "tiles") return RepKind::Tiles;
  if (s == "gf") return RepKind::GF;
  if (s == "multisum") return RepKind::Multisum;
  fail(ErrorCode::InvalidArgument, "unknown representation '" + s + "' (tiles, gf, multisum)");
}

namespace {

enum class Tok { Word, Number, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 0;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (c == '"') {
      std::size_t j = s.find('"', i + 1);
      if (j == std::string_view::npos) fail(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": unterminated string");
      out.push_back({Tok::String, std::string(s.substr(i + 1, j - i - 1)), line});
      i = j + 1;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), line});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Word, std::string(s.substr(i, j - i)), line});
      i = j;
    } else if (std::string_view("{};=[],+-@|:").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), line});
      ++i;
    } else {
      fail(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  out.push_back({Tok::End, "", line});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  TcfDocument document() {
    TcfDocument doc;
    std::vector<BasisSymbol> symbols;
    while (peek_word("basis")) symbols.push_back(basis_line());
    if (!symbols.empty()) doc.basis = IrrationalBasis::create(std::move(symbols));
    basis_ = doc.basis;
    if (peek_word("tiles")) {
      doc.rep = tiles_block();
    } else if (peek_word("gf")) {
      doc.rep = gf_block();
    } else if (peek_word("multisum")) {
      doc.rep = multisum_block();
    } else {
      error("expected 'tiles', 'gf' or 'multisum'");
    }
    if (peek().kind != Tok::End) error("trailing input after the representation block");
    return doc;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool peek_word(const char* w) const { return peek().kind == Tok::Word && peek().text == w; }
  bool peek_punct(char c) const { return peek().kind == Tok::Punct && peek().text[0] == c; }

  [[noreturn]] void error(const std::string& msg) const {
    const Token& t = peek();
    std::string near = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    fail(ErrorCode::SyntaxError, "line " + std::to_string(t.line) + ": " + msg + " near " + near);
  }

  void expect_word(const char* w) {
    if (!peek_word(w)) error(std::string("expected '") + w + "'");
    ++pos_;
  }
  void expect_punct(char c) {
    if (!peek_punct(c)) error(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept_punct(char c) {
    if (!peek_punct(c)) return false;
    ++pos_;
    return true;
  }
  std::string word() {
    if (peek().kind != Tok::Word) error("expected a name");
    return toks_[pos_++].text;
  }

  Rational unsigned_rational() {
    if (peek().kind != Tok::Number) error("expected a number");
    const std::string& t = toks_[pos_].text;
    try {
      Rational q = rational_from_string(t);
      ++pos_;
      return q;
    } catch (const Error&) {
      error("malformed rational '" + t + "'");
    }
  }
  Rational rational() {
    bool neg = accept_punct('-');
    Rational q = unsigned_rational();
    return neg ? Rational(-q) : q;
  }
  std::int64_t integer() {
    Rational q = rational();
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) error("expected an integer");
    return q.get_num().get_si();
  }
  std::size_t count() {
    std::int64_t v = integer();
    if (v < 0) error("expected a nonnegative integer");
    return std::size_t(v);
  }

  BasisSymbol basis_line() {
    expect_word("basis");
    BasisSymbol s;
    s.name = word();
    expect_word("in");
    expect_punct('[');
    s.enclosure.lo = rational();
    expect_punct(',');
    s.enclosure.hi = rational();
    expect_punct(']');
    if (peek_word("refine")) {
      ++pos_;
      if (peek_word("root")) {
        ++pos_;
        PolynomialRoot root;
        while (!peek_punct(';') && !peek_word("signed")) root.coeffs.push_back(rational());
        if (root.coeffs.size() < 2) error("root polynomial needs degree at least 1");
        s.refine = root;
      } else if (peek_word("table")) {
        ++pos_;
        IntervalTable table;
        while (accept_punct('[')) {
          Interval iv;
          iv.lo = rational();
          expect_punct(',');
          iv.hi = rational();
          expect_punct(']');
          table.levels.push_back(iv);
        }
        s.refine = table;
      } else {
        error("expected 'root' or 'table'");
      }
    }
    if (peek_word("signed")) {
      ++pos_;
      s.allow_nonpositive = true;
    }
    expect_punct(';');
    return s;
  }

  FieldElement field_element() {
    std::vector<FieldElement::Term> terms;
    bool neg = accept_punct('-');
    for (;;) {
      Rational c = 1;
      bool has_number = false;
      if (peek().kind == Tok::Number) {
        c = unsigned_rational();
        has_number = true;
      }
      std::size_t coord = 0;
      if (peek().kind == Tok::Word && basis_ && basis_->index_of(peek().text)) {
        coord = *basis_->index_of(peek().text) + 1;
        ++pos_;
      } else if (!has_number) {
        error("expected a number or basis symbol");
      }
      terms.emplace_back(coord, neg ? Rational(-c) : c);
      if (accept_punct('+'))
        neg = false;
      else if (accept_punct('-'))
        neg = true;
      else
        break;
    }
    return FieldElement::from_terms(basis_, std::move(terms));
  }

  Profile profile() {
    std::vector<Rational> breaks{0};
    std::vector<FieldElement> offsets{field_element()};
    while (accept_punct('@')) {
      breaks.push_back(unsigned_rational());
      offsets.push_back(field_element());
    }
    breaks.push_back(1);
    try {
      return Profile::make(std::move(breaks), std::move(offsets));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SignUndecided) error(std::string("bad profile: ") + e.what());
      throw;
    }
  }

  TileSet tiles_block() {
    expect_word("tiles");
    expect_punct('{');
    TileSet ts;
    ts.basis = basis_;
    bool seen_eps = false;
    while (!accept_punct('}')) {
      if (peek_word("epsilon")) {
        if (seen_eps) error("duplicate epsilon");
        ++pos_;
        ts.epsilon = field_element();
        expect_punct(';');
        seen_eps = true;
      } else if (peek_word("tile")) {
        ++pos_;
        expect_punct('{');
        Tile t;
        bool l = false, r = false, a = false;
        while (!accept_punct('}')) {
          std::string key = word();
          if (key == "left" && !l) {
            t.left = profile();
            l = true;
          } else if (key == "right" && !r) {
            t.right = profile();
            r = true;
          } else if (key == "area" && !a) {
            t.area = field_element();
            a = true;
          } else {
            --pos_;
            error("expected 'left', 'right' or 'area' once each");
          }
          expect_punct(';');
        }
        if (!(l && r && a)) error("tile needs left, right and area");
        ts.tiles.push_back(std::move(t));
      } else {
        error("expected 'epsilon', 'tile' or '}'");
      }
    }
    return ts;
  }

  GFExpr gf_block() {
    expect_word("gf");
    expect_punct('{');
    std::optional<std::string> expr;
    std::optional<std::size_t> vars;
    while (!accept_punct('}')) {
      std::string key = word();
      if (key == "expr" && !expr) {
        if (peek().kind != Tok::String) error("expected a quoted expression");
        expr = toks_[pos_++].text;
      } else if (key == "vars" && !vars) {
        vars = count();
      } else {
        --pos_;
        error("expected 'expr' or 'vars' once each");
      }
      expect_punct(';');
    }
    if (!expr) error("gf block needs an expr");
    return parse_gf(*expr, vars);
  }

  AffineForm affine(std::size_t dims) {
    AffineForm f;
    while (peek().kind == Tok::Number || peek_punct('-')) f.coeffs.push_back(integer());
    if (f.coeffs.size() != dims)
      error("expected " + std::to_string(dims) + " coefficients, got " + std::to_string(f.coeffs.size()));
    expect_punct('|');
    expect_word("n");
    expect_punct(':');
    f.n_coeff = integer();
    expect_punct('|');
    expect_word("c");
    expect_punct(':');
    f.constant = integer();
    return f;
  }

  AffineBound bound() {
    AffineBound b;
    expect_word("n");
    expect_punct(':');
    b.n_coeff = integer();
    expect_word("c");
    expect_punct(':');
    b.constant = integer();
    return b;
  }

  BinomialMultiSum multisum_block() {
    expect_word("multisum");
    expect_punct('{');
    expect_word("dims");
    BinomialMultiSum ms;
    ms.dims = count();
    expect_punct(';');
    std::vector<std::optional<AffineBound>> lo(ms.dims), hi(ms.dims);
    bool any_bound = false;
    while (!accept_punct('}')) {
      if (peek_word("factor")) {
        ++pos_;
        expect_punct('{');
        expect_word("alpha");
        expect_punct('=');
        BinomialFactor f;
        f.alpha = affine(ms.dims);
        expect_punct(';');
        expect_word("beta");
        expect_punct('=');
        f.beta = affine(ms.dims);
        expect_punct(';');
        expect_punct('}');
        ms.factors.push_back(std::move(f));
      } else if (peek_word("bound")) {
        ++pos_;
        std::size_t j = count();
        if (j >= ms.dims) error("bound index out of range");
        if (lo[j]) error("duplicate bound");
        expect_word("lo");
        expect_punct('=');
        lo[j] = bound();
        expect_word("hi");
        expect_punct('=');
        hi[j] = bound();
        expect_punct(';');
        any_bound = true;
      } else {
        error("expected 'factor', 'bound' or '}'");
      }
    }
    if (any_bound) {
      SupportHint h;
      for (std::size_t j = 0; j < ms.dims; ++j) {
        if (!lo[j]) error("bounds must be given for every variable or none");
        h.lo.push_back(*lo[j]);
        h.hi.push_back(*hi[j]);
      }
      ms.hint = h;
    }
    return ms;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  BasisPtr basis_;
};

void emit_basis(std::ostream& os, const BasisPtr& basis) {
  if (!basis) return;
  for (const BasisSymbol& s : basis->symbols()) {
    os << "basis " << s.name << " in [" << s.enclosure.lo.get_str() << ", " << s.enclosure.hi.get_str() << "]";
    if (const auto* root = std::get_if<PolynomialRoot>(&s.refine)) {
      os << " refine root";
      for (const Rational& c : root->coeffs) os << " " << c.get_str();
    } else if (const auto* table = std::get_if<IntervalTable>(&s.refine)) {
      os << " refine table";
      for (const Interval& iv : table->levels) os << " [" << iv.lo.get_str() << ", " << iv.hi.get_str() << "]";
    }
    if (s.allow_nonpositive) os << " signed";
    os << ";\n";
  }
}

std::string affine_text(const AffineForm& f, std::size_t dims) {
  std::ostringstream os;
  for (std::size_t j = 0; j < dims; ++j) os << f.coeff(j) << " ";
  os << "| n:" << f.n_coeff << " | c:" << f.constant;
  return os.str();
}

BasisPtr tileset_basis(const TileSet& ts) {
  BasisPtr b = ts.basis;
  auto take = [&](const FieldElement& x) {
    if (x.basis()) b = common_basis(b, x.basis());
  };
  take(ts.epsilon);
  for (const Tile& t : ts.tiles) {
    take(t.area);
    for (const Profile* p : {&t.left, &t.right})
      for (const FieldElement& x : p->offsets()) take(x);
  }
  return b;
}

}  // namespace

TcfDocument parse_tcf(std::string_view text) { return Parser(lex(text)).document(); }

std::string emit_tcf(const TcfDocument& doc) {
  std::ostringstream os;
  emit_basis(os, doc.basis);
  if (const auto* ts = std::get_if<TileSet>(&doc.rep)) {
    os << "tiles {\n  epsilon " << ts->epsilon.to_string() << ";\n";
    for (const Tile& t : ts->tiles)
      os << "  tile { left " << t.left.to_string() << "; right " << t.right.to_string() << "; area "
         << t.area.to_string() << "; }\n";
    os << "}\n";
  } else if (const auto* e = std::get_if<GFExpr>(&doc.rep)) {
    os << "gf { expr \"" << e->to_string() << "\"; vars " << e->vars() << "; }\n";
  } else {
    const auto& ms = std::get<BinomialMultiSum>(doc.rep);
    os << "multisum {\n  dims " << ms.dims << ";\n";
    for (const BinomialFactor& f : ms.factors)
      os << "  factor { alpha = " << affine_text(f.alpha, ms.dims) << "; beta = " << affine_text(f.beta, ms.dims)
         << "; }\n";
    if (ms.hint)
      for (std::size_t j = 0; j < ms.dims; ++j)
        os << "  bound " << j << " lo = n:" << ms.hint->lo[j].n_coeff << " c:" << ms.hint->lo[j].constant
           << " hi = n:" << ms.hint->hi[j].n_coeff << " c:" << ms.hint->hi[j].constant << ";\n";
    os << "}\n";
  }
  return os.str();
}

TcfDocument read_tcf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tcf(ss.str());
}

TcfDocument make_document(const TileSet& ts) {
  TcfDocument d;
  d.basis = tileset_basis(ts);
  d.rep = ts;
  return d;
}

TcfDocument make_document(const GFExpr& e) {
  TcfDocument d;
  d.rep = e;
  return d;
}

TcfDocument make_document(const BinomialMultiSum& ms) {
  TcfDocument d;
  d.rep = ms;
  return d;
}

Integer eval_document(const TcfDocument& doc, std::size_t n, unsigned precision_budget) {
  if (const auto* ts = std::get_if<TileSet>(&doc.rep)) return count_tilings(*ts, n, precision_budget);
  if (const auto* e = std::get_if<GFExpr>(&doc.rep)) return diagonal(*e, n);
  return eval_multisum(std::get<BinomialMultiSum>(doc.rep), std::int64_t(n));
}

std::vector<Integer> eval_document_range(const TcfDocument& doc, std::size_t n0, std::size_t n1,
                                         unsigned precision_budget) {
  if (n0 > n1) fail(ErrorCode::InvalidArgument, "n0 must not exceed n1");
  std::vector<Integer> out;
  if (const auto* e = std::get_if<GFExpr>(&doc.rep)) {
    // One coefficient table for the whole range when it is small.
    double cells = 1;
    for (std::size_t i = 0; i < e->vars(); ++i) cells *= double(n1 + 1);
    if (cells <= 4e6) {
      std::vector<Integer> table = coefficient_table(*e, std::vector<std::size_t>(e->vars(), n1));
      std::size_t step = 0, stride = 1;
      for (std::size_t i = 0; i < e->vars(); ++i, stride *= n1 + 1) step += stride;
      for (std::size_t n = n0; n <= n1; ++n) out.push_back(table[n * step]);
      return out;
    }
  }
  for (std::size_t n = n0; n <= n1; ++n) out.push_back(eval_document(doc, n, precision_budget));
  return out;
}

TcfDocument convert_document(const TcfDocument& doc, RepKind to, const TranslateOptions& opt) {
  RepKind from = doc.kind();
  if (from == to) return doc;
  switch (from) {
    case RepKind::Tiles: {
      BinomialMultiSum ms = tiles_to_multisum(std::get<TileSet>(doc.rep), opt);
      if (to == RepKind::Multisum) return make_document(ms);
      return make_document(multisum_to_gf(ms, opt));
    }
    case RepKind::GF: {
      TileSet ts = gf_to_tiles(std::get<GFExpr>(doc.rep), opt);
      if (to == RepKind::Tiles) return make_document(ts);
      return make_document(tiles_to_multisum(ts, opt));
    }
    case RepKind::Multisum: {
      GFExpr e = multisum_to_gf(std::get<BinomialMultiSum>(doc.rep), opt);
      if (to == RepKind::GF) return make_document(e);
      return make_document(gf_to_tiles(e, opt));
    }
  }
  return doc;
}

}  // namespace tilecount
