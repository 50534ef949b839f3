#include "tilecount/translate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tilecount/transfer.hpp"

namespace tilecount {

namespace {

std::int64_t to_i64(const Integer& z) {
  if (!z.fits_slong_p()) fail(ErrorCode::SizeLimit, "lattice entry does not fit in 64 bits");
  return z.get_si();
}

}  // namespace

LatticeSolution solve_weights(const std::vector<FieldElement>& weights, std::size_t unit_index,
                              std::optional<std::size_t> eps_index) {
  const std::size_t r = weights.size();
  std::set<std::size_t> coords;
  for (const FieldElement& w : weights)
    for (const auto& [c, q] : w.terms()) coords.insert(c);
  IntMatrix m;
  for (std::size_t c : coords) {
    Integer den = 1;
    for (const FieldElement& w : weights) {
      Rational q = w.coefficient(c);
      den = lcm(den, q.get_den());
    }
    IntVector row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Rational q = weights[i].coefficient(c) * den;
      row[i] = q.get_num();
    }
    m.push_back(std::move(row));
  }
  LatticeSolution sol;
  sol.kernel = integer_kernel(m, r);
  sol.particular_n.assign(r, 0);
  sol.particular_1.assign(r, 0);
  sol.particular_n.at(unit_index) = 1;
  if (eps_index) sol.particular_1.at(*eps_index) = 1;
  return sol;
}

TileTranslation translate_tiles(const TileSet& ts, const TranslateOptions& opt) {
  validate_tile_set(ts, opt.precision_budget);
  TransferGraph tg = build_graph(ts, opt.precision_budget);
  TileTranslation out;
  out.graph = weighted_graph(tg);
  WeightedGraph& g = out.graph;

  // Unreachable loops realizing the particular solution.
  const std::size_t unit_edge = g.edges.size();
  g.edges.push_back({g.vertex_count, g.vertex_count, FieldElement(1)});
  ++g.vertex_count;
  std::optional<std::size_t> eps_edge;
  if (!ts.epsilon.is_zero()) {
    eps_edge = g.edges.size();
    g.edges.push_back({g.vertex_count, g.vertex_count, ts.epsilon});
    ++g.vertex_count;
  }

  out.cycles = irreducible_cycles(g, opt.cycle_cap, opt.progress);
  const std::vector<IrreducibleCycle>& cyc = out.cycles.cycles;
  const std::size_t r = cyc.size();
  auto find_loop = [&](std::size_t edge) {
    for (std::size_t i = 0; i < r; ++i)
      if (cyc[i].edges.size() == 1 && cyc[i].edges[0] == edge) return i;
    fail(ErrorCode::LatticeDegenerate, "augmentation loop missing from the cycle list");
  };
  std::size_t unit_index = find_loop(unit_edge);
  std::optional<std::size_t> eps_index;
  if (eps_edge) eps_index = find_loop(*eps_edge);

  std::vector<FieldElement> weights;
  for (const IrreducibleCycle& c : cyc) weights.push_back(c.weight);
  out.lattice = solve_weights(weights, unit_index, eps_index);
  const LatticeSolution& lat = out.lattice;

  const std::size_t dims = lat.kernel.size();
  std::vector<AffineForm> z(r);
  for (std::size_t i = 0; i < r; ++i) {
    z[i].coeffs.assign(dims, 0);
    for (std::size_t k = 0; k < dims; ++k) z[i].coeffs[k] = to_i64(lat.kernel[k][i]);
    z[i].n_coeff = to_i64(lat.particular_n[i]);
    z[i].constant = to_i64(lat.particular_1[i]);
  }
  BinomialMultiSum& ms = out.multisum;
  ms.dims = dims;
  for (std::size_t i = 0; i < r; ++i) {
    AffineForm alpha = z[i] + (out.cycles.a[i][0] - 1);
    for (std::size_t j = 0; j < i; ++j)
      if (out.cycles.a[i][j + 1] != 0) alpha = alpha + z[j] * out.cycles.a[i][j + 1];
    ms.factors.push_back({alpha, z[i]});
  }
  return out;
}

BinomialMultiSum tiles_to_multisum(const TileSet& ts, const TranslateOptions& opt) {
  return translate_tiles(ts, opt).multisum;
}

// ---------------------------------------------------------------------------

namespace {

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73};

// sqrt(p) / (scale * (isqrt(p) + 1)) as a polynomial root with a tight enclosure.
BasisSymbol scaled_root(const std::string& name, unsigned p, const Integer& scale) {
  Integer u = sqrt(Integer(p)) + 1;
  Integer den = scale * u;
  Integer big = Integer(p) * Integer("1000000000000");
  Integer s = sqrt(big);
  BasisSymbol sym;
  sym.name = name;
  sym.enclosure.lo = Rational(s, den * 1000000);
  sym.enclosure.hi = Rational(s + 1, den * 1000000);
  sym.enclosure.lo.canonicalize();
  sym.enclosure.hi.canonicalize();
  Rational c0(Integer(p), den * den);
  c0.canonicalize();
  sym.refine = PolynomialRoot{{Rational(1), Rational(0), -c0}};
  return sym;
}

}  // namespace

TileSet gf_to_tiles(const GFExpr& e, const TranslateOptions& opt) {
  const std::size_t k = e.vars();
  if (k + 1 > std::size(kPrimes)) fail(ErrorCode::SizeLimit, "too many variables for the tile construction");
  KNetwork net = compile_knetwork(e, opt.network_cap);

  std::vector<BasisSymbol> symbols;
  for (std::size_t i = 1; i < k; ++i) symbols.push_back(scaled_root("alpha" + std::to_string(i), kPrimes[i - 1], k));
  symbols.push_back(scaled_root("epsilon", kPrimes[k - 1], 10));
  BasisPtr basis = IrrationalBasis::create(symbols);

  std::vector<FieldElement> color_area(k + 1);
  FieldElement last(1);
  Rational last_lo(1);
  Rational min_lo = symbols.back().enclosure.lo / 2;
  for (std::size_t i = 1; i < k; ++i) {
    color_area[i] = FieldElement::symbol(basis, i - 1);
    last -= color_area[i];
    last_lo -= symbols[i - 1].enclosure.hi;
    min_lo = std::min(min_lo, symbols[i - 1].enclosure.lo);
  }
  color_area[k] = last;
  min_lo = std::min(min_lo, last_lo);
  if (min_lo <= 0) fail(ErrorCode::SignUndecided, "color weights not separated from zero");
  FieldElement eps = FieldElement::symbol(basis, k - 1);

  const std::size_t nv = net.vertex_count;
  Rational delta = min_lo / Rational(3 * (nv + 2));
  std::vector<Profile> prof;
  for (std::size_t v = 0; v < nv; ++v) {
    FieldElement depth(delta * Rational(v + 1));
    prof.push_back(Profile::make({Rational(0), Rational(1, 3), Rational(2, 3), Rational(1)},
                                 {FieldElement(0), depth, FieldElement(0)}, opt.precision_budget));
  }
  Profile vertical;

  TileSet ts;
  ts.basis = basis;
  ts.epsilon = eps;
  FieldElement half_eps = eps.scaled(Rational(1, 2));
  ts.tiles.push_back({vertical, prof[net.source], half_eps});
  ts.tiles.push_back({prof[net.sink], vertical, half_eps});
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const ColoredEdge& ce = net.edges[i];
    ts.tiles.push_back({prof[ce.from], prof[ce.to], color_area.at(ce.color)});
    if (opt.progress && i % 1024 == 0) opt.progress("tiles", i);
  }
  Integer c = const_term(e.root());
  if (c > 100000) fail(ErrorCode::SizeLimit, "constant term too large for rectangle copies");
  for (long i = 0; i < c.get_si(); ++i) ts.tiles.push_back(rectangle(eps));
  validate_tile_set(ts, opt.precision_budget);
  return ts;
}

// ---------------------------------------------------------------------------

namespace {

// Product of variable powers; exps maps a 1-based variable to its exponent.
GFNodePtr monomial(const std::map<std::size_t, std::int64_t>& exps) {
  GFNodePtr m = gfn::one();
  for (const auto& [v, e] : exps)
    for (std::int64_t i = 0; i < e; ++i) m = gfn::prod_s(m, gfn::var(v));
  return m;
}

void bump(std::map<std::size_t, std::int64_t>& m, std::size_t v, std::int64_t e) {
  if (e > 0) m[v] += e;
}

}  // namespace

MultisumGF multisum_to_gf_detailed(const BinomialMultiSum& ms_in, const TranslateOptions& opt) {
  const std::size_t d = ms_in.dims;
  const std::size_t r = ms_in.factors.size();
  if (d + 2 * r + 1 > opt.var_cap)
    fail(ErrorCode::SizeLimit, "needs " + std::to_string(d + 2 * r + 1) + " variables before splitting, cap is " +
                                   std::to_string(opt.var_cap));
  BinomialMultiSum ms = with_hint(ms_in);
  if (d > 0 && !ms.hint) fail(ErrorCode::UnboundedSupport, "no uniform bound on the summation range");

  // v_j in [L_j n, U_j n] for every n >= 1.
  std::vector<std::int64_t> lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = ms.hint->lo[j].n_coeff + std::min<std::int64_t>(ms.hint->lo[j].constant, 0);
    hi[j] = ms.hint->hi[j].n_coeff + std::max<std::int64_t>(ms.hint->hi[j].constant, 0);
  }

  // Variable layout: x_j for j with hi > lo, then a_i, b_i, then y.
  std::vector<std::size_t> xvar(d, 0);
  std::size_t next = 1;
  for (std::size_t j = 0; j < d; ++j)
    if (hi[j] > lo[j]) xvar[j] = next++;
  std::vector<std::size_t> avar(r), bvar(r);
  for (std::size_t i = 0; i < r; ++i) {
    avar[i] = next++;
    bvar[i] = next++;
  }
  const std::size_t yvar = next++;
  const std::size_t nvars = yvar;

  std::vector<std::map<std::size_t, std::int64_t>> h(d), hp(d);
  std::map<std::size_t, std::int64_t> q, qp;
  std::vector<std::int64_t> mult(nvars + 1, 0);
  for (std::size_t j = 0; j < d; ++j)
    if (xvar[j]) mult[xvar[j]] = hi[j] - lo[j];

  bool empty = false;
  // Exponent of var in the remaining factors is K n - (form + shift); the
  // v-part goes to h / h', the constant to q / q' and K balances the n-part.
  auto place = [&](std::size_t var, const AffineForm& form, std::int64_t shift) {
    std::int64_t k = form.n_coeff;
    for (std::size_t j = 0; j < d; ++j) {
      std::int64_t c = form.coeff(j);
      if (c < 0) {
        k += c * lo[j];
        if (xvar[j]) bump(h[j], var, -c);
      } else if (c > 0) {
        k += c * hi[j];
        if (xvar[j]) bump(hp[j], var, c);
      }
    }
    std::int64_t rest = -(form.constant + shift);
    if (rest >= 0) {
      bump(q, var, rest);
    } else {
      bump(qp, var, -rest);
      k += -rest;
    }
    if (k < 0) empty = true;
    mult[var] = std::max<std::int64_t>(k, 0);
  };
  for (std::size_t i = 0; i < r; ++i) {
    place(avar[i], ms.factors[i].alpha, 1);
    place(bvar[i], ms.factors[i].beta, 0);
  }

  Integer f0 = eval_multisum(ms_in, 0);
  MultisumGF out;
  if (empty) {
    out.quasi = GFExpr(1, gfn::zero());
    out.multipliers = {1};
    out.diagonal = GFExpr(1, gfn::constant(f0));
    return out;
  }

  GFNodePtr g = gfn::one();
  for (std::size_t j = 0; j < d; ++j) {
    if (!xvar[j]) continue;
    g = gfn::prod_s(g, gfn::qinv(gfn::prod_s(gfn::var(xvar[j]), monomial(h[j]))));
    g = gfn::prod_s(g, gfn::qinv(gfn::prod_s(gfn::var(xvar[j]), monomial(hp[j]))));
  }
  for (std::size_t i = 0; i < r; ++i) {
    GFNodePtr a = gfn::var(avar[i]);
    GFNodePtr ab = gfn::prod(a, gfn::var(bvar[i]));
    g = gfn::prod_s(g, gfn::sum(gfn::one(), gfn::prod(a, gfn::qinv(gfn::sum(a, ab)))));
  }
  bool use_y = !qp.empty();
  if (use_y) {
    GFNodePtr y = gfn::var(yvar);
    g = gfn::prod_s(g, gfn::prod_s(gfn::prod_s(y, monomial(q)), gfn::qinv(gfn::prod_s(y, monomial(qp)))));
    mult[yvar] = 1;
  } else {
    g = gfn::prod_s(g, monomial(q));
    mult[yvar] = 0;
  }

  out.quasi = GFExpr(nvars, g);
  out.multipliers.assign(mult.begin() + 1, mult.end());
  if (opt.progress) opt.progress("split", 0);
  GFExpr split = split_variables(out.quasi, out.multipliers, opt.var_cap);
  out.diagonal = patch_constant(split, f0);
  return out;
}

GFExpr multisum_to_gf(const BinomialMultiSum& ms, const TranslateOptions& opt) {
  return multisum_to_gf_detailed(ms, opt).diagonal;
}

}  // namespace tilecount
