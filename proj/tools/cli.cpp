#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <optional>

#include "tilecount/asymp.hpp"
#include "tilecount/catalog.hpp"
#include "tilecount/tcf.hpp"

namespace tilecount::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SizeLimit:
    case ErrorCode::UnboundedSupport:
    case ErrorCode::LimitExceeded:
    case ErrorCode::InsufficientData:
    case ErrorCode::Cancelled: return kResourceLimit;
    case ErrorCode::SignUndecided: return kPrecision;
    default: return kInputError;
  }
}

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string rep;
  std::string from;
  std::string to;
  std::size_t n0 = 0;
  std::size_t n1 = 10;
  std::size_t upto = 10;
  std::size_t mod = 1;
  unsigned precision = kDefaultPrecisionBudget;
  bool bfile = false;
  std::string name;
};

TcfDocument load(const Options& o, std::size_t index = 0) {
  if (o.inputs.size() <= index) fail(ErrorCode::InvalidArgument, "missing --input");
  return read_tcf_file(o.inputs[index]);
}

int cmd_eval(const Options& o, std::ostream& out) {
  TcfDocument doc = load(o);
  std::vector<Integer> v = eval_document_range(doc, o.n0, o.n1, o.precision);
  for (std::size_t i = 0; i < v.size(); ++i) out << (o.n0 + i) << (o.bfile ? " " : "\t") << v[i].get_str() << "\n";
  return kOk;
}

int cmd_convert(const Options& o, std::ostream& out) {
  TcfDocument doc = load(o);
  if (!o.from.empty() && rep_kind_from_string(o.from) != doc.kind())
    fail(ErrorCode::InvalidArgument, "input holds a " + to_string(doc.kind()) + " block, not " + o.from);
  TranslateOptions opt;
  opt.precision_budget = o.precision;
  out << emit_tcf(convert_document(doc, rep_kind_from_string(o.to), opt));
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.inputs.size() != 2) fail(ErrorCode::InvalidArgument, "verify takes exactly two inputs");
  TcfDocument a = load(o, 0), b = load(o, 1);
  std::vector<Integer> va = eval_document_range(a, 0, o.upto, o.precision);
  std::vector<Integer> vb = eval_document_range(b, 0, o.upto, o.precision);
  std::optional<std::size_t> first;
  for (std::size_t n = 0; n <= o.upto; ++n) {
    bool same = va[n] == vb[n];
    if (!same && !first) first = n;
    out << n << "\t" << va[n].get_str() << "\t" << vb[n].get_str() << "\t" << (same ? "PASS" : "FAIL") << "\n";
  }
  if (first) {
    out << "FAIL: first divergence at n = " << *first << " (" << va[*first].get_str() << " vs "
        << vb[*first].get_str() << ")\n";
    return kVerifyFailed;
  }
  out << "PASS: equal for n = 0.." << o.upto << "\n";
  return kOk;
}

int cmd_catalog_list(std::ostream& out) {
  for (const CatalogEntry& e : catalog_entries()) {
    std::string reps;
    auto add = [&](bool has, const char* name) {
      if (!has) return;
      if (!reps.empty()) reps += ",";
      reps += name;
    };
    add(e.tiles.has_value(), "tiles");
    add(e.gf.has_value(), "gf");
    add(e.multisum.has_value(), "multisum");
    add(e.balanced.has_value(), "balanced");
    out << e.name << "\t" << reps << "\t" << e.description << "\n";
  }
  return kOk;
}

int cmd_catalog_emit(const Options& o, std::ostream& out) {
  std::optional<CatalogEntry> e = find_entry(o.name);
  if (!e) fail(ErrorCode::InvalidArgument, "no catalog entry named '" + o.name + "'");
  RepKind k = rep_kind_from_string(o.rep.empty() ? "multisum" : o.rep);
  std::optional<TcfDocument> doc;
  if (k == RepKind::Tiles && e->tiles) doc = make_document(*e->tiles);
  if (k == RepKind::GF && e->gf) doc = make_document(*e->gf);
  if (k == RepKind::Multisum && e->multisum) doc = make_document(*e->multisum);
  if (!doc) fail(ErrorCode::InvalidArgument, "entry '" + o.name + "' has no " + to_string(k) + " representation");
  out << "# " << e->name << ": " << e->description << "\n" << emit_tcf(*doc);
  return kOk;
}

int cmd_asymp(const Options& o, std::ostream& out) {
  if (o.mod == 0) fail(ErrorCode::InvalidArgument, "--mod must be positive");
  if (o.upto + 1 < kMinClassSize * o.mod)
    fail(ErrorCode::InsufficientData,
         "--upto must be at least " + std::to_string(kMinClassSize * o.mod - 1) + " for --mod " + std::to_string(o.mod));
  TcfDocument doc = load(o);
  std::vector<Integer> v = eval_document_range(doc, 0, o.upto, o.precision);
  out << format_report(asymp_fit(v, o.mod));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counting with tile sets, N-rational diagonals and binomial multisums", "tilecount"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* c, bool many) {
    auto* opt = c->add_option("-i,--input", o.inputs, "TCF input file")->required();
    if (!many) opt->expected(1);
  };
  auto precision = [&](CLI::App* c) {
    c->add_option("--precision", o.precision, "refinement budget for sign decisions")->capture_default_str();
  };

  CLI::App* eval = app.add_subcommand("eval", "print f(n) for n0 <= n <= n1");
  input(eval, false);
  eval->add_option("--n0", o.n0)->capture_default_str();
  eval->add_option("--n1", o.n1)->capture_default_str();
  eval->add_flag("--bfile", o.bfile, "space-separated b-file lines");
  eval->add_option("--rep", o.rep, "expected representation");
  precision(eval);

  CLI::App* convert = app.add_subcommand("convert", "translate to another representation");
  input(convert, false);
  convert->add_option("--from", o.from, "expected input representation");
  convert->add_option("--to", o.to, "tiles, gf or multisum")->required();
  precision(convert);

  CLI::App* verify = app.add_subcommand("verify", "compare two files for n = 0..upto");
  verify->add_option("-i,--input,files", o.inputs, "two TCF files")->required()->expected(2);
  verify->add_option("--upto", o.upto)->capture_default_str();
  precision(verify);

  CLI::App* catalog = app.add_subcommand("catalog", "built-in examples");
  catalog->require_subcommand(1);
  CLI::App* list = catalog->add_subcommand("list", "list entries");
  CLI::App* emit = catalog->add_subcommand("emit", "write an entry as TCF");
  emit->add_option("name", o.name)->required();
  emit->add_option("--rep", o.rep, "tiles, gf or multisum")->capture_default_str();

  CLI::App* asymp = app.add_subcommand("asymp", "growth fit per residue class");
  input(asymp, false);
  asymp->add_option("--upto", o.upto)->capture_default_str();
  asymp->add_option("--mod", o.mod)->capture_default_str();
  precision(asymp);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (CLI::App* sub : app.get_subcommands()) {
      err << sub->help();
      return kInputError;
    }
    err << app.help();
    return kInputError;
  }
  if (eval->parsed() && o.n0 > o.n1) {
    err << "error: --n0 must not exceed --n1\n";
    return kInputError;
  }

  try {
    if (eval->parsed()) {
      if (!o.rep.empty()) {
        TcfDocument doc = load(o);
        if (rep_kind_from_string(o.rep) != doc.kind())
          fail(ErrorCode::InvalidArgument, "input holds a " + to_string(doc.kind()) + " block, not " + o.rep);
      }
      return cmd_eval(o, out);
    }
    if (convert->parsed()) return cmd_convert(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (list->parsed()) return cmd_catalog_list(out);
    if (emit->parsed()) return cmd_catalog_emit(o, out);
    if (asymp->parsed()) return cmd_asymp(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kResourceLimit;
  }
  return kInputError;
}

}  // namespace tilecount::cli
