#include "sharpwt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "sharpwt/characteristics.hpp"
#include "sharpwt/csv.hpp"
#include "sharpwt/errors.hpp"
#include "sharpwt/opnd.hpp"
#include "sharpwt/parallel.hpp"
#include "sharpwt/sharpness.hpp"

namespace sharpwt {

namespace {

std::vector<double> parse_list(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument(flag + ": not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(flag + ": empty list");
  return out;
}

struct GridArgs {
  std::string domain = "-1,1";
  std::size_t n = 256;
  std::string grade = "uniform";
  double center = 0.0;

  void add(CLI::App* app) {
    app->add_option("--domain", domain, "domain a,b");
    app->add_option("--n", n, "cell count per axis");
    app->add_option("--grade", grade, "uniform | left:r | right:r | about:r (about --center)");
    app->add_option("--center", center, "singular point of built-in families");
  }

  GridPtr build() const {
    const auto d = parse_list(domain, "--domain");
    if (d.size() != 2) throw std::invalid_argument("--domain expects a,b");
    if (grade == "uniform") return share(Grid1D::uniform(d[0], d[1], n));
    const auto colon = grade.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("--grade: unknown grading '" + grade + "'");
    const std::string mode = grade.substr(0, colon);
    const auto r = parse_list(grade.substr(colon + 1), "--grade");
    if (r.size() != 1) throw std::invalid_argument("--grade expects one ratio");
    if (mode == "left") return share(Grid1D::geometric_toward(d[0], d[1], n, Endpoint::Left, r[0]));
    if (mode == "right") return share(Grid1D::geometric_toward(d[0], d[1], n, Endpoint::Right, r[0]));
    if (mode == "about") return share(Grid1D::geometric_about(d[0], d[1], n, center, r[0]));
    throw std::invalid_argument("--grade: unknown grading '" + grade + "'");
  }
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return in;
}

// Built-in family or CSV file, as a 1D function on the grid arguments.
GridFn source_1d(const std::string& kind, double value, double gamma, const std::string& input, const GridArgs& ga) {
  if (kind == "csv") {
    auto in = open_input(input);
    return read_gridfn_csv(in);
  }
  const GridPtr g = ga.build();
  if (kind == "const") return GridFn::constant(g, value);
  if (kind == "zero") return GridFn::zero(g);
  if (kind == "power") return power_weight(g, gamma, ga.center);
  if (kind.rfind("values:", 0) == 0) return GridFn(g, parse_list(kind.substr(7), "values"));
  throw std::invalid_argument("unknown function source '" + kind + "'");
}

GridFn2D source_2d(const std::string& kind, double value, double gamma, const std::string& input, const GridArgs& ga) {
  if (kind == "csv") {
    auto in = open_input(input);
    return read_gridfn2d_csv(in);
  }
  const GridFn u = source_1d(kind, value, gamma, input, ga);
  return tensor(u, u);
}

bool center_inside(const GridArgs& ga) {
  const auto d = parse_list(ga.domain, "--domain");
  return d.size() == 2 && ga.center >= d[0] && ga.center <= d[1];
}

// |x - c|^gamma and the dual densities the named characteristic integrates must be locally integrable.
void check_integrable(const std::string& kind, double gamma, const Exponents& e) {
  std::vector<double> powers{gamma};
  if (kind.rfind("apq", 0) == 0) {
    powers = {gamma * e.q(), -gamma * e.p_conj()};
  } else {
    powers.push_back(gamma * (1.0 - e.p_conj()));
  }
  for (double k : powers) {
    if (k <= -1.0) throw DomainError("power weight exponent " + format_real(gamma) + " is not integrable for this characteristic");
  }
}

Side parse_side(const std::string& s) {
  if (s == "plus") return Side::Plus;
  if (s == "minus") return Side::Minus;
  throw std::invalid_argument("--side must be plus or minus");
}

PotentialKind parse_potential(const std::string& s) {
  if (s == "weyl") return PotentialKind::Weyl;
  if (s == "rl") return PotentialKind::RiemannLiouville;
  throw std::invalid_argument("--potential must be weyl or rl");
}

MaxAlgo parse_algo(const std::string& s) {
  if (s == "hull") return MaxAlgo::Hull;
  if (s == "brute") return MaxAlgo::Brute;
  throw std::invalid_argument("--algo must be hull or brute");
}

struct CharArgs {
  std::string kind;
  double p = 0.0;
  double alpha = 0.0;
  std::string weight = "const";
  double value = 1.0;
  double gamma = 0.0;
  std::string input;
  std::string v = "const:1";
  GridArgs grid;
};

using Report1 = std::function<CharacteristicReport(const GridFn&, const Exponents&)>;
using Report2 = std::function<CharacteristicReport(const GridFn2D&, const Exponents&)>;
using ReportTwo = std::function<CharacteristicReport(const GridFn&, const GridFn&, const Exponents&)>;

const std::map<std::string, Report1>& table_1d() {
  static const std::map<std::string, Report1> t = {
      {"ap", [](const GridFn& w, const Exponents& e) { return ap(Weight(w, e.p())); }},
      {"ap_plus", [](const GridFn& w, const Exponents& e) { return ap_oneside(Weight(w, e.p()), Side::Plus); }},
      {"ap_minus", [](const GridFn& w, const Exponents& e) { return ap_oneside(Weight(w, e.p()), Side::Minus); }},
      {"apq_plus", [](const GridFn& w, const Exponents& e) { return apq_oneside(w, e, Side::Plus); }},
      {"apq_minus", [](const GridFn& w, const Exponents& e) { return apq_oneside(w, e, Side::Minus); }},
      {"apq_rooted", [](const GridFn& w, const Exponents& e) { return apq_rooted(w, e, Variant::TwoSided); }},
      {"apq_rooted_plus", [](const GridFn& w, const Exponents& e) { return apq_rooted(w, e, Variant::Plus); }},
      {"apq_rooted_minus", [](const GridFn& w, const Exponents& e) { return apq_rooted(w, e, Variant::Minus); }},
  };
  return t;
}

const std::map<std::string, Report2>& table_2d() {
  static const std::map<std::string, Report2> t = [] {
    std::map<std::string, Report2> m = {
        {"ap_strong", [](const GridFn2D& w, const Exponents& e) { return ap_strong(Weight2D(w, e.p())); }},
        {"ap_strong_plus",
         [](const GridFn2D& w, const Exponents& e) { return ap_strong_oneside(Weight2D(w, e.p()), Side::Plus); }},
        {"ap_strong_minus",
         [](const GridFn2D& w, const Exponents& e) { return ap_strong_oneside(Weight2D(w, e.p()), Side::Minus); }},
        {"apq_strong", [](const GridFn2D& w, const Exponents& e) { return apq_strong(w, e); }},
        {"apq_strong_plus", [](const GridFn2D& w, const Exponents& e) { return apq_strong_oneside(w, e, Side::Plus); }},
        {"apq_strong_minus",
         [](const GridFn2D& w, const Exponents& e) { return apq_strong_oneside(w, e, Side::Minus); }},
    };
    for (Variant v : {Variant::TwoSided, Variant::Plus, Variant::Minus}) {
      for (Axis a : {Axis::X, Axis::Y}) {
        m[kind_name(CharKind::ApAxis, v, a)] = [v, a](const GridFn2D& w, const Exponents& e) {
          return ap_uniform_axis(Weight2D(w, e.p()), a, v);
        };
        m[kind_name(CharKind::ApqAxis, v, a)] = [v, a](const GridFn2D& w, const Exponents& e) {
          return apq_uniform_axis(w, e, a, v);
        };
      }
    }
    return m;
  }();
  return t;
}

const std::map<std::string, ReportTwo>& table_two_weight() {
  static const std::map<std::string, ReportTwo> t = {
      {"glo_plus", [](const GridFn& v, const GridFn& w, const Exponents& e) { return glo_constant(v, w, e, Side::Plus); }},
      {"glo_minus", [](const GridFn& v, const GridFn& w, const Exponents& e) { return glo_constant(v, w, e, Side::Minus); }},
      {"gk_plus", [](const GridFn& v, const GridFn& w, const Exponents& e) { return gk_constant(v, w, e, Side::Plus); }},
      {"gk_minus", [](const GridFn& v, const GridFn& w, const Exponents& e) { return gk_constant(v, w, e, Side::Minus); }},
      {"mt_plus",
       [](const GridFn& v, const GridFn& w, const Exponents& e) { return sawyer_mt_constant(v, w, e, Side::Plus); }},
      {"mt_minus",
       [](const GridFn& v, const GridFn& w, const Exponents& e) { return sawyer_mt_constant(v, w, e, Side::Minus); }},
      {"lt_weyl", [](const GridFn& v, const GridFn& w, const Exponents& e) {
         return lorente_lt_constant(v, w, e, PotentialKind::Weyl);
       }},
      {"lt_rl", [](const GridFn& v, const GridFn& w, const Exponents& e) {
         return lorente_lt_constant(v, w, e, PotentialKind::RiemannLiouville);
       }},
  };
  return t;
}

GridFn density_v(const std::string& spec, const GridArgs& ga) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string head = spec.substr(0, colon);
    if (head == "const" || head == "power") {
      const auto x = parse_list(spec.substr(colon + 1), "--v");
      if (x.size() != 1) throw std::invalid_argument("--v expects one parameter");
      return head == "const" ? source_1d("const", x[0], 0.0, "", ga) : source_1d("power", 1.0, x[0], "", ga);
    }
  }
  auto in = open_input(spec);
  return read_gridfn_csv(in);
}

int cmd_characteristic(const CharArgs& a, std::ostream& out, std::ostream& err) {
  const Exponents e = Exponents::make(a.p, a.alpha);
  if (a.weight == "power" && center_inside(a.grid)) check_integrable(a.kind, a.gamma, e);
  CharacteristicReport r;
  if (auto it = table_1d().find(a.kind); it != table_1d().end()) {
    r = it->second(source_1d(a.weight, a.value, a.gamma, a.input, a.grid), e);
  } else if (auto it2 = table_2d().find(a.kind); it2 != table_2d().end()) {
    r = it2->second(source_2d(a.weight, a.value, a.gamma, a.input, a.grid), e);
  } else if (auto it3 = table_two_weight().find(a.kind); it3 != table_two_weight().end()) {
    const GridFn w = source_1d(a.weight, a.value, a.gamma, a.input, a.grid);
    r = it3->second(density_v(a.v, a.grid), w, e);
  } else {
    throw std::invalid_argument("--kind: unknown characteristic '" + a.kind + "'");
  }
  out << report_csv_header() << '\n' << report_csv_row(r) << '\n';
  err << "characteristic=" << r.name << " threads=" << thread_count() << '\n';
  return kExitOk;
}

struct ApplyArgs {
  std::string op;
  std::string side = "plus";
  double alpha = 0.0;
  std::string potential = "weyl";
  std::string algo = "hull";
  std::string strong_algo = "rectangles";
  int dims = 1;
  std::string function = "zero";
  double value = 1.0;
  double gamma = 0.0;
  std::string input;
  GridArgs grid;
};

std::optional<Op1D> op_1d(const ApplyArgs& a) {
  if (a.op == "identity") return Op1D::identity();
  if (a.op == "maximal_oneside") return Op1D::maximal(parse_side(a.side), parse_algo(a.algo));
  if (a.op == "maximal_twosided") return Op1D::maximal_twosided(parse_algo(a.algo));
  if (a.op == "frac_maximal_oneside") return Op1D::frac_maximal(parse_side(a.side), a.alpha);
  if (a.op == "potential") return Op1D::potential_op(parse_potential(a.potential), a.alpha);
  if (a.op == "hilbert") return Op1D::hilbert_op();
  return std::nullopt;
}

GridFn2D op_2d(const ApplyArgs& a, const GridFn2D& f) {
  const auto strong = [&] {
    if (a.strong_algo == "rectangles") return StrongAlgo::Rectangles;
    if (a.strong_algo == "composition") return StrongAlgo::Composition;
    throw std::invalid_argument("--strong-algo must be rectangles or composition");
  };
  if (a.op == "identity") return f;
  if (a.op == "strong_maximal") return strong_maximal(f, strong());
  if (a.op == "strong_maximal_oneside") {
    const OnesidedAlgo algo = strong() == StrongAlgo::Rectangles ? OnesidedAlgo::Brute : OnesidedAlgo::Composition;
    return strong_maximal_oneside(f, parse_side(a.side), a.alpha, algo);
  }
  if (a.op == "product_potential") return product_potential(f, a.alpha, parse_potential(a.potential));
  if (a.op == "product_hilbert") return product_hilbert(f);
  throw std::invalid_argument("--op: unknown 2D operation '" + a.op + "'");
}

int cmd_apply(const ApplyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.dims != 1 && a.dims != 2) throw std::invalid_argument("--dims must be 1 or 2");
  if (a.dims == 1) {
    const auto op = op_1d(a);
    if (!op) throw std::invalid_argument("--op: unknown 1D operation '" + a.op + "'");
    write_csv(out, (*op)(source_1d(a.function, a.value, a.gamma, a.input, a.grid)));
  } else {
    write_csv(out, op_2d(a, source_2d(a.function, a.value, a.gamma, a.input, a.grid)));
  }
  err << "apply=" << a.op << " dims=" << a.dims << " threads=" << thread_count() << '\n';
  return kExitOk;
}

struct ExperimentArgs {
  std::string id;
  std::optional<double> p;
  std::optional<double> alpha;
  std::string eps;
  std::optional<std::size_t> n;
  std::string out_dir = ".";
  double tolerance = 0.15;
};

int cmd_experiment(const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  ExperimentOverrides ov;
  ov.p = a.p;
  ov.alpha = a.alpha;
  ov.n = a.n;
  if (!a.eps.empty()) ov.eps_list = parse_list(a.eps, "--eps");
  ExperimentSpec spec;
  try {
    spec = build_experiment(a.id, ov);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("unknown experiment id '" + a.id + "'");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult r = run_sweep(spec);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::filesystem::path path = std::filesystem::path(a.out_dir) / (a.id + ".csv");
  {
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write '" + path.string() + "'");
    write_sweep_csv(f, r);
  }
  out << fit_line(r) << '\n';
  err << "experiment=" << a.id << " n=" << r.n << " threads=" << thread_count() << " seconds=" << secs
      << " csv=" << path.string() << '\n';
  return slope_within(r, a.tolerance) ? kExitOk : kExitToleranceFail;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Appends the entries of a `key = value` file as flags, skipping keys given on the command line.
// The key `id` supplies the experiment id when none is given.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  std::ifstream in(*path);
  if (!in) throw std::invalid_argument("cannot read config file '" + *path + "'");
  const bool is_experiment = !args.empty() && args[0] == "experiment";
  const bool has_id = is_experiment && args.size() > 1 && args[1].rfind("--", 0) != 0;
  std::vector<std::string> extra;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(no, "expected key = value in '" + *path + "'");
    const std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty() || key == "config") throw ParseError(no, "bad key in '" + *path + "'");
    if (key == "id" && is_experiment) {
      if (!has_id) args.insert(args.begin() + 1, value);
      continue;
    }
    if (has_flag(args, "--" + key)) continue;
    extra.push_back("--" + key);
    extra.push_back(value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted-inequality characteristics, operators and sharpness experiments", "sharpwt"};
  app.require_subcommand(1);

  CharArgs ca;
  auto* ch = app.add_subcommand("characteristic", "compute one characteristic and print its report row");
  ch->add_option("--config", "flat key = value file mirroring the flags; flags override it");
  ch->add_option("--kind", ca.kind, "characteristic name, e.g. ap, ap_plus, apq_minus, ap_strong, glo_plus")->required();
  ch->add_option("--p", ca.p, "exponent p > 1")->required();
  ch->add_option("--alpha", ca.alpha, "fractional order in [0, 1)");
  ch->add_option("--weight", ca.weight, "const | power | csv");
  ch->add_option("--value", ca.value, "constant weight value");
  ch->add_option("--gamma", ca.gamma, "power weight |x - center|^gamma");
  ch->add_option("--input", ca.input, "CSV file for --weight csv");
  ch->add_option("--v", ca.v, "two-weight density: const:c | power:g | CSV file");
  ca.grid.add(ch);

  ApplyArgs aa;
  auto* ap_cmd = app.add_subcommand("apply", "apply an operator and print the result as CSV");
  ap_cmd->add_option("--config", "flat key = value file mirroring the flags; flags override it");
  ap_cmd->add_option("--op", aa.op,
                     "identity | maximal_oneside | maximal_twosided | frac_maximal_oneside | potential | hilbert"
                     " | strong_maximal | strong_maximal_oneside | product_potential | product_hilbert")
      ->required();
  ap_cmd->add_option("--side", aa.side, "plus | minus");
  ap_cmd->add_option("--alpha", aa.alpha, "fractional order");
  ap_cmd->add_option("--potential", aa.potential, "weyl | rl");
  ap_cmd->add_option("--algo", aa.algo, "hull | brute (1D maximal operators)");
  ap_cmd->add_option("--strong-algo", aa.strong_algo, "rectangles | composition (2D maximal operators)");
  ap_cmd->add_option("--dims", aa.dims, "1 or 2");
  ap_cmd->add_option("--function", aa.function, "zero | const | power | values:v1,v2,... | csv");
  ap_cmd->add_option("--value", aa.value, "constant function value");
  ap_cmd->add_option("--gamma", aa.gamma, "power function |x - center|^gamma");
  ap_cmd->add_option("--input", aa.input, "CSV file for --function csv");
  aa.grid.add(ap_cmd);

  ExperimentArgs ea;
  auto* ex = app.add_subcommand("experiment", "run a catalog sweep, write <id>.csv and print the fit line");
  ex->add_option("--config", "flat key = value file mirroring the flags; flags override it");
  ex->add_option("id", ea.id, "catalog id")->required();
  ex->add_option("--p", ea.p, "override p");
  ex->add_option("--alpha", ea.alpha, "override alpha");
  ex->add_option("--eps", ea.eps, "override the eps ladder, comma separated");
  ex->add_option("--n", ea.n, "override the cell count");
  ex->add_option("--out-dir", ea.out_dir, "directory for <id>.csv");
  ex->add_option("--tolerance", ea.tolerance, "relative slope tolerance");

  std::vector<std::string> full;
  try {
    full = expand_config(args);
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    std::vector<std::string> rev(full.rbegin(), full.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    configure_threads();
    if (ch->parsed()) return cmd_characteristic(ca, out, err);
    if (ap_cmd->parsed()) return cmd_apply(aa, out, err);
    return cmd_experiment(ea, out, err);
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace sharpwt
