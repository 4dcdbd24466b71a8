// satquad command-line driver.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "satquad/satquad.hpp"

namespace {

using namespace satquad;
using bounds::real;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

// Argument-class errors map to the usage exit code.
int exit_code_for(Errc e) {
  switch (e) {
    case Errc::kInvalidArgument:
    case Errc::kNonPrime:
    case Errc::kOutOfRange:
    case Errc::kSizeLimit:
    case Errc::kOutOfRegion:
    case Errc::kInapplicable:
      return kExitUsage;
    default:
      return kExitValidation;
  }
}

std::string fmt(real v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", digits, v);
  return buf;
}

template <class T>
std::string cell(const std::optional<T>& v, int digits = 6) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) return fmt(*v, digits);
  else return std::to_string(*v);
}

std::string str(u128 v) { return satquad::to_string(v); }

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(Errc::kInvalidArgument, "cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kInvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void warn_prime_power(std::uint64_t q) {
  if (!is_prime_power(q)) std::cerr << "warning: q = " << q << " is not a prime power\n";
}

// ---------------------------------------------------------------- field-info

int cmd_field_info(std::uint64_t q, bool tables) {
  const GaloisField f = GaloisField::of_order(q);
  std::cout << f.spec_line() << '\n' << "primitive " << f.primitive_element() << '\n';
  if (tables && q <= 16) {
    std::cout << "mul\n";
    for (Elem a = 0; a < f.order(); ++a) {
      for (Elem b = 0; b < f.order(); ++b) std::cout << (b ? " " : "") << f.mul(a, b);
      std::cout << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- quadric-check

int cmd_quadric_check(std::uint64_t q) {
  const auto quadric = EllipticQuadric::of_order(q);
  const auto& sp = quadric.space();
  std::cout << quadric.field().spec_line() << '\n' << quadric.form_line() << '\n';
  std::cout << "points " << quadric.size() << " expected " << q * q + 1 << '\n';
  std::uint64_t tangent = 0, secant = 0, bad = 0;
  for (std::uint32_t i = 0; i < sp.num_planes(); ++i) {
    const auto n = quadric.plane_section(PlaneId{i}).size();
    if (n == 1) ++tangent;
    else if (n == q + 1) ++secant;
    else ++bad;
  }
  std::cout << "planes tangent " << tangent << " secant " << secant << " other " << bad << '\n';
  const bool ok = bad == 0 && tangent == q * q + 1 && quadric.size() == q * q + 1;
  std::cout << (ok ? "ok" : "FAILED") << '\n';
  return ok ? kExitOk : kExitValidation;
}

// ---------------------------------------------------------------- saturate

struct SaturateArgs {
  std::uint64_t q = 0;
  std::string strategy = "greedy-max";
  std::uint64_t seed = 1;
  std::size_t pool = 50;
  std::string out;
  std::string json_out;
  unsigned threads = 0;
  std::string delta = "auto";
  bool mark_lines = false;
  bool quiet = false;
};

DeltaStrategy parse_delta(const std::string& s) {
  if (s == "auto") return DeltaStrategy::kAuto;
  if (s == "plane") return DeltaStrategy::kPlaneMarking;
  if (s == "pencil") return DeltaStrategy::kPencilScan;
  throw Error(Errc::kInvalidArgument, "delta must be auto, plane or pencil");
}

int cmd_saturate(const SaturateArgs& a) {
  if (!is_prime_power(a.q)) throw Error(Errc::kNonPrime, std::to_string(a.q) + " is not a prime power");
  GreedyConfig cfg;
  cfg.strategy = parse_strategy(a.strategy);
  cfg.seed = a.seed;
  cfg.pool_size = a.pool;
  cfg.threads = a.threads;
  cfg.delta = parse_delta(a.delta);
  cfg.mark_lines = a.mark_lines;

  const auto quadric = EllipticQuadric::of_order(a.q);
  const RunResult res = run(quadric, cfg);
  const bounds::BoundA ba = bounds::bound_a(a.q);

  bool dominated = true;
  std::uint64_t u = res.trace.initial_uncovered;
  if (u > ba.uncovered.front()) dominated = false;
  for (const auto& s : res.trace.steps) {
    if (s.bound_a_cap && s.uncovered_after > *s.bound_a_cap) dominated = false;
  }

  if (!a.quiet) {
    std::cout << "# w chosen delta uncovered_after boundA_cap guaranteed mean_delta\n";
    std::cout << "# initial uncovered " << res.trace.initial_uncovered << '\n';
    for (const auto& s : res.trace.steps) {
      std::cout << s.w << ' ' << s.chosen.value << ' ' << s.delta << ' ' << s.uncovered_after << ' '
                << (s.bound_a_cap ? str(*s.bound_a_cap) : "-") << ' ' << s.guaranteed << ' '
                << fmt(s.delta_mean, 2) << (s.augmentation ? " augment" : "") << '\n';
    }
  }
  std::cout << "q " << a.q << " strategy " << strategy_name(cfg.strategy) << " n " << res.set.size()
            << " nA " << ba.n_a << " verified yes"
            << " within_boundA " << (res.set.size() <= ba.n_a ? "yes" : "no") << " trajectory_dominated "
            << (dominated ? "yes" : "no") << '\n';

  if (!a.out.empty()) write_text(a.out, set_to_string(quadric, res.set));
  if (!a.json_out.empty()) {
    json j;
    j["q"] = a.q;
    j["strategy"] = std::string(strategy_name(cfg.strategy));
    j["seed"] = a.seed;
    j["pool"] = a.pool;
    j["n"] = res.set.size();
    j["nA"] = ba.n_a;
    j["augmented"] = res.augmented;
    j["initial_uncovered"] = res.trace.initial_uncovered;
    json steps = json::array();
    for (const auto& s : res.trace.steps) {
      steps.push_back({{"w", s.w},
                       {"chosen", s.chosen.value},
                       {"delta", s.delta},
                       {"uncovered_after", s.uncovered_after},
                       {"boundA_cap", s.bound_a_cap ? str(*s.bound_a_cap) : ""},
                       {"guaranteed", s.guaranteed},
                       {"mean_delta", s.delta_mean},
                       {"augmentation", s.augmentation}});
    }
    j["steps"] = steps;
    json pts = json::array();
    for (PointId p : res.set) {
      const Vec4 v = quadric.space().point(p);
      pts.push_back({v[0], v[1], v[2], v[3]});
    }
    j["points"] = pts;
    write_text(a.json_out, j.dump(2) + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct LoadedSet {
  SetFile file;
  EllipticQuadric quadric;
  std::vector<PointId> ids;
};

LoadedSet load_set(const std::string& path) {
  SetFile file = read_set_string(read_text(path));
  EllipticQuadric quadric(ProjectiveSpace3(file.field()), file.b, file.c);
  std::vector<PointId> ids;
  for (const Vec4& v : file.points) ids.push_back(quadric.space().point_id(v));
  return {std::move(file), std::move(quadric), std::move(ids)};
}

int cmd_verify(const std::string& path) {
  const LoadedSet s = load_set(path);
  std::size_t on_q = 0;
  for (PointId p : s.ids) on_q += s.quadric.contains(p) ? 1 : 0;
  const VerifyResult r = verify_2saturating(s.quadric.space(), s.ids);
  std::cout << "q " << s.file.q() << " n " << s.ids.size() << " on_quadric " << on_q << '\n';
  if (r.saturating) {
    std::cout << "2-saturating yes\n";
    return kExitOk;
  }
  const Vec4 w = s.quadric.space().point(*r.witness);
  std::cout << "2-saturating no uncovered " << r.uncovered << " witness " << w[0] << ' ' << w[1] << ' ' << w[2]
            << ' ' << w[3] << '\n';
  return kExitValidation;
}

// ---------------------------------------------------------------- bounds-sweep

struct SweepArgs {
  std::uint64_t from = 7951, to = 100000;
  std::size_t samples = 200;
  std::string bounds = "A,B,C,knw";
  real k = bounds::constants::kKMax;
  real eps = 1e-3L;
  std::string csv = "-";
  unsigned threads = 0;
};

std::vector<bounds::BoundReport> sweep(const std::vector<std::uint64_t>& qs, const bounds::ReportOptions& opt,
                                       unsigned threads) {
  std::vector<bounds::BoundReport> out(qs.size());
  const std::size_t n = std::min<std::size_t>(resolve_threads(threads), qs.size());
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex m;
  for (std::size_t t = 0; t < n; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < qs.size(); i += n) out[i] = bounds::report(qs[i], opt);
      } catch (...) {
        std::lock_guard lock(m);
        failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

int cmd_bounds_sweep(const SweepArgs& a) {
  bounds::ReportOptions opt;
  opt.a = opt.b = opt.c = opt.d = opt.e = opt.knw = opt.ratio = false;
  opt.k = a.k;
  opt.eps = a.eps;
  std::stringstream list(a.bounds);
  std::string item;
  while (std::getline(list, item, ',')) {
    if (item == "A") opt.a = true;
    else if (item == "B") opt.b = true;
    else if (item == "C") opt.c = true;
    else if (item == "D") opt.d = true;
    else if (item == "E") opt.e = true;
    else if (item == "knw") opt.knw = true;
    else if (item == "ratio") opt.ratio = true;
    else throw Error(Errc::kInvalidArgument, "unknown bound '" + item + "'");
  }
  if (opt.knw && opt.a) opt.ratio = true;
  const auto qs = bounds::log_spaced(a.from, a.to, a.samples);
  for (std::uint64_t q : qs) warn_prime_power(q);
  const auto reports = sweep(qs, opt, a.threads);

  std::ostringstream out;
  out << "q,nA,nA_norm,nB,nB_norm,nC,nC_norm,nknw,nknw_norm,ratio_knw_A";
  if (opt.d) out << ",nD,nD_norm";
  if (opt.e) out << ",nE,nE_norm";
  out << '\n';
  for (const auto& r : reports) {
    const auto q = r.q;
    auto norm_int = [q](std::optional<std::uint64_t> v) -> std::optional<real> {
      if (!v) return std::nullopt;
      return bounds::normalized(static_cast<real>(*v), static_cast<real>(q));
    };
    out << q << ',' << cell(r.n_a) << ',' << cell(norm_int(r.n_a)) << ',' << cell(r.n_b) << ','
        << cell(norm_int(r.n_b)) << ',' << cell(r.n_c) << ',' << cell(bounds::BoundReport::norm(r.n_c, q)) << ','
        << cell(r.n_knw) << ',' << cell(bounds::BoundReport::norm(r.n_knw, q)) << ',' << cell(r.ratio_knw_a);
    if (opt.d) out << ',' << cell(r.n_d) << ',' << cell(bounds::BoundReport::norm(r.n_d, q));
    if (opt.e) out << ',' << cell(r.n_e) << ',' << cell(bounds::BoundReport::norm(r.n_e, q));
    out << '\n';
  }
  write_text(a.csv, out.str());
  return kExitOk;
}

// ---------------------------------------------------------------- compare

int cmd_compare(const SweepArgs& a) {
  if (a.from < bounds::constants::kKnownFloor) {
    throw Error(Errc::kOutOfRegion, "the known bound needs q >= 14983");
  }
  bounds::ReportOptions opt;
  opt.b = opt.c = opt.e = false;
  opt.d = true;
  opt.eps = a.eps;
  const auto qs = bounds::log_spaced(a.from, a.to, a.samples);
  for (std::uint64_t q : qs) warn_prime_power(q);
  const auto reports = sweep(qs, opt, a.threads);
  std::ostringstream out;
  out << "q,nA,nknw,ratio_knw_A,nD,ratio_knw_D\n";
  for (const auto& r : reports) {
    out << r.q << ',' << cell(r.n_a) << ',' << cell(r.n_knw) << ',' << cell(r.ratio_knw_a) << ','
        << cell(r.n_d) << ',' << fmt(*r.n_knw / *r.n_d) << '\n';
  }
  write_text(a.csv, out.str());
  return kExitOk;
}

// ---------------------------------------------------------------- table1

int cmd_table1(const std::string& csv, const std::string& json_out) {
  const auto rows = bounds::table1();
  std::cout << "k          ceil(W(k))              nC_norm   nknw_norm  ratio\n";
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %-23s %-9s %-10s %s%s\n", fmt(r.k, 4).c_str(),
                  str(r.root.ceil_w).c_str(), cell(r.nc_norm, 4).c_str(), cell(r.nknw_norm, 4).c_str(),
                  cell(r.ratio, 4).c_str(), r.root.above_v ? "" : "< V, not usable");
    std::cout << line;
  }
  if (!csv.empty()) {
    std::ostringstream out;
    out << "k,ceilW,nC_norm,nknw_norm,ratio\n";
    for (const auto& r : rows) {
      out << fmt(r.k, 4) << ',' << str(r.root.ceil_w) << ',' << cell(r.nc_norm) << ',' << cell(r.nknw_norm)
          << ',' << cell(r.ratio) << '\n';
    }
    write_text(csv, out.str());
  }
  if (!json_out.empty()) {
    json j = json::array();
    for (const auto& r : rows) {
      json row{{"k", static_cast<double>(r.k)}, {"ceilW", str(r.root.ceil_w)}, {"above_V", r.root.above_v}};
      if (r.nc_norm) row["nC_norm"] = static_cast<double>(*r.nc_norm);
      if (r.nknw_norm) row["nknw_norm"] = static_cast<double>(*r.nknw_norm);
      if (r.ratio) row["ratio"] = static_cast<double>(*r.ratio);
      j.push_back(row);
    }
    write_text(json_out, j.dump(2) + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------- solve-wk

int cmd_solve_wk(const std::string& k_text) {
  const real k = std::stold(k_text);
  const auto root = bounds::solve_w(k);
  std::cout << "k " << k_text << " ceilW " << str(root.ceil_w) << (root.above_v ? "" : " below V") << '\n';
  if (root.above_v) {
    const auto c = bounds::bound_c_value(k, static_cast<real>(root.ceil_w));
    std::cout << "nC " << fmt(c.value, 4) << " nC_norm " << fmt(c.normalized) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- lift

int cmd_lift(std::uint64_t q, unsigned r, std::optional<std::uint64_t> n0, bool known) {
  std::cout << "r " << r << " t " << bounds::lift_t(r) << " q " << q << " Delta " << str(bounds::delta_lift(r, q))
            << '\n';
  if (n0) std::cout << "n0 " << *n0 << " n " << str(bounds::lift_length(*n0, r, q)) << '\n';
  if (known) {
    const real v = bounds::known_lift(r, q);
    std::cout << "nknw " << fmt(v, 4) << " normalized " << fmt(v / bounds::lift_scale(r, static_cast<real>(q)))
              << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- code-check

int cmd_code_check(const std::string& path, const std::string& dump) {
  const LoadedSet s = load_set(path);
  const CodeSpec code = parity_check_from_set(s.file.field(), s.file.points);
  std::cout << "code [" << code.n() << "," << code.n() - 4 << "]_" << code.q() << " rank 4\n";
  if (code.n() <= kMinDistanceMaxLength && code.q() <= kMinDistanceMaxOrder) {
    const MinDistance d = min_distance(code);
    std::cout << "d " << (d.exact ? "" : ">=") << d.d << '\n';
  } else {
    std::cout << "d skipped (size limit)\n";
  }
  const bool le3 = covering_radius_le3(code);
  const bool sat = verify_2saturating(s.quadric.space(), s.ids).saturating;
  std::cout << "R<=3 " << (le3 ? "yes" : "no") << " 2-saturating " << (sat ? "yes" : "no")
            << " agree " << (le3 == sat ? "yes" : "no") << '\n';
  if (!dump.empty()) {
    std::ostringstream out;
    dump_matrix(out, code);
    write_text(dump, out.str());
  }
  return le3 == sat && le3 ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturating sets on the elliptic quadric and covering-code bounds"};
  app.require_subcommand(1);

  std::uint64_t q = 0;
  bool tables = false;
  auto* field_info = app.add_subcommand("field-info", "Field parameters and tables");
  field_info->add_option("--q", q, "Field order")->required();
  field_info->add_flag("--tables", tables, "Print the multiplication table (q <= 16)");

  auto* quadric_check = app.add_subcommand("quadric-check", "Check quadric point and plane counts");
  quadric_check->add_option("--q", q, "Field order")->required();

  SaturateArgs sat;
  auto* saturate = app.add_subcommand("saturate", "Greedy construction of a 2-saturating set");
  saturate->add_option("--q", sat.q, "Field order")->required();
  saturate->add_option("--strategy", sat.strategy, "greedy-max | rand | fop")->capture_default_str();
  saturate->add_option("--seed", sat.seed, "Seed for rand")->capture_default_str();
  saturate->add_option("--pool", sat.pool, "Candidate pool size for rand")->capture_default_str();
  saturate->add_option("--out", sat.out, "Write the set file here");
  saturate->add_option("--json", sat.json_out, "Write the trace as JSON here");
  saturate->add_option("--threads", sat.threads, "Scoring threads (0: $SATQUAD_THREADS or all cores)");
  saturate->add_option("--delta", sat.delta, "auto | plane | pencil")->capture_default_str();
  saturate->add_flag("--mark-lines", sat.mark_lines, "Also apply the line rule");
  saturate->add_flag("--quiet", sat.quiet, "Omit the per-step trace");

  std::string in_path, dump_path;
  auto* verify = app.add_subcommand("verify", "Check that a set file is 2-saturating");
  verify->add_option("--in", in_path, "Set file")->required()->check(CLI::ExistingFile);

  SweepArgs sw;
  std::string k_text;
  auto* sweep_cmd = app.add_subcommand("bounds-sweep", "Bounds over a log-spaced q range, as CSV");
  sweep_cmd->add_option("--from", sw.from)->capture_default_str();
  sweep_cmd->add_option("--to", sw.to)->capture_default_str();
  sweep_cmd->add_option("--samples", sw.samples)->capture_default_str();
  sweep_cmd->add_option("--bounds", sw.bounds, "Comma list of A,B,C,D,E,knw,ratio")->capture_default_str();
  sweep_cmd->add_option("--k", k_text, "Bound C parameter (default 20.339)");
  sweep_cmd->add_option("--eps", sw.eps, "Bound D parameter");
  sweep_cmd->add_option("--csv", sw.csv, "Output path, '-' for stdout")->capture_default_str();
  sweep_cmd->add_option("--threads", sw.threads);

  SweepArgs cmp;
  cmp.from = bounds::constants::kKnownFloor;
  cmp.to = 5000000;
  auto* compare = app.add_subcommand("compare", "Known bound against Bounds A and D");
  compare->add_option("--from", cmp.from)->capture_default_str();
  compare->add_option("--to", cmp.to)->capture_default_str();
  compare->add_option("--samples", cmp.samples)->capture_default_str();
  compare->add_option("--eps", cmp.eps, "Bound D parameter");
  compare->add_option("--csv", cmp.csv, "Output path, '-' for stdout")->capture_default_str();
  compare->add_option("--threads", cmp.threads);

  std::string csv, json_out;
  auto* table1 = app.add_subcommand("table1", "Bound C thresholds and comparison with the known bound");
  table1->add_option("--csv", csv, "Also write CSV here ('-' for stdout)");
  table1->add_option("--json", json_out, "Also write JSON here");

  auto* solve_wk = app.add_subcommand("solve-wk", "ceil(W(k)) for one k");
  solve_wk->add_option("--k", k_text, "k in (18, 20.34]")->required();

  unsigned r = 7;
  std::optional<std::uint64_t> n0;
  bool known = false;
  auto* lift = app.add_subcommand("lift", "Lengths of lifted codes with codimension r = 3t+1");
  lift->add_option("--q", q)->required();
  lift->add_option("--r", r)->required();
  lift->add_option("--n0", n0, "Starting length, must be < q");
  lift->add_flag("--known", known, "Also print the lifted known bound");

  auto* code_check = app.add_subcommand("code-check", "Parity-check matrix, d and R <= 3 of a set file");
  code_check->add_option("--in", in_path, "Set file")->required()->check(CLI::ExistingFile);
  code_check->add_option("--dump", dump_path, "Write the 4 x n matrix here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*field_info) return cmd_field_info(q, tables);
    if (*quadric_check) return cmd_quadric_check(q);
    if (*saturate) return cmd_saturate(sat);
    if (*verify) return cmd_verify(in_path);
    if (*sweep_cmd) {
      if (!k_text.empty()) sw.k = std::stold(k_text);
      return cmd_bounds_sweep(sw);
    }
    if (*compare) return cmd_compare(cmp);
    if (*table1) return cmd_table1(csv, json_out);
    if (*solve_wk) return cmd_solve_wk(k_text);
    if (*lift) return cmd_lift(q, r, n0, known);
    if (*code_check) return cmd_code_check(in_path, dump_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}
