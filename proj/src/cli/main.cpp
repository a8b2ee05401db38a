#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curve_io.hpp"
#include "json.hpp"
#include "knotmeasure.h"

namespace {

using nlohmann::json;

constexpr const char* kSchema = "knotmeasure.record/1";

// Exit codes.
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitResource = 4;
constexpr int kExitPrecondition = 5;

int exit_code(km_status s) {
  switch (s) {
    case KM_OK:
      return 0;
    case KM_ERR_INPUT:
      return kExitInput;
    case KM_ERR_DEGENERATE:
      return kExitDegenerate;
    case KM_ERR_RESOURCE:
      return kExitResource;
    case KM_ERR_PRECONDITION:
      return kExitPrecondition;
    case KM_ERR_INTERNAL:
      return kExitInternal;
  }
  return kExitInternal;
}

struct Failure {
  int code;
  std::string message;
};

void check(km_status s) {
  if (s != KM_OK) throw Failure{exit_code(s), std::string(km_status_name(s)) + ": " + km_last_error()};
}

[[noreturn]] void input_error(const std::string& msg) { throw Failure{kExitInput, "input error: " + msg}; }

struct CurveDeleter {
  void operator()(km_curve* c) const { km_curve_free(c); }
};
struct DiagramDeleter {
  void operator()(km_diagram* d) const { km_diagram_free(d); }
};
struct PolyDeleter {
  void operator()(km_poly* p) const { km_poly_free(p); }
};
using CurvePtr = std::unique_ptr<km_curve, CurveDeleter>;
using DiagramPtr = std::unique_ptr<km_diagram, DiagramDeleter>;
using PolyPtr = std::unique_ptr<km_poly, PolyDeleter>;

std::string take(char* s) {
  std::string out = s;
  km_string_free(s);
  return out;
}

json take_json(char* s) { return json::parse(take(s)); }

struct Config {
  std::vector<std::string> inputs;
  std::string gauss;
  std::string dir_text;
  unsigned k = 2;
  std::size_t samples = 10000;
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  double tol = 1e-9;
  int max_crossings = 24;
  std::string format = "human";
  bool dump_gauss = false;
  int crossing = -1;
  std::vector<double> gaps{0.5, 0.2, 0.1, 0.05};
  // generate
  std::string kind = "trefoil";
  std::size_t vertices = 24;
  double gap = 0.05;
  bool closed = false;
  std::string output;
};

km_sampling sampling(const Config& c) {
  km_sampling s;
  km_sampling_defaults(&s);
  s.samples = c.samples;
  s.seed = c.seed;
  s.threads = c.threads;
  s.tol = c.tol;
  s.max_crossings = c.max_crossings;
  return s;
}

void require_mc_samples(const Config& c) {
  if (c.samples < 2) input_error("Monte Carlo commands need --samples >= 2");
}

CurvePtr load_curve(const std::string& path) {
  kmcli::CurveData data;
  try {
    data = kmcli::read_curve_file(path);
  } catch (const kmcli::InputError& e) {
    input_error(path + ": " + e.what());
  }
  std::vector<double> xyz;
  for (const auto& v : data.vertices) xyz.insert(xyz.end(), v.begin(), v.end());
  km_curve* c = nullptr;
  check(km_curve_create(xyz.data(), data.vertices.size(), data.closed ? 1 : 0, &c));
  return CurvePtr(c);
}

CurvePtr single_input(const Config& c) {
  if (c.inputs.size() != 1) input_error("exactly one --input curve file is required");
  return load_curve(c.inputs[0]);
}

std::array<double, 3> parse_dir(const std::string& text) {
  std::array<double, 3> d{};
  std::istringstream in(text);
  std::string field;
  int n = 0;
  while (std::getline(in, field, ',')) {
    if (n >= 3) input_error("--dir needs three comma-separated numbers");
    try {
      std::size_t used = 0;
      d[static_cast<std::size_t>(n)] = std::stod(field, &used);
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      input_error("--dir component '" + field + "' is not a number");
    }
    ++n;
  }
  if (n != 3) input_error("--dir needs three comma-separated numbers");
  return d;
}

/// A single diagram from --gauss, or from --input projected along --dir.
DiagramPtr single_diagram(const Config& c, std::string* source) {
  km_diagram* d = nullptr;
  if (!c.gauss.empty()) {
    if (!c.inputs.empty()) input_error("use either --gauss or --input, not both");
    check(km_diagram_from_gauss(c.gauss.c_str(), &d));
    *source = "gauss:" + c.gauss;
    return DiagramPtr(d);
  }
  if (c.dir_text.empty()) input_error("projecting a curve needs --dir x,y,z");
  const auto dir = parse_dir(c.dir_text);
  if (c.inputs.size() == 2) {
    CurvePtr a = load_curve(c.inputs[0]), b = load_curve(c.inputs[1]);
    check(km_project_link(a.get(), b.get(), dir.data(), c.tol, &d));
  } else {
    CurvePtr a = single_input(c);
    check(km_project(a.get(), dir.data(), c.tol, &d));
  }
  *source = c.inputs[0] + (c.inputs.size() == 2 ? "+" + c.inputs[1] : "") + "@" + c.dir_text;
  return DiagramPtr(d);
}

void print_record(const std::string& command, const std::string& source, const json& result) {
  json r = {{"schema", kSchema}, {"command", command}, {"input", source}, {"result", result}};
  std::cout << r.dump() << "\n";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string input_name(const Config& c) {
  std::string s;
  for (const auto& p : c.inputs) s += (s.empty() ? "" : "+") + p;
  return s;
}

void print_estimate_human(const json& e) {
  std::cout << e["measure"].get<std::string>() << " mean   " << fmt(e["mean"].get<double>()) << "\n"
            << "exact sample mean " << e["mean_exact"].get<std::string>() << "\n"
            << "stderr " << fmt(e["stderr"].get<double>()) << "\n"
            << "samples " << e["samples_used"].get<std::size_t>() << " (rejected directions "
            << e["samples_rejected"].get<std::size_t>() << "), seed " << e["seed"].get<std::uint64_t>() << "\n";
}

// ---- commands ----

int cmd_lk(const Config& c) {
  if (c.inputs.size() != 2) input_error("lk needs two --input curve files");
  CurvePtr a = load_curve(c.inputs[0]), b = load_curve(c.inputs[1]);
  double lk = 0.0;
  check(km_gauss_linking(a.get(), b.get(), &lk));
  if (c.format == "records") {
    print_record("lk", input_name(c), {{"linking", lk}});
  } else {
    std::cout << "Gauss linking integral " << fmt(lk) << "\n";
  }
  return 0;
}

json invariants_of(const km_diagram* d, const Config& c) {
  km_poly* p = nullptr;
  check(km_enhanced_jones(d, c.max_crossings, c.threads, &p));
  PolyPtr poly(p);
  char* text = nullptr;
  char* pairs = nullptr;
  check(km_poly_to_string(poly.get(), &text));
  check(km_poly_pairs_json(poly.get(), &pairs));
  json out = {{"crossings", km_diagram_crossing_count(d)},
              {"components", km_diagram_component_count(d)},
              {"jones_text", take(text)},
              {"jones", take_json(pairs)}};
  for (unsigned k = 0; k <= c.k; ++k) {
    char* v = nullptr;
    check(km_vassiliev(d, k, c.max_crossings, &v));
    out["v" + std::to_string(k)] = take(v);
  }
  return out;
}

void maybe_dump(const km_diagram* d, const Config& c, json* result) {
  if (!c.dump_gauss) return;
  char* dump = nullptr;
  check(km_diagram_dump(d, &dump));
  const std::string text = take(dump);
  if (c.format == "records") {
    (*result)["gauss_dump"] = text;
  } else {
    std::cout << "# component crossing O|U sign position\n" << text;
  }
}

int cmd_jones(const Config& c) {
  std::string source;
  DiagramPtr d = single_diagram(c, &source);
  json r = invariants_of(d.get(), c);
  char* code = nullptr;
  check(km_diagram_gauss_code(d.get(), &code));
  r["gauss_code"] = take(code);
  if (c.format == "records") {
    maybe_dump(d.get(), c, &r);
    print_record("jones", source, r);
    return 0;
  }
  std::cout << "diagram  " << r["gauss_code"].get<std::string>() << "\n"
            << "crossings " << r["crossings"].get<std::size_t>() << "\n"
            << "J(q)     " << r["jones_text"].get<std::string>() << "\n";
  for (unsigned k = 0; k <= c.k; ++k) {
    std::cout << "v" << k << "       " << r["v" + std::to_string(k)].get<std::string>() << "\n";
  }
  maybe_dump(d.get(), c, &r);
  return 0;
}

int cmd_v2(const Config& c) {
  if (!c.gauss.empty() || !c.dir_text.empty()) {
    std::string source;
    DiagramPtr d = single_diagram(c, &source);
    char* state = nullptr;
    check(km_vassiliev(d.get(), 2, c.max_crossings, &state));
    json r = {{"v2_state_sum", take(state)}};
    char* comb = nullptr;
    const km_status s = km_v2_combinatorial(d.get(), &comb);
    if (s == KM_OK) {
      r["v2_combinatorial"] = take(comb);
      r["agree"] = r["v2_combinatorial"] == r["v2_state_sum"];
    } else if (s == KM_ERR_PRECONDITION) {
      r["v2_combinatorial"] = nullptr;
    } else {
      check(s);
    }
    if (c.format == "records") {
      maybe_dump(d.get(), c, &r);
      print_record("v2", source, r);
      return 0;
    }
    std::cout << "v2 (state sum)        " << r["v2_state_sum"].get<std::string>() << "\n"
              << "v2 (alternating pairs) "
              << (r["v2_combinatorial"].is_null() ? std::string("n/a (not of knot type)")
                                                  : r["v2_combinatorial"].get<std::string>())
              << "\n";
    maybe_dump(d.get(), c, &r);
    return 0;
  }
  require_mc_samples(c);
  CurvePtr curve = single_input(c);
  const km_sampling s = sampling(c);
  char* out = nullptr;
  check(km_v2_samples(curve.get(), &s, &out));
  const json r = take_json(out);
  if (c.format == "records") {
    print_record("v2", input_name(c), r);
    return 0;
  }
  std::cout << "index  crossings  v2(state sum)  v2(alternating pairs)\n";
  for (const auto& p : r["projections"]) {
    std::cout << p["index"].get<std::size_t>() << "  " << p["crossings"].get<std::size_t>() << "  "
              << p["v2_state_sum"].get<std::string>() << "  "
              << (p["v2_combinatorial"].is_null() ? std::string("n/a") : p["v2_combinatorial"].get<std::string>())
              << "\n";
  }
  std::cout << "samples " << r["samples_used"].get<std::size_t>() << ", seed " << r["seed"].get<std::uint64_t>()
            << ", all cross-checks agree: " << (r["all_agree"].get<bool>() ? "yes" : "no") << "\n";
  return 0;
}

int cmd_wk(const Config& c) {
  require_mc_samples(c);
  CurvePtr curve = single_input(c);
  const km_sampling s = sampling(c);
  char* out = nullptr;
  check(km_wk(curve.get(), c.k, &s, &out));
  const json r = take_json(out);
  if (c.format == "records") {
    print_record("wk", input_name(c), r);
  } else {
    print_estimate_human(r);
  }
  return 0;
}

int cmd_sll(const Config& c) {
  require_mc_samples(c);
  CurvePtr curve = single_input(c);
  const km_sampling s = sampling(c);
  char* out = nullptr;
  check(km_sll(curve.get(), &s, &out));
  const json r = take_json(out);
  if (c.format == "records") {
    print_record("sll", input_name(c), r);
  } else {
    print_estimate_human(r);
    std::cout << "implied v2 = 1/4 + 6*mean = " << fmt(r["implied_v2"].get<double>()) << " +- "
              << fmt(r["implied_v2_stderr"].get<double>()) << "\n";
  }
  return 0;
}

int cmd_spectrum(const Config& c) {
  require_mc_samples(c);
  CurvePtr curve = single_input(c);
  const km_sampling s = sampling(c);
  char* out = nullptr;
  check(km_spectrum(curve.get(), &s, &out));
  const json r = take_json(out);
  if (c.format == "records") {
    print_record("spectrum", input_name(c), r);
    return 0;
  }
  std::cout << "probability  count  v2  k2.1  enhanced Jones\n";
  for (const auto& e : r["classes"]) {
    std::cout << fmt(e["probability"].get<double>()) << "  " << e["count"].get<std::size_t>() << "  "
              << e["v2"].get<std::string>() << "  " << (e["k21"].get<bool>() ? "yes" : "no") << "  "
              << e["fingerprint_text"].get<std::string>() << "\n";
  }
  std::cout << "samples " << r["samples_used"].get<std::size_t>() << " (rejected directions "
            << r["samples_rejected"].get<std::size_t>() << "), seed " << r["seed"].get<std::uint64_t>() << "\n"
            << "P(k2.1) " << fmt(r["k21_probability"].get<double>()) << ", w2 regrouped "
            << r["w2_regrouped"].get<std::string>() << "\n";
  return 0;
}

int cmd_sll_exact4(const Config& c) {
  CurvePtr curve = single_input(c);
  double v = 0.0;
  check(km_sll_exact4(curve.get(), &v));
  if (c.format == "records") {
    print_record("sll-exact4", input_name(c), {{"sll", v}, {"k21_probability", 2.0 * v}});
  } else {
    std::cout << "exact SLL " << fmt(v) << " (P(k2.1) = " << fmt(2.0 * v) << ")\n";
  }
  return 0;
}

int cmd_verify_skein(const Config& c) {
  std::string source;
  DiagramPtr d = single_diagram(c, &source);
  const int n = static_cast<int>(km_diagram_crossing_count(d.get()));
  std::vector<int> which;
  if (c.crossing >= 0) {
    which.push_back(c.crossing);
  } else {
    for (int x = 0; x < n; ++x) which.push_back(x);
  }
  json reports = json::array();
  bool all = true;
  for (int x : which) {
    char* out = nullptr;
    check(km_verify_skein(d.get(), x, &out));
    reports.push_back(take_json(out));
    all = all && reports.back()["pass"].get<bool>();
  }
  if (c.format == "records") {
    print_record("verify-skein", source, {{"reports", reports}, {"pass", all}});
  } else {
    for (const auto& r : reports) {
      std::cout << "crossing " << r["crossing"].get<int>() << " (sign " << r["sign"].get<int>() << ", "
                << r["kind"].get<std::string>() << ")";
      if (r.contains("r")) std::cout << " r=" << r["r"].get<std::string>() << " l=" << r["l"].get<std::string>();
      std::cout << "\n";
      for (const auto& k : r["checks"]) {
        std::cout << "  " << (k["pass"].get<bool>() ? "ok  " : "FAIL") << " " << k["relation"].get<std::string>()
                  << ": " << k["lhs"].get<std::string>() << " vs " << k["rhs"].get<std::string>() << "\n";
      }
    }
    std::cout << (all ? "all relations hold" : "some relations fail") << "\n";
  }
  return all ? 0 : kExitPrecondition;
}

int cmd_scan(const Config& c) {
  require_mc_samples(c);
  CurvePtr curve = single_input(c);
  const km_sampling s = sampling(c);
  char* out = nullptr;
  check(km_scan(curve.get(), c.gaps.data(), c.gaps.size(), c.k, &s, &out));
  const json r = take_json(out);
  if (c.format == "records") {
    print_record("scan", input_name(c), r);
    return 0;
  }
  std::cout << "gap/diameter  w" << c.k << "  stderr\n";
  for (const auto& row : r["rows"]) {
    std::cout << fmt(row["gap"].get<double>()) << "  " << fmt(row["mean"].get<double>()) << "  "
              << fmt(row["stderr"].get<double>()) << "\n";
  }
  std::cout << "samples " << c.samples << " per gap, seed " << c.seed << "\n";
  return 0;
}

int cmd_generate(const Config& c) {
  km_curve* raw = nullptr;
  check(km_generate(c.kind.c_str(), c.vertices, c.gap, c.closed ? 1 : 0, c.seed, &raw));
  CurvePtr curve(raw);
  kmcli::CurveData data;
  data.closed = km_curve_is_closed(curve.get()) != 0;
  std::vector<double> xyz(3 * km_curve_vertex_count(curve.get()));
  km_curve_vertices(curve.get(), xyz.data());
  for (std::size_t i = 0; i < xyz.size(); i += 3) data.vertices.push_back({xyz[i], xyz[i + 1], xyz[i + 2]});
  const bool csv = c.output.size() >= 4 && c.output.compare(c.output.size() - 4, 4, ".csv") == 0;
  const std::string text = csv ? kmcli::write_curve_csv(data) : kmcli::write_curve_json(data);
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw Failure{kExitResource, "cannot write '" + c.output + "'"};
    f << text;
  }
  return 0;
}

void add_common(CLI::App* app, Config& c, bool mc) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"human", "records"}));
  app->add_option("--tol", c.tol, "Genericity tolerance relative to the curve diameter")->check(CLI::PositiveNumber);
  app->add_option("--max-crossings", c.max_crossings, "Crossing budget for the bracket state sum");
  app->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  if (mc) {
    app->add_option("--samples", c.samples, "Number of sampled projection directions");
    app->add_option("--seed", c.seed, "Seed of the direction stream");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement measures of open and closed polygonal curves"};
  app.require_subcommand(1);
  Config c;

  auto* lk = app.add_subcommand("lk", "Gauss linking integral of two closed curves");
  lk->add_option("--input", c.inputs, "Curve files (two)")->required();
  add_common(lk, c, false);

  auto* jones = app.add_subcommand("jones", "Enhanced Jones polynomial and Vassiliev values of one diagram");
  auto* v2 = app.add_subcommand("v2", "v2 of one projection, or of sampled projections, from both formulas");
  auto* skein = app.add_subcommand("verify-skein", "Check the crossing-change relations of a diagram");
  for (auto* sub : {jones, v2, skein}) {
    sub->add_option("--input", c.inputs, "Curve file (two for a link diagram)");
    sub->add_option("--gauss", c.gauss, "Signed Gauss code, e.g. \"o: O0+ U1+ U0+ O1+\"");
    sub->add_option("--dir", c.dir_text, "Projection direction x,y,z");
    sub->add_flag("--dump-gauss", c.dump_gauss, "Print the diagram one traversal event per line");
    add_common(sub, c, sub == v2);
  }
  jones->add_option("--k", c.k, "Highest Vassiliev order to print");
  skein->add_option("--crossing", c.crossing, "Crossing id (default: all)");

  auto* wk = app.add_subcommand("wk", "Monte Carlo Vassiliev measure w_k");
  wk->add_option("--k", c.k, "Order k");
  auto* sll = app.add_subcommand("sll", "Monte Carlo double alternating self-linking");
  auto* spectrum = app.add_subcommand("spectrum", "Distribution of projected knotoid types");
  auto* scan = app.add_subcommand("scan", "w_k of a closed curve opened to a sequence of endpoint gaps");
  scan->add_option("--k", c.k, "Order k");
  scan->add_option("--gaps", c.gaps, "Gaps as fractions of the diameter");
  for (auto* sub : {wk, sll, spectrum, scan}) {
    sub->add_option("--input", c.inputs, "Curve file")->required();
    add_common(sub, c, true);
  }

  auto* exact = app.add_subcommand("sll-exact4", "Exact SLL of an open 4-edge curve");
  exact->add_option("--input", c.inputs, "Curve file")->required();
  add_common(exact, c, false);

  auto* gen = app.add_subcommand("generate", "Write a generated curve");
  gen->add_option("--kind", c.kind, "Generator")
      ->check(CLI::IsMember({"trefoil", "random-walk", "four-edge", "near-closed-trefoil"}));
  gen->add_option("--vertices", c.vertices, "Vertices (trefoil) or edges (random walk)");
  gen->add_option("--gap", c.gap, "Endpoint gap as a fraction of the diameter");
  gen->add_flag("--closed", c.closed, "Close the random walk");
  gen->add_option("--seed", c.seed, "Seed");
  gen->add_option("--output", c.output, "Output path (.json or .csv); stdout if omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*lk) return cmd_lk(c);
    if (*jones) return cmd_jones(c);
    if (*v2) return cmd_v2(c);
    if (*skein) return cmd_verify_skein(c);
    if (*wk) return cmd_wk(c);
    if (*sll) return cmd_sll(c);
    if (*spectrum) return cmd_spectrum(c);
    if (*scan) return cmd_scan(c);
    if (*exact) return cmd_sll_exact4(c);
    if (*gen) return cmd_generate(c);
  } catch (const Failure& f) {
    std::cerr << "kmeasure: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "kmeasure: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
