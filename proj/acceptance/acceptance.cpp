// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed
// here and never adapted to the observed values.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "knotmeasure/diagram.hpp"
#include "knotmeasure/error.hpp"
#include "knotmeasure/generators.hpp"
#include "knotmeasure/geomprob.hpp"
#include "knotmeasure/measures.hpp"
#include "knotmeasure/polynomial.hpp"
#include "knotmeasure/vassiliev.hpp"
#include "support.hpp"

using namespace km;

namespace {

// Pinned tolerances and sample sizes.
constexpr double kAreaTolerance = 1e-3;           // probability units
constexpr std::size_t kAreaSamples = 4'000'000;   // directions per area check
constexpr std::size_t kSllSamples = 100'000;      // closed trefoil SLL
constexpr std::size_t kFourEdgeSamples = 20'000;  // per 4-edge curve
constexpr std::size_t kScanSamples = 20'000;      // per gap
constexpr double kSigmas = 3.0;
constexpr double kExactSlack = 1e-12;  // float noise when an estimate has zero spread

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string first_failure;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) first_failure = what;
    pass = pass && ok;
  }
};

unsigned threads() { return std::max(1U, std::thread::hardware_concurrency()); }

Laurent q(int e) { return Laurent::monomial(e, 1); }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// Independent Monte Carlo on the sphere for the area checks.

struct Hit {
  double s;
  bool a_over;
};

std::optional<Hit> crosses(const Segment& a, const Segment& b, const Vec3& xi) {
  const Vec3 da = a.direction(), db = b.direction(), rhs = b.a - a.a;
  const Vec3 c2 = -db, c3 = -xi;
  const double det = triple(da, c2, c3);
  if (det == 0.0) return std::nullopt;
  const double s = triple(rhs, c2, c3) / det;
  const double t = triple(da, rhs, c3) / det;
  const double lambda = triple(da, c2, rhs) / det;
  if (s <= 0 || s >= 1 || t <= 0 || t >= 1) return std::nullopt;
  return Hit{s, lambda > 0};
}

// Fraction of uniform directions satisfying pred. The work is split into a
// fixed number of chunks with their own seeds, so the value does not depend
// on the machine.
double frequency(std::uint64_t seed, std::size_t n, const std::function<bool(const Vec3&)>& pred) {
  constexpr std::size_t kChunks = 16;
  std::vector<std::future<std::size_t>> parts;
  for (std::size_t c = 0; c < kChunks; ++c) {
    parts.push_back(std::async(std::launch::async, [=, &pred] {
      std::mt19937_64 gen(seed * 7919 + c);
      std::normal_distribution<double> g;
      std::size_t hits = 0;
      const std::size_t m = n / kChunks;
      for (std::size_t i = 0; i < m; ++i) {
        Vec3 v{g(gen), g(gen), g(gen)};
        const double len = v.norm();
        if (len < 1e-9) {
          --i;
          continue;
        }
        hits += pred(v / len) ? 1 : 0;
      }
      return hits;
    }));
  }
  std::size_t hits = 0;
  for (auto& p : parts) hits += p.get();
  return static_cast<double>(hits) / static_cast<double>(n / kChunks * kChunks);
}

Segment random_segment(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {{u(gen), u(gen), u(gen)}, {u(gen), u(gen), u(gen)}};
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& o) {
  const Laurent loop = q(-1) + q(1);
  o.require(bracket(parse_gauss_code("c:")) == loop, "bracket of the round unknot");
  o.require(bracket(parse_gauss_code("o:")) == loop, "bracket of the trivial arc");
  std::size_t checked = 0;
  for (bool closed : {true, false}) {
    for (const auto& e : corpus::random_diagrams(30, closed, 12, 0, 10, closed ? 1101 : 1102)) {
      o.require(enhanced_jones(add_distant_circle(e.diagram)) == loop * enhanced_jones(e.diagram),
                "distant circle on " + to_gauss_code(e.diagram));
      ++checked;
    }
  }
  o.detail << checked << " distant-circle checks";
}

void criterion2(Outcome& o) {
  std::size_t diagrams = 0, checks = 0;
  for (bool closed : {true, false}) {
    for (const auto& e : corpus::random_diagrams(60, closed, 12, 1, 12, closed ? 1201 : 1202)) {
      ++diagrams;
      for (int x = 0; x < static_cast<int>(e.diagram.crossing_count()); ++x) {
        const Diagram plus = e.diagram.crossing(x).sign > 0 ? e.diagram : switch_crossing(e.diagram, x);
        const Diagram minus = switch_crossing(plus, x);
        const Diagram zero = smooth_crossing(plus, x);
        const Laurent lhs = enhanced_jones(plus).shifted(-2) - enhanced_jones(minus).shifted(2);
        o.require(lhs == (q(-1) - q(1)) * enhanced_jones(zero), "skein at crossing " + std::to_string(x));
        ++checks;
      }
    }
  }
  o.require(diagrams >= 100, "corpus size");
  o.detail << diagrams << " diagrams, " << checks << " crossings";
}

void criterion3(Outcome& o) {
  std::size_t diagrams = 0;
  for (bool closed : {true, false}) {
    for (const auto& e : corpus::random_diagrams(80, closed, 14, 0, 12, closed ? 1301 : 1302)) {
      o.require(vassiliev_coefficient(e.diagram, 0) == 2, "v0 of " + to_gauss_code(e.diagram));
      ++diagrams;
    }
  }
  const std::vector<std::string> links{"c: O0+ U1+ ; c: U0+ O1+", "c: O0- U1- ; c: U0- O1-",
                                       "c: O0+ U1+ O2+ U3+ ; c: U0+ O1+ U2+ O3+",
                                       "c: O0- U1- O2- U3- ; c: U0- O1- U2- O3-"};
  for (const auto& code : links) {
    for (const Diagram& d : {parse_gauss_code(code), mirror(parse_gauss_code(code))}) {
      const Rational lk = oracle::linking_number(d);
      o.require(lk != 0, "nonzero linking number of " + code);
      o.require(vassiliev_coefficient(d, 0) == 4, "v0 of " + code);
      o.require(vassiliev_coefficient(d, 1) == -6 * lk, "v1 of " + code);
    }
  }
  o.detail << diagrams << " knot and knotoid diagrams, " << 2 * links.size() << " link diagrams";
}

void criterion4(Outcome& o) {
  std::size_t knots = 0, cuts = 0;
  for (const auto& e : corpus::random_diagrams(150, true, 14, 0, 10, 1401)) {
    const Rational v2 = vassiliev_coefficient(e.diagram, 2);
    o.require(v2_combinatorial(e.diagram) == v2, "knot " + to_gauss_code(e.diagram));
    ++knots;
    const int events = static_cast<int>(e.diagram.components()[0].events.size());
    for (int at = 0; at < events; ++at) {
      const Diagram cut = cut_open(e.diagram, at);
      o.require(v2_combinatorial(cut) == vassiliev_coefficient(cut, 2), "cut " + to_gauss_code(cut));
      ++cuts;
    }
  }
  o.detail << knots << " knot diagrams, " << cuts << " knot-type knotoid cuts";
}

void criterion5(Outcome& o) {
  std::size_t pairs = 0;
  for (const auto& e : corpus::random_diagrams(60, true, 12, 1, 10, 1501)) {
    for (int x = 0; x < static_cast<int>(e.diagram.crossing_count()); ++x) {
      const Diagram plus = e.diagram.crossing(x).sign > 0 ? e.diagram : switch_crossing(e.diagram, x);
      const Rational lhs = vassiliev_coefficient(plus, 2) - vassiliev_coefficient(switch_crossing(plus, x), 2);
      const Rational lk = oracle::linking_number(smooth_crossing(plus, x));
      o.require(lhs == -6 * lk, "switch law at crossing " + std::to_string(x));
      ++pairs;
    }
  }
  o.require(pairs >= 100, "number of pairs");
  o.detail << pairs << " (diagram, crossing) pairs";
}

void criterion6(Outcome& o) {
  SamplingOptions s;
  s.samples = 100;
  s.threads = threads();
  const std::vector<Rational> values =
      sample_projections(trefoil_curve(), s, [](const ProjectionSample& p) { return vassiliev_coefficient(p.diagram, 2); });
  const bool constant = std::all_of(values.begin(), values.end(), [&](const Rational& v) { return v == values[0]; });
  o.require(values.size() == 100, "sample count");
  o.require(constant, "all sampled values equal");
  o.detail << values.size() << " directions, v2 = " << to_string(values.front());
}

void criterion7(Outcome& o) {
  SamplingOptions s;
  s.samples = kSllSamples;
  s.threads = threads();
  const PolygonalCurve t = trefoil_curve();
  const double v2 = static_cast<double>(vassiliev_coefficient(diagram_of(t, Direction({0.1, 0.2, 1.0})), 2));
  const MCEstimate e = sll_estimate(t, s);
  const double implied = 0.25 + 6.0 * e.mean;
  const double band = kSigmas * 6.0 * e.std_error;
  o.require(std::abs(implied - v2) <= band, "implied v2 outside the band");
  o.detail << "SLL mean " << fmt(e.mean) << " +- " << fmt(e.std_error) << ", 1/4 + 6 SLL = " << fmt(implied)
           << ", v2 = " << fmt(v2) << ", band " << fmt(band);
}

void criterion8(Outcome& o) {
  std::size_t curves = 0, with_mass = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const PolygonalCurve c = random_four_edge(seed);
    SamplingOptions s;
    s.samples = kFourEdgeSamples;
    s.seed = 80000 + seed;
    s.threads = threads();
    const MCEstimate sll = sll_estimate(c, s);
    const Spectrum spectrum = knotoid_spectrum(c, s);
    const double band = kSigmas * sll.std_error + kExactSlack;
    o.require(std::abs(sll.mean - 0.5 * spectrum.k21_probability()) <= band,
              "SLL vs k2.1 frequency, seed " + std::to_string(seed));
    const double exact = sll_exact_4edge(c);
    o.require(std::abs(exact - sll.mean) <= band, "exact SLL vs estimate, seed " + std::to_string(seed));
    if (sll.std_error > 0) worst = std::max(worst, std::abs(exact - sll.mean) / sll.std_error);
    with_mass += exact > 0 ? 1 : 0;
    ++curves;
  }
  o.detail << curves << " curves (" << with_mass << " with nonzero SLL), worst |exact - mean| = " << fmt(worst)
           << " stderr";
}

void criterion9(Outcome& o) {
  std::mt19937_64 gen(900);
  double worst_pair = 0.0;
  for (int pair = 0; pair < 50; ++pair) {
    const Segment a = random_segment(gen), b = random_segment(gen);
    const double f = frequency(9000 + pair, kAreaSamples, [&](const Vec3& x) { return crosses(a, b, x).has_value(); });
    const double err = std::abs(crossing_probability(a, b) - f);
    worst_pair = std::max(worst_pair, err);
    o.require(err <= kAreaTolerance, "crossing probability, pair " + std::to_string(pair));
  }

  int intersections = 0;
  double worst_intersection = 0.0;
  for (int t = 0; t < 400 && intersections < 20; ++t) {
    const SphericalPolygon p1 = crossing_quadrangle(random_segment(gen), random_segment(gen));
    const SphericalPolygon p2 = crossing_quadrangle(random_segment(gen), random_segment(gen));
    double area = 0.0;
    for (const auto& piece : intersect_polygons(p1, p2)) area += spherical_area(piece);
    if (area == 0.0) continue;
    const double f = frequency(9100 + t, kAreaSamples, [&](const Vec3& x) { return contains(p1, x) && contains(p2, x); });
    const double err = std::abs(f - area / (4 * std::numbers::pi));
    worst_intersection = std::max(worst_intersection, err);
    o.require(err <= kAreaTolerance, "intersection area, trial " + std::to_string(t));
    ++intersections;
  }
  o.require(intersections == 20, "enough non-empty intersections");

  // Consecutive-triple regions: the constructive region is checked against
  // sampling, and the closed-form table must produce a row with the same
  // probability for every configuration whose region is non-empty.
  int regions = 0, table_rows = 0;
  double worst_region = 0.0;
  for (int t = 0; t < 400 && regions < 20; ++t) {
    const Segment lone = random_segment(gen);
    const Segment first = random_segment(gen);
    const Segment second{first.b, random_segment(gen).a};
    const QStar qs = q_star_consecutive(lone, first, second);
    const ClosedFormEvaluation table = closed_form_q_star(lone, first, second);
    if (qs.probability == 0.0) continue;
    ++regions;
    const double f = frequency(9200 + t, kAreaSamples, [&](const Vec3& x) {
      const auto c1 = crosses(lone, first, x), c2 = crosses(lone, second, x);
      return c1 && c2 && c1->s < c2->s && c1->a_over != c2->a_over;
    });
    const double err = std::abs(qs.probability - f);
    worst_region = std::max(worst_region, err);
    o.require(err <= kAreaTolerance, "constructive consecutive-triple region, trial " + std::to_string(t));
    if (table.row > 0) {
      ++table_rows;
      o.require(std::abs(table.probability - f) <= kAreaTolerance, "table row " + std::to_string(table.row));
    } else {
      o.require(false, "no table row matches a non-empty region, trial " + std::to_string(t));
    }
  }
  o.detail << "worst errors: pairs " << fmt(worst_pair) << ", intersections " << fmt(worst_intersection)
           << ", constructive regions " << fmt(worst_region) << " over " << regions << " regions; table rows fired "
           << table_rows << "/" << regions;
}

void criterion10(Outcome& o) {
  SamplingOptions s;
  s.samples = kScanSamples;
  s.threads = threads();
  const PolygonalCurve closed = trefoil_curve();
  const double v2 = static_cast<double>(vassiliev_coefficient(diagram_of(closed, Direction({0.1, 0.2, 1.0})), 2));
  const auto rows = convergence_scan(closed, {0.5, 0.2, 0.1, 0.05}, 2, s);
  double previous = INFINITY;
  o.detail << "v2 = " << fmt(v2) << ";";
  for (const auto& r : rows) {
    const double distance = std::abs(r.estimate.mean - v2);
    o.detail << " gap " << r.gap << ": " << fmt(r.estimate.mean) << " +- " << fmt(r.estimate.std_error) << ";";
    o.require(distance < previous, "distance does not decrease at gap " + fmt(r.gap));
    previous = distance;
  }
  const auto& last = rows.back().estimate;
  o.require(std::abs(last.mean - v2) <= kSigmas * last.std_error, "final gap not within 3 stderr");
}

void criterion11(Outcome& o) {
  std::vector<std::pair<std::string, Diagram>> fixtures;
  fixtures.emplace_back("trivial kink", parse_gauss_code("o: O0+ U0+"));
  fixtures.emplace_back("cut trefoil", cut_open(parse_gauss_code("c: O0+ U1+ O2+ U0+ O1+ U2+"), 0));
  fixtures.emplace_back("k2.1", parse_gauss_code("o: O0+ U1+ U0+ O1+"));
  bool knot_type_seen = false, general_seen = false;
  for (const auto& [name, d] : fixtures) {
    for (int x = 0; x < static_cast<int>(d.crossing_count()); ++x) {
      const SkeinReport r = verify_knotoid_skein(d, x);
      knot_type_seen |= r.kind == "knot-type knotoid";
      general_seen |= r.kind == "knotoid";
      for (const auto& c : r.checks) {
        if (!c.pass) {
          o.detail << name << " crossing " << x << " [" << c.name << "]: " << to_string(c.lhs)
                   << " vs " << to_string(c.rhs) << "; ";
        }
        o.require(c.pass, name + " crossing " + std::to_string(x));
      }
    }
  }
  o.require(knot_type_seen && general_seen, "both relation families exercised");
  o.detail << "fixtures checked: trivial kink, cut trefoil, k2.1";
}

Outcome run_cli(const std::string& args) {
  Outcome o;
  const std::string cmd = std::string(KMEASURE_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  if (pipe) {
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    o.pass = WIFEXITED(status) && WEXITSTATUS(status) == 0;
  } else {
    o.pass = false;
  }
  o.detail << out;
  return o;
}

void criterion12(Outcome& o) {
  const std::string closed = "acceptance_closed.json", open = "acceptance_open.json";
  o.require(run_cli("generate --kind trefoil --output " + closed).pass, "generate closed fixture");
  o.require(run_cli("generate --kind near-closed-trefoil --gap 0.1 --output " + open).pass, "generate open fixture");
  const std::vector<std::string> commands{"wk --k 1 --input " + open,   "wk --k 2 --input " + open,
                                          "sll --input " + open,        "spectrum --input " + open,
                                          "v2 --input " + open,         "scan --input " + closed};
  for (const auto& c : commands) {
    const std::string base = c + " --samples 500 --seed 12345 --format records --threads ";
    const Outcome one = run_cli(base + "1");
    o.require(one.pass, c + " failed");
    for (const char* t : {"3", "8", "1"}) {
      o.require(run_cli(base + t).detail.str() == one.detail.str(), c + " with --threads " + t);
    }
  }
  std::remove(closed.c_str());
  std::remove(open.c_str());
  o.detail << commands.size() << " commands, threads 1/3/8/1";
}

}  // namespace

int main() {
  const std::vector<std::function<void(Outcome&)>> criteria{criterion1, criterion2,  criterion3,  criterion4,
                                                            criterion5, criterion6,  criterion7,  criterion8,
                                                            criterion9, criterion10, criterion11, criterion12};
  std::ofstream report("acceptance_report.txt");
  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.first_failure = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    passed += o.pass ? 1 : 0;
    std::ostringstream line;
    line << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << " (" << fmt(seconds) << " s) "
         << o.detail.str() << (o.pass ? "" : " | first failure: " + o.first_failure) << "\n";
    std::cout << line.str() << std::flush;
    report << line.str() << std::flush;
  }
  std::cout << passed << "/" << criteria.size() << " criteria passed" << std::endl;
  report << passed << "/" << criteria.size() << " criteria passed\n";
  // Failing criteria are reported above; the exit status only signals that
  // the run itself completed.
  return 0;
}
