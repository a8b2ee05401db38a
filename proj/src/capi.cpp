#include "knotmeasure.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <span>
#include <exception>
#include <new>
#include <string>

#include "json.hpp"

#include "knotmeasure/diagram.hpp"
#include "knotmeasure/error.hpp"
#include "knotmeasure/generators.hpp"
#include "knotmeasure/geometry.hpp"
#include "knotmeasure/geomprob.hpp"
#include "knotmeasure/measures.hpp"
#include "knotmeasure/polynomial.hpp"
#include "knotmeasure/vassiliev.hpp"

struct km_curve {
  km::PolygonalCurve curve;
};
struct km_diagram {
  km::Diagram diagram;
};
struct km_poly {
  km::Laurent poly;
};

namespace {

using nlohmann::json;

thread_local std::string last_error;

km_status status_of(km::ErrorKind kind) {
  switch (kind) {
    case km::ErrorKind::input:
      return KM_ERR_INPUT;
    case km::ErrorKind::degenerate:
      return KM_ERR_DEGENERATE;
    case km::ErrorKind::resource:
      return KM_ERR_RESOURCE;
    case km::ErrorKind::precondition:
    case km::ErrorKind::not_divisible:
      return KM_ERR_PRECONDITION;
  }
  return KM_ERR_INTERNAL;
}

template <typename F>
km_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return KM_OK;
  } catch (const km::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return KM_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return KM_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) km::fail(km::ErrorKind::input, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

km::SamplingOptions sampling_of(const km_sampling* o) {
  km::SamplingOptions s;
  if (o == nullptr) return s;
  s.samples = o->samples;
  s.seed = o->seed;
  s.threads = o->threads == 0 ? 1 : o->threads;
  s.tol = o->tol;
  s.max_crossings = o->max_crossings;
  return s;
}

json big_to_json(const km::BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return static_cast<long long>(v);
  }
  return v.str();
}

json poly_json(const km::Laurent& p) {
  json out = json::array();
  for (const auto& [e, c] : p.pairs()) out.push_back(json::array({e, big_to_json(c)}));
  return out;
}

json estimate_json(const km::MCEstimate& e) {
  return {{"measure", e.measure},
          {"k", e.k},
          {"mean", e.mean},
          {"mean_exact", km::to_string(e.exact_mean)},
          {"stderr", e.std_error},
          {"samples_used", e.samples_used},
          {"samples_rejected", e.samples_rejected},
          {"seed", e.seed}};
}

json report_json(const km::SkeinReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"relation", c.name}, {"lhs", km::to_string(c.lhs)}, {"rhs", km::to_string(c.rhs)}, {"pass", c.pass}});
  }
  json out = {{"kind", r.kind}, {"crossing", r.crossing}, {"sign", r.sign}, {"checks", checks}, {"pass", r.pass()}};
  if (r.kind == "knotoid") {
    out["r"] = km::to_string(r.r);
    out["l"] = km::to_string(r.l);
  }
  return out;
}

bool has_combinatorial_v2(const km::Diagram& d) {
  if (d.component_count() != 1) return false;
  return d.components()[0].closed || km::endpoints_share_region(d);
}

void emit(char** out, const json& j) { *out = dup_string(j.dump()); }

}  // namespace

extern "C" {

const char* km_version(void) { return "1.0.0"; }

const char* km_last_error(void) { return last_error.c_str(); }

const char* km_status_name(km_status status) {
  switch (status) {
    case KM_OK:
      return "ok";
    case KM_ERR_INPUT:
      return "input error";
    case KM_ERR_DEGENERATE:
      return "degenerate configuration";
    case KM_ERR_RESOURCE:
      return "resource limit";
    case KM_ERR_PRECONDITION:
      return "precondition violated";
    case KM_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown";
}

void km_string_free(char* s) { std::free(s); }

void km_sampling_defaults(km_sampling* opts) {
  if (opts == nullptr) return;
  const km::SamplingOptions d;
  opts->samples = d.samples;
  opts->seed = d.seed;
  opts->threads = d.threads;
  opts->tol = d.tol;
  opts->max_crossings = d.max_crossings;
}

km_status km_curve_create(const double* xyz, size_t n_vertices, int closed, km_curve** out) {
  return guarded([&] {
    require(out != nullptr && (xyz != nullptr || n_vertices == 0), "null argument");
    std::vector<km::Point3> pts;
    for (size_t i = 0; i < n_vertices; ++i) pts.push_back({xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]});
    *out = new km_curve{km::PolygonalCurve(std::move(pts), closed != 0)};
  });
}

void km_curve_free(km_curve* c) { delete c; }

size_t km_curve_vertex_count(const km_curve* c) { return c == nullptr ? 0 : c->curve.vertices().size(); }

int km_curve_is_closed(const km_curve* c) { return c != nullptr && c->curve.closed() ? 1 : 0; }

void km_curve_vertices(const km_curve* c, double* xyz) {
  if (c == nullptr || xyz == nullptr) return;
  for (const auto& p : c->curve.vertices()) {
    *xyz++ = p.x;
    *xyz++ = p.y;
    *xyz++ = p.z;
  }
}

double km_curve_diameter(const km_curve* c) { return c == nullptr ? 0.0 : c->curve.diameter(); }

km_status km_generate(const char* kind, size_t vertices, double gap, int closed, uint64_t seed, km_curve** out) {
  return guarded([&] {
    require(kind != nullptr && out != nullptr, "null argument");
    const std::string k = kind;
    km::PolygonalCurve c;
    if (k == "trefoil") {
      c = km::trefoil_curve(vertices);
    } else if (k == "random-walk") {
      c = km::random_walk(vertices, seed, closed != 0);
    } else if (k == "four-edge") {
      c = km::random_four_edge(seed);
    } else if (k == "near-closed-trefoil") {
      c = km::near_closed_trefoil(gap, vertices);
    } else {
      km::fail(km::ErrorKind::input, "unknown generator '" + k + "'");
    }
    *out = new km_curve{std::move(c)};
  });
}

km_status km_gauss_linking(const km_curve* a, const km_curve* b, double* out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    *out = km::gauss_linking(a->curve, b->curve);
  });
}

km_status km_project(const km_curve* c, const double dir[3], double tol, km_diagram** out) {
  return guarded([&] {
    require(c != nullptr && dir != nullptr && out != nullptr, "null argument");
    *out = new km_diagram{km::diagram_of(c->curve, km::Direction({dir[0], dir[1], dir[2]}), tol)};
  });
}

km_status km_project_link(const km_curve* a, const km_curve* b, const double dir[3], double tol, km_diagram** out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && dir != nullptr && out != nullptr, "null argument");
    const km::Direction d({dir[0], dir[1], dir[2]});
    const km::ProjectedCurve pcs[2] = {km::project(a->curve, d), km::project(b->curve, d)};
    *out = new km_diagram{km::extract_diagram(std::span<const km::ProjectedCurve>(pcs, 2), tol)};
  });
}

km_status km_diagram_from_gauss(const char* code, km_diagram** out) {
  return guarded([&] {
    require(code != nullptr && out != nullptr, "null argument");
    *out = new km_diagram{km::parse_gauss_code(code)};
  });
}

void km_diagram_free(km_diagram* d) { delete d; }

size_t km_diagram_crossing_count(const km_diagram* d) { return d == nullptr ? 0 : d->diagram.crossing_count(); }

size_t km_diagram_component_count(const km_diagram* d) { return d == nullptr ? 0 : d->diagram.component_count(); }

km_status km_diagram_gauss_code(const km_diagram* d, char** out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    *out = dup_string(km::to_gauss_code(d->diagram));
  });
}

km_status km_diagram_dump(const km_diagram* d, char** out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    *out = dup_string(km::dump_gauss(d->diagram));
  });
}

km_status km_enhanced_jones(const km_diagram* d, int max_crossings, unsigned threads, km_poly** out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    *out = new km_poly{km::enhanced_jones(d->diagram, {max_crossings, threads == 0 ? 1 : threads})};
  });
}

void km_poly_free(km_poly* p) { delete p; }

km_status km_poly_to_string(const km_poly* p, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    *out = dup_string(p->poly.to_string());
  });
}

km_status km_poly_pairs_json(const km_poly* p, char** out) {
  return guarded([&] {
    require(p != nullptr && out != nullptr, "null argument");
    emit(out, poly_json(p->poly));
  });
}

km_status km_vassiliev(const km_diagram* d, unsigned k, int max_crossings, char** out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    *out = dup_string(km::to_string(km::vassiliev_coefficient(d->diagram, k, {max_crossings, 1})));
  });
}

km_status km_v2_combinatorial(const km_diagram* d, char** out) {
  return guarded([&] {
    require(d != nullptr && out != nullptr, "null argument");
    if (!has_combinatorial_v2(d->diagram)) {
      km::fail(km::ErrorKind::precondition,
               "the alternating-pair formula needs a one-component knot or knot-type knotoid diagram");
    }
    *out = dup_string(km::to_string(km::v2_combinatorial(d->diagram)));
  });
}

km_status km_verify_skein(const km_diagram* d, int crossing, char** json_out) {
  return guarded([&] {
    require(d != nullptr && json_out != nullptr, "null argument");
    const auto& dg = d->diagram;
    if (dg.component_count() != 1) km::fail(km::ErrorKind::precondition, "skein checks need one component");
    const km::SkeinReport r = dg.components()[0].closed ? km::verify_knot_skein(dg, crossing)
                                                         : km::verify_knotoid_skein(dg, crossing);
    emit(json_out, report_json(r));
  });
}

km_status km_wk(const km_curve* c, unsigned k, const km_sampling* opts, char** json_out) {
  return guarded([&] {
    require(c != nullptr && json_out != nullptr, "null argument");
    emit(json_out, estimate_json(km::w_k_estimate(c->curve, k, sampling_of(opts))));
  });
}

km_status km_sll(const km_curve* c, const km_sampling* opts, char** json_out) {
  return guarded([&] {
    require(c != nullptr && json_out != nullptr, "null argument");
    const km::MCEstimate e = km::sll_estimate(c->curve, sampling_of(opts));
    json j = estimate_json(e);
    j["implied_v2"] = 0.25 + 6.0 * e.mean;
    j["implied_v2_stderr"] = 6.0 * e.std_error;
    emit(json_out, j);
  });
}

km_status km_spectrum(const km_curve* c, const km_sampling* opts, char** json_out) {
  return guarded([&] {
    require(c != nullptr && json_out != nullptr, "null argument");
    const km::Spectrum s = km::knotoid_spectrum(c->curve, sampling_of(opts));
    json classes = json::array();
    for (const auto& e : s.entries) {
      classes.push_back({{"fingerprint", poly_json(e.fingerprint)},
                         {"fingerprint_text", e.fingerprint.to_string()},
                         {"count", e.count},
                         {"probability", e.probability},
                         {"v2", km::to_string(e.v2)},
                         {"k21", e.k21}});
    }
    emit(json_out, {{"classes", classes},
                    {"samples_used", s.samples_used},
                    {"samples_rejected", s.samples_rejected},
                    {"seed", s.seed},
                    {"k21_probability", s.k21_probability()},
                    {"w2_regrouped", km::to_string(s.regrouped_mean(2))}});
  });
}

km_status km_v2_samples(const km_curve* c, const km_sampling* opts, char** json_out) {
  return guarded([&] {
    require(c != nullptr && json_out != nullptr, "null argument");
    const km::SamplingOptions s = sampling_of(opts);
    std::vector<json> rows(s.samples);
    std::size_t rejected = 0;
    km::sample_projections(
        c->curve, s,
        [&](const km::ProjectionSample& p) {
          const km::Rational state = km::vassiliev_coefficient(p.diagram, 2, {s.max_crossings, 1});
          json row = {{"index", p.index},
                      {"direction", {p.dir.vec().x, p.dir.vec().y, p.dir.vec().z}},
                      {"crossings", p.diagram.crossing_count()},
                      {"v2_state_sum", km::to_string(state)}};
          if (has_combinatorial_v2(p.diagram)) {
            const km::Rational comb = km::v2_combinatorial(p.diagram);
            row["v2_combinatorial"] = km::to_string(comb);
            row["agree"] = comb == state;
          } else {
            row["v2_combinatorial"] = nullptr;
          }
          rows[p.index] = std::move(row);
          return state;
        },
        &rejected);
    bool all_agree = true;
    for (const auto& r : rows) {
      if (r.contains("agree") && !r["agree"].get<bool>()) all_agree = false;
    }
    emit(json_out, {{"samples_used", rows.size()}, {"samples_rejected", rejected}, {"seed", s.seed}, {"all_agree", all_agree},
                    {"projections", rows}});
  });
}

km_status km_scan(const km_curve* closed, const double* gaps, size_t n_gaps, unsigned k, const km_sampling* opts,
                  char** json_out) {
  return guarded([&] {
    require(closed != nullptr && json_out != nullptr && (gaps != nullptr || n_gaps == 0), "null argument");
    const auto rows = km::convergence_scan(closed->curve, std::vector<double>(gaps, gaps + n_gaps), k,
                                           sampling_of(opts));
    json out = json::array();
    for (const auto& r : rows) {
      json j = estimate_json(r.estimate);
      j["gap"] = r.gap;
      out.push_back(std::move(j));
    }
    emit(json_out, {{"rows", out}});
  });
}

km_status km_crossing_probability(const double a[6], const double b[6], double* out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    const km::Segment sa{{a[0], a[1], a[2]}, {a[3], a[4], a[5]}};
    const km::Segment sb{{b[0], b[1], b[2]}, {b[3], b[4], b[5]}};
    *out = km::crossing_probability(sa, sb);
  });
}

km_status km_sll_exact4(const km_curve* c, double* out) {
  return guarded([&] {
    require(c != nullptr && out != nullptr, "null argument");
    *out = km::sll_exact_4edge(c->curve);
  });
}

}  // extern "C"
