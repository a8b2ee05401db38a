#include "knotmeasure/diagram.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "knotmeasure/error.hpp"

namespace km {

namespace {

struct Ev {
  int crossing;
  bool over;
};

// Position-free working form used by the combinatorial transformations.
struct Raw {
  std::vector<std::vector<Ev>> comps;
  std::vector<bool> closed;
  std::vector<int> signs;
};

Raw to_raw(const Diagram& d) {
  Raw r;
  for (const auto& c : d.components()) {
    std::vector<Ev> evs;
    evs.reserve(c.events.size());
    for (const auto& e : c.events) evs.push_back({e.crossing, e.over});
    r.comps.push_back(std::move(evs));
    r.closed.push_back(c.closed);
  }
  for (const auto& x : d.crossings()) r.signs.push_back(x.sign);
  return r;
}

// Events are placed at integer-spaced positions; only their order matters.
Diagram from_raw(const Raw& r) {
  std::vector<Component> comps;
  for (std::size_t c = 0; c < r.comps.size(); ++c) {
    Component out;
    out.closed = r.closed[c];
    const auto n = r.comps[c].size();
    out.length = out.closed ? std::max<double>(static_cast<double>(n), 1.0) : static_cast<double>(n + 1);
    for (std::size_t k = 0; k < n; ++k) {
      const double pos = out.closed ? static_cast<double>(k) + 0.5 : static_cast<double>(k + 1);
      out.events.push_back({r.comps[c][k].crossing, r.comps[c][k].over, pos});
    }
    comps.push_back(std::move(out));
  }
  return Diagram(std::move(comps), r.signs);
}

// Drops crossing `x` from the sign table and shifts larger ids down.
void erase_crossing_id(Raw& r, int x) {
  r.signs.erase(r.signs.begin() + x);
  for (auto& comp : r.comps) {
    for (auto& e : comp) {
      if (e.crossing > x) --e.crossing;
    }
  }
}

// Events of a closed component read cyclically from index `from` (inclusive)
// for `count` steps.
std::vector<Ev> cyclic_slice(const std::vector<Ev>& evs, std::size_t from, std::size_t count) {
  std::vector<Ev> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) out.push_back(evs[(from + s) % evs.size()]);
  return out;
}

// ---------------------------------------------------------------------------
// Planar structure: a rotation system read off the signed Gauss code.

struct Planar {
  struct EdgeInfo {
    int component;
    int after;
  };
  std::vector<EdgeInfo> edges;           // dart 2e runs along the orientation, 2e+1 against it
  std::vector<std::vector<int>> rot;     // darts leaving each vertex, counterclockwise
  std::vector<int> origin;               // vertex a dart leaves
  std::vector<int> slot;                 // index of a dart in rot[origin]
  std::vector<int> face_of;
  std::vector<std::vector<int>> faces;
  std::vector<int> leg_vertex, head_vertex;  // per component, -1 if closed
  std::map<std::pair<int, int>, int> edge_index;
  int vertex_count = 0;

  int edge_of(int component, int after) const { return edge_index.at({component, after}); }
};

Planar planar_structure(const Diagram& d) {
  Planar p;
  const int m = static_cast<int>(d.crossing_count());
  p.vertex_count = m;
  const auto& comps = d.components();
  p.leg_vertex.assign(comps.size(), -1);
  p.head_vertex.assign(comps.size(), -1);

  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    const int n = static_cast<int>(comps[c].events.size());
    if (comps[c].closed) {
      for (int k = 0; k < n; ++k) {
        p.edge_index[{c, k}] = static_cast<int>(p.edges.size());
        p.edges.push_back({c, k});
      }
    } else {
      p.leg_vertex[c] = p.vertex_count++;
      p.head_vertex[c] = p.vertex_count++;
      for (int k = -1; k < n; ++k) {
        p.edge_index[{c, k}] = static_cast<int>(p.edges.size());
        p.edges.push_back({c, k});
      }
    }
  }

  auto out_edge = [&](int c, int k) { return p.edge_of(c, k); };
  auto in_edge = [&](int c, int k) {
    const int n = static_cast<int>(comps[c].events.size());
    if (comps[c].closed) return p.edge_of(c, (k - 1 + n) % n);
    return p.edge_of(c, k - 1);
  };

  p.rot.assign(p.vertex_count, {});
  for (int x = 0; x < m; ++x) {
    const auto [oc, ok] = d.locate(x, true);
    const auto [uc, uk] = d.locate(x, false);
    const int over_out = 2 * out_edge(oc, ok), under_out = 2 * out_edge(uc, uk);
    const int over_in = 2 * in_edge(oc, ok) + 1, under_in = 2 * in_edge(uc, uk) + 1;
    if (d.crossing(x).sign > 0) {
      p.rot[x] = {over_out, under_out, over_in, under_in};
    } else {
      p.rot[x] = {over_out, under_in, over_in, under_out};
    }
  }
  for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
    if (comps[c].closed) continue;
    const int n = static_cast<int>(comps[c].events.size());
    p.rot[p.leg_vertex[c]] = {2 * p.edge_of(c, -1)};
    p.rot[p.head_vertex[c]] = {2 * p.edge_of(c, n - 1) + 1};
  }

  const int darts = 2 * static_cast<int>(p.edges.size());
  p.origin.assign(darts, -1);
  p.slot.assign(darts, -1);
  for (int v = 0; v < p.vertex_count; ++v) {
    for (int s = 0; s < static_cast<int>(p.rot[v].size()); ++s) {
      p.origin[p.rot[v][s]] = v;
      p.slot[p.rot[v][s]] = s;
    }
  }

  p.face_of.assign(darts, -1);
  for (int start = 0; start < darts; ++start) {
    if (p.face_of[start] >= 0) continue;
    const int id = static_cast<int>(p.faces.size());
    p.faces.emplace_back();
    int dart = start;
    while (p.face_of[dart] < 0) {
      p.face_of[dart] = id;
      p.faces.back().push_back(dart);
      const int back = dart ^ 1;
      const int v = p.origin[back];
      const int deg = static_cast<int>(p.rot[v].size());
      dart = p.rot[v][(p.slot[back] - 1 + deg) % deg];
    }
  }
  return p;
}

int head_of(const Planar& p, int dart) { return p.origin[dart ^ 1]; }

void require_connected(const Diagram& d, const Planar& p, const char* what) {
  for (const auto& c : d.components()) {
    if (c.closed && c.events.empty()) {
      fail(ErrorKind::precondition, std::string(what) + " needs a diagram without crossing-free circles");
    }
  }
  std::vector<int> parent(p.vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int pieces = p.vertex_count;
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    const int a = find(p.origin[2 * e]), b = find(p.origin[2 * e + 1]);
    if (a != b) {
      parent[a] = b;
      --pieces;
    }
  }
  if (pieces > 1) fail(ErrorKind::precondition, std::string(what) + " needs a connected diagram");
}

}  // namespace

Diagram::Diagram(std::vector<Component> components, std::vector<int> signs)
    : components_(std::move(components)) {
  const std::size_t m = signs.size();
  crossings_.resize(m);
  over_at_.assign(m, {-1, -1});
  under_at_.assign(m, {-1, -1});
  for (std::size_t x = 0; x < m; ++x) {
    if (signs[x] != 1 && signs[x] != -1) fail(ErrorKind::input, "crossing sign must be +1 or -1");
    crossings_[x].id = static_cast<int>(x);
    crossings_[x].sign = signs[x];
  }
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const auto& comp = components_[c];
    if (!(comp.length > 0.0)) fail(ErrorKind::input, "component length must be positive");
    for (std::size_t k = 0; k < comp.events.size(); ++k) {
      const auto& e = comp.events[k];
      if (e.crossing < 0 || static_cast<std::size_t>(e.crossing) >= m) {
        fail(ErrorKind::input, "traversal references an unknown crossing " + std::to_string(e.crossing));
      }
      if (k > 0 && !(comp.events[k - 1].position < e.position)) {
        fail(ErrorKind::input, "traversal positions must increase strictly");
      }
      if (e.position < 0.0 || e.position >= comp.length) {
        fail(ErrorKind::input, "traversal position outside the component");
      }
      auto& slot = e.over ? over_at_[e.crossing] : under_at_[e.crossing];
      if (slot.first >= 0) {
        fail(ErrorKind::input, "crossing " + std::to_string(e.crossing) + " has two " +
                                   (e.over ? "over" : "under") + " passages");
      }
      slot = {static_cast<int>(c), static_cast<int>(k)};
      auto& x = crossings_[e.crossing];
      if (e.over) {
        x.pos_over = e.position;
        x.over_component = static_cast<int>(c);
      } else {
        x.pos_under = e.position;
        x.under_component = static_cast<int>(c);
      }
    }
  }
  for (std::size_t x = 0; x < m; ++x) {
    if (over_at_[x].first < 0 || under_at_[x].first < 0) {
      fail(ErrorKind::input, "crossing " + std::to_string(x) + " needs one over and one under passage");
    }
  }
}

std::pair<int, int> Diagram::locate(int crossing, bool over) const {
  if (crossing < 0 || static_cast<std::size_t>(crossing) >= crossings_.size()) {
    fail(ErrorKind::input, "unknown crossing id " + std::to_string(crossing));
  }
  return over ? over_at_[crossing] : under_at_[crossing];
}

Diagram extract_diagram(std::span<const ProjectedCurve> projected, double tol) {
  GenericityReport report;
  const auto found = find_crossings(projected, tol, &report);
  if (!report.generic()) {
    fail(ErrorKind::degenerate, "non-generic projection: " + to_string(report.clause) +
                                    (report.detail.empty() ? "" : " (" + report.detail + ")"));
  }

  struct Pending {
    double position;
    std::size_t found_index;
    bool over;
  };
  std::vector<std::vector<Pending>> per_comp(projected.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto& x = found[i];
    const auto& co = projected[x.over_curve];
    const auto& cu = projected[x.under_curve];
    per_comp[x.over_curve].push_back(
        {co.arc_start[x.over_edge] + x.over_param * co.edge_length[x.over_edge], i, true});
    per_comp[x.under_curve].push_back(
        {cu.arc_start[x.under_edge] + x.under_param * cu.edge_length[x.under_edge], i, false});
  }

  // Crossing ids follow the order of first passage along the traversal.
  std::vector<int> id_of(found.size(), -1);
  std::vector<int> signs;
  std::vector<Component> comps;
  for (std::size_t c = 0; c < projected.size(); ++c) {
    auto& evs = per_comp[c];
    std::sort(evs.begin(), evs.end(), [](const Pending& a, const Pending& b) { return a.position < b.position; });
    Component comp;
    comp.closed = projected[c].closed;
    comp.length = projected[c].length;
    for (const auto& e : evs) {
      int& id = id_of[e.found_index];
      if (id < 0) {
        id = static_cast<int>(signs.size());
        signs.push_back(found[e.found_index].sign);
      }
      comp.events.push_back({id, e.over, std::min(e.position, std::nextafter(comp.length, 0.0))});
    }
    comps.push_back(std::move(comp));
  }
  return Diagram(std::move(comps), std::move(signs));
}

Diagram extract_diagram(const ProjectedCurve& projected, double tol) {
  return extract_diagram(std::span<const ProjectedCurve>(&projected, 1), tol);
}

Diagram diagram_of(const PolygonalCurve& curve, const Direction& dir, double tol) {
  return extract_diagram(project(curve, dir), tol);
}

CrossingCounts crossing_counts(const Diagram& d) {
  CrossingCounts counts;
  for (const auto& x : d.crossings()) (x.sign > 0 ? counts.n_plus : counts.n_minus)++;
  return counts;
}

int writhe(const Diagram& d) {
  const auto c = crossing_counts(d);
  return c.n_plus - c.n_minus;
}

bool interleaved(const Crossing& c1, const Crossing& c2, const Diagram& d) {
  (void)d;
  if (c1.id == c2.id) return false;
  if (c1.over_component != c1.under_component || c2.over_component != c2.under_component ||
      c1.over_component != c2.over_component) {
    fail(ErrorKind::precondition, "interleaving is defined for self-crossings of one component");
  }
  const double lo = std::min(c1.pos_over, c1.pos_under), hi = std::max(c1.pos_over, c1.pos_under);
  const bool a_in = lo < c2.pos_over && c2.pos_over < hi;
  const bool b_in = lo < c2.pos_under && c2.pos_under < hi;
  return a_in != b_in;
}

Diagram parse_gauss_code(std::string_view code) {
  Raw r;
  std::map<long, int> ids;
  std::map<int, int> sign_seen;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < code.size() && std::isspace(static_cast<unsigned char>(code[i]))) ++i;
  };
  auto error = [&](const std::string& msg) -> void {
    fail(ErrorKind::input, "gauss code: " + msg + " at offset " + std::to_string(i));
  };

  skip_ws();
  if (i == code.size()) error("empty code");
  while (true) {
    skip_ws();
    if (i >= code.size()) error("expected component type");
    const char kind = static_cast<char>(std::tolower(static_cast<unsigned char>(code[i])));
    if (kind != 'c' && kind != 'o') error("component must start with 'c' or 'o'");
    ++i;
    skip_ws();
    if (i >= code.size() || code[i] != ':') error("expected ':'");
    ++i;
    r.closed.push_back(kind == 'c');
    r.comps.emplace_back();
    while (true) {
      skip_ws();
      if (i >= code.size() || code[i] == ';') break;
      const char ou = static_cast<char>(std::toupper(static_cast<unsigned char>(code[i])));
      if (ou != 'O' && ou != 'U') error("expected O or U");
      ++i;
      std::size_t start = i;
      while (i < code.size() && std::isdigit(static_cast<unsigned char>(code[i]))) ++i;
      if (start == i) error("expected crossing number");
      const long label = std::stol(std::string(code.substr(start, i - start)));
      if (i >= code.size() || (code[i] != '+' && code[i] != '-')) error("expected sign");
      const int sign = code[i] == '+' ? 1 : -1;
      ++i;
      auto [it, inserted] = ids.try_emplace(label, static_cast<int>(ids.size()));
      if (inserted) r.signs.push_back(sign);
      if (r.signs[it->second] != sign) error("crossing " + std::to_string(label) + " has inconsistent signs");
      r.comps.back().push_back({it->second, ou == 'O'});
    }
    if (i >= code.size()) break;
    ++i;  // ';'
  }
  return from_raw(r);
}

std::string to_gauss_code(const Diagram& d) {
  std::ostringstream s;
  for (std::size_t c = 0; c < d.component_count(); ++c) {
    const auto& comp = d.components()[c];
    if (c > 0) s << " ; ";
    s << (comp.closed ? "c:" : "o:");
    for (const auto& e : comp.events) {
      s << ' ' << (e.over ? 'O' : 'U') << e.crossing << (d.crossing(e.crossing).sign > 0 ? '+' : '-');
    }
  }
  return s.str();
}

std::string dump_gauss(const Diagram& d) {
  std::string out;
  char buf[128];
  for (std::size_t c = 0; c < d.component_count(); ++c) {
    for (const auto& e : d.components()[c].events) {
      std::snprintf(buf, sizeof buf, "%zu %d %c %+d %.17g\n", c, e.crossing, e.over ? 'O' : 'U',
                    d.crossing(e.crossing).sign, e.position);
      out += buf;
    }
  }
  return out;
}

Diagram switch_crossing(const Diagram& d, int crossing) {
  d.locate(crossing, true);
  std::vector<Component> comps = d.components();
  std::vector<int> signs;
  for (const auto& x : d.crossings()) signs.push_back(x.sign);
  for (auto& comp : comps) {
    for (auto& e : comp.events) {
      if (e.crossing == crossing) e.over = !e.over;
    }
  }
  signs[crossing] = -signs[crossing];
  return Diagram(std::move(comps), std::move(signs));
}

Diagram mirror(const Diagram& d) {
  std::vector<Component> comps = d.components();
  std::vector<int> signs;
  for (const auto& x : d.crossings()) signs.push_back(-x.sign);
  for (auto& comp : comps) {
    for (auto& e : comp.events) e.over = !e.over;
  }
  return Diagram(std::move(comps), std::move(signs));
}

Diagram smooth_crossing(const Diagram& d, int crossing) {
  Raw r = to_raw(d);
  const auto [c1, k1] = d.locate(crossing, true);
  const auto [c2, k2] = d.locate(crossing, false);

  std::vector<std::vector<Ev>> fresh;
  std::vector<bool> fresh_closed;

  if (c1 == c2) {
    const auto& evs = r.comps[c1];
    const std::size_t n = evs.size();
    const std::size_t i = static_cast<std::size_t>(std::min(k1, k2));
    const std::size_t j = static_cast<std::size_t>(std::max(k1, k2));
    // The loop between the two passages always closes up.
    std::vector<Ev> inner(evs.begin() + static_cast<long>(i) + 1, evs.begin() + static_cast<long>(j));
    std::vector<Ev> outer;
    if (r.closed[c1]) {
      outer = cyclic_slice(evs, j + 1, n - (j - i) - 1);
    } else {
      outer.assign(evs.begin(), evs.begin() + static_cast<long>(i));
      outer.insert(outer.end(), evs.begin() + static_cast<long>(j) + 1, evs.end());
    }
    fresh.push_back(std::move(outer));
    fresh_closed.push_back(r.closed[c1]);
    fresh.push_back(std::move(inner));
    fresh_closed.push_back(true);
  } else {
    const auto& a = r.comps[c1];
    const auto& b = r.comps[c2];
    const bool ca = r.closed[c1], cb = r.closed[c2];
    auto after = [](const std::vector<Ev>& evs, std::size_t k) {
      return std::vector<Ev>(evs.begin() + static_cast<long>(k) + 1, evs.end());
    };
    auto before = [](const std::vector<Ev>& evs, std::size_t k) {
      return std::vector<Ev>(evs.begin(), evs.begin() + static_cast<long>(k));
    };
    auto loop_from = [](const std::vector<Ev>& evs, std::size_t k) {
      return cyclic_slice(evs, k + 1, evs.size() - 1);
    };
    const auto ka = static_cast<std::size_t>(k1), kb = static_cast<std::size_t>(k2);
    if (ca && cb) {
      auto merged = loop_from(a, ka);
      const auto tail = loop_from(b, kb);
      merged.insert(merged.end(), tail.begin(), tail.end());
      fresh.push_back(std::move(merged));
      fresh_closed.push_back(true);
    } else if (ca != cb) {
      const auto& open = ca ? b : a;
      const auto& loop = ca ? a : b;
      const std::size_t ko = ca ? kb : ka, kl = ca ? ka : kb;
      auto merged = before(open, ko);
      const auto mid = loop_from(loop, kl);
      const auto tail = after(open, ko);
      merged.insert(merged.end(), mid.begin(), mid.end());
      merged.insert(merged.end(), tail.begin(), tail.end());
      fresh.push_back(std::move(merged));
      fresh_closed.push_back(false);
    } else {
      auto first = before(a, ka);
      const auto first_tail = after(b, kb);
      first.insert(first.end(), first_tail.begin(), first_tail.end());
      auto second = before(b, kb);
      const auto second_tail = after(a, ka);
      second.insert(second.end(), second_tail.begin(), second_tail.end());
      fresh.push_back(std::move(first));
      fresh_closed.push_back(false);
      fresh.push_back(std::move(second));
      fresh_closed.push_back(false);
    }
  }

  // Untouched components keep their order; the new ones replace the first
  // affected slot.
  Raw out;
  out.signs = r.signs;
  const int first_slot = std::min(c1, c2);
  for (int c = 0; c < static_cast<int>(r.comps.size()); ++c) {
    if (c == first_slot) {
      for (std::size_t f = 0; f < fresh.size(); ++f) {
        out.comps.push_back(fresh[f]);
        out.closed.push_back(fresh_closed[f]);
      }
    }
    if (c == c1 || c == c2) continue;
    out.comps.push_back(r.comps[c]);
    out.closed.push_back(r.closed[c]);
  }
  erase_crossing_id(out, crossing);
  return from_raw(out);
}

Diagram add_distant_circle(const Diagram& d) {
  Raw r = to_raw(d);
  r.comps.emplace_back();
  r.closed.push_back(true);
  return from_raw(r);
}

Diagram rotate_basepoint(const Diagram& d, int component, int start) {
  Raw r = to_raw(d);
  if (component < 0 || component >= static_cast<int>(r.comps.size())) fail(ErrorKind::input, "no such component");
  if (!r.closed[component]) fail(ErrorKind::precondition, "only closed components have a movable basepoint");
  auto& evs = r.comps[component];
  if (evs.empty()) return from_raw(r);
  if (start < 0 || start >= static_cast<int>(evs.size())) fail(ErrorKind::input, "event index out of range");
  std::rotate(evs.begin(), evs.begin() + start, evs.end());
  return from_raw(r);
}

Diagram cut_open(const Diagram& d, int at) {
  if (d.component_count() != 1 || !d.components()[0].closed) {
    fail(ErrorKind::precondition, "cut_open needs a closed one-component diagram");
  }
  Diagram rotated = rotate_basepoint(d, 0, at);
  Raw r = to_raw(rotated);
  r.closed[0] = false;
  return from_raw(r);
}

Diagram add_kink(const Diagram& d, int component, int after, int sign, bool over_first) {
  Raw r = to_raw(d);
  if (component < 0 || component >= static_cast<int>(r.comps.size())) fail(ErrorKind::input, "no such component");
  auto& evs = r.comps[component];
  if (after < -1 || after >= static_cast<int>(evs.size())) fail(ErrorKind::input, "event index out of range");
  if (sign != 1 && sign != -1) fail(ErrorKind::input, "kink sign must be +1 or -1");
  const int id = static_cast<int>(r.signs.size());
  r.signs.push_back(sign);
  const auto at = evs.begin() + after + 1;
  evs.insert(at, {{id, over_first}, {id, !over_first}});
  return from_raw(r);
}

namespace {

struct FaceDart {
  int dart;
  bool forward;
};

// First face containing a dart of each edge, with the darts found.
bool common_face(const Planar& p, int ea, int eb, FaceDart& da, FaceDart& db) {
  for (const auto& face : p.faces) {
    int fa = -1, fb = -1;
    for (int dart : face) {
      if (dart / 2 == ea && fa < 0) fa = dart;
      if (dart / 2 == eb && fb < 0) fb = dart;
    }
    if (fa >= 0 && fb >= 0) {
      da = {fa, fa % 2 == 0};
      db = {fb, fb % 2 == 0};
      return true;
    }
  }
  return false;
}

void check_edge(const Diagram& d, const EdgeRef& e) {
  if (e.component < 0 || e.component >= static_cast<int>(d.component_count())) {
    fail(ErrorKind::input, "no such component");
  }
  const auto& comp = d.components()[e.component];
  const int n = static_cast<int>(comp.events.size());
  const int lo = comp.closed ? 0 : -1;
  if (e.after < lo || e.after >= n) fail(ErrorKind::input, "edge index out of range");
}

}  // namespace

Diagram add_bigon(const Diagram& d, EdgeRef a, EdgeRef b) {
  check_edge(d, a);
  check_edge(d, b);
  if (a.component == b.component && a.after == b.after) {
    fail(ErrorKind::precondition, "a bigon needs two distinct edges");
  }
  const Planar p = planar_structure(d);
  require_connected(d, p, "add_bigon");
  FaceDart da{}, db{};
  if (!common_face(p, p.edge_of(a.component, a.after), p.edge_of(b.component, b.after), da, db)) {
    fail(ErrorKind::precondition, "edges do not border a common face");
  }
  // With the face on the left of strand a, an antiparallel strand b dips
  // under a first positively, then negatively; a parallel one the reverse.
  const bool antiparallel = da.forward == db.forward;
  int sx = antiparallel ? 1 : -1;
  if (!da.forward) sx = -sx;

  Raw r = to_raw(d);
  const int x = static_cast<int>(r.signs.size());
  const int y = x + 1;
  r.signs.push_back(sx);
  r.signs.push_back(-sx);
  const std::vector<Ev> on_a = {{x, true}, {y, true}};
  const std::vector<Ev> on_b = antiparallel ? std::vector<Ev>{{y, false}, {x, false}}
                                            : std::vector<Ev>{{x, false}, {y, false}};
  // Insert at the later index first so the earlier one stays valid.
  std::vector<std::pair<EdgeRef, const std::vector<Ev>*>> inserts = {{a, &on_a}, {b, &on_b}};
  if (a.component == b.component && a.after < b.after) std::swap(inserts[0], inserts[1]);
  for (const auto& [e, evs] : inserts) {
    auto& comp = r.comps[e.component];
    comp.insert(comp.begin() + e.after + 1, evs->begin(), evs->end());
  }
  return from_raw(r);
}

std::vector<std::pair<EdgeRef, EdgeRef>> bigon_candidates(const Diagram& d) {
  const Planar p = planar_structure(d);
  require_connected(d, p, "bigon_candidates");
  std::vector<std::pair<EdgeRef, EdgeRef>> out;
  std::vector<std::pair<int, int>> seen;
  for (const auto& face : p.faces) {
    for (std::size_t i = 0; i < face.size(); ++i) {
      for (std::size_t j = i + 1; j < face.size(); ++j) {
        int ea = face[i] / 2, eb = face[j] / 2;
        if (ea == eb) continue;
        if (ea > eb) std::swap(ea, eb);
        if (std::find(seen.begin(), seen.end(), std::make_pair(ea, eb)) != seen.end()) continue;
        seen.emplace_back(ea, eb);
        out.push_back({{p.edges[ea].component, p.edges[ea].after}, {p.edges[eb].component, p.edges[eb].after}});
      }
    }
  }
  return out;
}

namespace {

struct R3Site {
  std::array<int, 3> edges;
};

std::vector<R3Site> r3_sites(const Diagram& d, const Planar& p) {
  std::vector<R3Site> sites;
  const int m = static_cast<int>(d.crossing_count());
  for (const auto& face : p.faces) {
    if (face.size() != 3) continue;
    bool ok = true;
    std::array<int, 3> verts{};
    for (int s = 0; s < 3; ++s) {
      verts[s] = p.origin[face[s]];
      if (verts[s] >= m || head_of(p, face[s]) >= m) ok = false;
    }
    if (!ok || verts[0] == verts[1] || verts[1] == verts[2] || verts[0] == verts[2]) continue;
    int tops = 0, bottoms = 0;
    std::array<int, 3> edges{};
    for (int s = 0; s < 3; ++s) {
      const int e = face[s] / 2;
      edges[s] = e;
      const auto& info = p.edges[e];
      const auto& evs = d.components()[info.component].events;
      const int n = static_cast<int>(evs.size());
      const bool o1 = evs[info.after].over;
      const bool o2 = evs[(info.after + 1) % n].over;
      if (o1 && o2) ++tops;
      if (!o1 && !o2) ++bottoms;
    }
    if (tops == 1 && bottoms == 1) sites.push_back({edges});
  }
  return sites;
}

}  // namespace

std::size_t r3_move_count(const Diagram& d) {
  const Planar p = planar_structure(d);
  return r3_sites(d, p).size();
}

Diagram apply_r3(const Diagram& d, std::size_t index) {
  const Planar p = planar_structure(d);
  const auto sites = r3_sites(d, p);
  if (index >= sites.size()) fail(ErrorKind::input, "no such Reidemeister-III site");
  Raw r = to_raw(d);
  for (int e : sites[index].edges) {
    const auto& info = p.edges[e];
    auto& evs = r.comps[info.component];
    const std::size_t n = evs.size();
    std::swap(evs[static_cast<std::size_t>(info.after)], evs[(static_cast<std::size_t>(info.after) + 1) % n]);
  }
  return from_raw(r);
}

bool is_planar(const Diagram& d) {
  const Planar p = planar_structure(d);
  std::vector<int> parent(p.vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int pieces = p.vertex_count;
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    const int a = find(p.origin[2 * e]), b = find(p.origin[2 * e + 1]);
    if (a != b) {
      parent[a] = b;
      --pieces;
    }
  }
  const long euler = static_cast<long>(p.vertex_count) - static_cast<long>(p.edges.size()) +
                     static_cast<long>(p.faces.size());
  return euler == 2L * pieces;
}

bool endpoints_share_region(const Diagram& d) {
  if (d.component_count() != 1 || d.components()[0].closed) {
    fail(ErrorKind::precondition, "knot-type test needs a one-component knotoid diagram");
  }
  const Planar p = planar_structure(d);
  const int n = static_cast<int>(d.components()[0].events.size());
  const int into_leg = 2 * p.edge_of(0, -1) + 1;
  const int into_head = 2 * p.edge_of(0, n - 1);
  return p.face_of[into_leg] == p.face_of[into_head];
}

}  // namespace km
