#include "knotmeasure/measures.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "knotmeasure/error.hpp"
#include "knotmeasure/generators.hpp"
#include "knotmeasure/vassiliev.hpp"

namespace km {

std::vector<Rational> sample_projections(const PolygonalCurve& curve, const SamplingOptions& opts,
                                         const std::function<Rational(const ProjectionSample&)>& fn,
                                         std::size_t* rejected) {
  if (opts.samples < 1) fail(ErrorKind::input, "at least one sample is required");
  const std::size_t n = opts.samples;
  std::vector<Rational> values(n);
  std::vector<std::size_t> rejections(n, 0);

  auto run_one = [&](std::size_t i) {
    for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
      const Direction dir = sample_direction(opts.seed, i, static_cast<std::uint64_t>(attempt));
      const ProjectedCurve pc = project(curve, dir);
      GenericityReport report;
      find_crossings(std::span<const ProjectedCurve>(&pc, 1), opts.tol, &report);
      if (!report.generic()) {
        ++rejections[i];
        continue;
      }
      ProjectionSample s{i, dir, extract_diagram(pc, opts.tol)};
      values[i] = fn(s);
      return;
    }
    fail(ErrorKind::degenerate, "no generic projection found for sample " + std::to_string(i) + " after " +
                                    std::to_string(opts.max_attempts) + " attempts");
  };

  const unsigned threads = static_cast<unsigned>(std::clamp<std::size_t>(opts.threads, 1, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
  } else {
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t begin = n * w / threads, end = n * (w + 1) / threads;
        try {
          for (std::size_t i = begin; i < end; ++i) run_one(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  std::size_t total_rejected = 0;
  for (std::size_t r : rejections) total_rejected += r;
  if (total_rejected > n) {
    fail(ErrorKind::degenerate, "more than half of the sampled directions were non-generic (" +
                                    std::to_string(total_rejected) + " rejected, " + std::to_string(n) + " used)");
  }
  if (rejected != nullptr) *rejected = total_rejected;
  return values;
}

MCEstimate summarize(const std::vector<Rational>& values, std::string measure, unsigned k, std::size_t rejected,
                     std::uint64_t seed) {
  MCEstimate e;
  e.measure = std::move(measure);
  e.k = k;
  e.seed = seed;
  e.samples_used = values.size();
  e.samples_rejected = rejected;
  if (values.empty()) return e;
  Rational sum = 0, sum_sq = 0;
  for (const auto& v : values) {
    sum += v;
    sum_sq += v * v;
  }
  const Rational n(static_cast<long long>(values.size()));
  e.exact_mean = sum / n;
  e.mean = static_cast<double>(e.exact_mean);
  if (values.size() > 1) {
    const Rational var = (sum_sq - n * e.exact_mean * e.exact_mean) / (n - 1);
    e.std_error = std::sqrt(std::max(0.0, static_cast<double>(var / n)));
  }
  return e;
}

MCEstimate w_k_estimate(const PolygonalCurve& curve, unsigned k, const SamplingOptions& opts) {
  const BracketOptions bopts{opts.max_crossings, 1};
  std::size_t rejected = 0;
  const auto values = sample_projections(
      curve, opts, [&](const ProjectionSample& s) { return vassiliev_coefficient(s.diagram, k, bopts); }, &rejected);
  return summarize(values, "w" + std::to_string(k), k, rejected, opts.seed);
}

MCEstimate sll_estimate(const PolygonalCurve& curve, const SamplingOptions& opts) {
  std::size_t rejected = 0;
  const auto values = sample_projections(
      curve, opts, [](const ProjectionSample& s) { return Rational(alternating_pair_sum(s.diagram), 2); },
      &rejected);
  return summarize(values, "sll", 2, rejected, opts.seed);
}

const std::vector<Laurent>& k21_fingerprints() {
  static const std::vector<Laurent> prints = [] {
    const Diagram base = parse_gauss_code("o: O0+ U1+ U0+ O1+");
    // Reading the knotoid from head to leg keeps every crossing sign.
    const Diagram reversed = parse_gauss_code("o: O1+ U0+ U1+ O0+");
    std::vector<Laurent> out;
    for (const Diagram& d : {base, mirror(base), reversed, mirror(reversed)}) {
      Laurent j = enhanced_jones(d);
      if (std::find(out.begin(), out.end(), j) == out.end()) out.push_back(std::move(j));
    }
    return out;
  }();
  return prints;
}

bool is_k21(const Laurent& fingerprint) {
  const auto& prints = k21_fingerprints();
  return std::find(prints.begin(), prints.end(), fingerprint) != prints.end();
}

Rational Spectrum::regrouped_mean(unsigned k) const {
  Rational sum = 0;
  for (const auto& e : entries) {
    sum += Rational(static_cast<long long>(e.count)) * vassiliev_from_polynomial(e.fingerprint, k);
  }
  return samples_used == 0 ? Rational(0) : sum / Rational(static_cast<long long>(samples_used));
}

double Spectrum::k21_probability() const {
  std::size_t count = 0;
  for (const auto& e : entries) {
    if (e.k21) count += e.count;
  }
  return samples_used == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(samples_used);
}

Spectrum knotoid_spectrum(const PolygonalCurve& curve, const SamplingOptions& opts) {
  const BracketOptions bopts{opts.max_crossings, 1};
  std::vector<Laurent> prints(opts.samples);
  std::size_t rejected = 0;
  sample_projections(
      curve, opts,
      [&](const ProjectionSample& s) {
        prints[s.index] = enhanced_jones(s.diagram, bopts);
        return Rational(0);
      },
      &rejected);

  // Classes in order of first appearance, then stably by frequency.
  std::vector<SpectrumEntry> entries;
  for (const auto& p : prints) {
    auto it = std::find_if(entries.begin(), entries.end(), [&](const SpectrumEntry& e) { return e.fingerprint == p; });
    if (it == entries.end()) {
      entries.push_back({p, 0, 0.0, vassiliev_from_polynomial(p, 2), is_k21(p)});
      it = entries.end() - 1;
    }
    ++it->count;
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.count > b.count; });
  for (auto& e : entries) e.probability = static_cast<double>(e.count) / static_cast<double>(opts.samples);

  Spectrum s;
  s.entries = std::move(entries);
  s.samples_used = opts.samples;
  s.samples_rejected = rejected;
  s.seed = opts.seed;
  return s;
}

std::vector<ScanRow> convergence_scan(const PolygonalCurve& closed, const std::vector<double>& gaps, unsigned k,
                                      const SamplingOptions& opts) {
  if (!closed.closed()) fail(ErrorKind::precondition, "convergence scan starts from a closed curve");
  std::vector<ScanRow> rows;
  for (double g : gaps) {
    if (g < 0.0) fail(ErrorKind::input, "gaps must be non-negative");
    const PolygonalCurve c = g == 0.0 ? closed : open_with_gap(closed, g * closed.diameter());
    rows.push_back({g, w_k_estimate(c, k, opts)});
  }
  return rows;
}

}  // namespace km
