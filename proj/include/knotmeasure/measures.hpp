#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "knotmeasure/diagram.hpp"
#include "knotmeasure/geometry.hpp"
#include "knotmeasure/polynomial.hpp"

namespace km {

struct SamplingOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  double tol = kDefaultTolerance;
  int max_crossings = 24;
  /// Fresh directions tried for one sample index before giving up.
  int max_attempts = 64;
};

struct MCEstimate {
  std::string measure;
  unsigned k = 0;
  double mean = 0.0;
  double std_error = 0.0;
  Rational exact_mean = 0;  // the sample mean before rounding
  std::size_t samples_used = 0;
  std::size_t samples_rejected = 0;
  std::uint64_t seed = 0;
};

/// One accepted projection direction together with its diagram.
struct ProjectionSample {
  std::size_t index = 0;
  Direction dir;
  Diagram diagram;
};

/// Draws `samples` generic directions (resampling non-generic ones from the
/// same counter stream) and evaluates `fn` on each diagram. Values are
/// returned in sample-index order regardless of the thread count.
std::vector<Rational> sample_projections(const PolygonalCurve& curve, const SamplingOptions& opts,
                                         const std::function<Rational(const ProjectionSample&)>& fn,
                                         std::size_t* rejected = nullptr);

/// Mean and standard error (unbiased variance) of exact values.
MCEstimate summarize(const std::vector<Rational>& values, std::string measure, unsigned k,
                     std::size_t rejected, std::uint64_t seed);

/// Average of v_k over projection directions.
MCEstimate w_k_estimate(const PolygonalCurve& curve, unsigned k, const SamplingOptions& opts);

/// Per direction, half the alternating-pair sign sum; averaged.
MCEstimate sll_estimate(const PolygonalCurve& curve, const SamplingOptions& opts);

struct SpectrumEntry {
  Laurent fingerprint;  // enhanced Jones polynomial of the projected knotoid
  std::size_t count = 0;
  double probability = 0.0;
  Rational v2 = 0;
  bool k21 = false;
};

struct Spectrum {
  std::vector<SpectrumEntry> entries;  // most probable first
  std::size_t samples_used = 0;
  std::size_t samples_rejected = 0;
  std::uint64_t seed = 0;

  /// sum over classes of count * v_k(class) / samples, exactly.
  Rational regrouped_mean(unsigned k) const;
  /// Fraction of samples in the k2.1 class.
  double k21_probability() const;
};

Spectrum knotoid_spectrum(const PolygonalCurve& curve, const SamplingOptions& opts);

/// Enhanced Jones fingerprints of k2.1 and its mirror / reverse variants.
const std::vector<Laurent>& k21_fingerprints();
bool is_k21(const Laurent& fingerprint);

struct ScanRow {
  double gap = 0.0;  // endpoint distance as a fraction of the closed curve diameter
  MCEstimate estimate;
};

/// Opens `closed` to each endpoint gap and estimates w_k (gap 0 keeps the
/// closed curve).
std::vector<ScanRow> convergence_scan(const PolygonalCurve& closed, const std::vector<double>& gaps, unsigned k,
                                      const SamplingOptions& opts);

}  // namespace km
