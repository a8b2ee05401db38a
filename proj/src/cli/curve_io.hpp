#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmcli {

struct CurveData {
  bool closed = false;
  std::vector<std::array<double, 3>> vertices;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// JSON document {"closed": bool, "vertices": [[x, y, z], ...]}.
CurveData parse_curve_json(const std::string& text);

/// One "x,y,z" line per vertex. A comment line "#closed" (or "#closed=true")
/// marks a closed curve; "#open" or no marker means open. Other lines
/// starting with '#' are ignored.
CurveData parse_curve_csv(const std::string& text);

/// Chooses the format from the extension (.csv) or the first non-blank
/// character ('{' means JSON).
CurveData read_curve_file(const std::string& path);

std::string write_curve_json(const CurveData& c);
std::string write_curve_csv(const CurveData& c);

}  // namespace kmcli
