#include "curve_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace kmcli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, std::size_t line) {
  const std::string t = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw InputError("line " + std::to_string(line) + ": '" + t + "' is not a finite number");
  }
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CurveData parse_curve_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("closed") || !j.contains("vertices")) {
    throw InputError("curve JSON needs the fields 'closed' and 'vertices'");
  }
  if (!j["closed"].is_boolean()) throw InputError("'closed' must be true or false");
  if (!j["vertices"].is_array()) throw InputError("'vertices' must be an array of [x, y, z] triples");
  CurveData c;
  c.closed = j["closed"].get<bool>();
  for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
    const auto& v = j["vertices"][i];
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number()) {
      throw InputError("vertex " + std::to_string(i) + " is not a triple of numbers");
    }
    c.vertices.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
  }
  return c;
}

CurveData parse_curve_csv(const std::string& text) {
  CurveData c;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      std::string tag;
      for (char ch : t.substr(1)) {
        if (ch != ' ') tag.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
      }
      if (tag == "closed" || tag == "closed=true" || tag == "closed=1") c.closed = true;
      if (tag == "open" || tag == "closed=false" || tag == "closed=0") c.closed = false;
      continue;
    }
    std::array<double, 3> v{};
    std::size_t start = 0;
    for (int k = 0; k < 3; ++k) {
      const std::size_t comma = t.find(',', start);
      if (k < 2 && comma == std::string::npos) {
        throw InputError("line " + std::to_string(number) + ": expected three comma-separated values");
      }
      const std::string field = k < 2 ? t.substr(start, comma - start) : t.substr(start);
      if (k == 2 && field.find(',') != std::string::npos) {
        throw InputError("line " + std::to_string(number) + ": expected three comma-separated values");
      }
      v[static_cast<std::size_t>(k)] = parse_number(field, number);
      start = comma + 1;
    }
    c.vertices.push_back(v);
  }
  return c;
}

CurveData read_curve_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open curve file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  const bool csv_ext = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  const std::string t = trim(text);
  if (!csv_ext && !t.empty() && t[0] == '{') return parse_curve_json(text);
  return parse_curve_csv(text);
}

std::string write_curve_json(const CurveData& c) {
  std::string out = std::string("{\"closed\": ") + (c.closed ? "true" : "false") + ", \"vertices\": [";
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    const auto& v = c.vertices[i];
    out += (i == 0 ? "\n  [" : ",\n  [") + format_double(v[0]) + ", " + format_double(v[1]) + ", " +
           format_double(v[2]) + "]";
  }
  out += "\n]}\n";
  return out;
}

std::string write_curve_csv(const CurveData& c) {
  std::string out = c.closed ? "#closed\n" : "#open\n";
  for (const auto& v : c.vertices) {
    out += format_double(v[0]) + "," + format_double(v[1]) + "," + format_double(v[2]) + "\n";
  }
  return out;
}

}  // namespace kmcli
