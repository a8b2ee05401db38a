#include <cstdio>
#include <fstream>
#include <random>

#include "cli/curve_io.hpp"
#include "doctest.h"

using namespace kmcli;

TEST_CASE("JSON curves round-trip exactly") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  CurveData c;
  c.closed = true;
  for (int i = 0; i < 50; ++i) c.vertices.push_back({u(gen), u(gen) * 1e-9, u(gen) * 1e7});
  const CurveData back = parse_curve_json(write_curve_json(c));
  CHECK(back.closed);
  CHECK(back.vertices == c.vertices);
  const CurveData csv = parse_curve_csv(write_curve_csv(c));
  CHECK(csv.closed);
  CHECK(csv.vertices == c.vertices);
}

TEST_CASE("CSV parsing") {
  const CurveData c = parse_curve_csv("# exported trajectory\n#closed\n0,0,0\n 1, 2 ,3\n\n4,5,6e-1\n");
  CHECK(c.closed);
  REQUIRE(c.vertices.size() == 3);
  CHECK(c.vertices[2][2] == 0.6);
  CHECK_FALSE(parse_curve_csv("1,2,3\n").closed);
  CHECK_THROWS_AS(parse_curve_csv("1,2\n"), InputError);
  CHECK_THROWS_AS(parse_curve_csv("1,2,3,4\n"), InputError);
  CHECK_THROWS_AS(parse_curve_csv("1,x,3\n"), InputError);
  CHECK_THROWS_AS(parse_curve_csv("1,nan,3\n"), InputError);
}

TEST_CASE("JSON validation") {
  CHECK_THROWS_AS(parse_curve_json("{"), InputError);
  CHECK_THROWS_AS(parse_curve_json("{\"vertices\": []}"), InputError);
  CHECK_THROWS_AS(parse_curve_json("{\"closed\": 1, \"vertices\": []}"), InputError);
  CHECK_THROWS_AS(parse_curve_json("{\"closed\": true, \"vertices\": [[1, 2]]}"), InputError);
  CHECK_THROWS_AS(parse_curve_json("{\"closed\": true, \"vertices\": [[1, 2, \"3\"]]}"), InputError);
  const CurveData c = parse_curve_json("{\"closed\": false, \"vertices\": [[1, 2, 3], [4, 5, 6]]}");
  CHECK_FALSE(c.closed);
  CHECK(c.vertices.size() == 2);
}

TEST_CASE("file format detection") {
  const std::string json_path = "curve_io_test.json", csv_path = "curve_io_test.csv";
  std::ofstream(json_path) << "  {\"closed\": true, \"vertices\": [[0,0,0],[1,0,0],[0,1,0]]}";
  std::ofstream(csv_path) << "#closed\n0,0,0\n1,0,0\n0,1,0\n";
  CHECK(read_curve_file(json_path).vertices.size() == 3);
  CHECK(read_curve_file(csv_path).closed);
  CHECK_THROWS_AS(read_curve_file("does-not-exist.json"), InputError);
  std::remove(json_path.c_str());
  std::remove(csv_path.c_str());
}
