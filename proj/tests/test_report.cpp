#include "taubnut/report.hpp"

#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace taubnut;

TEST_CASE("csv writer: header, provenance, 15 significant digits") {
  CsvWriter csv({"x", "y"});
  csv.provenance("1,1,2,1", 42);
  csv.row({1.0 / 3.0, 2.0});
  std::string s = csv.str();
  std::istringstream in(s);
  std::string l1, l2, l3;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  CHECK(l1 == "# provenance: params=1,1,2,1 seed=42 version=1.0.0");
  CHECK(l2 == "x,y");
  CHECK(l3 == "0.333333333333333,2");
  CHECK_THROWS(csv.row({1.0}));  // column count mismatch
}

TEST_CASE("atomic write leaves no temp file and replaces content") {
  std::string path = "report_test_dir/out.txt";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string content;
  std::getline(in, content);
  CHECK(content == "second");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove_all("report_test_dir");
}

TEST_CASE("sweep parsing") {
  auto v = parse_sweep("-5:5:101");
  REQUIRE(v.size() == 101);
  CHECK(v.front() == -5.0);
  CHECK(v.back() == 5.0);
  CHECK(v[50] == doctest::Approx(0.0));
  CHECK(parse_sweep("2:9:1") == std::vector<double>{2.0});
  CHECK_THROWS(parse_sweep("1:2"));
  CHECK_THROWS(parse_sweep("1:2:0"));
  CHECK_THROWS(parse_sweep("abc"));
}

TEST_CASE("svg plots are deterministic with a fixed canvas") {
  SvgPlot plot;
  plot.title = "t";
  plot.xlabel = "x";
  plot.ylabel = "y";
  plot.series.push_back({"s", {0, 1, 2}, {1.0, 0.5, 2.0}});
  std::string a = plot.render(), b = plot.render();
  CHECK(a == b);
  CHECK(a.find("width=\"800\" height=\"500\"") != std::string::npos);
  CHECK(a.find("<polyline") != std::string::npos);
}
