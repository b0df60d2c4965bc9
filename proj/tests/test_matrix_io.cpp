#include "doctest.h"

#include "bjortho/matrix_io.hpp"
#include "bjortho/rng.hpp"
#include "bjortho/types.hpp"

#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

using bjortho::Matrix;
using bjortho::Vector;

// Writes content to a unique temp file and removes it when the guard dies.
class TempFile {
 public:
  explicit TempFile(const std::string& content, const std::string& suffix = ".txt") {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             ("bjortho_io_test_" + std::to_string(++counter) + suffix))
                .string();
    std::ofstream out(path_);
    out << content;
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  ~TempFile() { std::remove(path_.c_str()); }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

TEST_CASE("matrix json round trip is exact") {
  bjortho::Rng rng(12);
  const Matrix m = bjortho::random_matrix(rng, 3, 4);
  const auto j = bjortho::matrix_to_json(m);
  CHECK(j.at("rows") == 3);
  CHECK(j.at("cols") == 4);
  const Matrix back = bjortho::matrix_from_json(j);
  CHECK((m - back).cwiseAbs().maxCoeff() == 0.0);

  // Through text: 17 significant digits survive the parse bit-for-bit.
  const std::string text = bjortho::dump_json(j);
  const Matrix reparsed = bjortho::matrix_from_json(nlohmann::json::parse(text));
  CHECK((m - reparsed).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("json serialization prints doubles round-trip exactly") {
  nlohmann::ordered_json j;
  j["third"] = 1.0 / 3.0;
  j["tenth"] = 0.1;
  const std::string text = bjortho::dump_json(j);
  CHECK(text.find("0.33333333333333331") != std::string::npos);
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.back() == '\n');
  CHECK(bjortho::dump_json(j) == bjortho::dump_json(j));
}

TEST_CASE("scalar arrays serialize on a single line") {
  nlohmann::ordered_json j;
  j["values"] = {1.5, 2.0, -3.25};
  const std::string text = bjortho::dump_json(j);
  CHECK(text.find("[1.5, 2, -3.25]") != std::string::npos);
}

TEST_CASE("matrix json schema violations are rejected with diagnostics") {
  const auto load = [](const std::string& body) {
    return bjortho::matrix_from_json(nlohmann::json::parse(body));
  };
  CHECK_THROWS_AS(load(R"({"cols": 2, "data": [[1, 2]]})"), bjortho::InvalidInput);
  CHECK_THROWS_AS(load(R"({"rows": 2, "cols": 2, "data": [[1, 2]]})"), bjortho::InvalidInput);
  CHECK_THROWS_AS(load(R"({"rows": 1, "cols": 2, "data": [[1]]})"), bjortho::InvalidInput);
  CHECK_THROWS_AS(load(R"({"rows": 0, "cols": 0, "data": []})"), bjortho::InvalidInput);
  CHECK_THROWS_AS(load(R"({"rows": 1, "cols": 1, "data": [["x"]]})"), bjortho::InvalidInput);
  CHECK_THROWS_AS(load(R"([[1, 2], [3, 4]])"), bjortho::InvalidInput);

  try {
    load(R"({"rows": 2, "cols": 2, "data": [[1, 2], [3, "bad"]]})");
    FAIL("expected InvalidInput");
  } catch (const bjortho::InvalidInput& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
  }
}

TEST_CASE("loading matrices from files") {
  SUBCASE("json document") {
    TempFile file(R"({"rows": 2, "cols": 2, "data": [[1, 2], [3, 4]]})", ".json");
    const Matrix m = bjortho::load_matrix(file.path());
    CHECK(m(0, 1) == 2.0);
    CHECK(m(1, 0) == 3.0);
  }

  SUBCASE("csv document") {
    TempFile file("1, 2.5\n-3, 4e-1\n", ".csv");
    const Matrix m = bjortho::load_matrix(file.path());
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 2);
    CHECK(m(0, 1) == 2.5);
    CHECK(m(1, 1) == 0.4);
  }

  SUBCASE("csv with a malformed cell names the position") {
    TempFile file("1, 2\n3, oops\n", ".csv");
    try {
      bjortho::load_matrix(file.path());
      FAIL("expected InvalidInput");
    } catch (const bjortho::InvalidInput& e) {
      const std::string msg = e.what();
      CHECK(msg.find("row 2") != std::string::npos);
      CHECK(msg.find("column 2") != std::string::npos);
    }
  }

  SUBCASE("ragged csv rows are rejected") {
    TempFile file("1, 2\n3\n", ".csv");
    CHECK_THROWS_AS(bjortho::load_matrix(file.path()), bjortho::InvalidInput);
  }

  SUBCASE("non-finite values are rejected") {
    TempFile file("1, inf\n3, 4\n", ".csv");
    CHECK_THROWS_AS(bjortho::load_matrix(file.path()), bjortho::InvalidInput);
    TempFile json_file(R"({"rows": 1, "cols": 1, "data": [[null]]})", ".json");
    CHECK_THROWS_AS(bjortho::load_matrix(json_file.path()), bjortho::InvalidInput);
  }

  SUBCASE("empty and missing files are rejected") {
    TempFile file("", ".csv");
    CHECK_THROWS_AS(bjortho::load_matrix(file.path()), bjortho::InvalidInput);
    CHECK_THROWS_AS(bjortho::load_matrix("/nonexistent/bjortho/file.json"),
                    bjortho::InvalidInput);
  }

  SUBCASE("malformed json reports a parse diagnostic") {
    TempFile file("{\"rows\": 2,", ".json");
    CHECK_THROWS_AS(bjortho::load_matrix(file.path()), bjortho::InvalidInput);
  }
}

TEST_CASE("loading vectors from files") {
  SUBCASE("plain json array") {
    TempFile file("[1.5, -2, 3]", ".json");
    const Vector v = bjortho::load_vector(file.path());
    CHECK(v.size() == 3);
    CHECK(v(0) == 1.5);
    CHECK(v(2) == 3.0);
  }

  SUBCASE("single-row matrix object") {
    TempFile file(R"({"rows": 1, "cols": 3, "data": [[1, 2, 3]]})", ".json");
    CHECK(bjortho::load_vector(file.path()).size() == 3);
  }

  SUBCASE("single-column matrix object") {
    TempFile file(R"({"rows": 3, "cols": 1, "data": [[1], [2], [3]]})", ".json");
    const Vector v = bjortho::load_vector(file.path());
    CHECK(v.size() == 3);
    CHECK(v(1) == 2.0);
  }

  SUBCASE("csv row and csv column") {
    TempFile row("1, 2, 3\n", ".csv");
    CHECK(bjortho::load_vector(row.path()).size() == 3);
    TempFile col("1\n2\n3\n", ".csv");
    CHECK(bjortho::load_vector(col.path()).size() == 3);
  }

  SUBCASE("genuinely two-dimensional input is rejected") {
    TempFile file("1, 2\n3, 4\n", ".csv");
    CHECK_THROWS_AS(bjortho::load_vector(file.path()), bjortho::InvalidInput);
  }

  SUBCASE("vector json round trip") {
    Vector v(3);
    v << 0.1, -0.2, 0.3;
    const auto j = bjortho::vector_to_json(v);
    CHECK(j.is_array());
    const Vector back = bjortho::vector_from_json(j);
    CHECK((v - back).cwiseAbs().maxCoeff() == 0.0);
  }
}
