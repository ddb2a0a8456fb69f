#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "jordan/cli.hpp"
#include "jordan/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const auto report = jordan::cli::run(args, out, err);
  return {report.exit_code, out.str(), err.str()};
}

std::string data(const char* name) { return (fs::path(JORDAN_DATA_DIR) / name).string(); }

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("jordan_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST(Cli, CheckExitCodes) {
  const auto ok = run({"check", data("k_q.alg"), "--require", "jordan"});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  EXPECT_TRUE(has_line(ok.out, "PASS require jordan"));
  const auto bad = run({"check", data("m2_f3.alg"), "--require", "jordan"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(has_line(bad.out, "commutative = false"));
  EXPECT_TRUE(has_line(bad.out, "associative = true"));
  EXPECT_NE(bad.out.find("FAIL require jordan"), std::string::npos);
  EXPECT_EQ(run({"check", data("m2_f3.alg"), "--require", "associative"}).code, 0);
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"check"}).code, 2);
  EXPECT_EQ(run({"check", data("k_q.alg"), "--require", "bogus"}).code, 2);
  const auto missing = run({"check", "/nonexistent/x.alg"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("ParseError"), std::string::npos);
  const auto trivial = run({"peirce", data("k_f3.alg"), "--idempotent", "1,0,0,1"});
  EXPECT_EQ(trivial.code, 2);
  EXPECT_NE(trivial.err.find("NotIdempotent"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, PeirceReport) {
  for (const char* file : {"k_q.alg", "k_f3.alg", "k_f5.alg"}) {
    const auto r = run({"peirce", data(file), "--idempotent", "1,0,0,0"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_TRUE(has_line(r.out, "dims = (1,2,1)")) << r.out;
  }
  EXPECT_EQ(run({"peirce", data("m2_q.alg"), "--idempotent", "1,0,0,0"}).code, 2);
  // M2 itself decomposes under the symmetrized operator but fails condition (iii).
  const auto sym = run({"peirce", data("m2_q.alg"), "--idempotent", "1,0,0,0", "--symmetrized"});
  EXPECT_EQ(sym.code, 1);
  EXPECT_TRUE(has_line(sym.out, "dims = (1,2,1)"));
  EXPECT_NE(sym.out.find("FAIL condition (iii)"), std::string::npos);
}

TEST(Cli, Idempotents) {
  const auto r = run({"idempotents", data("m2_f3.alg"), "--exhaustive"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "count = 13")) << r.out;
  EXPECT_EQ(run({"idempotents", data("k_q.alg"), "--exhaustive"}).code, 2);
}

TEST(Cli, ExampleRoundTrip) {
  const fs::path dir = scratch_dir("example");
  const auto path = (dir / "k.alg").string();
  EXPECT_EQ(run({"example", "jordanified-m2", "--field", "p=5", "--out", path}).code, 0);
  EXPECT_TRUE(jordan::load_algebra(path)->same_structure(*fixtures::jordan_m2(jordan::Field::prime(5))));
  const auto printed = run({"example", "m2", "--field", "rational"});
  EXPECT_EQ(printed.code, 0);
  EXPECT_NE(printed.out.find("\"products\""), std::string::npos);
  EXPECT_EQ(run({"example", "m2", "--field", "p=4"}).code, 2);
  fs::remove_all(dir);
}

TEST(Cli, InnerDerivationPipeline) {
  const fs::path dir = scratch_dir("inner");
  const auto map = (dir / "d.map").string();
  const auto made = run({"inner-derivation", data("k_f5.alg"), "--y", "0,1,0,0", "--z", "0,0,0,1", "--out", map});
  ASSERT_EQ(made.code, 0) << made.err;
  EXPECT_EQ(run({"check-derivation", data("k_f5.alg"), map, "--n", "2"}).code, 0);
  const auto reduced = run({"reduce-derivation", data("k_f5.alg"), map, "--idempotent", "1,0,0,0", "--n", "2"});
  EXPECT_EQ(reduced.code, 0) << reduced.out << reduced.err;
  EXPECT_TRUE(has_line(reduced.out, "Delta(e) = (0,0,0,0)"));
  // Treated as a map it is not injective.
  EXPECT_EQ(run({"check-map", data("k_f5.alg"), data("k_f5.alg"), map, "--n", "2"}).code, 2);
  const auto rational = run({"inner-derivation", data("k_q.alg"), "--y", "0,1,0,0", "--z", "4,0,0,0"});
  EXPECT_TRUE(has_line(rational.out, "D(e11) = (0,3,0,0) 3*e10")) << rational.out;
  fs::remove_all(dir);
}

TEST(Cli, CheckMapWithTranspose) {
  const fs::path dir = scratch_dir("transpose");
  const jordan::Field f = jordan::Field::prime(3);
  const auto k = fixtures::jordan_m2(f);
  jordan::Matrix m(f, 4, 4);
  const std::size_t image[] = {0, 2, 1, 3};
  for (std::size_t j = 0; j < 4; ++j) m(image[j], j) = f.one();
  const auto path = (dir / "t.map").string();
  jordan::save_map(jordan::MapTable::linear(k, k, m), path);
  const auto r = run({"check-map", data("k_f3.alg"), data("k_f3.alg"), path, "--n", "2"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto m2 = jordan::matrix_units_algebra(f);
  jordan::save_map(jordan::MapTable::linear(m2, m2, m), path);
  EXPECT_EQ(run({"check-map", data("m2_f3.alg"), data("m2_f3.alg"), path, "--n", "2"}).code, 1);
  fs::remove_all(dir);
}

TEST(Cli, AuditIsDeterministic) {
  const std::vector<std::string> args{"audit", data("k_f3.alg"), "--n", "2", "--mode", "maps"};
  const auto a = run(args);
  const auto b = run(args);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(has_line(a.out, "witnesses_found = 48"));
  EXPECT_TRUE(has_line(a.out, "exhausted = true"));
  EXPECT_TRUE(has_line(a.out, "all_additive = true"));
  const auto d = run({"audit", data("k_f3.alg"), "--n", "2", "--mode", "derivations", "--idempotent", "1,0,0,0"});
  EXPECT_EQ(d.code, 0) << d.out << d.err;
  EXPECT_TRUE(has_line(d.out, "witnesses_found = 27"));
  const auto budget = run({"audit", data("k_f3.alg"), "--n", "2", "--mode", "maps", "--budget-nodes", "100"});
  EXPECT_EQ(budget.code, 0);
  EXPECT_TRUE(has_line(budget.out, "exhausted = false"));
  EXPECT_TRUE(has_line(budget.out, "status = node_budget"));
}
