#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "qtspp/cofactor.hpp"
#include "qtspp/recurrence_io.hpp"

namespace fs = std::filesystem;
using namespace qtspp;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qtspp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    path = fs::temp_directory_path() / ("qtspp-test-" + tag + "-" + std::to_string(rng()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string str(const std::string& sub = "") const { return (sub.empty() ? path : path / sub).string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

}  // namespace

TEST_CASE("cofactors writes a re-readable table") {
  TempDir dir("cof");
  const auto r = run({"cofactors", "--q", "3", "--n-max", "12", "--out", dir.str()});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("78 values") != std::string::npos);
  std::ifstream is(dir.path / "cofactors_q3_n12.txt");
  const auto table = read_table(is);
  const PrimeModulus p;
  CHECK(table == build_table(12, make_qpoint(3, p, 12)));

  REQUIRE(run({"cofactors", "--q", "3", "--n-max", "12", "--binary", "--out", dir.str()}).code == cli::kOk);
  std::ifstream bs(dir.path / "cofactors_q3_n12.bin", std::ios::binary);
  CHECK(read_table(bs) == table);

  REQUIRE(run({"cofactors", "--q", "1", "--n-max", "5", "--out", dir.str()}).code == cli::kOk);
  CHECK(fs::exists(dir.path / "cofactors_q1_n5.txt"));
}

TEST_CASE("cofactors at a pole needs --rescale-poles") {
  TempDir dir("pole");
  const auto r = run({"cofactors", "--q", "2", "--n-max", "20", "--out", dir.str()});
  CHECK(r.code == cli::kComputation);
  CHECK(r.err.find("13") != std::string::npos);
  const auto ok = run({"cofactors", "--q", "2", "--n-max", "20", "--rescale-poles", "--out", dir.str()});
  CHECK(ok.code == cli::kOk);
  CHECK(ok.out.find("13 15 16 17 18 19") != std::string::npos);
}

TEST_CASE("usage errors and refusals") {
  TempDir dir("usage");
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"cofactors", "--q", "-4"}).code == cli::kUsage);
  // q = p - 1 has order 2.
  const auto low = run({"cofactors", "--q", "2147483646", "--n-max", "10", "--out", dir.str()});
  CHECK(low.code == cli::kUsage);
  CHECK(!low.err.empty());
  CHECK(run({"guess", "--n-max", "10", "--out", dir.str()}).code == cli::kUsage);
  CHECK(run({"reconstruct", "--q-from", "20", "--q-to", "10", "--out", dir.str()}).code == cli::kUsage);
}

TEST_CASE("guess failures") {
  TempDir dir("guess");
  CHECK(run({"guess", "--q", "3", "--gamma-max", "0", "--n-max", "20", "--out", dir.str()}).code ==
        cli::kComputation);

  // A table of noise admits no recurrence.
  const PrimeModulus p;
  std::mt19937_64 rng(2);
  std::vector<FieldVector> rows;
  for (std::size_t n = 1; n <= 35; ++n) {
    FieldVector row;
    for (std::size_t j = 1; j < n; ++j) row.push_back(FieldElement(static_cast<std::uint32_t>(rng() % p.p())));
    row.push_back(FieldElement(1));
    rows.push_back(row);
  }
  const CofactorTable noise(make_qpoint(3, p, 35), rows);
  {
    std::ofstream os(dir.path / "noise.txt");
    write_table_text(os, noise);
  }
  const auto r = run({"guess", "--in", dir.str("noise.txt"), "--out", dir.str()});
  CHECK(r.code == cli::kComputation);
  CHECK(r.err.find("NoRecurrence") != std::string::npos);

  CHECK(run({"guess", "--in", dir.str("missing.txt"), "--out", dir.str()}).code == cli::kIo);
}

TEST_CASE("brute and ct checks") {
  TempDir dir("brute");
  REQUIRE(run({"verify", "brute", "--n-max", "3", "--out", dir.str()}).code == cli::kOk);
  const auto report = nlohmann::json::parse(slurp(dir.path / "report_brute.json"));
  CHECK(report.at("failure_count") == 0);
  CHECK(run({"verify", "ct", "--L", "12", "--out", dir.str()}).code == cli::kOk);
  CHECK(run({"verify", "okada", "--q", "3", "--L", "10", "--points", "3", "--out", dir.str()}).code == cli::kOk);
}

TEST_CASE("output directory from the environment") {
  TempDir dir("env");
  const auto target = dir.path / "nested" / "out";
  ::setenv(cli::kOutputEnv, target.string().c_str(), 1);
  const auto r = run({"cofactors", "--q", "5", "--n-max", "4"});
  ::unsetenv(cli::kOutputEnv);
  CHECK(r.code == cli::kOk);
  CHECK(fs::exists(target / "cofactors_q5_n4.txt"));
}

TEST_CASE("pipeline, determinism and a corrupted recurrence") {
  TempDir a("pipe-a"), b("pipe-b");
  const auto full = run({"pipeline", "--workers", "3", "--out", a.str()});
  INFO(full.out);
  INFO(full.err);
  REQUIRE(full.code == cli::kOk);
  CHECK(full.out.find("nullspace dimension 1, 110 zero coefficients") != std::string::npos);

  REQUIRE(run({"guess", "--q", "2", "--workers", "1", "--out", b.str()}).code == cli::kOk);
  CHECK(slurp(a.path / "guess_q2.json") == slurp(b.path / "guess_q2.json"));
  REQUIRE(run({"reconstruct", "--q", "2", "--workers", "1", "--out", b.str()}).code == cli::kOk);
  CHECK(slurp(a.path / "recurrence_symbolic.json") == slurp(b.path / "recurrence_symbolic.json"));
  REQUIRE(run({"verify", "extended", "--q", "151", "--n-ext", "40", "--out", b.str()}).code == cli::kOk);

  // Flip one integer coefficient.
  auto doc = nlohmann::json::parse(slurp(b.path / "recurrence_symbolic.json"));
  auto& c = doc.at("coefficients").at(5);
  c.at(0) = json_to_bigint(c.at(0)) == 7 ? 8 : 7;
  {
    std::ofstream os(b.path / "corrupt.json");
    os << doc.dump(1);
  }
  const auto bad = run({"verify", "extended", "--q", "151", "--n-ext", "40", "--in", b.str("corrupt.json"),
                        "--out", b.str()});
  CHECK(bad.code == cli::kCheckFailed);
}
