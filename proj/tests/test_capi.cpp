#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ymlab/ymlab.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

namespace fs = std::filesystem;

namespace {

constexpr double kEightPi2 = 8.0 * std::numbers::pi * std::numbers::pi;

std::uint64_t seed() {
  if (const char* s = std::getenv("YMLAB_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 42;
}

struct FieldDeleter {
  void operator()(ymlab_field* f) const { ymlab_field_free(f); }
};
using Field = std::unique_ptr<ymlab_field, FieldDeleter>;

Field make_zero(int dim, int n, ymlab_domain d = YMLAB_CUBE) {
  ymlab_field* f = nullptr;
  REQUIRE(ymlab_field_zero(dim, n, d, &f) == YMLAB_OK);
  return Field(f);
}

Field make_bpst(int n, double lambda, ymlab_domain d = YMLAB_CUBE) {
  ymlab_field* f = nullptr;
  REQUIRE(ymlab_field_bpst(n, d, lambda, &f) == YMLAB_OK);
  return Field(f);
}

std::vector<double> values_of(const ymlab_field* f) {
  std::size_t count = 0;
  REQUIRE(ymlab_field_shape(f, nullptr, nullptr, nullptr, &count) == YMLAB_OK);
  std::vector<double> v(count);
  REQUIRE(ymlab_field_get(f, v.data(), v.size()) == YMLAB_OK);
  return v;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ymlab_capi_" + std::to_string(seed()) + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("field handles") {
  CHECK(std::string(ymlab_version()).size() > 0);
  const Field z = make_zero(3, 9, YMLAB_BALL);
  int dim = 0, n = 0;
  ymlab_domain d = YMLAB_CUBE;
  std::size_t count = 0;
  REQUIRE(ymlab_field_shape(z.get(), &dim, &n, &d, &count) == YMLAB_OK);
  CHECK(dim == 3);
  CHECK(n == 9);
  CHECK(d == YMLAB_BALL);
  CHECK(count == 9u * 9u * 9u * 3u * 3u);
  for (double v : values_of(z.get())) CHECK(v == 0.0);

  // set then get returns the same doubles.
  std::mt19937_64 gen(seed());
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> v(count);
  for (double& x : v) x = uni(gen);
  Field f = make_zero(3, 9, YMLAB_BALL);
  REQUIRE(ymlab_field_set(f.get(), v.data(), v.size()) == YMLAB_OK);
  CHECK(values_of(f.get()) == v);

  // Wrong buffer lengths are rejected and leave the field untouched.
  CHECK(ymlab_field_set(f.get(), v.data(), v.size() - 1) == YMLAB_INVALID_INPUT);
  CHECK(std::string(ymlab_last_error()).find("wrong length") != std::string::npos);
  CHECK(values_of(f.get()) == v);
  std::vector<double> small(count - 3);
  CHECK(ymlab_field_get(f.get(), small.data(), small.size()) == YMLAB_INVALID_INPUT);
}

TEST_CASE("status codes and last error") {
  ymlab_field* f = nullptr;
  CHECK(ymlab_field_zero(3, 10, YMLAB_CUBE, &f) == YMLAB_INVALID_INPUT);
  CHECK(f == nullptr);
  CHECK(std::string(ymlab_last_error()).size() > 0);
  CHECK(ymlab_field_zero(5, 9, YMLAB_CUBE, &f) != YMLAB_OK);
  CHECK(ymlab_field_zero(3, 9, static_cast<ymlab_domain>(7), &f) == YMLAB_INVALID_INPUT);
  CHECK(ymlab_field_zero(3, 9, YMLAB_CUBE, nullptr) == YMLAB_INVALID_INPUT);
  CHECK(ymlab_ym_energy(nullptr, nullptr) == YMLAB_INVALID_INPUT);

  // A successful call clears the message.
  const Field z = make_zero(2, 9);
  double e = -1.0;
  REQUIRE(ymlab_ym_energy(z.get(), &e) == YMLAB_OK);
  CHECK(std::string(ymlab_last_error()).empty());
  CHECK(e == 0.0);

  CHECK(ymlab_field_read("/nonexistent/ymlab/field.json", &f) == YMLAB_IO);
  const Field three = make_zero(3, 9);
  CHECK(ymlab_bubble_detect(three.get(), 1.0, nullptr) == YMLAB_INVALID_INPUT);
  ymlab_bubble_report b;
  CHECK(ymlab_bubble_detect(three.get(), 1.0, &b) != YMLAB_OK);
  ymlab_field_free(nullptr);
}

TEST_CASE("functionals") {
  double full = 0.0, half = 0.0;
  REQUIRE(ymlab_bpst_radial_energy(1.0, -1.0, &full) == YMLAB_OK);
  CHECK(full == doctest::Approx(kEightPi2).epsilon(1e-12));
  // Energy in B_r is 8 pi^2 (1 - (1 + 3 r^2) / (1 + r^2)^3) for lambda = 1.
  REQUIRE(ymlab_bpst_radial_energy(1.0, 1.0, &half) == YMLAB_OK);
  CHECK(half == doctest::Approx(kEightPi2 / 2.0).epsilon(1e-10));
  double r2 = 0.0;
  REQUIRE(ymlab_bpst_radial_energy(2.0, 0.5, &r2) == YMLAB_OK);
  CHECK(r2 == doctest::Approx(half).epsilon(1e-10));

  const Field a = make_bpst(17, 1.0, YMLAB_BALL);
  double ym = 0.0;
  REQUIRE(ymlab_ym_energy(a.get(), &ym) == YMLAB_OK);
  ymlab_energies rep;
  REQUIRE(ymlab_energy_report(a.get(), &rep) == YMLAB_OK);
  CHECK(rep.ym == ym);
  CHECK(rep.ym == doctest::Approx(half).epsilon(5e-2));
  CHECK(rep.l2_of_A > 0.0);
  CHECK(rep.w12_seminorm > 0.0);
  CHECK(rep.weak_l2_of_F > 0.0);
  CHECK(rep.weak_l2_of_F * rep.weak_l2_of_F <= 2.0 * rep.ym * (1.0 + 1e-12));

  double c = 0.0;
  REQUIRE(ymlab_chern_integral(a.get(), 1.0, &c) == YMLAB_OK);
  CHECK(std::isfinite(c));
  const Field z = make_zero(4, 9);
  REQUIRE(ymlab_chern_integral(z.get(), 1.0, &c) == YMLAB_OK);
  CHECK(c == 0.0);
}

TEST_CASE("solvers") {
  // Pure gauge of a constant element: Coulomb fixing removes it.
  Field f = make_zero(3, 9, YMLAB_BALL);
  std::vector<double> v = values_of(f.get());
  for (std::size_t k = 0; k < v.size(); k += 3) v[k] = 0.3;
  REQUIRE(ymlab_field_set(f.get(), v.data(), v.size()) == YMLAB_OK);
  ymlab_field* fixed = nullptr;
  ymlab_coulomb_summary s;
  REQUIRE(ymlab_coulomb_fix(f.get(), 1e-10, 50, &fixed, &s) == YMLAB_OK);
  const Field out(fixed);
  CHECK(s.converged == 1);
  CHECK(s.final_l2_of_A <= s.initial_l2_of_A);
  CHECK(ymlab_coulomb_fix(f.get(), 1e-10, 50, nullptr, nullptr) == YMLAB_OK);
  CHECK(ymlab_coulomb_fix(f.get(), -1.0, 50, nullptr, &s) == YMLAB_INVALID_INPUT);

  const Field a = make_bpst(17, 2.0);
  ymlab_bubble_report b;
  REQUIRE(ymlab_bubble_detect(a.get(), 1.0, &b) == YMLAB_OK);
  CHECK(std::isfinite(b.critical_radius));
  for (double x : b.bubble_center) CHECK(x == 0.0);
  CHECK(std::abs(b.energy_in_bubble + b.neck_energy + b.exterior_energy - b.total_energy) <= 1e-9);
  ymlab_bubble_report none;
  REQUIRE(ymlab_bubble_detect(a.get(), 4.0 * b.total_energy, &none) == YMLAB_OK);
  CHECK(std::isinf(none.critical_radius));
}

TEST_CASE("file round trip through handles") {
  TempDir dir;
  const Field a = make_bpst(9, 1.5, YMLAB_BALL);
  const std::string path = (dir.path / "a.json").string();
  REQUIRE(ymlab_field_write(a.get(), path.c_str()) == YMLAB_OK);
  ymlab_field* r = nullptr;
  REQUIRE(ymlab_field_read(path.c_str(), &r) == YMLAB_OK);
  const Field back(r);
  CHECK(values_of(back.get()) == values_of(a.get()));

  fs::resize_file(dir.path / "a.bin", fs::file_size(dir.path / "a.bin") - 13);
  ymlab_field* t = nullptr;
  CHECK(ymlab_field_read(path.c_str(), &t) == YMLAB_INVALID_INPUT);
  CHECK(t == nullptr);
  CHECK(std::string(ymlab_last_error()).find("truncated") != std::string::npos);
}

TEST_CASE("checks and batch jobs") {
  int passed = -1, failed = -1;
  REQUIRE(ymlab_run_checks("lie", seed(), &passed, &failed) == YMLAB_OK);
  CHECK(passed > 0);
  CHECK(failed == 0);
  CHECK(ymlab_run_checks("no_such_suite", seed(), nullptr, nullptr) == YMLAB_INVALID_INPUT);

  TempDir dir;
  const std::string out = (dir.path / "bubble").string();
  const std::string cfg = R"({"grid": 9, "lambda": [2.0], "out": ")" + out + R"("})";
  char* summary = nullptr;
  REQUIRE(ymlab_run("bubble", cfg.c_str(), &summary) == YMLAB_OK);
  REQUIRE(summary != nullptr);
  CHECK(std::string(summary).find("\"bubbles\"") != std::string::npos);
  ymlab_string_free(summary);
  CHECK(fs::exists(fs::path(out) / "bubble.csv"));
  CHECK(fs::exists(fs::path(out) / "bubble_report.json"));

  // Invalid configurations write nothing.
  const std::string bad_out = (dir.path / "bad").string();
  const std::string bad = R"({"grid": 10, "out": ")" + bad_out + R"("})";
  CHECK(ymlab_run("bubble", bad.c_str(), &summary) == YMLAB_INVALID_INPUT);
  CHECK(summary == nullptr);
  CHECK_FALSE(fs::exists(bad_out));
  CHECK(ymlab_run("bubble", "{not json", &summary) == YMLAB_INVALID_INPUT);
  CHECK(ymlab_run("no_such_job", "{}", &summary) == YMLAB_INVALID_INPUT);
  const std::string typo = R"({"gird": 9, "out": ")" + bad_out + R"("})";
  CHECK(ymlab_run("bubble", typo.c_str(), &summary) == YMLAB_INVALID_INPUT);
  ymlab_string_free(nullptr);
}
