#include "doctest.h"
#include "support.hpp"

#include "ymlab/field_io.hpp"
#include "ymlab/forms.hpp"
#include "ymlab/instanton.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include <unistd.h>

using namespace test;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ymlab_io_" + std::to_string(seed()) + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <class F>
bool bit_equal(const F& a, const F& b) {
  if (a.grid() != b.grid() || a.values().size() != b.values().size()) return false;
  return std::memcmp(a.values().data(), b.values().data(), a.values().size_bytes()) == 0;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("round trips are bit exact") {
  TempDir dir;
  Rng r;
  const Grid g(3, 9, Domain::ball);
  const ConnectionField a = gen_connection(g, r, 1.3);
  write_field(dir.path / "a.json", a);
  CHECK(bit_equal(read_one_form(dir.path / "a.json"), a));

  const CurvatureField f = curvature(a);
  write_field(dir.path / "f.json", f);
  CHECK(bit_equal(read_two_form(dir.path / "f.json"), f));

  const GaugeField gg = gen_pointwise_gauge(g, r);
  write_field(dir.path / "g.json", gg);
  const GaugeField back = read_gauge(dir.path / "g.json");
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Quaternion p = back(n).quaternion(), q = gg(n).quaternion();
    CHECK((p.w == q.w && p.x == q.x && p.y == q.y && p.z == q.z));
  }

  PointField u(Grid(2, 9, Domain::ball));
  for (auto& v : u.values()) v = {r.uniform(), r.uniform(), r.uniform()};
  write_field(dir.path / "u.json", u);
  CHECK(bit_equal(read_immersion(dir.path / "u.json"), u));

  // Windows keep their placement.
  const Grid w = Grid(4, 33).window_around({0.25, 0.0, 0.0, -0.25}, 0.125, 1);
  const ConnectionField bw = sample_bpst(w, {2.0, {}});
  write_field(dir.path / "w.json", bw);
  const ConnectionField bwr = read_one_form(dir.path / "w.json");
  CHECK(bwr.grid() == w);
  CHECK(bit_equal(bwr, bw));
}

TEST_CASE("payload layout") {
  TempDir dir;
  const Grid g(2, 9);
  ConnectionField a(g);
  for (std::size_t n = 0; n < g.node_count(); ++n)
    for (int i = 0; i < 2; ++i) a.at(n, i) = {100.0 * n + 10.0 * i, 100.0 * n + 10.0 * i + 1, 100.0 * n + 10.0 * i + 2};
  write_field(dir.path / "a.json", a);
  const FieldHeader h = read_field_header(dir.path / "a.json");
  CHECK(h.kind == FieldKind::one_form);
  CHECK(h.grid == g);
  const std::string manifest = slurp(dir.path / "a.json");
  CHECK(manifest.find("YMF1") != std::string::npos);
  CHECK(manifest.find("su2") != std::string::npos);

  // Little-endian float64, node-major, then form index, then coefficient.
  const std::string bytes = slurp(h.payload.is_absolute() ? h.payload : dir.path / h.payload);
  REQUIRE(bytes.size() == g.node_count() * 2 * 3 * 8);
  for (std::size_t k = 0; k < g.node_count() * 6; ++k) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[8 * k + b])) << (8 * b);
    double v;
    std::memcpy(&v, &bits, 8);
    const std::size_t node = k / 6, comp = (k / 3) % 2, coef = k % 3;
    CHECK(v == 100.0 * node + 10.0 * comp + coef);
  }
}

TEST_CASE("malformed inputs") {
  TempDir dir;
  const Grid g(3, 9);
  write_field(dir.path / "a.json", ConnectionField(g));
  const FieldHeader h = read_field_header(dir.path / "a.json");
  const fs::path payload = h.payload.is_absolute() ? h.payload : dir.path / h.payload;

  // Truncated payload: the message names the byte offset where data ends.
  const auto size = fs::file_size(payload);
  fs::resize_file(payload, size - 13);
  const std::string msg = message_of([&] { read_one_form(dir.path / "a.json"); });
  CHECK(msg.find("offset " + std::to_string(size - 13)) != std::string::npos);
  try {
    read_one_form(dir.path / "a.json");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_input);
  }

  // Trailing bytes.
  fs::resize_file(payload, size + 8);
  CHECK_THROWS_AS(read_one_form(dir.path / "a.json"), Error);

  // Wrong kind.
  write_field(dir.path / "g.json", GaugeField(g));
  CHECK(message_of([&] { read_one_form(dir.path / "g.json"); }).find("expected kind") != std::string::npos);

  // Missing files are I/O errors.
  try {
    read_one_form(dir.path / "missing.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }

  // Garbage manifests and bad grids.
  std::ofstream(dir.path / "bad.json") << "{not json";
  CHECK_THROWS_AS(read_field_header(dir.path / "bad.json"), Error);
  std::ofstream(dir.path / "even.json")
      << R"({"format":"YMF1","m":3,"n_per_axis":10,"domain":"cube","group":"su2","kind":"one_form","payload":"x.bin"})";
  CHECK_THROWS_AS(read_field_header(dir.path / "even.json"), Error);
  std::ofstream(dir.path / "group.json")
      << R"({"format":"YMF1","m":3,"n_per_axis":9,"domain":"cube","group":"su3","kind":"one_form","payload":"x.bin"})";
  CHECK(message_of([&] { read_field_header(dir.path / "group.json"); }).find("group") != std::string::npos);

  // Gauge values off the unit sphere.
  GaugeField bad(g);
  write_field(dir.path / "bad_gauge.json", bad);
  const FieldHeader gh = read_field_header(dir.path / "bad_gauge.json");
  const fs::path gp = gh.payload.is_absolute() ? gh.payload : dir.path / gh.payload;
  std::string raw = slurp(gp);
  const double two = 2.0;
  std::memcpy(raw.data(), &two, 8);
  std::ofstream(gp, std::ios::binary) << raw;
  CHECK_THROWS_AS(read_gauge(dir.path / "bad_gauge.json"), Error);
}
