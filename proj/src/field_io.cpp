#include "ymlab/field_io.hpp"

#include "ymlab/report_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ymlab {

namespace fs = std::filesystem;

namespace {

constexpr const char* kFormat = "YMF1";

int reals_per_node(FieldKind kind, int m) {
  switch (kind) {
    case FieldKind::one_form: return 3 * m;
    case FieldKind::two_form: return 3 * binomial(m, 2);
    case FieldKind::gauge: return 4;
    case FieldKind::immersion: return 3;
  }
  return 0;
}

FieldKind kind_from_string(const std::string& s) {
  if (s == "one_form") return FieldKind::one_form;
  if (s == "two_form") return FieldKind::two_form;
  if (s == "gauge") return FieldKind::gauge;
  if (s == "immersion") return FieldKind::immersion;
  fail(ErrorCode::invalid_input, "unknown field kind '" + s + "'");
}

std::uint64_t to_le(double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  return bits;
}

double from_le(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

void write_payload(const fs::path& manifest, FieldKind kind, const Grid& grid, const std::vector<double>& data) {
  fs::path payload = manifest;
  payload.replace_extension(".bin");
  Json j;
  j["format"] = kFormat;
  j["m"] = grid.dim();
  j["n_per_axis"] = grid.n_per_axis();
  j["domain"] = to_string(grid.domain());
  j["group"] = "su2";
  j["kind"] = to_string(kind);
  j["payload"] = payload.filename().string();
  if (!grid.is_full()) {
    Json lo = Json::array(), cnt = Json::array();
    for (int a = 0; a < grid.dim(); ++a) {
      lo.push_back(grid.lo(a));
      cnt.push_back(grid.count(a));
    }
    j["window_lo"] = lo;
    j["window_count"] = cnt;
  }
  std::string bytes(data.size() * 8, '\0');
  for (std::size_t k = 0; k < data.size(); ++k) {
    const std::uint64_t b = to_le(data[k]);
    std::memcpy(bytes.data() + 8 * k, &b, 8);
  }
  write_atomic(payload, bytes);
  write_atomic(manifest, dump(j));
}

std::vector<double> read_payload(const fs::path& manifest, FieldKind expected, Grid& grid) {
  const FieldHeader hdr = read_field_header(manifest);
  if (hdr.kind != expected) {
    fail(ErrorCode::invalid_input, manifest.string() + ": expected kind " + to_string(expected) + ", found " +
                                       to_string(hdr.kind));
  }
  grid = hdr.grid;
  const std::size_t count = grid.node_count() * static_cast<std::size_t>(reals_per_node(hdr.kind, grid.dim()));
  const std::uint64_t expected_bytes = count * 8;
  std::ifstream in(hdr.payload, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open payload " + hdr.payload.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < expected_bytes) {
    fail(ErrorCode::invalid_input, hdr.payload.string() + ": payload truncated at byte offset " +
                                       std::to_string(bytes.size()) + " (expected " +
                                       std::to_string(expected_bytes) + " bytes)");
  }
  if (bytes.size() > expected_bytes) {
    fail(ErrorCode::invalid_input, hdr.payload.string() + ": unexpected data after byte offset " +
                                       std::to_string(expected_bytes));
  }
  std::vector<double> data(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::uint64_t b;
    std::memcpy(&b, bytes.data() + 8 * k, 8);
    data[k] = from_le(b);
  }
  return data;
}

template <class Field>
std::vector<double> flatten_lie(const Field& f) {
  std::vector<double> out;
  out.reserve(f.values().size() * 3);
  for (const auto& v : f.values())
    for (int c = 0; c < 3; ++c) out.push_back(v[c]);
  return out;
}

template <class Field>
Field unflatten_lie(const Grid& grid, const std::vector<double>& data) {
  Field f(grid);
  for (std::size_t k = 0; k < f.values().size(); ++k) f.values()[k] = {data[3 * k], data[3 * k + 1], data[3 * k + 2]};
  return f;
}

}  // namespace

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::one_form: return "one_form";
    case FieldKind::two_form: return "two_form";
    case FieldKind::gauge: return "gauge";
    case FieldKind::immersion: return "immersion";
  }
  return "unknown";
}

FieldHeader read_field_header(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) fail(ErrorCode::io, "cannot open " + manifest.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::invalid_input, manifest.string() + ": malformed manifest (" + e.what() + ")");
  }
  try {
    if (j.at("format").get<std::string>() != kFormat) {
      fail(ErrorCode::invalid_input, manifest.string() + ": not a YMF1 manifest");
    }
    if (j.at("group").get<std::string>() != "su2") {
      fail(ErrorCode::invalid_input, manifest.string() + ": unsupported group");
    }
    FieldHeader hdr;
    hdr.kind = kind_from_string(j.at("kind").get<std::string>());
    const int m = j.at("m").get<int>();
    const int n = j.at("n_per_axis").get<int>();
    hdr.grid = Grid(m, n, domain_from_string(j.at("domain").get<std::string>()));
    if (j.contains("window_lo") || j.contains("window_count")) {
      std::array<int, 4> lo{0, 0, 0, 0}, cnt{1, 1, 1, 1};
      const auto& jl = j.at("window_lo");
      const auto& jc = j.at("window_count");
      require(jl.size() == static_cast<std::size_t>(m) && jc.size() == static_cast<std::size_t>(m),
              manifest.string() + ": window arrays must have m entries");
      for (int a = 0; a < m; ++a) {
        lo[a] = jl.at(a).get<int>();
        cnt[a] = jc.at(a).get<int>();
      }
      hdr.grid = hdr.grid.window(lo, cnt);
    }
    if (hdr.kind == FieldKind::immersion && m != 2) {
      fail(ErrorCode::invalid_input, manifest.string() + ": immersions need m = 2");
    }
    const fs::path payload = j.at("payload").get<std::string>();
    hdr.payload = payload.is_absolute() ? payload : manifest.parent_path() / payload;
    return hdr;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::invalid_input, manifest.string() + ": invalid manifest field (" + e.what() + ")");
  }
}

void write_field(const fs::path& manifest, const ConnectionField& a) {
  write_payload(manifest, FieldKind::one_form, a.grid(), flatten_lie(a));
}

void write_field(const fs::path& manifest, const CurvatureField& f) {
  write_payload(manifest, FieldKind::two_form, f.grid(), flatten_lie(f));
}

void write_field(const fs::path& manifest, const GaugeField& g) {
  std::vector<double> data;
  data.reserve(g.node_count() * 4);
  for (const auto& v : g.values()) {
    const Quaternion& q = v.quaternion();
    data.insert(data.end(), {q.w, q.x, q.y, q.z});
  }
  write_payload(manifest, FieldKind::gauge, g.grid(), data);
}

void write_field(const fs::path& manifest, const PointField& u) {
  std::vector<double> data;
  data.reserve(u.node_count() * 3);
  for (const auto& v : u.values()) data.insert(data.end(), v.begin(), v.end());
  write_payload(manifest, FieldKind::immersion, u.grid(), data);
}

ConnectionField read_one_form(const fs::path& manifest) {
  Grid grid;
  const auto data = read_payload(manifest, FieldKind::one_form, grid);
  return unflatten_lie<ConnectionField>(grid, data);
}

CurvatureField read_two_form(const fs::path& manifest) {
  Grid grid;
  const auto data = read_payload(manifest, FieldKind::two_form, grid);
  return unflatten_lie<CurvatureField>(grid, data);
}

GaugeField read_gauge(const fs::path& manifest) {
  Grid grid;
  const auto data = read_payload(manifest, FieldKind::gauge, grid);
  GaugeField g(grid);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Quaternion q{data[4 * n], data[4 * n + 1], data[4 * n + 2], data[4 * n + 3]};
    require(std::abs(q.norm2() - 1.0) <= 1e-9, manifest.string() + ": gauge value at node " +
                                                  std::to_string(n) + " is not unitary");
    g(n) = GroupElement::unchecked(q);
  }
  return g;
}

PointField read_immersion(const fs::path& manifest) {
  Grid grid;
  const auto data = read_payload(manifest, FieldKind::immersion, grid);
  PointField u(grid);
  for (std::size_t n = 0; n < u.node_count(); ++n) u(n) = {data[3 * n], data[3 * n + 1], data[3 * n + 2]};
  return u;
}

}  // namespace ymlab
