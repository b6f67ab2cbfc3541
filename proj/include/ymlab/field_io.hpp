#ifndef YMLAB_FIELD_IO_HPP
#define YMLAB_FIELD_IO_HPP

#include "ymlab/fields.hpp"

#include <filesystem>
#include <string>

namespace ymlab {

// YMF1: a JSON manifest
//   {"format":"YMF1","m":..,"n_per_axis":..,"domain":"cube"|"ball","group":"su2",
//    "kind":"one_form"|"two_form"|"gauge"|"immersion","payload":"<file>.bin"}
// (plus "window_lo"/"window_count" for windows) next to a little-endian
// float64 payload ordered node-major, then form index, then coefficient.
// Gauges store 4 quaternion reals per node, immersions 3 coordinates.
enum class FieldKind { one_form, two_form, gauge, immersion };

std::string to_string(FieldKind k);

struct FieldHeader {
  FieldKind kind = FieldKind::one_form;
  Grid grid;
  std::filesystem::path payload;
};

// Parses and validates the manifest only. Missing files raise io errors,
// malformed content invalid_input.
FieldHeader read_field_header(const std::filesystem::path& manifest);

void write_field(const std::filesystem::path& manifest, const ConnectionField& a);
void write_field(const std::filesystem::path& manifest, const CurvatureField& f);
void write_field(const std::filesystem::path& manifest, const GaugeField& g);
void write_field(const std::filesystem::path& manifest, const PointField& u);

ConnectionField read_one_form(const std::filesystem::path& manifest);
CurvatureField read_two_form(const std::filesystem::path& manifest);
GaugeField read_gauge(const std::filesystem::path& manifest);
PointField read_immersion(const std::filesystem::path& manifest);

}  // namespace ymlab

#endif
