#include "ymlab/ymlab.h"

#include "ymlab/bubble.hpp"
#include "ymlab/checks.hpp"
#include "ymlab/energy.hpp"
#include "ymlab/field_io.hpp"
#include "ymlab/gauge.hpp"
#include "ymlab/instanton.hpp"
#include "ymlab/jobs.hpp"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

struct ymlab_field {
  ymlab::ConnectionField a;
};

namespace {

thread_local std::string last_error;

ymlab_status set_error(ymlab_status s, const std::string& what) {
  last_error = what;
  return s;
}

ymlab_status from_code(ymlab::ErrorCode c) {
  switch (c) {
    case ymlab::ErrorCode::invalid_input: return YMLAB_INVALID_INPUT;
    case ymlab::ErrorCode::io: return YMLAB_IO;
    case ymlab::ErrorCode::solver_failure: return YMLAB_SOLVER_FAILURE;
    case ymlab::ErrorCode::unsupported_dimension: return YMLAB_UNSUPPORTED_DIMENSION;
  }
  return YMLAB_INTERNAL;
}

template <class F>
ymlab_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return YMLAB_OK;
  } catch (const ymlab::Error& e) {
    return set_error(from_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(YMLAB_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(YMLAB_INTERNAL, e.what());
  }
}

ymlab::Domain to_domain(ymlab_domain d) {
  if (d == YMLAB_CUBE) return ymlab::Domain::cube;
  if (d == YMLAB_BALL) return ymlab::Domain::ball;
  ymlab::fail(ymlab::ErrorCode::invalid_input, "unknown domain");
}

void need(const void* p, const char* what) {
  if (!p) ymlab::fail(ymlab::ErrorCode::invalid_input, std::string(what) + " must not be NULL");
}

ymlab_field* wrap(ymlab::ConnectionField a) { return new ymlab_field{std::move(a)}; }

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* ymlab_version(void) { return YMLAB_VERSION_STRING; }

const char* ymlab_last_error(void) { return last_error.c_str(); }

ymlab_status ymlab_field_zero(int dim, int n_per_axis, ymlab_domain domain, ymlab_field** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(ymlab::ConnectionField(ymlab::Grid(dim, n_per_axis, to_domain(domain))));
  });
}

ymlab_status ymlab_field_bpst(int n_per_axis, ymlab_domain domain, double lambda, ymlab_field** out) {
  return guarded([&] {
    need(out, "out");
    const ymlab::Grid g(4, n_per_axis, to_domain(domain));
    *out = wrap(ymlab::sample_bpst(g, {lambda, {}}));
  });
}

ymlab_status ymlab_field_read(const char* manifest, ymlab_field** out) {
  return guarded([&] {
    need(manifest, "manifest");
    need(out, "out");
    *out = wrap(ymlab::read_one_form(manifest));
  });
}

ymlab_status ymlab_field_write(const ymlab_field* f, const char* manifest) {
  return guarded([&] {
    need(f, "field");
    need(manifest, "manifest");
    ymlab::write_field(manifest, f->a);
  });
}

void ymlab_field_free(ymlab_field* f) { delete f; }

ymlab_status ymlab_field_shape(const ymlab_field* f, int* dim, int* n_per_axis, ymlab_domain* domain,
                               size_t* value_count) {
  return guarded([&] {
    need(f, "field");
    const ymlab::Grid& g = f->a.grid();
    if (dim) *dim = g.dim();
    if (n_per_axis) *n_per_axis = g.n_per_axis();
    if (domain) *domain = g.domain() == ymlab::Domain::ball ? YMLAB_BALL : YMLAB_CUBE;
    if (value_count) *value_count = f->a.values().size() * 3;
  });
}

ymlab_status ymlab_field_get(const ymlab_field* f, double* values, size_t count) {
  return guarded([&] {
    need(f, "field");
    need(values, "values");
    const auto v = f->a.values();
    ymlab::require(count == v.size() * 3, "value buffer has the wrong length");
    for (std::size_t k = 0; k < v.size(); ++k)
      for (int c = 0; c < 3; ++c) values[3 * k + c] = v[k][c];
  });
}

ymlab_status ymlab_field_set(ymlab_field* f, const double* values, size_t count) {
  return guarded([&] {
    need(f, "field");
    need(values, "values");
    auto v = f->a.values();
    ymlab::require(count == v.size() * 3, "value buffer has the wrong length");
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = {values[3 * k], values[3 * k + 1], values[3 * k + 2]};
  });
}

ymlab_status ymlab_ym_energy(const ymlab_field* f, double* out) {
  return guarded([&] {
    need(f, "field");
    need(out, "out");
    *out = ymlab::ym_energy(f->a);
  });
}

ymlab_status ymlab_energy_report(const ymlab_field* f, ymlab_energies* out) {
  return guarded([&] {
    need(f, "field");
    need(out, "out");
    const auto e = ymlab::energy_report(f->a);
    *out = {e.ym, e.e_energy, e.w12_seminorm, e.l2_of_A, e.weak_l2_of_F};
  });
}

ymlab_status ymlab_chern_integral(const ymlab_field* f, double radius, double* out) {
  return guarded([&] {
    need(f, "field");
    need(out, "out");
    *out = ymlab::chern_integral(f->a, radius);
  });
}

ymlab_status ymlab_bpst_radial_energy(double lambda, double radius, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = ymlab::bpst_radial_energy(lambda, radius < 0.0 ? std::numeric_limits<double>::infinity() : radius);
  });
}

ymlab_status ymlab_coulomb_fix(const ymlab_field* f, double tol, int max_iter, ymlab_field** fixed,
                               ymlab_coulomb_summary* summary) {
  return guarded([&] {
    need(f, "field");
    ymlab::CoulombOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    auto res = ymlab::coulomb_fix(f->a, opts);
    if (summary) {
      const auto& r = res.report;
      *summary = {r.iterations, r.converged ? 1 : 0, r.initial_l2_of_A, r.final_l2_of_A, r.coulomb_residual_l2};
    }
    if (fixed) *fixed = wrap(std::move(res.field));
  });
}

ymlab_status ymlab_bubble_detect(const ymlab_field* f, double epsilon, ymlab_bubble_report* out) {
  return guarded([&] {
    need(f, "field");
    need(out, "out");
    const auto b = ymlab::bubble_detect(f->a, epsilon);
    *out = {b.critical_radius,
            {b.bubble_center[0], b.bubble_center[1], b.bubble_center[2], b.bubble_center[3]},
            b.energy_in_bubble,
            b.neck_energy,
            b.exterior_energy,
            b.total_energy,
            b.quantization_defect};
  });
}

ymlab_status ymlab_run_checks(const char* suite, uint64_t seed, int* passed, int* failed) {
  int bad = 0;
  const ymlab_status s = guarded([&] {
    const auto results = ymlab::run_checks(suite ? suite : "all", seed);
    for (const auto& c : results) bad += c.passed ? 0 : 1;
    if (passed) *passed = static_cast<int>(results.size()) - bad;
    if (failed) *failed = bad;
  });
  if (s == YMLAB_OK && bad > 0) return set_error(YMLAB_CHECKS_FAILED, std::to_string(bad) + " checks failed");
  return s;
}

ymlab_status ymlab_run(const char* job, const char* config, char** summary) {
  if (summary) *summary = nullptr;
  ymlab_status status = YMLAB_OK;
  const ymlab_status s = guarded([&] {
    need(job, "job");
    ymlab::Json cfg = ymlab::Json::object();
    if (config) {
      try {
        cfg = ymlab::Json::parse(config);
      } catch (const nlohmann::json::exception& e) {
        ymlab::fail(ymlab::ErrorCode::invalid_input, std::string("config is not valid JSON: ") + e.what());
      }
    }
    ymlab::Json doc;
    try {
      doc = ymlab::run_job(job, cfg);
    } catch (const ymlab::JobFailed& e) {
      status = e.reason() == ymlab::JobFailed::Reason::stagnation ? YMLAB_SOLVER_FAILURE : YMLAB_CHECKS_FAILED;
      last_error = e.what();
      doc = e.summary();
    }
    if (summary) *summary = copy_string(ymlab::dump(doc));
  });
  return s != YMLAB_OK ? s : status;
}

void ymlab_string_free(char* s) { std::free(s); }

}  // extern "C"
