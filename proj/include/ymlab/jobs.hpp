#ifndef YMLAB_JOBS_HPP
#define YMLAB_JOBS_HPP

#include "ymlab/report_io.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ymlab {

// Batch jobs behind the command line. A job validates its whole config
// (unknown keys included) before computing or touching the output directory,
// then writes its files atomically and returns a summary.
//
//   instanton  grid, lambda[], domain, out, skip_field, profile_points
//   coulomb    in, out, tol, max_iter
//   plateau    in | (grid, dim, boundary), out, tol, max_iter
//   bubble     grid, lambda[], epsilon, out
//   frames     grid, samples, seed, out
//   checks     suite, seed, out (optional)
//
// Bad configs and inputs throw ymlab::Error. Jobs that stop short (a solver
// stagnates, a check fails) still write their reports and then throw
// JobFailed carrying the summary.
std::vector<std::string> job_names();
Json run_job(const std::string& name, const Json& config);

class JobFailed : public std::runtime_error {
 public:
  enum class Reason { stagnation, checks_failed };
  JobFailed(Reason reason, const std::string& what, Json summary)
      : std::runtime_error(what), reason_(reason), summary_(std::move(summary)) {}
  Reason reason() const { return reason_; }
  const Json& summary() const { return summary_; }

 private:
  Reason reason_;
  Json summary_;
};

}  // namespace ymlab

#endif
