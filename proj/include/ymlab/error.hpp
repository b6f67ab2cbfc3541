#ifndef YMLAB_ERROR_HPP
#define YMLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ymlab {

enum class ErrorCode {
  invalid_input = 1,
  io = 2,
  solver_failure = 3,
  unsupported_dimension = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by iterative solvers; carries the residual reached when they gave up.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double residual)
      : Error(ErrorCode::solver_failure, what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::invalid_input, what);
}

}  // namespace ymlab

#endif
