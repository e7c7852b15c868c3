#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

enum class ErrorCode {
  domain,
  not_hermitian,
  not_psd,
  no_convergence,
  filtered_to_zero,
  undefined_conditional,
  zero_conditioning_counts,
  zero_counts,
  fit_diverged,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, ErrorCode code, const std::string& msg) {
  if (!ok) raise(code, msg);
}

}  // namespace qcorr
