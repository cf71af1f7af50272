#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lapprox {

// Base error type. `code()` is a stable machine-readable identifier that the
// CLI surfaces verbatim, so changing an existing code is a breaking change.
class lx_error : public std::runtime_error {
 public:
  lx_error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

struct domain_error : lx_error {
  explicit domain_error(const std::string& w) : lx_error("DOMAIN", w) {}
};

// Raised when an iterative scheme cannot reach its accuracy target within its
// configured budget. Never returns a degraded value silently.
struct precision_error : lx_error {
  explicit precision_error(const std::string& w) : lx_error("PRECISION", w) {}
};

struct overflow_error : lx_error {
  explicit overflow_error(const std::string& w) : lx_error("OVERFLOW", w) {}
};

struct parse_error : lx_error {
  explicit parse_error(const std::string& w) : lx_error("PARSE", w) {}
};

struct label_error : lx_error {
  explicit label_error(const std::string& w) : lx_error("CHAR_BAD_LABEL", w) {}
};

struct not_primitive_error : lx_error {
  explicit not_primitive_error(const std::string& w)
      : lx_error("CHAR_NOT_PRIMITIVE", w) {}
};

}  // namespace lapprox
