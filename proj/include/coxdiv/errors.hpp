#pragma once

#include <stdexcept>
#include <string>

namespace coxdiv {

// Error categories; the CLI maps budget_exceeded to exit code 1 and
// everything else to exit code 2.
enum class Errc {
  invalid_parameter,
  invalid_word,
  invalid_query,
  not_found,
  budget_exceeded,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace coxdiv
