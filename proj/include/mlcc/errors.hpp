#pragma once

#include <stdexcept>
#include <string>

namespace mlcc {

// Error taxonomy shared by the whole library. The C API and the CLI map
// these onto status / exit codes, so keep the set small and stable.
enum class errc {
  invalid_argument,   // bad parameter or config value
  shape_mismatch,     // dimension disagreement between inputs
  out_of_range,       // index or level outside its valid range
  insufficient_data,  // fewer examples than the operation needs
  empty_input,
  parse,              // malformed input file
  io,                 // filesystem failure
  budget_exceeded,    // lattice larger than the configured node budget
  undefined_metric    // metric has no value on this input (e.g. one-class AUC)
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace mlcc
