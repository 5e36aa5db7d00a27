#pragma once

#include <stdexcept>
#include <string>

namespace hasel {

enum class ErrorCode {
  domain_violation,
  invariant_violation,
  bad_quantity,
  unknown_key,
  missing_key,
  missing_columns,
  non_numeric_cell,
  too_few_rows,
  duplicate_abscissa,
  non_increasing_abscissa,
  force_mode_mismatch,
  disjoint_domains,
  rank_deficient,
  unknown_design,
  unknown_parameter,
  infeasible_bounds,
  all_evaluations_failed,
  bad_sync_byte,
  bad_checksum,
  unknown_command,
  invalid_timestep,
  io_error,
};

// Maps onto CLI exit codes: usage=1, validation=2, computation=3.
enum class ErrorClass { usage = 1, validation = 2, computation = 3 };

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message,
        ErrorClass cls = ErrorClass::validation)
      : std::runtime_error(message), code_(code), class_(cls) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorClass error_class() const noexcept { return class_; }

private:
  ErrorCode code_;
  ErrorClass class_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message,
                              ErrorClass cls = ErrorClass::validation) {
  throw Error(code, message, cls);
}

}  // namespace hasel
