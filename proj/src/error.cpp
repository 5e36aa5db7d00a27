#include "hasel/error.hpp"

namespace hasel {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain_violation: return "domain-violation";
    case ErrorCode::invariant_violation: return "invariant-violation";
    case ErrorCode::bad_quantity: return "bad-quantity";
    case ErrorCode::unknown_key: return "unknown-key";
    case ErrorCode::missing_key: return "missing-key";
    case ErrorCode::missing_columns: return "missing-columns";
    case ErrorCode::non_numeric_cell: return "non-numeric-cell";
    case ErrorCode::too_few_rows: return "too-few-rows";
    case ErrorCode::duplicate_abscissa: return "duplicate-abscissa";
    case ErrorCode::non_increasing_abscissa: return "non-increasing-abscissa";
    case ErrorCode::force_mode_mismatch: return "force-mode-mismatch";
    case ErrorCode::disjoint_domains: return "disjoint-domains";
    case ErrorCode::rank_deficient: return "rank-deficient";
    case ErrorCode::unknown_design: return "unknown-design";
    case ErrorCode::unknown_parameter: return "unknown-parameter";
    case ErrorCode::infeasible_bounds: return "infeasible-bounds";
    case ErrorCode::all_evaluations_failed: return "all-evaluations-failed";
    case ErrorCode::bad_sync_byte: return "bad-sync-byte";
    case ErrorCode::bad_checksum: return "bad-checksum";
    case ErrorCode::unknown_command: return "unknown-command";
    case ErrorCode::invalid_timestep: return "invalid-timestep";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown-error";
}

}  // namespace hasel
