#pragma once

#include <stdexcept>
#include <string>

namespace infospace {

/// Machine-checkable failure categories. The CLI maps any of these to exit
/// code 2 (invalid input) while gate failures map to exit code 1.
enum class ErrorCode {
    invalid_input,
    superluminal,
    invalid_map,
    shape_mismatch,
    contraction_mismatch,
    rank_error,
    singular_potential,
    non_timelike_path,
    convergence_failure,
    degenerate_normalization,
    undersampled_phase,
    scenario_error,
    io_error,
};

/// Base error for every contract violation in the library. Carries the
/// owning module and operation so a caller can report where the contract
/// broke without parsing the message.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string module, std::string operation, const std::string& message)
        : std::runtime_error(module + "." + operation + ": " + message),
          code_(code),
          module_(std::move(module)),
          operation_(std::move(operation)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& module_name() const noexcept { return module_; }
    const std::string& operation() const noexcept { return operation_; }

  private:
    ErrorCode code_;
    std::string module_;
    std::string operation_;
};

[[noreturn]] inline void fail(ErrorCode code, const char* module, const char* op,
                              const std::string& message) {
    throw Error(code, module, op, message);
}

}  // namespace infospace
