#pragma once

#include <stdexcept>
#include <string>

namespace burnstab {

enum class errc {
  invalid_argument,
  invalid_params,
  not_reactive_regime,
  degenerate_spectrum,
  step_size_underflow,
  nonfinite_state,
  no_root_in_interval,
  branch_condition_unmet,
  grid_too_large,
  parse_error,
  io_error,
};

class error : public std::runtime_error {
public:
  error(errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

}  // namespace burnstab
