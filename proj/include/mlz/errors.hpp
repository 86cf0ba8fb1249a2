#pragma once

#include <stdexcept>
#include <string>

namespace mlz {

enum class Errc {
    eta_not_positive,
    nu_not_positive,
    nu_exceeds_eta,
    invalid_spin,
    spin_too_large,
    invalid_level,
    invalid_window,
    invalid_step,
    invalid_tolerance,
    not_normalized,
    unphysical_state,
    unsupported_spin,
    level_tracking,
    degenerate_spectrum,
    grid_mismatch,
    invalid_rate,
    config,
};

// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace mlz
