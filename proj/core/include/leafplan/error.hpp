#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace leafplan {

enum class errc {
    unsupported_format,
    corrupt_file,
    zero_dimension,
    degenerate_histogram,
    dimension_mismatch,
    too_few_points,
    non_finite_input,
    empty_foreground,
    empty_leaf,
    empty_input,
    shape_mismatch,
    empty_histogram,
    invalid_argument,
};

std::string_view errc_name(errc code);

/// Library-wide exception. `stage()` is filled in by pipeline drivers so a
/// caller can tell which step of a multi-stage run failed.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const noexcept { return code_; }

    const std::string& stage() const noexcept { return stage_; }
    void set_stage(std::string stage) { stage_ = std::move(stage); }

private:
    errc code_;
    std::string stage_;
};

} // namespace leafplan
