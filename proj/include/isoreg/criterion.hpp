#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace isoreg {

/// Penalized-fit criteria for choosing the stopping iteration.
enum class Criterion { aic, bic, aicc, gcv };

std::string_view to_string(Criterion c) noexcept;

/// Lowercase tokens: aic, bic, aicc, gcv.
std::optional<Criterion> parse_criterion(std::string_view token) noexcept;

}  // namespace isoreg
