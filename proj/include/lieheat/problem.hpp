#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace lieheat {

/// ibvp1: constant surface temperature; ibvp2: constant surface heat flux.
enum class Problem { ibvp1, ibvp2 };

inline std::string_view name(Problem p) { return p == Problem::ibvp1 ? "ibvp1" : "ibvp2"; }

inline std::optional<Problem> problem_from_name(std::string_view s) {
  if (s == "ibvp1") return Problem::ibvp1;
  if (s == "ibvp2") return Problem::ibvp2;
  return std::nullopt;
}

}  // namespace lieheat
