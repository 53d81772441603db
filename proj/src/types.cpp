#include "dialectkit/types.hpp"

namespace dialectkit {

std::string_view to_string(Origin origin) {
  return origin == Origin::human ? "human" : "synthetic";
}

std::optional<Origin> origin_from_string(std::string_view s) {
  if (s == "human") return Origin::human;
  if (s == "synthetic") return Origin::synthetic;
  return std::nullopt;
}

}  // namespace dialectkit
