#pragma once

// Size limits for the explicit constructions. Defaults can be overridden with
// the environment variables HOA_MAX_APS, HOA_PG_INPUT_BITS and
// HOA_PG_STATE_BITS.

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hoa {

struct BoundExceeded : std::length_error {
  std::string limit;
  BoundExceeded(const std::string& name, std::size_t value, std::size_t bound)
      : std::length_error(name + " = " + std::to_string(value) + " exceeds the limit " + std::to_string(bound)),
        limit(name) {}
};

struct Bounds {
  unsigned max_aps = 12;          // propositions for explicit alphabet expansion
  unsigned pg_input_bits = 10;    // input propositions for exact-mode P_G
  unsigned pg_state_bits = 12;    // states for full-mode P_G subset enumeration
  unsigned inclusion_aps = 6;     // desk-scale inclusion guard
  unsigned inclusion_states = 6;  // states of the complemented side after conversion
  std::size_t max_product_states = 2000000;

  static Bounds from_env() {
    Bounds b;
    auto read = [](const char* name, unsigned& field) {
      if (const char* v = std::getenv(name)) {
        char* end = nullptr;
        unsigned long x = std::strtoul(v, &end, 10);
        if (end != v && *end == '\0' && x > 0 && x <= 64) field = static_cast<unsigned>(x);
      }
    };
    read("HOA_MAX_APS", b.max_aps);
    read("HOA_PG_INPUT_BITS", b.pg_input_bits);
    read("HOA_PG_STATE_BITS", b.pg_state_bits);
    return b;
  }
};

}  // namespace hoa
