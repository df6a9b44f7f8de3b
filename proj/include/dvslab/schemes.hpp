#pragma once

#include <memory>
#include <optional>
#include <string_view>

#include "dvslab/dvs.hpp"

namespace dvslab {

// dhmac is the honest reference scheme; the other three each break exactly
// one property so the corresponding game separates them from dhmac:
//   leaky        - appends the sender pk to every signature (sender privacy)
//   forgeable    - verify also accepts the all-zero tag (unforgeability)
//   transferable - trailer says whether Sign or Simulate produced it (NT)
enum class SchemeId { dhmac, leaky, forgeable, transferable };

std::string_view scheme_name(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view name);

std::shared_ptr<const Scheme> make_scheme(SchemeId id);

}  // namespace dvslab
