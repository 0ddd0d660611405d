// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "core/hardy.hpp"

namespace hm {

// Extended reals serialize finite values as numbers and +-infinity as the
// strings "inf" / "-inf".
nlohmann::json json_extended(double v);

nlohmann::json to_json(const LimitEstimate& e);
nlohmann::json to_json(const IntegralResult& r);
nlohmann::json to_json(const ShapeReport& r);
nlohmann::json to_json(const PropertyReport& r);
// schema: {constant, method, interval, caveats, diagnostics}
nlohmann::json to_json(const HardyEstimate& e);
nlohmann::json to_json(const VerificationReport& r);

}  // namespace hm
