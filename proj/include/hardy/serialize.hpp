#pragma once

// JSON in and out. Chain files look like {"case":"nd","mu":[...],"nu":[...]}.

#include <optional>
#include <string>

#include <json.hpp>

#include "hardy/bounds_report.hpp"
#include "hardy/chain.hpp"
#include "hardy/eigensolver.hpp"

namespace hardy {

/// `override_case`, when set, wins over the "case" field (which may then be absent).
Chain chain_from_json(const nlohmann::json& j, std::optional<BoundaryCase> override_case = std::nullopt);
Chain load_chain_file(const std::string& path, std::optional<BoundaryCase> override_case = std::nullopt);
nlohmann::json chain_to_json(const Chain& chain);

nlohmann::json to_json(const BoundsReport& r);
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const EigenSolution& sol, const VerificationReport& checks);
nlohmann::json to_json(const DualityReport& r);

}  // namespace hardy
