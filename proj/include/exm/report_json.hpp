#pragma once

#include "exm/audit.hpp"
#include "exm/invlimit.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace exm::report {

using Json = nlohmann::ordered_json;

// Stable field order; dumps are byte-identical for identical reports.
Json to_json(const audit::AuditReport& rep);

// Resolved run configuration embedded alongside a report so a run can be
// reproduced from its output.
Json report_document(const audit::AuditReport& rep,
                     const std::map<std::string, std::string>& resolved_config);

// LimitPoint wire form: nested (level, payload) objects with rationals as
// "p/q" strings.
Json level_point_to_json(const invlim::LevelPoint& p);
invlim::LevelPtr level_point_from_json(const invlim::Tower& tower, const Json& j);

// Writes via a temp file plus rename so readers never observe a partial
// report.
void write_atomic(const std::string& path, const std::string& contents);

}  // namespace exm::report
