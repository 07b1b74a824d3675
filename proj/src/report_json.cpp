#include "exm/report_json.hpp"

#include "exm/error.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace exm::report {

Json to_json(const audit::AuditReport& rep) {
  Json j;
  j["audit"] = rep.audit;
  j["space"] = rep.space;
  j["seed"] = rep.seed;
  Json sizes = Json::object();
  for (const auto& [k, v] : rep.sample_sizes) sizes[k] = v;
  j["sample_sizes"] = std::move(sizes);
  j["checks"] = Json{{"attempted", rep.attempted}, {"passed", rep.passed}};
  Json viols = Json::array();
  for (const auto& v : rep.violations) {
    Json jv;
    jv["check"] = v.check;
    jv["points"] = v.points;
    jv["values"] = v.values;
    jv["detail"] = v.detail;
    viols.push_back(std::move(jv));
  }
  j["violations"] = std::move(viols);
  Json stats = Json::object();
  for (const auto& [k, v] : rep.stats) stats[k] = v;
  j["stats"] = std::move(stats);
  j["ok"] = rep.ok();
  return j;
}

Json report_document(const audit::AuditReport& rep,
                     const std::map<std::string, std::string>& resolved_config) {
  Json j = to_json(rep);
  Json cfg = Json::object();
  for (const auto& [k, v] : resolved_config) cfg[k] = v;
  j["config"] = std::move(cfg);
  return j;
}

Json level_point_to_json(const invlim::LevelPoint& p) {
  Json j;
  j["level"] = p.level;
  if (p.level == 1) {
    j["point"] = base::format_point(p.base);
    return j;
  }
  j["fiber"] = level_point_to_json(*p.fiber);
  if (p.toward) {
    j["spike"] = "toward";
    j["toward"] = level_point_to_json(*p.toward);
  } else {
    j["spike"] = "star";
  }
  j["t"] = rat_to_string(p.t);
  return j;
}

invlim::LevelPtr level_point_from_json(const invlim::Tower& tower, const Json& j) {
  if (!j.is_object() || !j.contains("level") || !j["level"].is_number_integer())
    throw parse_error("level point needs an integer 'level' field");
  const int level = j["level"].get<int>();
  if (level == 1) {
    if (!j.contains("point") || !j["point"].is_string())
      throw parse_error("level-1 point needs a 'point' literal");
    return invlim::level1(tower, base::parse_point(tower.bs, j["point"].get<std::string>()));
  }
  if (!j.contains("fiber")) throw parse_error("level point needs a 'fiber' field");
  invlim::LevelPtr fiber = level_point_from_json(tower, j["fiber"]);
  if (fiber->level != level - 1)
    throw validation_error("fiber level must be one below the point level");
  const std::string spike = j.value("spike", "star");
  invlim::LevelPtr toward;
  if (spike == "toward") {
    if (!j.contains("toward")) throw parse_error("toward spike needs a 'toward' field");
    toward = level_point_from_json(tower, j["toward"]);
  } else if (spike != "star") {
    throw parse_error("spike must be 'star' or 'toward'");
  }
  if (!j.contains("t") || !j["t"].is_string()) throw parse_error("level point needs a 't' literal");
  auto t = rat_parse(j["t"].get<std::string>());
  if (!t) throw parse_error("bad rational in 't': " + j["t"].get<std::string>());
  return invlim::make_zlevel(tower, std::move(fiber), std::move(toward), *t);
}

void write_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move " + tmp + " into place");
}

}  // namespace exm::report
