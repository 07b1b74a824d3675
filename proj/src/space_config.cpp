#include "exm/space_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace exm::cfg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw parse_error("key '" + key + "' needs a nonnegative integer, got '" + value + "'");
  }
}

Rat parse_rat_value(const std::string& key, const std::string& value) {
  auto r = rat_parse(value);
  if (!r) throw parse_error("key '" + key + "' needs a rational p/q, got '" + value + "'");
  return *r;
}

std::vector<Rat> parse_rat_row(const std::string& key, const std::string& value) {
  std::vector<Rat> row;
  std::istringstream in(value);
  std::string tok;
  while (std::getline(in, tok, ',')) row.push_back(parse_rat_value(key, trim(tok)));
  return row;
}

const std::set<std::string>& known_kinds() {
  static const std::set<std::string> kinds{"unit_interval", "cantor", "discrete", "hedgehog",
                                           "cobweb",        "zcon",   "tower",    "extremal"};
  return kinds;
}

SpaceSpec spec_from_map_impl(const std::map<std::string, std::string>& kv,
                             const std::string& scope) {
  auto where = [&scope](const std::string& key) { return scope.empty() ? key : scope + key; };
  auto it = kv.find("kind");
  if (it == kv.end()) throw parse_error("missing key '" + where("kind") + "'");
  SpaceSpec spec = default_spec(it->second);

  std::map<std::string, std::string> base_kv;
  std::set<std::string> consumed{"kind"};
  auto take = [&](const std::string& key) -> const std::string* {
    auto f = kv.find(key);
    if (f == kv.end()) return nullptr;
    consumed.insert(key);
    return &f->second;
  };

  if (spec.kind == "unit_interval" || spec.kind == "extremal") {
    if (const auto* v = take("grid_log2")) {
      spec.grid_log2 = static_cast<unsigned>(parse_uint(where("grid_log2"), *v));
      if (spec.grid_log2 > 32) throw validation_error("grid_log2 too large (max 32)");
    }
  }
  if (spec.kind == "cantor") {
    if (const auto* v = take("max_element"))
      spec.max_element = static_cast<std::uint32_t>(parse_uint(where("max_element"), *v));
  }
  if (spec.kind == "discrete") {
    std::vector<std::vector<Rat>> rows;
    for (std::size_t i = 0;; ++i) {
      const auto* v = take("table." + std::to_string(i));
      if (!v) break;
      rows.push_back(parse_rat_row(where("table." + std::to_string(i)), *v));
    }
    if (rows.empty()) throw parse_error("discrete space needs table.0, table.1, ... rows");
    spec.table = std::move(rows);
  }
  if (spec.kind == "hedgehog") {
    if (const auto* v = take("spikes")) {
      spec.spikes = static_cast<std::uint32_t>(parse_uint(where("spikes"), *v));
      if (spec.spikes == 0) throw validation_error("hedgehog needs at least one spike");
    }
  }
  if (spec.kind == "cobweb") {
    const auto* list = take("vortices");
    const auto* count = take("vortex_count");
    if (list && count) throw parse_error("give either 'vortices' or 'vortex_count', not both");
    if (list) {
      spec.vortices.clear();
      std::istringstream in(*list);
      std::string tok;
      while (std::getline(in, tok, ','))
        spec.vortices.push_back(
            static_cast<std::uint32_t>(parse_uint(where("vortices"), trim(tok))));
    } else if (count) {
      const auto n = parse_uint(where("vortex_count"), *count);
      spec.vortices.clear();
      for (std::uint64_t i = 0; i < n; ++i)
        spec.vortices.push_back(static_cast<std::uint32_t>(i));
    }
    std::set<std::uint32_t> uniq(spec.vortices.begin(), spec.vortices.end());
    if (uniq.size() != spec.vortices.size())
      throw validation_error("vortex identifiers must be distinct");
    if (spec.vortices.empty()) throw validation_error("cobweb needs at least one vortex");
  }
  if (spec.kind == "hedgehog" || spec.kind == "cobweb" || spec.kind == "zcon" ||
      spec.kind == "tower") {
    if (const auto* v = take("eps")) {
      spec.eps = parse_rat_value(where("eps"), *v);
      if (!(spec.eps > 0)) throw validation_error("eps must be positive");
    }
  }
  if (spec.kind == "tower") {
    if (const auto* v = take("height")) {
      spec.height = static_cast<int>(parse_uint(where("height"), *v));
      if (spec.height < 1 || spec.height > 8)
        throw validation_error("tower height must be in [1, 8]");
    }
  }
  if (spec.kind == "zcon" || spec.kind == "tower") {
    for (const auto& [k, v] : kv)
      if (k.rfind("base.", 0) == 0) {
        base_kv[k.substr(5)] = v;
        consumed.insert(k);
      }
    if (base_kv.empty()) throw parse_error("'" + spec.kind + "' needs base.* keys");
    spec.base = std::make_shared<SpaceSpec>(spec_from_map_impl(base_kv, where("base.")));
    if (!is_base_kind(spec.base->kind))
      throw validation_error("base space kind must be unit_interval, cantor or discrete");
  }

  for (const auto& [k, v] : kv)
    if (!consumed.count(k)) throw parse_error("unknown key '" + where(k) + "'");
  return spec;
}

}  // namespace

bool is_base_kind(const std::string& kind) {
  return kind == "unit_interval" || kind == "cantor" || kind == "discrete";
}

SpaceSpec default_spec(const std::string& kind) {
  if (!known_kinds().count(kind)) throw parse_error("unknown space kind '" + kind + "'");
  SpaceSpec spec;
  spec.kind = kind;
  if (kind == "cobweb") spec.vortices = {0, 1, 2, 3, 4, 5};
  if (kind == "extremal") spec.eps = Rat(1);
  if (kind == "zcon" || kind == "tower") {
    spec.base = std::make_shared<SpaceSpec>();
    spec.base->kind = "unit_interval";
  }
  return spec;
}

SpaceSpec spec_from_map(const std::map<std::string, std::string>& kv) {
  return spec_from_map_impl(kv, "");
}

SpaceSpec parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw parse_error("config line " + std::to_string(lineno) + " is not 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw parse_error("config line " + std::to_string(lineno) + " has no key");
    if (kv.count(key))
      throw parse_error("duplicate key '" + key + "' at line " + std::to_string(lineno));
    kv[key] = value;
  }
  return spec_from_map(kv);
}

SpaceSpec load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::map<std::string, std::string> SpaceSpec::resolved() const {
  std::map<std::string, std::string> kv;
  kv["kind"] = kind;
  if (kind == "unit_interval" || kind == "extremal") kv["grid_log2"] = std::to_string(grid_log2);
  if (kind == "cantor") kv["max_element"] = std::to_string(max_element);
  if (kind == "discrete") {
    for (std::size_t i = 0; i < table.size(); ++i) {
      std::string row;
      for (std::size_t j = 0; j < table[i].size(); ++j) {
        if (j) row += ",";
        row += rat_to_string(table[i][j]);
      }
      kv["table." + std::to_string(i)] = row;
    }
  }
  if (kind == "hedgehog") kv["spikes"] = std::to_string(spikes);
  if (kind == "cobweb") {
    std::string list;
    for (std::size_t i = 0; i < vortices.size(); ++i) {
      if (i) list += ",";
      list += std::to_string(vortices[i]);
    }
    kv["vortices"] = list;
  }
  if (kind == "hedgehog" || kind == "cobweb" || kind == "zcon" || kind == "tower")
    kv["eps"] = rat_to_string(eps);
  if (kind == "tower") kv["height"] = std::to_string(height);
  if (base)
    for (const auto& [k, v] : base->resolved()) kv["base." + k] = v;
  return kv;
}

base::BaseSpace build_base(const SpaceSpec& spec) {
  if (spec.kind == "unit_interval") return base::unit_interval(spec.grid_log2);
  if (spec.kind == "cantor") return base::cantor_finite(spec.max_element);
  if (spec.kind == "discrete") return base::finite_discrete(spec.table);
  throw validation_error("'" + spec.kind + "' is not a base space kind");
}

hedgehog::Space build_hedgehog(const SpaceSpec& spec) {
  if (spec.kind != "hedgehog") throw validation_error("spec is not a hedgehog");
  return hedgehog::Space{spec.spikes, spec.eps};
}

cobweb::Space build_cobweb(const SpaceSpec& spec) {
  if (spec.kind != "cobweb") throw validation_error("spec is not a cobweb");
  return cobweb::Space{spec.vortices, spec.eps};
}

zcon::ZSpace build_zcon(const SpaceSpec& spec) {
  if (spec.kind != "zcon") throw validation_error("spec is not a zcon space");
  return zcon::make_zspace(build_base(*spec.base), spec.eps);
}

invlim::Tower build_tower(const SpaceSpec& spec) {
  if (spec.kind != "tower") throw validation_error("spec is not a tower");
  return invlim::make_tower(build_base(*spec.base), spec.height, spec.eps);
}

}  // namespace exm::cfg
