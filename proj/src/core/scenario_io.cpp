#include "core/scenario_io.hpp"

#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace craft {

namespace {

using nlohmann::json;

double require_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ParseError(where + "." + key + ": missing field");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ParseError(where + "." + key + ": expected a number");
  return v.get<double>();
}

int require_int(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ParseError(where + "." + key + ": missing field");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::string require_string(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ParseError(where + "." + key + ": missing field");
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

json config_to_json_obj(const ScenarioConfig& c) {
  json j;
  j["n_edge_candidates"] = c.n_edge_candidates;
  j["n_fog_candidates"] = c.n_fog_candidates;
  j["n_users"] = c.n_users;
  j["area_side_m"] = c.area_side_m;
  j["edge_sc_min"] = c.bounds.edge_sc_min;
  j["edge_sc_max"] = c.bounds.edge_sc_max;
  j["fog_sc_min"] = c.bounds.fog_sc_min;
  j["fog_sc_max"] = c.bounds.fog_sc_max;
  j["ac_max"] = c.bounds.ac_max;
  j["alpha_hz"] = c.alpha_hz;
  j["omega_hz"] = c.omega_hz;
  j["edge_edge_bitrate_min_bps"] = c.edge_edge_bitrate_bps.min;
  j["edge_edge_bitrate_max_bps"] = c.edge_edge_bitrate_bps.max;
  j["edge_fog_bitrate_min_bps"] = c.edge_fog_bitrate_bps.min;
  j["edge_fog_bitrate_max_bps"] = c.edge_fog_bitrate_bps.max;
  j["w_hz"] = c.w_hz;
  j["h_bar"] = c.h_bar;
  j["sigma2_w"] = c.sigma2_w;
  j["p_w"] = c.p_w;
  j["c_fixed"] = c.c_fixed;
  j["c_dynamic"] = c.c_dynamic;
  j["task_freq_min_hz"] = c.task_freq_hz.min;
  j["task_freq_max_hz"] = c.task_freq_hz.max;
  j["task_cycles_min"] = c.task_cycles.min;
  j["task_cycles_max"] = c.task_cycles.max;
  j["task_d_min_bits"] = c.task_d_bits.min;
  j["task_d_max_bits"] = c.task_d_bits.max;
  j["comp_model"] = comp_model_name(c.comp_model);
  j["extra_link_fraction"] = c.extra_link_fraction;
  j["seed"] = c.seed;
  return j;
}

ScenarioConfig config_from_json_obj(const json& j) {
  if (!j.is_object()) throw ParseError("config: expected an object");
  ScenarioConfig c;  // defaults; file overrides field by field
  const std::string where = "config";

  auto opt_number = [&](const char* key, double& out) {
    if (j.contains(key)) out = require_number(j, key, where);
  };
  auto opt_int = [&](const char* key, int& out) {
    if (j.contains(key)) out = require_int(j, key, where);
  };

  opt_int("n_edge_candidates", c.n_edge_candidates);
  opt_int("n_fog_candidates", c.n_fog_candidates);
  opt_int("n_users", c.n_users);
  opt_number("area_side_m", c.area_side_m);
  opt_int("edge_sc_min", c.bounds.edge_sc_min);
  opt_int("edge_sc_max", c.bounds.edge_sc_max);
  opt_int("fog_sc_min", c.bounds.fog_sc_min);
  opt_int("fog_sc_max", c.bounds.fog_sc_max);
  opt_int("ac_max", c.bounds.ac_max);
  opt_number("alpha_hz", c.alpha_hz);
  opt_number("omega_hz", c.omega_hz);
  opt_number("edge_edge_bitrate_min_bps", c.edge_edge_bitrate_bps.min);
  opt_number("edge_edge_bitrate_max_bps", c.edge_edge_bitrate_bps.max);
  opt_number("edge_fog_bitrate_min_bps", c.edge_fog_bitrate_bps.min);
  opt_number("edge_fog_bitrate_max_bps", c.edge_fog_bitrate_bps.max);
  opt_number("w_hz", c.w_hz);
  opt_number("h_bar", c.h_bar);
  opt_number("sigma2_w", c.sigma2_w);
  if (j.contains("sigma2_dbm")) c.sigma2_w = dbm_to_watts(require_number(j, "sigma2_dbm", where));
  opt_number("p_w", c.p_w);
  opt_number("c_fixed", c.c_fixed);
  opt_number("c_dynamic", c.c_dynamic);
  opt_number("task_freq_min_hz", c.task_freq_hz.min);
  opt_number("task_freq_max_hz", c.task_freq_hz.max);
  opt_number("task_cycles_min", c.task_cycles.min);
  opt_number("task_cycles_max", c.task_cycles.max);
  opt_number("task_d_min_bits", c.task_d_bits.min);
  opt_number("task_d_max_bits", c.task_d_bits.max);
  if (j.contains("comp_model")) {
    const auto name = require_string(j, "comp_model", where);
    if (!parse_comp_model(name, c.comp_model)) {
      throw ParseError("config.comp_model: expected \"literal\" or \"per_bit\", found \"" + name + "\"");
    }
  }
  opt_number("extra_link_fraction", c.extra_link_fraction);
  if (j.contains("seed")) {
    const auto& v = j.at("seed");
    if (!v.is_number_integer()) throw ParseError("config.seed: expected an integer");
    c.seed = v.get<std::uint64_t>();
  }

  if (auto errors = validate_config(c); !errors.empty()) throw ParseError(errors.front());
  return c;
}

void check_in_range(double v, const ValueRange& r, const std::string& field) {
  if (v < r.min || v > r.max) throw ParseError(field + ": outside configured range");
}

// Link rules that must hold before the adjacency index can be built.
void validate_links(const ScenarioConfig& c, const std::vector<SiteCandidate>& sites,
                    const std::vector<WiredLink>& links) {
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < links.size(); ++k) {
    const auto& l = links[k];
    const std::string where = "links[" + std::to_string(k) + "]";
    if (l.a == l.b) throw ParseError(where + ": self link");
    if (l.a < 0 || l.b < 0 || l.a >= static_cast<int>(sites.size()) || l.b >= static_cast<int>(sites.size()))
      throw ParseError(where + ": unknown site id");
    if (!(l.bitrate_bps > 0.0)) throw ParseError(where + ".bitrate_bps: must be > 0");
    const auto ka = sites[static_cast<std::size_t>(l.a)].kind;
    const auto kb = sites[static_cast<std::size_t>(l.b)].kind;
    if (ka == SiteKind::Fog && kb == SiteKind::Fog) throw ParseError(where + ": fog-fog links are not allowed");
    const auto key = std::minmax(l.a, l.b);
    if (!seen.insert(key).second) throw ParseError(where + ": duplicate link");
    if (ka == SiteKind::Edge && kb == SiteKind::Edge) {
      check_in_range(l.bitrate_bps, c.edge_edge_bitrate_bps, where + ".bitrate_bps");
    } else {
      check_in_range(l.bitrate_bps, c.edge_fog_bitrate_bps, where + ".bitrate_bps");
    }
  }
}

void validate_scenario_structure(const Scenario& scn) {
  const auto& g = scn.graph;
  const auto& c = scn.config;

  const int n_edge = g.edge_count();
  const int n_fog = g.fog_count();
  if (n_edge != c.n_edge_candidates) throw ParseError("sites: edge site count does not match config.n_edge_candidates");
  if (n_fog != c.n_fog_candidates) throw ParseError("sites: fog site count does not match config.n_fog_candidates");
  if (static_cast<int>(scn.tasks.size()) != c.n_users) throw ParseError("tasks: task count does not match config.n_users");

  // Edge subgraph must be connected; every fog needs at least one edge link.
  if (n_edge > 0) {
    std::vector<char> visited(g.sites.size(), 0);
    std::queue<int> frontier;
    int start = -1;
    for (const auto& s : g.sites) {
      if (s.kind == SiteKind::Edge) {
        start = s.site_id;
        break;
      }
    }
    frontier.push(start);
    visited[static_cast<std::size_t>(start)] = 1;
    int reached = 1;
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (const auto& adj : g.adjacency[static_cast<std::size_t>(u)]) {
        if (g.sites[static_cast<std::size_t>(adj.to)].kind != SiteKind::Edge) continue;
        if (!visited[static_cast<std::size_t>(adj.to)]) {
          visited[static_cast<std::size_t>(adj.to)] = 1;
          ++reached;
          frontier.push(adj.to);
        }
      }
    }
    if (reached != n_edge) throw ParseError("links: edge subgraph is not connected");
  }
  for (const auto& s : g.sites) {
    if (s.kind != SiteKind::Fog) continue;
    bool linked = false;
    for (const auto& adj : g.adjacency[static_cast<std::size_t>(s.site_id)]) {
      if (g.sites[static_cast<std::size_t>(adj.to)].kind == SiteKind::Edge) linked = true;
    }
    if (!linked) throw ParseError("links: fog site " + std::to_string(s.site_id) + " has no link to an edge site");
  }

  for (std::size_t i = 0; i < scn.tasks.size(); ++i) {
    const auto& t = scn.tasks[i];
    const std::string where = "tasks[" + std::to_string(i) + "]";
    if (t.user_id != static_cast<int>(i)) throw ParseError(where + ".id: tasks must be listed in id order starting at 0");
    check_in_range(t.d_bits, c.task_d_bits, where + ".d_bits");
    check_in_range(t.freq_hz, c.task_freq_hz, where + ".freq_hz");
    check_in_range(t.cycles, c.task_cycles, where + ".cycles");
  }
}

}  // namespace

std::string config_to_json(const ScenarioConfig& cfg) { return config_to_json_obj(cfg).dump(2); }

ScenarioConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return config_from_json_obj(j);
}

std::string scenario_to_json(const Scenario& scn) {
  json j;
  j["config"] = config_to_json_obj(scn.config);

  json sites = json::array();
  for (const auto& s : scn.graph.sites) {
    sites.push_back({{"id", s.site_id},
                     {"kind", s.kind == SiteKind::Edge ? "edge" : "fog"},
                     {"x", s.pos.x},
                     {"y", s.pos.y}});
  }
  j["sites"] = std::move(sites);

  json links = json::array();
  for (const auto& l : scn.graph.links) {
    links.push_back({{"a", l.a}, {"b", l.b}, {"bitrate_bps", l.bitrate_bps}});
  }
  j["links"] = std::move(links);

  json tasks = json::array();
  for (const auto& t : scn.tasks) {
    tasks.push_back({{"id", t.user_id},
                     {"d_bits", t.d_bits},
                     {"freq_hz", t.freq_hz},
                     {"cycles", t.cycles},
                     {"x", t.pos.x},
                     {"y", t.pos.y}});
  }
  j["tasks"] = std::move(tasks);
  return j.dump(2);
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("scenario: expected a JSON object");
  for (const char* section : {"config", "sites", "links", "tasks"}) {
    if (!j.contains(section)) throw ParseError(std::string(section) + ": missing section");
  }

  Scenario scn;
  scn.config = config_from_json_obj(j.at("config"));

  if (!j.at("sites").is_array()) throw ParseError("sites: expected an array");
  std::vector<SiteCandidate> sites;
  for (std::size_t i = 0; i < j.at("sites").size(); ++i) {
    const auto& e = j.at("sites").at(i);
    const std::string where = "sites[" + std::to_string(i) + "]";
    SiteCandidate s;
    s.site_id = require_int(e, "id", where);
    if (s.site_id != static_cast<int>(i)) throw ParseError(where + ".id: sites must be listed in id order starting at 0");
    const auto kind = require_string(e, "kind", where);
    if (kind == "edge") {
      s.kind = SiteKind::Edge;
    } else if (kind == "fog") {
      s.kind = SiteKind::Fog;
    } else {
      throw ParseError(where + ".kind: expected \"edge\" or \"fog\", found \"" + kind + "\"");
    }
    s.pos = {require_number(e, "x", where), require_number(e, "y", where)};
    sites.push_back(s);
  }

  if (!j.at("links").is_array()) throw ParseError("links: expected an array");
  std::vector<WiredLink> links;
  for (std::size_t i = 0; i < j.at("links").size(); ++i) {
    const auto& e = j.at("links").at(i);
    const std::string where = "links[" + std::to_string(i) + "]";
    links.push_back({require_int(e, "a", where), require_int(e, "b", where),
                     require_number(e, "bitrate_bps", where)});
  }

  if (!j.at("tasks").is_array()) throw ParseError("tasks: expected an array");
  for (std::size_t i = 0; i < j.at("tasks").size(); ++i) {
    const auto& e = j.at("tasks").at(i);
    const std::string where = "tasks[" + std::to_string(i) + "]";
    TaskSpec t;
    t.user_id = require_int(e, "id", where);
    t.d_bits = require_number(e, "d_bits", where);
    t.freq_hz = require_number(e, "freq_hz", where);
    t.cycles = require_number(e, "cycles", where);
    t.pos = {require_number(e, "x", where), require_number(e, "y", where)};
    scn.tasks.push_back(t);
  }

  validate_links(scn.config, sites, links);
  scn.graph = make_graph(std::move(sites), std::move(links));
  validate_scenario_structure(scn);
  return scn;
}

void save(const Scenario& scn, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << scenario_to_json(scn) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

Scenario load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

}  // namespace craft
