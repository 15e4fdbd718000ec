#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "core/scenario.hpp"
#include "core/scenario_io.hpp"

using namespace craft;

namespace {

bool has_message(const std::vector<std::string>& issues, const std::string& needle) {
  for (const auto& m : issues)
    if (m.find(needle) != std::string::npos) return true;
  return false;
}

ScenarioConfig small_config(std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.n_edge_candidates = 8;
  cfg.n_fog_candidates = 2;
  cfg.n_users = 20;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("comp model names round-trip") {
  CHECK(std::string(comp_model_name(CompModel::Literal)) == "literal");
  CHECK(std::string(comp_model_name(CompModel::PerBit)) == "per_bit");
  CompModel m;
  CHECK(parse_comp_model("literal", m));
  CHECK(m == CompModel::Literal);
  CHECK(parse_comp_model("per_bit", m));
  CHECK(m == CompModel::PerBit);
  CHECK(parse_comp_model("per-bit", m));
  CHECK(m == CompModel::PerBit);
  CHECK_FALSE(parse_comp_model("quantum", m));
}

TEST_CASE("default config is valid") { CHECK(validate_config(ScenarioConfig{}).empty()); }

TEST_CASE("validate_config reports each violated rule") {
  ScenarioConfig cfg;
  cfg.n_edge_candidates = 1;
  CHECK(has_message(validate_config(cfg), "n_edge_candidates must be >= 2"));

  cfg = ScenarioConfig{};
  cfg.n_users = 0;
  CHECK(has_message(validate_config(cfg), "n_users must be >= 1"));

  cfg = ScenarioConfig{};
  cfg.n_fog_candidates = -1;
  CHECK(has_message(validate_config(cfg), "n_fog_candidates must be >= 0"));

  cfg = ScenarioConfig{};
  cfg.w_hz = 0.0;
  CHECK(has_message(validate_config(cfg), "W must be > 0"));

  cfg = ScenarioConfig{};
  cfg.sigma2_w = -1.0;
  CHECK(has_message(validate_config(cfg), "sigma2_w must be > 0"));

  cfg = ScenarioConfig{};
  cfg.task_freq_hz = {5.0, 1.0};
  CHECK(has_message(validate_config(cfg), "task_freq_hz range must satisfy min <= max"));

  cfg = ScenarioConfig{};
  cfg.task_d_bits = {0.0, 1.0};
  CHECK(has_message(validate_config(cfg), "task_d_bits range must be > 0"));

  cfg = ScenarioConfig{};
  cfg.bounds.edge_sc_min = 5;
  cfg.bounds.edge_sc_max = 4;
  CHECK(has_message(validate_config(cfg), "edge_sc range must satisfy 0 <= min <= max"));

  cfg = ScenarioConfig{};
  cfg.bounds.ac_max = 0;
  CHECK(has_message(validate_config(cfg), "ac_max must be >= 1"));

  cfg = ScenarioConfig{};
  cfg.extra_link_fraction = -0.1;
  CHECK(has_message(validate_config(cfg), "extra_link_fraction must be >= 0"));
}

TEST_CASE("generate is a pure function of the config") {
  const auto cfg = small_config(99);
  const auto a = generate(cfg);
  const auto b = generate(cfg);
  CHECK(a == b);
  auto cfg2 = cfg;
  cfg2.seed = 100;
  CHECK_FALSE(generate(cfg2) == a);
}

TEST_CASE("generate rejects invalid configs") {
  ScenarioConfig cfg;
  cfg.n_users = 0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
}

TEST_CASE("generated scenarios have the promised structure") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 44ull, 1234ull}) {
    const auto cfg = small_config(seed);
    const auto scn = generate(cfg);

    REQUIRE(static_cast<int>(scn.graph.sites.size()) == cfg.n_edge_candidates + cfg.n_fog_candidates);
    for (int i = 0; i < static_cast<int>(scn.graph.sites.size()); ++i) {
      const auto& s = scn.graph.sites[static_cast<std::size_t>(i)];
      CHECK(s.site_id == i);
      CHECK(s.kind == (i < cfg.n_edge_candidates ? SiteKind::Edge : SiteKind::Fog));
      CHECK(s.pos.x >= 0.0);
      CHECK(s.pos.x <= cfg.area_side_m);
      CHECK(s.pos.y >= 0.0);
      CHECK(s.pos.y <= cfg.area_side_m);
    }

    // Link census: spanning tree + extras between edges, 2 links per fog.
    const int n_extra = static_cast<int>(cfg.extra_link_fraction * cfg.n_edge_candidates);
    const int expected_edge_links = cfg.n_edge_candidates - 1 + n_extra;
    int edge_links = 0, fog_links = 0;
    std::set<std::pair<int, int>> seen;
    for (const auto& link : scn.graph.links) {
      CHECK(link.a != link.b);
      CHECK(link.bitrate_bps > 0.0);
      const auto key = std::minmax(link.a, link.b);
      CHECK(seen.insert(key).second);  // no duplicates
      const bool a_fog = scn.graph.sites[static_cast<std::size_t>(link.a)].kind == SiteKind::Fog;
      const bool b_fog = scn.graph.sites[static_cast<std::size_t>(link.b)].kind == SiteKind::Fog;
      CHECK_FALSE((a_fog && b_fog));
      if (a_fog || b_fog) {
        ++fog_links;
        CHECK(scn.config.edge_fog_bitrate_bps.min <= link.bitrate_bps);
        CHECK(link.bitrate_bps <= scn.config.edge_fog_bitrate_bps.max);
      } else {
        ++edge_links;
        CHECK(scn.config.edge_edge_bitrate_bps.min <= link.bitrate_bps);
        CHECK(link.bitrate_bps <= scn.config.edge_edge_bitrate_bps.max);
      }
    }
    CHECK(edge_links == expected_edge_links);
    CHECK(fog_links == 2 * cfg.n_fog_candidates);

    // Edge subgraph is connected.
    std::vector<bool> visited(scn.graph.sites.size(), false);
    std::queue<int> frontier;
    frontier.push(0);
    visited[0] = true;
    int reached = 0;
    while (!frontier.empty()) {
      const int at = frontier.front();
      frontier.pop();
      ++reached;
      for (const auto& adj : scn.graph.adjacency[static_cast<std::size_t>(at)]) {
        if (scn.graph.sites[static_cast<std::size_t>(adj.to)].kind != SiteKind::Edge) continue;
        if (!visited[static_cast<std::size_t>(adj.to)]) {
          visited[static_cast<std::size_t>(adj.to)] = true;
          frontier.push(adj.to);
        }
      }
    }
    CHECK(reached == cfg.n_edge_candidates);

    // Every fog connects to exactly its two nearest edge candidates.
    for (int f = cfg.n_edge_candidates; f < static_cast<int>(scn.graph.sites.size()); ++f) {
      std::vector<int> neighbors;
      for (const auto& adj : scn.graph.adjacency[static_cast<std::size_t>(f)]) neighbors.push_back(adj.to);
      REQUIRE(neighbors.size() == 2);
      std::vector<std::pair<double, int>> by_dist;
      for (int e = 0; e < cfg.n_edge_candidates; ++e)
        by_dist.emplace_back(squared_distance(scn.graph.sites[static_cast<std::size_t>(f)].pos,
                                              scn.graph.sites[static_cast<std::size_t>(e)].pos),
                             e);
      std::sort(by_dist.begin(), by_dist.end());
      const std::set<int> expect{by_dist[0].second, by_dist[1].second};
      CHECK(expect == std::set<int>(neighbors.begin(), neighbors.end()));
    }

    REQUIRE(static_cast<int>(scn.tasks.size()) == cfg.n_users);
    for (int t = 0; t < cfg.n_users; ++t) {
      const auto& task = scn.tasks[static_cast<std::size_t>(t)];
      CHECK(task.user_id == t);
      CHECK(task.freq_hz >= cfg.task_freq_hz.min);
      CHECK(task.freq_hz <= cfg.task_freq_hz.max);
      CHECK(task.cycles >= cfg.task_cycles.min);
      CHECK(task.cycles <= cfg.task_cycles.max);
      CHECK(task.d_bits >= cfg.task_d_bits.min);
      CHECK(task.d_bits <= cfg.task_d_bits.max);
      CHECK(task.pos.x >= 0.0);
      CHECK(task.pos.x <= cfg.area_side_m);
    }
  }
}

TEST_CASE("dbm_to_watts matches known conversions") {
  CHECK(dbm_to_watts(-100.0) == doctest::Approx(1e-13).epsilon(1e-12));
  CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scenario json round-trips losslessly and byte-identically") {
  const auto scn = generate(small_config(7));
  const auto text = scenario_to_json(scn);
  const auto back = scenario_from_json(text);
  CHECK(back == scn);
  CHECK(scenario_to_json(back) == text);
}

TEST_CASE("config json round-trips") {
  ScenarioConfig cfg = small_config(3);
  cfg.comp_model = CompModel::PerBit;
  cfg.extra_link_fraction = 0.5;
  const auto back = config_from_json(config_to_json(cfg));
  CHECK(back == cfg);
}

TEST_CASE("config json accepts sigma2_dbm as an override") {
  const auto cfg = config_from_json(R"({"sigma2_dbm": -100.0})");
  CHECK(cfg.sigma2_w == doctest::Approx(1e-13).epsilon(1e-12));
  // sigma2_dbm wins over sigma2_w when both appear.
  const auto both = config_from_json(R"({"sigma2_w": 5.0, "sigma2_dbm": 0.0})");
  CHECK(both.sigma2_w == doctest::Approx(1e-3).epsilon(1e-12));
}

TEST_CASE("config json reports bad fields by name") {
  CHECK_THROWS_WITH_AS(config_from_json(R"({"n_users": "many"})"), doctest::Contains("config.n_users"), ParseError);
  CHECK_THROWS_WITH_AS(config_from_json(R"({"comp_model": "quantum"})"), doctest::Contains("comp_model"), ParseError);
  CHECK_THROWS_WITH_AS(config_from_json(R"({"n_users": 0})"), doctest::Contains("n_users must be >= 1"), ParseError);
  CHECK_THROWS_WITH_AS(config_from_json("not json"), doctest::Contains("json"), ParseError);
}

TEST_CASE("scenario json validates structure") {
  const auto scn = generate(small_config(5));
  const auto text = scenario_to_json(scn);

  auto drop_section = [&](const std::string& name) {
    auto t = text;
    const auto pos = t.find("\"" + name + "\"");
    REQUIRE(pos != std::string::npos);
    return t.substr(0, pos) + "\"renamed_" + name + "\"" + t.substr(pos + name.size() + 2);
  };
  CHECK_THROWS_WITH_AS(scenario_from_json(drop_section("links")), doctest::Contains("links: missing section"), ParseError);
  CHECK_THROWS_WITH_AS(scenario_from_json(drop_section("tasks")), doctest::Contains("tasks: missing section"), ParseError);
  CHECK_THROWS_WITH_AS(scenario_from_json(drop_section("config")), doctest::Contains("config: missing section"), ParseError);
  CHECK_THROWS_WITH_AS(scenario_from_json(drop_section("sites")), doctest::Contains("sites: missing section"), ParseError);
}

TEST_CASE("scenario json rejects corrupt links before building the graph") {
  const auto scn = generate(small_config(5));
  nlohmann::json doc = nlohmann::json::parse(scenario_to_json(scn));

  auto corrupt = doc;
  corrupt["links"][0]["a"] = 999;  // out of range site id must not crash
  CHECK_THROWS_AS(scenario_from_json(corrupt.dump()), ParseError);

  corrupt = doc;
  corrupt["links"][0]["b"] = corrupt["links"][0]["a"];
  CHECK_THROWS_WITH_AS(scenario_from_json(corrupt.dump()), doctest::Contains("self link"), ParseError);

  corrupt = doc;
  corrupt["links"].push_back(corrupt["links"][0]);
  CHECK_THROWS_WITH_AS(scenario_from_json(corrupt.dump()), doctest::Contains("duplicate"), ParseError);

  corrupt = doc;
  corrupt["links"][0]["bitrate_bps"] = 1.0;  // outside the configured edge-edge range
  CHECK_THROWS_WITH_AS(scenario_from_json(corrupt.dump()), doctest::Contains("outside configured range"), ParseError);
}

TEST_CASE("scenario json rejects fog-fog links and task mismatches") {
  ScenarioConfig cfg = small_config(6);
  const auto scn = generate(cfg);
  nlohmann::json doc = nlohmann::json::parse(scenario_to_json(scn));

  auto corrupt = doc;
  corrupt["links"].push_back({{"a", cfg.n_edge_candidates}, {"b", cfg.n_edge_candidates + 1}, {"bitrate_bps", 3e6}});
  CHECK_THROWS_WITH_AS(scenario_from_json(corrupt.dump()), doctest::Contains("fog"), ParseError);

  corrupt = doc;
  corrupt["tasks"].erase(corrupt["tasks"].size() - 1);
  CHECK_THROWS_AS(scenario_from_json(corrupt.dump()), ParseError);

  corrupt = doc;
  corrupt["tasks"][0]["id"] = 5;
  CHECK_THROWS_AS(scenario_from_json(corrupt.dump()), ParseError);

  corrupt = doc;
  corrupt["tasks"][0]["freq_hz"] = 1.0;  // outside configured task range
  CHECK_THROWS_AS(scenario_from_json(corrupt.dump()), ParseError);

  corrupt = doc;
  corrupt["sites"][0]["kind"] = "cloud";
  CHECK_THROWS_AS(scenario_from_json(corrupt.dump()), ParseError);
}

TEST_CASE("scenario json surfaces config violations from files") {
  const auto scn = generate(small_config(5));
  nlohmann::json doc = nlohmann::json::parse(scenario_to_json(scn));
  doc["config"]["w_hz"] = 0.0;
  CHECK_THROWS_WITH_AS(scenario_from_json(doc.dump()), doctest::Contains("W must be > 0"), ParseError);
}

TEST_CASE("save and load round-trip through a file") {
  const auto scn = generate(small_config(21));
  const std::string path = "test_scenario_roundtrip.json";
  save(scn, path);
  const auto back = load(path);
  CHECK(back == scn);

  // Loading twice gives byte-identical re-serialization.
  CHECK(scenario_to_json(load(path)) == scenario_to_json(back));
  std::remove(path.c_str());
}

TEST_CASE("io errors carry the path") {
  CHECK_THROWS_WITH_AS(load("does_not_exist_7182.json"), doctest::Contains("does_not_exist_7182.json"), IoError);
  const auto scn = generate(small_config(2));
  CHECK_THROWS_AS(save(scn, "no_such_dir_9135/out.json"), IoError);
}

TEST_CASE("load rejects files with bad json") {
  const std::string path = "test_scenario_badjson.json";
  {
    std::ofstream out(path);
    out << "{ definitely not json";
  }
  CHECK_THROWS_AS(load(path), ParseError);
  std::remove(path.c_str());
}
