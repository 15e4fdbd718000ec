#include "core/types.hpp"

#include <algorithm>

namespace craft {

void rebuild_adjacency(NetworkGraph& g) {
  g.adjacency.assign(g.sites.size(), {});
  for (const auto& link : g.links) {
    g.adjacency[static_cast<std::size_t>(link.a)].push_back({link.b, link.bitrate_bps});
    g.adjacency[static_cast<std::size_t>(link.b)].push_back({link.a, link.bitrate_bps});
  }
  for (auto& row : g.adjacency) {
    std::sort(row.begin(), row.end(),
              [](const AdjacentLink& l, const AdjacentLink& r) { return l.to < r.to; });
  }
}

NetworkGraph make_graph(std::vector<SiteCandidate> sites, std::vector<WiredLink> links) {
  NetworkGraph g;
  g.sites = std::move(sites);
  g.links = std::move(links);
  rebuild_adjacency(g);
  return g;
}

namespace {

void check_edge_gene(const NetworkGraph& g, const EdgeGene& gene, std::vector<std::string>& out) {
  const std::string where = "edge gene for site " + std::to_string(gene.site_id);
  const auto id = static_cast<std::size_t>(gene.site_id);
  if (gene.site_id < 0 || id >= g.sites.size()) {
    out.push_back(where + ": unknown site");
    return;
  }
  if (g.sites[id].kind != SiteKind::Edge) out.push_back(where + ": kind mismatch");
  if (gene.sc < 0) out.push_back(where + ": negative server count");
  if ((gene.x == 1) != (gene.sc >= 1)) out.push_back(where + ": indicator/server-count mismatch");
  if (gene.x != 0 && gene.x != 1) out.push_back(where + ": indicator not in {0,1}");
  if (gene.ac < 1) out.push_back(where + ": access-point count below 1");
  if (gene.sc == 0 && gene.ac != 1) out.push_back(where + ": dormant candidate must keep ac = 1");
}

void check_fog_gene(const NetworkGraph& g, const FogGene& gene, std::vector<std::string>& out) {
  const std::string where = "fog gene for site " + std::to_string(gene.site_id);
  const auto id = static_cast<std::size_t>(gene.site_id);
  if (gene.site_id < 0 || id >= g.sites.size()) {
    out.push_back(where + ": unknown site");
    return;
  }
  if (g.sites[id].kind != SiteKind::Fog) out.push_back(where + ": kind mismatch");
  if (gene.sc < 0) out.push_back(where + ": negative server count");
  if ((gene.y == 1) != (gene.sc >= 1)) out.push_back(where + ": indicator/server-count mismatch");
  if (gene.y != 0 && gene.y != 1) out.push_back(where + ": indicator not in {0,1}");
}

}  // namespace

std::vector<std::string> validate_deployment(const NetworkGraph& g, const Deployment& dep) {
  std::vector<std::string> out;

  std::vector<int> edge_ids;
  std::vector<int> fog_ids;
  for (const auto& s : g.sites) {
    (s.kind == SiteKind::Edge ? edge_ids : fog_ids).push_back(s.site_id);
  }

  if (dep.edge_genes.size() != edge_ids.size()) {
    out.push_back("deployment covers " + std::to_string(dep.edge_genes.size()) + " of " +
                  std::to_string(edge_ids.size()) + " edge candidates");
  }
  if (dep.fog_genes.size() != fog_ids.size()) {
    out.push_back("deployment covers " + std::to_string(dep.fog_genes.size()) + " of " +
                  std::to_string(fog_ids.size()) + " fog candidates");
  }

  for (std::size_t i = 0; i < dep.edge_genes.size(); ++i) {
    const auto& gene = dep.edge_genes[i];
    if (i < edge_ids.size() && gene.site_id != edge_ids[i]) {
      out.push_back("edge gene at position " + std::to_string(i) + ": expected site " +
                    std::to_string(edge_ids[i]) + ", found " + std::to_string(gene.site_id));
    }
    check_edge_gene(g, gene, out);
  }
  for (std::size_t i = 0; i < dep.fog_genes.size(); ++i) {
    const auto& gene = dep.fog_genes[i];
    if (i < fog_ids.size() && gene.site_id != fog_ids[i]) {
      out.push_back("fog gene at position " + std::to_string(i) + ": expected site " +
                    std::to_string(fog_ids[i]) + ", found " + std::to_string(gene.site_id));
    }
    check_fog_gene(g, gene, out);
  }
  return out;
}

Deployment repair_deployment(const Deployment& dep, const GeneBounds& bounds) {
  Deployment fixed = dep;
  for (auto& gene : fixed.edge_genes) {
    if (gene.sc >= 1) gene.sc = std::clamp(gene.sc, bounds.edge_sc_min, bounds.edge_sc_max);
    // Bounds may clamp sc back to 0; the candidate is then dormant.
    if (gene.sc >= 1) {
      gene.ac = std::clamp(gene.ac, 1, bounds.ac_max);
      gene.x = 1;
    } else {
      gene.sc = 0;
      gene.ac = 1;
      gene.x = 0;
    }
  }
  for (auto& gene : fixed.fog_genes) {
    if (gene.sc >= 1) gene.sc = std::clamp(gene.sc, bounds.fog_sc_min, bounds.fog_sc_max);
    if (gene.sc >= 1) {
      gene.y = 1;
    } else {
      gene.sc = 0;
      gene.y = 0;
    }
  }
  return fixed;
}

}  // namespace craft
