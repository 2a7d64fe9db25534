#include "pdvsim/routing.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

namespace pdvsim {

ForwardingTables compute_spf(const Topology& topo, TieBreak tie_break) {
    const int n = static_cast<int>(topo.nodes.size());
    auto adj = topo.adjacency();

    // Rank node ids in tie-break preference order; lower rank wins a tie.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (tie_break == TieBreak::HighestNextHopId) return topo.nodes[a].id > topo.nodes[b].id;
        return topo.nodes[a].id < topo.nodes[b].id;
    });
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[order[i]] = i;

    ForwardingTables tables;
    tables.next_hop.assign(n, std::vector<std::int16_t>(n, -1));

    const double inf = std::numeric_limits<double>::infinity();
    for (int src = 0; src < n; ++src) {
        // Dijkstra over the lexicographic key (distance, first-hop rank):
        // the preferred first hop settles first, so ties resolve to it at
        // every downstream node.
        std::vector<double> dist(n, inf);
        std::vector<int> hop_rank(n, n);
        std::vector<int> first_hop(n, -1);
        std::vector<bool> settled(n, false);
        dist[src] = 0.0;
        hop_rank[src] = -1;

        using Item = std::tuple<double, int, int, int>; // dist, rank, node, first_hop
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        pq.push({0.0, -1, src, -1});

        while (!pq.empty()) {
            auto [d, r, u, fh] = pq.top();
            pq.pop();
            if (settled[u]) continue;
            settled[u] = true;
            first_hop[u] = fh;
            for (auto [v, l] : adj[u]) {
                if (settled[v]) continue;
                double nd = d + topo.links[l].cost;
                int cand_hop = u == src ? v : fh;
                int cand_rank = rank[cand_hop];
                if (nd < dist[v] || (nd == dist[v] && cand_rank < hop_rank[v])) {
                    dist[v] = nd;
                    hop_rank[v] = cand_rank;
                    pq.push({nd, cand_rank, v, cand_hop});
                }
            }
        }

        for (int dst = 0; dst < n; ++dst) {
            if (dst == src) continue;
            if (!settled[dst] || first_hop[dst] < 0)
                throw DisconnectedError("no route from " + topo.nodes[src].id + " to " +
                                        topo.nodes[dst].id);
            tables.next_hop[src][dst] = static_cast<std::int16_t>(first_hop[dst]);
        }
    }
    return tables;
}

} // namespace pdvsim
