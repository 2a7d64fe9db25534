#ifndef PDVSIM_ROUTING_HPP
#define PDVSIM_ROUTING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pdvsim/engine.hpp"
#include "pdvsim/netmodel.hpp"

namespace pdvsim {

class DisconnectedError : public SimError {
  public:
    explicit DisconnectedError(const std::string& what) : SimError(what) {}
};

// Equal-cost tie-break: which candidate first hop wins, compared by node id.
// HighestNextHopId is the default; on the reference topology it sends all
// LER1->LER2 traffic through the LSR4 path and leaves the other two idle.
enum class TieBreak : std::uint8_t { HighestNextHopId, LowestNextHopId };

// Static single-path forwarding: next_hop[src][dst] is a node index, -1 on
// the diagonal. Computed once at t=0, no ECMP, no convergence dynamics.
struct ForwardingTables {
    std::vector<std::vector<std::int16_t>> next_hop;

    int next(int src, int dst) const { return next_hop[src][dst]; }
};

// Dijkstra per source over the link costs. Throws DisconnectedError if any
// destination is unreachable. The result is independent of the order nodes
// and links appear in the topology.
ForwardingTables compute_spf(const Topology& topo,
                             TieBreak tie_break = TieBreak::HighestNextHopId);

} // namespace pdvsim

#endif
