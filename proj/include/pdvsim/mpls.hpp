#ifndef PDVSIM_MPLS_HPP
#define PDVSIM_MPLS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdvsim/engine.hpp"
#include "pdvsim/netmodel.hpp"

namespace pdvsim {

class PathInvalidError : public SimError {
  public:
    explicit PathInvalidError(const std::string& what) : SimError(what) {}
};

// Bijection between the 8 used PHBs and EXP values 0..7, applied
// identically at every LSR. The default keeps all three AF drop
// precedences distinct, which a precedence-bit mapping would collapse.
struct ExpPhbMap {
    std::array<Dscp, 8> phb_of_exp = {Dscp::BE,   Dscp::AF11, Dscp::AF12, Dscp::AF13,
                                      Dscp::AF41, Dscp::AF42, Dscp::AF43, Dscp::EF};

    std::uint8_t exp_of(Dscp d) const {
        for (std::uint8_t e = 0; e < 8; ++e)
            if (phb_of_exp[e] == d) return e;
        throw SimError("exp map: no EXP value for " + dscp_name(d));
    }
    Dscp phb_of(std::uint8_t exp) const { return phb_of_exp.at(exp); }
    bool bijective() const {
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = i + 1; j < 8; ++j)
                if (phb_of_exp[i] == phb_of_exp[j]) return false;
        return true;
    }
};

// Groups packets that get identical forwarding; matched by DSCP, optionally
// narrowed to an ingress interface.
struct FecRule {
    std::string name;
    Dscp match_dscp = Dscp::BE;
    std::optional<std::string> match_in_interface;
};

// Out-of-profile action is always "transmit unchanged"; the meter only
// counts.
struct TrunkProfile {
    std::string name;
    double max_bit_rate = 0.0;  // bits/s, peak bucket rate
    double peak_burst = 0.0;    // bits, peak bucket depth
    double avg_bit_rate = 0.0;  // bits/s, committed bucket rate
    double max_burst = 0.0;     // bits, committed bucket depth
    Dscp traffic_class = Dscp::BE;
};

// Static E-LSP: ordered node path between two LERs. Bidirectional LSPs get
// label table entries for both directions.
struct LspSpec {
    std::string name;
    std::vector<std::string> hops;
    bool bidirectional = true;
};

// One row of the traffic-mapping table of an LER: FEC -> trunk -> LSP,
// matched by DSCP on packets entering from the given interface ("*" = any
// access interface).
struct TeBinding {
    std::string node; // the LER this row is configured on
    std::string in_interface = "*";
    std::string fec_name;
    Dscp dscp = Dscp::BE;
    std::string trunk;
    std::string lsp;
};

struct LabelPush {
    std::uint32_t label = 0;
    std::int16_t next_hop = -1;
};

struct LabelAction {
    bool pop = false;           // pop at the tail LER, swap elsewhere
    std::uint32_t out_label = 0;
    std::int16_t next_hop = -1; // forwarding continues by IP after a pop
    std::string lsp;
};

struct LabelTables {
    // per node index: incoming label -> action
    std::vector<std::map<std::uint32_t, LabelAction>> by_node;
    // per node index: lsp name -> head-end push entry
    std::vector<std::map<std::string, LabelPush>> push_by_node;
};

// Head-end gets a push entry, transit LSRs swap, the tail LER pops (no
// penultimate-hop popping, so EXP scheduling stays available on the last
// core link). Labels are unique per (node, incoming label). Throws
// PathInvalidError if consecutive hops are not linked.
LabelTables build_label_tables(const Topology& topo, std::span<const LspSpec> lsps);

enum class MeterResult : std::uint8_t { InProfile, OutOfProfile };

// Dual token bucket: committed bucket (avg_bit_rate, max_burst) and peak
// bucket (max_bit_rate, peak_burst). Out-of-profile packets are still
// transmitted, only counted.
class TokenBucketMeter {
  public:
    explicit TokenBucketMeter(const TrunkProfile& profile)
        : profile_(profile), committed_(profile.max_burst), peak_(profile.peak_burst) {}

    MeterResult meter(double bits, simtime_ns now);

    std::uint64_t in_profile_packets = 0;
    std::uint64_t out_of_profile_packets = 0;

  private:
    TrunkProfile profile_;
    double committed_;
    double peak_;
    simtime_ns last_ = 0;
};

// The binding whose (node, DSCP, interface) matches, or nullptr: the packet
// then follows the IP route.
const TeBinding* find_binding(std::span<const TeBinding> bindings, const std::string& node,
                              Dscp dscp, const std::string& in_interface);

} // namespace pdvsim

#endif
