#ifndef PDVSIM_NETMODEL_HPP
#define PDVSIM_NETMODEL_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdvsim/engine.hpp"

namespace pdvsim {

// Codepoints carried in the IPv4 ToS byte or the IPv6 Traffic Class byte;
// the values are identical in both families.
enum class Dscp : std::uint8_t {
    BE = 0,
    AF11 = 10,
    AF12 = 12,
    AF13 = 14,
    AF41 = 34,
    AF42 = 36,
    AF43 = 38,
    EF = 46,
};

// BE, AF11, AF12, AF13, AF41, AF42, AF43, EF
inline constexpr std::array<Dscp, 8> kAllDscp = {
    Dscp::BE,   Dscp::AF11, Dscp::AF12, Dscp::AF13,
    Dscp::AF41, Dscp::AF42, Dscp::AF43, Dscp::EF,
};

const std::string& dscp_name(Dscp d);
std::optional<Dscp> dscp_from_name(const std::string& name);

enum class NodeKind : std::uint8_t { Workstation, Switch, EdgeRouter, CoreRouter };

const std::string& node_kind_name(NodeKind k);
std::optional<NodeKind> node_kind_from_name(const std::string& name);

inline bool is_router(NodeKind k) {
    return k == NodeKind::EdgeRouter || k == NodeKind::CoreRouter;
}

// Dotted-quad IPv4 address as a 32-bit host identity. Dual-stack nodes keep
// the same identity; the IPv6 global address is rendered from it.
std::optional<std::uint32_t> parse_ipv4(const std::string& dotted);
std::string format_ipv4(std::uint32_t addr);
std::string ipv6_from_identity(std::uint32_t addr); // 2001:db8::a.b.c.d style

struct NodeSpec {
    std::string id;
    NodeKind kind = NodeKind::Workstation;
    std::uint32_t address = 0;
};

struct LinkSpec {
    std::string node_a;
    std::string node_b;
    double rate_bps = 0.0;
    double prop_delay_s = 0.0;
    int l2_overhead_bytes = 0;
    double cost = 1.0;
};

struct Topology {
    std::vector<NodeSpec> nodes;
    std::vector<LinkSpec> links;

    int node_index(const std::string& id) const;             // -1 if absent
    const NodeSpec* find_node(const std::string& id) const;  // nullptr if absent
    // adjacency[i] -> list of (neighbor index, link index), neighbor-sorted
    std::vector<std::vector<std::pair<int, int>>> adjacency() const;
    int link_between(int a, int b) const; // -1 if not adjacent
    bool connected() const;
};

enum class Transport : std::uint8_t { Udp, RtpOverUdp };

struct LabelEntry {
    std::uint32_t label = 0; // 20-bit
    std::uint8_t exp = 0;    // 3-bit, carries the PHB on E-LSPs
    bool bottom = false;
    std::uint8_t ttl = 255;
};

struct HopStamp {
    std::int16_t node;
    simtime_ns time;
};

struct Packet {
    std::uint32_t flow = 0; // index into the run's flow table
    Dscp dscp = Dscp::BE;
    std::uint8_t ip_version = 4;
    Transport transport = Transport::Udp;
    std::int16_t src_node = -1;
    std::int16_t dst_node = -1;
    std::uint32_t src_addr = 0;
    std::uint32_t seq = 0;      // per-flow packet counter
    std::uint32_t app_seq = 0;  // application unit (video frame / voice sample)
    std::uint8_t seg_index = 0;
    std::uint8_t seg_count = 1;
    std::uint32_t payload_bytes = 0;
    simtime_ns created_at = 0;
    std::uint8_t label_depth = 0;
    std::array<LabelEntry, 4> label_stack{}; // [0] is top of stack
    std::shared_ptr<std::vector<HopStamp>> trace; // populated only when tracing

    bool labeled() const { return label_depth > 0; }
    void push_label(LabelEntry e);
    LabelEntry pop_label();
    void stamp(std::int16_t node, simtime_ns t) {
        if (trace) trace->push_back({node, t});
    }
};

// L3+ header bytes: 20 (IPv4) or 40 (IPv6), +8 UDP, +12 RTP, +4 per label.
int header_overhead(int ip_version, int label_depth, Transport transport);

inline double serialization_delay(double frame_bytes, double rate_bps) {
    return frame_bytes * 8.0 / rate_bps;
}

// Greedy split of an application message into <= max_segment chunks.
std::vector<int> segment(int app_message_bytes, int max_segment);

// Bytes on the wire for one frame of this packet over a link.
int wire_bytes(const Packet& p, int l2_overhead_bytes);

// One direction of a link: FIFO serialization, then propagation. A frame
// may not begin transmission before the previous frame on this direction
// has left the interface.
class LinkTx {
  public:
    LinkTx(double rate_bps, double prop_delay_s)
        : rate_bps_(rate_bps), prop_ns_(ns_from_seconds(prop_delay_s)) {}

    // Schedules the arrival callback and returns the arrival time.
    simtime_ns transmit(Simulator& sim, int frame_bytes, simtime_ns depart_time,
                        std::function<void()> on_arrival);

    simtime_ns busy_until() const { return busy_until_; }
    double rate_bps() const { return rate_bps_; }

  private:
    double rate_bps_;
    simtime_ns prop_ns_;
    simtime_ns busy_until_ = 0;
};

} // namespace pdvsim

#endif
