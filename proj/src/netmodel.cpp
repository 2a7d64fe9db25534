#include "pdvsim/netmodel.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>

namespace pdvsim {

const std::string& dscp_name(Dscp d) {
    static const std::map<Dscp, std::string> names = {
        {Dscp::BE, "BE"},     {Dscp::AF11, "AF11"}, {Dscp::AF12, "AF12"},
        {Dscp::AF13, "AF13"}, {Dscp::AF41, "AF41"}, {Dscp::AF42, "AF42"},
        {Dscp::AF43, "AF43"}, {Dscp::EF, "EF"},
    };
    return names.at(d);
}

std::optional<Dscp> dscp_from_name(const std::string& name) {
    for (Dscp d : kAllDscp)
        if (dscp_name(d) == name) return d;
    return std::nullopt;
}

const std::string& node_kind_name(NodeKind k) {
    static const std::map<NodeKind, std::string> names = {
        {NodeKind::Workstation, "workstation"},
        {NodeKind::Switch, "switch"},
        {NodeKind::EdgeRouter, "edge-router"},
        {NodeKind::CoreRouter, "core-router"},
    };
    return names.at(k);
}

std::optional<NodeKind> node_kind_from_name(const std::string& name) {
    for (NodeKind k : {NodeKind::Workstation, NodeKind::Switch, NodeKind::EdgeRouter,
                       NodeKind::CoreRouter})
        if (node_kind_name(k) == name) return k;
    return std::nullopt;
}

std::optional<std::uint32_t> parse_ipv4(const std::string& dotted) {
    unsigned a, b, c, d;
    char tail;
    if (std::sscanf(dotted.c_str(), "%u.%u.%u.%u%c", &a, &b, &c, &d, &tail) != 4)
        return std::nullopt;
    if (a > 255 || b > 255 || c > 255 || d > 255) return std::nullopt;
    return (a << 24) | (b << 16) | (c << 8) | d;
}

std::string format_ipv4(std::uint32_t addr) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%u.%u.%u.%u", (addr >> 24) & 0xff, (addr >> 16) & 0xff,
                  (addr >> 8) & 0xff, addr & 0xff);
    return buf;
}

std::string ipv6_from_identity(std::uint32_t addr) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "2001:db8::%x:%x", (addr >> 16) & 0xffff, addr & 0xffff);
    return buf;
}

int Topology::node_index(const std::string& id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id) return static_cast<int>(i);
    return -1;
}

const NodeSpec* Topology::find_node(const std::string& id) const {
    int i = node_index(id);
    return i < 0 ? nullptr : &nodes[i];
}

std::vector<std::vector<std::pair<int, int>>> Topology::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(nodes.size());
    for (std::size_t l = 0; l < links.size(); ++l) {
        int a = node_index(links[l].node_a);
        int b = node_index(links[l].node_b);
        if (a < 0 || b < 0) continue;
        adj[a].push_back({b, static_cast<int>(l)});
        adj[b].push_back({a, static_cast<int>(l)});
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());
    return adj;
}

int Topology::link_between(int a, int b) const {
    for (std::size_t l = 0; l < links.size(); ++l) {
        int la = node_index(links[l].node_a);
        int lb = node_index(links[l].node_b);
        if ((la == a && lb == b) || (la == b && lb == a)) return static_cast<int>(l);
    }
    return -1;
}

bool Topology::connected() const {
    if (nodes.empty()) return true;
    auto adj = adjacency();
    std::vector<bool> seen(nodes.size(), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto [v, l] : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                q.push(v);
            }
    }
    return count == nodes.size();
}

void Packet::push_label(LabelEntry e) {
    if (label_depth >= label_stack.size()) throw SimError("label stack overflow");
    for (int i = label_depth; i > 0; --i) label_stack[i] = label_stack[i - 1];
    e.bottom = label_depth == 0;
    label_stack[0] = e;
    ++label_depth;
}

LabelEntry Packet::pop_label() {
    if (label_depth == 0) throw SimError("pop on empty label stack");
    LabelEntry top = label_stack[0];
    for (int i = 1; i < label_depth; ++i) label_stack[i - 1] = label_stack[i];
    --label_depth;
    return top;
}

int header_overhead(int ip_version, int label_depth, Transport transport) {
    int bytes = ip_version == 6 ? 40 : 20;
    bytes += 8; // UDP
    if (transport == Transport::RtpOverUdp) bytes += 12;
    bytes += 4 * label_depth; // 32-bit shim per label
    return bytes;
}

std::vector<int> segment(int app_message_bytes, int max_segment) {
    std::vector<int> sizes;
    int remaining = app_message_bytes;
    while (remaining > max_segment) {
        sizes.push_back(max_segment);
        remaining -= max_segment;
    }
    sizes.push_back(remaining);
    return sizes;
}

int wire_bytes(const Packet& p, int l2_overhead_bytes) {
    return static_cast<int>(p.payload_bytes) +
           header_overhead(p.ip_version, p.label_depth, p.transport) + l2_overhead_bytes;
}

simtime_ns LinkTx::transmit(Simulator& sim, int frame_bytes, simtime_ns depart_time,
                            std::function<void()> on_arrival) {
    simtime_ns start = std::max(depart_time, busy_until_);
    simtime_ns ser = ns_from_seconds(serialization_delay(frame_bytes, rate_bps_));
    busy_until_ = start + ser;
    simtime_ns arrival = busy_until_ + prop_ns_;
    sim.schedule(arrival, std::move(on_arrival));
    return arrival;
}

} // namespace pdvsim
