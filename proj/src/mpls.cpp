#include "pdvsim/mpls.hpp"

#include <algorithm>

namespace pdvsim {

namespace {

void provision_direction(const LspSpec& lsp, const std::vector<int>& hops,
                         const std::string& direction, std::uint32_t& next_label,
                         LabelTables& tables) {
    // labels 0..15 are reserved
    const std::string key = lsp.name + direction;
    std::uint32_t in_label = next_label++;
    tables.push_by_node[hops.front()][key] =
        LabelPush{in_label, static_cast<std::int16_t>(hops[1])};
    for (std::size_t i = 1; i + 1 < hops.size(); ++i) {
        std::uint32_t out_label = next_label++;
        tables.by_node[hops[i]][in_label] =
            LabelAction{false, out_label, static_cast<std::int16_t>(hops[i + 1]), lsp.name};
        in_label = out_label;
    }
    tables.by_node[hops.back()][in_label] = LabelAction{true, 0, -1, lsp.name};
}

} // namespace

LabelTables build_label_tables(const Topology& topo, std::span<const LspSpec> lsps) {
    LabelTables tables;
    tables.by_node.resize(topo.nodes.size());
    tables.push_by_node.resize(topo.nodes.size());

    std::uint32_t next_label = 16;
    for (const auto& lsp : lsps) {
        if (lsp.hops.size() < 2)
            throw PathInvalidError("LSP " + lsp.name + " needs at least two hops");
        std::vector<int> hops;
        hops.reserve(lsp.hops.size());
        for (const auto& id : lsp.hops) {
            int idx = topo.node_index(id);
            if (idx < 0) throw PathInvalidError("LSP " + lsp.name + ": unknown node " + id);
            hops.push_back(idx);
        }
        for (std::size_t i = 0; i + 1 < hops.size(); ++i)
            if (topo.link_between(hops[i], hops[i + 1]) < 0)
                throw PathInvalidError("LSP " + lsp.name + ": " + lsp.hops[i] + " and " +
                                       lsp.hops[i + 1] + " are not linked");

        provision_direction(lsp, hops, "", next_label, tables);
        if (lsp.bidirectional) {
            std::vector<int> back(hops.rbegin(), hops.rend());
            provision_direction(lsp, back, "/reverse", next_label, tables);
        }
    }
    return tables;
}

MeterResult TokenBucketMeter::meter(double bits, simtime_ns now) {
    double dt = seconds_from_ns(now - last_);
    last_ = now;
    committed_ = std::min(profile_.max_burst, committed_ + profile_.avg_bit_rate * dt);
    peak_ = std::min(profile_.peak_burst, peak_ + profile_.max_bit_rate * dt);

    if (bits <= committed_ && bits <= peak_) {
        committed_ -= bits;
        peak_ -= bits;
        ++in_profile_packets;
        return MeterResult::InProfile;
    }
    if (bits <= peak_) peak_ -= bits;
    ++out_of_profile_packets;
    return MeterResult::OutOfProfile;
}

const TeBinding* find_binding(std::span<const TeBinding> bindings, const std::string& node,
                              Dscp dscp, const std::string& in_interface) {
    for (const auto& b : bindings) {
        if (b.node != node || b.dscp != dscp) continue;
        if (b.in_interface == "*" || b.in_interface == in_interface) return &b;
    }
    return nullptr;
}

} // namespace pdvsim
