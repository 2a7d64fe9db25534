#include "pdvsim/scenario.hpp"

#include <map>

namespace pdvsim {

namespace {

constexpr double kCoreRate = 4e6;    // ppp point-to-point core
constexpr double kSwitchRate = 100e6; // switch <-> router
constexpr double kHostRate = 10e6;    // workstation <-> switch
constexpr double kCoreProp = 100e-6;
constexpr double kAccessProp = 10e-6;
constexpr int kPppL2 = 7;  // HDLC-like framing
constexpr int kEthL2 = 18; // Ethernet framing

std::uint32_t addr(const std::string& dotted) { return *parse_ipv4(dotted); }

Topology reference_topology() {
    Topology t;
    auto node = [&](const std::string& id, NodeKind kind, const std::string& ip) {
        t.nodes.push_back({id, kind, addr(ip)});
    };
    // source side
    node("Voice_Src", NodeKind::Workstation, "192.0.17.1");
    for (int i = 1; i <= 6; ++i)
        node("VC_Src" + std::to_string(i), NodeKind::Workstation,
             "192.0.17." + std::to_string(i + 1));
    node("switch_1", NodeKind::Switch, "192.0.16.1");
    // destination side
    node("Voice_Dst", NodeKind::Workstation, "192.0.18.1");
    for (int i = 1; i <= 6; ++i)
        node("VC_Dst" + std::to_string(i), NodeKind::Workstation,
             "192.0.18." + std::to_string(i + 1));
    node("switch_2", NodeKind::Switch, "192.0.16.2");
    // core: two LERs, nine LSRs on three disjoint three-LSR paths
    node("LER1", NodeKind::EdgeRouter, "192.0.0.1");
    node("LER2", NodeKind::EdgeRouter, "192.0.0.2");
    for (int i = 1; i <= 9; ++i)
        node("LSR" + std::to_string(i), NodeKind::CoreRouter, "192.0.0." + std::to_string(10 + i));

    auto access = [&](const std::string& a, const std::string& b, double rate) {
        t.links.push_back({a, b, rate, kAccessProp, kEthL2, 1.0});
    };
    auto core = [&](const std::string& a, const std::string& b) {
        t.links.push_back({a, b, kCoreRate, kCoreProp, kPppL2, 1.0});
    };
    access("Voice_Src", "switch_1", kHostRate);
    for (int i = 1; i <= 6; ++i) access("VC_Src" + std::to_string(i), "switch_1", kHostRate);
    access("switch_1", "LER1", kSwitchRate);
    access("Voice_Dst", "switch_2", kHostRate);
    for (int i = 1; i <= 6; ++i) access("VC_Dst" + std::to_string(i), "switch_2", kHostRate);
    access("switch_2", "LER2", kSwitchRate);
    // three edge-disjoint core paths; equal costs, so the SPF tie-break
    // sends all IP traffic through the LSR4 path
    core("LER1", "LSR2"); core("LSR2", "LSR5"); core("LSR5", "LSR8"); core("LSR8", "LER2");
    core("LER1", "LSR4"); core("LSR4", "LSR6"); core("LSR6", "LSR9"); core("LSR9", "LER2");
    core("LER1", "LSR1"); core("LSR1", "LSR3"); core("LSR3", "LSR7"); core("LSR7", "LER2");
    return t;
}

std::vector<AclRule> reference_acl() {
    // host-exact wildcards: each rule matches one workstation
    std::vector<AclRule> acl;
    auto rule = [&](const std::string& name, const std::string& ip, Dscp d) {
        acl.push_back({name, addr(ip), addr("0.0.0.0"), d});
    };
    rule("EF", "192.0.17.1", Dscp::EF);
    rule("AF11", "192.0.17.2", Dscp::AF11);
    rule("AF12", "192.0.17.3", Dscp::AF12);
    rule("AF13", "192.0.17.4", Dscp::AF13);
    rule("AF41", "192.0.17.5", Dscp::AF41);
    rule("AF42", "192.0.17.6", Dscp::AF42);
    rule("AF43", "192.0.17.7", Dscp::AF43);
    return acl;
}

TrafficPolicyConfig reference_policy(bool mpls_domain) {
    TrafficPolicyConfig p;
    p.name = "Traffic_Policy";
    WredProfile wred{9, 100, 200, 10};
    auto cls = [&](Dscp d, double bw, bool priority) {
        p.classes.push_back({d, bw, 500, priority, wred});
    };
    cls(Dscp::EF, 5, true);
    cls(Dscp::AF11, 20, false);
    cls(Dscp::AF12, 10, false);
    cls(Dscp::AF13, 5, false);
    cls(Dscp::AF41, 40, false);
    cls(Dscp::AF42, 15, false);
    cls(Dscp::AF43, 5, false);
    if (mpls_domain) {
        // E-LSPs carry the PHB in EXP, so every node of the MPLS domain
        // schedules by class
        p.attachments.push_back({"LER1", "*"});
        p.attachments.push_back({"LER2", "*"});
        for (int i = 1; i <= 9; ++i) p.attachments.push_back({"LSR" + std::to_string(i), "*"});
    } else {
        // QoS attributes live on the outbound interfaces of the edge router
        p.attachments.push_back({"LER1", "*"});
    }
    return p;
}

TeConfig reference_te() {
    TeConfig te;
    auto trunk = [&](const std::string& name, double rate, Dscp d) {
        te.trunks.push_back({name, rate, rate, rate, rate, d});
    };
    trunk("Trunk_for_Video_Traffic_AF11", 2e6, Dscp::AF11);
    trunk("Trunk_for_Video_Traffic_AF12", 2e6, Dscp::AF12);
    trunk("Trunk_for_Video_Traffic_AF13", 2e6, Dscp::AF13);
    trunk("Trunk_for_Video_Traffic_AF41", 3e6, Dscp::AF41);
    trunk("Trunk_for_Video_Traffic_AF42", 3e6, Dscp::AF42);
    trunk("Trunk_for_Video_Traffic_AF43", 3e6, Dscp::AF43);
    trunk("Trunk_For_Voice_Traffic", 1e6, Dscp::EF);

    te.lsps.push_back({"LSP1_0", {"LER1", "LSR2", "LSR5", "LSR8", "LER2"}, true});
    te.lsps.push_back({"LSP1_1", {"LER1", "LSR4", "LSR6", "LSR9", "LER2"}, true});
    te.lsps.push_back({"LSP1_2", {"LER1", "LSR1", "LSR3", "LSR7", "LER2"}, true});
    te.lsps.push_back({"LSP2_0", {"LER2", "LSR8", "LSR5", "LSR2", "LER1"}, true});
    te.lsps.push_back({"LSP2_1", {"LER2", "LSR9", "LSR6", "LSR4", "LER1"}, true});
    te.lsps.push_back({"LSP2_2", {"LER2", "LSR7", "LSR3", "LSR1", "LER1"}, true});

    // traffic mapping rows, keyed by the DSCP column
    auto bind = [&](const std::string& node, const std::string& fec, Dscp d,
                    const std::string& trunk_name, const std::string& lsp) {
        te.bindings.push_back({node, "*", fec, d, trunk_name, lsp});
    };
    bind("LER1", "FEC_For_AF11", Dscp::AF11, "Trunk_for_Video_Traffic_AF11", "LSP1_0");
    bind("LER1", "FEC_For_AF43", Dscp::AF12, "Trunk_for_Video_Traffic_AF43", "LSP1_0");
    bind("LER1", "FEC_For_AF13", Dscp::AF13, "Trunk_for_Video_Traffic_AF13", "LSP1_1");
    bind("LER1", "FEC_For_AF42", Dscp::AF41, "Trunk_for_Video_Traffic_AF42", "LSP1_1");
    bind("LER1", "FEC_For_AF12", Dscp::AF42, "Trunk_for_Video_Traffic_AF12", "LSP1_2");
    bind("LER1", "FEC_For_AF41", Dscp::AF43, "Trunk_for_Video_Traffic_AF41", "LSP1_2");
    bind("LER1", "FEC_For_Voice_EF", Dscp::EF, "Trunk_For_Voice_Traffic", "LSP1_2");
    // return direction, same class split over the reverse LSPs
    bind("LER2", "FEC_For_AF11_Return", Dscp::AF11, "Trunk_for_Video_Traffic_AF11", "LSP2_0");
    bind("LER2", "FEC_For_AF43_Return", Dscp::AF12, "Trunk_for_Video_Traffic_AF43", "LSP2_0");
    bind("LER2", "FEC_For_AF13_Return", Dscp::AF13, "Trunk_for_Video_Traffic_AF13", "LSP2_1");
    bind("LER2", "FEC_For_AF42_Return", Dscp::AF41, "Trunk_for_Video_Traffic_AF42", "LSP2_1");
    bind("LER2", "FEC_For_AF12_Return", Dscp::AF42, "Trunk_for_Video_Traffic_AF12", "LSP2_2");
    bind("LER2", "FEC_For_AF41_Return", Dscp::AF43, "Trunk_for_Video_Traffic_AF41", "LSP2_2");
    bind("LER2", "FEC_For_Voice_EF_Return", Dscp::EF, "Trunk_For_Voice_Traffic", "LSP2_2");
    return te;
}

AppConfig reference_apps() {
    AppConfig apps;
    apps.profile = {"Video_Voice_Profile", 100.0, true, true};

    struct Row {
        Dscp dscp;
        int workstation;
        int frame_bytes;
    };
    const Row rows[] = {
        {Dscp::AF11, 1, 4000}, {Dscp::AF12, 2, 3000}, {Dscp::AF13, 3, 2000},
        {Dscp::AF41, 4, 3500}, {Dscp::AF42, 5, 2500}, {Dscp::AF43, 6, 1500},
    };
    const std::pair<double, double> calls[] = {{10, 20}, {15, 320}, {30, 620}};
    for (const Row& r : rows) {
        for (auto [fps, offset] : calls) {
            VideoAppSpec v;
            v.name = "Video_Conference_" + dscp_name(r.dscp) + "_" +
                     std::to_string(static_cast<int>(fps)) + "Frame";
            v.dscp = r.dscp;
            v.src = "VC_Src" + std::to_string(r.workstation);
            v.dst = "VC_Dst" + std::to_string(r.workstation);
            v.frame_bytes = r.frame_bytes;
            v.frame_rate = fps;
            v.start_offset_s = offset;
            apps.video.push_back(std::move(v));
        }
    }
    for (int call = 0; call < 3; ++call) {
        VoiceAppSpec v;
        v.name = "Voice_PCM_Quality_EF_" + std::to_string(call + 1);
        v.src = "Voice_Src";
        v.dst = "Voice_Dst";
        v.start_offset_s = 20.0 + 300.0 * call;
        apps.voice.push_back(std::move(v));
    }
    return apps;
}

ScenarioSpec make_scenario(const std::string& name, int ip_version, QosMode mode) {
    ScenarioSpec s;
    s.name = name;
    s.ip_version = ip_version;
    s.qos_mode = mode;
    s.topology = reference_topology();
    s.apps = reference_apps();
    if (mode != QosMode::BestEffort) {
        s.acl = reference_acl();
        s.policy = reference_policy(mode == QosMode::DiffServMpls);
    }
    if (mode == QosMode::DiffServMpls) s.te = reference_te();
    return s;
}

const std::map<std::string, std::pair<int, QosMode>>& builtin_table() {
    static const std::map<std::string, std::pair<int, QosMode>> table = {
        {"scenario1", {4, QosMode::BestEffort}},   {"scenario2", {6, QosMode::BestEffort}},
        {"scenario3", {4, QosMode::DiffServ}},     {"scenario4", {6, QosMode::DiffServ}},
        {"scenario5", {4, QosMode::DiffServMpls}}, {"scenario6", {6, QosMode::DiffServMpls}},
    };
    return table;
}

} // namespace

std::vector<std::string> builtin_scenario_names() {
    std::vector<std::string> names;
    for (const auto& [name, cfg] : builtin_table()) names.push_back(name);
    return names;
}

bool is_builtin_scenario(const std::string& name) { return builtin_table().count(name) > 0; }

ScenarioSpec builtin_scenario(const std::string& name) {
    auto it = builtin_table().find(name);
    if (it == builtin_table().end())
        throw ValidationError("unknown built-in scenario '" + name + "'");
    ScenarioSpec s = make_scenario(name, it->second.first, it->second.second);
    validate_scenario(s);
    return s;
}

std::string builtin_scenario_summary(const std::string& name) {
    auto it = builtin_table().find(name);
    if (it == builtin_table().end())
        throw ValidationError("unknown built-in scenario '" + name + "'");
    static const std::map<QosMode, std::string> what = {
        {QosMode::BestEffort, "baseline best-effort"},
        {QosMode::DiffServ, "DiffServ (CBWFQ + WRED at the edge)"},
        {QosMode::DiffServMpls, "DiffServ with MPLS TE (static E-LSPs)"},
    };
    return what.at(it->second.second) + ", IPv" + std::to_string(it->second.first);
}

} // namespace pdvsim
