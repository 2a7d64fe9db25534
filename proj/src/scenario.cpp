#include "pdvsim/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pdvsim {

const std::string& qos_mode_name(QosMode m) {
    static const std::map<QosMode, std::string> names = {
        {QosMode::BestEffort, "best-effort"},
        {QosMode::DiffServ, "diffserv"},
        {QosMode::DiffServMpls, "diffserv-mpls"},
    };
    return names.at(m);
}

std::optional<QosMode> qos_mode_from_name(const std::string& name) {
    for (QosMode m : {QosMode::BestEffort, QosMode::DiffServ, QosMode::DiffServMpls})
        if (qos_mode_name(m) == name) return m;
    return std::nullopt;
}

namespace {

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

struct SourceLine {
    std::string origin;
    int number;
    std::string text;
};

[[noreturn]] void fail(const SourceLine& at, const std::string& msg) {
    throw ParseError(at.origin + ":" + std::to_string(at.number) + ": " + msg);
}

double to_double(const SourceLine& at, const std::string& tok) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) fail(at, "bad number '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        fail(at, "bad number '" + tok + "'");
    }
}

int to_int(const SourceLine& at, const std::string& tok) {
    double v = to_double(at, tok);
    if (v != static_cast<long long>(v)) fail(at, "expected integer, got '" + tok + "'");
    return static_cast<int>(v);
}

Dscp to_dscp(const SourceLine& at, const std::string& tok) {
    auto d = dscp_from_name(tok);
    if (!d) fail(at, "unknown DSCP '" + tok + "'");
    return *d;
}

void gather_lines(const std::string& path, std::vector<SourceLine>& out, int depth) {
    if (depth > 8) throw ParseError(path + ": include nesting too deep");
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open scenario file");
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string stripped = line.substr(0, line.find('#'));
        auto toks = tokenize(stripped);
        if (!toks.empty() && toks[0] == "include") {
            if (toks.size() != 2)
                throw ParseError(path + ":" + std::to_string(number) + ": include needs a path");
            auto dir = std::filesystem::path(path).parent_path();
            gather_lines((dir / toks[1]).string(), out, depth + 1);
            continue;
        }
        out.push_back({path, number, stripped});
    }
}

struct Parser {
    ScenarioSpec spec;
    std::map<Dscp, WredProfile> wred;
    bool te_seen = false;
    bool exp_seen = false;
    ExpPhbMap exp_map;
    std::vector<TrunkProfile> trunks;
    std::vector<LspSpec> lsps;
    std::vector<TeBinding> bindings;
    std::string section;

    void key_value(const SourceLine& at, const std::vector<std::string>& toks) {
        if (toks.size() != 3 || toks[1] != "=") fail(at, "expected 'key = value'");
        const std::string& key = toks[0];
        const std::string& value = toks[2];
        if (section == "scenario") {
            if (key == "name") spec.name = value;
            else if (key == "ip_version") spec.ip_version = to_int(at, value);
            else if (key == "qos_mode") {
                auto m = qos_mode_from_name(value);
                if (!m) fail(at, "unknown qos_mode '" + value + "'");
                spec.qos_mode = *m;
            } else if (key == "duration_s") spec.duration_s = to_double(at, value);
            else if (key == "seed") spec.seed = static_cast<std::uint64_t>(to_double(at, value));
            else if (key == "util_window_start_s") spec.util_window_start_s = to_double(at, value);
            else if (key == "fifo_queue_limit") spec.fifo_queue_limit = to_int(at, value);
            else if (key == "tie_break") {
                if (value == "highest-next-hop") spec.tie_break = TieBreak::HighestNextHopId;
                else if (value == "lowest-next-hop") spec.tie_break = TieBreak::LowestNextHopId;
                else fail(at, "unknown tie_break '" + value + "'");
            } else fail(at, "unknown scenario key '" + key + "'");
        } else if (section == "policy") {
            if (key == "name") spec.policy.name = value;
            else fail(at, "unknown policy key '" + key + "'");
        } else if (section == "apps") {
            if (key == "max_segment_bytes") spec.apps.max_segment_bytes = to_int(at, value);
            else if (key == "video_clock") {
                if (value == "constant") spec.apps.video_clock = FrameClock::Constant;
                else if (value == "exponential") spec.apps.video_clock = FrameClock::Exponential;
                else fail(at, "unknown video_clock '" + value + "'");
            } else fail(at, "unknown apps key '" + key + "'");
        } else {
            fail(at, "unexpected 'key = value' in section [" + section + "]");
        }
    }

    void row(const SourceLine& at, const std::vector<std::string>& toks) {
        const std::string& kw = toks[0];
        if (section == "topology") {
            if (kw != "node" || toks.size() != 4) fail(at, "expected: node <id> <kind> <ipv4>");
            NodeSpec n;
            n.id = toks[1];
            auto kind = node_kind_from_name(toks[2]);
            if (!kind) fail(at, "unknown node kind '" + toks[2] + "'");
            n.kind = *kind;
            auto addr = parse_ipv4(toks[3]);
            if (!addr) fail(at, "bad IPv4 address '" + toks[3] + "'");
            n.address = *addr;
            spec.topology.nodes.push_back(std::move(n));
        } else if (section == "links") {
            if (kw != "link" || toks.size() < 6 || toks.size() > 7)
                fail(at, "expected: link <a> <b> <rate_bps> <prop_delay_s> <l2_bytes> [cost]");
            LinkSpec l;
            l.node_a = toks[1];
            l.node_b = toks[2];
            l.rate_bps = to_double(at, toks[3]);
            l.prop_delay_s = to_double(at, toks[4]);
            l.l2_overhead_bytes = to_int(at, toks[5]);
            if (toks.size() == 7) l.cost = to_double(at, toks[6]);
            spec.topology.links.push_back(std::move(l));
        } else if (section == "acl") {
            if (kw != "rule" || toks.size() != 6 || toks[2] != "permit")
                fail(at, "expected: rule <name> permit <ip> <wildcard> <dscp>");
            AclRule r;
            r.name = toks[1];
            auto ip = parse_ipv4(toks[3]);
            auto mask = parse_ipv4(toks[4]);
            if (!ip || !mask) fail(at, "bad address or wildcard");
            r.src_ip = *ip;
            r.wildcard = *mask;
            r.set_dscp = to_dscp(at, toks[5]);
            spec.acl.push_back(std::move(r));
        } else if (section == "cbwfq") {
            if (kw != "class" || toks.size() != 5)
                fail(at, "expected: class <dscp> <bandwidth_percent> <queue_limit> <priority>");
            CbwfqClassConfig c;
            c.dscp = to_dscp(at, toks[1]);
            c.bandwidth_percent = to_double(at, toks[2]);
            c.queue_limit = to_int(at, toks[3]);
            c.priority = to_int(at, toks[4]) != 0;
            spec.policy.classes.push_back(std::move(c));
        } else if (section == "wred") {
            if (kw != "profile" || toks.size() != 6)
                fail(at, "expected: profile <dscp> <exp_weight_const> <min_th> <max_th> <denom>");
            WredProfile w;
            Dscp d = to_dscp(at, toks[1]);
            w.exp_weight_const = to_int(at, toks[2]);
            w.min_th = to_int(at, toks[3]);
            w.max_th = to_int(at, toks[4]);
            w.mark_prob_denom = to_int(at, toks[5]);
            wred[d] = w;
        } else if (section == "policy") {
            if (kw != "attach" || toks.size() != 3)
                fail(at, "expected: attach <node> <neighbor|*>");
            spec.policy.attachments.push_back({toks[1], toks[2]});
        } else if (section == "trunks") {
            if (kw != "trunk" || toks.size() != 8 || toks[6] != "transmit")
                fail(at, "expected: trunk <name> <max_rate> <peak_burst> <avg_rate> "
                         "<max_burst> transmit <class>");
            TrunkProfile t;
            t.name = toks[1];
            t.max_bit_rate = to_double(at, toks[2]);
            t.peak_burst = to_double(at, toks[3]);
            t.avg_bit_rate = to_double(at, toks[4]);
            t.max_burst = to_double(at, toks[5]);
            t.traffic_class = to_dscp(at, toks[7]);
            trunks.push_back(std::move(t));
            te_seen = true;
        } else if (section == "lsps") {
            if (kw != "lsp" || toks.size() < 5)
                fail(at, "expected: lsp <name> <bidirectional> <hop> <hop> ...");
            LspSpec l;
            l.name = toks[1];
            l.bidirectional = to_int(at, toks[2]) != 0;
            l.hops.assign(toks.begin() + 3, toks.end());
            lsps.push_back(std::move(l));
            te_seen = true;
        } else if (section == "bindings") {
            if (kw == "exp") {
                if (toks.size() != 3) fail(at, "expected: exp <phb> <value>");
                int v = to_int(at, toks[2]);
                if (v < 0 || v > 7) fail(at, "EXP value out of range");
                exp_map.phb_of_exp[v] = to_dscp(at, toks[1]);
                exp_seen = true;
                te_seen = true;
            } else if (kw == "bind") {
                if (toks.size() != 7)
                    fail(at, "expected: bind <node> <in_iface|*> <fec> <dscp> <trunk> <lsp>");
                TeBinding b;
                b.node = toks[1];
                b.in_interface = toks[2];
                b.fec_name = toks[3];
                b.dscp = to_dscp(at, toks[4]);
                b.trunk = toks[5];
                b.lsp = toks[6];
                bindings.push_back(std::move(b));
                te_seen = true;
            } else {
                fail(at, "expected 'exp' or 'bind' row");
            }
        } else if (section == "apps") {
            if (kw == "video") {
                if (toks.size() != 8)
                    fail(at, "expected: video <name> <dscp> <src> <dst> <frame_bytes> <fps> "
                             "<offset_s>");
                VideoAppSpec v;
                v.name = toks[1];
                v.dscp = to_dscp(at, toks[2]);
                v.src = toks[3];
                v.dst = toks[4];
                v.frame_bytes = to_int(at, toks[5]);
                v.frame_rate = to_double(at, toks[6]);
                v.start_offset_s = to_double(at, toks[7]);
                spec.apps.video.push_back(std::move(v));
            } else if (kw == "voice") {
                if (toks.size() != 12)
                    fail(at, "expected: voice <name> <src> <dst> <codec_bps> <interval_s> "
                             "<offset_s> <silence_in> <silence_out> <talkspurt> <comp> <decomp>");
                VoiceAppSpec v;
                v.name = toks[1];
                v.src = toks[2];
                v.dst = toks[3];
                v.codec_rate_bps = to_double(at, toks[4]);
                v.sample_interval_s = to_double(at, toks[5]);
                v.start_offset_s = to_double(at, toks[6]);
                v.silence_mean_in_s = to_double(at, toks[7]);
                v.silence_mean_out_s = to_double(at, toks[8]);
                v.talkspurt_mean_s = to_double(at, toks[9]);
                v.compression_delay_s = to_double(at, toks[10]);
                v.decompression_delay_s = to_double(at, toks[11]);
                spec.apps.voice.push_back(std::move(v));
            } else {
                fail(at, "expected 'video' or 'voice' row");
            }
        } else if (section == "profiles") {
            if (kw != "profile" || toks.size() != 8 || toks[2] != "start" || toks[4] != "mode" ||
                toks[6] != "repeat")
                fail(at, "expected: profile <name> start <s> mode simultaneous repeat once");
            spec.apps.profile.name = toks[1];
            spec.apps.profile.start_s = to_double(at, toks[3]);
            spec.apps.profile.simultaneous = toks[5] == "simultaneous";
            spec.apps.profile.once = toks[7] == "once";
        } else if (section.empty()) {
            fail(at, "content before any [section]");
        } else {
            fail(at, "unknown section [" + section + "]");
        }
    }

    void parse(const std::vector<SourceLine>& lines) {
        static const std::set<std::string> known = {
            "scenario", "topology", "links",    "acl",  "cbwfq",    "wred",
            "policy",   "trunks",   "lsps",     "bindings", "apps", "profiles"};
        for (const auto& sl : lines) {
            auto toks = tokenize(sl.text);
            if (toks.empty()) continue;
            if (toks[0].front() == '[') {
                if (toks.size() != 1 || toks[0].back() != ']')
                    fail(sl, "malformed section header");
                section = toks[0].substr(1, toks[0].size() - 2);
                if (!known.count(section)) fail(sl, "unknown section [" + section + "]");
                continue;
            }
            if (toks.size() >= 2 && toks[1] == "=") key_value(sl, toks);
            else row(sl, toks);
        }
    }

    ScenarioSpec finish() {
        for (auto& c : spec.policy.classes) {
            auto it = wred.find(c.dscp);
            if (it != wred.end()) c.wred = it->second;
        }
        if (te_seen) {
            TeConfig te;
            te.trunks = std::move(trunks);
            te.lsps = std::move(lsps);
            te.bindings = std::move(bindings);
            te.exp_map = exp_map;
            spec.te = std::move(te);
        }
        return std::move(spec);
    }
};

} // namespace

ScenarioSpec parse_scenario(const std::string& text, const std::string& origin) {
    std::vector<SourceLine> lines;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        lines.push_back({origin, number, line.substr(0, line.find('#'))});
    }
    Parser p;
    p.parse(lines);
    ScenarioSpec spec = p.finish();
    validate_scenario(spec);
    return spec;
}

ScenarioSpec load_scenario(const std::string& path) {
    std::vector<SourceLine> lines;
    gather_lines(path, lines, 0);
    Parser p;
    p.parse(lines);
    ScenarioSpec spec = p.finish();
    validate_scenario(spec);
    return spec;
}

std::string save_scenario(const ScenarioSpec& spec) {
    std::ostringstream out;
    out << "[scenario]\n";
    out << "name = " << spec.name << "\n";
    out << "ip_version = " << spec.ip_version << "\n";
    out << "qos_mode = " << qos_mode_name(spec.qos_mode) << "\n";
    out << "duration_s = " << fmt_num(spec.duration_s) << "\n";
    out << "seed = " << spec.seed << "\n";
    out << "util_window_start_s = " << fmt_num(spec.util_window_start_s) << "\n";
    out << "fifo_queue_limit = " << spec.fifo_queue_limit << "\n";
    out << "tie_break = "
        << (spec.tie_break == TieBreak::HighestNextHopId ? "highest-next-hop"
                                                         : "lowest-next-hop")
        << "\n";

    out << "\n[topology]\n";
    for (const auto& n : spec.topology.nodes)
        out << "node " << n.id << " " << node_kind_name(n.kind) << " "
            << format_ipv4(n.address) << "\n";

    out << "\n[links]\n";
    for (const auto& l : spec.topology.links)
        out << "link " << l.node_a << " " << l.node_b << " " << fmt_num(l.rate_bps) << " "
            << fmt_num(l.prop_delay_s) << " " << l.l2_overhead_bytes << " " << fmt_num(l.cost)
            << "\n";

    if (!spec.acl.empty()) {
        out << "\n[acl]\n";
        for (const auto& r : spec.acl)
            out << "rule " << r.name << " permit " << format_ipv4(r.src_ip) << " "
                << format_ipv4(r.wildcard) << " " << dscp_name(r.set_dscp) << "\n";
    }

    if (spec.uses_policy() && !spec.policy.classes.empty()) {
        out << "\n[cbwfq]\n";
        for (const auto& c : spec.policy.classes)
            out << "class " << dscp_name(c.dscp) << " " << fmt_num(c.bandwidth_percent) << " "
                << c.queue_limit << " " << (c.priority ? 1 : 0) << "\n";
        out << "\n[wred]\n";
        for (const auto& c : spec.policy.classes)
            if (c.wred)
                out << "profile " << dscp_name(c.dscp) << " " << c.wred->exp_weight_const << " "
                    << c.wred->min_th << " " << c.wred->max_th << " " << c.wred->mark_prob_denom
                    << "\n";
        out << "\n[policy]\n";
        out << "name = " << spec.policy.name << "\n";
        for (const auto& a : spec.policy.attachments)
            out << "attach " << a.node << " " << a.neighbor << "\n";
    }

    if (spec.te) {
        out << "\n[trunks]\n";
        for (const auto& t : spec.te->trunks)
            out << "trunk " << t.name << " " << fmt_num(t.max_bit_rate) << " "
                << fmt_num(t.peak_burst) << " " << fmt_num(t.avg_bit_rate) << " "
                << fmt_num(t.max_burst) << " transmit " << dscp_name(t.traffic_class) << "\n";
        out << "\n[lsps]\n";
        for (const auto& l : spec.te->lsps) {
            out << "lsp " << l.name << " " << (l.bidirectional ? 1 : 0);
            for (const auto& h : l.hops) out << " " << h;
            out << "\n";
        }
        out << "\n[bindings]\n";
        for (int e = 0; e < 8; ++e)
            out << "exp " << dscp_name(spec.te->exp_map.phb_of_exp[e]) << " " << e << "\n";
        for (const auto& b : spec.te->bindings)
            out << "bind " << b.node << " " << b.in_interface << " " << b.fec_name << " "
                << dscp_name(b.dscp) << " " << b.trunk << " " << b.lsp << "\n";
    }

    out << "\n[apps]\n";
    out << "max_segment_bytes = " << spec.apps.max_segment_bytes << "\n";
    out << "video_clock = "
        << (spec.apps.video_clock == FrameClock::Constant ? "constant" : "exponential")
        << "\n";
    for (const auto& v : spec.apps.video)
        out << "video " << v.name << " " << dscp_name(v.dscp) << " " << v.src << " " << v.dst
            << " " << v.frame_bytes << " " << fmt_num(v.frame_rate) << " "
            << fmt_num(v.start_offset_s) << "\n";
    for (const auto& v : spec.apps.voice)
        out << "voice " << v.name << " " << v.src << " " << v.dst << " "
            << fmt_num(v.codec_rate_bps) << " " << fmt_num(v.sample_interval_s) << " "
            << fmt_num(v.start_offset_s) << " " << fmt_num(v.silence_mean_in_s) << " "
            << fmt_num(v.silence_mean_out_s) << " " << fmt_num(v.talkspurt_mean_s) << " "
            << fmt_num(v.compression_delay_s) << " " << fmt_num(v.decompression_delay_s)
            << "\n";

    out << "\n[profiles]\n";
    out << "profile " << spec.apps.profile.name << " start "
        << fmt_num(spec.apps.profile.start_s) << " mode "
        << (spec.apps.profile.simultaneous ? "simultaneous" : "serial") << " repeat "
        << (spec.apps.profile.once ? "once" : "unlimited") << "\n";
    return out.str();
}

void validate_scenario(const ScenarioSpec& spec) {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ValidationError(msg);
    };

    require(!spec.name.empty(), "scenario has no name");
    require(spec.ip_version == 4 || spec.ip_version == 6,
            "ip_version must be 4 or 6, got " + std::to_string(spec.ip_version));
    require(spec.duration_s > 0, "duration_s must be positive");
    require(spec.util_window_start_s >= 0 && spec.util_window_start_s < spec.duration_s,
            "util_window_start_s must lie within the run");
    require(spec.fifo_queue_limit > 0, "fifo_queue_limit must be positive");

    const Topology& topo = spec.topology;
    require(!topo.nodes.empty(), "topology has no nodes");
    {
        std::set<std::string> ids;
        for (const auto& n : topo.nodes)
            require(ids.insert(n.id).second, "duplicate node id '" + n.id + "'");
    }
    for (const auto& l : topo.links) {
        require(topo.node_index(l.node_a) >= 0, "link references unknown node '" + l.node_a + "'");
        require(topo.node_index(l.node_b) >= 0, "link references unknown node '" + l.node_b + "'");
        require(l.rate_bps > 0, "link " + l.node_a + "-" + l.node_b + " rate must be positive");
        require(l.prop_delay_s >= 0, "link " + l.node_a + "-" + l.node_b + " prop_delay < 0");
        require(l.l2_overhead_bytes >= 0, "link " + l.node_a + "-" + l.node_b + " l2_overhead < 0");
        require(l.cost > 0, "link " + l.node_a + "-" + l.node_b + " cost must be positive");
    }
    require(topo.connected(), "topology is not connected");

    if (spec.qos_mode == QosMode::BestEffort) {
        require(spec.policy.classes.empty() && spec.policy.attachments.empty(),
                "best-effort scenario must not carry a traffic policy");
        require(!spec.te, "best-effort scenario must not carry TE config");
    } else {
        require(!spec.policy.classes.empty(),
                "qos_mode " + qos_mode_name(spec.qos_mode) + " needs CBWFQ classes");
        double total = 0;
        std::set<Dscp> seen;
        for (const auto& c : spec.policy.classes) {
            require(seen.insert(c.dscp).second,
                    "class " + dscp_name(c.dscp) + " referenced more than once in the policy");
            require(c.bandwidth_percent > 0, "class " + dscp_name(c.dscp) + " needs bandwidth");
            require(c.queue_limit > 0, "class " + dscp_name(c.dscp) + " queue_limit <= 0");
            total += c.bandwidth_percent;
            if (c.wred) {
                require(c.wred->min_th < c.wred->max_th,
                        "WRED min_th must be below max_th for " + dscp_name(c.dscp));
                require(c.wred->mark_prob_denom >= 1,
                        "WRED mark_prob_denom must be >= 1 for " + dscp_name(c.dscp));
                require(c.wred->exp_weight_const >= 0,
                        "WRED exp_weight_const must be >= 0 for " + dscp_name(c.dscp));
            }
        }
        require(total <= 100.0 + 1e-9, "CBWFQ bandwidth percentages sum above 100");
        require(!spec.policy.attachments.empty(), "traffic policy is attached nowhere");
        for (const auto& a : spec.policy.attachments) {
            int n = topo.node_index(a.node);
            require(n >= 0, "policy attached to unknown node '" + a.node + "'");
            if (a.neighbor != "*") {
                int m = topo.node_index(a.neighbor);
                require(m >= 0, "policy attachment names unknown neighbor '" + a.neighbor + "'");
                require(topo.link_between(n, m) >= 0,
                        "policy attachment " + a.node + " -> " + a.neighbor + " is not a link");
            }
        }
    }

    if (spec.qos_mode == QosMode::DiffServMpls) {
        require(spec.te.has_value(), "diffserv-mpls scenario needs a TE section");
    } else {
        require(!spec.te.has_value(),
                "TE config present but qos_mode is " + qos_mode_name(spec.qos_mode));
    }

    if (spec.te) {
        const TeConfig& te = *spec.te;
        require(te.exp_map.bijective(), "EXP<->PHB map is not a bijection");
        std::set<std::string> trunk_names;
        for (const auto& t : te.trunks) {
            require(trunk_names.insert(t.name).second, "duplicate trunk '" + t.name + "'");
            require(t.max_bit_rate > 0 && t.avg_bit_rate > 0 && t.peak_burst > 0 &&
                        t.max_burst > 0,
                    "trunk '" + t.name + "' needs positive rates and bursts");
        }
        std::set<std::string> lsp_names;
        for (const auto& l : te.lsps) {
            require(lsp_names.insert(l.name).second, "duplicate LSP '" + l.name + "'");
            require(l.hops.size() >= 2, "LSP '" + l.name + "' needs at least 2 hops");
            for (const auto& h : l.hops) {
                const NodeSpec* n = topo.find_node(h);
                require(n != nullptr, "LSP '" + l.name + "' references unknown node '" + h + "'");
                require(is_router(n->kind),
                        "LSP '" + l.name + "' hop '" + h + "' is not a router");
            }
            require(topo.find_node(l.hops.front())->kind == NodeKind::EdgeRouter,
                    "LSP '" + l.name + "' head-end is not an edge router");
            require(topo.find_node(l.hops.back())->kind == NodeKind::EdgeRouter,
                    "LSP '" + l.name + "' tail-end is not an edge router");
        }
        try {
            build_label_tables(topo, te.lsps); // adjacency check
        } catch (const PathInvalidError& e) {
            throw ValidationError(e.what());
        }
        std::set<std::pair<std::string, Dscp>> bound;
        for (const auto& b : te.bindings) {
            const NodeSpec* n = topo.find_node(b.node);
            require(n != nullptr, "binding on unknown node '" + b.node + "'");
            require(n->kind == NodeKind::EdgeRouter,
                    "binding on '" + b.node + "' which is not an edge router");
            require(trunk_names.count(b.trunk),
                    "binding '" + b.fec_name + "' references undefined trunk '" + b.trunk + "'");
            require(lsp_names.count(b.lsp),
                    "binding '" + b.fec_name + "' references undefined LSP '" + b.lsp + "'");
            for (const auto& l : te.lsps)
                if (l.name == b.lsp)
                    require(l.hops.front() == b.node,
                            "binding '" + b.fec_name + "' maps onto " + b.lsp +
                                " whose head-end is " + l.hops.front() + ", not " + b.node);
            require(bound.insert({b.node, b.dscp}).second,
                    "DSCP " + dscp_name(b.dscp) + " bound more than once on " + b.node);
        }
    }

    auto check_workstation = [&](const std::string& id, const std::string& app) {
        const NodeSpec* n = topo.find_node(id);
        require(n != nullptr, "app '" + app + "' references unknown node '" + id + "'");
        require(n->kind == NodeKind::Workstation,
                "app '" + app + "' endpoint '" + id + "' is not a workstation");
    };
    require(spec.apps.max_segment_bytes > 0, "max_segment_bytes must be positive");
    for (const auto& v : spec.apps.video) {
        check_workstation(v.src, v.name);
        check_workstation(v.dst, v.name);
        require(v.frame_bytes > 0, "video app '" + v.name + "' frame_bytes <= 0");
        require(v.frame_rate > 0, "video app '" + v.name + "' frame_rate <= 0");
        require(v.start_offset_s >= 0, "video app '" + v.name + "' start offset < 0");
    }
    for (const auto& v : spec.apps.voice) {
        check_workstation(v.src, v.name);
        check_workstation(v.dst, v.name);
        require(v.codec_rate_bps > 0 && v.sample_interval_s > 0,
                "voice app '" + v.name + "' needs positive codec rate and interval");
        require(v.silence_mean_in_s > 0 && v.silence_mean_out_s > 0 && v.talkspurt_mean_s > 0,
                "voice app '" + v.name + "' needs positive dwell means");
        try {
            voice_packetization(v.codec_rate_bps, v.sample_interval_s);
        } catch (const NonIntegralPayloadError& e) {
            throw ValidationError("voice app '" + v.name + "': " + e.what());
        }
    }
    require(spec.apps.profile.start_s >= 0, "profile start must be >= 0");
}

} // namespace pdvsim
