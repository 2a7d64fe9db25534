#ifndef PDVSIM_SCENARIO_HPP
#define PDVSIM_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdvsim/diffserv.hpp"
#include "pdvsim/mpls.hpp"
#include "pdvsim/netmodel.hpp"
#include "pdvsim/routing.hpp"
#include "pdvsim/traffic.hpp"

namespace pdvsim {

class ParseError : public SimError {
  public:
    explicit ParseError(const std::string& what) : SimError(what) {}
};

class ValidationError : public SimError {
  public:
    explicit ValidationError(const std::string& what) : SimError(what) {}
};

enum class QosMode : std::uint8_t { BestEffort, DiffServ, DiffServMpls };

const std::string& qos_mode_name(QosMode m);
std::optional<QosMode> qos_mode_from_name(const std::string& name);

// An outbound interface of `node`; neighbor "*" attaches to every egress.
struct PolicyAttachment {
    std::string node;
    std::string neighbor = "*";
};

struct TrafficPolicyConfig {
    std::string name = "Traffic_Policy";
    std::vector<CbwfqClassConfig> classes; // ordered, WRED profile inline
    std::vector<PolicyAttachment> attachments;
};

struct TeConfig {
    std::vector<TrunkProfile> trunks;
    std::vector<LspSpec> lsps;
    std::vector<TeBinding> bindings;
    ExpPhbMap exp_map;
};

enum class FrameClock : std::uint8_t { Constant, Exponential };

struct AppConfig {
    std::vector<VideoAppSpec> video;
    std::vector<VoiceAppSpec> voice;
    ProfileSpec profile;
    int max_segment_bytes = 1500; // application-layer segment before headers
    // frame interarrival distribution of the video sources; the mean is
    // 1/frame_rate either way
    FrameClock video_clock = FrameClock::Exponential;
};

struct ScenarioSpec {
    std::string name;
    int ip_version = 4;
    QosMode qos_mode = QosMode::BestEffort;
    double duration_s = 1800.0;
    std::uint64_t seed = 42;
    double util_window_start_s = 780.0; // rate/utilization measurement window start
    TieBreak tie_break = TieBreak::HighestNextHopId;
    Topology topology;
    std::vector<AclRule> acl;
    TrafficPolicyConfig policy;  // ignored in best-effort mode
    std::optional<TeConfig> te;  // present iff qos_mode == DiffServMpls
    AppConfig apps;
    int fifo_queue_limit = 500;

    bool uses_policy() const { return qos_mode != QosMode::BestEffort; }
};

// Parses the sectioned scenario text format. `include <relpath>` lines merge
// another file. Throws ParseError with file:line context, then validates.
ScenarioSpec load_scenario(const std::string& path);
ScenarioSpec parse_scenario(const std::string& text, const std::string& origin);

// Canonical text form; load(save(spec)) is equivalent to spec.
std::string save_scenario(const ScenarioSpec& spec);

// Cross-reference and invariant checks; throws ValidationError naming the
// offending reference.
void validate_scenario(const ScenarioSpec& spec);

// The six canned scenarios: best-effort / diffserv / diffserv+mpls-te, each
// over IPv4 and IPv6, on the shared reference topology. Only ip_version and
// qos_mode (and the config sections it pulls in) differ between them.
std::vector<std::string> builtin_scenario_names();
ScenarioSpec builtin_scenario(const std::string& name);
bool is_builtin_scenario(const std::string& name);
std::string builtin_scenario_summary(const std::string& name);

} // namespace pdvsim

#endif
