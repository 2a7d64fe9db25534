#ifndef PDVSIM_REPORT_HPP
#define PDVSIM_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pdvsim/metrics.hpp"
#include "pdvsim/netmodel.hpp"

namespace pdvsim {

class ClassMismatchError : public SimError {
  public:
    explicit ClassMismatchError(const std::string& what) : SimError(what) {}
};

struct ClassCounts {
    std::uint64_t created = 0;       // network packets emitted by sources
    std::uint64_t delivered = 0;     // network packets that reached the sink node
    std::uint64_t dropped_wred = 0;
    std::uint64_t dropped_tail = 0;
    std::uint64_t dropped_nolabel = 0;
    std::uint64_t samples = 0;       // delay samples (application units)

    std::uint64_t dropped() const { return dropped_wred + dropped_tail + dropped_nolabel; }
    std::uint64_t in_flight() const { return created - delivered - dropped(); }
};

struct TrunkCounts {
    std::string name;
    std::uint64_t in_profile = 0;
    std::uint64_t out_of_profile = 0;
};

struct RunReport {
    std::string scenario;
    int ip_version = 4;
    std::string qos_mode;
    std::uint64_t seed = 0;
    double duration_s = 0.0;
    std::string build;
    double util_window_start_s = 0.0;
    double util_window_end_s = 0.0;

    std::map<Dscp, DelaySeries> series; // pooled per class, arrival order
    std::map<Dscp, ClassCounts> counts;
    std::map<Dscp, double> offered_kbps; // application-layer rate in the window
    std::vector<LinkUtilization> utilization;
    std::vector<TrunkCounts> trunks;
    std::uint64_t in_flight_observed = 0; // queued + in transit at t_end
    double wall_seconds = 0.0;

    // PDV summary of one class under the given mode; classes with fewer
    // than 2 samples summarize as all-zero.
    PdvSummary pdv_summary(Dscp d, PdvMode mode) const;
    std::map<Dscp, PdvSummary> pdv_summaries(PdvMode mode) const;
};

// Writes summary.csv, per-class series_<CLASS>.csv, utilization.csv and
// meta.json into dir (created if needed). Returns the file paths.
std::vector<std::string> emit_report(const RunReport& report, const std::string& dir,
                                     PdvMode mode, bool write_series = true);

// Human-readable per-class table in the min/avg/max/stddev layout.
std::string render_table(const RunReport& report, PdvMode mode);

enum class CompareRelation : std::uint8_t { LeqAvgPdv, GeqAvgPdv, RatioBound };

const std::string& compare_relation_name(CompareRelation r);
std::optional<CompareRelation> compare_relation_from_name(const std::string& name);

struct ClassVerdict {
    Dscp dscp = Dscp::BE;
    bool pass = false;
    double avg_a = 0.0;
    double avg_b = 0.0;
    double ratio = 0.0; // avg_a / avg_b
};

// Reads summary.csv written by emit_report.
std::map<Dscp, PdvSummary> load_summary_csv(const std::string& path);

// Applies the relation per class. classes empty = every common class; a
// class listed but missing on either side raises ClassMismatchError, as do
// differing class sets when no filter is given.
std::vector<ClassVerdict> compare_summaries(const std::map<Dscp, PdvSummary>& a,
                                            const std::map<Dscp, PdvSummary>& b,
                                            CompareRelation relation, double ratio_bound,
                                            const std::vector<Dscp>& classes = {});

} // namespace pdvsim

#endif
