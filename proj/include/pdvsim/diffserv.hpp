#ifndef PDVSIM_DIFFSERV_HPP
#define PDVSIM_DIFFSERV_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdvsim/netmodel.hpp"
#include "pdvsim/rng.hpp"

namespace pdvsim {

// Extended-ACL row: permit + source prefix (address and Cisco-style
// wildcard mask, set bits ignored) + DSCP to set. First match wins.
struct AclRule {
    std::string name;
    std::uint32_t src_ip = 0;
    std::uint32_t wildcard = 0;
    Dscp set_dscp = Dscp::BE;
};

// First matching rule decides; unmatched traffic keeps BE(0).
Dscp classify(std::uint32_t src_addr, std::span<const AclRule> acl);

struct WredProfile {
    int exp_weight_const = 9; // EWMA weight is 2^-n
    int min_th = 100;         // packets
    int max_th = 200;         // packets
    int mark_prob_denom = 10; // drop probability reaches 1/D at max_th
};

// avg' = avg + (q - avg) * 2^-n, applied on every enqueue attempt.
inline double wred_update_avg(double avg, double instantaneous_q, int exp_weight_const) {
    return avg + (instantaneous_q - avg) * std::pow(2.0, -exp_weight_const);
}

enum class WredDecision : std::uint8_t { Enqueue, Drop };

// p = 0 below min_th, ramps to 1/D across [min_th, max_th), forced drop at
// and above max_th.
WredDecision wred_drop_decision(double avg, const WredProfile& profile, RngStream& rng);

enum class EnqueueResult : std::uint8_t { Queued, DroppedWred, DroppedTail };

// Baseline per-interface queue: one FIFO, tail drop at the limit.
class FifoQueue {
  public:
    explicit FifoQueue(int limit) : limit_(limit) {}

    EnqueueResult enqueue(Packet&& p) {
        if (static_cast<int>(q_.size()) >= limit_) return EnqueueResult::DroppedTail;
        q_.push_back(std::move(p));
        return EnqueueResult::Queued;
    }

    std::optional<Packet> dequeue() {
        if (q_.empty()) return std::nullopt;
        Packet p = std::move(q_.front());
        q_.pop_front();
        return p;
    }

    std::size_t depth() const { return q_.size(); }
    bool empty() const { return q_.empty(); }

  private:
    std::deque<Packet> q_;
    int limit_;
};

struct CbwfqClassConfig {
    Dscp dscp = Dscp::BE;
    double bandwidth_percent = 0.0;
    int queue_limit = 500;
    bool priority = false; // strict priority (LLQ); Enable only for EF
    std::optional<WredProfile> wred;
};

// Class-based WFQ with a strict-priority class, realized as a
// virtual-finish-time approximation of GPS (self-clocked fair queueing).
// Weights are the configured bandwidth percentages; "relative" bandwidth
// means idle classes' capacity is absorbed by the backlogged ones, which
// the virtual-time mechanism provides. WRED runs per class on every
// enqueue attempt, then the 500-packet class limit tail-drops.
class CbwfqScheduler {
  public:
    CbwfqScheduler(std::vector<CbwfqClassConfig> classes, RngStream wred_rng);

    // bits: frame size on the wire, used for the finish-time advance.
    EnqueueResult enqueue(Packet&& p, Dscp sched_class, double bits);
    std::optional<Packet> dequeue();

    bool empty() const { return total_depth_ == 0; }
    std::size_t depth() const { return total_depth_; }
    std::size_t depth_of(Dscp d) const;
    double wred_avg_of(Dscp d) const;
    double virtual_time() const { return vtime_; }
    double served_bits_of(Dscp d) const;
    // pins the WRED average for statistical tests
    void set_wred_avg(Dscp d, double avg);

  private:
    struct Entry {
        Packet packet;
        double finish = 0.0;
        double bits = 0.0;
    };
    struct ClassState {
        CbwfqClassConfig cfg;
        std::deque<Entry> q;
        double wred_avg = 0.0;
        double last_finish = 0.0;
        double served_bits = 0.0;
    };

    ClassState& state_of(Dscp d);
    const ClassState* find_state(Dscp d) const;

    // ordered by DSCP value so scans are deterministic
    std::map<Dscp, ClassState> classes_;
    RngStream rng_;
    double vtime_ = 0.0;
    std::size_t total_depth_ = 0;
};

} // namespace pdvsim

#endif
