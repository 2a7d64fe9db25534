#include "pdvsim/diffserv.hpp"

#include <algorithm>

namespace pdvsim {

Dscp classify(std::uint32_t src_addr, std::span<const AclRule> acl) {
    for (const auto& rule : acl) {
        std::uint32_t care = ~rule.wildcard;
        if ((src_addr & care) == (rule.src_ip & care)) return rule.set_dscp;
    }
    return Dscp::BE;
}

WredDecision wred_drop_decision(double avg, const WredProfile& profile, RngStream& rng) {
    if (avg < profile.min_th) return WredDecision::Enqueue;
    if (avg >= profile.max_th) return WredDecision::Drop;
    double p = (1.0 / profile.mark_prob_denom) * (avg - profile.min_th) /
               (profile.max_th - profile.min_th);
    return rng.bernoulli(p) ? WredDecision::Drop : WredDecision::Enqueue;
}

CbwfqScheduler::CbwfqScheduler(std::vector<CbwfqClassConfig> classes, RngStream wred_rng)
    : rng_(wred_rng) {
    for (auto& c : classes) {
        Dscp d = c.dscp;
        classes_[d].cfg = std::move(c);
    }
    // catch-all for traffic of an unconfigured class
    if (!classes_.count(Dscp::BE))
        classes_[Dscp::BE].cfg = CbwfqClassConfig{Dscp::BE, 1.0, 500, false, std::nullopt};
}

CbwfqScheduler::ClassState& CbwfqScheduler::state_of(Dscp d) {
    auto it = classes_.find(d);
    if (it == classes_.end()) it = classes_.find(Dscp::BE);
    return it->second;
}

const CbwfqScheduler::ClassState* CbwfqScheduler::find_state(Dscp d) const {
    auto it = classes_.find(d);
    return it == classes_.end() ? nullptr : &it->second;
}

EnqueueResult CbwfqScheduler::enqueue(Packet&& p, Dscp sched_class, double bits) {
    ClassState& cs = state_of(sched_class);
    if (cs.cfg.wred) {
        cs.wred_avg = wred_update_avg(cs.wred_avg, static_cast<double>(cs.q.size()),
                                      cs.cfg.wred->exp_weight_const);
        if (wred_drop_decision(cs.wred_avg, *cs.cfg.wred, rng_) == WredDecision::Drop)
            return EnqueueResult::DroppedWred;
    }
    if (static_cast<int>(cs.q.size()) >= cs.cfg.queue_limit) return EnqueueResult::DroppedTail;

    Entry e;
    e.packet = std::move(p);
    e.bits = bits;
    if (!cs.cfg.priority) {
        double start = std::max(vtime_, cs.last_finish);
        e.finish = start + bits / cs.cfg.bandwidth_percent;
        cs.last_finish = e.finish;
    }
    cs.q.push_back(std::move(e));
    ++total_depth_;
    return EnqueueResult::Queued;
}

std::optional<Packet> CbwfqScheduler::dequeue() {
    if (total_depth_ == 0) return std::nullopt;

    // strict priority first
    for (auto& [d, cs] : classes_) {
        if (cs.cfg.priority && !cs.q.empty()) {
            Entry e = std::move(cs.q.front());
            cs.q.pop_front();
            --total_depth_;
            cs.served_bits += e.bits;
            if (total_depth_ == 0) {
                vtime_ = 0.0;
                for (auto& [dd, s] : classes_) s.last_finish = 0.0;
            }
            return std::move(e.packet);
        }
    }

    ClassState* best = nullptr;
    for (auto& [d, cs] : classes_) {
        if (cs.cfg.priority || cs.q.empty()) continue;
        if (!best || cs.q.front().finish < best->q.front().finish) best = &cs;
    }
    if (!best) return std::nullopt;

    Entry e = std::move(best->q.front());
    best->q.pop_front();
    --total_depth_;
    best->served_bits += e.bits;
    vtime_ = e.finish; // self-clocked virtual time
    if (total_depth_ == 0) {
        vtime_ = 0.0;
        for (auto& [d, s] : classes_) s.last_finish = 0.0;
    }
    return std::move(e.packet);
}

std::size_t CbwfqScheduler::depth_of(Dscp d) const {
    const ClassState* cs = find_state(d);
    return cs ? cs->q.size() : 0;
}

double CbwfqScheduler::wred_avg_of(Dscp d) const {
    const ClassState* cs = find_state(d);
    return cs ? cs->wred_avg : 0.0;
}

double CbwfqScheduler::served_bits_of(Dscp d) const {
    const ClassState* cs = find_state(d);
    return cs ? cs->served_bits : 0.0;
}

void CbwfqScheduler::set_wred_avg(Dscp d, double avg) { state_of(d).wred_avg = avg; }

} // namespace pdvsim
