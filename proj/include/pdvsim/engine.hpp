#ifndef PDVSIM_ENGINE_HPP
#define PDVSIM_ENGINE_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdvsim {

// Virtual time is an integer count of nanoseconds so that event ordering,
// tie-breaking and replay are exact. Reports convert to double seconds.
using simtime_ns = std::int64_t;

inline simtime_ns ns_from_seconds(double s) {
    return static_cast<simtime_ns>(std::llround(s * 1e9));
}
inline double seconds_from_ns(simtime_ns t) { return static_cast<double>(t) * 1e-9; }

class SimError : public std::runtime_error {
  public:
    explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

class PastTimeError : public SimError {
  public:
    explicit PastTimeError(const std::string& what) : SimError(what) {}
};

struct SimEvent {
    simtime_ns fire_time;
    std::uint64_t seq; // insertion counter, breaks fire_time ties FIFO
    std::function<void()> action;
};

// Single-threaded discrete-event kernel. One instance per simulation run.
class Simulator {
  public:
    Simulator() = default;
    Simulator(const Simulator&) = delete;
    Simulator& operator=(const Simulator&) = delete;

    simtime_ns now() const { return now_; }

    // Schedules action at absolute virtual time t. Returns the event handle.
    std::uint64_t schedule(simtime_ns t, std::function<void()> action) {
        if (t < now_)
            throw PastTimeError("schedule: fire_time " + std::to_string(t) +
                                " ns is before clock " + std::to_string(now_) + " ns");
        std::uint64_t seq = next_seq_++;
        queue_.push(SimEvent{t, seq, std::move(action)});
        return seq;
    }

    std::uint64_t schedule_in(simtime_ns dt, std::function<void()> action) {
        return schedule(now_ + dt, std::move(action));
    }

    // Executes every event with fire_time <= t_end, in (fire_time, seq)
    // order, then advances the clock to t_end. Returns the executed count.
    std::size_t run_until(simtime_ns t_end) {
        if (t_end < now_)
            throw PastTimeError("run_until: t_end is before clock");
        std::size_t executed = 0;
        while (!queue_.empty() && queue_.top().fire_time <= t_end) {
            // pop before running: the action may schedule at the same time
            SimEvent ev = std::move(const_cast<SimEvent&>(queue_.top()));
            queue_.pop();
            now_ = ev.fire_time;
            ev.action();
            ++executed;
        }
        now_ = t_end;
        return executed;
    }

    std::size_t pending() const { return queue_.size(); }

  private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const {
            if (a.fire_time != b.fire_time) return a.fire_time > b.fire_time;
            return a.seq > b.seq;
        }
    };

    simtime_ns now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> queue_;
};

} // namespace pdvsim

#endif
