#ifndef PDVSIM_METRICS_HPP
#define PDVSIM_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdvsim/engine.hpp"

namespace pdvsim {

class TooFewSamplesError : public SimError {
  public:
    explicit TooFewSamplesError(const std::string& what) : SimError(what) {}
};

class EmptySeriesError : public SimError {
  public:
    explicit EmptySeriesError(const std::string& what) : SimError(what) {}
};

// One-way delays of a flow (or pooled class), in arrival order. Dropped
// packets never appear.
struct DelaySeries {
    std::vector<double> arrival_s;
    std::vector<double> owd_s;

    std::size_t size() const { return owd_s.size(); }
    void append(double arrival, double owd) {
        arrival_s.push_back(arrival);
        owd_s.push_back(owd);
    }
};

enum class PdvMode : std::uint8_t { ConsecutiveAbsolute, ConsecutiveSigned, Variance };

const std::string& pdv_mode_name(PdvMode m);
std::optional<PdvMode> pdv_mode_from_name(const std::string& name);

// Consecutive-packet delay differences: element i is D(i+1) - D(i), signed
// or absolute. Length is samples - 1. Throws TooFewSamplesError below 2.
std::vector<double> ipdv_series(std::span<const double> owd, PdvMode mode);

// Running population variance of the delays seen so far; element i covers
// samples 0..i+1. Length is samples - 1, aligning with ipdv_series.
std::vector<double> running_variance_series(std::span<const double> owd);

// Dispatch on mode; all three modes yield a series of length samples - 1.
std::vector<double> pdv_series(std::span<const double> owd, PdvMode mode);

struct PdvSummary {
    double min = 0.0;
    double avg = 0.0;
    double max = 0.0;
    double stddev = 0.0; // population
};

// Exact min/max, mean and population standard deviation (two-pass,
// compensated summation). Throws EmptySeriesError on an empty series.
PdvSummary summarize(std::span<const double> series);

struct LinkUtilization {
    std::string from;
    std::string to;
    double busy_fraction = 0.0; // within the measurement window
    double bits_carried = 0.0;  // full run
};

enum class LinkVerdict : std::uint8_t { OverUtilized, UnderUtilized, Normal };

const std::string& link_verdict_name(LinkVerdict v);

struct IgpFinding {
    std::string from;
    std::string to;
    double busy_fraction = 0.0;
    LinkVerdict verdict = LinkVerdict::Normal;
};

std::vector<IgpFinding> igp_analysis(const std::vector<LinkUtilization>& utilization,
                                     double over_threshold = 0.95,
                                     double under_threshold = 0.05);

} // namespace pdvsim

#endif
