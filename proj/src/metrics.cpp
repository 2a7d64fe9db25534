#include "pdvsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pdvsim {

const std::string& pdv_mode_name(PdvMode m) {
    static const std::map<PdvMode, std::string> names = {
        {PdvMode::ConsecutiveAbsolute, "consecutive-absolute"},
        {PdvMode::ConsecutiveSigned, "consecutive-signed"},
        {PdvMode::Variance, "variance"},
    };
    return names.at(m);
}

std::optional<PdvMode> pdv_mode_from_name(const std::string& name) {
    for (PdvMode m :
         {PdvMode::ConsecutiveAbsolute, PdvMode::ConsecutiveSigned, PdvMode::Variance})
        if (pdv_mode_name(m) == name) return m;
    return std::nullopt;
}

std::vector<double> ipdv_series(std::span<const double> owd, PdvMode mode) {
    if (owd.size() < 2)
        throw TooFewSamplesError("ipdv_series needs at least 2 samples, got " +
                                 std::to_string(owd.size()));
    std::vector<double> out(owd.size() - 1);
    for (std::size_t i = 0; i + 1 < owd.size(); ++i) {
        double d = owd[i + 1] - owd[i];
        out[i] = mode == PdvMode::ConsecutiveAbsolute ? std::fabs(d) : d;
    }
    return out;
}

std::vector<double> running_variance_series(std::span<const double> owd) {
    if (owd.size() < 2)
        throw TooFewSamplesError("running_variance_series needs at least 2 samples, got " +
                                 std::to_string(owd.size()));
    std::vector<double> out;
    out.reserve(owd.size() - 1);
    // Welford recurrence; numerically stable over millions of samples.
    double mean = owd[0];
    double m2 = 0.0;
    for (std::size_t i = 1; i < owd.size(); ++i) {
        double k = static_cast<double>(i + 1);
        double delta = owd[i] - mean;
        mean += delta / k;
        m2 += delta * (owd[i] - mean);
        out.push_back(m2 / k);
    }
    return out;
}

std::vector<double> pdv_series(std::span<const double> owd, PdvMode mode) {
    if (mode == PdvMode::Variance) return running_variance_series(owd);
    return ipdv_series(owd, mode);
}

PdvSummary summarize(std::span<const double> series) {
    if (series.empty()) throw EmptySeriesError("summarize on empty series");
    PdvSummary s;
    s.min = series[0];
    s.max = series[0];
    double sum = 0.0, comp = 0.0;
    for (double x : series) {
        s.min = std::min(s.min, x);
        s.max = std::max(s.max, x);
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    const double n = static_cast<double>(series.size());
    s.avg = sum / n;
    double sq = 0.0;
    comp = 0.0;
    for (double x : series) {
        double d = x - s.avg;
        double y = d * d - comp;
        double t = sq + y;
        comp = (t - sq) - y;
        sq = t;
    }
    s.stddev = std::sqrt(sq / n);
    return s;
}

const std::string& link_verdict_name(LinkVerdict v) {
    static const std::map<LinkVerdict, std::string> names = {
        {LinkVerdict::OverUtilized, "over-utilized"},
        {LinkVerdict::UnderUtilized, "under-utilized"},
        {LinkVerdict::Normal, "normal"},
    };
    return names.at(v);
}

std::vector<IgpFinding> igp_analysis(const std::vector<LinkUtilization>& utilization,
                                     double over_threshold, double under_threshold) {
    std::vector<IgpFinding> findings;
    findings.reserve(utilization.size());
    for (const auto& u : utilization) {
        IgpFinding f{u.from, u.to, u.busy_fraction, LinkVerdict::Normal};
        if (u.busy_fraction >= over_threshold)
            f.verdict = LinkVerdict::OverUtilized;
        else if (u.busy_fraction <= under_threshold)
            f.verdict = LinkVerdict::UnderUtilized;
        findings.push_back(std::move(f));
    }
    return findings;
}

} // namespace pdvsim
