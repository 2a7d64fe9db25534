#include "pdvsim/report.hpp"

#include <cstdio>
#include <filesystem>
#include <limits>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pdvsim {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimError("cannot write " + path);
    out << content;
}

} // namespace

PdvSummary RunReport::pdv_summary(Dscp d, PdvMode mode) const {
    auto it = series.find(d);
    if (it == series.end() || it->second.size() < 2) return PdvSummary{};
    auto pdv = pdv_series(it->second.owd_s, mode);
    return summarize(pdv);
}

std::map<Dscp, PdvSummary> RunReport::pdv_summaries(PdvMode mode) const {
    std::map<Dscp, PdvSummary> out;
    for (const auto& [d, s] : series) out[d] = pdv_summary(d, mode);
    return out;
}

std::vector<std::string> emit_report(const RunReport& report, const std::string& dir,
                                     PdvMode mode, bool write_series) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> paths;

    {
        std::ostringstream out;
        out << "class,min_s,avg_s,max_s,stddev_s\n";
        for (const auto& [d, s] : report.series) {
            PdvSummary p = report.pdv_summary(d, mode);
            out << dscp_name(d) << "," << sci(p.min) << "," << sci(p.avg) << "," << sci(p.max)
                << "," << sci(p.stddev) << "\n";
        }
        std::string path = (fs::path(dir) / "summary.csv").string();
        write_file(path, out.str());
        paths.push_back(path);
    }

    if (write_series) {
        for (const auto& [d, s] : report.series) {
            std::ostringstream out;
            out << "arrival_time_s,owd_s,ipdv_s\n";
            if (s.size() >= 2) {
                auto pdv = pdv_series(s.owd_s, mode);
                for (std::size_t i = 1; i < s.size(); ++i)
                    out << sci(s.arrival_s[i]) << "," << sci(s.owd_s[i]) << ","
                        << sci(pdv[i - 1]) << "\n";
            }
            std::string path = (fs::path(dir) / ("series_" + dscp_name(d) + ".csv")).string();
            write_file(path, out.str());
            paths.push_back(path);
        }
    }

    {
        std::ostringstream out;
        out << "link,direction,busy_fraction,bits_carried\n";
        for (const auto& u : report.utilization)
            out << u.from << "-" << u.to << "," << u.from << "->" << u.to << ","
                << sci(u.busy_fraction) << "," << sci(u.bits_carried) << "\n";
        std::string path = (fs::path(dir) / "utilization.csv").string();
        write_file(path, out.str());
        paths.push_back(path);
    }

    {
        nlohmann::ordered_json meta;
        meta["scenario"] = report.scenario;
        meta["ip_version"] = report.ip_version;
        meta["qos_mode"] = report.qos_mode;
        meta["seed"] = report.seed;
        meta["duration_s"] = report.duration_s;
        meta["build"] = report.build;
        meta["pdv_mode"] = pdv_mode_name(mode);
        meta["util_window_s"] = {report.util_window_start_s, report.util_window_end_s};
        nlohmann::ordered_json counts = nlohmann::ordered_json::object();
        std::uint64_t created = 0, delivered = 0, dropped = 0;
        for (const auto& [d, c] : report.counts) {
            counts[dscp_name(d)] = {
                {"created", c.created},
                {"delivered", c.delivered},
                {"dropped_wred", c.dropped_wred},
                {"dropped_tail", c.dropped_tail},
                {"dropped_nolabel", c.dropped_nolabel},
                {"in_flight", c.in_flight()},
                {"samples", c.samples},
            };
            created += c.created;
            delivered += c.delivered;
            dropped += c.dropped();
        }
        meta["counts"] = counts;
        meta["totals"] = {{"created", created},
                          {"delivered", delivered},
                          {"dropped", dropped},
                          {"in_flight_observed", report.in_flight_observed}};
        nlohmann::ordered_json offered = nlohmann::ordered_json::object();
        for (const auto& [d, kbps] : report.offered_kbps) offered[dscp_name(d)] = kbps;
        meta["offered_kbps"] = offered;
        nlohmann::ordered_json trunks = nlohmann::ordered_json::array();
        for (const auto& t : report.trunks)
            trunks.push_back({{"name", t.name},
                              {"in_profile", t.in_profile},
                              {"out_of_profile", t.out_of_profile}});
        meta["trunks"] = trunks;
        std::string path = (fs::path(dir) / "meta.json").string();
        write_file(path, meta.dump(2) + "\n");
        paths.push_back(path);
    }
    return paths;
}

std::string render_table(const RunReport& report, PdvMode mode) {
    std::ostringstream out;
    out << report.scenario << "  (PDV mode: " << pdv_mode_name(mode) << ", seed " << report.seed
        << ", " << report.duration_s << " s)\n";
    char line[128];
    std::snprintf(line, sizeof line, "%-6s %13s %13s %13s %13s\n", "class", "Min. [s]",
                  "Avg. [s]", "Max. [s]", "Std Dev [s]");
    out << line;
    for (const auto& [d, s] : report.series) {
        PdvSummary p = report.pdv_summary(d, mode);
        std::snprintf(line, sizeof line, "%-6s %13.6e %13.6e %13.6e %13.6e\n",
                      dscp_name(d).c_str(), p.min, p.avg, p.max, p.stddev);
        out << line;
    }
    return out.str();
}

const std::string& compare_relation_name(CompareRelation r) {
    static const std::map<CompareRelation, std::string> names = {
        {CompareRelation::LeqAvgPdv, "leq-avg-pdv"},
        {CompareRelation::GeqAvgPdv, "geq-avg-pdv"},
        {CompareRelation::RatioBound, "ratio-bound"},
    };
    return names.at(r);
}

std::optional<CompareRelation> compare_relation_from_name(const std::string& name) {
    for (CompareRelation r :
         {CompareRelation::LeqAvgPdv, CompareRelation::GeqAvgPdv, CompareRelation::RatioBound})
        if (compare_relation_name(r) == name) return r;
    return std::nullopt;
}

std::map<Dscp, PdvSummary> load_summary_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SimError("cannot read " + path);
    std::map<Dscp, PdvSummary> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cls;
        std::getline(ls, cls, ',');
        auto d = dscp_from_name(cls);
        if (!d) throw SimError(path + ": unknown class '" + cls + "'");
        PdvSummary p;
        char comma;
        ls >> p.min >> comma >> p.avg >> comma >> p.max >> comma >> p.stddev;
        out[*d] = p;
    }
    return out;
}

std::vector<ClassVerdict> compare_summaries(const std::map<Dscp, PdvSummary>& a,
                                            const std::map<Dscp, PdvSummary>& b,
                                            CompareRelation relation, double ratio_bound,
                                            const std::vector<Dscp>& classes) {
    std::vector<Dscp> which = classes;
    if (which.empty()) {
        for (const auto& [d, s] : a) which.push_back(d);
        std::vector<Dscp> other;
        for (const auto& [d, s] : b) other.push_back(d);
        if (which != other)
            throw ClassMismatchError("reports cover different class sets");
    }
    std::vector<ClassVerdict> verdicts;
    for (Dscp d : which) {
        auto ia = a.find(d);
        auto ib = b.find(d);
        if (ia == a.end() || ib == b.end())
            throw ClassMismatchError("class " + dscp_name(d) + " missing from a report");
        ClassVerdict v;
        v.dscp = d;
        v.avg_a = ia->second.avg;
        v.avg_b = ib->second.avg;
        v.ratio = v.avg_b != 0.0 ? v.avg_a / v.avg_b
                                 : (v.avg_a == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
        switch (relation) {
            case CompareRelation::LeqAvgPdv: v.pass = v.avg_a <= v.avg_b; break;
            case CompareRelation::GeqAvgPdv: v.pass = v.avg_a >= v.avg_b; break;
            case CompareRelation::RatioBound: v.pass = v.ratio <= ratio_bound; break;
        }
        verdicts.push_back(v);
    }
    return verdicts;
}

} // namespace pdvsim
