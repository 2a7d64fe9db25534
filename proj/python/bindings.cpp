#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pdvsim/metrics.hpp"
#include "pdvsim/netmodel.hpp"
#include "pdvsim/network.hpp"
#include "pdvsim/report.hpp"
#include "pdvsim/scenario.hpp"
#include "pdvsim/traffic.hpp"

namespace py = pybind11;
using namespace pdvsim;

namespace {

PdvMode mode_from(const std::string& name) {
    auto m = pdv_mode_from_name(name);
    if (!m) throw py::value_error("unknown pdv mode '" + name + "'");
    return *m;
}

py::dict summary_dict(const PdvSummary& s) {
    py::dict d;
    d["min"] = s.min;
    d["avg"] = s.avg;
    d["max"] = s.max;
    d["stddev"] = s.stddev;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "packet-level DES for DiffServ / MPLS-TE delay-variation studies";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NonIntegralPayloadError>(m, "NonIntegralPayloadError",
                                                    PyExc_ValueError);
    py::register_exception<TooFewSamplesError>(m, "TooFewSamplesError", PyExc_ValueError);
    py::register_exception<EmptySeriesError>(m, "EmptySeriesError", PyExc_ValueError);

    py::class_<ScenarioSpec>(m, "Scenario")
        .def_readonly("name", &ScenarioSpec::name)
        .def_readonly("ip_version", &ScenarioSpec::ip_version)
        .def_readonly("duration_s", &ScenarioSpec::duration_s)
        .def_readonly("seed", &ScenarioSpec::seed)
        .def_property_readonly(
            "qos_mode", [](const ScenarioSpec& s) { return qos_mode_name(s.qos_mode); })
        .def("save", [](const ScenarioSpec& s) { return save_scenario(s); })
        .def("__repr__", [](const ScenarioSpec& s) {
            return "<Scenario " + s.name + " ipv" + std::to_string(s.ip_version) + " " +
                   qos_mode_name(s.qos_mode) + ">";
        });

    py::class_<RunReport>(m, "Report")
        .def_readonly("scenario", &RunReport::scenario)
        .def_readonly("ip_version", &RunReport::ip_version)
        .def_readonly("qos_mode", &RunReport::qos_mode)
        .def_readonly("seed", &RunReport::seed)
        .def_readonly("duration_s", &RunReport::duration_s)
        .def_readonly("wall_seconds", &RunReport::wall_seconds)
        .def_property_readonly("classes",
                               [](const RunReport& r) {
                                   std::vector<std::string> out;
                                   for (const auto& [d, s] : r.series)
                                       out.push_back(dscp_name(d));
                                   return out;
                               })
        .def("pdv_summary",
             [](const RunReport& r, const std::string& cls, const std::string& mode) {
                 auto d = dscp_from_name(cls);
                 if (!d) throw py::value_error("unknown class '" + cls + "'");
                 return summary_dict(r.pdv_summary(*d, mode_from(mode)));
             },
             py::arg("cls"), py::arg("mode") = "consecutive-absolute")
        .def("owd_series",
             [](const RunReport& r, const std::string& cls) {
                 auto d = dscp_from_name(cls);
                 if (!d) throw py::value_error("unknown class '" + cls + "'");
                 auto it = r.series.find(*d);
                 if (it == r.series.end()) throw py::value_error("no series for " + cls);
                 return py::make_tuple(it->second.arrival_s, it->second.owd_s);
             })
        .def("counts",
             [](const RunReport& r) {
                 py::dict out;
                 for (const auto& [d, c] : r.counts) {
                     py::dict row;
                     row["created"] = c.created;
                     row["delivered"] = c.delivered;
                     row["dropped_wred"] = c.dropped_wred;
                     row["dropped_tail"] = c.dropped_tail;
                     row["dropped_nolabel"] = c.dropped_nolabel;
                     row["in_flight"] = c.in_flight();
                     row["samples"] = c.samples;
                     out[dscp_name(d).c_str()] = row;
                 }
                 return out;
             })
        .def("offered_kbps",
             [](const RunReport& r) {
                 py::dict out;
                 for (const auto& [d, v] : r.offered_kbps) out[dscp_name(d).c_str()] = v;
                 return out;
             })
        .def("utilization",
             [](const RunReport& r) {
                 py::list out;
                 for (const auto& u : r.utilization) {
                     py::dict row;
                     row["from"] = u.from;
                     row["to"] = u.to;
                     row["busy_fraction"] = u.busy_fraction;
                     row["bits_carried"] = u.bits_carried;
                     out.append(row);
                 }
                 return out;
             })
        .def("write",
             [](const RunReport& r, const std::string& dir, const std::string& mode) {
                 return emit_report(r, dir, mode_from(mode));
             },
             py::arg("dir"), py::arg("mode") = "consecutive-absolute")
        .def("table",
             [](const RunReport& r, const std::string& mode) {
                 return render_table(r, mode_from(mode));
             },
             py::arg("mode") = "consecutive-absolute");

    m.def("list_scenarios", &builtin_scenario_names);
    m.def("scenario_summary", &builtin_scenario_summary, py::arg("name"));
    m.def("builtin_scenario", &builtin_scenario, py::arg("name"));
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def(
        "run_scenario",
        [](const std::string& ref, std::optional<std::uint64_t> seed,
           std::optional<double> duration_s) {
            ScenarioSpec spec =
                is_builtin_scenario(ref) ? builtin_scenario(ref) : load_scenario(ref);
            RunOptions opts;
            opts.seed = seed;
            opts.duration_s = duration_s;
            return run_scenario(spec, opts);
        },
        py::arg("scenario"), py::arg("seed") = std::nullopt,
        py::arg("duration_s") = std::nullopt,
        "Run a built-in scenario by name, or a scenario file by path.");
    m.def(
        "run",
        [](const ScenarioSpec& spec, std::optional<std::uint64_t> seed,
           std::optional<double> duration_s) {
            RunOptions opts;
            opts.seed = seed;
            opts.duration_s = duration_s;
            return run_scenario(spec, opts);
        },
        py::arg("scenario"), py::arg("seed") = std::nullopt,
        py::arg("duration_s") = std::nullopt);

    m.def("voice_packetization", [](double codec_rate_bps, double sample_interval_s) {
        auto p = voice_packetization(codec_rate_bps, sample_interval_s);
        return py::make_tuple(p.payload_bytes, p.packets_per_second);
    });
    m.def("header_overhead", [](int ip_version, int label_depth, const std::string& transport) {
        Transport t;
        if (transport == "udp") t = Transport::Udp;
        else if (transport == "rtp-over-udp") t = Transport::RtpOverUdp;
        else throw py::value_error("transport must be 'udp' or 'rtp-over-udp'");
        return header_overhead(ip_version, label_depth, t);
    });
    m.def("serialization_delay", &serialization_delay, py::arg("frame_bytes"),
          py::arg("rate_bps"));
    m.def("segment", &segment, py::arg("app_message_bytes"), py::arg("max_segment"));
    m.def("ipdv_series", [](const std::vector<double>& owd, const std::string& mode) {
        return pdv_series(owd, mode_from(mode));
    }, py::arg("owd"), py::arg("mode") = "consecutive-absolute");
    m.def("summarize", [](const std::vector<double>& series) {
        return summary_dict(summarize(series));
    });

    m.attr("__version__") = "0.1.0";
}
