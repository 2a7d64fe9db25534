#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pdvsim/report.hpp"
#include "pdvsim/scenario.hpp"

using namespace pdvsim;

#ifndef PDVSIM_SOURCE_DIR
#define PDVSIM_SOURCE_DIR "."
#endif

TEST_SUITE("scenario") {

TEST_CASE("built-in scenarios have the advertised shape") {
    auto names = builtin_scenario_names();
    CHECK(names.size() == 6);

    ScenarioSpec s3 = builtin_scenario("scenario3");
    CHECK(s3.qos_mode == QosMode::DiffServ);
    CHECK(s3.ip_version == 4);
    CHECK(s3.duration_s == 1800.0);
    CHECK_FALSE(s3.te.has_value());
    CHECK(s3.policy.classes.size() == 7);

    ScenarioSpec s6 = builtin_scenario("scenario6");
    CHECK(s6.qos_mode == QosMode::DiffServMpls);
    CHECK(s6.ip_version == 6);
    CHECK(s6.te.has_value());
    CHECK(s6.te->lsps.size() == 6);
    CHECK(s6.te->trunks.size() == 7);

    ScenarioSpec s1 = builtin_scenario("scenario1");
    CHECK(s1.qos_mode == QosMode::BestEffort);
    CHECK(s1.topology.nodes.size() == 2 + 9 + 2 + 14); // LERs, LSRs, switches, hosts
    CHECK(s1.apps.video.size() == 18);
    CHECK(s1.apps.voice.size() == 3);
    CHECK(s1.apps.profile.start_s == 100.0);
    // calls begin at 120 / 420 / 720 s of simulation time
    for (std::size_t i = 0; i < s1.apps.video.size(); ++i)
        CHECK(s1.apps.video[i].start_offset_s == 20.0 + 300.0 * (i % 3));
    for (std::size_t i = 0; i < s1.apps.voice.size(); ++i)
        CHECK(s1.apps.voice[i].start_offset_s == 20.0 + 300.0 * i);

    CHECK_THROWS_AS(builtin_scenario("scenario7"), ValidationError);
}

TEST_CASE("save/parse round-trip is exact") {
    for (const auto& name : builtin_scenario_names()) {
        ScenarioSpec spec = builtin_scenario(name);
        std::string text = save_scenario(spec);
        ScenarioSpec reparsed = parse_scenario(text, name);
        CHECK(save_scenario(reparsed) == text);
    }
}

TEST_CASE("checked-in scenario files match the built-ins") {
    namespace fs = std::filesystem;
    fs::path dir = fs::path(PDVSIM_SOURCE_DIR) / "scenarios";
    for (const auto& name : builtin_scenario_names()) {
        fs::path file = dir / (name + ".scn");
        REQUIRE(fs::exists(file));
        std::ifstream in(file, std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == save_scenario(builtin_scenario(name)));
    }
}

TEST_CASE("loading a scenario file resolves includes") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "pdvsim_inc_test";
    fs::create_directories(dir);
    {
        std::ofstream base(dir / "base.scn");
        base << "[topology]\n"
             << "node A workstation 10.0.0.1\n"
             << "node B workstation 10.0.0.2\n"
             << "[links]\n"
             << "link A B 1e6 0 0\n";
    }
    {
        std::ofstream top(dir / "top.scn");
        top << "include base.scn\n"
            << "[scenario]\n"
            << "name = inc\n"
            << "qos_mode = best-effort\n"
            << "duration_s = 10\n"
            << "util_window_start_s = 0\n"
            << "[apps]\n"
            << "voice v A B 64000 0.01 1 0.65 0.65 0.352 0.02 0.02\n";
    }
    ScenarioSpec spec = load_scenario((dir / "top.scn").string());
    CHECK(spec.name == "inc");
    CHECK(spec.topology.nodes.size() == 2);
}

TEST_CASE("parse errors carry file and line") {
    try {
        parse_scenario("[scenario]\nname = x\nbogus line here\n", "inline.scn");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("inline.scn:3") != std::string::npos);
    }
}

TEST_CASE("dangling references fail validation by name") {
    ScenarioSpec spec = builtin_scenario("scenario5");
    spec.te->bindings[0].lsp = "LSP_NOWHERE";
    try {
        validate_scenario(spec);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("LSP_NOWHERE") != std::string::npos);
    }
}

TEST_CASE("te config is rejected outside diffserv-mpls mode") {
    ScenarioSpec spec = builtin_scenario("scenario3");
    spec.te = builtin_scenario("scenario5").te;
    CHECK_THROWS_AS(validate_scenario(spec), ValidationError);
}

TEST_CASE("best-effort scenarios must not carry a policy") {
    ScenarioSpec spec = builtin_scenario("scenario1");
    spec.policy.classes.push_back({Dscp::EF, 5, 500, true, std::nullopt});
    CHECK_THROWS_AS(validate_scenario(spec), ValidationError);
}

TEST_CASE("cbwfq percentages above 100 are rejected") {
    ScenarioSpec spec = builtin_scenario("scenario3");
    spec.policy.classes[0].bandwidth_percent = 99.0;
    CHECK_THROWS_AS(validate_scenario(spec), ValidationError);
}

TEST_CASE("compare relations") {
    std::map<Dscp, PdvSummary> a, b;
    for (Dscp d : {Dscp::AF11, Dscp::AF12}) {
        a[d] = {0, 0.001, 0, 0};
        b[d] = {0, 0.1, 0, 0};
    }
    auto verdicts = compare_summaries(a, b, CompareRelation::RatioBound, 1e-2);
    for (const auto& v : verdicts) {
        CHECK(v.pass);
        CHECK(v.ratio == doctest::Approx(0.01));
    }
    verdicts = compare_summaries(a, a, CompareRelation::LeqAvgPdv, 0);
    for (const auto& v : verdicts) {
        CHECK(v.pass);
        CHECK(v.ratio == doctest::Approx(1.0));
    }
    verdicts = compare_summaries(a, b, CompareRelation::GeqAvgPdv, 0);
    for (const auto& v : verdicts) CHECK_FALSE(v.pass);

    std::map<Dscp, PdvSummary> c = a;
    c[Dscp::EF] = {0, 1, 0, 0};
    CHECK_THROWS_AS(compare_summaries(a, c, CompareRelation::LeqAvgPdv, 0),
                    ClassMismatchError);
    // an explicit class filter sidesteps the mismatch
    auto filtered =
        compare_summaries(a, c, CompareRelation::LeqAvgPdv, 0, {Dscp::AF11, Dscp::AF12});
    CHECK(filtered.size() == 2);
}

} // TEST_SUITE
