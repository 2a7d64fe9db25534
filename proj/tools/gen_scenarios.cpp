// Writes the canonical text form of every built-in scenario into a
// directory (default scenarios/). The checked-in files are generated with
// this tool; a unit test keeps them in sync with the built-ins.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "pdvsim/scenario.hpp"

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "scenarios";
    std::filesystem::create_directories(dir);
    for (const auto& name : pdvsim::builtin_scenario_names()) {
        auto spec = pdvsim::builtin_scenario(name);
        std::ofstream out(dir / (name + ".scn"), std::ios::binary);
        out << pdvsim::save_scenario(spec);
        std::cout << (dir / (name + ".scn")).string() << "\n";
    }
    return 0;
}
