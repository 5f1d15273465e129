// mcl-sim: runs a scenario JSON over the simulated stack and emits the
// per-request CSV. Exit 0 iff every scenario assertion holds.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mcl/errors.hpp"
#include "mcl/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"MCL scenario simulator"};
    std::string scenario_path;
    std::string csv_path;
    app.add_option("scenario", scenario_path, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("-o,--csv", csv_path, "write the CSV here instead of stdout");
    CLI11_PARSE(app, argc, argv);

    try {
        auto report = mcl::sim::run_scenario_file(scenario_path);
        if (csv_path.empty()) {
            std::cout << report.csv;
        } else {
            std::ofstream out(csv_path, std::ios::trunc);
            if (!out) {
                std::cerr << "mcl-sim: cannot write " << csv_path << "\n";
                return 2;
            }
            out << report.csv;
        }
        for (const std::string& f : report.failures)
            std::cerr << "assertion failed: " << f << "\n";
        return report.assertions_ok ? 0 : 1;
    } catch (const mcl::ScenarioError& e) {
        std::cerr << "mcl-sim: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "mcl-sim: " << e.what() << "\n";
        return 2;
    }
}
