#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lumisim/config.hpp"
#include "lumisim/harness.hpp"

namespace fs = std::filesystem;

namespace {

lumisim::Scenario load_scenario(const std::string& config_path) {
    if (config_path.empty()) return lumisim::default_office_scenario();
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config file: " + config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return lumisim::parse_config(buffer.str());
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::vector<double> parse_sizes(const std::string& csv) {
    std::vector<double> sizes;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) sizes.push_back(std::stod(item));
    }
    if (sizes.empty()) throw std::runtime_error("--cell-sizes: no sizes given");
    return sizes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Occupancy-driven LED lighting control simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    double th_c_override = -1.0;
    app.add_option("--config", config_path,
                   "Scenario config file (JSON); omit for the built-in office");
    app.add_option("--seed", seed, "Random seed (embedded in all output headers)");
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--th-c", th_c_override, "Override the candidate-set threshold");

    auto* run_cmd = app.add_subcommand("run", "Run one scenario with one controller");
    std::string controller_name = "proposed";
    bool dump_posterior = false;
    run_cmd->add_option("--controller", controller_name,
                        "proposed | dimmer | batch | individual | perfect");
    run_cmd->add_flag("--dump-posterior", dump_posterior,
                      "Also write the per-step posterior (t,state_index,value)");

    auto* compare_cmd =
        app.add_subcommand("compare", "Run proposed, individual, batch and perfect on one seed");

    auto* sweep_cmd = app.add_subcommand("sweep-grid", "Localization error vs grid cell size");
    std::string cell_sizes_csv = "0.3,0.6,0.9";
    int sweep_runs = 20;
    int sweep_steps = 120;
    sweep_cmd->add_option("--cell-sizes", cell_sizes_csv, "Comma-separated cell sizes in meters");
    sweep_cmd->add_option("--runs", sweep_runs, "Seeded walks per cell size");
    sweep_cmd->add_option("--steps", sweep_steps, "Steps per walk");

    auto* kernel_cmd = app.add_subcommand("dump-kernel", "Write the transition kernel as CSV");
    auto* atten_cmd =
        app.add_subcommand("dump-attenuation", "Write per-luminaire attenuation tables as CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        lumisim::Scenario sc = load_scenario(config_path);
        if (th_c_override >= 0.0) sc.th_c = th_c_override;
        const fs::path out(out_dir);

        if (*run_cmd) {
            const lumisim::ControllerKind kind = lumisim::controller_from_name(controller_name);
            const lumisim::SimContext ctx(sc);
            std::ostringstream posterior;
            const auto trace =
                lumisim::run_scenario(ctx, kind, seed, dump_posterior ? &posterior : nullptr);
            const fs::path trace_path = out / (sc.name + "_" + controller_name + "_trace.csv");
            write_file(trace_path, lumisim::trace_to_csv(ctx, kind, seed, trace));
            if (dump_posterior) {
                write_file(out / (sc.name + "_" + controller_name + "_posterior.csv"),
                           "# seed " + std::to_string(seed) + "\n" + posterior.str());
            }
            const auto metrics = lumisim::compute_metrics({{controller_name, trace}}, sc.f_min);
            std::cout << lumisim::metrics_to_text(metrics);
            std::cout << "trace written to " << trace_path.string() << "\n";
        } else if (*compare_cmd) {
            const lumisim::SimContext ctx(sc);
            std::vector<std::pair<std::string, std::vector<lumisim::TraceRecord>>> traces;
            for (const auto kind :
                 {lumisim::ControllerKind::proposed, lumisim::ControllerKind::individual,
                  lumisim::ControllerKind::batch, lumisim::ControllerKind::perfect}) {
                auto trace = lumisim::run_scenario(ctx, kind, seed);
                const std::string name = lumisim::controller_name(kind);
                write_file(out / (sc.name + "_" + name + "_trace.csv"),
                           lumisim::trace_to_csv(ctx, kind, seed, trace));
                traces.emplace_back(name, std::move(trace));
            }
            const auto metrics = lumisim::compute_metrics(traces, sc.f_min);
            write_file(out / (sc.name + "_metrics.csv"), lumisim::metrics_to_csv(metrics, seed));
            std::cout << lumisim::metrics_to_text(metrics);
        } else if (*sweep_cmd) {
            const auto results = lumisim::grid_sweep(sc, parse_sizes(cell_sizes_csv), sweep_runs,
                                                     seed, sweep_steps);
            const fs::path sweep_path = out / (sc.name + "_sweep.csv");
            write_file(sweep_path, lumisim::sweep_to_csv(results, seed));
            for (const auto& r : results) {
                std::cout << "cell " << r.cell_size << " m: mean error " << r.mean_error
                          << " m over " << r.per_run_error.size() << " runs\n";
            }
            std::cout << "table written to " << sweep_path.string() << "\n";
        } else if (*kernel_cmd) {
            const lumisim::SimContext ctx(sc);
            const fs::path path = out / (sc.name + "_kernel.csv");
            write_file(path, "# seed " + std::to_string(seed) + "\n" + ctx.kernel.to_csv());
            std::cout << ctx.kernel.state_count() << " states, " << ctx.kernel.nnz()
                      << " entries written to " << path.string() << "\n";
        } else if (*atten_cmd) {
            const lumisim::SimContext ctx(sc);
            for (std::size_t l = 0; l < sc.luminaires.size(); ++l) {
                lumisim::MeasuredIlluminationTable table;
                table.luminaire_id = sc.luminaires[l].id;
                table.f_measured = sc.luminaires[l].f_full;
                for (double h : ctx.fields[l].values) {
                    table.values.push_back(h * sc.luminaires[l].f_full);
                }
                const fs::path path =
                    out / (sc.name + "_attenuation_" + sc.luminaires[l].id + ".csv");
                write_file(path,
                           lumisim::measured_table_to_csv(table, sc.grid.cells_x(sc.layout)));
            }
            std::cout << sc.luminaires.size() << " attenuation tables written to "
                      << out.string() << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
