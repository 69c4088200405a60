#include "tileperiod/cli.hpp"

#include <cstdlib>
#include <filesystem>

#include "CLI11.hpp"
#include "tileperiod/construct.hpp"
#include "tileperiod/io.hpp"
#include "tileperiod/render.hpp"
#include "tileperiod/solver.hpp"
#include "tileperiod/tm.hpp"

namespace tileperiod {

namespace {

const char* error_name(const Error& e) {
    if (dynamic_cast<const FormatError*>(&e)) {
        return "FormatError";
    }
    if (dynamic_cast<const UncertifiedAperiodicSet*>(&e)) {
        return "UncertifiedAperiodicSet";
    }
    if (dynamic_cast<const InvalidMachine*>(&e)) {
        return "InvalidMachine";
    }
    if (dynamic_cast<const InvalidDimensions*>(&e)) {
        return "InvalidDimensions";
    }
    if (dynamic_cast<const AlphabetMismatch*>(&e)) {
        return "AlphabetMismatch";
    }
    if (dynamic_cast<const UnknownTile*>(&e)) {
        return "UnknownTile";
    }
    if (dynamic_cast<const ResourceLimit*>(&e)) {
        return "ResourceLimit";
    }
    return "Error";
}

SolverOptions solver_options(std::size_t node_cap_flag, unsigned jobs) {
    SolverOptions o;
    if (const char* env = std::getenv("TILEPERIOD_NODE_CAP"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (*end != '\0' || v == 0) {
            throw FormatError(std::string("TILEPERIOD_NODE_CAP must be a positive integer, got \"") + env + "\"");
        }
        o.node_cap = v;
    }
    if (node_cap_flag > 0) {
        o.node_cap = node_cap_flag;
    }
    o.jobs = std::max(1U, jobs);
    return o;
}

int cmd_periods(const std::string& file, const std::string& mode, int pmax, const std::string& witness_dir,
                const SolverOptions& opts, std::ostream& out) {
    const auto sys = io::parse_system(io::read_file(file));
    if (pmax < 1) {
        throw InvalidDimensions("--pmax must be at least 1");
    }
    const auto reports = mode == "horizontal" ? horizontal_eigenperiods(sys, pmax, opts)
                                              : total_eigenperiods(sys, pmax, opts);
    if (!witness_dir.empty()) {
        std::filesystem::create_directories(witness_dir);
    }
    for (const auto& r : reports) {
        out << "p=" << r.period << " eigen=" << (r.eigen ? "true" : "false") << "\n";
        if (witness_dir.empty()) {
            continue;
        }
        const auto region = r.torus ? *r.torus : r.walk->unroll(2);
        const auto w = io::make_witness(sys, mode, r.period, region);
        const auto base = (std::filesystem::path(witness_dir) / ("p" + std::to_string(r.period))).string();
        io::write_file(base + ".json", io::dump_witness(w));
        io::write_file(base + ".svg", render_svg(w));
    }
    return exit_ok;
}

int cmd_compile_tm(const std::string& file, const std::string& output, std::ostream& out) {
    const auto m = io::parse_machine(io::read_file(file));
    const auto sys = encode_tm(m);
    io::write_file(output, io::dump_system(sys));
    out << "families: " << sys.metadata.at("families") << "\n";
    out << "tiles=" << sys.size() << "\n";
    out << "rules=" << sys.forbidden.size() << "\n";
    return exit_ok;
}

int cmd_build(const std::string& file, const std::string& output, std::ostream& out) {
    const auto spec = io::parse_construction_spec(io::read_file(file));
    const auto c = build_construction(spec);
    io::write_file(output, io::dump_system(c.system));
    out << c.manifest;
    return exit_ok;
}

int cmd_render(const std::string& file, const std::string& output) {
    const auto w = io::parse_witness(io::read_file(file));
    io::write_file(output, render_svg(w));
    return exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Periods of tiling systems, machine compilation and period constructions", "tileperiod"};
    app.require_subcommand(1);

    std::string file;
    std::string output;
    std::string mode = "total";
    std::string witness_dir;
    int pmax = 4;
    unsigned jobs = 1;
    std::size_t node_cap = 0;

    auto* periods = app.add_subcommand("periods", "List eigenperiods up to --pmax");
    periods->add_option("system", file, "System file (JSON)")->required();
    periods->add_option("--mode", mode, "horizontal or total")->check(CLI::IsMember({"horizontal", "total"}));
    periods->add_option("--pmax", pmax, "Largest period to test");
    periods->add_option("--witness", witness_dir, "Directory for JSON and SVG witnesses");
    periods->add_option("--jobs", jobs, "Worker threads for the per-period pool");
    periods->add_option("--node-cap", node_cap, "Transfer-graph node cap");

    auto* compile = app.add_subcommand("compile-tm", "Compile a machine file to a tile system");
    compile->add_option("machine", file, "Machine file (JSON)")->required();
    compile->add_option("-o,--output", output, "Output system file")->required();

    auto* build = app.add_subcommand("build", "Build a period construction");
    build->add_option("spec", file, "Construction spec (JSON)")->required();
    build->add_option("-o,--output", output, "Output system file")->required();

    auto* render = app.add_subcommand("render", "Render a witness as SVG");
    render->add_option("witness", file, "Witness file (JSON)")->required();
    render->add_option("-o,--output", output, "Output SVG file")->required();

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_user_error;
    }

    try {
        if (periods->parsed()) {
            return cmd_periods(file, mode, pmax, witness_dir, solver_options(node_cap, jobs), out);
        }
        if (compile->parsed()) {
            return cmd_compile_tm(file, output, out);
        }
        if (build->parsed()) {
            return cmd_build(file, output, out);
        }
        return cmd_render(file, output);
    } catch (const ResourceLimit& e) {
        err << "error: ResourceLimit: " << e.what() << "\n";
        return exit_resource_limit;
    } catch (const Error& e) {
        err << "error: " << error_name(e) << ": " << e.what() << "\n";
        return exit_user_error;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_user_error;
    }
}

} // namespace tileperiod
