// Command-line driver: prep, simulate, inject, scenario, serve.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "neqrscope/neqrscope.hpp"
#include "neqrscope/server.hpp"

namespace {

using namespace neqrscope;

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        io::write_text_file(path, text);
    }
}

GateKind parse_kind(const std::string& kind) {
    if (kind == "h") return GateKind::H;
    if (kind == "x") return GateKind::X;
    if (kind == "mcx") return GateKind::MCX;
    throw FormatError("unknown gate kind '" + kind + "' (expected h, x or mcx)");
}

void check_bins(int bins) {
    if (bins < 0) {
        throw AnalysisError("--bins must be positive");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"NEQR quantum image circuit simulator and debugging backend", "neqrscope"};
    app.require_subcommand(1);

    std::string output;

    auto* prep = app.add_subcommand("prep", "Build the NEQR preparation circuit for a PGM image");
    std::string image_path;
    prep->add_option("image", image_path, "P2/P5 graymap with side 2^n and maxval 2^b-1")->required();
    prep->add_option("-o,--output", output, "Circuit document to write (default stdout)");

    auto* simulate = app.add_subcommand("simulate", "Simulate a circuit document and write its analysis");
    std::string circuit_path;
    int bins = kAutoBins;
    double peak_eps = kDefaultPeakEps;
    bool layout_check = false;
    bool no_timing = false;
    simulate->add_option("circuit", circuit_path, "Circuit document")->required();
    simulate->add_option("-o,--output", output, "Analysis document to write (default stdout)");
    simulate->add_option("--bins", bins, "Histogram bins per pixel (default 8, or 2^b when smaller)");
    simulate->add_option("--peak-eps", peak_eps, "Tolerance for peak detection")->capture_default_str();
    simulate->add_flag("--layout-check", layout_check, "Fail if any snapshot violates mass conservation");
    simulate->add_flag("--no-timing", no_timing, "Omit per-gate timings (reproducible output)");

    auto* inject = app.add_subcommand("inject", "Insert a stray basic gate into a composite");
    std::size_t gate_index = 0;
    std::size_t position = 0;
    std::string kind;
    int target = 0;
    std::vector<int> controls;
    inject->add_option("circuit", circuit_path, "Circuit document")->required();
    inject->add_option("--gate", gate_index, "Index of the composite gate")->required();
    inject->add_option("--at", position, "Position inside the composite")->capture_default_str();
    inject->add_option("--kind", kind, "h, x or mcx")->required();
    inject->add_option("--target", target, "Target qubit")->required();
    inject->add_option("--controls", controls, "Control qubits (mcx)")->delimiter(',');
    inject->add_option("-o,--output", output, "Circuit document to write (default stdout)");

    auto* scenario = app.add_subcommand("scenario", "Emit a named fixture circuit");
    std::string scenario_name;
    bool list = false;
    scenario->add_option("name", scenario_name, "Scenario name");
    scenario->add_flag("--list", list, "List the available scenarios");
    scenario->add_option("-o,--output", output, "Circuit document to write (default stdout)");

    auto* serve = app.add_subcommand("serve", "Serve an analysis or circuit document to the UI");
    std::string doc_path;
    int port = api::kDefaultPort;
    std::string host = "127.0.0.1";
    std::string static_dir;
    serve->add_option("document", doc_path, "Analysis document or circuit document")->required();
    serve->add_option("--port", port, "TCP port")->capture_default_str();
    serve->add_option("--host", host, "Bind address")->capture_default_str();
    serve->add_option("--static", static_dir, "Directory with UI assets served at /");
    serve->add_option("--bins", bins, "Bins when simulating a circuit document");
    serve->add_option("--peak-eps", peak_eps, "Peak tolerance when simulating a circuit document")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*prep) {
            emit(output, io::serialize_circuit(build_neqr_prep(io::read_image(image_path))));
        } else if (*simulate) {
            check_bins(bins);
            auto circuit = io::parse_circuit(io::read_text_file(circuit_path));
            io::AnalysisDocument doc{circuit, simulate_and_analyze(circuit, bins, peak_eps)};
            if (layout_check) {
                const auto problems = check_layout(doc.bundle);
                for (const auto& p : problems) {
                    std::cerr << "layout check: " << p << "\n";
                }
                if (!problems.empty()) {
                    return 1;
                }
            }
            emit(output, io::serialize_analysis(doc, !no_timing));
        } else if (*inject) {
            auto circuit = io::parse_circuit(io::read_text_file(circuit_path));
            const BasicGate stray{parse_kind(kind), target, controls};
            emit(output, io::serialize_circuit(inject_fault(std::move(circuit), gate_index, position, stray)));
        } else if (*scenario) {
            if (list) {
                for (const auto& n : scenarios::names()) {
                    std::cout << n << "\n";
                }
                return 0;
            }
            if (scenario_name.empty()) {
                std::cerr << "scenario: a name is required (see --list)\n";
                return 2;
            }
            emit(output, io::serialize_circuit(scenarios::by_name(scenario_name)));
        } else if (*serve) {
            check_bins(bins);
            const auto text = io::read_text_file(doc_path);
            const auto json = io::detail::parse_json(text);
            std::shared_ptr<const api::Session> session;
            if (json.is_object() && json.contains("format")) {
                session = std::make_shared<const api::Session>(api::Session::from_document(io::analysis_from_json(json)));
            } else {
                session = std::make_shared<const api::Session>(
                    api::Session::from_circuit(io::circuit_from_json(json), bins, peak_eps));
            }
            api::HttpServer server(session, static_dir);
            std::cerr << "serving " << session->circuit.gates.size() << " gates on http://" << host << ":" << port
                      << "\n";
            if (!server.listen(host, port)) {
                std::cerr << "serve: cannot listen on " << host << ":" << port << "\n";
                return 1;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
