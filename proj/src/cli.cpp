#include "abenergy/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "abenergy/interference.hpp"
#include "abenergy/scenario_io.hpp"
#include "abenergy/shielding.hpp"
#include "abenergy/squid.hpp"
#include "abenergy/verify.hpp"

namespace abenergy::cli {
namespace {

/// Input the scenario cannot serve (wrong experiment kind, missing section).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") {
        return OutputFormat::csv;
    }
    if (s == "json") {
        return OutputFormat::json;
    }
    return OutputFormat::text;
}

}  // namespace

Table phase_table(const Scenario& s) {
    if (!std::holds_alternative<TwoPathExperiment>(s.experiment)) {
        throw UsageError("phase needs a two_path experiment");
    }
    Table t{{"hypothesis", "flux_Wb", "shield_factor", "delta_phi_rad", "offset_fraction", "alignment"}, {}};
    for (const Hypothesis h : s.hypotheses()) {
        const PhasePrediction p = predict(s, h);
        const FringePattern f = fringe_pattern(p);
        t.rows.push_back({to_string(h), p.flux_used, p.shield_factor, p.delta_phi, f.offset_fraction,
                          to_string(f.alignment)});
    }
    return t;
}

Table squid_table(const Scenario& s) {
    const auto* sq = std::get_if<SquidExperiment>(&s.experiment);
    if (sq == nullptr) {
        throw UsageError("squid needs a squid experiment");
    }
    std::vector<double> sweep = sq->flux_sweep;
    if (sq->quantize_flux) {
        for (double& phi : sweep) {
            phi = flux_quantize(phi).flux;
        }
    }
    Table t{{"flux_Wb", "flux_over_Phi0", "ic_vector_potential_A", "ic_superimposed_energy_A", "discriminating"}, {}};
    for (const SquidPrediction& p : discrimination_table(sweep, sq->loop_current_I0)) {
        t.rows.push_back({p.flux, p.flux / kConstants.flux_quantum_pair, p.ic_vector_potential,
                          p.ic_superimposed_energy, p.discriminating});
    }
    return t;
}

Table shielding_table(const Scenario& s) {
    if (!s.wave_packet) {
        throw UsageError("shielding needs a wave_packet section");
    }
    if (!s.shield) {
        throw UsageError("shielding needs a shield section (for the energy gap)");
    }
    const PulseReport r = pulse_report(*s.wave_packet, s.shield->energy_gap);
    const double resolved = resolve_transmission(*s.shield, s.wave_packet);
    Table t{{"dt_s", "nu_Hz", "photon_energy_eV", "gap_eV", "shielded", "resolved_transmission", "note"}, {}};
    t.rows.push_back({r.dt, r.nu, r.photon_energy, r.gap, r.shielded, resolved,
                      quoted_estimate_note(r).value_or("")});
    return t;
}

Table verify_table(const Scenario& s, bool& all_passed) {
    Table t{{"check", "measured", "tolerance", "status"}, {}};
    all_passed = true;
    for (const CheckResult& c : run_verification(s)) {
        all_passed = all_passed && c.passed;
        t.rows.push_back({c.name, c.measured, c.tolerance, std::string(c.passed ? "PASS" : "FAIL")});
    }
    return t;
}

Table constants_table() {
    const Constants& c = kConstants;
    return {{"name", "value", "unit"},
            {{std::string("mu0"), c.mu0, std::string("T*m/A")},
             {std::string("h"), c.h, std::string("J*s")},
             {std::string("hbar"), c.hbar, std::string("J*s")},
             {std::string("e"), c.e, std::string("C")},
             {std::string("flux_quantum_pair"), c.flux_quantum_pair, std::string("Wb")},
             {std::string("flux_quantum_single"), c.flux_quantum_single, std::string("Wb")}}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Aharonov-Bohm energy/potential predictions and field verification", "abenergy"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string output;
    std::optional<double> tolerance;
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--output", output, "Write the report to this file instead of standard output");
    app.add_option("--tolerance", tolerance, "Override quadrature.rel_tol")->check(CLI::PositiveNumber);

    std::string scenario_path;
    auto add_scenario_command = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("scenario", scenario_path, "Scenario file")->required();
        sub->fallthrough();
        return sub;
    };
    CLI::App* verify = add_scenario_command("verify", "Run the gauge and energy-identity checks");
    CLI::App* phase = add_scenario_command("phase", "Phase shift and fringe offset per hypothesis");
    CLI::App* squid = add_scenario_command("squid", "SQUID critical current under both hypotheses");
    CLI::App* shielding = add_scenario_command("shielding", "Wave-packet pulse against the shield gap");
    CLI::App* dump = add_scenario_command("dump-scenario", "Echo the parsed scenario");
    CLI::App* constants = app.add_subcommand("constants", "Physical constants used by every computation");
    constants->fallthrough();

    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::ostringstream report;
    int code = kExitOk;
    try {
        const OutputFormat fmt = parse_format(format);
        if (constants->parsed()) {
            write_table(report, constants_table(), fmt);
        } else {
            Scenario s = load_scenario(scenario_path);
            if (tolerance) {
                s.quadrature.rel_tol = *tolerance;
            }
            if (dump->parsed()) {
                report << dump_scenario(s);
            } else if (phase->parsed()) {
                write_table(report, phase_table(s), fmt);
            } else if (squid->parsed()) {
                write_table(report, squid_table(s), fmt);
            } else if (shielding->parsed()) {
                write_table(report, shielding_table(s), fmt);
            } else if (verify->parsed()) {
                bool passed = false;
                write_table(report, verify_table(s, passed), fmt);
                code = passed ? kExitOk : kExitFailure;
            }
        }
    } catch (const ScenarioError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: computation failed: " << e.what() << "\n";
        return kExitFailure;
    }

    if (output.empty()) {
        out << report.str();
    } else {
        std::ofstream file(output, std::ios::binary);
        if (!(file << report.str())) {
            err << "error: cannot write '" << output << "'\n";
            return kExitUsage;
        }
    }
    return code;
}

}  // namespace abenergy::cli
